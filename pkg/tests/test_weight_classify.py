import random
from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import superkac._num as N
from superkac.catalog import load
from superkac.lattice import Exponent, Weight
from superkac.root_system import WeylWord
from superkac.subsystems import friendly_word_to_pr
from superkac.weight_classify import (admissible_level, affine_horizon, diagram_automorphism_root,
                                      diagram_automorphism_weight, dot_action,
                                      enumerate_snowflake_weights, integral_base, is_admissible,
                                      is_critical, is_snowflake_hw, is_typical, kk_pairs, level,
                                      level_period, linkage_closure, norm_shift, plus_rho,
                                      principal_period, restricted_snowflake_findim,
                                      shifted_value, snowflake_box)


def w1(*xs):
    return Weight(tuple(Q(x) for x in xs))


@pytest.fixture(scope="module")
def a11():
    return load("A1_1")


def level_weight(alg, k):
    return alg.fundamental_weight0().scaled(Q(k))


# --- ρ and the dot action --------------------------------------------------

def test_rho_normalization():
    assert load("sl21").rho.pairings == (0, 0)
    assert load("osp9_2").rho.pairings == (0, 1, 1, 1, 1)
    assert shifted_value(load("osp12"), w1(0), load("osp12").principal[0].coroot) == Q(1, 2)


def test_dot_identity():
    alg = load("osp9_2")
    lam = w1(Q(1, 3), 0, 2, -1, Q(1, 2))
    assert dot_action(alg, WeylWord(), lam) == Exponent.of(lam)


@pytest.mark.parametrize("n", [0, 3, Q(1, 2), -5])
def test_dot_sl2(n):
    alg = load("sl2")
    x = dot_action(alg, alg.word([0]), w1(n))
    assert x.offset == (-(Q(n) + 1),)
    assert x.pair(alg.principal[0].coroot, alg.A) == -Q(n) - 2


@pytest.mark.parametrize("b", [0, 1, 2, Q(1, 3)])
def test_dot_osp12(b):
    alg = load("osp12")
    x = dot_action(alg, alg.word([0]), w1(b))
    # −(λ+ρ)((2β)^∨)·2β with ρ((2β)^∨) = 1/2
    assert x.offset == (-2 * (Q(b) / 2 + Q(1, 2)),)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), max_size=5),
       st.lists(st.fractions(-3, 3, max_denominator=5), min_size=2, max_size=2))
def test_dot_is_an_action(u, v, pairings):
    alg = load("sp4")
    lam = Weight(tuple(pairings))
    wu, wv = alg.word(u), alg.word(v)
    assert dot_action(alg, wu, dot_action(alg, wv, lam)) == dot_action(alg, wu * wv, lam)


# --- level and criticality -------------------------------------------------

def test_fin_never_critical():
    assert not is_critical(load("osp9_2"), w1(1, 2, 3, 4, 5))


def test_critical_level(a11):
    assert a11.h_dual == 2
    assert level(a11, level_weight(a11, -2)) == -2
    assert is_critical(a11, level_weight(a11, -2))
    assert not is_critical(a11, level_weight(a11, Q(-1, 2)))


def test_level_is_blind_to_finite_part(a11):
    lam = level_weight(a11, Q(-1, 2)) + w1(-3, 3)
    assert level(a11, lam) == Q(-1, 2)


def test_level_refuses_fin():
    with pytest.raises(ValueError):
        level(load("sl2"), w1(1))


# --- typicality ------------------------------------------------------------

def test_non_isotropic_always_typical():
    assert is_typical(load("osp14"), w1(-1, 5)).holds


def test_sl21_atypical_witness():
    v = is_typical(load("sl21"), w1(0, 3))
    assert not v.holds and v.witness.coords in {(1, 0), (0, 1)}


def test_sl21_typical():
    v = is_typical(load("sl21"), w1(Q(1, 3), Q(1, 5)))
    assert v.holds and v.status == "typical"


def test_affine_typicality_is_bounded():
    v = is_typical(load("osp12_1"), w1(0, 0))
    assert v.holds


# --- snowflake and admissible ----------------------------------------------

@pytest.mark.parametrize("name", ["sl2", "osp12", "sp4", "osp14", "A1_1", "osp12_1"])
def test_zero_is_snowflake(name):
    alg = load(name)
    assert is_snowflake_hw(alg, Weight.zero(alg.n)).holds


def test_sl2_negative_not_snowflake():
    v = is_snowflake_hw(load("sl2"), w1(-3))
    assert not v.holds
    assert v.details["values"][0][1] == "-2"


def test_osp9_2_shifted_example_not_snowflake():
    alg = load("osp9_2")
    target = alg.coordinates.weight({"e1": Q(1, 3), "e3": Q(1, 3)})
    lam = target - alg.rho
    v = is_snowflake_hw(alg, lam)
    assert not v.holds
    values = {alg.coordinates.label(c): x for c, x, _ in v.details["values"]}
    assert values["e1-e3"] == "0"


def test_admissible_minus_half(a11):
    v = admissible_level(a11, Q(-1, 2))
    assert v.holds
    assert sorted(x[1] for x in v.details["values"]) == ["1", "2"]
    base = integral_base(a11, level_weight(a11, Q(-1, 2)))
    assert base.coords() == {(0, 1), (2, 1)}


def test_irrational_level_rank_deficient(a11):
    v = admissible_level(a11, sympy.sqrt(2) - 1)
    assert not v.holds and v.status == "rank-deficient"


@pytest.mark.parametrize("k", [0, 1, 2, 5])
def test_nonnegative_integer_levels_admissible(a11, k):
    v = admissible_level(a11, k)
    assert v.holds
    assert integral_base(a11, level_weight(a11, k)).coords() == {r.coords for r in a11.principal}


def test_minus_three_not_admissible(a11):
    assert not admissible_level(a11, -3).holds


def test_admissible_needs_affine():
    with pytest.raises(ValueError):
        is_admissible(load("sp4"), w1(0, 0))


def test_horizon_data(a11):
    assert principal_period(a11) == 1
    assert level_period(a11, Q(-1, 2)) == 2
    assert affine_horizon(a11, level_weight(a11, Q(-1, 2))) == 8
    assert affine_horizon(load("sp4"), w1(0, 0)) is None


def test_snowflake_invariant_under_friendly_transport():
    alg = load("osp9_2")
    rng = random.Random(3)
    for _ in range(15):
        lam = Weight(tuple(Q(rng.randint(-6, 6), 3) for _ in range(alg.n)))
        base = integral_base(alg, lam)
        for beta in base:
            fw = friendly_word_to_pr(lam, beta, alg)
            w = fw.weyl_word
            moved = dot_action(alg, w, lam)
            lhs = plus_rho(alg, moved).pair(alg.apply_word(w, beta).coroot, alg.A)
            assert lhs == shifted_value(alg, lam, beta.coroot)
        if base.roots:
            w = friendly_word_to_pr(lam, base.roots[0], alg).weyl_word
            moved = dot_action(alg, w, lam)
            assert is_snowflake_hw(alg, moved).holds == is_snowflake_hw(alg, lam).holds


# --- Kac–Kazhdan pairs and linkage -----------------------------------------

def test_kk_sl2():
    pairs = kk_pairs(load("sl2"), w1(3))
    assert [(p.alpha.coords, p.m) for p in pairs] == [((1,), 4)]


def test_kk_osp12():
    alg = load("osp12")
    pairs = kk_pairs(alg, w1(2))  # (λ+ρ)(β^∨) = 3
    assert [(p.alpha.coords, p.m) for p in pairs] == [((1,), 3)]


def test_kk_generic_weight_is_empty():
    alg = load("sp4")
    assert kk_pairs(alg, Weight((sympy.sqrt(2), sympy.sqrt(3)))) == []


def test_kk_isotropic_root_m_is_one():
    pairs = kk_pairs(load("sl21"), w1(0, 5))
    assert ((1, 0), 1) in [(p.alpha.coords, p.m) for p in pairs]


def test_kk_affine_imaginary(a11):
    pairs = kk_pairs(a11, level_weight(a11, -2), H=6)
    im = {(p.alpha.coords, p.m) for p in pairs if p.alpha.kind == "imaginary"}
    assert ((1, 1), 1) in im and ((1, 1), 3) in im


@pytest.mark.parametrize("name, lam", [("sl2", (3,)), ("osp12", (4,)), ("sl21", (0, 5)),
                                       ("sp4", (1, 2)), ("A1_1", (Q(-1, 2), 0)),
                                       ("osp9_2", (Q(-1, 3), Q(1, 3), Q(-1, 3), Q(1, 3), 0))])
def test_kk_pairs_satisfy_equation(name, lam):
    alg = load(name)
    x = Exponent.of(w1(*lam))
    for p in kk_pairs(alg, x, H=12):
        lhs = 2 * alg.exponent_form(plus_rho(alg, x), p.alpha.coords)
        assert lhs == p.m * alg.form(p.alpha.coords, p.alpha.coords)
        assert norm_shift(alg, x, p.target) == 0
        assert is_critical(alg, p.target) == is_critical(alg, x)
        assert is_typical(alg, p.target, 12).holds == is_typical(alg, x, 12).holds


def test_linkage_self():
    r = linkage_closure(load("sl2"), w1(3), w1(3))
    assert r.linked and r.depth == 0


def test_linkage_one_step():
    lam = w1(3)
    r = linkage_closure(load("sl2"), lam, Exponent(lam, (-4,)))
    assert r.status == "linked" and r.depth == 1


def test_linkage_negative():
    lam = w1(3)
    r = linkage_closure(load("sl2"), lam, Exponent(lam, (-1,)))
    assert r.status == "not-linked-up-to-bounds"


def test_linkage_backwards():
    lam = w1(-5)
    r = linkage_closure(load("sl2"), lam, Exponent(lam, (4,)))
    assert r.linked


# --- enumeration -----------------------------------------------------------

def test_enumerate_minus_half(a11):
    base = integral_base(a11, level_weight(a11, Q(-1, 2)))
    got = enumerate_snowflake_weights(a11, Q(-1, 2), base)
    assert [w.pairings for w in got] == [(Q(-3, 2), 1), (Q(-1, 2), 0)]
    for lam in got:
        assert is_snowflake_hw(a11, lam).holds
        assert level(a11, lam) == Q(-1, 2)


def test_enumerate_box(a11):
    base = integral_base(a11, level_weight(a11, Q(-1, 2)))
    total, marks, ranges = snowflake_box(a11, Q(-1, 2), list(base))
    assert total == 3 and marks == (1, 1)
    assert ranges == [[1, 2], [1, 2]]


def test_enumerate_critical_is_empty(a11):
    assert enumerate_snowflake_weights(a11, -2, list(a11.principal)) == []


def test_enumerate_irrational_refused(a11):
    with pytest.raises(ValueError):
        enumerate_snowflake_weights(a11, sympy.sqrt(2), list(a11.principal))


def test_enumerate_rank_deficient_refused(a11):
    with pytest.raises(ValueError):
        enumerate_snowflake_weights(a11, Q(-1, 2), [a11.principal[0]])


def test_enumerate_integer_level(a11):
    got = enumerate_snowflake_weights(a11, 1, list(a11.principal))
    assert [w.pairings for w in got] == [(0, 1), (1, 0)]


def test_diagram_automorphism_symmetry(a11):
    perm = [1, 0]
    k = Q(-1, 2)
    base = list(integral_base(a11, level_weight(a11, k)))
    look = a11.root_lookup(10)
    moved = [look[diagram_automorphism_root(perm, r)] for r in base]
    lhs = {w.pairings for w in enumerate_snowflake_weights(a11, k, moved)}
    rhs = {diagram_automorphism_weight(perm, w).pairings
           for w in enumerate_snowflake_weights(a11, k, base)}
    assert lhs == rhs and lhs


@pytest.mark.parametrize("k", [Q(-4, 3), Q(1, 2)])
def test_enumeration_members_are_snowflake(a11, k):
    base = integral_base(a11, level_weight(a11, k))
    got = enumerate_snowflake_weights(a11, k, base)
    assert got
    for lam in got:
        assert is_snowflake_hw(a11, lam).holds
        assert integral_base(a11, lam).coords() == base.coords()


# --- finite isotropic restricted test --------------------------------------

@pytest.mark.parametrize("lam, value, holds", [((1, 1), 2, True), ((1, -1), 0, False),
                                               ((1, -2), -1, False)])
def test_restricted_sl21(lam, value, holds):
    alg = load("sl21")
    r = restricted_snowflake_findim(alg, w1(*lam))
    assert r.kind == "I"
    assert r.values == ((((1, 1), value),),)
    assert r.holds == holds


def test_restricted_needs_isotropic_fin():
    with pytest.raises(ValueError):
        restricted_snowflake_findim(load("sp4"), w1(0, 0))


def test_restricted_osp9_2_splits_into_two_factors():
    alg = load("osp9_2")
    r = restricted_snowflake_findim(alg, Weight.zero(alg.n))
    assert r.kind == "II" and r.holds
    assert sorted(len(f) for f in r.factors) == [1, 4]
