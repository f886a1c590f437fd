from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

import superkac._num as N
from superkac.cartan_core import classify
from superkac.catalog import load
from superkac.lattice import Exponent, Weight
from superkac.root_system import WeylWord, generate_roots, leq, reflect

FIN = ["sl2", "osp12", "sl21", "gl11", "osp9_2", "sp4", "osp14"]


def coords(roots):
    return {r.coords for r in roots}


def sigma(alg, parts):
    return tuple(int(x) for x in alg.coordinates.to_sigma(parts))


# --- principal roots and B -------------------------------------------------

def test_principal_osp12():
    alg = load("osp12")
    assert coords(alg.principal) == {(2,)}
    assert alg.principal[0].coroot == (Q(1, 2),)
    assert alg.B == ((2,),)


def test_principal_sl21():
    assert coords(load("sl21").principal) == {(1, 1)}


def test_principal_osp_2_4_twisted():
    alg = load("osp_2_4_twisted")
    labels = {alg.coordinates.label(r.coords) for r in alg.principal}
    assert labels == {"2delta-2e1", "e1-e2", "2e2"}
    assert classify(alg.m, alg.B).growth == "AFF"


def test_matrix_b_sl2():
    assert load("sl2").B == ((2,),)


def test_principal_ordering_by_height():
    alg = load("osp9_2")
    keys = [r.sort_key for r in alg.principal]
    assert keys == sorted(keys)


@pytest.mark.parametrize("name", FIN + ["A1_1", "osp12_1", "osp14_1", "osp_2_4_twisted"])
def test_matrix_b_entries(name):
    alg = load(name)
    for i, bi in enumerate(alg.principal):
        for j, bj in enumerate(alg.principal):
            assert alg.B[i][j] == alg.pair(bi.coroot, bj.coords)


# --- root generation -------------------------------------------------------

def test_roots_sl2():
    assert coords(generate_roots(load("sl2"), 5)) == {(1,), (-1,)}


def test_roots_osp12():
    rs = generate_roots(load("osp12"), 5)
    assert {(r.coords, r.parity) for r in rs} == {((1,), 1), ((-1,), 1), ((2,), 0), ((-2,), 0)}


def test_roots_sl21():
    rs = generate_roots(load("sl21"), 3)
    got = {(r.coords, r.parity, r.isotropic) for r in rs}
    assert got == {((1, 0), 1, True), ((-1, 0), 1, True), ((0, 1), 1, True),
                   ((0, -1), 1, True), ((1, 1), 0, False), ((-1, -1), 0, False)}


def test_roots_osp9_2_count():
    # even: 32 roots of B4 and ±2d1; odd: ±d1±ei and ±d1
    rs = generate_roots(load("osp9_2"), None)
    assert len(rs) == 32 + 18 + 2


def test_affine_roots_carry_imaginary():
    rs = generate_roots(load("A1_1"), 4)
    im = [r for r in rs.positive() if r.kind == "imaginary"]
    assert coords(im) == {(1, 1), (2, 2)}
    assert all(r.multiplicity == (1, 0) for r in im)
    assert rs.truncated


def test_affine_delta_is_null():
    for name in ("A1_1", "osp12_1", "osp14_1", "osp_2_4_twisted"):
        alg = load(name)
        assert N.is_zero(N.matvec(alg.A, alg.delta))
        assert all(x > 0 for x in alg.delta)


def test_twisted_needs_table():
    with pytest.raises(ValueError):
        generate_roots(load("osp_2_4_twisted"), 5)


def test_unbounded_affine_refused():
    with pytest.raises(ValueError):
        generate_roots(load("A1_1"), None)


@pytest.mark.parametrize("name", FIN)
def test_roots_symmetric(name):
    rs = generate_roots(load(name), None)
    c = coords(rs)
    assert all(tuple(-x for x in r) in c for r in c)
    assert all(sum(r.multiplicity) == 1 for r in rs)


@pytest.mark.parametrize("name", FIN)
def test_reflections_preserve_parity(name):
    alg = load(name)
    rs = generate_roots(alg, None)
    look = rs.lookup()
    for b in alg.principal:
        for r in rs:
            img = reflect(alg, r, b)
            assert img.coords in look
            assert look[img.coords].parity == r.parity


@pytest.mark.parametrize("name", FIN)
def test_principal_orbit_coroots_pair_to_two(name):
    alg = load(name)
    for r in alg.principal_orbit(None):
        assert alg.pair(r.coroot, r.coords) == 2


@pytest.mark.parametrize("name", ["osp9_2", "sl21", "sp4"])
def test_positive_orbit_roots_nonnegative_in_every_base(name):
    alg = load(name)
    for r in alg.principal_orbit(None).positive():
        for base in alg.bases:
            c = N.solve(N.transpose(base.simple_roots), r.coords)
            assert all(x >= 0 for x in c)


# --- reflections and words -------------------------------------------------

def test_reflect_root_to_negative():
    alg = load("sl2")
    a = alg.principal[0]
    assert reflect(alg, a, a).coords == (-1,)


def test_reflect_osp9_2():
    alg = load("osp9_2")
    look = alg.root_lookup(None)
    x = look[sigma(alg, {"e1": 1, "e3": -1})]
    b = look[sigma(alg, {"e2": 1, "e3": -1})]
    assert reflect(alg, x, b).coords == sigma(alg, {"e1": 1, "e2": -1})


def test_reflect_isotropic_refused():
    alg = load("sl21")
    iso = alg.root_lookup(None)[(1, 0)]
    with pytest.raises(ValueError):
        reflect(alg, (1, 1), iso)


def test_empty_word_is_identity():
    alg = load("osp9_2")
    lam = Weight((Q(1, 3), 0, 1, 2, Q(-1, 2)))
    assert alg.apply_word(WeylWord(), lam) == lam


def test_orbit_sl2():
    alg = load("sl2")
    orb = alg.weyl_orbit(alg.principal[0], 1)
    assert {r.coords for r, _ in orb} == {(1,), (-1,)}


def test_orbit_affine_a1():
    alg = load("A1_1")
    a1 = alg.root_lookup(1)[(0, 1)]
    orb = alg.weyl_orbit(a1, 3)
    low = {r.coords for r, _ in orb if abs(r.height) <= 5}
    assert low == {(0, 1), (0, -1), (2, 1), (-2, -1), (2, 3), (-2, -3)}


def test_orbit_words_reproduce_images():
    alg = load("sp4")
    for r, w in alg.weyl_orbit(alg.principal[0], 4):
        assert alg.apply_word(w, alg.principal[0]).coords == r.coords


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=6),
       st.lists(st.fractions(-5, 5, max_denominator=7), min_size=5, max_size=5),
       st.integers(0, 8))
def test_pairing_invariance(word, pairings, k):
    alg = load("osp9_2")
    w = alg.word(i % len(alg.principal) for i in word)
    lam = Exponent.of(Weight(tuple(pairings)))
    roots = alg.principal_orbit(None).roots
    a = roots[k % len(roots)]
    lhs = lam.pair(alg.apply_word_coroot(w, a.coroot), alg.A)
    rhs = alg.apply_word(w.inverse(), lam).pair(a.coroot, alg.A)
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=5))
def test_coroot_of_image(word):
    alg = load("osp_2_4_twisted")
    w = alg.word(word)
    look = alg.generate_roots(30, imaginary=False).lookup()
    for b in alg.principal:
        img = alg.apply_word(w, b)
        if img.coords in look:
            assert look[img.coords].coroot == img.coroot


# --- order -----------------------------------------------------------------

def test_leq_zero():
    assert leq(load("sl2"), (0,))


def test_leq_osp9_2():
    alg = load("osp9_2")
    assert leq(alg, sigma(alg, {"e1": 1, "e3": -1}))


def test_leq_negative():
    assert not leq(load("sl2"), (-1,))


def test_leq_non_integral_is_false():
    assert not leq(load("sl2"), (Q(1, 2),))


def test_leq_counts_odd_roots_in_the_principal_cone():
    assert leq(load("osp12"), (1,))


def test_leq_isotropic_root_outside_the_cone():
    alg = load("sl21")
    assert not leq(alg, (1, 0))
    assert leq(alg, (2, 2))


def test_affine_data_a1():
    alg = load("A1_1")
    assert alg.delta == (1, 1)
    assert alg.h_dual == 2
    assert alg.fundamental_weight0().pairings == (1, 0)
