from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from superkac.cartan_core import (CartanSupermatrix, NotSymmetrizable, classify, decompose_components,
                                  enumerate_bases, odd_reflect, original_base, symmetrize,
                                  validate_supermatrix)
from superkac.catalog import BUNDLED, load

SL21 = CartanSupermatrix([[0, 1], [1, 0]], [1, 1])


def axioms(report):
    return [(v.axiom, v.indices) for v in report.violations]


# --- validation ------------------------------------------------------------

def test_validate_sl2():
    assert validate_supermatrix([[2]], [0]).valid


def test_validate_gl11():
    r = validate_supermatrix([[0]], [1])
    assert r.valid and r.closed and r.bases_checked == 2


def test_validate_a00_violation():
    r = validate_supermatrix([[2, -1], [0, 2]], [0, 0])
    assert not r.valid
    assert ("A00", (0, 1)) in axioms(r)


def test_validate_a1_violation():
    r = validate_supermatrix([[2, -1], [-2, 2]], [1, 0])
    assert ("A1", (0,)) in axioms(r)


def test_validate_shape_errors():
    with pytest.raises(ValueError):
        validate_supermatrix([[2, 0]], [0])
    with pytest.raises(ValueError):
        validate_supermatrix([[2]], [0, 1])


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_algebras_validate(name):
    alg = load(name)
    assert validate_supermatrix(alg.A, alg.m.p).valid


# --- odd reflections -------------------------------------------------------

def test_odd_reflect_sl21():
    b = odd_reflect(original_base(SL21), 0)
    assert b.simple_roots == ((-1, 0), (1, 1))
    assert b.matrix == ((0, -1), (-1, 2))
    assert b.parity == (1, 0)
    assert b.rho_offset == (1, 0)


def test_odd_reflect_matrix_matches_pairings():
    b = odd_reflect(original_base(SL21), 0)
    for i in range(2):
        for j in range(2):
            assert b.matrix[i][j] == b.pairing(b.coroots[i], b.simple_roots[j])


def test_odd_reflect_twice_restores():
    b0 = original_base(SL21)
    b2 = odd_reflect(odd_reflect(b0, 0), 0)
    assert b2.same_as(b0)
    assert b2.rho_offset == (0, 0)


def test_odd_reflect_rejects_even_index():
    b = original_base(CartanSupermatrix([[2, -1], [-1, 0]], [0, 1]))
    with pytest.raises(ValueError):
        odd_reflect(b, 0)


def test_odd_reflect_rejects_non_isotropic_odd():
    with pytest.raises(ValueError):
        odd_reflect(original_base(CartanSupermatrix([[2]], [1])), 0)


@pytest.mark.parametrize("name", ["sl21", "gl11", "osp9_2"])
def test_odd_reflection_involution_on_all_bases(name):
    alg = load(name)
    for b in alg.bases:
        for i in b.isotropic_indices():
            assert odd_reflect(odd_reflect(b, i), i).same_as(b)


# --- the set of bases ------------------------------------------------------

@pytest.mark.parametrize("A, p, size", [
    ([[2]], [0], 1),
    ([[0, 1], [1, 0]], [1, 1], 3),
    ([[0]], [1], 2),
    ([[2]], [1], 1),
])
def test_enumerate_bases_sizes(A, p, size):
    bs = enumerate_bases(CartanSupermatrix(A, p))
    assert len(bs) == size and bs.closed


def test_enumerate_bases_gl11_signs():
    bs = enumerate_bases(CartanSupermatrix([[0]], [1]))
    assert {b.simple_roots for b in bs} == {((1,),), ((-1,),)}


def test_enumerate_bases_reports_truncation():
    bs = enumerate_bases(load("osp9_2").m, bound=2)
    assert len(bs) == 2 and not bs.closed


def _even_positive(alg, base):
    """Even positive roots in the sense of the given base: non-negative in its simple roots."""
    import superkac._num as N
    M = N.transpose(base.simple_roots)
    out = set()
    for r in alg.generate_roots(None).positive() + [-x for x in alg.generate_roots(None).positive()]:
        if r.parity:
            continue
        c = N.solve(M, r.coords)
        if all(x >= 0 for x in c):
            out.add(r.coords)
    return out


@pytest.mark.parametrize("name", ["sl21", "osp9_2"])
def test_even_positive_roots_constant_across_bases(name):
    alg = load(name)
    sets = {frozenset(_even_positive(alg, b)) for b in alg.bases}
    assert len(sets) == 1


def test_positive_system_changes_by_one_root():
    import superkac._num as N
    alg = load("sl21")
    roots = [r.coords for r in alg.generate_roots(None)]

    def positive(base):
        M = N.transpose(base.simple_roots)
        return {r for r in roots if all(x >= 0 for x in N.solve(M, r))}

    b0 = alg.bases.original
    b1 = odd_reflect(b0, 0)
    a = b0.simple_roots[0]
    assert positive(b1) == (positive(b0) - {a}) | {tuple(-x for x in a)}


# --- types -----------------------------------------------------------------

@pytest.mark.parametrize("B, growth", [
    ([[2]], "FIN"),
    ([[2, -2], [-2, 2]], "AFF"),
    ([[2, -3], [-3, 2]], "IND"),
    ([[2, -1, 0], [-2, 2, -2], [0, -1, 2]], "AFF"),
])
def test_classify_growth(B, growth):
    m = CartanSupermatrix([[2 if i == j else 0 for j in range(len(B))] for i in range(len(B))],
                          [0] * len(B))
    assert classify(m, B).growth == growth


def test_classify_rejects_non_gcm():
    with pytest.raises(ValueError):
        classify(CartanSupermatrix([[2]], [0]), [[3]])


def test_classify_isotropy():
    assert load("sl21").type.isotropy == "Isotropic"
    assert load("osp12").type.isotropy == "NonIsotropic"


@pytest.mark.parametrize("name", ["sl21", "osp9_2", "gl11"])
def test_classify_same_for_every_base(name):
    alg = load(name)
    growths = set()
    for b in alg.bases:
        m = CartanSupermatrix(b.matrix, b.parity)
        growths.add(classify(m, alg.B).growth)
        symmetrize(b.matrix, b.parity)
    assert growths == {alg.type.growth}


@pytest.mark.parametrize("M, comps", [
    ([[2, 0], [0, 2]], [[0], [1]]),
    ([[2, -1], [-1, 2]], [[0, 1]]),
])
def test_decompose_components(M, comps):
    assert decompose_components(M) == comps


def test_decompose_osp9_2_connected():
    assert decompose_components(load("osp9_2").bases.original) == [[0, 1, 2, 3, 4]]


# --- symmetrization --------------------------------------------------------

def test_symmetrize_symmetric():
    assert symmetrize([[2, -2], [-2, 2]]).d == (1, 1)


def test_symmetrize_b2():
    s = symmetrize([[2, -1], [-2, 2]])
    assert s.d == (1, Q(1, 2))
    assert s.gram == ((2, -1), (-1, 1))
    assert s.gram[0][0] == 2


def test_symmetrize_not_symmetrizable():
    A = [[2, -1, -1], [-1, 2, -2], [-1, -1, 2]]
    with pytest.raises(NotSymmetrizable):
        symmetrize(A)


def test_symmetrize_isotropic_only():
    s = symmetrize([[0, 1], [1, 0]], [1, 1])
    assert s.d == (1, 1)
    assert s.normalized_by == ((0, "first index"),)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 0), min_size=3, max_size=3),
       st.lists(st.integers(1, 3), min_size=2, max_size=2))
def test_symmetrize_gram_is_symmetric(offdiag, scales):
    a, b, c = offdiag
    A = [[2, a, 0], [b * scales[0] if a else 0, 2, c], [0, c * scales[1] if c else 0, 2]]
    if (A[0][1] == 0) != (A[1][0] == 0) or (A[1][2] == 0) != (A[2][1] == 0):
        return
    s = symmetrize(A)
    for i in range(3):
        for j in range(3):
            assert s.gram[i][j] == s.gram[j][i]
