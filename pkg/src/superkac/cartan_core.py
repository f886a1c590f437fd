"""Cartan supermatrices, odd reflections, the set of bases, and matrix types.

Indices are 0-based throughout.  A base is described in the coordinates of
the original base: simple roots are integer vectors in ZΣ, coroots are
rational vectors in the original coroot basis, and the pairing of a coroot
``h`` with a root ``r`` is ``h · A · r`` for the original matrix ``A``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations
from typing import Iterable, Sequence

from . import _num as N

EVEN, ODD = 0, 1
DEFAULT_BASE_BOUND = 10_000


@dataclass(frozen=True)
class CartanSupermatrix:
    A: tuple
    p: tuple

    def __post_init__(self):
        A = tuple(tuple(N.q(x) for x in row) for row in self.A)
        n = len(A)
        if n == 0:
            raise ValueError("empty matrix")
        if any(len(row) != n for row in A):
            raise ValueError("A must be square")
        p = tuple(int(x) for x in self.p)
        if len(p) != n:
            raise ValueError(f"parity vector has length {len(p)}, expected {n}")
        if any(x not in (EVEN, ODD) for x in p):
            raise ValueError("parities must be 0 (even) or 1 (odd)")
        if not all(N.is_rational(x) for row in A for x in row):
            raise ValueError("matrix entries must be rational")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "p", p)

    @property
    def size(self) -> int:
        return len(self.A)

    @property
    def non_isotropic(self) -> bool:
        return all(self.A[i][i] != 0 for i in range(self.size))

    def to_json(self) -> dict:
        return {"A": [[N.fmt(x) for x in row] for row in self.A], "p": list(self.p)}

    @classmethod
    def from_json(cls, data: dict) -> "CartanSupermatrix":
        return cls(data["A"], data["p"])


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple
    base_index: int = 0  # position in the enumeration; 0 is the input base

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "indices": list(self.indices), "base": self.base_index}


def axiom_violations(A: Sequence[Sequence], p: Sequence[int]) -> list[Violation]:
    """Check (A00), (A0), (A1) for a single matrix with parities."""
    n = len(A)
    out = []
    for i in range(n):
        for j in range(n):
            if i != j and A[i][j] != 0 and A[j][i] == 0:
                out.append(Violation("A00", (i, j)))
    for i in range(n):
        off = [A[i][j] for j in range(n) if j != i]
        if p[i] == EVEN:
            if A[i][i] != 2 or any(not N.is_integral(x) or x > 0 for x in off):
                out.append(Violation("A0", (i,)))
        else:
            if A[i][i] == 0:
                continue
            if A[i][i] != 2 or any(not N.is_integral(x / 2) or x > 0 for x in off):
                out.append(Violation("A1", (i,)))
    return out


@dataclass(frozen=True)
class BaseDatum:
    simple_roots: tuple
    coroots: tuple
    parity: tuple
    matrix: tuple
    rho_offset: tuple
    path: tuple = ()
    ambient: tuple = field(default=(), compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.simple_roots)

    @property
    def key(self) -> tuple:
        return tuple(sorted(self.simple_roots))

    def is_isotropic(self, i: int) -> bool:
        return self.parity[i] == ODD and self.matrix[i][i] == 0

    def isotropic_indices(self) -> list[int]:
        return [i for i in range(self.size) if self.is_isotropic(i)]

    def pairing(self, coroot: Sequence, root: Sequence):
        return N.dot(coroot, N.matvec(self.ambient, root))

    def same_as(self, other: "BaseDatum") -> bool:
        """Equality of roots, parity, rho offset, non-isotropic coroots and
        matrix rows; isotropic coroots (and their rows) are compared up to a
        non-zero scalar, the freedom left open by the coroot convention."""
        if (self.simple_roots, self.parity, self.rho_offset) != (
                other.simple_roots, other.parity, other.rho_offset):
            return False
        for i in range(self.size):
            c1, c2 = self.coroots[i], other.coroots[i]
            if self.is_isotropic(i):
                if not _proportional(c1, c2):
                    return False
            elif c1 != c2 or self.matrix[i] != other.matrix[i]:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "simple_roots": [[int(x) for x in r] for r in self.simple_roots],
            "coroots": [[N.fmt(x) for x in c] for c in self.coroots],
            "parity": list(self.parity),
            "matrix": [[N.fmt(x) for x in row] for row in self.matrix],
            "rho_offset": [int(x) for x in self.rho_offset],
            "path": list(self.path),
        }


def _proportional(u, v) -> bool:
    ratio = None
    for a, b in zip(u, v):
        if (a == 0) != (b == 0):
            return False
        if a != 0:
            r = b / a
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True


def original_base(m: CartanSupermatrix) -> BaseDatum:
    n = m.size
    units = tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))
    return BaseDatum(
        simple_roots=units,
        coroots=tuple(N.unit(n, i) for i in range(n)),
        parity=m.p,
        matrix=m.A,
        rho_offset=(0,) * n,
        path=(),
        ambient=m.A,
    )


def odd_reflect(base: BaseDatum, i: int) -> BaseDatum:
    """Odd reflection of ``base`` at the isotropic simple root with index i."""
    a = base.matrix
    n = base.size
    if not 0 <= i < n:
        raise IndexError(i)
    if base.parity[i] != ODD or a[i][i] != 0:
        raise ValueError(f"index {i} is not an isotropic odd simple root")
    ai, ci = base.simple_roots[i], base.coroots[i]
    roots, coroots, parity = [], [], []
    for j in range(n):
        aj, cj = base.simple_roots[j], base.coroots[j]
        if j == i:
            roots.append(tuple(-x for x in ai))
            coroots.append(N.neg(ci))
            parity.append(base.parity[j])
        elif a[i][j] == 0:
            roots.append(aj)
            coroots.append(cj)
            parity.append(base.parity[j])
        else:
            aij, aji, ajj = a[i][j], a[j][i], a[j][j]
            if ajj == 2 and aji == -1:
                c = Q(1)
            elif ajj == 0:
                c = 1 / (aij * aji)
            elif ajj == 2:
                c = 1 / (aij * (aji + 1))
            else:
                raise ValueError(f"diagonal entry {ajj} at {j} violates the axioms")
            roots.append(tuple(x + y for x, y in zip(ai, aj)))
            coroots.append(N.scale(c, N.add(N.scale(aij, cj), N.scale(aji, ci))))
            parity.append(1 - base.parity[j])
    A = base.ambient
    matrix = tuple(tuple(N.dot(coroots[j], N.matvec(A, roots[k])) for k in range(n))
                   for j in range(n))
    return BaseDatum(
        simple_roots=tuple(roots),
        coroots=tuple(coroots),
        parity=tuple(parity),
        matrix=matrix,
        rho_offset=tuple(x + y for x, y in zip(base.rho_offset, ai)),
        path=base.path + (i,),
        ambient=A,
    )


@dataclass(frozen=True)
class BaseSet:
    bases: tuple
    closed: bool
    bound: int

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    @property
    def original(self) -> BaseDatum:
        return next(b for b in self.bases if not b.path)


def enumerate_bases(m: CartanSupermatrix, bound: int = DEFAULT_BASE_BOUND) -> BaseSet:
    """Breadth-first closure of the original base under odd reflections."""
    if bound < 1:
        raise ValueError("bound must be positive")
    start = original_base(m)
    seen = {start.key: start}
    queue = deque([start])
    closed = True
    while queue:
        b = queue.popleft()
        for i in b.isotropic_indices():
            nb = odd_reflect(b, i)
            if nb.key in seen:
                continue
            if len(seen) >= bound:
                closed = False
                queue.clear()
                break
            seen[nb.key] = nb
            queue.append(nb)
    bases = tuple(seen[k] for k in sorted(seen))
    return BaseSet(bases, closed, bound)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple
    closed: bool
    bases_checked: int

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [v.to_json() for v in self.violations],
            "closed": self.closed,
            "bases_checked": self.bases_checked,
        }


def validate_supermatrix(A, p, base_bound: int = DEFAULT_BASE_BOUND) -> ValidationReport:
    m = CartanSupermatrix(A, p)
    first = axiom_violations(m.A, m.p)
    if first:
        # reflections of a non-conforming matrix may divide by zero
        return ValidationReport(False, tuple(first), False, 1)
    start = original_base(m)
    seen = {start.key}
    queue = deque([start])
    violations: list[Violation] = []
    checked = 1
    closed = True
    while queue:
        b = queue.popleft()
        for i in b.isotropic_indices():
            try:
                nb = odd_reflect(b, i)
            except (ValueError, ZeroDivisionError):
                violations.append(Violation("reflection", (i,), checked))
                continue
            if nb.key in seen:
                continue
            if checked >= base_bound:
                closed = False
                queue.clear()
                break
            seen.add(nb.key)
            for v in axiom_violations(nb.matrix, nb.parity):
                violations.append(Violation(v.axiom, v.indices, checked))
            checked += 1
            queue.append(nb)
    return ValidationReport(not violations, tuple(violations), closed, checked)


# --- matrix types ---------------------------------------------------------

FIN, AFF, IND = "FIN", "AFF", "IND"


@dataclass(frozen=True)
class TypeTag:
    isotropy: str
    components: tuple  # tuples of indices into B
    growths: tuple     # one tag per component

    @property
    def growth(self) -> str:
        kinds = set(self.growths)
        if not kinds:
            return FIN
        return kinds.pop() if len(kinds) == 1 else "mixed"

    def to_json(self) -> dict:
        return {
            "isotropy": self.isotropy,
            "growth": self.growth,
            "components": [{"indices": list(c), "growth": g}
                           for c, g in zip(self.components, self.growths)],
        }


def decompose_components(base_or_matrix) -> list[list[int]]:
    m = base_or_matrix.matrix if isinstance(base_or_matrix, BaseDatum) else base_or_matrix
    n = len(m)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (m[i][j] != 0 or m[j][i] != 0):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def check_gcm(B: Sequence[Sequence]) -> None:
    n = len(B)
    for i in range(n):
        if B[i][i] != 2:
            raise ValueError(f"B[{i}][{i}] = {B[i][i]} is not 2")
        for j in range(n):
            if i == j:
                continue
            if not N.is_integral(B[i][j]) or B[i][j] > 0:
                raise ValueError(f"B[{i}][{j}] = {B[i][j]} is not a non-positive integer")
            if (B[i][j] == 0) != (B[j][i] == 0):
                raise ValueError(f"B[{i}][{j}] and B[{j}][{i}] are not simultaneously zero")


def growth_type(C: Sequence[Sequence]) -> str:
    """FIN/AFF/IND for an indecomposable generalized Cartan matrix."""
    n = len(C)
    idx = range(n)
    for size in range(1, n):
        for sub in combinations(idx, size):
            if N.det([[C[i][j] for j in sub] for i in sub]) <= 0:
                return IND
    d = N.det(C)
    if d > 0:
        return FIN
    if d == 0:
        return AFF
    return IND


def classify(m: CartanSupermatrix, B: Sequence[Sequence]) -> TypeTag:
    check_gcm(B)
    # an isotropic simple root exists in some base iff it exists in the
    # original one, since odd reflections need one to start from
    isotropy = "NonIsotropic" if m.non_isotropic else "Isotropic"
    comps = decompose_components(B)
    growths = tuple(growth_type([[B[i][j] for j in c] for i in c]) for c in comps)
    return TypeTag(isotropy, tuple(tuple(c) for c in comps), growths)


# --- symmetrization -------------------------------------------------------

class NotSymmetrizable(ValueError):
    pass


@dataclass(frozen=True)
class Symmetrization:
    d: tuple
    gram: tuple
    normalized_by: tuple  # per component: (index, rule)

    def form(self, u: Sequence, v: Sequence):
        return N.dot(u, N.matvec(self.gram, v))


def symmetrize(A: Sequence[Sequence], p: Iterable[int] | None = None) -> Symmetrization:
    """Diagonal d with d_i a_ij = d_j a_ji; the Gram matrix is G = diag(d) A."""
    A = [[N.q(x) for x in row] for row in A]
    n = len(A)
    p = list(p) if p is not None else [EVEN if A[i][i] == 2 else ODD for i in range(n)]
    d: list = [None] * n
    norms = []
    for comp in decompose_components(A):
        root = comp[0]
        d[root] = Q(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in comp:
                if A[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * A[i][j] / A[j][i]
                    stack.append(j)
        for i in comp:
            for j in comp:
                if d[i] * A[i][j] != d[j] * A[j][i]:
                    raise NotSymmetrizable(f"inconsistent at ({i}, {j})")
        pick = next(((i, "first even non-isotropic") for i in comp
                     if p[i] == EVEN and A[i][i] != 0), None)
        if pick is None:
            pick = next(((i, "first non-isotropic") for i in comp if A[i][i] != 0), None)
        if pick is None:
            pick = (comp[0], "first index")
        i0, _ = pick
        s = 1 / d[i0] if A[i0][i0] == 0 else Q(2) / (d[i0] * A[i0][i0])
        for i in comp:
            d[i] *= s
        norms.append(pick)
    gram = tuple(tuple(d[i] * A[i][j] for j in range(n)) for i in range(n))
    return Symmetrization(tuple(d), gram, tuple(norms))
