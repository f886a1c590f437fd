"""Roots, principal roots, the matrix B, Weyl group action and the order ≤.

Root coordinates are integer vectors in the original base Σ; coroots are
rational vectors in the original coroot basis.  Positivity always refers to
the original base.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import _num as N
from .cartan_core import (AFF, DEFAULT_BASE_BOUND, EVEN, FIN, IND, ODD, BaseSet,
                          CartanSupermatrix, NotSymmetrizable, Symmetrization,
                          TypeTag, classify, enumerate_bases, symmetrize)
from .lattice import Exponent, Weight

MAX_CLOSURE = 200_000


@dataclass(frozen=True)
class Root:
    coords: tuple
    coroot: tuple | None = field(default=None, compare=False)
    parity: int = field(default=EVEN, compare=False)
    kind: str = field(default="real", compare=False)
    multiplicity: tuple = field(default=(1, 0), compare=False)
    isotropic: bool = field(default=False, compare=False)
    principal: bool = field(default=False, compare=False)

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def positive(self) -> bool:
        return self.height > 0

    @property
    def sort_key(self) -> tuple:
        return (self.height, self.coords)

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.coords),
                    None if self.coroot is None else N.neg(self.coroot),
                    self.parity, self.kind, self.multiplicity, self.isotropic, self.principal)

    def to_json(self) -> dict:
        out = {"coords": list(self.coords), "parity": self.parity, "kind": self.kind}
        if self.coroot is not None:
            out["coroot"] = [N.fmt(x) for x in self.coroot]
        if self.kind == "imaginary":
            out["multiplicity"] = list(self.multiplicity)
        else:
            out["isotropic"] = self.isotropic
        return out


@dataclass(frozen=True)
class WeylWord:
    """w = r_{gens[0]} r_{gens[1]} ... r_{gens[-1]}; the last generator acts first."""
    gens: tuple = ()

    @property
    def length(self) -> int:
        return len(self.gens)

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.gens + other.gens)

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.gens)))


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    H: int | None
    truncated: bool

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def positive(self) -> list[Root]:
        return [r for r in self.roots if r.positive]

    def lookup(self) -> dict:
        return {r.coords: r for r in self.roots}


class ImaginaryMultiplicities:
    """mult(jδ) as (even, odd) dimensions, periodic in j."""

    def __init__(self, values: Sequence[Sequence[int]], source: str):
        self.values = tuple(tuple(int(x) for x in v) for v in values)
        self.source = source
        if not self.values:
            raise ValueError("empty multiplicity table")

    def __call__(self, j: int) -> tuple:
        if j == 0:
            raise ValueError("0·δ is not a root")
        return self.values[(abs(j) - 1) % len(self.values)]

    def to_json(self) -> dict:
        return {"values": [list(v) for v in self.values], "source": self.source}


class AlgebraData:
    """Everything derived from a Cartan supermatrix that later modules use."""

    def __init__(self, m: CartanSupermatrix, *, name: str | None = None,
                 base_bound: int = DEFAULT_BASE_BOUND, affine_node: int | None = None,
                 imaginary_table: Sequence | None = None, coordinates=None):
        self.m = m
        self.name = name or "algebra"
        self.A = m.A
        self.n = m.size
        self.coordinates = coordinates
        self.bases: BaseSet = enumerate_bases(m, base_bound)
        self.principal: tuple = tuple(principal_roots(self.bases, m))
        self.B = matrix_B(self.principal, m.A)
        self.type: TypeTag = classify(m, self.B)
        try:
            self.sym: Symmetrization | None = symmetrize(m.A, m.p)
        except NotSymmetrizable:
            self.sym = None
        self.rho = Weight(tuple(Q(1) if m.A[i][i] != 0 else Q(0) for i in range(self.n)), "rho")
        self._cache: dict = {}
        self.delta = None
        self.affine_node = None
        self.imaginary = None
        if self.type.growth == AFF:
            self._init_affine(affine_node, imaginary_table)
        elif affine_node is not None or imaginary_table is not None:
            raise ValueError("affine data given for a non-affine algebra")

    # --- basic pairings ---------------------------------------------------

    def pair(self, coroot: Sequence, root: Sequence):
        """α(h) for a coroot h and an element α of QΣ."""
        return N.dot(coroot, N.matvec(self.A, root))

    def parity_of(self, coords: Sequence) -> int:
        return int(sum(int(c) * p for c, p in zip(coords, self.m.p))) % 2

    def form(self, u: Sequence, v: Sequence):
        if self.sym is None:
            raise NotSymmetrizable("no invariant form for this matrix")
        return self.sym.form(u, v)

    def weight_form(self, lam: Weight, mu: Sequence):
        """(λ|μ) for a weight λ and μ in QΣ, via α_i^∨ ↔ α_i/d_i."""
        if self.sym is None:
            raise NotSymmetrizable("no invariant form for this matrix")
        return sum((mu[i] * self.sym.d[i] * lam.pairings[i] for i in range(self.n)), Q(0))

    def exponent_form(self, x: Exponent, mu: Sequence):
        return self.weight_form(x.anchor, mu) + self.form(x.offset, mu)

    @property
    def is_fin(self) -> bool:
        return self.type.growth == FIN

    @property
    def is_aff(self) -> bool:
        return self.type.growth == AFF

    @property
    def non_isotropic(self) -> bool:
        return self.type.isotropy == "NonIsotropic"

    def word(self, indices: Iterable[int]) -> WeylWord:
        return WeylWord(tuple(self.principal[i] for i in indices))

    # --- affine data ------------------------------------------------------

    def _init_affine(self, affine_node, table):
        ns = N.nullspace(self.A)
        if len(ns) != 1:
            raise ValueError("affine algebra with kernel of dimension != 1 is unsupported")
        v = N.primitive_integer(ns[0])
        if all(x <= 0 for x in v):
            v = tuple(-x for x in v)
        if not all(x > 0 for x in v):
            raise ValueError("kernel of A has no positive vector")
        self.delta = v
        untwisted = [i for i in range(self.n) if self._untwisted_node(i)]
        if affine_node is None:
            affine_node = untwisted[0] if untwisted else None
        if affine_node is not None and self.delta[affine_node] != 1:
            raise ValueError(f"node {affine_node} has mark {self.delta[affine_node]}, expected 1")
        self.affine_node = affine_node
        if table is not None:
            self.imaginary = ImaginaryMultiplicities(table, "user table")
        elif affine_node is not None and affine_node in untwisted:
            self.imaginary = ImaginaryMultiplicities([(self.n - 1, 0)],
                                                     "untwisted affinization default")

    def _untwisted_node(self, i: int) -> bool:
        """Node i has mark 1, its removal leaves a finite-type matrix, and
        δ − α_i is the highest root of that finite part."""
        if self.delta[i] != 1:
            return False
        keep = [j for j in range(self.n) if j != i]
        sub = CartanSupermatrix([[self.A[a][b] for b in keep] for a in keep],
                                [self.m.p[a] for a in keep])
        try:
            fin = AlgebraData(sub)
        except ValueError:
            return False
        if not fin.is_fin:
            return False
        roots = fin.generate_roots(None, imaginary=False).lookup()
        theta = tuple(self.delta[a] for a in keep)
        if theta not in roots:
            return False
        for k in range(len(keep)):
            up = tuple(x + (1 if t == k else 0) for t, x in enumerate(theta))
            if up in roots:
                return False
        return True

    @property
    def h_dual(self):
        if self.delta is None:
            raise ValueError("dual Coxeter number needs affine type")
        return self.weight_form(self.rho, self.delta)

    def level(self, lam: Weight):
        if self.delta is None:
            raise ValueError("level needs affine type")
        return self.weight_form(lam, self.delta)

    def fundamental_weight0(self) -> Weight:
        if self.affine_node is None:
            raise ValueError("no affine node designated")
        return Weight(tuple(Q(1) if i == self.affine_node else Q(0) for i in range(self.n)),
                      "Lambda0")

    # --- reflections ------------------------------------------------------

    def reflect(self, x, beta: Root):
        """r_β applied to a root (coords or Root), an Exponent, or a Weight."""
        if beta.coroot is None or beta.isotropic:
            raise ValueError("reflection needs a non-isotropic root with a coroot")
        c = beta.coroot
        if isinstance(x, Exponent):
            s = x.pair(c, self.A)
            return Exponent(x.anchor, N.sub(x.offset, N.scale(s, beta.coords)))
        if isinstance(x, Weight):
            s = x.pair(c)
            return Exponent(x, N.neg(N.scale(s, beta.coords)))
        if isinstance(x, Root):
            s = self.pair(c, x.coords)
            coords = tuple(int(a - s * b) for a, b in zip(x.coords, beta.coords))
            coroot = None if x.coroot is None else self.reflect_coroot(x.coroot, beta)
            return Root(coords, coroot, x.parity, x.kind, x.multiplicity, x.isotropic, x.principal)
        v = tuple(x)
        s = self.pair(c, v)
        return tuple(a - s * b for a, b in zip(v, beta.coords))

    def reflect_coroot(self, h: Sequence, beta: Root) -> tuple:
        s = self.pair(h, beta.coords)
        return N.sub(h, N.scale(s, beta.coroot))

    def apply_word(self, w: WeylWord, x):
        for g in reversed(w.gens):
            x = self.reflect(x, g)
        return x

    def apply_word_coroot(self, w: WeylWord, h: Sequence) -> tuple:
        for g in reversed(w.gens):
            h = self.reflect_coroot(h, g)
        return tuple(h)

    def weyl_orbit(self, x, L: int, generators: Sequence[Root] | None = None) -> list:
        """Orbit of x under words of length ≤ L, one witness word each."""
        gens = tuple(generators) if generators is not None else self.principal
        key = _orbit_key
        seen = {key(x): (x, WeylWord())}
        frontier = [(x, WeylWord())]
        for _ in range(L):
            nxt = []
            for y, w in frontier:
                for g in gens:
                    z = self.reflect(y, g)
                    k = key(z)
                    if k not in seen:
                        ww = WeylWord((g,)) * w
                        seen[k] = (z, ww)
                        nxt.append((z, ww))
            frontier = nxt
        return sorted(seen.values(), key=lambda t: (t[1].length, _sort_repr(t[0])))

    # --- roots ------------------------------------------------------------

    def generate_roots(self, H: int | None, imaginary: bool = True) -> RootSet:
        """Real roots with |height| ≤ H (H=None: full closure, FIN only) and,
        for affine type, imaginary roots jδ."""
        ck = ("roots", H, imaginary)
        if ck in self._cache:
            return self._cache[ck]
        if H is None and not self.is_fin:
            raise ValueError("an unbounded root closure needs finite type")
        if H is not None and H < 1:
            raise ValueError("H must be at least 1")
        found: dict = {}
        truncated = False
        gens = self.principal

        def close(seeds: list[Root]) -> None:
            nonlocal truncated
            queue = deque()
            for r in seeds:
                if r.coords not in found:
                    found[r.coords] = r
                    queue.append(r)
            while queue:
                r = queue.popleft()
                for g in gens:
                    s = self.pair(g.coroot, r.coords)
                    if s == 0:
                        continue
                    img = self.reflect(r, g)
                    if H is not None and abs(img.height) > H:
                        truncated = True
                        continue
                    old = found.get(img.coords)
                    if old is None:
                        found[img.coords] = img
                        queue.append(img)
                        if len(found) > MAX_CLOSURE:
                            raise RuntimeError("root closure exceeded the safety limit")
                    elif not old.isotropic and old.coroot != img.coroot:
                        raise AssertionError(f"inconsistent coroots for {img.coords}")

        pr_seeds = []
        for b in self.principal:
            for r in (b, -b):
                if H is None or abs(r.height) <= H:
                    pr_seeds.append(r)
        close(pr_seeds)
        simple_seeds = []
        for base in self.bases:
            for i in range(base.size):
                coords = tuple(int(x) for x in base.simple_roots[i])
                iso = base.is_isotropic(i)
                r = Root(coords, tuple(base.coroots[i]), base.parity[i], "real", _mult(base.parity[i]),
                         iso, False)
                for s in (r, -r):
                    if H is None or abs(s.height) <= H:
                        simple_seeds.append(s)
        close(simple_seeds)
        roots = list(found.values())
        if imaginary and self.delta is not None:
            if self.imaginary is None:
                raise ValueError("missing imaginary multiplicity table for this affine algebra")
            hd = sum(self.delta)
            j = 1
            while H is not None and j * hd <= H:
                e, o = self.imaginary(j)
                for sgn in (1, -1):
                    roots.append(Root(tuple(sgn * j * x for x in self.delta), None,
                                      EVEN if e else ODD, "imaginary", (e, o), False, False))
                j += 1
            if H is not None and j * hd > H:
                truncated = True
        elif imaginary and self.type.growth not in (FIN, AFF):
            raise ValueError("imaginary roots are not available for indefinite type")
        roots.sort(key=lambda r: r.sort_key)
        rs = RootSet(tuple(roots), H, truncated)
        self._cache[ck] = rs
        return rs

    def principal_orbit(self, H: int | None) -> RootSet:
        """The roots of WΠ_pr with |height| ≤ H."""
        rs = self.generate_roots(H, imaginary=False)
        return RootSet(tuple(r for r in rs if r.principal), H, rs.truncated)

    def root_lookup(self, H: int | None) -> dict:
        return self.generate_roots(H, imaginary=False).lookup()

    # --- order ------------------------------------------------------------

    def leq(self, nu: Sequence) -> bool:
        """Decide 0 ≤ ν, i.e. ν ∈ Z≥0 Δ^{++}."""
        nu = tuple(N.q(x) for x in nu)
        if N.is_zero(nu):
            return True
        if not all(N.is_integral(x) and x >= 0 for x in nu):
            return False
        nu = tuple(int(x) for x in nu)
        h = sum(nu)
        cands = [r.coords for r in self._double_plus(h)]
        return _reachable(nu, tuple(cands))

    def _double_plus(self, h: int) -> list[Root]:
        """Positive roots of height ≤ h lying in Q≥0 Π_pr."""
        ck = ("dpp", h)
        if ck in self._cache:
            return self._cache[ck]
        pr = [b.coords for b in self.principal]
        if pr and N.rank(pr) < len(pr):
            raise NotImplementedError("linearly dependent principal roots")
        out = []
        if pr:
            M = N.transpose(pr)
            rs = self.generate_roots(h, imaginary=self.delta is not None and self.imaginary is not None)
            for r in rs.positive():
                c = N.solve(M, r.coords)
                if c is not None and all(x >= 0 for x in c):
                    out.append(r)
        self._cache[ck] = out
        return out

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "supermatrix": self.m.to_json(),
            "bases": len(self.bases),
            "bases_closed": self.bases.closed,
            "principal_roots": [list(b.coords) for b in self.principal],
            "B": [[int(x) for x in row] for row in self.B],
            "type": self.type.to_json(),
        }
        if self.sym is not None:
            out["symmetrization"] = {"d": [N.fmt(x) for x in self.sym.d]}
        if self.delta is not None:
            out["affine"] = {"delta": list(self.delta), "affine_node": self.affine_node,
                             "h_dual": N.fmt(self.h_dual) if self.sym else None,
                             "imaginary": self.imaginary.to_json() if self.imaginary else None}
        return out


def _mult(parity: int) -> tuple:
    return (1, 0) if parity == EVEN else (0, 1)


def _orbit_key(x):
    if isinstance(x, Root):
        return x.coords
    if isinstance(x, Exponent):
        return (x.anchor.pairings, x.offset)
    return tuple(x)


def _sort_repr(x):
    if isinstance(x, Root):
        return x.sort_key
    if isinstance(x, Exponent):
        return (N.height(x.offset) * -1, x.offset)
    return (N.height(x), tuple(x))


@lru_cache(maxsize=None)
def _reachable(nu: tuple, cands: tuple) -> bool:
    if not any(nu):
        return True
    for c in cands:
        rest = tuple(a - b for a, b in zip(nu, c))
        if all(x >= 0 for x in rest) and _reachable(rest, cands):
            return True
    return False


def principal_roots(bases: BaseSet, m: CartanSupermatrix) -> list[Root]:
    """Even α with α or α/2 a simple root of some base; (2β)^∨ = β^∨/2."""
    found: dict = {}
    for base in bases:
        for i in range(base.size):
            if base.is_isotropic(i):
                continue
            coords = tuple(int(x) for x in base.simple_roots[i])
            cor = tuple(base.coroots[i])
            if base.parity[i] == ODD:
                coords = tuple(2 * x for x in coords)
                cor = N.scale(Q(1, 2), cor)
            old = found.get(coords)
            if old is not None and old.coroot != cor:
                raise AssertionError(f"principal root {coords} has two coroots")
            found[coords] = Root(coords, cor, EVEN, "real", (1, 0), False, True)
    return sorted(found.values(), key=lambda r: r.sort_key)


def matrix_B(principal: Sequence[Root], A: Sequence[Sequence]) -> tuple:
    """b_ij = β_j(β_i^∨)."""
    out = []
    for bi in principal:
        row = []
        for bj in principal:
            v = N.dot(bi.coroot, N.matvec(A, bj.coords))
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


def generate_roots(alg: AlgebraData, H: int | None, imaginary: bool = True) -> RootSet:
    return alg.generate_roots(H, imaginary)


def reflect(alg: AlgebraData, x, beta: Root):
    return alg.reflect(x, beta)


def apply_word(alg: AlgebraData, w: WeylWord, x):
    return alg.apply_word(w, x)


def weyl_orbit(alg: AlgebraData, x, L: int, generators=None) -> list:
    return alg.weyl_orbit(x, L, generators)


def leq(alg: AlgebraData, nu: Sequence) -> bool:
    return alg.leq(nu)
