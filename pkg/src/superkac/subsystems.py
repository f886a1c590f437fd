"""Integral root subsystems Δ(λ), their bases, Weyl subgroups and friendly words."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Sequence

from . import _num as N
from .cartan_core import BaseDatum
from .lattice import Exponent, Weight
from .root_system import AlgebraData, Root, WeylWord

WEYL_TEST_SEED = 20_240_501


class InternalConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class RootSubsystemSlice:
    positive_roots: tuple
    H: int | None
    complete: bool
    variant: str = "plain"

    def coords(self) -> set:
        return {r.coords for r in self.positive_roots}

    def __len__(self) -> int:
        return len(self.positive_roots)

    def to_json(self) -> dict:
        return {"positive_roots": [list(r.coords) for r in self.positive_roots],
                "H": self.H, "complete": self.complete, "variant": self.variant}


@dataclass(frozen=True)
class SubsystemBase:
    roots: tuple
    horizon: int | None
    complete: bool
    certified: tuple = field(default=())

    def coords(self) -> set:
        return {r.coords for r in self.roots}

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def all_certified(self) -> bool:
        return all(self.certified)

    def to_json(self) -> dict:
        return {"roots": [list(r.coords) for r in self.roots], "horizon": self.horizon,
                "complete": self.complete, "certified": list(self.certified)}


def _positive(coords: Sequence) -> bool:
    return all(x >= 0 for x in coords) and any(x > 0 for x in coords)


def plain_integral(lam, r: Root, alg: AlgebraData) -> bool:
    return N.is_integral(_pair(lam, r.coroot, alg))


def _pair(lam, coroot, alg: AlgebraData):
    if isinstance(lam, Exponent):
        return lam.pair(coroot, alg.A)
    return lam.pair(coroot)


def rho_shifted_integral(lam, r: Root, alg: AlgebraData, lookup: dict) -> bool:
    """(λ+ρ)(α^∨) ∈ Z if α/2 ∉ Δ and ∈ Z + 1/2 if α/2 ∈ Δ."""
    v = _pair(lam, r.coroot, alg) + alg.rho.pair(r.coroot)
    half = tuple(Q(x, 2) for x in r.coords)
    if all(x.denominator == 1 for x in half) and tuple(int(x) for x in half) in lookup:
        return N.is_half_integral(v)
    return N.is_integral(v)


def integral_subsystem(lam, alg: AlgebraData, H: int | None, variant: str = "plain"
                       ) -> RootSubsystemSlice:
    """Positive part of Δ(λ) up to height H."""
    if variant not in ("plain", "super"):
        raise ValueError("variant must be 'plain' or 'super'")
    rs = alg.generate_roots(H, imaginary=False)
    lookup = rs.lookup()
    keep = []
    for r in rs.positive():
        if r.principal:
            ok = plain_integral(lam, r, alg)
            if ok != rho_shifted_integral(lam, r, alg, lookup):
                raise InternalConsistencyError(f"integrality tests disagree on {r.coords}")
            if ok:
                keep.append(r)
        elif variant == "super" and r.parity == 1 and not r.isotropic:
            v = _pair(lam, r.coroot, alg)
            if N.is_integral(v) and N.is_integral(v / 2):
                keep.append(r)
    complete = alg.is_fin and not rs.truncated
    return RootSubsystemSlice(tuple(keep), H, complete, variant)


def _decomposable_factory(pos: tuple):
    @lru_cache(maxsize=None)
    def representable(v: tuple) -> bool:
        if not any(v):
            return True
        for g in pos:
            w = tuple(a - b for a, b in zip(v, g))
            if all(x >= 0 for x in w) and representable(w):
                return True
        return False
    return representable


def subsystem_base(slice_: RootSubsystemSlice, alg: AlgebraData) -> SubsystemBase:
    """Π(Δ′): the indecomposable elements of (Δ′)⁺."""
    roots = sorted(slice_.positive_roots, key=lambda r: r.sort_key)
    pos = tuple(r.coords for r in roots)
    representable = _decomposable_factory(pos)
    base = []
    for r in roots:
        b = r.coords
        dec = False
        for g in pos:
            if g == b:
                continue
            w = tuple(x - y for x, y in zip(b, g))
            if any(w) and all(x >= 0 for x in w) and representable(w):
                dec = True
                break
        if not dec:
            base.append(r)
    if slice_.variant == "plain":
        by_def = _base_by_definition(roots, alg)
        if [r.coords for r in by_def] != [r.coords for r in base]:
            raise InternalConsistencyError("indecomposables differ from the reflection criterion")
        if slice_.complete:
            _check_permutation_property(base, roots, alg, slice_.H)
    if slice_.complete or slice_.H is None:
        cert = tuple(True for _ in base)
    else:
        cert = tuple(2 * r.height <= slice_.H for r in base)
    return SubsystemBase(tuple(base), slice_.H, slice_.complete, cert)


def _base_by_definition(roots: list[Root], alg: AlgebraData) -> list[Root]:
    """β with no α in the slice such that 0 < r_αβ < β."""
    out = []
    for b in roots:
        hit = False
        for a in roots:
            if a.coords == b.coords:
                continue
            s = alg.pair(a.coroot, b.coords)
            if s <= 0:
                continue
            img = tuple(x - s * y for x, y in zip(b.coords, a.coords))
            if _positive(img):
                hit = True
                break
        if not hit:
            out.append(b)
    return out


def _check_permutation_property(base, roots, alg: AlgebraData, H: int | None = None) -> None:
    """r_β maps (Δ′)⁺∖{β} into itself; images above height H are only checked for positivity."""
    coords = {r.coords for r in roots}
    for b in base:
        rest = coords - {b.coords}
        for c in rest:
            img = tuple(int(x) for x in alg.reflect(c, b))
            if _positive(img) and (img in rest or (H is not None and sum(img) > H)):
                continue
            raise InternalConsistencyError(f"r_β does not permute (Δ′)⁺∖{{β}} for β={b.coords}")


def base_of(lam, alg: AlgebraData, H: int | None, variant: str = "plain") -> SubsystemBase:
    return subsystem_base(integral_subsystem(lam, alg, H, variant), alg)


def in_integral_subsystem(lam, r: Root, alg: AlgebraData) -> bool:
    return plain_integral(lam, r, alg)


# --- friendliness ---------------------------------------------------------

@dataclass(frozen=True)
class FriendlyWord:
    word: tuple     # α_1, ..., α_s (principal roots)
    target: Root    # β
    image: Root     # r_{α_s} ... r_{α_1} β ∈ Π_pr

    @property
    def weyl_word(self) -> WeylWord:
        """w = r_{α_s} ... r_{α_1}."""
        return WeylWord(tuple(reversed(self.word)))

    def to_json(self) -> dict:
        return {"word": [list(a.coords) for a in self.word], "target": list(self.target.coords),
                "image": list(self.image.coords)}


def friendly_chain(alg: AlgebraData, word: Sequence[Root]) -> list[Root]:
    """α_1, r_{α_1}α_2, …, r_{α_1}…r_{α_{s-1}}α_s."""
    out = []
    for k, a in enumerate(word):
        x = a
        for g in reversed(word[:k]):
            x = alg.reflect(x, g)
        out.append(x)
    return out


def is_friendly(lam, word: Sequence[Root], alg: AlgebraData) -> bool:
    return all(not plain_integral(lam, x, alg) for x in friendly_chain(alg, word))


def friendly_word_to_pr(lam, beta: Root, alg: AlgebraData, check: bool = True) -> FriendlyWord:
    """Greedy descent from β ∈ Π(λ) to a principal root along a friendly word."""
    if beta.coroot is None:
        beta = alg.root_lookup(max(beta.height, 1) if not alg.is_fin else None)[beta.coords]
    if check:
        H = None if alg.is_fin else 2 * beta.height
        pi = base_of(lam, alg, H)
        if beta.coords not in pi.coords():
            raise ValueError(f"{beta.coords} is not in Π(λ)")
    pr = {b.coords for b in alg.principal}
    cur = Exponent.of(lam) if isinstance(lam, Weight) else lam
    b = beta
    word = []
    while b.coords not in pr:
        step = None
        for a in alg.principal:
            s = alg.pair(a.coroot, b.coords)
            if s <= 0:
                continue
            img = alg.reflect(b, a)
            if _positive(img.coords):
                step = (a, img)
                break
        if step is None:
            raise InternalConsistencyError(f"no descent step from {b.coords}")
        a, img = step
        if plain_integral(cur, a, alg):
            raise InternalConsistencyError(f"descent step {a.coords} lies in Δ(λ)")
        word.append(a)
        cur = alg.reflect(cur, a)
        b = img
    return FriendlyWord(tuple(word), beta, b)


# --- Σ_pr, Σ(λ) -------------------------------------------------------------

def sigma_pr(alg: AlgebraData, base: BaseDatum) -> list[Root]:
    simple = {tuple(int(x) for x in r) for r in base.simple_roots}
    out = []
    for a in alg.principal:
        half = tuple(Q(x, 2) for x in a.coords)
        if a.coords in simple or (all(h.denominator == 1 for h in half)
                                  and tuple(int(h) for h in half) in simple):
            out.append(a)
    return out


def sigma_lambda(lam, alg: AlgebraData, base: BaseDatum, H: int | None) -> SubsystemBase:
    """Σ(λ): the base of Δ(λ) ∩ W_Σ Σ_pr."""
    gens = sigma_pr(alg, base)
    if not gens:
        return SubsystemBase((), H, True, ())
    seen = {}
    frontier = []
    for g in gens:
        for r in (g, -g):
            seen[r.coords] = r
            frontier.append(r)
    truncated = False
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                z = alg.reflect(r, g)
                if H is not None and abs(z.height) > H:
                    truncated = True
                    continue
                if z.coords not in seen:
                    seen[z.coords] = z
                    nxt.append(z)
        frontier = nxt
        if len(seen) > 100_000:
            raise RuntimeError("W_Σ orbit too large; lower H")
    pos = tuple(sorted((r for r in seen.values() if r.positive and plain_integral(lam, r, alg)),
                       key=lambda r: r.sort_key))
    sl = RootSubsystemSlice(pos, H, not truncated)
    return subsystem_base(sl, alg)


# --- Weyl subgroups -------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    word: WeylWord
    sign: int
    image: tuple  # offset of the test vector's image


def test_vector(n: int, seed: int = WEYL_TEST_SEED) -> Weight:
    rng = random.Random(seed)
    primes = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157]
    return Weight(tuple(Q(rng.randint(1, 10_000), rng.choice(primes)) + Q(1, 7919)
                        for _ in range(n)), "weyl-test-vector")


def weyl_subgroup(alg: AlgebraData, gens: Sequence[Root], L: int, seed: int = WEYL_TEST_SEED
                  ) -> list[WeylElement]:
    """Elements of the group generated by r_β, β ∈ gens, of length ≤ L."""
    v = Exponent.of(test_vector(alg.n, seed))
    ident = WeylElement(WeylWord(), 1, v.offset)
    seen = {v.offset: ident}
    frontier = [(v, ident)]
    for _ in range(L):
        nxt = []
        for x, el in frontier:
            for g in gens:
                y = alg.reflect(x, g)
                if y.offset in seen:
                    continue
                ne = WeylElement(WeylWord((g,)) * el.word, -el.sign, y.offset)
                seen[y.offset] = ne
                nxt.append((y, ne))
        frontier = nxt
        if not frontier:
            break
    return list(seen.values())
