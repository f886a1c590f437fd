"""ρ, the dot action, levels, typicality, snowflake and admissible weights,
Kac–Kazhdan linkage, and enumeration of snowflake weights at a fixed level."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations, product
from math import ceil, floor, lcm
from typing import Sequence

from . import _num as N
from .cartan_core import ODD, BaseDatum
from .lattice import Exponent, Weight, rebase_offset
from .root_system import AlgebraData, Root, WeylWord
from .subsystems import (RootSubsystemSlice, SubsystemBase, integral_subsystem,
                         subsystem_base)

DEFAULT_H = 20


@dataclass(frozen=True)
class Verdict:
    holds: bool
    status: str
    horizon: int | None = None
    complete: bool = True
    witness: Root | None = None
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds, "status": self.status, "horizon": self.horizon,
               "complete": self.complete}
        if self.witness is not None:
            out["witness"] = list(self.witness.coords)
        out.update(self.details)
        return out


def _exp(lam) -> Exponent:
    return lam if isinstance(lam, Exponent) else Exponent.of(lam)


def plus_rho(alg: AlgebraData, lam) -> Exponent:
    x = _exp(lam)
    return Exponent(x.anchor + alg.rho, x.offset)


def rho_for_base(alg: AlgebraData, base: BaseDatum) -> Exponent:
    """ρ′ = ρ + Σ of the isotropic roots reflected along the path to the base."""
    return Exponent(alg.rho, base.rho_offset)


def shifted_value(alg: AlgebraData, lam, coroot) -> Q:
    """(λ+ρ)(h)."""
    return plus_rho(alg, lam).pair(coroot, alg.A)


def dot_action(alg: AlgebraData, w: WeylWord, lam) -> Exponent:
    """w.λ = w(λ+ρ) − ρ, returned with λ's anchor."""
    x = _exp(lam)
    y = alg.apply_word(w, plus_rho(alg, x))
    return Exponent(x.anchor, y.offset)


# --- level and criticality --------------------------------------------------

def _require_known_growth(alg: AlgebraData) -> None:
    if alg.type.growth not in ("FIN", "AFF"):
        raise NotImplementedError("criticality needs imaginary-root data; unsupported for this type")


def level(alg: AlgebraData, lam):
    x = _exp(lam)
    if alg.delta is None:
        raise ValueError("level is defined for affine type only")
    return alg.weight_form(x.anchor, alg.delta) + alg.form(x.offset, alg.delta)


def is_critical(alg: AlgebraData, lam, module: bool = True) -> bool:
    """Module convention: L(λ) is critical iff (λ+ρ|δ) = 0."""
    _require_known_growth(alg)
    if alg.delta is None:
        return False
    v = level(alg, lam) + (alg.h_dual if module else 0)
    return v == 0


# --- typicality -------------------------------------------------------------

def is_typical(alg: AlgebraData, lam, H: int | None = DEFAULT_H) -> Verdict:
    if alg.non_isotropic:
        return Verdict(True, "typical", H, True)
    H_eff = None if alg.is_fin else H
    rs = alg.generate_roots(H_eff, imaginary=False)
    for r in rs.positive():
        if r.isotropic and shifted_value(alg, lam, r.coroot) == 0:
            return Verdict(False, "atypical", H_eff, True, r)
    if alg.is_fin:
        return Verdict(True, "typical", None, True)
    return Verdict(True, "typical-up-to-H", H, False)


# --- affine horizon ---------------------------------------------------------

def principal_period(alg: AlgebraData) -> int:
    """Least r > 0 with Δ_pr + rδ = Δ_pr."""
    if alg.delta is None:
        raise ValueError("affine type required")
    hd = sum(alg.delta)
    top = max(b.height for b in alg.principal)
    for r in range(1, 7):
        orbit = alg.principal_orbit(top + r * hd).roots
        coords = {x.coords for x in orbit}
        if all(tuple(a + r * d for a, d in zip(b.coords, alg.delta)) in coords
               for b in alg.principal):
            return r
    raise RuntimeError("no translation period found")


def level_period(alg: AlgebraData, k) -> int:
    """q > 0 such that α ∈ Δ(λ) iff α + qδ ∈ Δ(λ) for every λ of level k."""
    if not N.is_rational(k):
        raise ValueError("level must be rational")
    r = principal_period(alg)
    norms = [alg.form(b.coords, b.coords) for b in alg.principal]
    steps = [2 * r * Q(k) / n for n in norms]
    s = lcm(*[x.denominator for x in steps]) if steps else 1
    return r * s


def affine_horizon(alg: AlgebraData, lam) -> int | None:
    """2·ht(qδ) for rational level, else None."""
    if alg.delta is None:
        return None
    k = N.q(level(alg, lam))
    if not N.is_rational(k):
        return None
    return 2 * level_period(alg, k) * sum(alg.delta)


def integral_base(alg: AlgebraData, lam, H: int | None = DEFAULT_H) -> SubsystemBase:
    """Π(λ) with the horizon raised for affine weights of rational level.

    For affine type every element of Π(λ) lies below qδ, so at height
    2·ht(qδ) the computed base is complete and certified.
    """
    if alg.is_fin:
        return subsystem_base(integral_subsystem(lam, alg, None), alg)
    need = affine_horizon(alg, lam)
    if need is None:
        return subsystem_base(integral_subsystem(lam, alg, H), alg)
    H_eff = max(H or 0, need)
    sl = integral_subsystem(lam, alg, H_eff)
    sl = RootSubsystemSlice(sl.positive_roots, H_eff, True, sl.variant)
    base = subsystem_base(sl, alg)
    return base


# --- snowflake / admissible -----------------------------------------------

def is_snowflake_hw(alg: AlgebraData, lam, H: int | None = DEFAULT_H) -> Verdict:
    """(λ+ρ)(β^∨) > 0 for every certified β ∈ Π(λ)."""
    base = integral_base(alg, lam, H)
    values = []
    bad = None
    for r, cert in zip(base.roots, base.certified):
        v = shifted_value(alg, lam, r.coroot)
        values.append([list(r.coords), N.fmt(v), cert])
        if cert and not v > 0 and bad is None:
            bad = r
    holds = bad is None
    return Verdict(holds, "snowflake" if holds else "not-snowflake", base.horizon, base.complete,
                   bad, {"values": values})


def is_admissible(alg: AlgebraData, lam, H: int | None = DEFAULT_H) -> Verdict:
    if not (alg.is_aff and alg.non_isotropic):
        raise ValueError("admissibility is defined here for affine non-isotropic type")
    base = integral_base(alg, lam, H)
    rk = N.rank([r.coords for r in base.roots]) if base.roots else 0
    full = rk == alg.n
    snow = is_snowflake_hw(alg, lam, H)
    values = snow.details["values"]
    holds = full and snow.holds
    status = "admissible" if holds else ("rank-deficient" if not full else "not-snowflake")
    return Verdict(holds, status, base.horizon, base.complete, snow.witness,
                   {"rank": rk, "full_rank": alg.n, "values": values})


def admissible_level(alg: AlgebraData, k, H: int | None = DEFAULT_H) -> Verdict:
    lam = alg.fundamental_weight0().scaled(k)
    return is_admissible(alg, lam, H)


# --- Kac–Kazhdan linkage ----------------------------------------------------

@dataclass(frozen=True)
class LinkagePair:
    source: Exponent
    alpha: Root
    m: int
    target: Exponent

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha.coords), "m": self.m,
                "target_offset": [N.fmt(x) for x in self.target.offset]}


def _bar_positive(alg: AlgebraData, H: int) -> list[Root]:
    """Positive roots α with α/2 not a root, height ≤ H."""
    rs = alg.generate_roots(H, imaginary=alg.delta is not None and alg.imaginary is not None)
    look = rs.lookup()
    out = []
    for r in rs.positive():
        if all(x % 2 == 0 for x in r.coords) and tuple(x // 2 for x in r.coords) in look:
            continue
        out.append(r)
    return out


def _kk_solutions(alg: AlgebraData, x: Exponent, r: Root, H: int, sign: int) -> list[int]:
    """m > 0 with 2(x+ρ|α) = sign·m(α|α) and the parity clauses."""
    xr = plus_rho(alg, x)
    lhs = 2 * alg.exponent_form(xr, r.coords)
    nn = alg.form(r.coords, r.coords)
    mmax = H // r.height
    if nn == 0:
        if lhs != 0:
            return []
        if r.kind == "real":
            return [1] if mmax >= 1 else []
        return list(range(1, mmax + 1))
    m = sign * lhs / nn
    if not N.is_integral(m) or m <= 0 or m > mmax:
        return []
    m = int(m)
    if r.parity == ODD and m % 2 == 0:
        return []
    return [m]


def kk_pairs(alg: AlgebraData, lam, H: int = DEFAULT_H) -> list[LinkagePair]:
    x = _exp(lam)
    out = []
    for r in _bar_positive(alg, H):
        for m in _kk_solutions(alg, x, r, H, +1):
            out.append(LinkagePair(x, r, m, x.shifted(N.scale(-m, r.coords))))
    return out


def _neighbors(alg: AlgebraData, x: Exponent, H: int, roots: list[Root]) -> list[Exponent]:
    out = []
    for r in roots:
        for m in _kk_solutions(alg, x, r, H, +1):
            out.append(x.shifted(N.scale(-m, r.coords)))
        for m in _kk_solutions(alg, x, r, H, -1):
            out.append(x.shifted(N.scale(m, r.coords)))
    return out


def norm_shift(alg: AlgebraData, x: Exponent, y: Exponent):
    """||y+ρ||² − ||x+ρ||² for exponents with a common anchor."""
    if x.anchor != y.anchor:
        raise ValueError("exponents must share an anchor")
    mu = N.sub(y.offset, x.offset)
    return 2 * alg.exponent_form(plus_rho(alg, x), mu) + alg.form(mu, mu)


@dataclass(frozen=True)
class LinkageResult:
    linked: bool
    depth: int | None
    explored: int
    bound: int

    @property
    def status(self) -> str:
        return "linked" if self.linked else "not-linked-up-to-bounds"

    def to_json(self) -> dict:
        return {"status": self.status, "depth": self.depth, "explored": self.explored,
                "depth_bound": self.bound}


def linkage_closure(alg: AlgebraData, lam, nu, depth: int = 6, H: int = DEFAULT_H
                    ) -> LinkageResult:
    """Bidirectional search in the equivalence relation generated by the pairs."""
    a = _exp(lam)
    if isinstance(nu, Weight):
        off = rebase_offset(alg.A, a.anchor, nu)
        if off is None:
            return LinkageResult(False, None, 0, depth)
        b = Exponent(a.anchor, off)
    elif nu.anchor != a.anchor:
        off = rebase_offset(alg.A, a.anchor, nu.anchor)
        if off is None:
            return LinkageResult(False, None, 0, depth)
        b = Exponent(a.anchor, N.add(off, nu.offset))
    else:
        b = nu
    if a == b:
        return LinkageResult(True, 0, 1, depth)
    roots = _bar_positive(alg, H)
    dist = [{a.offset: 0}, {b.offset: 0}]
    fronts = [[a], [b]]
    steps = 0
    while steps < depth and (fronts[0] or fronts[1]):
        side = 0 if (len(fronts[0]) <= len(fronts[1]) and fronts[0]) or not fronts[1] else 1
        nxt = []
        for x in fronts[side]:
            d = dist[side][x.offset]
            for y in _neighbors(alg, x, H, roots):
                if y.offset in dist[side]:
                    continue
                dist[side][y.offset] = d + 1
                if y.offset in dist[1 - side]:
                    total = d + 1 + dist[1 - side][y.offset]
                    return LinkageResult(True, total, len(dist[0]) + len(dist[1]), depth)
                nxt.append(y)
        fronts[side] = nxt
        steps += 1
    return LinkageResult(False, None, len(dist[0]) + len(dist[1]), depth)


# --- snowflake weights at a fixed level ------------------------------------

def _prime_data(alg: AlgebraData, k, pi_prime: Sequence[Root]):
    if not N.is_rational(N.q(k)):
        raise ValueError("the level must be rational")
    if not (alg.is_aff and alg.sym is not None):
        raise ValueError("affine symmetrizable type required")
    roots = list(pi_prime)
    if N.rank([r.coords for r in roots]) != alg.n:
        raise ValueError("QΔ′ ≠ QΔ: the set of snowflake weights is not finite mod Cδ")
    k = N.q(k)
    q = level_period(alg, k)
    M = N.transpose([r.coords for r in roots])
    while True:
        m = N.solve(M, N.scale(q, alg.delta))
        if m is None:
            raise ValueError("qδ is not in the span of Π′")
        if all(x.denominator == 1 for x in m):
            break
        q *= lcm(*[x.denominator for x in m])
    if not all(x > 0 for x in m):
        raise ValueError("Π′ is not of affine type (non-positive marks)")
    return k, q, m


def _weight_from_shifted(alg: AlgebraData, roots: Sequence[Root], v: Sequence) -> Weight | None:
    C = [r.coroot for r in roots]
    x = N.solve(C, v)
    if x is None:
        return None
    return Weight(N.sub(x, alg.rho.pairings))


def snowflake_box(alg: AlgebraData, k, pi_prime: Sequence[Root]):
    """Per-root candidate values (λ+ρ)(β^∨) from the finiteness bound, plus
    the exact linear constraint they must satisfy."""
    k, q, m = _prime_data(alg, k, pi_prime)
    total = q * (k + alg.h_dual)
    ranges = []
    for r, mb in zip(pi_prime, m):
        nb = alg.form(r.coords, r.coords)
        rb = alg.rho.pair(r.coroot)
        frac = rb - floor(rb)
        upper = 2 * total / (mb * nb)
        vals = []
        t = frac if frac > 0 else Q(1)
        while t < upper:
            vals.append(t)
            t += 1
        ranges.append(vals)
    return total, m, ranges


def enumerate_snowflake_weights(alg: AlgebraData, k, pi_prime, H: int | None = None
                                ) -> list[Weight]:
    """Representatives mod Cδ of level-k weights λ with Π(λ) = Π′ and
    (λ+ρ)(β^∨) > 0 on Π′."""
    roots = list(pi_prime.roots if isinstance(pi_prime, SubsystemBase) else pi_prime)
    k = N.q(k)
    if not N.is_rational(k):
        raise ValueError("the level must be rational")
    if k + alg.h_dual == 0:
        return []
    total, m, ranges = snowflake_box(alg, k, roots)
    target = {r.coords for r in roots}
    out = []
    norms = [alg.form(r.coords, r.coords) for r in roots]
    for v in product(*ranges):
        s = sum((mb * vb * nb / 2 for mb, vb, nb in zip(m, v, norms)), Q(0))
        if s != total:
            continue
        lam = _weight_from_shifted(alg, roots, v)
        if lam is None or level(alg, lam) != k:
            continue
        if integral_base(alg, lam, H).coords() != target:
            continue
        if not is_snowflake_hw(alg, lam, H).holds:
            continue
        out.append(lam)
    out.sort(key=lambda w: w.pairings)
    return out


def diagram_automorphism_root(perm: Sequence[int], r: Root) -> tuple:
    out = [0] * len(perm)
    for i, c in enumerate(r.coords):
        out[perm[i]] = c
    return tuple(out)


def diagram_automorphism_weight(perm: Sequence[int], lam: Weight) -> Weight:
    out = [Q(0)] * len(perm)
    for i, c in enumerate(lam.pairings):
        out[perm[i]] = c
    return Weight(tuple(out))


# --- finite-dimensional isotropic type: restricted snowflake test ----------

@dataclass(frozen=True)
class RestrictedSnowflake:
    holds: bool
    kind: str            # "I" or "II"
    bases: tuple         # chosen BaseDatum per factor
    factors: tuple       # Π_i per factor
    values: tuple        # per factor: list of (root coords, value)

    def to_json(self) -> dict:
        return {"holds": self.holds, "type": self.kind,
                "bases": [b.to_json()["simple_roots"] for b in self.bases],
                "factors": [[list(r.coords) for r in f] for f in self.factors],
                "values": [[[list(c), N.fmt(v)] for c, v in f] for f in self.values]}


def transport_highest_weight(alg: AlgebraData, lam, base: BaseDatum) -> tuple[Exponent, Exponent]:
    """(λ′, ρ′) for the simple module L(λ) described with respect to ``base``."""
    from .cartan_core import odd_reflect, original_base
    cur = original_base(alg.m)
    x = _exp(lam)
    rho = Exponent.of(alg.rho)
    for i in base.path:
        beta = cur.simple_roots[i]
        h = cur.coroots[i]
        v = Exponent(x.anchor + rho.anchor, N.add(x.offset, rho.offset)).pair(h, alg.A)
        if v != 0:
            x = x.shifted(N.neg(beta))
        rho = rho.shifted(beta)
        cur = odd_reflect(cur, i)
    return x, rho


def _find_base(alg: AlgebraData, part: set):
    from .subsystems import sigma_pr
    for b in alg.bases:
        if part <= {r.coords for r in sigma_pr(alg, b)}:
            return b
    return None


def restricted_snowflake_findim(alg: AlgebraData, lam) -> RestrictedSnowflake:
    if not (alg.is_fin and not alg.non_isotropic):
        raise ValueError("finite-dimensional isotropic type required")
    pr = list(alg.principal)
    whole = {r.coords for r in pr}
    b = _find_base(alg, whole)
    if b is not None:
        plan = [("I", b, pr)]
    else:
        comps = alg.type.components
        plan = None
        for size in range(1, len(comps)):
            for pick in combinations(range(len(comps)), size):
                p1 = [pr[i] for c in pick for i in comps[c]]
                p2 = [pr[i] for c in range(len(comps)) if c not in pick for i in comps[c]]
                b1 = _find_base(alg, {r.coords for r in p1})
                b2 = _find_base(alg, {r.coords for r in p2})
                if b1 is not None and b2 is not None:
                    plan = [("II", b1, p1), ("II", b2, p2)]
                    break
            if plan:
                break
        if plan is None:
            raise ValueError("no type I or type II base pair found among the bases")
    holds = True
    values = []
    for _, base, part in plan:
        x, rho = transport_highest_weight(alg, lam, base)
        shifted = Exponent(x.anchor + rho.anchor, N.add(x.offset, rho.offset))
        sub = {}
        for g in part:
            for img, _w in alg.weyl_orbit(g, 64, part):
                if img.positive:
                    sub[img.coords] = img
        ints = tuple(sorted((r for r in sub.values() if N.is_integral(x.pair(r.coroot, alg.A))),
                            key=lambda r: r.sort_key))
        fb = subsystem_base(RootSubsystemSlice(ints, None, True), alg)
        vals = []
        for r in fb.roots:
            v = shifted.pair(r.coroot, alg.A)
            vals.append((r.coords, v))
            if not v > 0:
                holds = False
        values.append(tuple(vals))
    kind = plan[0][0]
    return RestrictedSnowflake(holds, kind, tuple(p[1] for p in plan),
                               tuple(tuple(p[2]) for p in plan), tuple(values))
