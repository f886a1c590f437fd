"""The nine acceptance checks, each printed as one pass/fail line."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import product
from typing import Callable

from . import _num as N
from . import characters as C
from .cartan_core import enumerate_bases, odd_reflect
from .catalog import load
from .lattice import Exponent, Weight
from .root_system import AlgebraData, WeylWord
from .subsystems import (InternalConsistencyError, integral_subsystem, plain_integral,
                         rho_shifted_integral)
from .weight_classify import (admissible_level, enumerate_snowflake_weights, integral_base,
                              is_snowflake_hw, kk_pairs, level, norm_shift, snowflake_box)

SEED = 20_240_501


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.title} ({self.seconds:.2f}s / {self.limit:g}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit": self.limit, "detail": self.detail}


def _timed(number: int, title: str, limit: float, fn: Callable[[], tuple[bool, dict]]
           ) -> CriterionResult:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported with its message
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    dt = time.perf_counter() - t
    if dt > limit:
        detail = dict(detail, over_time=True)
    return CriterionResult(number, title, ok and dt <= limit, dt, limit, detail)


def _labels(alg: AlgebraData, roots) -> set:
    return {alg.coordinates.label(r.coords) for r in roots}


# --- 1 ----------------------------------------------------------------------

def criterion_1() -> tuple[bool, dict]:
    alg = load("osp9_2")
    lam = alg.coordinates.weight({"e1": Q(1, 3), "e3": Q(1, 3)})
    sl = integral_subsystem(lam, alg, None)
    base = integral_base(alg, lam)
    got_pos, got_base = _labels(alg, sl.positive_roots), _labels(alg, base.roots)
    want_pos = {"e1-e3", "e2", "e4", "e2+e4", "e2-e4", "2d1"}
    want_base = {"e1-e3", "e2-e4", "e4", "2d1"}
    ok = got_pos == want_pos and got_base == want_base and sl.complete and base.all_certified
    return ok, {"positive": sorted(got_pos), "base": sorted(got_base)}


# --- 2 ----------------------------------------------------------------------

C2_AFFINE = ((2, -1, 0), (-2, 2, -2), (0, -1, 2))


def _equal_up_to_permutation(M, T) -> bool:
    from itertools import permutations
    n = len(T)
    return any(all(M[p[i]][p[j]] == T[i][j] for i in range(n) for j in range(n))
               for p in permutations(range(n)))


def criterion_2() -> tuple[bool, dict]:
    alg = load("osp_2_4_twisted")
    got = _labels(alg, alg.principal)
    want = {"2delta-2e1", "e1-e2", "2e2"}
    ok = (got == want and alg.type.growth == "AFF"
          and _equal_up_to_permutation(alg.B, C2_AFFINE))
    return ok, {"principal": sorted(got), "growth": alg.type.growth,
                "B": [[N.fmt(x) for x in r] for r in alg.B]}


# --- 3 ----------------------------------------------------------------------

DENOMINATOR_ALGEBRAS = ("sl2", "osp12", "sp4", "osp14", "osp12_1")


def criterion_3(D: int = 15) -> tuple[bool, dict]:
    out = {}
    for name in DENOMINATOR_ALGEBRAS:
        alg = load(name)
        num = C.snowflake_numerator(alg, Weight.zero(alg.n), D)
        direct = C.rho_times(alg, C.weyl_denominator(alg, D))
        out[name] = num.same_as(direct) and num.D == direct.D
    return all(out.values()), out


# --- 4 ----------------------------------------------------------------------

def random_weight(rng: random.Random, n: int, den: int = 7, span: int = 5) -> Weight:
    return Weight(tuple(Q(rng.randint(-span * den, span * den), rng.randint(1, den))
                        for _ in range(n)))


def criterion_4(D: int = 12, per_algebra: int = 5) -> tuple[bool, dict]:
    rng = random.Random(SEED)
    out = {}
    for name in DENOMINATOR_ALGEBRAS:
        alg = load(name)
        R = C.weyl_denominator(alg, D)
        ok = True
        for _ in range(per_algebra):
            lam = random_weight(rng, alg.n)
            prod = R.mul(C.verma_character(alg, lam, D))
            ok &= prod.same_as(C.verma_numerator(alg, lam).truncate(D))
        out[name] = ok
    return all(out.values()), out


# --- 5 ----------------------------------------------------------------------

# (flavor, a, b) -> (case, Enright image as (module, b, parity shift)) read off the
# rank-one decomposition of twisted Verma modules.
RANK1_TABLE = [
    ("sl2", Q(0), Q(3), "a-integral", ("M", Q(3), False)),
    ("sl2", Q(1, 2), Q(1, 2), "a-b-integral", ("M", Q(-5, 2), False)),
    ("sl2", Q(1, 3), Q(4, 3), "a-b-integral", ("M", Q(-10, 3), False)),
    ("sl2", Q(-2, 5), Q(3, 5), "a-b-integral", ("M", Q(-13, 5), False)),
    ("sl2", Q(1, 2), Q(1, 3), "simple", None),
    ("sl2", Q(1, 3), Q(0), "simple", None),
    ("osp12", Q(0), Q(2), "a-integral", ("M", Q(2), False)),
    ("osp12", Q(1, 2), Q(1, 2), "a-b-integral", ("M", Q(-3, 2), True)),
    ("osp12", Q(1, 3), Q(1, 3), "a-b-integral", ("M", Q(-4, 3), True)),
    ("osp12", Q(-2, 5), Q(-12, 5), "a-b-integral", ("M", Q(7, 5), True)),
    ("osp12", Q(1, 2), Q(1, 5), "simple", None),
    ("osp12", Q(-2, 5), Q(1), "simple", None),
]


def _rank1_scale(flavor: str) -> int:
    """λ(α^∨) = b means pairing b (sl2) or 2b (osp12) against the simple coroot."""
    return 1 if flavor == "sl2" else 2


def criterion_5(D: int = 12) -> tuple[bool, dict]:
    identity = {}
    for flavor, name in (("sl2", "sl2"), ("osp12", "osp12")):
        alg = load(name)
        alpha = alg.principal[0]
        k = _rank1_scale(flavor)
        for a in (Q(1, 2), Q(1, 3), Q(-2, 5)):
            ok = True
            for b in (a, a + 1, a - 2):
                s = C.verma_character(alg, Weight((k * b,)), D, super_=True)
                res = C.enright_halfdensity_transform(alg, s, alpha, flavor, a)
                img = C.rank1_enright_verma(flavor, b, a).enright_image
                pred = C.verma_character(alg, Weight((k * img.b,)), D, super_=True)
                if img.parity_shift:
                    pred = pred.scale(C.EPS)
                ok &= res.series.same_as(pred, alg.A)
                F = C._half_density(alg, alpha, flavor)
                lhs = F.mul(pred)
                lhs = C.TruncatedSeries(lhs.anchor, lhs.terms, None)
                rhs = res.numerator
                ok &= lhs.same_as(rhs, alg.A) if lhs.anchor == rhs.anchor else \
                    lhs.rebase(rhs.anchor, alg.A).terms == rhs.terms
            identity[f"{flavor} a={a}"] = ok
    table = {}
    for flavor, a, b, case, image in RANK1_TABLE:
        dec = C.rank1_enright_verma(flavor, b, a)
        got = None if dec.enright_image is None else (
            dec.enright_image.module, dec.enright_image.b, dec.enright_image.parity_shift)
        table[f"{flavor} a={a} b={b}"] = dec.case == case and got == image
    ok = all(identity.values()) and all(table.values()) and len(table) == 12
    return ok, {"identity": identity, "rank1_cases": table}


# --- 6 ----------------------------------------------------------------------

def weyl_dimension(alg: AlgebraData, lam: Weight):
    """Π_{α>0} (λ+ρ|α)/(ρ|α), finite type, non-isotropic."""
    num = den = Q(1)
    for r in alg.generate_roots(None, imaginary=False).positive():
        if r.parity == 1 or not r.principal:
            continue
        num *= alg.weight_form(lam + alg.rho, r.coords)
        den *= alg.weight_form(alg.rho, r.coords)
    return num / den


def criterion_6() -> tuple[bool, dict]:
    alg = load("sp4")
    out = {}
    for p in product((0, 1, 2), repeat=2):
        lam = Weight(p)
        num = C.snowflake_numerator(alg, lam, 10 ** 6)
        D = int(num.max_depth()) + 1
        total = C.snowflake_character(alg, lam, D).total()
        out[str(p)] = [total, int(weyl_dimension(alg, lam))]
    return all(a == b for a, b in out.values()), out


# --- 7 ----------------------------------------------------------------------

def box_scan(alg: AlgebraData, k, pi_prime, H: int | None = None) -> list[Weight]:
    """Exhaustive scan of the integer box 1 ≤ v_β ≤ floor(q(k+h^∨)/m_β)."""
    roots = list(pi_prime)
    total, m, _ = snowflake_box(alg, k, roots)
    target = {r.coords for r in roots}
    C_ = [r.coroot for r in roots]
    out = []
    for v in product(*[range(1, int(total / mb) + 1) for mb in m]):
        x = N.solve(C_, [Q(t) for t in v])
        if x is None:
            continue
        lam = Weight(N.sub(x, alg.rho.pairings))
        if level(alg, lam) != k:
            continue
        if integral_base(alg, lam, H).coords() != target:
            continue
        if is_snowflake_hw(alg, lam, H).holds:
            out.append(lam)
    return sorted(out, key=lambda w: w.pairings)


def criterion_7() -> tuple[bool, dict]:
    alg = load("A1_1")
    k = Q(-1, 2)
    v = admissible_level(alg, k)
    values = sorted(Q(x[1]) for x in v.details["values"])
    neg = admissible_level(alg, Q(-3))
    lam0 = alg.fundamental_weight0().scaled(k)
    pi = integral_base(alg, lam0, 24)
    found = enumerate_snowflake_weights(alg, k, pi, H=24)
    all_snow = all(is_snowflake_hw(alg, w, 24).holds for w in found)
    scan = box_scan(alg, k, pi.roots, 24)
    ok = (v.holds and values == [1, 2] and not neg.holds and all_snow and bool(found)
          and [w.pairings for w in found] == [w.pairings for w in scan])
    return ok, {"admissible(-1/2)": v.holds, "values": [N.fmt(x) for x in values],
                "admissible(-3)": neg.holds,
                "enumerated": [[N.fmt(x) for x in w.pairings] for w in found],
                "box_scan": [[N.fmt(x) for x in w.pairings] for w in scan]}


# --- 8 ----------------------------------------------------------------------

def brute_force_bases(alg: AlgebraData, limit: int = 4096) -> set:
    """Simple-root sets closed under the odd-reflection rule, computed on root
    vectors with the invariant form alone: at an odd α with (α|α)=0, α ↦ −α,
    β ↦ β+α when (α|β) ≠ 0, and β fixed otherwise."""
    n = alg.n
    start = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    seen = {frozenset(start)}
    stack = [start]
    while stack:
        roots = stack.pop()
        for a in roots:
            if alg.parity_of(a) != 1 or alg.form(a, a) != 0:
                continue
            new = tuple(tuple(-x for x in a) if r == a else
                        (tuple(x + y for x, y in zip(r, a)) if alg.form(a, r) != 0 else r)
                        for r in roots)
            key = frozenset(new)
            if key not in seen:
                seen.add(key)
                stack.append(new)
                if len(seen) > limit:
                    raise RuntimeError("brute-force base search exceeded its limit")
    return seen


def criterion_8() -> tuple[bool, dict]:
    out = {}
    sl21 = load("sl21")
    out["sl21"] = [len(enumerate_bases(sl21.m).bases), len(brute_force_bases(sl21))]
    out["gl11"] = len(enumerate_bases(load("gl11").m).bases)
    non_iso = {name: len(enumerate_bases(load(name).m).bases)
               for name in ("sl2", "osp12", "sp4", "osp14", "A1_1", "osp12_1", "osp14_1",
                            "osp_2_4_twisted")}
    out["non_isotropic"] = non_iso
    ok = out["sl21"] == [3, 3] and out["gl11"] == 2 and all(v == 1 for v in non_iso.values())
    return ok, out


# --- 9 ----------------------------------------------------------------------

FIN_ALGEBRAS = ("osp9_2", "sp4", "osp14", "sl21", "osp12")


def _random_word(rng: random.Random, alg: AlgebraData, length: int) -> WeylWord:
    return WeylWord(tuple(rng.choice(alg.principal) for _ in range(length)))


def _full_delta(alg: AlgebraData, lam) -> set:
    pos = integral_subsystem(lam, alg, None).positive_roots
    return {r.coords for r in pos} | {tuple(-x for x in r.coords) for r in pos}


def property_odd_involution() -> bool:
    for name in ("sl21", "gl11", "osp9_2"):
        for b in load(name).bases.bases:
            for i in b.isotropic_indices():
                if not odd_reflect(odd_reflect(b, i), i).same_as(b):
                    return False
    return True


def property_weyl_equivariance(rng: random.Random, trials: int = 100) -> bool:
    for t in range(trials):
        alg = load(FIN_ALGEBRAS[t % len(FIN_ALGEBRAS)])
        if not alg.principal:
            continue
        lam = random_weight(rng, alg.n, den=3)
        w = _random_word(rng, alg, rng.randint(0, 4))
        wlam = alg.apply_word(w, Exponent.of(lam)).to_weight(alg.A)
        image = {tuple(int(x) for x in alg.apply_word(w, c)) for c in _full_delta(alg, lam)}
        if image != _full_delta(alg, wlam):
            return False
        mu = tuple(rng.randint(-3, 3) for _ in range(alg.n))
        shifted = Exponent(lam, mu).to_weight(alg.A)
        if _full_delta(alg, shifted) != _full_delta(alg, lam):
            return False
    return True


def property_linkage_norm(rng: random.Random) -> tuple[bool, int]:
    count = 0
    cases = []
    for name in ("sl2", "osp12", "sp4", "osp14", "osp9_2"):
        alg = load(name)
        for _ in range(6):
            cases.append((alg, random_weight(rng, alg.n, den=2)))
    a1 = load("A1_1")
    for k in (Q(-1, 2), Q(1), Q(-4, 3), Q(2)):
        cases.append((a1, a1.fundamental_weight0().scaled(k)))
    for alg, lam in cases:
        x = Exponent.of(lam)
        for p in kk_pairs(alg, x, 12):
            count += 1
            if norm_shift(alg, x, p.target) != 0:
                return False, count
    return True, count


def random_snowflake_weights(rng: random.Random, count: int = 20) -> list:
    out = []
    names = ("sl2", "osp12", "sp4", "osp14", "osp9_2", "A1_1", "osp12_1")
    tries = 0
    while len(out) < count and tries < 5000:
        tries += 1
        alg = load(names[tries % len(names)])
        lam = random_weight(rng, alg.n, den=2, span=3)
        if alg.delta is not None:
            lvl = level(alg, lam)
            if lvl + alg.h_dual <= 0:
                continue
        if is_snowflake_hw(alg, lam, 16).holds:
            out.append((alg, lam))
    return out


def property_skew(rng: random.Random, D: int = 10) -> tuple[bool, int]:
    sample = random_snowflake_weights(rng)
    for alg, lam in sample:
        num = C.snowflake_numerator(alg, lam, D, 16)
        pi = integral_base(alg, lam, 16)
        if not all(r.holds for r in C.skew_invariance_check(alg, num, pi.roots).values()):
            return False, len(sample)
    return len(sample) == 20, len(sample)


def property_integrality_agree(rng: random.Random, trials: int = 100) -> bool:
    for t in range(trials):
        alg = load(FIN_ALGEBRAS[t % len(FIN_ALGEBRAS)])
        lam = random_weight(rng, alg.n, den=4)
        rs = alg.generate_roots(None, imaginary=False)
        look = rs.lookup()
        for r in rs.positive():
            if r.principal and plain_integral(lam, r, alg) != rho_shifted_integral(lam, r, alg, look):
                return False
        try:
            integral_subsystem(lam, alg, None)
        except InternalConsistencyError:
            return False
    return True


def criterion_9() -> tuple[bool, dict]:
    rng = random.Random(SEED)
    out = {"odd_reflection_involution": property_odd_involution(),
           "weyl_equivariance_and_shift": property_weyl_equivariance(rng)}
    ok_link, n = property_linkage_norm(rng)
    out["linkage_norm"] = ok_link
    out["linkage_pairs_checked"] = n
    ok_skew, m = property_skew(rng)
    out["skew_invariance"] = ok_skew
    out["snowflake_samples"] = m
    out["integrality_definitions_agree"] = property_integrality_agree(rng)
    ok = all(v for k, v in out.items() if isinstance(v, bool))
    return ok, out


CRITERIA = [
    (1, "osp(9|2) integral subsystem and its base", 1.0, criterion_1),
    (2, "osp(2|4)^(2) principal roots, B of type C2^(1)", 1.0, criterion_2),
    (3, "denominator identity vs snowflake numerator of 0, D=15", 30.0, criterion_3),
    (4, "R times Verma character equals e^lambda", 30.0, criterion_4),
    (5, "rank-one Enright identity and constituents", 5.0, criterion_5),
    (6, "sp4 snowflake character dimension vs Weyl formula", 10.0, criterion_6),
    (7, "A1^(1) admissible levels and snowflake enumeration", 30.0, criterion_7),
    (8, "base enumeration counts", 1.0, criterion_8),
    (9, "property suites", 60.0, criterion_9),
]


def run(selected=None, properties: bool = True) -> list[CriterionResult]:
    out = []
    for number, title, limit, fn in CRITERIA:
        if selected and number not in selected:
            continue
        if number == 9 and not properties:
            continue
        out.append(_timed(number, title, limit, fn))
    return out


def main() -> int:
    results = run()
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
