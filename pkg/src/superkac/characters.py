"""Truncated formal characters over Z[ε]/(ε²−1): denominators, Verma and
snowflake characters, skew-invariance and Enright character transforms."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Iterable, Mapping, Sequence

from . import _num as N
from .cartan_core import BaseDatum
from .lattice import Exponent, Weight
from .root_system import AlgebraData, Root, WeylWord
from .weight_classify import (integral_base, is_critical, is_snowflake_hw, is_typical,
                              plus_rho, rho_for_base)


# --- coefficients -----------------------------------------------------------

@dataclass(frozen=True)
class SuperCoeff:
    """c0 + c1·ε with ε² = 1."""
    c0: int = 0
    c1: int = 0

    def __add__(self, o: "SuperCoeff") -> "SuperCoeff":
        return SuperCoeff(self.c0 + o.c0, self.c1 + o.c1)

    def __sub__(self, o: "SuperCoeff") -> "SuperCoeff":
        return SuperCoeff(self.c0 - o.c0, self.c1 - o.c1)

    def __neg__(self) -> "SuperCoeff":
        return SuperCoeff(-self.c0, -self.c1)

    def __mul__(self, o: "SuperCoeff") -> "SuperCoeff":
        return SuperCoeff(self.c0 * o.c0 + self.c1 * o.c1, self.c0 * o.c1 + self.c1 * o.c0)

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def at(self, eps: int) -> int:
        return self.c0 + eps * self.c1

    @property
    def is_unit(self) -> bool:
        return (abs(self.c0), abs(self.c1)) in ((1, 0), (0, 1))

    def inverse(self) -> "SuperCoeff":
        if not self.is_unit:
            raise ZeroDivisionError(f"{self} is not a unit of Z[ε]")
        return self  # ±1 and ±ε are their own inverses

    def __str__(self) -> str:
        if not self.c1:
            return str(self.c0)
        if not self.c0:
            return f"{self.c1}ε"
        return f"{self.c0}{'+' if self.c1 > 0 else '-'}{abs(self.c1)}ε"


ONE = SuperCoeff(1, 0)
EPS = SuperCoeff(0, 1)


def _coeff(c) -> SuperCoeff:
    if isinstance(c, SuperCoeff):
        return c
    if isinstance(c, tuple):
        return SuperCoeff(*c)
    return SuperCoeff(int(c), 0)


def depth(mu: Sequence) -> Q:
    """ht(−μ)."""
    return -sum(mu, Q(0))


# --- series -----------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """Σ c_μ e^{anchor+μ}. With D set, the coefficients are exact for depth(μ) ≤ D
    and unknown below; D=None means the listed support is the whole series."""
    anchor: Weight
    terms: Mapping = field(default_factory=dict)
    D: Q | int | None = None

    def __post_init__(self):
        clean = {}
        for mu, c in dict(self.terms).items():
            mu = tuple(N.q(x) for x in mu)
            c = _coeff(c)
            if self.D is not None and depth(mu) > self.D:
                continue
            if c:
                clean[mu] = clean.get(mu, SuperCoeff()) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    # constructors
    @classmethod
    def monomial(cls, anchor: Weight, mu: Sequence | None = None, c=ONE, D=None):
        mu = N.zero(anchor.rank) if mu is None else mu
        return cls(anchor, {tuple(mu): c}, D)

    @classmethod
    def one(cls, n: int, D=None):
        return cls.monomial(Weight.zero(n), None, ONE, D)

    # queries
    @property
    def exact(self) -> bool:
        return self.D is None

    @property
    def rank(self) -> int:
        return self.anchor.rank

    def coeff(self, mu: Sequence) -> SuperCoeff:
        return self.terms.get(tuple(N.q(x) for x in mu), SuperCoeff())

    def min_depth(self):
        if self.terms:
            return min(depth(mu) for mu in self.terms)
        return None if self.D is None else self.D

    def max_depth(self):
        return max((depth(mu) for mu in self.terms), default=None)

    def evaluate(self, eps: int) -> "TruncatedSeries":
        return TruncatedSeries(self.anchor, {mu: SuperCoeff(c.at(eps), 0)
                                             for mu, c in self.terms.items()}, self.D)

    def total(self, eps: int = 1) -> int:
        return sum(c.at(eps) for c in self.terms.values())

    def truncate(self, D) -> "TruncatedSeries":
        newD = D if self.D is None else min(D, self.D)
        return TruncatedSeries(self.anchor, self.terms, newD)

    def exponents(self, A) -> list:
        return [Exponent(self.anchor, mu) for mu in self.terms]

    # arithmetic
    def _aligned(self, other: "TruncatedSeries", A) -> "TruncatedSeries":
        if other.anchor == self.anchor:
            return other
        return other.rebase(self.anchor, A)

    def rebase(self, anchor: Weight, A) -> "TruncatedSeries":
        """Re-express over a new anchor differing by an element of QΣ."""
        if anchor == self.anchor:
            return self
        diff = N.sub(self.anchor.pairings, anchor.pairings)
        if not all(N.is_rational(x) for x in diff):
            raise ValueError("anchors do not differ by an element of QΣ")
        if N.rank(A) < len(A):
            raise ValueError("anchor shift is ambiguous for a singular Cartan matrix")
        shift = N.solve(A, diff)
        if shift is None:
            raise ValueError("anchors do not differ by an element of QΣ")
        D = None if self.D is None else self.D - depth(shift)
        return TruncatedSeries(anchor, {N.add(mu, shift): c for mu, c in self.terms.items()}, D)

    def add(self, other: "TruncatedSeries", A=None) -> "TruncatedSeries":
        o = self._aligned(other, A)
        D = _min_window(self.D, o.D)
        terms = dict(self.terms)
        for mu, c in o.terms.items():
            terms[mu] = terms.get(mu, SuperCoeff()) + c
        return TruncatedSeries(self.anchor, terms, D)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.anchor, {mu: -c for mu, c in self.terms.items()}, self.D)

    def sub(self, other: "TruncatedSeries", A=None) -> "TruncatedSeries":
        return self.add(-other, A)

    def scale(self, c) -> "TruncatedSeries":
        c = _coeff(c)
        return TruncatedSeries(self.anchor, {mu: c * v for mu, v in self.terms.items()}, self.D)

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        D = _product_window(self, other)
        terms: dict = {}
        right = sorted(((depth(nu), nu, d) for nu, d in other.terms.items()),
                       key=lambda t: t[0])
        for mu, c in self.terms.items():
            dm = depth(mu)
            for dn, nu, d in right:
                if D is not None and dm + dn > D:
                    break
                k = tuple(x + y for x, y in zip(mu, nu))
                terms[k] = terms.get(k, SuperCoeff()) + c * d
        return TruncatedSeries(self.anchor + other.anchor, terms, D)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.mul(other)
        return self.scale(other)

    def invert(self, D=None) -> "TruncatedSeries":
        """1/s by geometric series; the leading term must sit at offset 0 with a unit
        coefficient and every other term strictly deeper."""
        zero = N.zero(self.rank)
        c = self.coeff(zero)
        if not c.is_unit:
            raise ZeroDivisionError("constant term is not a unit of Z[ε]")
        if any(depth(mu) <= 0 for mu in self.terms if mu != zero):
            raise ValueError("non-leading terms must have positive depth")
        D = self.D if D is None else (D if self.D is None else min(D, self.D))
        if D is None:
            raise ValueError("inverting an exact series needs a truncation height")
        cinv = c.inverse()
        x = TruncatedSeries(Weight.zero(self.rank),
                            {mu: -(cinv * v) for mu, v in self.terms.items() if mu != zero}, D)
        result = TruncatedSeries.one(self.rank, D)
        power = TruncatedSeries.one(self.rank, D)
        while True:
            power = power.mul(x).truncate(D)
            if not power.terms:
                break
            result = result.add(power)
        return TruncatedSeries(-self.anchor, result.scale(cinv).terms, D)

    def same_as(self, other: "TruncatedSeries", A=None) -> bool:
        """Equality on the common window."""
        o = self._aligned(other, A)
        D = _min_window(self.D, o.D)
        a = self.truncate(D) if D is not None else self
        b = o.truncate(D) if D is not None else o
        return a.terms == b.terms

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda t: (depth(t[0]), t[0]))
        return {"anchor": self.anchor.to_json(),
                "D": None if self.D is None else N.fmt(self.D),
                "terms": [{"offset": [N.fmt(x) for x in mu], "c0": c.c0, "c1": c.c1}
                          for mu, c in terms]}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        D = data.get("D")
        return cls(Weight.from_json(data["anchor"]),
                   {tuple(t["offset"]): SuperCoeff(t.get("c0", 0), t.get("c1", 0))
                    for t in data["terms"]}, None if D is None else N.q(D))


def _min_window(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _product_window(s: TruncatedSeries, t: TruncatedSeries):
    if s.D is None and t.D is None:
        return None
    cands = []
    if s.D is not None:
        md = t.min_depth()
        cands.append(s.D + (md if md is not None else 0))
    if t.D is not None:
        md = s.min_depth()
        cands.append(t.D + (md if md is not None else 0))
    return min(cands)


# --- denominators and Verma characters ----------------------------------------

def _positive_roots(alg: AlgebraData, D) -> list[Root]:
    if alg.type.growth not in ("FIN", "AFF"):
        raise NotImplementedError("characters need finite or affine type")
    H = None if alg.is_fin else max(1, int(D))
    rs = alg.generate_roots(H, imaginary=True)
    return [r for r in rs.positive() if r.height <= D]


def _factor(alg: AlgebraData, r: Root, c: SuperCoeff, D) -> TruncatedSeries:
    """1 + c·e^{−γ}."""
    z = N.zero(alg.n)
    return TruncatedSeries(Weight.zero(alg.n), {z: ONE, N.neg(r.coords): c}, D)


def _geometric(alg: AlgebraData, r: Root, c: SuperCoeff, D) -> TruncatedSeries:
    """Σ_k (c·e^{−γ})^k = 1/(1 − c·e^{−γ})."""
    terms = {}
    k, ck = 0, ONE
    while k * r.height <= D:
        terms[N.scale(-k, r.coords)] = ck
        k += 1
        ck = ck * c
    return TruncatedSeries(Weight.zero(alg.n), terms, D)


def weyl_denominator(alg: AlgebraData, D, part: str = "R") -> TruncatedSeries:
    """R = R0·R1^{-1}; part ∈ {R, R0, R1, super, R1super}."""
    if part not in ("R", "R0", "R1", "super", "R1super"):
        raise ValueError("part must be one of R, R0, R1, super, R1super")
    roots = _positive_roots(alg, D)
    odd_c = EPS if part in ("super", "R1super") else ONE
    R0 = TruncatedSeries.one(alg.n, D)
    R1 = TruncatedSeries.one(alg.n, D)
    for r in roots:
        m0, m1 = r.multiplicity
        for _ in range(m0):
            R0 = R0.mul(_factor(alg, r, -ONE, D))
        for _ in range(m1):
            R1 = R1.mul(_factor(alg, r, odd_c, D))
    if part == "R0":
        return R0
    if part in ("R1", "R1super"):
        return R1
    return R0.mul(R1.invert(D))


def verma_character(alg: AlgebraData, lam, D, super_: bool = False) -> TruncatedSeries:
    """ch M(λ) (or ch_ε with super_) as a direct product of geometric series."""
    roots = _positive_roots(alg, D)
    odd_c = EPS if super_ else ONE
    out = TruncatedSeries.one(alg.n, D)
    for r in roots:
        m0, m1 = r.multiplicity
        for _ in range(m0):
            out = out.mul(_geometric(alg, r, ONE, D))
        for _ in range(m1):
            out = out.mul(_factor(alg, r, odd_c, D))
    return _anchored(out, lam)


def verma_numerator(alg: AlgebraData, lam) -> TruncatedSeries:
    """R·ch M(λ) = e^λ."""
    return _anchored(TruncatedSeries.one(alg.n), lam)


def _anchored(s: TruncatedSeries, lam) -> TruncatedSeries:
    if isinstance(lam, Exponent):
        return TruncatedSeries(s.anchor + lam.anchor,
                               {N.add(mu, lam.offset): c for mu, c in s.terms.items()},
                               None if s.D is None else s.D - depth(lam.offset))
    return TruncatedSeries(s.anchor + lam, s.terms, s.D)


def rho_times(alg: AlgebraData, s: TruncatedSeries) -> TruncatedSeries:
    """e^ρ·s."""
    return TruncatedSeries(s.anchor + alg.rho, s.terms, s.D)


# --- reflections of series --------------------------------------------------

def reflect_series(alg: AlgebraData, s: TruncatedSeries, beta: Root) -> TruncatedSeries:
    """r_β applied to every exponent of an exact series."""
    if not s.exact:
        raise ValueError("only exact (numerator-form) series can be reflected; "
                         "use transform_agrees for truncated data")
    a = s.anchor.pair(beta.coroot)
    if N.is_rational(a):
        terms = {}
        for mu, c in s.terms.items():
            x = Exponent(s.anchor, mu)
            y = alg.reflect(x, beta)
            terms[y.offset] = terms.get(y.offset, SuperCoeff()) + c
        return TruncatedSeries(s.anchor, terms, None)
    new_anchor = Weight(N.sub(s.anchor.pairings, N.scale(a, N.matvec(alg.A, beta.coords))))
    terms = {}
    for mu, c in s.terms.items():
        k = alg.pair(beta.coroot, mu)
        nu = N.sub(mu, N.scale(k, beta.coords))
        terms[nu] = terms.get(nu, SuperCoeff()) + c
    return TruncatedSeries(new_anchor, terms, None)


def apply_word_series(alg: AlgebraData, s: TruncatedSeries, w: WeylWord) -> TruncatedSeries:
    for g in reversed(w.gens):
        s = reflect_series(alg, s, g)
    return s


@dataclass(frozen=True)
class AgreementReport:
    holds: bool
    checked: int
    skipped: int
    mismatch: tuple | None = None

    def to_json(self) -> dict:
        out = {"holds": self.holds, "checked": self.checked, "skipped": self.skipped}
        if self.mismatch is not None:
            out["mismatch"] = [N.fmt(x) for x in self.mismatch]
        return out


def transform_agrees(alg: AlgebraData, s: TruncatedSeries, t: TruncatedSeries, w: WeylWord,
                     factor: SuperCoeff = ONE) -> AgreementReport:
    """Checks t = factor·w(s) on every exponent x with x in s's window and w(x) in t's
    window (and symmetrically); pairs leaving a window are skipped and counted."""
    if s.anchor != t.anchor:
        t = t.rebase(s.anchor, alg.A)
    inv = w.inverse()
    checked = skipped = 0

    def image(mu, word):
        y = alg.apply_word(word, Exponent(s.anchor, mu))
        if y.anchor != s.anchor:
            return None
        return y.offset

    def inside(series, mu):
        return series.D is None or depth(mu) <= series.D

    seen = set()
    for mu, c in s.terms.items():
        nu = image(mu, w)
        if nu is None or not inside(t, nu):
            skipped += 1
            continue
        checked += 1
        seen.add(nu)
        if t.coeff(nu) != factor * c:
            return AgreementReport(False, checked, skipped, nu)
    for nu, d in t.terms.items():
        if nu in seen:
            continue
        mu = image(nu, inv)
        if mu is None or not inside(s, mu):
            skipped += 1
            continue
        checked += 1
        if factor * s.coeff(mu) != d:
            return AgreementReport(False, checked, skipped, nu)
    return AgreementReport(True, checked, skipped)


def skew_invariance_check(alg: AlgebraData, s: TruncatedSeries, roots: Iterable[Root],
                          factor: SuperCoeff = -ONE) -> dict:
    """r_β(s) = −s for each β, on the symmetric window."""
    return {r.coords: transform_agrees(alg, s, s, WeylWord((r,)), factor) for r in roots}


# --- snowflake numerators and characters -----------------------------------

def snowflake_numerator(alg: AlgebraData, lam, D, H: int | None = None,
                        require: bool = True) -> TruncatedSeries:
    """Σ_{w∈W(λ)} (−1)^{l(w)} e^{w(λ+ρ)}, terms of depth ≤ D below λ+ρ."""
    lam = lam if isinstance(lam, Weight) else lam.to_weight(alg.A)
    if alg.delta is not None and is_critical(alg, lam):
        raise ValueError("critical weight: no snowflake character formula")
    base = integral_base(alg, lam, H)
    if require:
        v = is_snowflake_hw(alg, lam, H)
        if not v.holds:
            raise ValueError("λ is not a snowflake highest weight")
    gens = base.roots
    top = Exponent.of(lam + alg.rho)
    terms = {top.offset: ONE}
    frontier = [(top, 0)]
    while frontier:
        nxt = []
        for x, l in frontier:
            for g in gens:
                k = x.pair(g.coroot, alg.A)
                if not k > 0:
                    continue
                y = Exponent(x.anchor, N.sub(x.offset, N.scale(k, g.coords)))
                if depth(y.offset) > D or y.offset in terms:
                    continue
                terms[y.offset] = ONE if (l + 1) % 2 == 0 else -ONE
                nxt.append((y, l + 1))
        frontier = nxt
    return TruncatedSeries(lam + alg.rho, terms, D)


def snowflake_character(alg: AlgebraData, lam, D, H: int | None = None) -> TruncatedSeries:
    """e^{−ρ}·numerator·R^{-1}."""
    num = snowflake_numerator(alg, lam, D, H)
    Rinv = weyl_denominator(alg, D, "R").invert(D)
    out = num.mul(Rinv)
    return TruncatedSeries(out.anchor - alg.rho, out.terms, out.D)


def enright_numerator_transform(alg: AlgebraData, s: TruncatedSeries, w: WeylWord
                                ) -> TruncatedSeries:
    return apply_word_series(alg, s, w)


# --- rank-one Enright data ---------------------------------------------------

FLAVORS = ("sl2", "osp12")


def _half_density(alg: AlgebraData, alpha: Root, flavor: str) -> TruncatedSeries:
    """e^{α/2}(1−e^{−α}) or e^{α/4}(1−εe^{−α/2})."""
    a = alpha.coords
    if flavor == "sl2":
        return TruncatedSeries(Weight.zero(alg.n), {N.scale(Q(1, 2), a): ONE,
                                                    N.scale(Q(-1, 2), a): -ONE})
    return TruncatedSeries(Weight.zero(alg.n), {N.scale(Q(1, 4), a): ONE,
                                                N.scale(Q(-1, 4), a): -EPS})


def _half_density_inverse(alg: AlgebraData, alpha: Root, flavor: str, D) -> TruncatedSeries:
    a = alpha.coords
    step = a if flavor == "sl2" else N.scale(Q(1, 2), a)
    lead = N.scale(Q(-1, 2) if flavor == "sl2" else Q(-1, 4), a)
    c = ONE if flavor == "sl2" else EPS
    terms = {}
    k, ck = 0, ONE
    while True:
        mu = N.sub(lead, N.scale(k, step))
        if depth(mu) > D + depth(lead):
            break
        terms[mu] = ck
        k += 1
        ck = ck * c
    return TruncatedSeries(Weight.zero(alg.n), terms, D + depth(lead))


def _check_flavor(alg: AlgebraData, alpha: Root, flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    half = tuple(Q(x, 2) for x in alpha.coords)
    has_half = all(h.denominator == 1 for h in half) and \
        tuple(int(h) for h in half) in alg.root_lookup(None if alg.is_fin else 2 * alpha.height)
    if flavor == "osp12" and not has_half:
        raise ValueError("osp12 flavor needs α/2 to be a root")
    if flavor == "sl2" and has_half:
        raise ValueError("sl2 flavor needs α/2 not to be a root")


@dataclass(frozen=True)
class HalfDensityResult:
    series: TruncatedSeries       # ch_ε C_a(N) on the window
    numerator: TruncatedSeries    # r_α(F·ch_ε N) restricted to the certified part
    window: object                # depth bound of the input numerator used

    def to_json(self) -> dict:
        return {"series": self.series.to_json(), "numerator": self.numerator.to_json(),
                "window": N.fmt(self.window)}


def enright_halfdensity_transform(alg: AlgebraData, s: TruncatedSeries, alpha: Root,
                                  flavor: str, a) -> HalfDensityResult:
    """ch_ε C_a(N) from ch_ε N via F·ch_ε C_a(N) = r_α(F·ch_ε N), with an extra ε for osp12.

    F·s is kept on its certified window and treated as the full numerator, which
    is exact whenever F·ch_ε N has no support below the window (Verma modules and
    finite sums of them).
    """
    a = N.q(a)
    if N.is_integral(a):
        raise ValueError("a must not be an integer")
    _check_flavor(alg, alpha, flavor)
    if not N.is_integral(s.anchor.pair(alpha.coroot) - a):
        raise ValueError("the h-eigenvalues of N must lie in a + Z")
    F = _half_density(alg, alpha, flavor)
    prod = F.mul(s)
    if prod.D is None:
        raise ValueError("the input series must be truncated")
    window = prod.D
    num = TruncatedSeries(prod.anchor, prod.terms, None)
    ref = reflect_series(alg, num, alpha)
    if flavor == "osp12":
        ref = ref.scale(EPS)
    out = ref.mul(_half_density_inverse(alg, alpha, flavor, s.D))
    return HalfDensityResult(out, ref, window)


@dataclass(frozen=True)
class Constituent:
    role: str          # "sub", "quotient" or "simple"
    module: str        # "M", "M#" (dual Verma) or "D_a(M)"
    b: Q
    parity_shift: bool = False

    def to_json(self) -> dict:
        return {"role": self.role, "module": self.module, "b": N.fmt(self.b),
                "parity_shift": self.parity_shift}

    def __str__(self) -> str:
        inner = f"{self.module}({N.fmt(self.b)})"
        return f"Π({inner})" if self.parity_shift else inner


@dataclass(frozen=True)
class Rank1Decomposition:
    flavor: str
    a: Q
    b: Q
    case: str
    constituents: tuple
    singular_exponent: Q | None   # c with f^c⊗v (sl2) or f^c F⊗v (osp12) singular
    enright_image: Constituent | None

    def to_json(self) -> dict:
        return {"flavor": self.flavor, "a": N.fmt(self.a), "b": N.fmt(self.b), "case": self.case,
                "constituents": [c.to_json() for c in self.constituents],
                "singular_exponent": None if self.singular_exponent is None
                else N.fmt(self.singular_exponent),
                "enright_image": None if self.enright_image is None
                else self.enright_image.to_json()}


def rank1_enright_verma(flavor: str, b, a) -> Rank1Decomposition:
    """Structure of the twisted localization D_a(M(b)) for sl2 or osp(1|2), and the
    Enright image C_a(M(b)) = its e-finite part."""
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    a, b = N.q(a), N.q(b)
    osp = flavor == "osp12"
    if N.is_integral(a):
        shift = 1 if osp else 2
        cons = (Constituent("sub", "M", b), Constituent("quotient", "M#", b + shift, osp))
        return Rank1Decomposition(flavor, a, b, "a-integral", cons, None, cons[0])
    if N.is_integral(a - b):
        if osp:
            cons = (Constituent("sub", "M", -b - 1, True), Constituent("quotient", "M#", -b))
            return Rank1Decomposition(flavor, a, b, "a-b-integral", cons, b, cons[0])
        cons = (Constituent("sub", "M", -b - 2), Constituent("quotient", "M#", -b))
        return Rank1Decomposition(flavor, a, b, "a-b-integral", cons, b + 1, cons[0])
    cons = (Constituent("simple", "D_a(M)", b),)
    return Rank1Decomposition(flavor, a, b, "simple", cons, None, None)


def enright_verma_image(alg: AlgebraData, lam, alpha: Root, base: BaseDatum | None = None
                        ) -> Exponent:
    """Highest weight of C(M(λ)) for the sl2 or osp(1|2) attached to α."""
    from .subsystems import sigma_pr
    base = base or alg.bases.original
    if alpha.coords not in {r.coords for r in sigma_pr(alg, base)}:
        raise ValueError("α is not a principal root simple (or doubled simple) in the base")
    x = lam if isinstance(lam, Exponent) else Exponent.of(lam)
    v = x.pair(alpha.coroot, alg.A)
    if N.is_integral(v) and v >= 0:
        return x
    rho = rho_for_base(alg, base)
    s = v + rho.pair(alpha.coroot, alg.A)
    return x.shifted(N.scale(-s, alpha.coords))


# --- super ↔ ordinary ------------------------------------------------------

def parity_twist(alg: AlgebraData, s: TruncatedSeries, lam0: Weight | None = None
                 ) -> TruncatedSeries:
    """π(e^μ) = (−1)^{p(μ)} e^μ on offsets from λ0, sign normalized at the top term."""
    if lam0 is not None and lam0 != s.anchor:
        s = s.rebase(lam0, alg.A)
    terms = {}
    for mu, c in s.terms.items():
        if not all(N.is_integral(x) for x in mu):
            raise ValueError("offsets must lie in ZΣ")
        sign = -1 if alg.parity_of([int(x) for x in mu]) else 1
        terms[mu] = c * SuperCoeff(sign, 0)
    out = TruncatedSeries(s.anchor, terms, s.D)
    if out.terms:
        top = min(out.terms, key=lambda mu: (depth(mu), mu))
        if out.terms[top].at(1) < 0:
            out = -out
    return out


def super_to_ordinary(alg: AlgebraData, s: TruncatedSeries, lam0: Weight | None = None
                      ) -> TruncatedSeries:
    """ch from ch_ε: evaluate at ε = −1 (giving sch) and apply π."""
    return parity_twist(alg, s.evaluate(-1), lam0)


def ordinary_to_super(alg: AlgebraData, s: TruncatedSeries, lam0: Weight | None = None
                      ) -> TruncatedSeries:
    """sch from ch (both as integer series)."""
    return parity_twist(alg, s.evaluate(1), lam0)


# --- Verma submodule check ----------------------------------------------------

@dataclass(frozen=True)
class ChNReport:
    skew: AgreementReport
    submodule: bool
    D: int

    @property
    def holds(self) -> bool:
        return self.skew.holds and self.submodule

    def to_json(self) -> dict:
        return {"holds": self.holds, "skew": self.skew.to_json(), "submodule": self.submodule,
                "D": self.D}


def thm_chN_checks(alg: AlgebraData, lam, beta: Root, D) -> ChNReport:
    """e^{λ+ρ} − e^{r_β(λ+ρ)} is r_β-skew, and ch M(r_β.λ) ≤ ch M(λ) termwise."""
    lam = lam if isinstance(lam, Weight) else lam.to_weight(alg.A)
    v = plus_rho(alg, lam).pair(beta.coroot, alg.A)
    if not v > 0:
        raise ValueError("(λ+ρ)(β^∨) must be positive")
    top = Exponent.of(lam + alg.rho)
    low = alg.reflect(top, beta)
    num = TruncatedSeries(top.anchor, {top.offset: ONE, low.offset: -ONE})
    skew = transform_agrees(alg, num, num, WeylWord((beta,)), -ONE)
    big = verma_character(alg, lam, D)
    small = verma_character(alg, Exponent(lam, N.sub(low.offset, top.offset)), D)
    sub = all(big.coeff(mu).c0 >= c.c0 for mu, c in small.terms.items())
    return ChNReport(skew, sub, D)
