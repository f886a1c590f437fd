"""Exact scalar and vector helpers shared by every module.

Scalars are ``fractions.Fraction``.  Weight pairings may also hold sympy
expressions (e.g. ``sqrt(2)``) so that genuinely irrational weights can be
tested; everything that must stay rational (root coordinates, offsets,
coroots) is validated to be a Fraction.
"""
from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, Sequence

import sympy

Vec = tuple  # tuple of Q


def q(x) -> Q | sympy.Expr:
    """Coerce ints, strings ("3/4", "-2") and Fractions to Q; irrational
    strings and sympy numbers are kept as simplified sympy expressions."""
    if isinstance(x, Q):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, sympy.Basic):
        return _from_sympy(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            return Q(s)
        except ValueError:
            return _from_sympy(sympy.sympify(s))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'num/den' strings")
    raise TypeError(f"cannot interpret {x!r} as a number")


def _from_sympy(e):
    e = sympy.nsimplify(e)
    if e.is_Rational:
        return Q(int(e.p), int(e.q))
    if not e.is_real:
        raise ValueError(f"{e} is not real")
    return e


def is_rational(x) -> bool:
    return isinstance(x, Q)


def is_integral(x) -> bool:
    if isinstance(x, Q):
        return x.denominator == 1
    return bool(sympy.nsimplify(x).is_integer)


def is_half_integral(x) -> bool:
    """True for elements of Z + 1/2."""
    return is_integral(x - Q(1, 2))


def fmt(x) -> str:
    """Serialize a scalar as 'num/den' (or an integer string)."""
    if isinstance(x, Q):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return str(x)


def vec(xs: Iterable) -> Vec:
    return tuple(q(x) for x in xs)


def zero(n: int) -> Vec:
    return (Q(0),) * n


def unit(n: int, i: int) -> Vec:
    return tuple(Q(1) if k == i else Q(0) for k in range(n))


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Q(0))


def neg(u: Sequence) -> Vec:
    return tuple(-a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def height(u: Sequence):
    return sum(u, Q(0))


def matvec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def vecmat(v: Sequence, m: Sequence[Sequence]) -> Vec:
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(v))), Q(0)) for j in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def as_int_vec(u: Sequence) -> tuple:
    """Integer tuple for integral vectors; raises otherwise."""
    out = []
    for a in u:
        if not is_integral(a):
            raise ValueError(f"non-integral coordinate {a}")
        out.append(int(a))
    return tuple(out)


# --- linear algebra (sympy backed) ---------------------------------------

def _to_sym(m):
    return sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) if isinstance(a, Q) else a
                          for a in row] for row in m])


def _from_sym_vec(col) -> Vec:
    return tuple(_from_sympy(x) for x in col)


def det(m: Sequence[Sequence]) -> Q:
    if len(m) == 0:
        return Q(1)
    return _from_sympy(_to_sym(m).det(method="bareiss"))


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return _to_sym(rows).rank()


def nullspace(m: Sequence[Sequence]) -> list[Vec]:
    return [_from_sym_vec(v) for v in _to_sym(m).nullspace()]


def solve(m: Sequence[Sequence], b: Sequence) -> Vec | None:
    """One exact solution x of m x = b (free variables set to 0), or None."""
    M = _to_sym(m)
    rhs = _to_sym([[x] for x in b])
    try:
        sol, params = M.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return _from_sym_vec(sol)


def lcm_denominators(xs: Iterable[Q]) -> int:
    from math import lcm
    out = 1
    for x in xs:
        out = lcm(out, Q(x).denominator)
    return out


def primitive_integer(v: Sequence[Q]) -> tuple:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    from math import gcd
    m = lcm_denominators(v)
    ints = [int(x * m) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints) if g else tuple(ints)
