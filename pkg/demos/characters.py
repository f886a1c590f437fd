"""
Truncated characters
====================

Denominators, Verma characters and a finite-dimensional snowflake character,
all as exact truncated series.
"""
from superkac import Weight, load
import superkac._num as N
import superkac.characters as C


def show(s):
    """Terms e^(anchor+offset) as 'coefficient·[offset]', shallowest first."""
    parts = []
    for off, c in sorted(s.terms.items(), key=lambda t: (C.depth(t[0]), t[0])):
        coeff = N.fmt(c.c0) if not c.c1 else (f"{N.fmt(c.c1)}ε" if not c.c0
                                              else f"({N.fmt(c.c0)}+{N.fmt(c.c1)}ε)")
        parts.append(f"{coeff}·[{','.join(N.fmt(x) for x in off)}]")
    anchor = ",".join(N.fmt(x) for x in s.anchor.pairings)
    return f"e^({anchor}) * ({' + '.join(parts)})"

sl2 = load("sl2")

# the Weyl denominator of sl2 up to depth 6
R = C.weyl_denominator(sl2, 6)
print("R(sl2) =", show(R))

# R times a Verma character is the single exponential e^λ
lam = Weight((3,))
M = C.verma_character(sl2, lam, 6)
print("R * ch M(3) =", show(R.mul(M)))

# the simple module of highest weight 3 is four-dimensional
L = C.snowflake_character(sl2, lam, 8)
print("ch L(3) =", show(L), "  dim =", L.total())

# for osp(1|2) the odd root contributes a sign in the super form
osp = load("osp12")
print("R(osp12) =", show(C.weyl_denominator(osp, 4)))
print("super ch M(0) =", show(C.verma_character(osp, Weight.zero(1), 4, super_=True)))

# sp4: dimension of L(1,1) from the character
sp4 = load("sp4")
print("dim L(1,1) for sp4 =", C.snowflake_character(sp4, Weight((1, 1)), 12).total())
