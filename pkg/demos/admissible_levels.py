"""
Admissible levels of the affine algebra A1^(1)
==============================================

k = -1/2 is admissible, k = -3 is not.  At k = -1/2 we list every snowflake
highest weight of that level whose integral base matches that of k*Λ0.
"""
from fractions import Fraction as Q

import superkac._num as N
from superkac import load
from superkac.weight_classify import (admissible_level, enumerate_snowflake_weights,
                                      integral_base, is_snowflake_hw)

alg = load("A1_1")

for k in (Q(-1, 2), Q(-3), Q(1)):
    v = admissible_level(alg, k)
    print(f"k = {N.fmt(k):>4}: admissible = {v.holds}")

k = Q(-1, 2)
lam0 = alg.fundamental_weight0().scaled(k)

# the base of k*Λ0 fixes the shape of the enumeration
pi = integral_base(alg, lam0, 24)
print("base of kΛ0:", [r.coords for r in pi.roots])

for w in enumerate_snowflake_weights(alg, k, pi, H=24):
    assert is_snowflake_hw(alg, w, 24).holds
    print("  snowflake weight:", [N.fmt(x) for x in w.pairings])
