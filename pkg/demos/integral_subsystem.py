"""
The integral subsystem of a weight of osp(9|2)
==============================================

A weight with fractional pairings cuts out a smaller root system.  We find it,
pick its base and walk each base root back to a principal root.
"""
from fractions import Fraction as Q

from superkac import load
from superkac.subsystems import base_of, friendly_word_to_pr, integral_subsystem

alg = load("osp9_2")
lam = alg.coordinates.weight({"e1": Q(1, 3), "e3": Q(1, 3)})
label = alg.coordinates.label

# positive roots whose coroot pairs integrally with the weight
sl = integral_subsystem(lam, alg, None)
print("positive integral roots:", sorted(label(r.coords) for r in sl.positive_roots))

# the base of that subsystem, certified since osp(9|2) is finite
base = base_of(lam, alg, None)
print("base:", sorted(label(r.coords) for r in base))

# every base root is carried to a principal root by reflections that keep
# the weight away from the integral walls
for beta in base:
    fw = friendly_word_to_pr(lam, beta, alg)
    word = " ".join(label(r.coords) for r in fw.word) or "(empty)"
    print(f"  {label(beta.coords):>6} -> {label(fw.image.coords):>6} via {word}")
