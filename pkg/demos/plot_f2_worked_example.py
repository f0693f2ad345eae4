"""
A worked example on F_2
=======================

The trigonal curve of type (2; [4]) lives on the Hirzebruch surface F_2.
Separating it from the section ``e`` and the fibre ``f_p`` takes four
blow-ups; the chain ``e', G1, G2, G3, f_p'`` contracts to 1/20(1,9).
"""

from stablepairs import pairs
from stablepairs.birational import intersect_down, is_ample, pullback
from stablepairs.picard import format_class, intersect

built = pairs.build_model(pairs.TrigonalM2(4))
cs = built.model
S = cs.resolution
names = ["e", "f_p", "G1", "G2", "G3", "G4"]

# self-intersections along the contracted chain
for name in cs.plan.component_names(0):
    print(name, intersect(S, S[name], S[name]))
print("singularity:", cs.singularity_list[0], "discrepancies:", {k: str(v) for k, v in cs.discrepancy.items()})

# the canonical class in terms of the strict transforms
print("K       =", format_class(S, S.K, names))

# the Q-valued pullback of -2K_X agrees with the strict transform of D
print("pb(-2K) =", format_class(S, pullback(cs, -2 * S.K), names))
print("D'      =", format_class(S, S["D"], names))

# K_X^2 and ampleness of -K_X against the tester curves
print("K_X^2 =", intersect_down(cs, S.K, S.K))
print("-K_X:", is_ample(cs, -S.K, built.testers).kind, " K_X:", is_ample(cs, S.K, built.testers).kind)
