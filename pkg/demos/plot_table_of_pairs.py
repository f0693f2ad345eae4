"""
The table of stable pairs
=========================

Build every pair ``(X, D)`` with ``D ~ -2K_X`` and ``K_X^2 = 5`` over the
special genus six curves and print its singularities, the singularities of
the K3 double cover and the boundary locus it lands in.
"""

from stablepairs import pairs

# each stratum is a small frozen dataclass with a canonical key
strata = pairs.all_strata()
print(len(strata), "strata")

# build_pair scripts the blow-ups, contracts the chains and checks stability
for spec in strata:
    model, report = pairs.build_pair(spec)
    x = " + ".join(map(str, report.surface_sings)) or "smooth"
    k3 = " + ".join(map(str, report.k3_sings))
    print(f"{spec.key:<18} {x:<22} {k3:<24} {report.boundary.label}")

# every non du Val point is an index-two class T singularity 1/4q(1, 2q-1)
_, report = pairs.build_pair("trigonal-2-3-1")
print(report.surface_sings[0], "has canonical cover", report.k3_sings[0])
