"""
Stable reduction of a cuspidal sextic
=====================================

A sextic on Sigma_5 with a y^3 = x^7 cusp has log canonical threshold
10/21 < 1/2, so the pair is not stable.  Replaying the reduction: an embedded
resolution of the cusp, one flip across the double curve and a divisorial
contraction leave the weighted projective plane P(7,3,1) glued into the
surface with a single 1/20(1,9) point.
"""

from stablepairs import reduction

trace = reduction.run_scenario("trigonal-2-4")

# every step records the component summaries and the identities it checked
for entry in trace.entries:
    print(entry.step["kind"])
    for comp in entry.after:
        if "picard_rank" in comp:
            sings = ", ".join(comp["singularities"]) or "smooth"
            print(f"    {comp['name']}: rank {comp['picard_rank']}, K^2 {comp['k_squared']}, {sings}")
    for ident in entry.identities:
        print("    ok" if ident.passed else "    FAILED", ident.name)

print("final:", [str(s) for s in trace.final_report.surface_sings])
print("same as the direct construction:", trace.matches_builder)
for note in trace.notes:
    print("note:", note)
