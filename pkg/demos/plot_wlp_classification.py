"""
Which tadpoles have the WLP
===========================

Sweeps the tadpole family T_{m,2} and prints, for each m, whether A(T_{m,2})
has the weak Lefschetz property, and if not, where and how it fails.
"""

from wlpgraph import Family, classify_family, wlp_check
from wlpgraph.graph import cycle

fam = Family("TADPOLE_FIXED_N", 2)
for row in classify_family(fam, range(3, 16)):
    if row.has_wlp:
        print(f"{fam.name(row.param):10} WLP")
    else:
        print(f"{fam.name(row.param):10} fails {row.fail_kind.value.lower()} at degree {row.fail_degree}")

# one full report, degree by degree
rep = wlp_check(cycle(21), name="C_21")
print()
print("C_21 Hilbert function:", rep.hilbert.h, "mode", rep.mode_report.mode)
for v in rep.verdicts:
    mark = "" if v.maximal else f"  <- {v.failure_kind.value.lower()} fails"
    print(f"  {v.j}: {v.h_j:5} -> {v.h_j1:5}  rank {v.rank}{mark}")
