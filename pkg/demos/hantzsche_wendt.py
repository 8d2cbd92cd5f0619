"""Periodic points over Hantzsche-Wendt manifolds.

Rationally these look like spheres, so the Lefschetz sum only sees degree
0 (multiplication by n) and degree d (+-1).  In dimension 3 the catalog
has the full homology of O3_6 and the count can be compared with the
n^k -+ 1 pair; in dimension 5 only the template is known.

    python3 demos/hantzsche_wendt.py
"""

from smalehom.endomorphisms import get_builtin, special_degree
from smalehom.invariants import compute_report, lefschetz_count, periodic_points
from smalehom.manifolds import hantzsche_wendt_template

e = get_builtin("o36x125")
report = compute_report(e)
print("unstable homology of the O3_6 solenoid:",
      ", ".join(L.raw_form() for L in report.unstable_homology))
for k in range(1, 5):
    c = periodic_points(report, k)
    print(f"  |Per_{k}| = {c.value}   (theorem: one of {c.bounds})")

hw5 = hantzsche_wendt_template(5)
n = special_degree(hw5)
print(f"\nHW5: |F| = {hw5.holonomy_order}, special degree {n}")
print("middle degrees:", ", ".join(map(str, hw5.homology[1:-1])))
for sign in (1, -1):
    print(f"  top sign {sign:+d}: Per_1..3 =",
          [lefschetz_count(n, k, 5, sign) for k in (1, 2, 3)])
