"""The nine-fold self-cover of the Klein bottle.

Runs the whole pipeline on one example: induced maps -> transfers ->
stationary limits -> theorem checks.  The Cech cohomology of the solenoid
is not a shift of its unstable homology, so the nonorientable case
breaks the duality that holds for orientable manifolds.

    python3 demos/klein_bottle.py
"""

from smalehom.endomorphisms import derive_transfer, get_builtin
from smalehom.invariants import compute_report, putnam_question, render_text

e = get_builtin("klein9")
print("homology of K:", ", ".join(map(str, e.manifold.homology)))

# g_* in each degree; the transfer is recovered from g_* o t = 9
t = derive_transfer(e)
for k, (g, th, tc) in enumerate(zip(e.induced_homology, t.transfer_homology,
                                    t.transfer_cohomology)):
    print(f"degree {k}: g_* = {g.matrix.tolist()}  t_hom = {th.matrix.tolist()}"
          f"  t_coh = {tc.matrix.tolist()}")
print()

report = compute_report(e)
print(render_text(report))

verdict = putnam_question(report)
print("is H^*(X) a shift of H_*(G^u)?", verdict)
