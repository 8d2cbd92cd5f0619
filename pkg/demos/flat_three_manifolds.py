"""The ten closed flat 3-manifolds: homology, cohomology and K-groups.

Cohomology comes from Poincare duality (orientable rows) or universal
coefficients; in dimension <= 3 the K-groups are the even and odd sums.

    python3 demos/flat_three_manifolds.py
"""

from smalehom.abelian import k_groups_low_dim
from smalehom.endomorphisms import special_degree
from smalehom.manifolds import THREE_MANIFOLD_NAMES, cohomology, euler_characteristic, \
    lookup, validate

for name in THREE_MANIFOLD_NAMES:
    m = lookup(name)
    coh = cohomology(m)
    k0, k1 = k_groups_low_dim(coh, m.dim)
    status = "ok" if not validate(m) else "; ".join(validate(m))
    print(f"{name}  |F|={m.holonomy_order}  chi={euler_characteristic(m)}  [{status}]")
    print(f"   H_*  = {', '.join(map(str, m.homology))}")
    print(f"   H^*  = {', '.join(map(str, coh))}")
    print(f"   K^0 = {k0},  K^1 = {k1}")
    print(f"   special degree (|F|+1)^3 = {special_degree(m)}")
