"""Stationary inductive limits lim(G, a) and the brute-force oracle.

Z[1/9] and Z[1/3] are the same group, triangular actions can split, and a
non-diagonalizable action is reported as Opaque instead of being guessed.

    python3 demos/stationary_limits.py
"""

from smalehom.abelian import FgAbGroup
from smalehom.limits import StationarySystem, limits_isomorphic, parse_limit, stationary_limit
from smalehom.oracle import check_canonical_against_fingerprint, fingerprint_for

examples = [
    ("Z", [[9]]),
    ("Z (+) Z/2", [[3, 0], [0, 1]]),
    ("Z^2", [[2, 1], [0, 3]]),
    ("Z^2", [[2, 1], [0, 2]]),
    ("Z^2", [[0, 0], [0, 5]]),
    ("Z/24", [[2]]),
    ("Z^2", [[1, 1], [5, 0]]),
]
for group, rows in examples:
    sys = StationarySystem.from_matrix(FgAbGroup.parse(group), rows)
    L = stationary_limit(sys)
    line = f"lim({group}, {rows}) = {L}"
    if L.raw_form() != str(L):
        line += f"  (= {L.raw_form()})"
    if L.is_canonical:
        ok = check_canonical_against_fingerprint(L, fingerprint_for(L))
        line += f"   oracle: {'agrees' if ok else 'DISAGREES'}"
    else:
        line += f"   ({L.free_part.reason})"
    print(line)

print("\nZ[1/5] vs Z[1/125]:", limits_isomorphic(parse_limit("Z[1/5]"), parse_limit("Z[1/125]")))
