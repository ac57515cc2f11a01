"""Two conjugate radical extensions of Q and the 2-socle of their compositum.

L1 = Q(r) and L2 = Q(zeta r) with r^5 = 2 each have degree 5 and no
quadratic subfield.  Their compositum is the whole splitting field, of
degree 20, whose 2-socle is the real quadratic field Q(sqrt 5).
"""

from socle_lab import parse_field
from socle_lab.extensions import Automorphism, ExtensionInstance, GaloisData, disjointness_check, socle_rank, socle_subgroup
from socle_lab.fields import minimal_polynomial

A = parse_field("Q(zeta5)(r:x^5-2)")
z, r = A.gen("zeta5"), A.gen("r")
gd = GaloisData.from_automorphisms([Automorphism(A, [z**a, z**b * r]) for a in range(1, 5) for b in range(5)])
G = gd.group
print(f"ambient degree {A.degree}, Galois group of order {G.order}")

res = disjointness_check(ExtensionInstance(A, [r], [z * r], gd))
print(f"dims (L1, L2, L1L2) = {(res.dim1, res.dim2, res.dim_compositum)}, linearly disjoint: {res.linearly_disjoint}")

H1, H2 = gd.fixing([r]), gd.fixing([z * r])
for label, H in [("L1", H1), ("L2", H2), ("L1L2", H1 & H2)]:
    print(f"2-socle rank of {label}: {socle_rank(G, H, 2)}")

S = socle_subgroup(G, H1 & H2, 2)
fixed = gd.fixed_space(S)
s = z + z**4
print("socle field basis:", [str(x) for x in fixed])
print("minimal polynomial of zeta+zeta^4 (low to high):", [str(c) for c in minimal_polynomial(s)])
print("(2s+1)^2 =", (2 * s + 1) ** 2)
