"""Radical classes of the lines t + u + c in F_7(t, u).

Each line is a prime that involves both variables, so no function of t
alone or u alone can cancel it.  The valuation matrix is the identity,
which certifies that the cube-root extensions are independent.
"""

from socle_lab import parse_field
from socle_lab.kummer import build_cpn_extension, kummer_rank, kummer_relative_rank, pth_root_membership

R = parse_field("F7(t,u)")
t, u = R.var("t"), R.var("u")
lines = [t + u + c for c in range(5)]

sys_ = kummer_relative_rank(lines, 3)
print("elements:", ", ".join(map(str, lines)))
print("mixed primes:", [str(q) for q in sys_.primes])
print("valuation matrix:")
for row in sys_.valuation_matrix:
    print("   ", row)
print(f"relative rank {sys_.rank}, status {sys_.status}, re-check {sys_.recheck()}")

ext = build_cpn_extension(sys_)
print(f"adjoining cube roots gives group C3^{ext.group_rank}")
print("first generator acts as:", ext.describe_action(0, 0))

# pure parts do not change the relative class, but they do change the absolute one
shifted = [lines[0] * (t + 1), lines[1] * (u + 2) ** 2]
print("relative rank after multiplying by pure factors:", kummer_relative_rank(shifted, 3).rank)
print("absolute rank of the same pair:", kummer_rank(shifted, 3).rank)

b = lines[0] ** 2 * lines[1] * (t * u + 3) ** 3
v = pth_root_membership(b, lines[:2], 3)
print(f"membership of (t+u)^2 (t+u+1) (tu+3)^3: {v.verdict}, exponents {v.nu}, cube root {v.alpha}")
