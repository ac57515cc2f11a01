"""Solving alpha^p - alpha = b and ranking classes modulo wp(F)."""

from socle_lab import parse_field
from socle_lab.kummer import as_rank, as_relative_rank, wp, wp_solve

R = parse_field("F2(t)")
t = R.var("t")

for b in [1 / t**2 + 1 / t, 1 / t, t**3 + t, wp((t + 1) / (t**2 + t + 1))]:
    res = wp_solve(b)
    if res:
        print(f"b = {b}: alpha = {res.alpha}")
    else:
        print(f"b = {b}: no solution ({res.reason}), obstruction re-checks: {res.recheck(b)}")

sys_ = as_rank([1 / t, 1 / t**3, 1 / t + 1 / t**3, 1 / t**2])
print(f"rank of {{1/t, 1/t^3, 1/t+1/t^3, 1/t^2}} modulo wp: {sys_.rank} ({sys_.status})")
for rel in sys_.relations:
    print("  relation", rel.nu, "with alpha =", rel.alpha)

# constants of F_4 over the mixed pole t+u: the rank equals the F_2-rank of the constants
S = parse_field("F4(t,u)")
t, u, g = S.var("t"), S.var("u"), S.const(S.base.gen())
rel = as_relative_rank([S.one / (t + u), g / (t + u)])
print(f"relative rank of {{1/(t+u), g/(t+u)}} over F4: {rel.rank} ({rel.status})")
print("pole orders seen:", rel.certificate["pole_orders"])
