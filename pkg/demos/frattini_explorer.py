"""p-Frattini subgroups and the intersection equation for relative Frattini subgroups.

When core(N) H = G the equation
    Phi(G, N cap H) = Phi(G, N) cap Phi(G, H)
holds on every catalog group.  Dropping the core condition (keeping only
N H = G) it can fail; this script lists the smallest failures.
"""

import sys

from socle_lab.catalog import catalog, named_group
from socle_lab.groups import explore_counterexamples, frattini_p, normal_core, relative_frattini

max_order = int(sys.argv[1]) if len(sys.argv) > 1 else 16

for name in ["C4", "C2xC2", "D4", "Q8", "S4", "A4"]:
    G = named_group(name)
    phi, n = frattini_p(G, 2)
    print(f"{name:6} Phi^2 of order {phi.order:2}, quotient C2^{n}")

for p in (2, 3):
    recs = explore_counterexamples(max_order, p, catalog(max_order))
    bad = [x for x in recs if not x.equation_holds]
    print(f"\np={p}: {len(recs)} pairs with NH = G but core(N)H != G, {len(bad)} failures")
    for x in bad[:3]:
        G = named_group(x.group)
        N, H = G.subgroup(x.N), G.subgroup(x.H)
        lhs = relative_frattini(G, N & H, p)
        rhs = relative_frattini(G, N, p) & relative_frattini(G, H, p)
        print(
            f"  {x.group}: |N|={N.order} |H|={H.order} |core N|={normal_core(G, N).order} "
            f"|lhs|={lhs.order} |rhs|={rhs.order} witness {x.witness}"
        )
