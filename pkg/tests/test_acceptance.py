"""Acceptance criteria, one test each, with a summary line per criterion."""

import random
import subprocess
import sys
import time

import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

import oracles
from socle_lab.catalog import catalog, direct_product
from socle_lab.fields import make_cyclotomic, make_finite_field, make_prime_field
from socle_lab.funcfields import FunctionField, freshman_check
from socle_lab.groups import (
    direct_product_subgroup,
    frattini_generated,
    frattini_intersection,
    normal_core,
    subgroups,
    verify_socle_equation,
)
from socle_lab.kummer import CERTIFIED, INCONCLUSIVE, as_rank, as_relative_rank, kummer_rank, kummer_relative_rank, wp, wp_solve
from socle_lab.scenarios import run_scenario

# tolerances
LINES_SECONDS = 1.0
MIXED_POLE_SECONDS = 5.0
RADICAL_SECONDS = 5.0
FRESHMAN_SECONDS = 1.0
FRATTINI_SECONDS = 60.0
VERIFY_SECONDS = 120.0
ORACLE_SYSTEMS = 200
WP_PREIMAGES = 200
WP_REJECTIONS = 100


def _bivariate(base):
    R = FunctionField(base, ["t"], ["u"])
    return R, R.var("t"), R.var("u")


def test_kummer_lines_rank(criterion):
    details, ok = [], True
    for base in (make_prime_field(7), make_cyclotomic(3)):
        R, t, u = _bivariate(base)
        start = time.perf_counter()
        sys_ = kummer_relative_rank([t + u + c for c in range(5)], 3)
        elapsed = time.perf_counter() - start
        good = sys_.rank == 5 and sys_.status == CERTIFIED and elapsed < LINES_SECONDS and sys_.recheck()
        ok &= good
        details.append(f"{base.text()}: rank {sys_.rank} {sys_.status} {elapsed:.3f}s")
    criterion(1, ok, "; ".join(details))
    assert ok, details


def test_mixed_pole_rank(criterion):
    F = make_finite_field(3, 4, "g")
    R, t, u = _bivariate(F)
    g = F.gen()
    basis = [g**i for i in range(4)]
    # independent check that the recorded constants form an F_3-basis
    coords = DomainMatrix.from_list([list(c.coords) for c in basis], GF(3))
    oracle_rank = coords.rank()
    start = time.perf_counter()
    sys_ = as_relative_rank([R.const(c) / (t + u) for c in basis], 3)
    elapsed = time.perf_counter() - start
    ok = oracle_rank == 4 and sys_.rank == 4 and sys_.status == CERTIFIED and elapsed < MIXED_POLE_SECONDS
    criterion(2, ok, f"rank {sys_.rank} {sys_.status} {elapsed:.3f}s (F_3-rank of constants {oracle_rank})")
    assert ok


def _affine_socle_ranks():
    """Socle ranks from the affine group x -> a x + b on Z/5 with a brute-force Frattini."""
    elems = [(a, b) for a in range(1, 5) for b in range(5)]
    index = {e: i for i, e in enumerate(elems)}
    # sigma_(a,b): zeta -> zeta^a, r -> zeta^b r; composition (a,b)(c,d) = (ac, ad + b)
    table = [[index[(a * c % 5, (a * d + b) % 5)] for (c, d) in elems] for (a, b) in elems]
    fix_r = frozenset(index[(a, 0)] for a in range(1, 5))
    fix_zr = frozenset(index[(a, (1 - a) % 5)] for a in range(1, 5))
    ranks = []
    for H in (fix_r, fix_zr, fix_r & fix_zr):
        sub = oracles.frattini_bruteforce(table, 2, contains=H)
        idx = 20 // len(sub)
        ranks.append(idx.bit_length() - 1)
    return ranks


def test_radical_socle(criterion):
    start = time.perf_counter()
    report = run_scenario("radical-socle")
    elapsed = time.perf_counter() - start
    rows = {r.claim: r for r in report.results}
    # independent degrees with sympy
    x = sympy.Symbol("x")
    r5 = sympy.root(2, 5)
    zeta = sympy.exp(2 * sympy.pi * sympy.I / 5)
    d1 = sympy.degree(sympy.minimal_polynomial(r5, x), x)
    d2 = sympy.degree(sympy.minimal_polynomial(sympy.expand(zeta * r5), x), x)
    d12 = sympy.totient(5) * d1  # Q(zeta5) and Q(2^(1/5)) have coprime degrees 4 and 5
    s = zeta + zeta**4
    square = sympy.nsimplify(sympy.expand_complex((2 * s + 1) ** 2))
    oracle_ranks = _affine_socle_ranks()
    ok = (
        all(r.verdict == "pass" for r in report.results)
        and rows["dims (L1, L2, L1L2)"].computed == f"({d1}, {d2}, {d12})"
        and rows["linearly disjoint"].computed == "false"
        and [int(rows[f"2-socle rank of {k}"].computed) for k in ("L1", "L2", "L1L2")] == oracle_ranks == [0, 0, 1]
        and rows["(2s+1)^2"].computed == str(square) == "5"
        and elapsed < RADICAL_SECONDS
    )
    criterion(3, ok, f"dims ({d1},{d2},{d12}) socle ranks {oracle_ranks} (2s+1)^2={square} {elapsed:.2f}s")
    assert ok, [(r.claim, r.computed, r.verdict) for r in report.results]


def test_freshman_identity(criterion):
    start = time.perf_counter()
    results = []
    for p in (2, 3, 5, 7):
        R = FunctionField(make_prime_field(p), ["alpha", "s", "tau"])
        alpha, s, tau = R.var("alpha"), R.var("s"), R.var("tau")
        gamma = alpha * s + tau
        w = freshman_check(gamma, tau, {"a": alpha**p, "s": s, "t": tau**p})
        results.append(bool(w) and (gamma - tau) / s == alpha)
    elapsed = time.perf_counter() - start
    ok = all(results) and elapsed < FRESHMAN_SECONDS
    criterion(4, ok, f"p in (2,3,5,7): {results} {elapsed:.3f}s")
    assert ok


def test_frattini_exactness(criterion):
    start = time.perf_counter()
    groups = catalog(24)
    mismatches = []
    for G in groups:
        table = G.table.tolist()
        for p in (2, 3):
            gen = frattini_generated(G, p)
            if gen != frattini_intersection(G, p) or frozenset(gen.members) != oracles.frattini_bruteforce(table, p):
                mismatches.append((G.name, p))
    pairs = 0
    for G1 in groups:
        for G2 in groups:
            if G1.order * G2.order > 48:
                continue
            P = direct_product(G1, G2)
            pairs += 1
            for p in (2, 3):
                if frattini_generated(P, p) != direct_product_subgroup(P, frattini_generated(G1, p), frattini_generated(G2, p)):
                    mismatches.append((G1.name, G2.name, p))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < FRATTINI_SECONDS
    criterion(5, ok, f"{len(groups)} groups, {pairs} product pairs, mismatches {mismatches} {elapsed:.2f}s")
    assert ok


def test_socle_equation_verifier(criterion):
    start = time.perf_counter()
    pairs, failures = 0, []
    for G in catalog(16):
        subs = subgroups(G)
        for p in (2, 3):
            for N in subs:
                core = normal_core(G, N)
                for H in subs:
                    if core.product_set(H) != G.whole.bits:
                        continue
                    pairs += 1
                    v = verify_socle_equation(G, N, H, p)
                    if v.verdict != "holds":
                        failures.append((G.name, p, N.members, H.members))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < VERIFY_SECONDS
    criterion(6, ok, f"{pairs} pairs, {len(failures)} failures, {elapsed:.2f}s")
    assert ok


# ---------------------------------------------------------------------------
# criterion 7: randomized systems against exhaustive exponent search


def _to_field(F, q, k):
    if q == 4:
        return F.from_coords((k & 1, k >> 1))
    return F(k)


def _rat(R, q, N, D):
    F = R.base
    num = R.poly({(i,): _to_field(F, q, c) for i, c in enumerate(N) if c})
    den = R.poly({(i,): _to_field(F, q, c) for i, c in enumerate(D) if c})
    return R(num) / R(den)


def _random_poly(rng, Fo, deg, monic=False):
    d = rng.randint(0, deg)
    coeffs = [rng.randrange(Fo.q) for _ in range(d)] + [1 if monic else rng.randrange(1, Fo.q)]
    return oracles.trim(coeffs)


def _random_kummer_system(rng):
    q, p = rng.choice([(4, 3), (5, 2), (7, 3), (7, 2)])
    Fo = oracles.GF(q)
    pool = [_random_poly(rng, Fo, 2, monic=True) for _ in range(3)]
    fracs = []
    for _ in range(rng.randint(1, 3)):
        N, D = [rng.randrange(1, q)], [1]
        for f in pool:
            e = rng.randint(-2, 2)
            part = oracles.ppow(Fo, f, abs(e))
            if e > 0 and len(N) + len(part) - 2 <= 4:
                N = oracles.pmul(Fo, N, part)
            elif e < 0 and len(D) + len(part) - 2 <= 4:
                D = oracles.pmul(Fo, D, part)
        fracs.append((N, D))
    return q, p, fracs


def _random_as_system(rng):
    p = rng.choice([2, 3])
    Fo = oracles.GF(p)
    fracs = []
    for _ in range(rng.randint(1, 3)):
        N = _random_poly(rng, Fo, 4)
        if rng.random() < 0.5:
            E = _random_poly(rng, Fo, 4 // p, monic=True)
            D = oracles.ppow(Fo, E, p)
        else:
            D = _random_poly(rng, Fo, 4, monic=True)
        fracs.append((N, D))
    if len(fracs) >= 2 and rng.random() < 0.4:
        # a combination of the others, shifted by wp of a small alpha
        k = [rng.randrange(p) for _ in fracs[:-1]]
        N, D = [], [1]
        for (a, b), c in zip(fracs[:-1], k):
            N = oracles.padd(Fo, oracles.pmul(Fo, N, b), oracles.pscale(Fo, c, oracles.pmul(Fo, a, D)))
            D = oracles.pmul(Fo, D, b)
        P = _random_poly(rng, Fo, 2)
        # + P^p - P
        N = oracles.padd(Fo, N, oracles.pmul(Fo, D, oracles.padd(Fo, oracles.ppow(Fo, P, p), oracles.pscale(Fo, p - 1, P))))
        fracs[-1] = (N or [0], D)
    return p, fracs


def test_oracle_equivalence(criterion):
    rng = random.Random(20240607)
    fields = {q: make_finite_field(*((2, 2) if q == 4 else (q, 1))) for q in (4, 5, 7)}
    mismatches = []
    for _ in range(ORACLE_SYSTEMS):
        q, p, fracs = _random_kummer_system(rng)
        R = FunctionField(fields[q], ["t"])
        sys_ = kummer_rank([_rat(R, q, N, D) for N, D in fracs], p)
        expected = oracles.kummer_rank_bruteforce(oracles.GF(q), p, fracs)
        if sys_.rank != expected or sys_.status == INCONCLUSIVE:
            mismatches.append(("kummer", q, p, fracs, sys_.rank, expected))
    as_fields = {p: make_prime_field(p) for p in (2, 3)}
    for _ in range(ORACLE_SYSTEMS):
        p, fracs = _random_as_system(rng)
        R = FunctionField(as_fields[p], ["t"])
        elems = [_rat(R, p, N, D) if oracles.trim(N) else R.zero for N, D in fracs]
        sys_ = as_rank(elems, p)
        expected = oracles.as_rank_bruteforce(p, [(oracles.trim(N), D) for N, D in fracs])
        if sys_.rank != expected or sys_.status == INCONCLUSIVE:
            mismatches.append(("artin-schreier", p, fracs, sys_.rank, expected))
    ok = not mismatches
    criterion(7, ok, f"{ORACLE_SYSTEMS} Kummer + {ORACLE_SYSTEMS} Artin-Schreier systems, {len(mismatches)} mismatches")
    assert ok, mismatches[:3]


# ---------------------------------------------------------------------------
# criterion 8: wp_solve soundness and completeness


def _random_ratfunc(rng, R, num_deg, den_deg):
    F = R.base
    elems = list(F.elements())

    def poly(deg, monic):
        terms = {}
        for e in _exponents(R.nvars, deg):
            c = rng.choice(elems)
            if not c.is_zero():
                terms[e] = c
        if monic:
            top = tuple([deg] + [0] * (R.nvars - 1))
            terms[top] = F.one
        return R.poly(terms)

    num = poly(rng.randint(0, num_deg), False)
    den = poly(rng.randint(0, den_deg), True)
    return R(num) / R(den)


def _exponents(nvars, deg):
    if nvars == 1:
        return [(i,) for i in range(deg + 1)]
    return [(i, j) for i in range(deg + 1) for j in range(deg + 1 - i)]


def test_wp_solve(criterion):
    rng = random.Random(8)
    rings = [
        FunctionField(make_prime_field(2), ["t"]),
        FunctionField(make_prime_field(3), ["t"]),
        FunctionField(make_prime_field(5), ["t"]),
        FunctionField(make_finite_field(2, 2), ["t"]),
        FunctionField(make_prime_field(2), ["t"], ["u"]),
        FunctionField(make_prime_field(3), ["t"], ["u"]),
    ]
    solved = failures = 0
    for i in range(WP_PREIMAGES):
        R = rings[i % len(rings)]
        alpha = _random_ratfunc(rng, R, 3, 2 if R.nvars == 1 else 1)
        b = wp(alpha)
        res = wp_solve(b)
        if res and wp(res.alpha) == b:
            solved += 1
        else:
            failures += 1
    rejected = rechecked = attempts = 0
    while rejected < WP_REJECTIONS and attempts < 20 * WP_REJECTIONS:
        attempts += 1
        R = rings[attempts % len(rings)]
        b = _random_ratfunc(rng, R, 4, 3 if R.nvars == 1 else 2)
        res = wp_solve(b)
        if res:
            if wp(res.alpha) != b:
                failures += 1
            continue
        rejected += 1
        rechecked += res.recheck(b)
    ok = solved == WP_PREIMAGES and rejected == WP_REJECTIONS and rechecked == WP_REJECTIONS and failures == 0
    criterion(8, ok, f"{solved}/{WP_PREIMAGES} preimages verified, {rechecked}/{rejected} obstructions re-checked")
    assert ok


def test_jsonl_determinism(criterion):
    cmd = [sys.executable, "-m", "socle_lab.cli", "scenario", "all", "--format", "jsonl"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    lines = first.stdout.decode().splitlines()
    ok = first.returncode == 0 and first.stdout == second.stdout and len(lines) > 0
    criterion(9, ok, f"{len(lines)} lines, identical={first.stdout == second.stdout}, exit {first.returncode}")
    assert ok, first.stderr.decode()

