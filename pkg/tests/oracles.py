"""Brute-force reference computations written without the package under test.

Finite fields here are F_p (ints mod p) and F_4 = F_2[w]/(w^2+w+1) with
elements 0..3 read as bit pairs (bit 0: constant, bit 1: w).  Polynomials
are coefficient lists, lowest degree first, without trailing zeros.
"""

from __future__ import annotations

import itertools


class GF:
    def __init__(self, q: int):
        if q == 4:
            self.p, self.k = 2, 2
        elif q in (2, 3, 5, 7, 11, 13):
            self.p, self.k = q, 1
        else:
            raise ValueError(f"unsupported order {q}")
        self.q = q
        self.elements = list(range(q))

    def add(self, a, b):
        return a ^ b if self.q == 4 else (a + b) % self.p

    def neg(self, a):
        return a if self.q == 4 else (-a) % self.p

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.q != 4:
            return a * b % self.p
        # carry-less product reduced by w^2 = w + 1
        r = 0
        for i in range(2):
            if b >> i & 1:
                r ^= a << i
        if r & 4:
            r ^= 0b111
        return r

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return next(b for b in self.elements if self.mul(a, b) == 1)

    def is_pth_power(self, c, p):
        return self.pow(c, (self.q - 1) // p) == 1 if (self.q - 1) % p == 0 else True


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def pmul(F: GF, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def ppow(F: GF, f, e):
    out = [1]
    for _ in range(e):
        out = pmul(F, out, f)
    return out


def padd(F: GF, f, g):
    n = max(len(f), len(g))
    return trim([F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)])


def pscale(F: GF, c, f):
    return trim([F.mul(c, a) for a in f])


# ---------------------------------------------------------------------------
# Kummer side: is a polynomial c * g^p ?


def monic_pth_root(F: GF, h, p):
    """g monic with g^p == h for monic h, computed from the top down; None if none exists."""
    d = len(h) - 1
    if d % p:
        return None
    k = d // p
    # reversed series: h_rev = g_rev^p with g_rev(0) = 1; solve for g_rev by undetermined coefficients
    hr = h[::-1]
    g = [1]
    inv_p = F.inv(p % F.p)  # p differs from the characteristic
    for m in range(1, k + 1):
        g.append(0)
        cur = ppow(F, g, p)
        coeff = cur[m] if m < len(cur) else 0
        # (g + x e)^p = g^p + p e x^m g(0)^(p-1) + ... at degree m
        diff = F.sub(hr[m] if m < len(hr) else 0, coeff)
        g[m] = F.mul(diff, inv_p)
    cand = g[::-1]
    return cand if ppow(F, cand, p) == h else None


def is_pth_power_poly(F: GF, h, p) -> bool:
    h = trim(h)
    if not h:
        return False
    lc = h[-1]
    if not F.is_pth_power(lc, p):
        return False
    monic = pscale(F, F.inv(lc), h)
    return monic_pth_root(F, monic, p) is not None


def kummer_rank_bruteforce(F: GF, p: int, fracs) -> int:
    """fracs: list of (N, D) coefficient lists; rank of their classes in F(t)*/(F(t)*)^p."""
    n = len(fracs)
    # N/D = N D^(p-1) / D^p
    polys = [pmul(F, N, ppow(F, D, p - 1)) for N, D in fracs]
    kernel = 0
    for nu in itertools.product(range(p), repeat=n):
        h = [1]
        for f, k in zip(polys, nu):
            h = pmul(F, h, ppow(F, f, k))
        kernel += is_pth_power_poly(F, h, p)
    r = 0
    while p**r < kernel:
        r += 1
    assert p**r == kernel, "kernel size must be a power of p"
    return n - r


# ---------------------------------------------------------------------------
# Artin-Schreier side over a prime field: is N/D = alpha^p - alpha ?


def _solve_mod(rows, rhs, p):
    """Gaussian elimination over F_p; True when the system is consistent."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return all(any(v % p for v in row[:-1]) or row[-1] % p == 0 for row in m)


def frobenius_root(p, D):
    """E with E(t^p) = D(t), or None."""
    if any(c for i, c in enumerate(D) if i % p):
        return None
    return trim(D[::p])


def reduce_fraction_prime(p, N, D):
    """Cancel the common factor of N and D over F_p (Euclid) and make D monic."""
    F = GF(p)

    def pmod(a, b):
        a = list(a)
        inv = F.inv(b[-1])
        while len(a) >= len(b) and a:
            c = F.mul(a[-1], inv)
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = F.sub(a[shift + i], F.mul(c, bc))
            a = trim(a)
        return a

    def pdiv(a, b):
        a = list(a)
        q = [0] * max(len(a) - len(b) + 1, 1)
        inv = F.inv(b[-1])
        while len(a) >= len(b) and a:
            c = F.mul(a[-1], inv)
            shift = len(a) - len(b)
            q[shift] = c
            for i, bc in enumerate(b):
                a[shift + i] = F.sub(a[shift + i], F.mul(c, bc))
            a = trim(a)
        assert not a
        return trim(q)

    a, b = trim(N), trim(D)
    if not a:
        return [], [1]
    x, y = a, b
    while y:
        x, y = y, pmod(x, y)
    g = x
    a, b = pdiv(a, g), pdiv(b, g)
    inv = F.inv(b[-1])
    return pscale(F, inv, a), pscale(F, inv, b)


def in_wp_image(p, N, D) -> bool:
    """Decide N/D in {alpha^p - alpha : alpha in F_p(t)} by an exhaustive linear ansatz.

    With alpha = P/E in lowest terms the denominator of alpha^p - alpha is E^p,
    and P(t^p) - E^(p-1) P = N.
    """
    N, D = reduce_fraction_prime(p, N, D)
    if not N:
        return True
    E = frobenius_root(p, D)
    if E is None:
        return False
    F = GF(p)
    e = len(E) - 1
    d = max(e, (len(N) - 1) // p)
    Ep1 = ppow(F, E, p - 1)
    size = max(p * d, (p - 1) * e + d, len(N) - 1) + 1
    cols = []
    for j in range(d + 1):
        col = [0] * size
        col[p * j] = 1
        for i, c in enumerate(Ep1):
            col[i + j] = (col[i + j] - c) % p
        cols.append(col)
    rows = [[cols[j][i] for j in range(d + 1)] for i in range(size)]
    rhs = [N[i] if i < len(N) else 0 for i in range(size)]
    return _solve_mod(rows, rhs, p)


def as_rank_bruteforce(p: int, fracs) -> int:
    """Rank of the classes of N_i/D_i in F_p(t)/wp(F_p(t)) by exhausting exponent vectors."""
    F = GF(p)
    n = len(fracs)
    kernel = 0
    for nu in itertools.product(range(p), repeat=n):
        N, D = [], [1]
        for (a, b), k in zip(fracs, nu):
            if not k:
                continue
            # N/D + k a/b
            N = padd(F, pmul(F, N, b), pscale(F, k, pmul(F, a, D)))
            D = pmul(F, D, b)
        kernel += in_wp_image(p, N, D)
    r = 0
    while p**r < kernel:
        r += 1
    assert p**r == kernel
    return n - r


# ---------------------------------------------------------------------------
# groups: brute-force p-Frattini via homomorphisms onto C_p


def index_p_normal_kernels(table, p):
    """Kernels of all surjections G -> C_p, found by trying every assignment on a generating set."""
    n = len(table)
    ident = next(e for e in range(n) if all(table[e][x] == x for x in range(n)))
    gens, reach = [], {ident}
    for x in range(n):
        if x not in reach:
            gens.append(x)
            reach = {ident}
            todo = [ident]
            while todo:
                y = todo.pop()
                for g in gens:
                    z = table[y][g]
                    if z not in reach:
                        reach.add(z)
                        todo.append(z)
    kernels = set()
    for vals in itertools.product(range(p), repeat=len(gens)):
        if not any(vals):
            continue
        phi = {ident: 0}
        todo = [ident]
        ok = True
        while todo and ok:
            y = todo.pop()
            for g, v in zip(gens, vals):
                z = table[y][g]
                w = (phi[y] + v) % p
                if z in phi:
                    ok &= phi[z] == w
                else:
                    phi[z] = w
                    todo.append(z)
        if ok and all(phi[table[a][b]] == (phi[a] + phi[b]) % p for a in range(n) for b in range(n)):
            kernels.add(frozenset(x for x in range(n) if phi[x] == 0))
    return kernels


def frattini_bruteforce(table, p, contains=frozenset()):
    out = set(range(len(table)))
    for K in index_p_normal_kernels(table, p):
        if set(contains) <= K:
            out &= K
    return frozenset(out)
