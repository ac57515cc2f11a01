"""Univariate polynomials over a :class:`~socle_lab.fields.Field`.

Besides the ring operations this module holds the finite-field factorization
pipeline (square-free, distinct-degree and equal-degree splitting) and the
irreducibility certifiers used when a tower is extended.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import DivisionByZero, ParentMismatch, UnsupportedBase
from .fields import Field, FieldElement, is_prime, prime_factors


class UPoly:
    """Dense polynomial ``sum coeffs[i] * x**i`` with no trailing zero coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        cs = [c if isinstance(c, FieldElement) and c.parent == field else field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "UPoly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: Field, c) -> "UPoly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _coerce(self, other):
        if isinstance(other, UPoly):
            if other.field != self.field:
                raise ParentMismatch("polynomials over different fields")
            return other
        return UPoly(self.field, [other])

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UPoly(self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "UPoly":
        c = self.field(c)
        return UPoly(self.field, [c * a for a in self.coeffs])

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self.scale(self.lc.inverse())

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv = other.lc.inverse()
        q = [self.field.zero] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c.is_zero():
                continue
            c = c * inv
            q[k - db] = c
            for i, b in enumerate(other.coeffs):
                if not b.is_zero():
                    r[k - db + i] = r[k - db + i] - c * b
        return UPoly(self.field, q), UPoly(self.field, r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "UPoly":
        return UPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = self.field.zero if not isinstance(x, UPoly) else UPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def powmod(self, e: int, m: "UPoly") -> "UPoly":
        result = UPoly(self.field, [1])
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        from .fields import poly_text

        return poly_text(self.field, [c.coords for c in self.coeffs]) if self.coeffs else "0"


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """(g, s, t) with g = s*a + t*b monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = UPoly(F, [1]), UPoly(F)
    t0, t1 = UPoly(F), UPoly(F, [1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lc.inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ---------------------------------------------------------------------------
# finite fields


def _pth_root_poly(f: UPoly) -> UPoly:
    p = f.field.characteristic
    cs = [f.coeffs[i].frobenius_inverse() for i in range(0, len(f.coeffs), p)]
    return UPoly(f.field, cs)


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Monic square-free parts with multiplicities; handles characteristic p."""
    F = f.field
    f = f.monic()
    if f.degree <= 0:
        return []
    p = F.characteristic
    out: list[tuple[UPoly, int]] = []
    d = f.derivative()
    if d.is_zero():
        if not p:
            raise AssertionError("nonconstant polynomial with zero derivative in characteristic 0")
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root_poly(f))]
    c = poly_gcd(f, d)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        if not p:
            raise AssertionError("leftover in characteristic 0")
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root_poly(c)))
    return out


def distinct_degree_factorization(f: UPoly) -> list[tuple[UPoly, int]]:
    """For monic square-free f over a finite field: products of all irreducible factors of each degree."""
    F = f.field
    q = F.order
    x = UPoly.x(F)
    out = []
    h = x % f if f.degree > 1 else x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = poly_gcd(f, h - x)
        if not g.is_one():
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree_factorization(f: UPoly, d: int, rng: random.Random | None = None) -> list[UPoly]:
    """Split a monic product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    if f.degree == d:
        return [f]
    F = f.field
    rng = rng or random.Random(0x5C1E)
    q = F.order
    p = F.characteristic
    n = f.degree
    while True:
        a = UPoly(F, [F.random_element(rng) for _ in range(n)])
        if a.degree <= 0:
            continue
        if p == 2:
            # absolute trace to F_2 of the degree-d residue rings
            k = (q.bit_length() - 1) * d
            t = a % f
            acc = t
            for _ in range(k - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((q**d - 1) // 2, f) - UPoly(F, [1])
        g = poly_gcd(f, b)
        if 0 < g.degree < n:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f.exact_div(g), d, rng)


def factor_finite(f: UPoly) -> tuple[FieldElement, list[tuple[UPoly, int]]]:
    """Complete factorization over a finite field: (leading coefficient, [(monic irreducible, multiplicity)])."""
    F = f.field
    if not F.is_finite:
        raise UnsupportedBase(f"factorization needs a finite base field, got {F.text()}")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    lc = f.lc
    factors = Counter()
    rng = random.Random(1729)
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree_factorization(g):
            for irr in equal_degree_factorization(h, d, rng):
                factors[irr] += m
    ordered = sorted(factors.items(), key=lambda kv: (kv[0].degree, [c.coords for c in kv[0].coeffs]))
    return lc, ordered


def roots_finite(f: UPoly) -> list[FieldElement]:
    _, facs = factor_finite(f)
    return [-g.coeffs[0] for g, _ in facs if g.degree == 1]


def is_irreducible_finite(f: UPoly) -> bool:
    if f.degree < 1:
        return False
    _, facs = factor_finite(f)
    return len(facs) == 1 and facs[0][1] == 1


# ---------------------------------------------------------------------------
# characteristic zero certification


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _integer_coeffs(coeffs: Sequence[Fraction]) -> list[int]:
    den = reduce(math.lcm, (Fraction(c).denominator for c in coeffs), 1)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = reduce(math.gcd, ints, 0) or 1
    return [c // g for c in ints]


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots (rational root theorem)."""
    a = _integer_coeffs(coeffs)
    roots = set()
    while a and a[0] == 0:
        roots.add(Fraction(0))
        a = a[1:]
    if len(a) <= 1:
        return sorted(roots)
    for num in _divisors(a[0]):
        for den in _divisors(a[-1]):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if sum(c * r**i for i, c in enumerate(a)) == 0:
                    roots.add(r)
    return sorted(roots)


def eisenstein_prime(coeffs: Sequence[Fraction], shifts: Sequence[int] = (0, 1, -1)) -> tuple[int, int] | None:
    """A (prime, shift) for which f(x + shift) is Eisenstein, if any."""
    for s in shifts:
        shifted = _taylor_shift(list(coeffs), s)
        a = _integer_coeffs(shifted)
        lower = a[:-1]
        g = reduce(math.gcd, lower, 0)
        if g == 0:
            continue
        for ell in prime_factors(g):
            if a[-1] % ell and a[0] % (ell * ell):
                return ell, s
    return None


def _taylor_shift(coeffs: list, s: int) -> list:
    # coefficients of f(x + s)
    out = [Fraction(0)] * len(coeffs)
    for i in range(len(coeffs) - 1, -1, -1):
        # Horner: out = out * (x + s) + c_i
        new = [Fraction(0)] * len(coeffs)
        for j, c in enumerate(out):
            if c:
                new[j] += c * s
                if j + 1 < len(new):
                    new[j + 1] += c
        new[0] += coeffs[i]
        out = new
    return out


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _reduction_maps(F: Field, f: UPoly, max_prime: int, count: int):
    """Yield (ell, images of f's coefficients in F_ell) for degree-one unramified places of F."""
    steps = F.steps
    dims = F._dims
    found = 0
    for ell in range(2, max_prime):
        if not is_prime(ell):
            continue

        def red(c):
            c = Fraction(c)
            if c.denominator % ell == 0:
                raise ZeroDivisionError
            return c.numerator * pow(c.denominator, -1, ell) % ell

        def evaluate(coords, level, gens):
            # value of an element of the given level at the chosen generator residues
            if level == 0:
                return red(coords[0])
            D = dims[level - 1]
            acc = 0
            for e in range(steps[level - 1].degree - 1, -1, -1):
                acc = (acc * gens[level - 1] + evaluate(coords[e * D:(e + 1) * D], level - 1, gens)) % ell
            return acc

        try:
            gens: list[int] = []
            ok = True
            for k, st in enumerate(steps):
                m = [evaluate(c, k, gens) for c in st.minpoly]
                dm = [(i * c) % ell for i, c in enumerate(m)][1:]
                root = None
                for r in range(ell):
                    if sum(c * pow(r, i, ell) for i, c in enumerate(m)) % ell == 0 and sum(
                        c * pow(r, i, ell) for i, c in enumerate(dm)
                    ) % ell:
                        root = r
                        break
                if root is None:
                    ok = False
                    break
                gens.append(root)
            if not ok:
                continue
            image = [evaluate(c.coords, len(steps), gens) for c in f.coeffs]
        except ZeroDivisionError:
            continue
        if image[-1] % ell == 0:
            continue
        yield ell, image
        found += 1
        if found >= count:
            return


def modular_degree_sieve(f: UPoly, max_prime: int = 400, count: int = 12) -> int | None:
    """Prime ell certifying irreducibility of monic f over a number field, or None.

    Each place of degree one (unramified for every tower step) reduces any
    factorization over the field to one over F_ell, so a proper factor degree
    must be a subset sum of the factor degrees of the reduction; once the
    intersection of these sets over several primes is {0, deg f}, f is
    irreducible.
    """
    n = f.degree
    possible = set(range(1, n))
    from .fields import make_prime_field

    for ell, image in _reduction_maps(f.field, f, max_prime, count):
        Fl = make_prime_field(ell)
        g = UPoly(Fl, image)
        _, facs = factor_finite(g)
        degs = [h.degree for h, m in facs for _ in range(m)]
        possible &= _subset_sums(degs)
        if not possible:
            return ell
    return None


def certify_irreducible(f: UPoly):
    """(True, method) if certified irreducible, (False, factor/root) if reducible, (None, reason) otherwise."""
    F = f.field
    n = f.degree
    if n <= 0:
        return False, "constant"
    if n == 1:
        return True, "linear"
    if F.is_finite:
        lc, facs = factor_finite(f)
        if len(facs) == 1 and facs[0][1] == 1:
            return True, "factorization"
        return False, str(facs[0][0])
    rational = all(c.is_rational_scalar() for c in f.coeffs)
    if rational and not F.steps:
        cs = [c.scalar() for c in f.coeffs]
        roots = rational_roots(cs)
        if roots:
            return False, f"root {roots[0]}"
        if n <= 3:
            return True, "root-search"
        e = eisenstein_prime(cs)
        if e is not None:
            return True, f"eisenstein({e[0]})"
        ell = modular_degree_sieve(f)
        if ell is not None:
            return True, f"modular-sieve({ell})"
        return None, "no certificate over Q"
    if rational:
        base = UPoly(F.prime_field, [c.scalar() for c in f.coeffs])
        ok, how = certify_irreducible(base)
        if ok is True and math.gcd(n, F.degree) == 1:
            return True, f"coprime-degree[{how}]"
    ell = modular_degree_sieve(f)
    if ell is not None:
        return True, f"modular-sieve({ell})"
    return None, "no certificate over number field"
