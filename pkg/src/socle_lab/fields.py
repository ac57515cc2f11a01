"""Exact computable fields: the rationals, prime fields and finite towers over them.

A field is described by its characteristic and an ordered list of extension
steps.  Each step adjoins a root of a monic polynomial that is irreducible over
the previous level.  Elements are stored as coordinate vectors over the prime
field (or over Q) with respect to the tower monomial basis.

Coordinate layout: an element of level ``k`` is ``sum_e block_e * g_k**e`` with
``block_e`` an element of level ``k-1``; its coordinates are the concatenation
``block_0 + block_1 + ...``.  So an element of a lower level embeds by padding
with zeros, and the monomial ``g_1**e_1 * ... * g_m**e_m`` sits at index
``sum_k e_k * D_{k-1}`` where ``D_k`` is the degree of level ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DivisionByZero, NotPrime, ParentMismatch, Reducible, UncertifiedIrreducibility


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` by trial division."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    r = n
    for q in prime_factors(n):
        r = r // q * (q - 1)
    return r


# ---------------------------------------------------------------------------
# integer / F_p polynomial helpers (coefficient lists, low degree first)

def _int_poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % lb:
            raise ArithmeticError("inexact integer polynomial division")
        c //= lb
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact integer polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    d = len(m) - 1
    for k in range(len(res) - 1, d - 1, -1):
        c = res[k]
        if c:
            for i in range(d + 1):
                res[k - d + i] = (res[k - d + i] - c * m[i]) % p
    return _fp_trim(res[:d])


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_is_irreducible(m: list[int], p: int) -> bool:
    # Rabin: x^(p^k) = x mod m and gcd(x^(p^(k/r)) - x, m) = 1 for primes r | k
    k = len(m) - 1
    x = [0, 1]

    def frob_power(j):
        r = x
        for _ in range(j):
            r = _fp_powmod(r, p, m, p)
        return r

    if frob_power(k) != x:
        return False
    for r in prime_factors(k):
        h = frob_power(k // r)
        h = _fp_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(h + [0, 0])])
        # gcd(h, m)
        a, b = list(m), h
        while b:
            inv = pow(b[-1], p - 2, p)
            while len(a) >= len(b) and a:
                c = a[-1] * inv % p
                s = len(a) - len(b)
                for i, bi in enumerate(b):
                    a[s + i] = (a[s + i] - c * bi) % p
                _fp_trim(a)
            a, b = b, a
        if len(a) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def conway_like_polynomial(p: int, k: int) -> tuple[int, ...]:
    """First monic primitive polynomial of degree k over F_p in enumeration order.

    Polynomials are enumerated by the integer ``sum c_i p**i`` of their lower
    coefficients; the first one that is irreducible and has ``x`` of
    multiplicative order ``p**k - 1`` is returned.
    """
    q1 = p**k - 1
    rs = prime_factors(q1)
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        m = low + [1]
        if not _fp_is_irreducible(m, p):
            continue
        if all(_fp_powmod([0, 1], q1 // r, m, p) != [1] for r in rs):
            return tuple(m)
    raise AssertionError("no primitive polynomial found")  # unreachable


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionStep:
    """One level of a tower: adjoin ``symbol`` with the given monic minimal polynomial.

    ``minpoly`` lists coefficient coordinate vectors (at the previous level),
    lowest degree first, ending with the coordinates of 1.
    """

    symbol: str
    minpoly: tuple[tuple, ...]
    degree: int
    certification: str = dc_field(default="asserted", compare=False)


class Field:
    """FieldDescriptor: characteristic plus an ordered tower of extension steps."""

    def __init__(self, characteristic: int, steps: Sequence[ExtensionStep] = (), cyclotomic: int | None = None):
        self.characteristic = characteristic
        self.steps = tuple(steps)
        # records that level 1 is Q(zeta_n); only used for naming and roots of unity
        self.cyclotomic = cyclotomic
        dims = [1]
        for s in self.steps:
            dims.append(dims[-1] * s.degree)
        self._dims = tuple(dims)
        self.degree = dims[-1]
        self._zero_coords = (0,) * self.degree if characteristic else (Fraction(0),) * self.degree

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.characteristic == other.characteristic
            and self.steps == other.steps
        )

    def __hash__(self):
        return hash((self.characteristic, self.steps))

    def __repr__(self):
        return f"Field({self.text()})"

    @property
    def kind(self) -> str:
        if self.steps:
            return "tower"
        return "prime-field" if self.characteristic else "rationals"

    @property
    def total_degree(self) -> int:
        return self.degree

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    @property
    def order(self) -> int:
        if not self.characteristic:
            raise ValueError("the rationals are infinite")
        return self.characteristic**self.degree

    @property
    def certified(self) -> bool:
        return all(s.certification != "asserted" for s in self.steps)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s.symbol for s in self.steps)

    def level(self, k: int) -> "Field":
        """The subfield given by the first ``k`` steps of the tower."""
        if k == len(self.steps):
            return self
        return _level_cache(self, k)

    @cached_property
    def prime_field(self) -> "Field":
        return self.level(0)

    # -- construction of elements ------------------------------------------
    def _scalar(self, c):
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise DivisionByZero(f"denominator divisible by {p}")
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        return Fraction(c)

    def __call__(self, x=0) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.parent == self:
                return x
            if x.parent.characteristic == self.characteristic and self.steps[: len(x.parent.steps)] == x.parent.steps:
                return FieldElement(self, x.coords + self._zero_coords[len(x.coords):])
            raise ParentMismatch(f"cannot coerce element of {x.parent.text()} into {self.text()}")
        if isinstance(x, (tuple, list)):
            return self.from_coords(x)
        c = self._scalar(x)
        return FieldElement(self, (c,) + self._zero_coords[1:])

    def from_coords(self, coords: Iterable) -> "FieldElement":
        coords = tuple(self._scalar(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self._zero_coords)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def gen(self, symbol: str | int | None = None) -> "FieldElement":
        """The generator adjoined at the given step (default: the top one)."""
        if not self.steps:
            raise ValueError("prime fields have no generator")
        if symbol is None:
            k = len(self.steps)
        elif isinstance(symbol, int):
            k = symbol
        else:
            k = self.symbols.index(symbol) + 1
        coords = list(self._zero_coords)
        coords[self._dims[k - 1]] = self._scalar(1)
        return FieldElement(self, tuple(coords))

    def gens(self) -> dict[str, "FieldElement"]:
        return {s.symbol: self.gen(i + 1) for i, s in enumerate(self.steps)}

    def basis(self) -> list["FieldElement"]:
        out = []
        for i in range(self.degree):
            c = list(self._zero_coords)
            c[i] = self._scalar(1)
            out.append(FieldElement(self, tuple(c)))
        return out

    def elements(self) -> Iterator["FieldElement"]:
        """All elements of a finite field, in coordinate order."""
        p = self.characteristic
        if not p:
            raise ValueError("cannot enumerate an infinite field")
        for coords in product(range(p), repeat=self.degree):
            yield FieldElement(self, tuple(reversed(coords)))

    def random_element(self, rng, bound: int = 5) -> "FieldElement":
        p = self.characteristic
        if p:
            return FieldElement(self, tuple(rng.randrange(p) for _ in range(self.degree)))
        return FieldElement(self, tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.degree)))

    # -- coordinate arithmetic ---------------------------------------------
    def _add(self, a, b):
        p = self.characteristic
        if p:
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.characteristic
        if p:
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        p = self.characteristic
        if p:
            return tuple(-x % p for x in a)
        return tuple(-x for x in a)

    def _scale(self, c, a):
        p = self.characteristic
        if p:
            return tuple(c * x % p for x in a)
        return tuple(c * x for x in a)

    def _mul(self, a, b):
        return self._mul_level(len(self.steps), a, b)

    def _mul_level(self, k, a, b):
        if k == 0:
            p = self.characteristic
            return ((a[0] * b[0]) % p,) if p else (a[0] * b[0],)
        step = self.steps[k - 1]
        d = step.degree
        D = self._dims[k - 1]
        zero = self._zero_coords[:D]
        A = [a[i * D:(i + 1) * D] for i in range(d)]
        B = [b[i * D:(i + 1) * D] for i in range(d)]
        nzB = [(j, bj) for j, bj in enumerate(B) if any(bj)]
        C = [zero] * (2 * d - 1)
        for i, ai in enumerate(A):
            if not any(ai):
                continue
            for j, bj in nzB:
                C[i + j] = self._add(C[i + j], self._mul_level(k - 1, ai, bj))
        m = step.minpoly
        for top in range(2 * d - 2, d - 1, -1):
            c = C[top]
            if not any(c):
                continue
            for i in range(d):
                if any(m[i]):
                    C[top - d + i] = self._sub(C[top - d + i], self._mul_level(k - 1, c, m[i]))
        out = ()
        for blk in C[:d]:
            out += blk
        return out

    def _mul_matrix(self, a):
        """Columns are the coordinates of a * basis_j (matrix over the prime field)."""
        cols = []
        for j in range(self.degree):
            e = list(self._zero_coords)
            e[j] = self._scalar(1)
            cols.append(self._mul(a, tuple(e)))
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def _inv(self, a):
        if not any(a):
            raise DivisionByZero("inverse of zero")
        p = self.characteristic
        if self.degree == 1:
            return (pow(a[0], p - 2, p),) if p else (1 / a[0],)
        if p and self.order <= 1 << 12:
            return self._pow(a, self.order - 2)
        rhs = [self._scalar(0)] * self.degree
        rhs[0] = self._scalar(1)
        sol = solve_linear(self._mul_matrix(a), rhs, p)
        return tuple(sol)

    def _pow(self, a, e):
        result = (self._scalar(1),) + self._zero_coords[1:]
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    # -- finite-field structure --------------------------------------------
    @cached_property
    def primitive_element(self) -> "FieldElement":
        """A generator of the cyclic multiplicative group (finite fields only)."""
        q = self.order
        rs = prime_factors(q - 1)
        one = self.one
        for x in self.elements():
            if x.is_zero():
                continue
            if all(x ** ((q - 1) // r) != one for r in rs):
                return x
        raise AssertionError("finite field without primitive element")

    @cached_property
    def _log_table(self) -> dict[tuple, int]:
        g = self.primitive_element
        table = {}
        x = self.one
        for i in range(self.order - 1):
            table[x.coords] = i
            x = x * g
        return table

    def discrete_log(self, x: "FieldElement") -> int:
        """Exponent e with ``primitive_element**e == x``."""
        if x.is_zero():
            raise DivisionByZero("discrete log of zero")
        return self._log_table[self(x).coords]

    def has_root_of_unity(self, n: int) -> bool:
        """Whether the field contains a primitive n-th root of unity (decided or conservatively False)."""
        p = self.characteristic
        if p:
            return n % p != 0 and (self.order - 1) % n == 0
        if n <= 2:
            return True
        if self.cyclotomic:
            return math.lcm(2, self.cyclotomic) % n == 0
        return False

    def root_of_unity(self, n: int) -> "FieldElement":
        """A primitive n-th root of unity in the field."""
        if not self.has_root_of_unity(n):
            from .errors import MissingRootOfUnity

            raise MissingRootOfUnity(f"{self.text()} has no primitive {n}-th root of unity")
        p = self.characteristic
        if p:
            return self.primitive_element ** ((self.order - 1) // n)
        if n == 1:
            return self.one
        if n == 2:
            return -self.one
        m = self.cyclotomic
        z = self.gen(1)
        if m % n:
            z = -z  # m odd and n | 2m: -zeta_m generates mu_{2m}
            m *= 2
        return z ** (m // n)

    def roots_of_unity_order(self) -> int | None:
        """Order of the (cyclic) group of roots of unity when it is known."""
        if self.characteristic:
            return self.order - 1
        if self.cyclotomic and len(self.steps) == 1:
            return math.lcm(2, self.cyclotomic)
        if not self.steps:
            return 2
        return None

    # -- serialization ------------------------------------------------------
    def text(self) -> str:
        p = self.characteristic
        out = f"Fp({p})" if p else "Q"
        start = 0
        if self.steps:
            s = self.steps[0]
            low = tuple(c[0] for c in s.minpoly)
            if p and low == conway_like_polynomial(p, s.degree):
                out, start = f"Fq({p},{s.degree};{s.symbol})", 1
            elif (
                not p
                and self.cyclotomic
                and s.symbol == f"zeta{self.cyclotomic}"
                and low == cyclotomic_polynomial(self.cyclotomic)
            ):
                out, start = f"Q(zeta{self.cyclotomic})", 1
        for k in range(start, len(self.steps)):
            s = self.steps[k]
            out += f"({s.symbol}:{poly_text(self.level(k), s.minpoly)})"
        return out

    def describe(self) -> dict:
        return {
            "text": self.text(),
            "characteristic": self.characteristic,
            "total_degree": self.degree,
            "steps": [
                {"symbol": s.symbol, "degree": s.degree, "certification": s.certification} for s in self.steps
            ],
        }


@lru_cache(maxsize=None)
def _level_cache(F: Field, k: int) -> Field:
    cyc = F.cyclotomic if k >= 1 else None
    return Field(F.characteristic, F.steps[:k], cyclotomic=cyc)


def _coeff_text(F: Field, coords) -> str:
    return str(FieldElement(F, tuple(coords)))


def poly_text(F: Field, coeffs: Sequence[tuple], var: str = "x") -> str:
    """Render a univariate polynomial whose coefficients are coordinate tuples over F."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = FieldElement(F, tuple(coeffs[e]))
        if c.is_zero():
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        cs = str(c)
        if mono:
            if cs == "1":
                t = mono
            elif cs == "-1":
                t = "-" + mono
            elif c.is_rational_scalar():
                t = f"{cs}*{mono}"
            else:
                t = f"({cs})*{mono}"
        else:
            t = cs if c.is_rational_scalar() else f"({cs})"
        terms.append(t)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


class FieldElement:
    """An element of a :class:`Field`, held in canonical coordinates."""

    __slots__ = ("parent", "coords", "_hash")

    def __init__(self, parent: Field, coords: tuple):
        self.parent = parent
        self.coords = coords
        self._hash = None

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.parent is self.parent or y.parent == self.parent:
                return y.coords
            raise ParentMismatch(f"{self.parent.text()} vs {y.parent.text()}")
        if isinstance(y, (int, Fraction)):
            return self.parent(y).coords
        return None

    def __add__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return FieldElement(self.parent, self.parent._add(self.coords, c))

    __radd__ = __add__

    def __sub__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return FieldElement(self.parent, self.parent._sub(self.coords, c))

    def __rsub__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return FieldElement(self.parent, self.parent._sub(c, self.coords))

    def __neg__(self):
        return FieldElement(self.parent, self.parent._neg(self.coords))

    def __mul__(self, y):
        if isinstance(y, int) and not isinstance(y, bool):
            return FieldElement(self.parent, self.parent._scale(self.parent._scalar(y), self.coords))
        c = self._other(y)
        if c is None:
            return NotImplemented
        return FieldElement(self.parent, self.parent._mul(self.coords, c))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.parent, self.parent._inv(self.coords))

    def __truediv__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return FieldElement(self.parent, self.parent._mul(self.coords, self.parent._inv(c)))

    def __rtruediv__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return FieldElement(self.parent, self.parent._mul(c, self.parent._inv(self.coords)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.parent, self.parent._pow(self.coords, e))

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            return self.coords == y.coords and (self.parent is y.parent or self.parent == y.parent)
        if isinstance(y, (int, Fraction)):
            try:
                return self.coords == self.parent(y).coords
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.parent, self.coords))
        return self._hash

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def is_rational_scalar(self) -> bool:
        """True when the element lies in the prime field (or Q)."""
        return not any(self.coords[1:])

    def scalar(self):
        """The prime-field (or rational) value; only valid when :meth:`is_rational_scalar`."""
        if not self.is_rational_scalar():
            raise ValueError("element is not in the prime field")
        return self.coords[0]

    def norm_key(self):
        return self.coords

    def __repr__(self):
        return f"{self.parent.text()}[{self}]"

    def __str__(self):
        F = self.parent
        terms = []
        syms = F.symbols
        dims = F._dims
        for idx in range(F.degree - 1, -1, -1):
            c = self.coords[idx]
            if c == 0:
                continue
            mono = []
            rem = idx
            for k in range(len(syms), 0, -1):
                e, rem = divmod(rem, dims[k - 1])
                if e:
                    mono.append(syms[k - 1] if e == 1 else f"{syms[k - 1]}^{e}")
            mono = "*".join(reversed(mono))
            cs = str(c)
            if mono:
                if cs == "1":
                    t = mono
                elif cs == "-1":
                    t = "-" + mono
                elif isinstance(c, Fraction) and c.denominator != 1:
                    t = f"({cs})*{mono}"
                else:
                    t = f"{cs}*{mono}"
            else:
                t = cs
            terms.append(t)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def frobenius_inverse(self) -> "FieldElement":
        """The unique p-th root in a finite field."""
        F = self.parent
        if not F.characteristic:
            raise ValueError("p-th roots are unique only in finite fields here")
        return self ** (F.order // F.characteristic)


# ---------------------------------------------------------------------------
# linear algebra over the prime field / Q on plain scalars


def solve_linear(matrix: list[list], rhs: list, p: int) -> list:
    """Solve a square nonsingular system exactly over F_p (p > 0) or Q (p == 0)."""
    n = len(matrix)
    M = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], p - 2, p) if p else 1 / M[col][col]
        row = [(x * inv) % p for x in M[col]] if p else [x * inv for x in M[col]]
        M[col] = row
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                if p:
                    M[r] = [(x - f * y) % p for x, y in zip(M[r], row)]
                else:
                    M[r] = [x - f * y for x, y in zip(M[r], row)]
    return [M[i][n] for i in range(n)]


class _Echelon:
    """Incremental row echelon form over the prime field / Q."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, list] = {}

    def reduce(self, v):
        v = list(v)
        p = self.p
        for piv in sorted(self.rows):
            c = v[piv]
            if c != 0:
                row = self.rows[piv]
                if p:
                    v = [(x - c * y) % p for x, y in zip(v, row)]
                else:
                    v = [x - c * y for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        p = self.p
        inv = pow(v[piv], p - 2, p) if p else 1 / v[piv]
        v = [(x * inv) % p for x in v] if p else [x * inv for x in v]
        for k, row in self.rows.items():
            c = row[piv]
            if c != 0:
                self.rows[k] = [(x - c * y) % p for x, y in zip(row, v)] if p else [x - c * y for x, y in zip(row, v)]
        self.rows[piv] = v
        return True

    def __len__(self):
        return len(self.rows)


# ---------------------------------------------------------------------------
# public operations


def make_rationals() -> Field:
    return Field(0)


def make_prime_field(p: int) -> Field:
    """The field with p elements."""
    if p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return Field(p)


def make_cyclotomic(n: int) -> Field:
    """Q(zeta_n) as Q extended by the n-th cyclotomic polynomial (certified by theorem)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = cyclotomic_polynomial(n)
    if len(phi) == 2:
        return Field(0, (), cyclotomic=n if n == 2 else None)
    step = ExtensionStep(
        symbol=f"zeta{n}",
        minpoly=tuple((Fraction(c),) for c in phi),
        degree=len(phi) - 1,
        certification="cyclotomic",
    )
    return Field(0, (step,), cyclotomic=n)


def make_finite_field(p: int, k: int = 1, symbol: str = "g") -> Field:
    """F_{p^k} presented by the first primitive polynomial of degree k over F_p."""
    F = make_prime_field(p)
    if k == 1:
        return F
    m = conway_like_polynomial(p, k)
    step = ExtensionStep(symbol, tuple((c,) for c in m), k, certification="factorization")
    return Field(p, (step,))


def extend(F: Field, minpoly, symbol: str, assert_irreducible: bool = False) -> Field:
    """Adjoin a root of ``minpoly`` (a monic :class:`~socle_lab.upoly.UPoly` over F or coefficient list).

    Irreducibility is certified when the toolkit can (finite fields: full
    factorization; degree <= 3: root search; Q: rational roots, Eisenstein,
    a modular degree sieve).  Otherwise ``assert_irreducible=True`` accepts the
    polynomial and records the assertion; without it
    :class:`UncertifiedIrreducibility` is raised.
    """
    from .upoly import UPoly, certify_irreducible

    f = minpoly if isinstance(minpoly, UPoly) else UPoly(F, [F(c) for c in minpoly])
    if f.field != F:
        raise ParentMismatch("minimal polynomial lives over a different field")
    if f.degree < 2:
        raise ValueError("minimal polynomial must have degree >= 2")
    if not f.lc.is_one():
        raise ValueError("minimal polynomial must be monic")
    if symbol in F.symbols:
        raise ValueError(f"symbol {symbol!r} already used in the tower")
    verdict, detail = certify_irreducible(f)
    if verdict is False:
        raise Reducible(f"{f} is reducible over {F.text()}: {detail}", factor=detail)
    if verdict is None:
        if not assert_irreducible:
            raise UncertifiedIrreducibility(f"cannot certify irreducibility of {f} over {F.text()}")
        method = "asserted"
    else:
        method = detail
    step = ExtensionStep(symbol, tuple(c.coords for c in f.coeffs), f.degree, certification=method)
    return Field(F.characteristic, F.steps + (step,), cyclotomic=F.cyclotomic)


def field_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "sub":
        return x - y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def span_closure(A: Field, gens: Sequence[FieldElement]) -> tuple[int, list[FieldElement]]:
    """Dimension and basis of the unital subalgebra of A generated by ``gens``.

    The linear span of 1 is closed under multiplication by the generators
    until it stabilizes.  Inside a field this is the degree of the generated
    subfield over the prime field (or Q).
    """
    gens = [A(g) for g in gens]
    ech = _Echelon(A.characteristic)
    basis = [A.one]
    ech.add(A.one.coords)
    queue = [A.one]
    while queue:
        v = queue.pop(0)
        for g in gens:
            w = v * g
            if ech.add(w.coords):
                basis.append(w)
                queue.append(w)
    return len(basis), basis


def minimal_polynomial(x: FieldElement) -> list:
    """Monic minimal polynomial of x over the prime field / Q (coefficients low first)."""
    F = x.parent
    p = F.characteristic
    powers = [F.one]
    ech = _Echelon(p)
    ech.add(F.one.coords)
    while True:
        nxt = powers[-1] * x
        if ech.add(nxt.coords):
            powers.append(nxt)
            continue
        n = len(powers)
        mat = [[powers[j].coords[i] for j in range(n)] for i in range(F.degree)]
        sel = _independent_rows(mat, p, n)
        sol = solve_linear([mat[i] for i in sel], [nxt.coords[i] for i in sel], p)
        return [(-c) % p if p else -c for c in sol] + [F._scalar(1)]


def _independent_rows(mat, p, n):
    ech = _Echelon(p)
    sel = []
    for i, row in enumerate(mat):
        if ech.add(row):
            sel.append(i)
            if len(sel) == n:
                break
    return sel
