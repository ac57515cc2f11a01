"""Sparse multivariate polynomials and rational functions over an exact base field.

The variables of a :class:`FunctionField` are split into T-variables and
U-variables.  Exponent vectors list the T-variables first; the term order is
graded lexicographic in that variable order, and denominators of rational
functions are kept monic for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    NotIrreducible,
    ParentMismatch,
    PoleAtSubstitution,
    UnsupportedBase,
    WrongCharacteristic,
    ZeroDenominator,
)
from .fields import Field, FieldElement
from .upoly import UPoly, certify_irreducible, factor_finite, poly_gcd, squarefree_decomposition


class FunctionField:
    """FunctionFieldDescriptor: base field and the T/U partition of the variables."""

    def __init__(self, base: Field, t_vars: Sequence[str] = (), u_vars: Sequence[str] = ()):
        t_vars, u_vars = tuple(t_vars), tuple(u_vars)
        names = t_vars + u_vars
        if not names:
            raise ValueError("a function field needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        clash = set(names) & set(base.symbols)
        if clash:
            raise ValueError(f"variables {sorted(clash)} clash with field generators")
        self.base = base
        self.t_vars = t_vars
        self.u_vars = u_vars
        self.vars = names
        self.nvars = len(names)
        self._zero_exp = (0,) * self.nvars
        self._t_idx = tuple(range(len(t_vars)))
        self._u_idx = tuple(range(len(t_vars), self.nvars))

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and self.base == other.base
            and self.t_vars == other.t_vars
            and self.u_vars == other.u_vars
        )

    def __hash__(self):
        return hash((self.base, self.t_vars, self.u_vars))

    def __repr__(self):
        return f"FunctionField({self.text()})"

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def text(self) -> str:
        part = " ".join([f"{v}:T" for v in self.t_vars] + [f"{v}:U" for v in self.u_vars])
        return f"{self.base.text()}({','.join(self.vars)} | {part})"

    def index(self, var: str) -> int:
        return self.vars.index(var)

    # constructors
    def poly(self, terms: Mapping[tuple, object] | None = None) -> "MultiPoly":
        return MultiPoly(self, {e: self.base(c) for e, c in (terms or {}).items()})

    def const_poly(self, c) -> "MultiPoly":
        c = self.base(c)
        return MultiPoly(self, {self._zero_exp: c} if not c.is_zero() else {})

    def var_poly(self, name: str) -> "MultiPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): self.base.one})

    def var(self, name: str) -> "RatFunc":
        return RatFunc.from_poly(self.var_poly(name))

    def const(self, c) -> "RatFunc":
        return RatFunc.from_poly(self.const_poly(c))

    def __call__(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field != self:
                raise ParentMismatch("rational function from another field")
            return x
        if isinstance(x, MultiPoly):
            return RatFunc.from_poly(x)
        if isinstance(x, str):
            return self.var(x)
        return self.const(x)

    @property
    def zero(self) -> "RatFunc":
        return self.const(0)

    @property
    def one(self) -> "RatFunc":
        return self.const(1)


def _key(e):
    return (sum(e), e)


class MultiPoly:
    """Sparse polynomial: mapping exponent vector -> nonzero base-field coefficient."""

    __slots__ = ("field", "terms", "_lt", "_hash")

    def __init__(self, field: FunctionField, terms: Mapping[tuple, FieldElement]):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self._lt = None
        self._hash = None

    # -- basic queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.field._zero_exp in self.terms)

    def constant_value(self) -> FieldElement:
        return self.terms.get(self.field._zero_exp, self.field.base.zero)

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value().is_one()

    @property
    def leading_exp(self) -> tuple:
        if self._lt is None:
            self._lt = max(self.terms, key=_key)
        return self._lt

    @property
    def lc(self) -> FieldElement:
        return self.terms[self.leading_exp] if self.terms else self.field.base.zero

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int | str) -> int:
        if isinstance(i, str):
            i = self.field.index(i)
        return max((e[i] for e in self.terms), default=-1)

    def support_vars(self) -> tuple[int, ...]:
        n = self.field.nvars
        return tuple(i for i in range(n) if any(e[i] for e in self.terms))

    def kind(self) -> str:
        """'constant', 'pure-T', 'pure-U' or 'mixed' by the variables that occur."""
        vs = set(self.support_vars())
        has_t = bool(vs & set(self.field._t_idx))
        has_u = bool(vs & set(self.field._u_idx))
        if has_t and has_u:
            return "mixed"
        if has_t:
            return "pure-T"
        if has_u:
            return "pure-U"
        return "constant"

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == self.field.const_poly(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted((e, c.coords) for e, c in self.terms.items())))
        return self._hash

    # -- ring operations -----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise ParentMismatch("polynomials from different rings")
            return other
        return self.field.const_poly(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
        return MultiPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                out[e] = out[e] - c
            else:
                out[e] = -c
        return MultiPoly(self.field, out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, int):
            c = self.field.base(other)
            return MultiPoly(self.field, {e: a * c for e, a in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return MultiPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.field.const_poly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        inv = self.lc.inverse()
        return MultiPoly(self.field, {e: c * inv for e, c in self.terms.items()})

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly(self.field, out)

    def frobenius_root(self) -> "MultiPoly":
        """p-th root of a polynomial all of whose exponents are multiples of p (finite base)."""
        p = self.field.characteristic
        out = {}
        for e, c in self.terms.items():
            if any(x % p for x in e):
                raise ValueError("not a p-th power")
            out[tuple(x // p for x in e)] = c.frobenius_inverse()
        return MultiPoly(self.field, out)

    def divmod(self, b: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division by one polynomial; the remainder is the normal form modulo (b)."""
        if b.is_zero():
            raise ZeroDenominator("division by the zero polynomial")
        lb = b.leading_exp
        inv = b.lc.inverse()
        r = dict(self.terms)
        q: dict[tuple, FieldElement] = {}
        rem: dict[tuple, FieldElement] = {}
        bterms = list(b.terms.items())
        while r:
            e = max(r, key=_key)
            c = r.pop(e)
            if all(x >= y for x, y in zip(e, lb)):
                s = tuple(x - y for x, y in zip(e, lb))
                f = c * inv
                q[s] = f
                for eb, cb in bterms:
                    if eb == lb:
                        continue
                    t = tuple(x + y for x, y in zip(s, eb))
                    v = r.get(t)
                    nv = -(f * cb) if v is None else v - f * cb
                    if nv.is_zero():
                        r.pop(t, None)
                    else:
                        r[t] = nv
            else:
                rem[e] = c
        return MultiPoly(self.field, q), MultiPoly(self.field, rem)

    def exact_div(self, b: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(b)
        if not r.is_zero():
            raise ArithmeticError("inexact multivariate division")
        return q

    def divides(self, a: "MultiPoly") -> bool:
        return a.divmod(self)[1].is_zero()

    # -- views -----------------------------------------------------------------
    def coefficients_in(self, i: int) -> dict[int, "MultiPoly"]:
        """Coefficients with respect to variable i (as polynomials not involving it)."""
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            f = list(e)
            k = f[i]
            f[i] = 0
            groups.setdefault(k, {})[tuple(f)] = c
        return {k: MultiPoly(self.field, t) for k, t in groups.items()}

    def coefficients_in_group(self, idx: Sequence[int]) -> list["MultiPoly"]:
        """Coefficients when viewed as a polynomial in the variables ``idx``."""
        groups: dict[tuple, dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            f = list(e)
            for i in idx:
                f[i] = 0
            groups.setdefault(key, {})[tuple(f)] = c
        return [MultiPoly(self.field, groups[k]) for k in sorted(groups)]

    def to_upoly(self, i: int) -> UPoly:
        if any(j != i for j in self.support_vars()):
            raise ValueError("polynomial is not univariate in the requested variable")
        d = self.degree_in(i)
        coeffs = [self.field.base.zero] * (d + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UPoly(self.field.base, coeffs)

    @classmethod
    def from_upoly(cls, field: FunctionField, f: UPoly, i: int) -> "MultiPoly":
        terms = {}
        for k, c in enumerate(f.coeffs):
            e = [0] * field.nvars
            e[i] = k
            terms[tuple(e)] = c
        return cls(field, terms)

    def evaluate(self, values: Mapping[int, object]):
        """Substitute ring elements (supporting + and *) for some variables."""
        raise NotImplementedError  # substitution lives in :func:`substitute`

    def sorted_terms(self) -> list[tuple[tuple, FieldElement]]:
        return sorted(self.terms.items(), key=lambda kv: _key(kv[0]), reverse=True)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.field.vars
        out = ""
        for e, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            cs = str(c)
            if not c.is_rational_scalar():
                cs = f"({cs})"
            if mono:
                if cs == "1":
                    t = mono
                elif cs == "-1":
                    t = "-" + mono
                else:
                    t = f"{cs}*{mono}"
            else:
                t = cs
            if out and not t.startswith("-"):
                out += "+"
            out += t
        return out


# ---------------------------------------------------------------------------
# gcd


def _univariate_var(a: MultiPoly, b: MultiPoly):
    vs = set(a.support_vars()) | set(b.support_vars())
    return vs.pop() if len(vs) == 1 else None


def _prem(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    db = b.degree_in(i)
    cb = b.coefficients_in(i)
    lb = cb[db]
    while not a.is_zero() and a.degree_in(i) >= db:
        da = a.degree_in(i)
        la = a.coefficients_in(i)[da]
        e = [0] * a.field.nvars
        e[i] = da - db
        shift = MultiPoly(a.field, {tuple(e): a.field.base.one})
        a = a * lb - la * shift * b
    return a


def content_in(a: MultiPoly, i: int) -> MultiPoly:
    g = None
    for c in a.coefficients_in(i).values():
        g = c.monic() if g is None else poly_gcd_multi(g, c)
        if g.is_one():
            break
    return g if g is not None else a


def poly_gcd_multi(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic gcd by recursive content / primitive-part pseudo-remainder sequences."""
    R = a.field
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return R.const_poly(1)
    v = _univariate_var(a, b)
    if v is not None:
        g = poly_gcd(a.to_upoly(v), b.to_upoly(v))
        return MultiPoly.from_upoly(R, g, v)
    i = max(set(a.support_vars()) | set(b.support_vars()))
    if a.degree_in(i) <= 0:
        return poly_gcd_multi(a, content_in(b, i))
    if b.degree_in(i) <= 0:
        return poly_gcd_multi(content_in(a, i), b)
    ca, cb = content_in(a, i), content_in(b, i)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    gc = poly_gcd_multi(ca, cb)
    if pa.degree_in(i) < pb.degree_in(i):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, i)
        if r.is_zero():
            break
        if r.degree_in(i) <= 0:
            return gc
        r = r.exact_div(content_in(r, i))
        pa, pb = pb, r
    g = pb.exact_div(content_in(pb, i))
    return (gc * g).monic()


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Reduced fraction with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den: MultiPoly, _reduced: bool = False):
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = num.field.const_poly(1)
            else:
                g = poly_gcd_multi(num, den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.lc
                if not lc.is_one():
                    inv = lc.inverse()
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p, p.field.const_poly(1), _reduced=True)

    @property
    def field(self) -> FunctionField:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise ParentMismatch("rational functions from different fields")
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        return self.field.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * other.den + other.num, other.den, _reduced=True)
        if other.den.is_one():
            return RatFunc(self.num + other.num * self.den, self.den, _reduced=True)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return self.field.zero
        g1 = poly_gcd_multi(self.num, other.den) if not other.den.is_one() else None
        g2 = poly_gcd_multi(other.num, self.den) if not self.den.is_one() else None
        n1, d2 = (self.num, other.den) if g1 is None or g1.is_one() else (self.num.exact_div(g1), other.den.exact_div(g1))
        n2, d1 = (other.num, self.den) if g2 is None or g2.is_one() else (other.num.exact_div(g2), self.den.exact_div(g2))
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num * inv, den * inv
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        inv = self.num.lc.inverse()
        return RatFunc(self.den * inv, self.num * inv, _reduced=True)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _reduced=True)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1 or "*" in d or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def serialize(self) -> dict:
        """Canonical ordered sparse term lists of numerator and denominator."""

        def terms(p):
            return [[list(e), str(c)] for e, c in p.sorted_terms()]

        return {"num": terms(self.num), "den": terms(self.den)}


def normalize(num: MultiPoly, den: MultiPoly) -> RatFunc:
    """Reduced canonical fraction num/den."""
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# primes and valuations


@dataclass(frozen=True)
class ValuationResult:
    prime: MultiPoly
    value: int | float  # float('inf') for the zero function
    prime_kind: str
    certification: str


def multiplicity(q: MultiPoly, a: MultiPoly) -> int:
    """Largest m with q**m dividing a (a nonzero, q nonconstant)."""
    m = 0
    while True:
        quo, rem = a.divmod(q)
        if not rem.is_zero():
            return m
        a = quo
        m += 1


def certify_prime(q: MultiPoly, assume_irreducible: bool = False) -> str:
    """How ``q`` is known to be irreducible; raises NotIrreducible otherwise."""
    if q.is_constant():
        raise NotIrreducible("constants are units, not primes")
    if q.total_degree == 1:
        return "linear"
    vs = q.support_vars()
    for i in vs:
        # degree one in a variable and primitive there
        if q.degree_in(i) == 1 and content_in(q, i).is_one():
            return f"linear-in-{q.field.vars[i]}"
    if len(vs) == 1:
        f = q.to_upoly(vs[0])
        ok, how = certify_irreducible(f.monic())
        if ok is True:
            return f"univariate:{how}"
        if ok is False:
            raise NotIrreducible(f"{q} is reducible: {how}")
    if assume_irreducible:
        return "asserted"
    raise NotIrreducible(f"cannot certify that {q} is irreducible")


def valuation(f: RatFunc, q: MultiPoly, assume_irreducible: bool = False) -> ValuationResult:
    """q-adic valuation of f: multiplicity in the numerator minus that in the denominator."""
    how = certify_prime(q, assume_irreducible)
    q = q.monic()
    if f.is_zero():
        value: int | float = float("inf")
    else:
        value = multiplicity(q, f.num) - multiplicity(q, f.den)
    return ValuationResult(q, value, q.kind(), how)


def factor_univariate(f: MultiPoly) -> tuple[FieldElement, list[tuple[MultiPoly, int]]]:
    """Factor a polynomial in one variable over a finite base into monic irreducibles."""
    R = f.field
    if not R.base.is_finite:
        raise UnsupportedBase("complete factorization needs a finite base; use squarefree_univariate")
    if f.is_zero():
        raise ValueError("cannot factor zero")
    vs = f.support_vars()
    if not vs:
        return f.constant_value(), []
    if len(vs) != 1:
        raise ValueError("polynomial is not univariate")
    i = vs[0]
    lc, facs = factor_finite(f.to_upoly(i))
    return lc, [(MultiPoly.from_upoly(R, g, i), m) for g, m in facs]


def squarefree_univariate(f: MultiPoly) -> list[tuple[MultiPoly, int]]:
    vs = f.support_vars()
    if len(vs) != 1:
        raise ValueError("polynomial is not univariate")
    i = vs[0]
    return [(MultiPoly.from_upoly(f.field, g, i), m) for g, m in squarefree_decomposition(f.to_upoly(i))]


def split_pure_parts(a: MultiPoly) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """a = (pure-T part) * (pure-U part) * rest, where every prime factor of rest is mixed.

    A prime of k[T] divides a exactly when it divides every coefficient of a
    seen as a polynomial in the U-variables, so the pure-T part is that
    content; symmetrically for U.
    """
    R = a.field
    one = R.const_poly(1)
    if not R.u_vars or not R.t_vars:
        return (a.monic(), one, one) if R.t_vars else (one, a.monic(), one)
    ct = None
    for c in a.coefficients_in_group(R._u_idx):
        ct = c.monic() if ct is None else poly_gcd_multi(ct, c)
        if ct.is_one():
            break
    rest = a.exact_div(ct)
    cu = None
    for c in rest.coefficients_in_group(R._t_idx):
        cu = c.monic() if cu is None else poly_gcd_multi(cu, c)
        if cu.is_one():
            break
    rest = rest.exact_div(cu)
    return ct, cu, rest.monic()


def _squarefree_split(b: MultiPoly) -> list[MultiPoly] | None:
    """Proper factors exposing non-squarefreeness, or None if b is squarefree."""
    vs = b.support_vars()
    derivs = [b.derivative(i) for i in vs]
    if all(d.is_zero() for d in derivs):
        return [b.frobenius_root()]  # p-th power
    g = b
    for d in derivs:
        if not d.is_zero():
            g = poly_gcd_multi(g, d)
            if g.is_one():
                return None
    return [g, b.exact_div(g).monic()]


def coprime_squarefree_base(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Pairwise coprime, squarefree monic polynomials generating every input multiplicatively."""
    work = []
    for p in polys:
        if not p.is_zero() and not p.is_constant():
            m = p.monic()
            if m not in work:
                work.append(m)
    changed = True
    while changed:
        changed = False
        for idx, b in enumerate(work):
            parts = _squarefree_split(b)
            if parts is not None:
                work.pop(idx)
                for q in parts:
                    if not q.is_constant() and q not in work:
                        work.append(q.monic())
                changed = True
                break
        if changed:
            continue
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                g = poly_gcd_multi(work[i], work[j])
                if not g.is_one():
                    a, b = work[i], work[j]
                    new = [a.exact_div(g).monic(), g, b.exact_div(g).monic()]
                    work = [w for k, w in enumerate(work) if k not in (i, j)]
                    for q in new:
                        if not q.is_constant() and q not in work:
                            work.append(q)
                    changed = True
                    break
            if changed:
                break
    return sorted(work, key=lambda p: (p.total_degree, [(_key(e), c.coords) for e, c in p.sorted_terms()]))


# ---------------------------------------------------------------------------
# substitution and characteristic-p identities


def substitute(f: RatFunc, bindings: Mapping[str, object]) -> RatFunc:
    """Replace variables by rational functions (or constants) of the same field."""
    R = f.field
    vals = {}
    for name, v in bindings.items():
        i = R.index(name)
        vals[i] = v if isinstance(v, RatFunc) else R(v)

    def subst_poly(p: MultiPoly) -> RatFunc:
        acc = R.zero
        cache: dict[tuple[int, int], RatFunc] = {}
        for e, c in p.terms.items():
            rest = list(e)
            term = R.one
            for i, v in vals.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in cache:
                        cache[key] = v ** e[i]
                    term = term * cache[key]
                    rest[i] = 0
            mono = RatFunc.from_poly(MultiPoly(R, {tuple(rest): c}))
            acc = acc + term * mono
        return acc

    num = subst_poly(f.num)
    den = subst_poly(f.den)
    if den.is_zero():
        raise PoleAtSubstitution(f"denominator {f.den} vanishes under the substitution")
    return num / den


@dataclass(frozen=True)
class FreshmanWitness:
    holds: bool
    lhs: RatFunc
    rhs: RatFunc
    instance_holds: bool | None = None

    def __bool__(self):
        return self.holds and self.instance_holds is not False


def freshman_check(x: RatFunc, y: RatFunc, instance: Mapping[str, RatFunc] | None = None) -> FreshmanWitness:
    """Check (x - y)^p == x^p - y^p exactly, p the characteristic.

    With ``instance = {"a": a, "s": s, "t": t}`` it also checks that
    g = a*s^p + t satisfies (g - t)/s^p == a, the p-th power form of
    ((g^(1/p) - t^(1/p))/s)^p == a.
    """
    p = x.field.characteristic
    if p == 0:
        raise WrongCharacteristic("the freshman identity needs positive characteristic")
    lhs = (x - y) ** p
    rhs = x**p - y**p
    inst = None
    if instance is not None:
        a, s, t = instance["a"], instance["s"], instance["t"]
        g = a * s**p + t
        inst = (g - t) / s**p == a
    return FreshmanWitness(lhs == rhs, lhs, rhs, inst)
