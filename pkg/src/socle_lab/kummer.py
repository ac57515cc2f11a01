"""Independence of classes in F*/(F*)^p and F/wp(F) for rational function fields.

Ranks are certified by valuations at polynomial primes: an element's class
is read off its valuation vector mod p, and, over finite or cyclotomic
constant fields, the class of its leading coefficient.  For Artin-Schreier
classes the solver for ``alpha^p - alpha = b`` is complete because the poles
of alpha are confined to those of b (with orders divided by p).

Column primes are square-free, pairwise coprime blocks obtained by gcd
refinement.  When a block cannot be certified irreducible it is still a
valid column: all its prime factors carry the same valuation vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    MissingRootOfUnity,
    NotCertified,
    NotIrreducible,
    PoleAtSubstitution,
    UnsupportedBase,
    UnsupportedShape,
    WrongCharacteristic,
)
from .fields import Field, FieldElement
from .funcfields import (
    FunctionField,
    MultiPoly,
    RatFunc,
    certify_prime,
    coprime_squarefree_base,
    factor_univariate,
    multiplicity,
    poly_gcd_multi,
    split_pure_parts,
    substitute,
)
from .linalg import left_kernel_mod_p, nullspace_mod_p, rank_mod_p, rref, solve_mod_p, span_basis

ENUMERATION_CAP = 3**6

CERTIFIED = "certified-independent"
DEPENDENT = "dependence-witness"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# records


@dataclass
class Relation:
    """A verified relation: the nu-combination equals phi*psi*alpha^p (Kummer)
    or phi + psi + alpha^p - alpha (Artin-Schreier), phi in C(T), psi in C(U)."""

    nu: tuple[int, ...]
    alpha: RatFunc
    phi: RatFunc
    psi: RatFunc

    def to_dict(self) -> dict:
        return {"nu": list(self.nu), "alpha": str(self.alpha), "phi": str(self.phi), "psi": str(self.psi)}


@dataclass
class ClassSystem:
    kind: str  # "kummer" or "artin-schreier"
    p: int
    field: FunctionField
    elements: tuple[RatFunc, ...]
    primes: tuple[MultiPoly, ...]
    prime_certification: tuple[str, ...]
    valuation_matrix: tuple[tuple[int, ...], ...]
    rank: int
    status: str
    relative: bool = False
    constant_columns: tuple[tuple[int, ...], ...] = ()
    constants_exact: bool = True
    relations: list[Relation] = field(default_factory=list)
    rank_bounds: tuple[int, int] = (0, 0)
    certificate: dict = field(default_factory=dict)

    @property
    def witness(self) -> Relation | None:
        return self.relations[0] if self.relations else None

    def combination(self, nu: Sequence[int]) -> RatFunc:
        R = self.field
        if self.kind == "kummer":
            out = R.one
            for a, k in zip(self.elements, nu):
                if k:
                    out = out * a**k
            return out
        out = R.zero
        for a, k in zip(self.elements, nu):
            if k:
                out = out + a * k
        return out

    def verify_relation(self, rel: Relation) -> bool:
        if not any(k % self.p for k in rel.nu):
            return False
        if not (_is_pure(rel.phi, "T") and _is_pure(rel.psi, "U")):
            return False
        x = self.combination(rel.nu)
        p = self.p
        if self.kind == "kummer":
            if not self.relative and not (rel.phi.is_constant() and rel.psi.is_constant()):
                return False
            return x == rel.phi * rel.psi * rel.alpha**p
        if not self.relative and not (rel.phi.is_zero() and rel.psi.is_zero()):
            return False
        return x == rel.phi + rel.psi + rel.alpha**p - rel.alpha

    def recheck(self) -> bool:
        """Recompute the valuation matrix and rank from scratch and re-verify witnesses."""
        mat = tuple(
            tuple(_valuation(e, q) for q in self.primes) for e in self.elements
        )
        if mat != self.valuation_matrix:
            return False
        if not all(self.verify_relation(r) for r in self.relations):
            return False
        n = len(self.elements)
        if self.kind == "kummer":
            full = _hstack(self.valuation_matrix, self.constant_columns, n)
            r = rank_mod_p(full, self.p) if n else 0
            if self.status == CERTIFIED:
                return r == n and self.rank == n
            if self.status == DEPENDENT:
                return r == self.rank and len(span_basis([x.nu for x in self.relations], self.p)) == n - r
            return r <= self.rank_bounds[1]
        if self.status == DEPENDENT:
            return len(span_basis([x.nu for x in self.relations], self.p)) == n - self.rank
        if self.status == CERTIFIED and not self.relative and n and self.p**n <= ENUMERATION_CAP:
            return as_rank(self.elements, strategy="enumerate").rank == n
        if self.status == CERTIFIED and self.relative:
            return as_relative_rank(self.elements).rank == n
        return True

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "field": self.field.text(),
            "relative": self.relative,
            "elements": [str(e) for e in self.elements],
            "primes": [str(q) for q in self.primes],
            "prime_certification": list(self.prime_certification),
            "valuation_matrix": [list(r) for r in self.valuation_matrix],
            "constant_columns": [list(r) for r in self.constant_columns],
            "rank": self.rank,
            "rank_bounds": list(self.rank_bounds),
            "status": self.status,
            "relations": [r.to_dict() for r in self.relations],
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class ExtensionDescriptor:
    base: FunctionField
    kind: str
    p: int
    generators: tuple[tuple[RatFunc, str], ...]
    group_rank: int
    galois_action: tuple[tuple[int, ...], ...]

    def describe_action(self, i: int, j: int) -> str:
        k = self.galois_action[i][j]
        if self.kind == "kummer":
            return f"root{j + 1} -> eps^{k}*root{j + 1}" if k else f"root{j + 1} fixed"
        return f"root{j + 1} -> root{j + 1}+{k}" if k else f"root{j + 1} fixed"

    def to_dict(self) -> dict:
        return {
            "base": self.base.text(),
            "kind": self.kind,
            "p": self.p,
            "generators": [[str(a), poly] for a, poly in self.generators],
            "group": f"C_{self.p}^{self.group_rank}",
            "galois_action": [list(r) for r in self.galois_action],
        }


# ---------------------------------------------------------------------------
# helpers


def _is_pure(f: RatFunc, side: str) -> bool:
    allowed = {"constant", "pure-T"} if side == "T" else {"constant", "pure-U"}
    return f.num.kind() in allowed and f.den.kind() in allowed


def _valuation(f: RatFunc, q: MultiPoly) -> int:
    return multiplicity(q, f.num) - multiplicity(q, f.den)


def _hstack(a, b, n):
    a = np.array(a, dtype=np.int64).reshape(n, -1)
    b = np.array(b, dtype=np.int64).reshape(n, -1)
    return np.concatenate([a, b], axis=1)


def _prime_columns(elems: Sequence[RatFunc], polys: Iterable[MultiPoly] | None = None):
    """Certified primes (or square-free coprime blocks) supporting the elements."""
    pieces = []
    source = polys if polys is not None else [x for e in elems for x in (e.num, e.den)]
    for poly in source:
        if poly.is_constant():
            continue
        pieces.extend(q for q in split_pure_parts(poly) if not q.is_constant())
    blocks = coprime_squarefree_base(pieces)
    primes: list[MultiPoly] = []
    how: list[str] = []
    for B in blocks:
        if len(B.support_vars()) == 1 and B.field.base.is_finite:
            _, facs = factor_univariate(B)
            for g, _ in facs:
                primes.append(g)
                how.append(certify_prime(g))
            continue
        try:
            how.append(certify_prime(B))
        except NotIrreducible:
            how.append("squarefree-block")
        primes.append(B)
    return primes, how


def _monomial_product(R: FunctionField, primes, exps) -> RatFunc:
    num = R.const_poly(1)
    den = R.const_poly(1)
    for q, e in zip(primes, exps):
        if e > 0:
            num = num * q**e
        elif e < 0:
            den = den * q ** (-e)
    return RatFunc(num, den, _reduced=True)


def _check_kummer(R: FunctionField, p: int):
    F = R.base
    if F.characteristic == p:
        raise WrongCharacteristic(f"Kummer classes need characteristic different from {p}")
    if not F.has_root_of_unity(p):
        raise MissingRootOfUnity(f"{F.text()} does not contain a primitive {p}-th root of unity")


def _check_as(R: FunctionField, p: int | None):
    F = R.base
    if not F.characteristic:
        raise WrongCharacteristic("Artin-Schreier classes need positive characteristic")
    if p is not None and p != F.characteristic:
        raise WrongCharacteristic(f"p = {p} differs from the characteristic {F.characteristic}")
    return F.characteristic


def _field_of(elems) -> FunctionField:
    for e in elems:
        if isinstance(e, RatFunc):
            return e.field
        if isinstance(e, MultiPoly):
            return e.field
    raise ValueError("cannot infer the function field from an empty list; pass field=")


# ---------------------------------------------------------------------------
# constant classes in K*/(K*)^p


def _int_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _rational_class(c: Fraction, p: int) -> dict:
    """Coordinates of a nonzero rational in Q*/(Q*)^p."""
    out = {}
    if p == 2 and c < 0:
        out["sign"] = 1
    for prime, e in _int_factor(abs(c.numerator)).items():
        if e % p:
            out[prime] = e % p
    for prime, e in _int_factor(c.denominator).items():
        if (-e) % p:
            out[prime] = (-e) % p
    return out


def _int_root(n: int, p: int) -> int | None:
    r = round(abs(n) ** (1.0 / p))
    for s in (r - 1, r, r + 1):
        if s >= 0 and s**p == abs(n):
            if n < 0:
                return -s if p % 2 else None
            return s
    return None


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def field_norm(c: FieldElement) -> Fraction:
    """Norm to Q of an element of a number field tower."""
    F = c.parent
    return _det(F._mul_matrix(c.coords))


class _Constants:
    """Classes of base-field constants modulo p-th powers."""

    def __init__(self, F: Field, p: int):
        self.F = F
        self.p = p
        self.N = F.roots_of_unity_order()
        self._powers = None

    def _root_of_unity_exponent(self, c: FieldElement) -> int | None:
        if self.N is None or (c ** self.N) != self.F.one:
            return None
        if self._powers is None:
            z = self.F.root_of_unity(self.N)
            self._powers = {}
            x = self.F.one
            for k in range(self.N):
                self._powers[x.coords] = k
                x = x * z
        return self._powers.get(c.coords)

    def columns(self, consts: Sequence[FieldElement]) -> tuple[list[list[int]], bool, str]:
        """Rows of constant-class coordinates, whether they are exact, and the method."""
        F, p = self.F, self.p
        if F.is_finite:
            return [[F.discrete_log(c) % p] for c in consts], True, "discrete-log"
        if not F.steps:
            return self._rational_rows([c.scalar() for c in consts]), True, "rational-classes"
        exps = [self._root_of_unity_exponent(c) for c in consts]
        if all(e is not None for e in exps):
            # mu_K is cyclic of order N and p | N, so K*^p meets it in mu_K^p
            return [[e % p] for e in exps], True, "roots-of-unity"
        return self._rational_rows([field_norm(c) for c in consts]), False, "norm-classes"

    def _rational_rows(self, values: Sequence[Fraction]) -> list[list[int]]:
        classes = [_rational_class(Fraction(v), self.p) for v in values]
        keys = sorted({k for c in classes for k in c}, key=str)
        return [[c.get(k, 0) for k in keys] for c in classes]

    def pth_root(self, c: FieldElement) -> FieldElement | None:
        F, p = self.F, self.p
        if F.is_finite:
            k = F.discrete_log(c)
            if k % p:
                return None
            return F.primitive_element ** (k // p)
        if c.is_rational_scalar():
            v = Fraction(c.scalar())
            a, b = _int_root(v.numerator, p), _int_root(v.denominator, p)
            if a is not None and b is not None:
                return F(Fraction(a, b))
        e = self._root_of_unity_exponent(c)
        if e is not None and e % p == 0:
            return self.F.root_of_unity(self.N) ** (e // p)
        return None


# ---------------------------------------------------------------------------
# Kummer ranks


def _kummer_relation(R, p, consts: _Constants, elems, primes, mat, const_of, nu, relative) -> Relation | None:
    nu = tuple(int(k) % p for k in nu)
    exps = [sum(nu[i] * mat[i][j] for i in range(len(elems))) for j in range(len(primes))]
    c = R.base.one
    for ci, k in zip(const_of, nu):
        if k:
            c = c * ci**k
    phi_e, psi_e, alpha_e = [0] * len(primes), [0] * len(primes), [0] * len(primes)
    for j, q in enumerate(primes):
        kind = q.kind()
        if relative and kind == "pure-T":
            phi_e[j] = exps[j]
        elif relative and kind == "pure-U":
            psi_e[j] = exps[j]
        else:
            if exps[j] % p:
                return None
            alpha_e[j] = exps[j] // p
    if relative:
        phi = _monomial_product(R, primes, phi_e) * c
        root = R.base.one
    else:
        root = consts.pth_root(c)
        if root is None:
            return None
        phi = R.one
    psi = _monomial_product(R, primes, psi_e)
    alpha = _monomial_product(R, primes, alpha_e) * root
    return Relation(nu, alpha, phi, psi)


def _prepare(elems, field, nonzero=True):
    R = field or _field_of(elems)
    out = [R(e) for e in elems]
    if nonzero and any(e.is_zero() for e in out):
        raise ValueError("zero has no Kummer class")
    return R, out


def kummer_rank(elems: Sequence, p: int, field: FunctionField | None = None) -> ClassSystem:
    """Rank of the classes of ``elems`` in F*/(F*)^p."""
    R, elems = _prepare(elems, field)
    _check_kummer(R, p)
    n = len(elems)
    primes, how = _prime_columns(elems)
    mat = tuple(tuple(_valuation(e, q) for q in primes) for e in elems)
    consts = _Constants(R.base, p)
    const_of = [e.num.lc for e in elems]
    crow, exact, method = consts.columns(const_of)
    full = _hstack(mat, crow, n) if n else np.zeros((0, 0), dtype=np.int64)
    r = rank_mod_p(full, p) if n else 0
    relations: list[Relation] = []
    status = CERTIFIED
    bounds = (r, r)
    if r < n:
        kernel = left_kernel_mod_p(full, p)
        for nu in kernel:
            rel = _kummer_relation(R, p, consts, elems, primes, mat, const_of, nu, False)
            if rel is not None:
                relations.append(rel)
        verified = len(span_basis([x.nu for x in relations], p)) if relations else 0
        if verified == n - r:
            status = DEPENDENT
        else:
            status = INCONCLUSIVE
            bounds = (r, n - verified)
    sys = ClassSystem(
        kind="kummer",
        p=p,
        field=R,
        elements=tuple(elems),
        primes=tuple(primes),
        prime_certification=tuple(how),
        valuation_matrix=mat,
        rank=r,
        status=status,
        constant_columns=tuple(tuple(row) for row in crow),
        constants_exact=exact,
        relations=relations,
        rank_bounds=bounds,
        certificate={"rank_mod_p": r, "columns": len(primes), "constants": method},
    )
    return sys


def kummer_relative_rank(elems: Sequence, p: int, field: FunctionField | None = None) -> ClassSystem:
    """Rank modulo C(T)* C(U)* (F*)^p, read off the valuations at mixed primes."""
    R, elems = _prepare(elems, field)
    _check_kummer(R, p)
    if not (R.t_vars and R.u_vars):
        raise UnsupportedShape("relative ranks need T-variables and U-variables")
    n = len(elems)
    primes, how = _prime_columns(elems)
    full_mat = [[_valuation(e, q) for q in primes] for e in elems]
    mixed = [j for j, q in enumerate(primes) if q.kind() == "mixed"]
    mat = tuple(tuple(row[j] for j in mixed) for row in full_mat)
    r = rank_mod_p(np.array(mat, dtype=np.int64).reshape(n, len(mixed)), p) if n and mixed else 0
    relations = []
    if r < n:
        kernel = left_kernel_mod_p(np.array(mat, dtype=np.int64).reshape(n, len(mixed)), p)
        consts = _Constants(R.base, p)
        const_of = [e.num.lc for e in elems]
        for nu in kernel:
            rel = _kummer_relation(R, p, consts, elems, primes, full_mat, const_of, nu, True)
            assert rel is not None, "mixed exponents divisible by p must give a relation"
            relations.append(rel)
    return ClassSystem(
        kind="kummer",
        p=p,
        field=R,
        elements=tuple(elems),
        primes=tuple(primes[j] for j in mixed),
        prime_certification=tuple(how[j] for j in mixed),
        valuation_matrix=mat,
        rank=r,
        status=CERTIFIED if r == n else DEPENDENT,
        relative=True,
        relations=relations,
        rank_bounds=(r, r),
        certificate={"rank_mod_p": r, "columns": len(mixed), "prime_kind": "mixed"},
    )


@dataclass
class MembershipVerdict:
    verdict: str  # member | non-member | inconclusive
    nu: tuple[int, ...] | None = None
    alpha: RatFunc | None = None
    witness_prime: MultiPoly | None = None
    witness_functional: dict | None = None

    def __bool__(self):
        return self.verdict == "member"


def pth_root_membership(b, A: Sequence, p: int, field: FunctionField | None = None) -> MembershipVerdict:
    """Decide whether b lies in the subgroup generated by A and (F*)^p."""
    R, all_elems = _prepare([b, *A], field)
    _check_kummer(R, p)
    b, A = all_elems[0], all_elems[1:]
    n = len(A)
    primes, _ = _prime_columns(all_elems)
    consts = _Constants(R.base, p)
    vals = [[_valuation(e, q) for q in primes] for e in all_elems]
    crow, exact, _ = consts.columns([e.num.lc for e in all_elems])
    rows = [v + c for v, c in zip(vals, crow)]
    m = len(rows[0])
    target = np.array(rows[0], dtype=np.int64) % p
    M = np.array(rows[1:], dtype=np.int64).reshape(n, m) % p
    # a single column that A cannot reach
    for j in range(m):
        if target[j] and not M[:, j].any():
            if j < len(primes):
                return MembershipVerdict("non-member", witness_prime=primes[j])
            return MembershipVerdict("non-member", witness_functional={"constant_column": j - len(primes)})
    if n:
        nu, y = solve_mod_p(M.T, target, p)
    else:
        nu, y = (np.zeros(0, dtype=np.int64), None) if not target.any() else (None, target.copy())
    if nu is None:
        y = [int(v) for v in y]
        support = [j for j in range(m) if y[j]]
        named = {str(primes[j]) if j < len(primes) else f"constant[{j - len(primes)}]": y[j] for j in support}
        return MembershipVerdict("non-member", witness_functional=named)
    nu = tuple(int(k) for k in nu)
    rest = b
    for a, k in zip(A, nu):
        if k:
            rest = rest / a**k
    exps = [_valuation(rest, q) for q in primes]
    root = consts.pth_root(rest.num.lc)
    if root is None or any(e % p for e in exps):
        return MembershipVerdict("inconclusive", nu=nu)
    alpha = _monomial_product(R, primes, [e // p for e in exps]) * root
    prod = alpha**p
    for a, k in zip(A, nu):
        if k:
            prod = prod * a**k
    if prod != b:
        return MembershipVerdict("inconclusive", nu=nu)
    return MembershipVerdict("member", nu=nu, alpha=alpha)


# ---------------------------------------------------------------------------
# Artin-Schreier: the solver for alpha^p - alpha = b


@dataclass(frozen=True)
class WpSolution:
    alpha: RatFunc

    solved = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class LinearObstruction:
    """A functional y with y*A = 0 and y*rhs != 0 for the coefficient system of the ansatz alpha = P/E."""

    E: MultiPoly
    bounds: tuple[int, ...]
    y: tuple[int, ...]


@dataclass(frozen=True)
class NoSolution:
    reason: str  # pole-order | inconsistent-system
    prime: MultiPoly | None = None
    order: int | None = None
    certification: str | None = None
    obstruction: LinearObstruction | None = None

    solved = False

    def __bool__(self):
        return False

    def recheck(self, b: RatFunc) -> bool:
        """Re-verify the obstruction against b from scratch."""
        R = b.field
        p = R.characteristic
        if self.reason == "pole-order":
            q = self.prime
            if self.order % p == 0 or q.is_constant():
                return False
            derivs = [q.derivative(i) for i in range(R.nvars)]
            if all(d.is_zero() for d in derivs):
                return False
            # square-free iff q is coprime to all its partial derivatives jointly
            g = q
            for d in derivs:
                if not d.is_zero():
                    g = poly_gcd_multi(g, d)
            if not g.is_one():
                return False
            # q square-free, q^order || den: some prime factor of q has pole order exactly `order`
            return multiplicity(q, b.den) == self.order and poly_gcd_multi(q, b.num).is_one()
        ob = self.obstruction
        if ob.E ** p != b.den:
            return False
        A, rhs, _ = _wp_system(R, ob.E, b.num, ob.bounds)
        y = np.array(ob.y, dtype=np.int64)
        if y.shape[0] != A.shape[0]:
            return False
        return not ((y @ A) % p).any() and int(y @ rhs) % p != 0


def _box(bounds):
    return list(itertools.product(*(range(d + 1) for d in bounds)))


def _coord_system(columns: list[MultiPoly], rhs: MultiPoly | None, k: int):
    mons = set()
    for P in columns:
        mons.update(P.terms)
    if rhs is not None:
        mons.update(rhs.terms)
    mons = sorted(mons, key=lambda e: (sum(e), e))
    idx = {e: i for i, e in enumerate(mons)}
    A = np.zeros((len(mons) * k, len(columns)), dtype=np.int64)
    for j, P in enumerate(columns):
        for e, c in P.terms.items():
            A[idx[e] * k : idx[e] * k + k, j] = c.coords
    b = np.zeros(len(mons) * k, dtype=np.int64)
    if rhs is not None:
        for e, c in rhs.terms.items():
            b[idx[e] * k : idx[e] * k + k] = c.coords
    return A, b


def _wp_columns(R: FunctionField, E: MultiPoly, bounds, multiplier: MultiPoly | None = None):
    """Images of the F_p-basis vectors beta_j*x^m of P under P -> P^p - P*E^(p-1)."""
    F = R.base
    p = F.characteristic
    basis = F.basis()
    frob = [b**p for b in basis]
    Ep = E ** (p - 1)
    unknowns = []
    cols = []
    for m in _box(bounds):
        pm = tuple(p * x for x in m)
        for j, beta in enumerate(basis):
            shifted = MultiPoly(R, {tuple(a + b for a, b in zip(m, e)): c * beta for e, c in Ep.terms.items()})
            col = MultiPoly(R, {pm: frob[j]}) - shifted
            if multiplier is not None:
                col = col * multiplier
            cols.append(col)
            unknowns.append((m, j))
    return cols, unknowns


def _assemble(R: FunctionField, unknowns, values) -> MultiPoly:
    basis = R.base.basis()
    terms: dict = {}
    for (m, j), v in zip(unknowns, values):
        v = int(v)
        if v:
            terms[m] = terms.get(m, R.base.zero) + basis[j] * v
    return MultiPoly(R, terms)


def _wp_system(R, E, N, bounds):
    cols, unknowns = _wp_columns(R, E, bounds)
    A, b = _coord_system(cols, N, R.base.degree)
    return A, b, unknowns


def _pole_obstruction(b: RatFunc) -> NoSolution | None:
    p = b.field.characteristic
    Dn = b.den
    for B in coprime_squarefree_base([Dn]):
        m = multiplicity(B, Dn)
        if m % p:
            prime, how = B, "squarefree-block"
            if len(B.support_vars()) == 1:
                _, facs = factor_univariate(B)
                prime = facs[0][0]
                how = certify_prime(prime)
            else:
                try:
                    how = certify_prime(B)
                except NotIrreducible:
                    pass
            return NoSolution("pole-order", prime=prime, order=m, certification=how)
    return None


def wp_solve(b: RatFunc) -> WpSolution | NoSolution:
    """Solve alpha^p - alpha = b over a finite constant field, or explain why not."""
    R = b.field
    F = R.base
    if not F.characteristic:
        raise WrongCharacteristic("wp_solve needs positive characteristic")
    if not F.is_finite:
        raise UnsupportedBase("wp_solve needs a finite constant field")
    p = F.characteristic
    if b.is_zero():
        return WpSolution(R.zero)
    Dn, N = b.den, b.num
    if not all(Dn.derivative(i).is_zero() for i in range(R.nvars)):
        ob = _pole_obstruction(b)
        assert ob is not None
        return ob
    E = Dn.frobenius_root()
    # deg_x P > deg_x E forces deg_x N = p*deg_x P
    bounds = tuple(max(E.degree_in(i), N.degree_in(i) // p, 0) for i in range(R.nvars))
    A, rhs, unknowns = _wp_system(R, E, N, bounds)
    x, y = solve_mod_p(A, rhs, p)
    if x is None:
        return NoSolution(
            "inconsistent-system",
            obstruction=LinearObstruction(E, bounds, tuple(int(v) for v in y)),
        )
    alpha = RatFunc(_assemble(R, unknowns, x), E)
    if alpha**p - alpha != b:
        raise AssertionError("wp_solve produced an unverified preimage")
    return WpSolution(alpha)


def wp(alpha: RatFunc) -> RatFunc:
    """The Artin-Schreier map alpha -> alpha^p - alpha."""
    return alpha ** alpha.field.characteristic - alpha


# ---------------------------------------------------------------------------
# Artin-Schreier ranks


def _as_valuation_data(elems):
    dens = [e.den for e in elems if not e.is_zero()]
    primes, how = _prime_columns(elems, dens)
    mat = tuple(tuple(_valuation(e, q) if not e.is_zero() else 0 for q in primes) for e in elems)
    return primes, how, mat


def as_rank(
    elems: Sequence, p: int | None = None, field: FunctionField | None = None, strategy: str = "echelon"
) -> ClassSystem:
    """Exact rank of the classes of ``elems`` in F/wp(F) over a finite constant field.

    ``echelon`` solves one joint F_p-linear system in the exponents nu and the
    numerator of alpha; ``enumerate`` runs :func:`wp_solve` on every nonzero
    combination (at most 3^6 of them).
    """
    R, elems = _prepare(elems, field, nonzero=False)
    p = _check_as(R, p)
    if not R.base.is_finite:
        raise UnsupportedBase("as_rank needs a finite constant field")
    n = len(elems)
    primes, how, mat = _as_valuation_data(elems)
    if strategy == "enumerate":
        rels, info = _as_enumerate(R, p, elems)
    elif strategy == "echelon":
        rels, info = _as_joint_system(R, p, elems)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    r = n - len(rels)
    return ClassSystem(
        kind="artin-schreier",
        p=p,
        field=R,
        elements=tuple(elems),
        primes=tuple(primes),
        prime_certification=tuple(how),
        valuation_matrix=mat,
        rank=r,
        status=CERTIFIED if r == n else DEPENDENT,
        relations=rels,
        rank_bounds=(r, r),
        certificate={"strategy": strategy, **info},
    )


def _combination(R, elems, nu):
    out = R.zero
    for a, k in zip(elems, nu):
        if k:
            out = out + a * int(k)
    return out


def _as_enumerate(R, p, elems):
    n = len(elems)
    if p**n > ENUMERATION_CAP:
        raise UnsupportedShape(f"{p}^{n} combinations exceed the enumeration cap {ENUMERATION_CAP}")
    solved = {}
    for nu in itertools.product(range(p), repeat=n):
        if not any(nu):
            continue
        res = wp_solve(_combination(R, elems, nu))
        if res:
            solved[nu] = res.alpha
    basis = span_basis(list(solved), p) if solved else []
    zero = R.zero
    rels = [Relation(tuple(int(k) for k in nu), solved[tuple(int(k) for k in nu)], zero, zero) for nu in basis]
    return rels, {"combinations": p**n - 1, "solvable": len(solved)}


def _as_joint_system(R, p, elems):
    n = len(elems)
    zero = R.zero
    if n == 0:
        return [], {"unknowns": 0, "equations": 0}
    nonzero = [e for e in elems if not e.is_zero()]
    blocks = coprime_squarefree_base([e.den for e in nonzero])
    D = R.const_poly(1)
    E = R.const_poly(1)
    for B in blocks:
        m = max(multiplicity(B, e.den) for e in nonzero)
        D = D * B**m
        E = E * B ** (-(-m // p))
    Ep = E**p
    numer = [e.num * D.exact_div(e.den) for e in elems]
    bounds = []
    for i in range(R.nvars):
        top = max(x.degree_in(i) for x in numer) + p * E.degree_in(i) - D.degree_in(i)
        bounds.append(max(E.degree_in(i), top // p, 0))
    cols = [-(x * Ep) for x in numer]
    pcols, unknowns = _wp_columns(R, E, bounds, multiplier=D)
    A, _ = _coord_system(cols + pcols, None, R.base.degree)
    K = nullspace_mod_p(A, p)
    rels = []
    if K.shape[0]:
        Rk, pivots = rref(K, p)
        for i, pc in enumerate(pivots):
            if pc >= n:
                break
            nu = tuple(int(v) for v in Rk[i, :n])
            alpha = RatFunc(_assemble(R, unknowns, Rk[i, n:]), E)
            if alpha**p - alpha != _combination(R, elems, nu):
                raise AssertionError("joint system produced an unverified relation")
            rels.append(Relation(nu, alpha, zero, zero))
    return rels, {"unknowns": A.shape[1], "equations": A.shape[0], "ansatz_denominator": str(E)}


def as_relative_rank(
    elems: Sequence, p: int | None = None, field: FunctionField | None = None, strict: bool = False
) -> ClassSystem:
    """Rank of the classes modulo C(T) + C(U) + wp(F).

    At every mixed prime q, pure parts have no pole and wp(alpha) has pole
    order divisible by p.  A combination is therefore excluded as soon as its
    pole order at q is not a multiple of p; the linear conditions
    "pole order at q <= largest multiple of p below the maximum" cut out a
    subspace U containing every relation; the cut is repeated inside U until
    it no longer shrinks.  When U = 0 the classes are
    independent; otherwise relations inside U are searched for and verified.
    """
    R, elems = _prepare(elems, field, nonzero=False)
    p = _check_as(R, p)
    if not (R.t_vars and R.u_vars):
        raise UnsupportedShape("relative ranks need T-variables and U-variables")
    n = len(elems)
    nonzero = [e for e in elems if not e.is_zero()]
    primes, how = _prime_columns(elems, [e.den for e in nonzero])
    mixed = [j for j, q in enumerate(primes) if q.kind() == "mixed"]
    mprimes = [primes[j] for j in mixed]
    mat = tuple(tuple(_valuation(e, q) if not e.is_zero() else 0 for q in mprimes) for e in elems)
    k = R.base.degree
    U = np.eye(n, dtype=np.int64)
    orders = []
    # each cut keeps the combinations whose pole order at q can still be a
    # multiple of p; it removes a basis vector, so the loop terminates
    changed = True
    while changed and U.shape[0]:
        changed = False
        for q in mprimes:
            span = [_combination(R, elems, row) for row in U]
            e = [max(0, -_valuation(a, q)) if not a.is_zero() else 0 for a in span]
            M = max(e)
            m0 = (M // p) * p
            if m0 == M:
                continue
            orders.append((q, M, m0))
            C = nullspace_mod_p(_pole_condition(R, span, e, q, M, m0, k), p)
            U = (C @ U) % p
            changed = True
            if not U.shape[0]:
                break
    dimU = U.shape[0] if n else 0
    rels: list[Relation] = []
    if dimU:
        rels = _relative_relations(R, p, elems, U)
    verified = len(span_basis([r.nu for r in rels], p)) if rels else 0
    if dimU == 0:
        status, r, bounds = CERTIFIED, n, (n, n)
    elif verified == dimU:
        status, r, bounds = DEPENDENT, n - dimU, (n - dimU, n - dimU)
    else:
        if strict:
            raise UnsupportedShape("no valuation obstruction or verified relation decides the rank")
        status, r, bounds = INCONCLUSIVE, n - dimU, (n - dimU, n - verified)
    return ClassSystem(
        kind="artin-schreier",
        p=p,
        field=R,
        elements=tuple(elems),
        primes=tuple(mprimes),
        prime_certification=tuple(how[j] for j in mixed),
        valuation_matrix=mat,
        rank=r,
        status=status,
        relative=True,
        relations=rels,
        rank_bounds=bounds,
        certificate={
            "pole_orders": [[str(q), M, m0] for q, M, m0 in orders],
            "candidate_dimension": dimU,
        },
    )


def _pole_condition(R, elems, e, q, M, m0, k):
    """Coefficient matrix of: pole order of sum nu_i elems_i at q is at most m0."""
    # pole order <= m0 at q  <=>  q^(M - m0) divides sum nu_i Z_i
    Z = []
    for a, ei in zip(elems, e):
        if a.is_zero():
            Z.append(R.const_poly(0))
            continue
        Z.append((a.num * q ** (M - ei), a.den.exact_div(q**ei)))
    L = R.const_poly(1)
    for z in Z:
        if isinstance(z, tuple):
            L = (L * z[1]).exact_div(poly_gcd_multi(L, z[1]))
    modulus = q ** (M - m0)
    rems = []
    for z in Z:
        if isinstance(z, tuple):
            rems.append((z[0] * L.exact_div(z[1])).divmod(modulus)[1])
        else:
            rems.append(z)
    return _coord_system(rems, None, k)[0]


def _base_points(F: Field, count: int):
    pts = [F(0), F(1)]
    if F.is_finite:
        for x in F.elements():
            if x not in pts:
                pts.append(x)
            if len(pts) >= count:
                break
    else:
        pts += [F(i) for i in range(2, count)]
    return pts[:count]


def _relative_relations(R, p, elems, U) -> list[Relation]:
    dimU = U.shape[0]
    if p**dimU <= ENUMERATION_CAP:
        candidates = []
        for coeffs in itertools.product(range(p), repeat=dimU):
            if any(coeffs):
                candidates.append(tuple(int(v) for v in (np.array(coeffs) @ U) % p))
    else:
        candidates = [tuple(int(v) for v in row) for row in U]
    rels = []
    found = []
    for nu in candidates:
        if found and len(span_basis(found + [nu], p)) == len(span_basis(found, p)):
            continue
        rel = _split_relation(R, p, _combination(R, elems, nu), nu)
        if rel is not None:
            rels.append(rel)
            found.append(nu)
    return rels


def _split_relation(R, p, X, nu) -> Relation | None:
    """Find phi in C(T), psi in C(U), alpha with X = phi + psi + wp(alpha)."""
    zero = R.zero
    if X.is_zero():
        return Relation(tuple(nu), zero, zero, zero)
    pts = _base_points(R.base, 6)
    tried = 0
    for t0 in pts:
        for u0 in pts:
            tb = {v: t0 for v in R.t_vars}
            ub = {v: u0 for v in R.u_vars}
            try:
                xt = substitute(X, ub)  # X(T, u0)
                xu = substitute(X, tb)  # X(t0, U)
                x0 = substitute(xt, tb)
            except PoleAtSubstitution:
                continue
            phi = xt - x0
            psi = xu
            Z = X - phi - psi
            res = wp_solve(Z)
            if res:
                return Relation(tuple(nu), res.alpha, phi, psi)
            tried += 1
            if tried >= 4:
                return None
    return None


# ---------------------------------------------------------------------------
# extensions


def build_cpn_extension(sys: ClassSystem) -> ExtensionDescriptor:
    """The C_p^n-extension obtained by adjoining one root per independent class."""
    if sys.status != CERTIFIED:
        raise NotCertified(f"system status is {sys.status}, not {CERTIFIED}")
    n = len(sys.elements)
    if sys.kind == "kummer":
        gens = tuple((a, f"X^{sys.p} - ({a})") for a in sys.elements)
    else:
        gens = tuple((a, f"X^{sys.p} - X - ({a})") for a in sys.elements)
    action = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return ExtensionDescriptor(sys.field, sys.kind, sys.p, gens, n, action)
