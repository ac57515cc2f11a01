"""Finite extensions inside an explicit tower: linear disjointness, p-socles from
Galois data, Vandermonde coordinates and leading-coefficient certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidAutomorphism, InvalidRelation, SingularSystem
from .fields import Field, FieldElement, span_closure
from .groups import FiniteGroup, Subgroup, relative_frattini
from .upoly import UPoly


# ---------------------------------------------------------------------------
# automorphisms of a tower


def _monomial_exponents(F: Field, idx: int) -> list[int]:
    """Exponent of each tower generator in basis monomial number ``idx``."""
    exps = []
    for k in range(len(F.steps), 0, -1):
        e, idx = divmod(idx, F._dims[k - 1])
        exps.append(e)
    return exps[::-1]


class Automorphism:
    """A base-fixing field automorphism given by images of the tower generators."""

    def __init__(self, F: Field, images: Sequence[FieldElement], verify: bool = True):
        if len(images) != len(F.steps):
            raise InvalidAutomorphism("one image per tower generator is required")
        self.field = F
        self.images = tuple(F(x) for x in images)
        self._basis_images = [self._monomial_image(i) for i in range(F.degree)]
        if verify:
            self._verify()

    def _monomial_image(self, idx: int) -> FieldElement:
        out = self.field.one
        for img, e in zip(self.images, _monomial_exponents(self.field, idx)):
            if e:
                out = out * img**e
        return out

    def _verify(self):
        # sigma(b x) = sigma(b) sigma(x) for basis b and generators x gives
        # multiplicativity on all monomials, hence everywhere by linearity
        F = self.field
        for i, b in enumerate(F.basis()):
            for x, img in zip(F.gens().values(), self.images):
                if self(b * x) != self._basis_images[i] * img:
                    raise InvalidAutomorphism(f"not multiplicative on basis element {i} times {x}")
        # injective on a field, hence bijective; check the images span anyway
        if len(_independent(F, self._basis_images)) != F.degree:
            raise InvalidAutomorphism("images do not span the field")

    def __call__(self, x: FieldElement) -> FieldElement:
        F = self.field
        x = F(x)
        out = F.zero
        for c, img in zip(x.coords, self._basis_images):
            if c:
                out = out + img * c
        return out

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        return Automorphism(self.field, [self(y) for y in other.images], verify=False)

    def key(self) -> tuple:
        return tuple(x.coords for x in self.images)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _independent(F: Field, vecs: Sequence[FieldElement]) -> list[int]:
    from .fields import _Echelon

    ech = _Echelon(F.characteristic)
    return [i for i, v in enumerate(vecs) if ech.add(list(v.coords))]


@dataclass
class GaloisData:
    """The full automorphism group of the ambient tower over its prime field, with
    element i of ``group`` acting as ``maps[i]`` and i*j acting as maps[i] after maps[j]."""

    group: FiniteGroup
    maps: list[Automorphism]

    @classmethod
    def from_automorphisms(cls, maps: Sequence[Automorphism], name: str = "Gal") -> "GaloisData":
        maps = list(maps)
        ident = [m for m in maps if all(m(g) == g for g in m.field.gens().values())]
        if len(ident) != 1:
            raise InvalidAutomorphism("the identity must occur exactly once")
        maps.remove(ident[0])
        maps.insert(0, ident[0])
        index = {m.key(): i for i, m in enumerate(maps)}
        if len(index) != len(maps):
            raise InvalidAutomorphism("repeated automorphism")
        n = len(maps)
        table = [[0] * n for _ in range(n)]
        for i, a in enumerate(maps):
            for j, b in enumerate(maps):
                k = index.get(a.compose(b).key())
                if k is None:
                    raise InvalidAutomorphism("the maps are not closed under composition")
                table[i][j] = k
        return cls(FiniteGroup(table, name), maps)

    def fixing(self, gens: Sequence[FieldElement]) -> Subgroup:
        """Subgroup of elements fixing every generator."""
        G = self.group
        return G.subgroup(i for i, m in enumerate(self.maps) if all(m(x) == x for x in gens))

    def fixed_space(self, S: Subgroup) -> list[FieldElement]:
        """Basis over the prime field of the fixed field of S."""
        F = self.maps[0].field
        rows = []
        for g in S.generators:
            m = self.maps[g]
            # columns: (sigma - 1) applied to the basis
            cols = [(m(b) - b).coords for b in F.basis()]
            rows.extend([[cols[j][i] for j in range(F.degree)] for i in range(F.degree)])
        return [F.from_coords(v) for v in _nullspace(rows, F.degree, F.characteristic)]


def _nullspace(rows: list[list], ncols: int, p: int) -> list[list]:
    """Right kernel over Q (p = 0) or F_p, exact."""
    M = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p) if p else 1 / Fraction(M[r][c])
        M[r] = [(x * inv) % p if p else x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [((x - f * y) % p if p else x - f * y) for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv_cols]
    out = []
    zero = 0 if p else Fraction(0)
    for f in free:
        v = [zero] * ncols
        v[f] = 1 if p else Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = (-M[i][f]) % p if p else -M[i][f]
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# linear disjointness


@dataclass
class ExtensionInstance:
    """Two subfields L1 = F(sub1_gens), L2 = F(sub2_gens) of an ambient tower over its prime field."""

    ambient: Field
    sub1_gens: list[FieldElement]
    sub2_gens: list[FieldElement]
    galois: GaloisData | None = None
    labels: tuple[str, str] = ("L1", "L2")


@dataclass(frozen=True)
class DisjointnessResult:
    dim1: int
    dim2: int
    dim_compositum: int
    linearly_disjoint: bool
    galois_cross_check: bool | None = None

    def as_tuple(self):
        return (self.dim1, self.dim2, self.dim_compositum, self.linearly_disjoint)


def disjointness_check(inst: ExtensionInstance) -> DisjointnessResult:
    """Compare dim L1L2 with dim L1 * dim L2; cross-check with G = H1 H2 when Galois data is given."""
    A = inst.ambient
    d1, _ = span_closure(A, inst.sub1_gens)
    d2, _ = span_closure(A, inst.sub2_gens)
    d12, _ = span_closure(A, list(inst.sub1_gens) + list(inst.sub2_gens))
    disjoint = d12 == d1 * d2
    cross = None
    if inst.galois is not None:
        gd = inst.galois
        if gd.group.order != A.degree:
            raise InvalidAutomorphism("Galois data must have order equal to the ambient degree")
        H1, H2 = gd.fixing(inst.sub1_gens), gd.fixing(inst.sub2_gens)
        product_is_group = H1.product_set(H2) == gd.group.whole.bits
        if gd.group.order // H1.order != d1 or gd.group.order // H2.order != d2:
            raise InvalidAutomorphism("fixing subgroups do not match the subfield degrees")
        cross = product_is_group == disjoint
        if not cross:
            raise AssertionError("dimension and Galois criteria disagree")
    return DisjointnessResult(d1, d2, d12, disjoint, cross)


# ---------------------------------------------------------------------------
# socles from Galois data


def socle_subgroup(G: FiniteGroup, H: Subgroup, p: int) -> Subgroup:
    """Phi^p(G, H); its fixed field is the p-socle of the fixed field of H."""
    return relative_frattini(G, H, p)


def socle_rank(G: FiniteGroup, H: Subgroup, p: int) -> int:
    """n with [fixed field of Phi^p(G,H) : base] = p^n."""
    idx = G.order // socle_subgroup(G, H, p).order
    n = round(math.log(idx, p)) if idx > 1 else 0
    if p**n != idx:
        raise AssertionError("relative Frattini index is not a power of p")
    return n


# ---------------------------------------------------------------------------
# Vandermonde coordinates


def _solve_field(M: list[list[FieldElement]], rhs: list[FieldElement]) -> list[FieldElement]:
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            raise SingularSystem("singular Vandermonde system")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def vandermonde_coordinates(images: Sequence[FieldElement], conjugates: Sequence[FieldElement]) -> list[FieldElement]:
    """Solve images[i] = sum_k l_k * conjugates[i]^k exactly."""
    n = len(conjugates)
    if len(images) != n:
        raise SingularSystem("need one image per conjugate")
    if len({c.coords for c in conjugates}) != n:
        raise SingularSystem("conjugates must be pairwise distinct")
    F = conjugates[0].parent
    M = [[th**k for k in range(n)] for th in conjugates]
    ell = _solve_field(M, [F(x) for x in images])
    for i, th in enumerate(conjugates):
        if sum((ell[k] * th**k for k in range(n)), F.zero) != F(images[i]):
            raise AssertionError("Vandermonde residual is not zero")
    return ell


# ---------------------------------------------------------------------------
# leading-coefficient certificates


@dataclass(frozen=True)
class LeadingCertificate:
    alpha: FieldElement
    coefficients: tuple[FieldElement, ...]  # a_0..a_n with sum a_i alpha^i = 0
    preprocessed: bool
    top_degree: int

    def evaluate(self) -> FieldElement:
        out = self.alpha.parent.zero
        for a in reversed(self.coefficients):
            out = out * self.alpha + a
        return out


def _as_upoly(L: Field, f) -> UPoly:
    if isinstance(f, UPoly):
        return UPoly(L, [L(c) for c in f.coeffs])
    return UPoly(L, [L(c) for c in f])


def _relation_value(phi: UPoly, rel: list[UPoly]) -> UPoly:
    out = UPoly(phi.field, [])
    for f in reversed(rel):
        out = out * phi + f
    return out


def leading_coeff_certificate(phi, relation: Sequence) -> LeadingCertificate:
    """An algebraic relation over the coefficient field for the leading coefficient of phi.

    ``phi`` is a polynomial in t with coefficients in L (low to high) and
    ``relation`` lists f_0..f_n in F[t] (coerced into L[t]) with
    sum f_i phi^i = 0.  The relation's top-degree part gives the certificate.
    """
    L = phi.field if isinstance(phi, UPoly) else phi[0].parent
    phi = _as_upoly(L, phi)
    rel = [_as_upoly(L, f) for f in relation]
    while rel and rel[-1].is_zero():
        rel.pop()
    if len(rel) < 2:
        raise InvalidRelation("the relation must involve phi with a nonzero top coefficient f_n")
    if phi.is_zero():
        raise InvalidRelation("phi must be nonzero")
    if not _relation_value(phi, rel).is_zero():
        raise InvalidRelation("sum f_i phi^i does not vanish")
    n = len(rel) - 1
    fn = rel[-1]
    scale = L.one
    pre = False
    if fn.degree > 0:
        # psi = f_n phi satisfies a monic relation: sum f_i f_n^(n-1-i) psi^i = 0
        pre = True
        rel = [rel[i] * fn ** (n - 1 - i) for i in range(n)] + [UPoly(L, [L.one])]
        scale = fn.lc
        phi = phi * fn
        if not _relation_value(phi, rel).is_zero():
            raise AssertionError("integrality preprocessing broke the relation")
    d = phi.degree
    degs = [f.degree + i * d if not f.is_zero() else -1 for i, f in enumerate(rel)]
    N = max(degs)
    coeffs = [rel[i].lc if degs[i] == N else L.zero for i in range(len(rel))]
    alpha = phi.lc
    if pre:
        # certificate for lc(f_n) * alpha, rewritten for alpha itself
        coeffs = [c * scale**i for i, c in enumerate(coeffs)]
        alpha = alpha * scale.inverse()
    cert = LeadingCertificate(alpha, tuple(coeffs), pre, N)
    if not cert.evaluate().is_zero() or all(c.is_zero() for c in coeffs):
        raise AssertionError("leading-coefficient certificate failed")
    return cert


def peel_leading_terms(phi, relation: Sequence) -> list[LeadingCertificate]:
    """Certify every coefficient of phi, top first, by subtracting certified leading terms.

    After alpha t^d is removed, phi - alpha t^d satisfies the shifted relation
    sum f_i (X + alpha t^d)^i, whose coefficients lie in F(alpha)[t].
    """
    L = phi.field if isinstance(phi, UPoly) else phi[0].parent
    phi = _as_upoly(L, phi)
    rel = [_as_upoly(L, f) for f in relation]
    out = []
    while not phi.is_zero():
        cert = leading_coeff_certificate(phi, rel)
        out.append(cert)
        term = UPoly(L, [L.zero] * phi.degree + [phi.lc])
        # coefficients of sum_i f_i (X + term)^i as a polynomial in X
        n = len(rel) - 1
        new = [UPoly(L, []) for _ in range(n + 1)]
        for i, f in enumerate(rel):
            for j in range(i + 1):
                new[j] = new[j] + f * term ** (i - j) * math.comb(i, j)
        rel = new
        phi = phi - term
    return out
