"""Finite groups by Cayley table; p-Frattini subgroups and the socle-compositum equation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import NotAGroup, NotASubgroup, OrderBoundExceeded

DEFAULT_ORDER_BOUND = 64


def _bits(members: Iterable[int]) -> int:
    b = 0
    for m in members:
        b |= 1 << int(m)
    return b


def _members(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


class FiniteGroup:
    """A group on elements 0..n-1 with identity 0, given by its multiplication table."""

    def __init__(self, table, name: str = "", verify: bool = True):
        T = np.asarray(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise NotAGroup("the table must be a nonempty square array")
        n = T.shape[0]
        if T.min() < 0 or T.max() >= n:
            raise NotAGroup("table entries out of range")
        e = _find_identity(T)
        if e != 0:
            # relabel so that the identity is element 0
            perm = np.arange(n)
            perm[[0, e]] = [e, 0]
            T = perm[T[np.ix_(perm, perm)]]
        self.table = T
        self.order = n
        self.name = name or f"G{n}"
        if verify:
            self._verify()
        self.inv = np.array([int(np.nonzero(T[x] == 0)[0][0]) for x in range(n)], dtype=np.int64)

    def _verify(self):
        T, n = self.table, self.order
        rng = np.arange(n)
        if not (T[0] == rng).all() or not (T[:, 0] == rng).all():
            raise NotAGroup("no two-sided identity", witness=(0,))
        for x in range(n):
            if len(np.unique(T[x])) != n:
                raise NotAGroup(f"row {x} is not a permutation (no inverse)", witness=(x,))
            if len(np.unique(T[:, x])) != n:
                raise NotAGroup(f"column {x} is not a permutation (no inverse)", witness=(x,))
        if n <= DEFAULT_ORDER_BOUND:
            left = T[T, :]  # [a,b,c] -> (ab)c
            right = T[:, T]  # [a,b,c] -> a(bc)
            bad = np.argwhere(left != right)
        else:
            rs = np.random.default_rng(0)
            a, b, c = (rs.integers(0, n, 4096) for _ in range(3))
            mism = T[T[a, b], c] != T[a, T[b, c]]
            bad = np.stack([a[mism], b[mism], c[mism]], axis=1)
        if len(bad):
            a, b, c = (int(v) for v in bad[0])
            raise NotAGroup(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=(a, b, c))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out, base = 0, x
        while k:
            if k & 1:
                out = int(self.table[out, base])
            base = int(self.table[base, base])
            k >>= 1
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y:
            y = int(self.table[y, x])
            k += 1
        return k

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(x) for x in range(self.order))

    def power_map(self, k: int) -> np.ndarray:
        idx = np.arange(self.order)
        out = np.zeros(self.order, dtype=np.int64)
        base = idx.copy()
        while k:
            if k & 1:
                out = self.table[out, base]
            base = self.table[base, base]
            k >>= 1
        return out

    def commutators(self) -> np.ndarray:
        """All [x, y] = x^-1 y^-1 x y."""
        T, inv = self.table, self.inv
        a = T[np.ix_(inv, inv)]
        return np.unique(T[a.ravel(), T.ravel()])

    def generate(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, _generate(self, gens))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens = []
        bits = 1
        for x in range(1, self.order):
            if not bits >> x & 1:
                gens.append(x)
                bits = _generate(self, gens)
        return tuple(gens)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        """Validate an explicit member set."""
        bits = _bits(members)
        if not bits & 1:
            raise NotASubgroup("a subgroup contains the identity")
        mem = np.array(_members(bits))
        if mem.max() >= self.order:
            raise NotASubgroup("member out of range")
        prods = np.unique(self.table[np.ix_(mem, mem)])
        if _bits(prods) != bits:
            raise NotASubgroup("not closed under multiplication")
        return Subgroup(self, bits)

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def center(self) -> "Subgroup":
        T = self.table
        return Subgroup(self, _bits(x for x in range(self.order) if (T[x] == T[:, x]).all()))

    @cached_property
    def derived_subgroup(self) -> "Subgroup":
        return self.generate(self.commutators())

    def conjugacy_class_count(self) -> int:
        seen = 0
        count = 0
        T, inv = self.table, self.inv
        for x in range(self.order):
            if seen >> x & 1:
                continue
            cls = T[T[:, x], inv]  # g x g^-1 for every g
            seen |= _bits(cls)
            count += 1
        return count


def _find_identity(T: np.ndarray) -> int:
    n = T.shape[0]
    rng = np.arange(n)
    for e in range(n):
        if (T[e] == rng).all() and (T[:, e] == rng).all():
            return e
    raise NotAGroup("no identity element")


def _generate(G: FiniteGroup, gens: Iterable[int]) -> int:
    gens = sorted({int(g) for g in gens if int(g) != 0})
    bits = 1
    frontier = [0]
    T = G.table
    while frontier:
        new = []
        for x in frontier:
            row = T[x]
            for g in gens:
                y = int(row[g])
                if not bits >> y & 1:
                    bits |= 1 << y
                    new.append(y)
        frontier = new
    return bits


class Subgroup:
    """A subgroup stored as a bitset of element indices."""

    __slots__ = ("parent", "bits", "__dict__")

    def __init__(self, parent: FiniteGroup, bits: int):
        self.parent = parent
        self.bits = bits

    @cached_property
    def members(self) -> tuple[int, ...]:
        return _members(self.bits)

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    def __len__(self):
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __le__(self, other: "Subgroup") -> bool:
        return self.bits & ~other.bits == 0

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.bits & other.bits)

    def sort_key(self):
        return (self.order, self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    def product_set(self, other: "Subgroup") -> int:
        T = self.parent.table
        return _bits(np.unique(T[np.ix_(np.array(self.members), np.array(other.members))]))

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.parent.generate(self.generators + other.generators)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens = []
        bits = 1
        for x in self.members[1:]:
            if not bits >> x & 1:
                gens.append(x)
                bits = _generate(self.parent, gens)
        return tuple(gens)

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        mem = np.array(self.members)
        return Subgroup(G, _bits(G.table[G.table[g, mem], G.inv[g]]))

    def is_normal(self) -> bool:
        return all(self.conjugate(g) == self for g in self.parent.generators)

    def index(self) -> int:
        return self.parent.order // self.order


def _check_subgroup(G: FiniteGroup, H: Subgroup | Iterable[int]) -> Subgroup:
    if isinstance(H, Subgroup):
        if H.parent is not G:
            raise NotASubgroup("subgroup of a different group")
        return H
    return G.subgroup(H)


# ---------------------------------------------------------------------------
# subgroup lattice


def subgroups(G: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> list[Subgroup]:
    """All subgroups, ordered by (order, sorted members)."""
    if G.order > bound:
        raise OrderBoundExceeded(f"order {G.order} exceeds the enumeration bound {bound}")
    cache = G.__dict__.setdefault("_subgroups", None)
    if cache is not None:
        return list(cache)
    cyclic = {}
    for x in range(G.order):
        b = _generate(G, [x])
        cyclic.setdefault(b, x)
    found = set(cyclic)
    frontier = list(found)
    cyc_items = sorted(cyclic.items())
    while frontier:
        new = []
        for b in frontier:
            S = Subgroup(G, b)
            for cb, x in cyc_items:
                if cb & ~b == 0:
                    continue
                j = _generate(G, S.generators + (x,))
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    subs = sorted((Subgroup(G, b) for b in found), key=Subgroup.sort_key)
    G.__dict__["_subgroups"] = subs
    return list(subs)


def normal_subgroups(G: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> list[Subgroup]:
    return [S for S in subgroups(G, bound) if S.is_normal()]


def normal_core(G: FiniteGroup, N) -> Subgroup:
    """Largest normal subgroup of G inside N: the intersection of all conjugates."""
    N = _check_subgroup(G, N)
    bits = N.bits
    for g in range(G.order):
        bits &= N.conjugate(g).bits
    return Subgroup(G, bits)


# ---------------------------------------------------------------------------
# p-Frattini subgroups


class FrattiniResult(NamedTuple):
    phi: Subgroup
    quotient_rank: int


def _log_exact(n: int, p: int) -> int:
    k = 0
    while n % p == 0 and n > 1:
        n //= p
        k += 1
    if n != 1:
        raise AssertionError("quotient by the p-Frattini subgroup is not a p-group")
    return k


def frattini_generated(G: FiniteGroup, p: int) -> Subgroup:
    """Subgroup generated by all commutators and all p-th powers."""
    key = ("_frattini", p)
    hit = G.__dict__.get(key)
    if hit is None:
        gens = np.union1d(G.commutators(), G.power_map(p))
        hit = G.generate(gens)
        G.__dict__[key] = hit
    return hit


def frattini_intersection(G: FiniteGroup, p: int, contains: Subgroup | None = None) -> Subgroup:
    """Literal intersection of the normal subgroups of index p (containing ``contains``)."""
    bits = G.whole.bits
    for S in normal_subgroups(G):
        if S.order * p == G.order and (contains is None or contains <= S):
            bits &= S.bits
    return Subgroup(G, bits)


def frattini_p(G: FiniteGroup, p: int, cross_check: bool | None = None) -> FrattiniResult:
    """Phi^p(G) and the rank n with G / Phi^p(G) = C_p^n.

    ``cross_check`` compares with the intersection of index-p normal
    subgroups; by default it runs when the subgroup lattice is cheap.
    """
    phi = frattini_generated(G, p)
    if cross_check is None:
        cross_check = G.order <= 32
    if cross_check and frattini_intersection(G, p) != phi:
        raise AssertionError(f"p-Frattini mismatch on {G.name} for p={p}")
    return FrattiniResult(phi, _log_exact(G.order // phi.order, p))


def relative_frattini(G: FiniteGroup, H, p: int, cross_check: bool = False) -> Subgroup:
    """H * Phi^p(G), the intersection of the index-p normal subgroups containing H."""
    H = _check_subgroup(G, H)
    phi = frattini_generated(G, p)
    out = Subgroup(G, H.product_set(phi))
    if cross_check and frattini_intersection(G, p, contains=H) != out:
        raise AssertionError(f"relative p-Frattini mismatch on {G.name}")
    return out


# ---------------------------------------------------------------------------
# the socle-compositum equation


@dataclass(frozen=True)
class SocleVerdict:
    verdict: str  # holds | fails | hypothesis-not-met
    product_hypothesis: bool  # N H = G
    core_hypothesis: bool  # core(N) H = G
    equation_holds: bool | None
    witness: int | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "NH=G": self.product_hypothesis,
            "core(N)H=G": self.core_hypothesis,
            "equation_holds": self.equation_holds,
            "witness": self.witness,
        }


def socle_equation_sides(G: FiniteGroup, N: Subgroup, H: Subgroup, p: int) -> tuple[Subgroup, Subgroup]:
    lhs = relative_frattini(G, N & H, p)
    rhs = relative_frattini(G, N, p) & relative_frattini(G, H, p)
    return lhs, rhs


def verify_socle_equation(G: FiniteGroup, N, H, p: int) -> SocleVerdict:
    """Check Phi^p(G, N cap H) == Phi^p(G, N) cap Phi^p(G, H) under the hypotheses."""
    N = _check_subgroup(G, N)
    H = _check_subgroup(G, H)
    full = G.whole.bits
    prod = N.product_set(H) == full
    core = prod and normal_core(G, N).product_set(H) == full
    if not prod:
        return SocleVerdict("hypothesis-not-met", False, False, None)
    lhs, rhs = socle_equation_sides(G, N, H, p)
    holds = lhs == rhs
    witness = None if holds else _members(rhs.bits & ~lhs.bits)[0]
    if not core:
        return SocleVerdict("hypothesis-not-met", True, False, holds, witness)
    return SocleVerdict("holds" if holds else "fails", True, True, holds, witness)


@dataclass(frozen=True)
class ExplorerRecord:
    group: str
    p: int
    N: tuple[int, ...]
    H: tuple[int, ...]
    equation_holds: bool
    witness: int | None

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "N": list(self.N),
            "H": list(self.H),
            "equation_holds": self.equation_holds,
            "witness": self.witness,
        }


def explore_pairs(G: FiniteGroup, p: int) -> list[ExplorerRecord]:
    """Evaluate the equation on every pair with N H = G but core(N) H != G."""
    subs = subgroups(G)
    full = G.whole.bits
    cores = {N.bits: normal_core(G, N) for N in subs}
    out = []
    for N in subs:
        for H in subs:
            if N.product_set(H) != full or cores[N.bits].product_set(H) == full:
                continue
            lhs, rhs = socle_equation_sides(G, N, H, p)
            holds = lhs == rhs
            wit = None if holds else _members(rhs.bits & ~lhs.bits)[0]
            out.append(ExplorerRecord(G.name, p, N.members, H.members, holds, wit))
    return out


def explore_counterexamples(max_order: int, p: int, groups: Sequence[FiniteGroup] | None = None) -> list[ExplorerRecord]:
    """Records for all catalog groups of order <= max_order, in catalog order."""
    from .catalog import CATALOG_BOUND, catalog

    if max_order > CATALOG_BOUND and groups is None:
        raise OrderBoundExceeded(f"the catalog stops at order {CATALOG_BOUND}")
    groups = groups if groups is not None else catalog(max_order)
    out = []
    for G in groups:
        if G.order <= max_order:
            out.extend(explore_pairs(G, p))
    return out


def direct_product_subgroup(G12: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """A x B inside the direct product built by :func:`catalog.direct_product`."""
    n2 = B.parent.order
    return Subgroup(G12, _bits(a * n2 + b for a in A.members for b in B.members))
