"""Constructions of small groups and the catalog of all groups of order <= 24."""

from __future__ import annotations

import re
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import NotAGroup, ParseError
from .groups import FiniteGroup, normal_subgroups, subgroups

CATALOG_BOUND = 24

# number of isomorphism types of each order up to the bound
GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15,
}


# ---------------------------------------------------------------------------
# constructions


def metacyclic(m: int, n: int, r: int, s: int = 0, name: str = "") -> FiniteGroup:
    """<a, b | a^m, b^n = a^s, b a b^-1 = a^r> on elements a^i b^j (index i + m*j)."""
    r %= m
    if pow(r, n, m) != 1 % m or (r * s - s) % m:
        raise NotAGroup(f"inconsistent metacyclic data m={m} n={n} r={r} s={s}")
    N = m * n
    i = np.arange(N) % m
    j = np.arange(N) // m
    rpow = np.array([pow(r, k, m) for k in range(n)])
    I, K = np.meshgrid(i, i, indexing="ij")
    J, L = np.meshgrid(j, j, indexing="ij")
    wrap = (J + L) >= n
    a = (I + K * rpow[J] + s * wrap) % m
    b = (J + L) % n
    return FiniteGroup(a + m * b, name or f"M({m},{n},{r},{s})")


def cyclic(n: int) -> FiniteGroup:
    return metacyclic(n, 1, 1, 0, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    if n == 1:
        return cyclic(2)
    return metacyclic(n, 2, -1, 0, name=f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """<a, b | a^(2n), b^2 = a^n, b a b^-1 = a^-1>, order 4n."""
    return metacyclic(2 * n, 2, -1, n, name=f"Dic{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """Elements (g, h) at index g*|H| + h."""
    n2 = H.order
    A = G.table[:, None, :, None] * n2 + H.table[None, :, None, :]
    T = A.reshape(G.order * n2, G.order * n2)
    return FiniteGroup(T, name or f"{G.name}x{H.name}", verify=False)


def semidirect(N: FiniteGroup, K: FiniteGroup, action: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """N x| K with K acting through ``action[k]`` (a permutation of N's elements).

    Element (n, k) sits at index n + |N|*k and (n1, k1)(n2, k2) = (n1 * k1(n2), k1 k2).
    """
    act = np.asarray(action, dtype=np.int64)
    nN, nK = N.order, K.order
    idx = np.arange(nN * nK)
    n_, k_ = idx % nN, idx // nN
    n1, n2 = np.meshgrid(n_, n_, indexing="ij")
    k1, k2 = np.meshgrid(k_, k_, indexing="ij")
    nn = N.table[n1, act[k1, n2]]
    kk = K.table[k1, k2]
    return FiniteGroup(nn + nN * kk, name or f"{N.name}:{K.name}")


def from_generators(gens: Sequence, mul: Callable, identity, name: str = "", limit: int = 10**5) -> FiniteGroup:
    """Closure of hashable generators under ``mul``; the identity becomes element 0."""
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    new.append(y)
                    if len(elems) > limit:
                        raise NotAGroup("closure exceeds the size limit")
        frontier = new
    n = len(elems)
    T = np.empty((n, n), dtype=np.int64)
    for a, x in enumerate(elems):
        for b, y in enumerate(elems):
            T[a, b] = index[mul(x, y)]
    return FiniteGroup(T, name)


def _perm_mul(x: tuple, y: tuple) -> tuple:
    # left-to-right composition: apply x, then y
    return tuple(y[i] for i in x)


def permutation_group(gens: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Group generated by permutations given as image tuples on 0..d-1."""
    gens = [tuple(int(v) for v in g) for g in gens]
    d = max((len(g) for g in gens), default=1)
    gens = [g + tuple(range(len(g), d)) for g in gens]
    for g in gens:
        if sorted(g) != list(range(d)):
            raise NotAGroup(f"{g} is not a permutation")
    return from_generators(gens, _perm_mul, tuple(range(d)), name)


def cycles_to_perm(cycles: Sequence[Sequence[int]], degree: int, one_based: bool = True) -> tuple[int, ...]:
    img = list(range(degree))
    off = 1 if one_based else 0
    for cyc in cycles:
        pts = [c - off for c in cyc]
        if len(set(pts)) != len(pts):
            raise NotAGroup(f"repeated point in cycle {cyc}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def matrix_group(gens: Sequence, p: int, name: str = "") -> FiniteGroup:
    """Group generated by square matrices over F_p (entries as nested lists)."""
    gens = [tuple(tuple(int(v) % p for v in row) for row in g) for g in gens]
    d = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))

    def mul(x, y):
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(d)) % p for j in range(d)) for i in range(d)
        )

    return from_generators(gens, mul, ident, name)


def _automorphism_by_images(N: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list[int]:
    """Extend gens -> images to a map on all of N by walking words (assumed homomorphic)."""
    img = {0: 0}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = N.mul(x, g)
                if y not in img:
                    img[y] = N.mul(img[x], h)
                    new.append(y)
        frontier = new
    out = [img[x] for x in range(N.order)]
    T = N.table
    arr = np.array(out)
    if sorted(out) != list(range(N.order)) or not (arr[T] == T[np.ix_(arr, arr)]).all():
        raise NotAGroup("images do not define an automorphism")
    return out


def _action_through_sign(N: FiniteGroup, K: FiniteGroup, kernel: Iterable[int], aut: Sequence[int]) -> list[list[int]]:
    """K acts on N by ``aut`` outside an index-2 kernel and trivially on it."""
    ker = set(kernel)
    ident = list(range(N.order))
    return [ident if k in ker else list(aut) for k in range(K.order)]


def _inversion(N: FiniteGroup) -> list[int]:
    return [int(v) for v in N.inv]


# ---------------------------------------------------------------------------
# named groups


def _s_n(n: int, alternating: bool = False) -> FiniteGroup:
    if alternating:
        gens = [cycles_to_perm([(1, 2, 3)], n)]
        if n > 3:
            gens.append(cycles_to_perm([(2, 3, 4)], n) if n == 4 else cycles_to_perm([tuple(range(1, n + 1))], n))
        return permutation_group(gens, f"A{n}")
    return permutation_group([cycles_to_perm([(1, 2)], n), cycles_to_perm([tuple(range(1, n + 1))], n)], f"S{n}")


def _sg16_3() -> FiniteGroup:
    # (C4 x C2) x| C2 with c a c = a b, b central
    N = direct_product(cyclic(4), cyclic(2))
    a, b = 1 * 2, 1  # (1,0) and (0,1)
    aut = _automorphism_by_images(N, [a, b], [N.mul(a, b), b])
    return semidirect(N, cyclic(2), [list(range(8)), aut], "(C4xC2):C2")


def _pauli() -> FiniteGroup:
    # X, Z and i*I over F_5 where 2^2 = -1
    X = [[0, 1], [1, 0]]
    Z = [[1, 0], [0, 4]]
    iI = [[2, 0], [0, 2]]
    return matrix_group([X, Z, iI], 5, "Pauli")


def _c3_d4() -> FiniteGroup:
    C3, D4 = cyclic(3), dihedral(4)
    # D4 = <a, b>: element a^i b^j at i + 4j; kernel {1, a^2, b, a^2 b} is a Klein four-group
    kernel = [0, 2, 4, 6]
    return semidirect(C3, D4, _action_through_sign(C3, D4, kernel, _inversion(C3)), "C3:D4")


def _generalized_dihedral(A: FiniteGroup, name: str) -> FiniteGroup:
    C2 = cyclic(2)
    return semidirect(A, C2, [list(range(A.order)), _inversion(A)], name)


def _sl23() -> FiniteGroup:
    return matrix_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 3, "SL(2,3)")


def _f20() -> FiniteGroup:
    gens = [cycles_to_perm([(1, 2, 3, 4, 5)], 5), cycles_to_perm([(2, 3, 5, 4)], 5)]
    return permutation_group(gens, "F20")


_SPECIAL: dict[str, Callable[[], FiniteGroup]] = {
    "S3": lambda: _s_n(3),
    "S4": lambda: _s_n(4),
    "A4": lambda: _s_n(4, alternating=True),
    "A5": lambda: _s_n(5, alternating=True),
    "S5": lambda: _s_n(5),
    "Q8": lambda: metacyclic(4, 2, -1, 2, "Q8"),
    "Q16": lambda: metacyclic(8, 2, -1, 4, "Q16"),
    "SD16": lambda: metacyclic(8, 2, 3, 0, "SD16"),
    "M16": lambda: metacyclic(8, 2, 5, 0, "M16"),
    "C4:C4": lambda: metacyclic(4, 4, -1, 0, "C4:C4"),
    "(C4xC2):C2": _sg16_3,
    "Pauli": _pauli,
    "F20": _f20,
    "C7:C3": lambda: metacyclic(7, 3, 2, 0, "C7:C3"),
    "C3:C8": lambda: metacyclic(3, 8, -1, 0, "C3:C8"),
    "C3:D4": _c3_d4,
    "SL(2,3)": _sl23,
    "(C3xC3):C2": lambda: _generalized_dihedral(direct_product(cyclic(3), cyclic(3)), "(C3xC3):C2"),
}

CATALOG_NAMES: tuple[str, ...] = (
    "C1",
    "C2",
    "C3",
    "C4", "C2xC2",
    "C5",
    "C6", "S3",
    "C7",
    "C8", "C4xC2", "C2xC2xC2", "D4", "Q8",
    "C9", "C3xC3",
    "C10", "D5",
    "C11",
    "C12", "C6xC2", "D6", "A4", "Dic3",
    "C13",
    "C14", "D7",
    "C15",
    "C16", "C4xC4", "C8xC2", "C4xC2xC2", "C2xC2xC2xC2", "D8", "Q16", "SD16", "M16",
    "C4:C4", "(C4xC2):C2", "D4xC2", "Q8xC2", "Pauli",
    "C17",
    "C18", "C6xC3", "D9", "S3xC3", "(C3xC3):C2",
    "C19",
    "C20", "C10xC2", "D10", "Dic5", "F20",
    "C21", "C7:C3",
    "C22", "D11",
    "C23",
    "C24", "C12xC2", "C6xC2xC2", "S4", "SL(2,3)", "D12", "Dic6", "C3:C8",
    "C4xS3", "Dic3xC2", "C3:D4", "C3xD4", "C3xQ8", "A4xC2", "S3xC2xC2",
)

_NAME_RE = re.compile(r"^(C|D|Dic|Q)(\d+)$")


def _split_product(name: str) -> list[str]:
    """Split on 'x' outside parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    """Build a group from its catalog name (Cn, Dn, Dicn, Q2^k, products AxB, specials)."""
    name = name.strip()
    if name in _SPECIAL:
        G = _SPECIAL[name]()
        G.name = name
        return G
    parts = _split_product(name)
    if len(parts) > 1 and all(parts):
        G = named_group(parts[0])
        for part in parts[1:]:
            G = direct_product(G, named_group(part))
        G.name = name
        return G
    m = _NAME_RE.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise KeyError(name)
        if kind == "C":
            return cyclic(n)
        if kind == "D":
            return dihedral(n)
        if kind == "Dic":
            return dicyclic(n)
        if kind == "Q" and n >= 8 and n & (n - 1) == 0:
            return metacyclic(n // 2, 2, -1, n // 4, f"Q{n}")
    raise KeyError(f"unknown group name {name!r}")


def catalog(max_order: int = CATALOG_BOUND) -> list[FiniteGroup]:
    """All catalog groups of order <= max_order, in catalog order."""
    out = []
    for name in CATALOG_NAMES:
        G = named_group(name)
        if G.order <= max_order:
            out.append(G)
    return out


def fingerprint(G: FiniteGroup) -> tuple:
    """Isomorphism invariants, enough to tell apart the catalog groups of equal order."""
    orders = tuple(sorted(G.element_orders))
    subs = subgroups(G)
    return (
        G.order,
        orders,
        G.center.order,
        G.derived_subgroup.order,
        G.conjugacy_class_count(),
        len(subs),
        len(normal_subgroups(G)),
        tuple(sorted(S.order for S in subs)),
    )


def check_catalog_complete(max_order: int = CATALOG_BOUND) -> dict[int, int]:
    """Count pairwise non-isomorphic catalog groups per order (distinct fingerprints)."""
    seen: dict[int, set] = {}
    for G in catalog(max_order):
        seen.setdefault(G.order, set()).add(fingerprint(G))
    return {n: len(v) for n, v in sorted(seen.items())}


# ---------------------------------------------------------------------------
# textual group specifications


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str) -> list[list[int]]:
    """Cycles like "(1,2,3)(4,5)" or "(12345)" (single-digit points without commas)."""
    text = text.strip()
    if not text or _CYCLE_RE.sub("", text).strip():
        raise ParseError(f"malformed permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        if "," in body or " " in body:
            pts = [int(x) for x in re.split(r"[,\s]+", body) if x]
        else:
            pts = [int(c) for c in body]
        cycles.append(pts)
    return cycles


def parse_group_spec(line: str, name: str = "") -> FiniteGroup:
    """``perm: <order> <generator> ...`` or ``table: <order> <row-major entries>``."""
    kind, _, rest = line.partition(":")
    kind = kind.strip()
    tokens = rest.split()
    if not tokens:
        raise ParseError(f"missing order in {line!r}")
    try:
        order = int(tokens[0])
    except ValueError:
        raise ParseError(f"order must be an integer, got {tokens[0]!r}") from None
    if kind == "table":
        try:
            vals = [int(t) for t in tokens[1:]]
        except ValueError as exc:
            raise ParseError(f"table entries must be integers: {exc}") from None
        if len(vals) != order * order:
            raise ParseError(f"expected {order * order} table entries, got {len(vals)}")
        return FiniteGroup(np.array(vals).reshape(order, order), name or f"table{order}")
    if kind == "perm":
        gens = [parse_permutation(t) for t in tokens[1:]]
        degree = max((max(c) for g in gens for c in g if c), default=1)
        perms = [cycles_to_perm(g, degree) for g in gens]
        G = permutation_group(perms, name or f"perm{order}")
        if G.order != order:
            raise NotAGroup(f"generators give a group of order {G.order}, declared {order}")
        return G
    raise ParseError(f"unknown group specification kind {kind!r}")


def load_group(spec) -> FiniteGroup:
    """Catalog name, ``perm:``/``table:`` line, Cayley table, or permutation generators."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith(("perm:", "table:")):
            return parse_group_spec(s)
        if "=" in s and s.split("=", 1)[1].strip().startswith(("perm:", "table:")):
            label, body = s.split("=", 1)
            return parse_group_spec(body.strip(), label.strip())
        return named_group(s)
    arr = spec if isinstance(spec, np.ndarray) else None
    if arr is None:
        first = spec[0]
        if isinstance(first, str):
            degree = max(max(c) for t in spec for c in parse_permutation(t))
            return permutation_group([cycles_to_perm(parse_permutation(t), degree) for t in spec])
        arr = np.asarray(spec)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1] and sorted(arr[0].tolist()) == list(range(arr.shape[0])):
        try:
            return FiniteGroup(arr)
        except NotAGroup:
            if arr.shape[0] > 1:
                raise
    return permutation_group(arr.tolist())


def load_catalog_file(path: str | Path) -> list[FiniteGroup]:
    """One group per non-blank, non-comment line: ``[name =] perm: ...`` or ``[name =] table: ...``."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(load_group(line))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno, column=1) from None
    return out
