import pytest
from hypothesis import given
from hypothesis import strategies as st

from socle_lab.errors import NotIrreducible, PoleAtSubstitution, WrongCharacteristic
from socle_lab.fields import make_finite_field, make_prime_field, make_rationals
from socle_lab.funcfields import (
    FunctionField,
    certify_prime,
    coprime_squarefree_base,
    freshman_check,
    poly_gcd_multi,
    split_pure_parts,
    substitute,
    valuation,
)
from socle_lab.upoly import UPoly, certify_irreducible, factor_finite, is_irreducible_finite, poly_gcd, squarefree_decomposition

F5 = make_prime_field(5)
F4 = make_finite_field(2, 2, "w")
R7 = FunctionField(make_prime_field(7), ["t"], ["u"])
R3 = FunctionField(make_prime_field(3), ["t"], ["u"])


def upolys(F, max_degree=6):
    coords = st.lists(st.integers(0, F.characteristic - 1), min_size=F.degree, max_size=F.degree)
    return st.lists(coords.map(F.from_coords), min_size=1, max_size=max_degree + 1).map(lambda cs: UPoly(F, cs))


def _product(F, factors):
    out = UPoly(F, [F.one])
    for g, m in factors:
        out = out * g**m
    return out


@given(upolys(F5))
def test_factorization_reassembles(f):
    if f.is_zero():
        return
    lc, facs = factor_finite(f)
    assert _product(F5, facs).scale(lc) == f
    for g, _ in facs:
        assert g.lc.is_one()
        assert is_irreducible_finite(g)


@given(upolys(F4, 5))
def test_factorization_over_extension(f):
    if f.is_zero():
        return
    lc, facs = factor_finite(f)
    assert _product(F4, facs).scale(lc) == f


@given(upolys(F5), upolys(F5))
def test_squarefree_decomposition(f, g):
    h = f * f * g
    if h.is_zero() or h.degree < 1:
        return
    parts = squarefree_decomposition(h)
    assert _product(F5, parts) == h.monic()
    for part, _ in parts:
        assert poly_gcd(part, part.derivative()).degree == 0


def test_frobenius_power_squarefree():
    F = make_prime_field(3)
    x = UPoly.x(F)
    f = (x**3 + 2 * x + 1) ** 3 * (x + 1)
    parts = dict((str(g), m) for g, m in squarefree_decomposition(f))
    assert parts == {"x+1": 1, "x^3+2*x+1": 3}


def test_certify_irreducible_over_rationals():
    Q = make_rationals()
    assert certify_irreducible(UPoly(Q, [Q(c) for c in (-2, 0, 0, 0, 0, 1)]))[0] is True
    assert certify_irreducible(UPoly(Q, [Q(c) for c in (-4, 0, 1)]))[0] is False
    verdict, _ = certify_irreducible(UPoly(Q, [Q(c) for c in (1, 0, -10, 0, 1)]))
    assert verdict is None


# ---------------------------------------------------------------------------
# multivariate


def mpolys(R, max_deg=2):
    p = R.characteristic
    exps = st.tuples(*[st.integers(0, max_deg)] * R.nvars)
    return st.dictionaries(exps, st.integers(1, p - 1), max_size=4).map(R.poly)


@given(mpolys(R7), mpolys(R7), mpolys(R7))
def test_gcd_is_common_divisor(a, b, c):
    x, y = a * c, b * c
    g = poly_gcd_multi(x, y)
    if x.is_zero() and y.is_zero():
        return
    assert g.divides(x) and g.divides(y)
    if not c.is_zero():
        assert c.divides(g)


@given(mpolys(R7), mpolys(R7), mpolys(R7))
def test_rational_function_field_axioms(a, b, c):
    if b.is_zero() or c.is_zero():
        return
    x, y = R7(a) / R7(b), R7(b) / R7(c)
    assert (x + y) - y == x
    assert x * y == y * x
    assert x * (y + 1) == x * y + x
    if not x.is_zero():
        assert (y / x) * x == y


@given(mpolys(R7), mpolys(R7))
def test_valuation_is_additive(a, b):
    q = R7.var_poly("t") + R7.var_poly("u") + R7.const_poly(2)
    if a.is_zero() or b.is_zero():
        return
    fa, fb = R7(a), R7(b)
    va = valuation(fa, q).value
    vb = valuation(fb, q).value
    assert valuation(fa * fb, q).value == va + vb
    assert valuation(fa / fb, q).value == va - vb


@given(mpolys(R3), mpolys(R3))
def test_freshman_identity_property(a, b):
    if b.is_zero():
        return
    x, y = R3(a), R3(a + b) / R3(b)
    assert freshman_check(x, y).holds


def test_freshman_needs_positive_characteristic():
    R = FunctionField(make_rationals(), ["t"])
    with pytest.raises(WrongCharacteristic):
        freshman_check(R.var("t"), R.one)


def test_certify_prime_methods():
    t, u = R7.var_poly("t"), R7.var_poly("u")
    assert certify_prime(t + u) == "linear"
    assert certify_prime(t * u + 1).startswith("linear-in")
    assert certify_prime(t**2 + t + 3) != "asserted"
    with pytest.raises(NotIrreducible):
        certify_prime(t**2 - 1)


def test_split_pure_parts_and_blocks():
    t, u = R7.var_poly("t"), R7.var_poly("u")
    a = (t + 1) * (u**2 + 3) * (t * u + 1)
    ct, cu, mixed = split_pure_parts(a)
    assert ct * cu * mixed == a.monic()
    assert mixed == (t * u + 1).monic()
    base = coprime_squarefree_base([((t * u + 1) ** 2 * (t + 2)), ((t + 2) * (u + 5))])
    for i, x in enumerate(base):
        for y in base[i + 1 :]:
            assert poly_gcd_multi(x, y).is_one()


def test_substitution_and_poles():
    t, u = R7.var("t"), R7.var("u")
    f = (t**2 - u) / (t * (u + 1))
    g = substitute(f, {"u": t**2 + 1})
    assert g == R7.const(-1) / (t * (t**2 + 2))
    with pytest.raises(PoleAtSubstitution):
        substitute(f, {"u": R7.const(-1)})
