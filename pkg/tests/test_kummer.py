import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socle_lab.errors import MissingRootOfUnity, NotCertified, WrongCharacteristic
from socle_lab.fields import make_finite_field, make_prime_field, make_rationals
from socle_lab.funcfields import FunctionField
from socle_lab.kummer import (
    CERTIFIED,
    DEPENDENT,
    as_rank,
    as_relative_rank,
    build_cpn_extension,
    kummer_rank,
    kummer_relative_rank,
    pth_root_membership,
    wp,
    wp_solve,
)

R7 = FunctionField(make_prime_field(7), ["t"], ["u"])
R2 = FunctionField(make_prime_field(2), ["t"], ["u"])
R3 = FunctionField(make_prime_field(3), ["t"])
t7, u7 = R7.var("t"), R7.var("u")
t2, u2 = R2.var("t"), R2.var("u")
t3 = R3.var("t")

LINEAR7 = [t7 + c for c in range(4)]


def nonzero_ratfuncs(R, var):
    x = R.var(var)
    coeffs = st.lists(st.integers(0, R.characteristic - 1), min_size=1, max_size=3)

    def build(cs):
        out = R.zero
        for i, c in enumerate(cs):
            out = out + x**i * c
        return out

    num = coeffs.map(build).filter(lambda f: not f.is_zero())
    return st.tuples(num, num).map(lambda nd: nd[0] / nd[1])


@settings(max_examples=20)
@given(st.lists(nonzero_ratfuncs(R7, "t"), min_size=1, max_size=3), st.data())
def test_kummer_rank_ignores_pth_powers(elems, data):
    base = kummer_rank(elems, 3).rank
    twists = [data.draw(nonzero_ratfuncs(R7, "t")) for _ in elems]
    moved = [a * c**3 for a, c in zip(elems, twists)]
    assert kummer_rank(moved, 3).rank == base


@settings(max_examples=20)
@given(st.lists(nonzero_ratfuncs(R3, "t"), min_size=1, max_size=3), st.data())
def test_as_rank_ignores_wp_image(elems, data):
    base = as_rank(elems).rank
    shifts = [data.draw(nonzero_ratfuncs(R3, "t")) for _ in elems]
    moved = [a + wp(c) for a, c in zip(elems, shifts)]
    assert as_rank(moved).rank == base


@settings(max_examples=15)
@given(st.lists(nonzero_ratfuncs(R3, "t"), min_size=1, max_size=3))
def test_as_strategies_agree(elems):
    a = as_rank(elems, strategy="echelon")
    b = as_rank(elems, strategy="enumerate")
    assert a.rank == b.rank
    assert a.recheck() and b.recheck()


def test_independent_linear_primes():
    sys = kummer_rank(LINEAR7, 3)
    assert sys.rank == 4 and sys.status == CERTIFIED
    assert sys.recheck()
    ext = build_cpn_extension(sys)
    assert ext.group_rank == 4 and len(ext.generators) == 4
    assert ext.describe_action(0, 0).startswith("root1 -> eps^1")


def test_dependence_witness_verifies():
    a, b = t7 + 1, t7 + 2
    sys = kummer_rank([a, b, a**2 * b * (t7 + 5) ** 3], 3)
    assert sys.rank == 2 and sys.status == DEPENDENT
    rel = sys.witness
    assert sys.verify_relation(rel)
    assert sys.recheck()
    with pytest.raises(NotCertified):
        build_cpn_extension(sys)


def test_constant_classes_count():
    # 3 is not a cube in F_7 while 6 = -1 is
    assert kummer_rank([R7.const(3)], 3).rank == 1
    assert kummer_rank([R7.const(6)], 3).rank == 0


def test_kummer_checks_roots_of_unity():
    R5 = FunctionField(make_prime_field(5), ["t"])
    with pytest.raises(MissingRootOfUnity):
        kummer_rank([R5.var("t")], 3)
    with pytest.raises(WrongCharacteristic):
        kummer_rank([t7], 7)


def test_relative_rank_only_sees_mixed_primes():
    elems = [(t7 + u7) * (t7 + 1), (t7 * u7 + 1) * (u7 + 3), (t7 + 2) ** 5]
    sys = kummer_relative_rank(elems, 3)
    assert sys.rank == 2
    assert all(q.kind() == "mixed" for q in sys.primes)
    assert sys.recheck()


def test_membership_returns_checkable_root():
    A = LINEAR7[:2]
    c = (t7**2 + 3) / (t7 + 6)
    b = A[0] ** 2 * A[1] * c**3 * 6
    v = pth_root_membership(b, A, 3)
    assert v.verdict == "member"
    prod = v.alpha**3
    for a, k in zip(A, v.nu):
        prod = prod * a**k
    assert prod == b
    miss = pth_root_membership(t7 + 3, A, 3)
    assert miss.verdict == "non-member"


def test_wp_solve_over_extension_field():
    F4 = make_finite_field(2, 2, "w")
    R = FunctionField(F4, ["t"])
    t = R.var("t")
    alpha = (t**2 + R.const(F4.gen())) / (t + 1)
    res = wp_solve(wp(alpha))
    assert res and wp(res.alpha) == wp(alpha)
    # 1/t has a simple pole, which no wp image has
    bad = wp_solve(t ** -1)
    assert not bad and bad.reason == "pole-order"
    assert bad.recheck(t ** -1)


def test_wp_solve_needs_finite_characteristic():
    R = FunctionField(make_rationals(), ["t"])
    with pytest.raises(WrongCharacteristic):
        wp_solve(R.var("t"))


def test_as_relative_rank_mixed_pole():
    q = t2 * u2 + 1
    sys = as_relative_rank([1 / q, u2 / q, t2 / q**3])
    assert sys.status == CERTIFIED and sys.rank == 3
    dep = as_relative_rank([1 / q, 1 / q + t2**3 / (t2 + 1) + u2])
    assert dep.status == DEPENDENT and dep.rank == 1
    assert dep.verify_relation(dep.witness)


def test_as_relative_bounds_bracket_true_rank():
    # an even pole from a wp image hides the odd simple pole of 1/q; the true rank is 1
    q = t2 * u2 + 1
    sys = as_relative_rank([1 / q, 1 / q + t2**3 / (t2 + 1) + u2, wp(t2 / q)])
    lo, hi = sys.rank_bounds
    assert lo <= 1 <= hi
    assert sys.relations and all(sys.verify_relation(r) for r in sys.relations)
