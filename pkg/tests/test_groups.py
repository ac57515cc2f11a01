import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import frattini_bruteforce
from socle_lab.catalog import (
    CATALOG_NAMES,
    GROUP_COUNTS,
    check_catalog_complete,
    cycles_to_perm,
    load_group,
    named_group,
    parse_group_spec,
    parse_permutation,
    permutation_group,
)
from socle_lab.errors import NotAGroup, NotASubgroup, OrderBoundExceeded, ParseError
from socle_lab.groups import (
    frattini_p,
    normal_core,
    normal_subgroups,
    relative_frattini,
    subgroups,
    verify_socle_equation,
    explore_counterexamples,
)

SMALL = [n for n in CATALOG_NAMES if named_group(n).order <= 16]


def test_catalog_is_complete_and_irredundant():
    assert check_catalog_complete() == GROUP_COUNTS


@pytest.mark.parametrize(
    "name, n_sub, n_normal",
    [("S3", 6, 3), ("D4", 10, 6), ("Q8", 6, 6), ("A4", 10, 3), ("S4", 30, 4), ("C2xC2xC2", 16, 16)],
)
def test_subgroup_counts(name, n_sub, n_normal):
    G = named_group(name)
    assert len(subgroups(G)) == n_sub
    assert len(normal_subgroups(G)) == n_normal


@given(st.sampled_from(SMALL), st.data())
def test_lagrange_and_normal_core(name, data):
    G = named_group(name)
    subs = subgroups(G)
    N = data.draw(st.sampled_from(subs))
    assert G.order % N.order == 0
    # core as the literal intersection of conjugates
    bits = N.bits
    for g in range(G.order):
        bits &= N.conjugate(g).bits
    core = normal_core(G, N)
    assert core.bits == bits
    assert core.is_normal() and core <= N


@given(st.sampled_from(SMALL), st.sampled_from([2, 3]), st.data())
def test_relative_frattini_matches_bruteforce(name, p, data):
    G = named_group(name)
    H = data.draw(st.sampled_from(subgroups(G)))
    phi, n = frattini_p(G, p)
    assert set(phi.members) == frattini_bruteforce(G.table.tolist(), p)
    assert G.order // phi.order == p**n
    rel = relative_frattini(G, H, p)
    assert set(rel.members) == frattini_bruteforce(G.table.tolist(), p, H.members)
    assert H <= rel and phi <= rel


@given(st.sampled_from(SMALL), st.sampled_from([2, 3]), st.data())
def test_socle_equation_under_core_hypothesis(name, p, data):
    G = named_group(name)
    subs = subgroups(G)
    N = data.draw(st.sampled_from(subs))
    H = data.draw(st.sampled_from(subs))
    v = verify_socle_equation(G, N, H, p)
    if v.core_hypothesis:
        assert v.verdict == "holds"
    if not v.product_hypothesis:
        assert v.verdict == "hypothesis-not-met"


def test_explorer_finds_failures_only_outside_core_hypothesis():
    recs = explore_counterexamples(16, 2)
    failing = [r for r in recs if not r.equation_holds]
    assert failing
    assert {r.group for r in failing} == {"D4xC2"}
    G = named_group("D4xC2")
    r = failing[0]
    v = verify_socle_equation(G, r.N, r.H, 2)
    assert v.product_hypothesis and not v.core_hypothesis and v.equation_holds is False


def test_parse_group_specs():
    assert parse_permutation("(1,2,3)(4,5)") == [[1, 2, 3], [4, 5]]
    assert parse_permutation("(12345)") == [[1, 2, 3, 4, 5]]
    G = parse_group_spec("perm: 8 (1234) (13)")
    assert G.order == 8 and len(normal_subgroups(G)) == 6
    T = parse_group_spec("table: 3 0 1 2 1 2 0 2 0 1")
    assert T.order == 3 and T.is_abelian
    assert load_group("V = perm: 4 (12)(34) (13)(24)").name == "V"
    with pytest.raises(ParseError):
        parse_group_spec("table: 2 0 1 1")
    with pytest.raises(ParseError):
        parse_permutation("(1,2")
    with pytest.raises(NotAGroup):
        parse_group_spec("perm: 6 (1234)")


def test_not_a_group_reports_witness():
    bad = np.array([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(NotAGroup) as info:
        load_group(bad)
    assert info.value.witness is not None
    # a Latin square with identity that is not associative
    latin = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as info:
        load_group(np.array(latin))
    a, b, c = info.value.witness
    assert latin[latin[a][b]][c] != latin[a][latin[b][c]]


def test_subgroup_errors_and_bounds():
    G, K = named_group("S3"), named_group("C3")
    with pytest.raises(NotASubgroup):
        G.subgroup([0, 1, 2, 4])
    with pytest.raises(NotASubgroup):
        relative_frattini(G, K.whole, 3)
    big = permutation_group([cycles_to_perm([(1, 2, 3, 4, 5, 6, 7)], 7), cycles_to_perm([(1, 2)], 7)])
    assert big.order == 5040
    with pytest.raises(OrderBoundExceeded):
        subgroups(big)
