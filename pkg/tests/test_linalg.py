import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from socle_lab.linalg import left_kernel_mod_p, nullspace_mod_p, rank_mod_p, rref, solve_mod_p, span_basis

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw):
    p = draw(PRIMES)
    shape = draw(st.tuples(st.integers(1, 6), st.integers(1, 6)))
    M = draw(arrays(np.int64, shape, elements=st.integers(0, p - 1)))
    return p, M


@given(matrices())
def test_rref_transform(pm):
    p, M = pm
    R, pivots, T = rref(M, p, track=True)
    assert ((T @ M - R) % p == 0).all()
    for i, c in enumerate(pivots):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    assert not R[len(pivots):].any()


@given(matrices())
def test_rank_nullity(pm):
    p, M = pm
    K = nullspace_mod_p(M, p)
    assert rank_mod_p(M, p) + K.shape[0] == M.shape[1]
    assert not ((M @ K.T) % p).any()
    if K.size:
        assert rank_mod_p(K, p) == K.shape[0]
    L = left_kernel_mod_p(M, p)
    assert not ((L @ M) % p).any()


@given(matrices(), st.data())
def test_solve_gives_solution_or_certificate(pm, data):
    p, M = pm
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=M.shape[0], max_size=M.shape[0])))
    x, y = solve_mod_p(M, b, p)
    if x is not None:
        assert ((M @ x - b) % p == 0).all()
    else:
        assert not ((y @ M) % p).any()
        assert int(y @ b) % p != 0


def test_rank_matches_textbook_example():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank_mod_p(M, 7) == 2
    assert rank_mod_p(M, 2) == 1  # rows 1 and 3 agree mod 2, row 2 vanishes
    assert rank_mod_p([[2, 4], [1, 2]], 2) == 1
    assert span_basis([[1, 1], [2, 2]], 3).shape == (1, 2)
