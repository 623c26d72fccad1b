import random

import pytest
from hypothesis import given, settings, strategies as st

from coreshare.gf import (
    field_matrix,
    interpolate_secret,
    inv_mod,
    is_prime,
    mat_rank,
    poly_eval,
    rowspace_contains,
    smallest_prime_at_least,
    transpose,
)


def test_smallest_prime():
    assert smallest_prime_at_least(4) == 5
    assert smallest_prime_at_least(7) == 7
    assert smallest_prime_at_least(2) == 2
    with pytest.raises(ValueError):
        smallest_prime_at_least(1)


def test_rank_examples():
    assert mat_rank(field_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 7)) == 3
    assert mat_rank(field_matrix([[1, 2], [2, 4]], 5)) == 1
    assert rowspace_contains(field_matrix([[1, 0], [0, 1]], 5), [3, 4])
    assert not rowspace_contains(field_matrix([[1, 1]], 5), [1, 0])


def test_rank_mod_p_collapse():
    # [6, 12] reduces to [1, 2] mod 5; [6, 8] reduces to the independent [1, 3]
    assert mat_rank(field_matrix([[1, 2], [6, 8]], 5)) == 2
    assert mat_rank(field_matrix([[1, 2], [6, 12]], 5)) == 1


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        rowspace_contains(field_matrix([[1, 0]], 5), [1, 0, 0])
    with pytest.raises(ValueError):
        field_matrix([[1, 0], [1]], 5)


def test_rank_equals_transpose_rank():
    rng = random.Random(2)
    for _ in range(40):
        p = smallest_prime_at_least(rng.randrange(2, 50))
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = field_matrix(
            [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], p
        )
        assert mat_rank(m) == mat_rank(transpose(m))


def test_field_axioms_exhaustive_small_primes():
    p = 2
    while p <= 101:
        for a in range(1, p):
            assert a * inv_mod(a, p) % p == 1
        p = smallest_prime_at_least(p + 1)


def test_interpolate_examples():
    assert interpolate_secret([(0, 2), (1, 0)], 2, 5) == (2, 3)
    assert interpolate_secret([(0, 4)], 1, 7) == (4,)
    with pytest.raises(ValueError):
        interpolate_secret([(1, 2), (1, 3)], 2, 5)
    with pytest.raises(ValueError):
        interpolate_secret([(0, 1)], 2, 5)


@given(data=st.data())
@settings(max_examples=120, deadline=None)
def test_interpolate_round_trip(data):
    p = data.draw(st.sampled_from([2, 3, 5, 7, 11, 13, 89]))
    c = data.draw(st.integers(min_value=1, max_value=min(p, 6)))
    coeffs = [data.draw(st.integers(min_value=0, max_value=p - 1)) for _ in range(c)]
    xs = data.draw(
        st.lists(
            st.integers(min_value=0, max_value=p - 1),
            min_size=c, max_size=c, unique=True,
        )
    )
    points = [(x, poly_eval(coeffs, x, p)) for x in xs]
    assert list(interpolate_secret(points, c, p)) == coeffs


def test_is_prime():
    assert [x for x in range(30) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
