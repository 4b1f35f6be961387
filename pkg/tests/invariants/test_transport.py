"""Property-based tests for transportation distances.

These must hold for any pair of measures on the simplex:

1. The distance is symmetric, zero on equal measures and satisfies the triangle inequality.
2. L1 distances never exceed the L1 diameter of the simplex (2).
3. On the line the LP and the CDF formula agree.
"""

from hypothesis import given, settings

from snapmix import transport_distance, transport_distance_1d

from .strategies import coin_measures, simplex_measures

TOLERANCE = 1e-7


@given(P=simplex_measures(3), Q=simplex_measures(3), R=simplex_measures(3))
@settings(max_examples=60, deadline=None)
def test_l1_distance_is_a_metric(P, Q, R):
    pq = transport_distance(P, Q, "l1")
    assert transport_distance(P, P, "l1") <= TOLERANCE
    assert abs(pq - transport_distance(Q, P, "l1")) <= TOLERANCE
    assert pq <= transport_distance(P, R, "l1") + transport_distance(R, Q, "l1") + TOLERANCE
    assert pq <= 2.0 + TOLERANCE


@given(P=simplex_measures(4), Q=simplex_measures(4))
@settings(max_examples=60, deadline=None)
def test_l2_distance_is_bounded_by_l1(P, Q):
    assert transport_distance(P, Q, "l2") <= transport_distance(P, Q, "l1") + TOLERANCE


@given(P=coin_measures(), Q=coin_measures())
@settings(max_examples=100, deadline=None)
def test_line_distances_agree(P, Q):
    assert abs(transport_distance(P, Q, "l1") - transport_distance_1d(P, Q)) <= TOLERANCE
