"""Property-based tests for the L1 projection onto the simplex."""

import numpy as np
from hypothesis import given, settings

from snapmix import l1_project_to_simplex
from snapmix.measures import is_in_simplex, l1_distance_to_simplex

from .strategies import dimension_st, free_vectors, simplex_points


@given(data=dimension_st.flatmap(lambda n: free_vectors(n)))
@settings(max_examples=200, deadline=None)
def test_projection_lands_on_the_simplex_at_the_closed_form_distance(data):
    projected, distance = l1_project_to_simplex(data)
    assert is_in_simplex(projected, tolerance=1e-9)
    assert abs(np.abs(projected - data).sum() - distance) <= 1e-9
    assert abs(distance - l1_distance_to_simplex(data)) <= 1e-9


@given(
    pair=dimension_st.flatmap(lambda n: free_vectors(n).flatmap(lambda y: simplex_points(n).map(lambda x: (y, x))))
)
@settings(max_examples=200, deadline=None)
def test_projection_is_no_farther_than_any_simplex_point(pair):
    y, x = pair
    _, distance = l1_project_to_simplex(y)
    assert distance <= np.abs(x - y).sum() + 1e-9


@given(data=dimension_st.flatmap(lambda n: simplex_points(n)))
@settings(max_examples=100, deadline=None)
def test_simplex_points_are_fixed(data):
    projected, distance = l1_project_to_simplex(data)
    np.testing.assert_allclose(projected, data, atol=1e-12)
    assert distance <= 1e-12
