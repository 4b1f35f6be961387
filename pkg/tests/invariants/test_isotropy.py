"""Property-based tests for isotropic splitting.

Splitting a point spreads each letter over its copies; merging the copies
gives the point back and keeps it in the simplex.
"""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from snapmix import IsotropyMap
from snapmix.measures import is_in_simplex
from snapmix.subspace import invert_isotropy

from .strategies import copies_st, simplex_measures


@st.composite
def maps_and_measures(draw):
    copies = np.array(draw(copies_st))
    return IsotropyMap.from_copies(copies), draw(simplex_measures(len(copies)))


@given(case=maps_and_measures())
@settings(max_examples=100, deadline=None)
def test_split_then_merge_is_the_identity(case):
    isotropy, measure = case
    split = isotropy.split_measure(measure)
    assert split.dim == isotropy.n_prime
    assert all(is_in_simplex(point, tolerance=1e-9) for point in split.points)
    merged = invert_isotropy(split, isotropy)
    np.testing.assert_allclose(np.sort(merged.points, axis=0), np.sort(measure.points, axis=0), atol=1e-12)
    np.testing.assert_allclose(np.sort(merged.weights), np.sort(measure.weights), atol=1e-12)


@given(case=maps_and_measures())
@settings(max_examples=100, deadline=None)
def test_copies_of_a_letter_share_its_mass_evenly(case):
    isotropy, measure = case
    point = measure.points[0]
    split = isotropy.split_point(point)
    for letter, count in enumerate(isotropy.copies):
        copies = split[isotropy.letter_of_copy == letter]
        np.testing.assert_allclose(copies, point[letter] / count, atol=1e-15)
