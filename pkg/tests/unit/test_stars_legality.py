from fractions import Fraction

import pytest

from clusterlab_core.errors import ImpossibleOutcomeError
from clusterlab_core.graphs import RUniformHypergraph
from clusterlab_distribution.exact import exact_distribution
from clusterlab_stats.legality import c_hat_legal, is_legal, is_legal_star
from clusterlab_stats.stars import (
    StarCluster,
    all_star_clusters,
    c_hat,
    complex_sum,
    expected_c_hat,
    is_star,
    star_clusters,
)

HALF = Fraction(1, 2)


def hyper(n, r, *edges):
    return RUniformHypergraph.build(n, r, edges)


@pytest.mark.unit
def test_two_triangles_have_two_stars():
    H = hyper(4, 3, (0, 1, 2), (0, 1, 3))
    stars = star_clusters(H)
    assert sorted(s.center for s in stars) == [(0, 2, 3), (1, 2, 3)]
    star = stars[0]
    assert star.leaves == ((0, 1, 2), (0, 1, 3))
    assert star.pi0(HALF) == Fraction(1, 32)
    assert star.pi1(HALF) == Fraction(1, 64)
    assert star.pi_c(HALF) == HALF
    assert c_hat(H, HALF) == complex_sum(H, HALF) == 1


@pytest.mark.unit
def test_star_minimality():
    # leaves covering the whole centre do not form a star
    assert not is_star(0b111, [0b011, 0b100])
    # the third leaf adds nothing the first two do not cover
    assert not is_star(0b0111, [0b0001, 0b0010, 0b0011])
    assert is_star(0b0111, [0b1001, 0b1010])


@pytest.mark.unit
def test_complex_sum_needs_a_possible_outcome():
    H = hyper(4, 3, (0, 1, 2), (0, 1, 3), (0, 2, 3))
    with pytest.raises(ImpossibleOutcomeError):
        complex_sum(H, HALF)


@pytest.mark.unit
def test_expected_c_hat_matches_the_exact_law():
    stars = list(all_star_clusters(4, 3))
    assert len(stars) == 12
    dist = exact_distribution(4, 3, HALF)
    assert dist.expectation(lambda H: c_hat(H, HALF)) == expected_c_hat(stars, HALF) == Fraction(3, 16)


@pytest.mark.unit
class TestLegality:
    def test_shapes(self):
        assert is_legal(hyper(4, 3, (0, 1, 2), (0, 1, 3)))
        assert is_legal(hyper(5, 3, (0, 1, 2), (0, 1, 3), (0, 1, 4)))
        assert not is_legal(hyper(6, 3, (0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 1, 5)))
        assert not is_legal(hyper(5, 4, (0, 1, 2, 3), (0, 1, 2, 4)))

    def test_inside_a_larger_clique(self):
        assert is_legal(hyper(4, 3, (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))

    def test_legal_stars(self):
        star = StarCluster(4, (0, 2, 3), ((0, 1, 2), (0, 1, 3)))
        assert is_legal_star(star, 3)
        H = hyper(4, 3, (0, 1, 2), (0, 1, 3))
        assert c_hat_legal(H, HALF) == c_hat(H, HALF)


@pytest.mark.unit
@pytest.mark.parametrize("n, r", [(5, 3), (6, 3)])
def test_legal_outcomes_sandwich_c_hat_legal(n, r):
    legal = 0
    for H, prob in exact_distribution(n, r, HALF).items():
        if not prob or not is_legal(H):
            continue
        legal += 1
        c, c_legal, c_all = complex_sum(H, HALF), c_hat_legal(H, HALF), c_hat(H, HALF)
        assert c <= c_legal <= c_all, H.edges
    assert legal > 1
