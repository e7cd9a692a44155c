import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorunc.errors import InvalidComparisonError, InvalidInputError, UnsupportedOrderError
from majorunc.majorize import (
    JointDistribution,
    majorizes,
    mutual_information,
    renyi,
    shannon,
    tilde_entropy,
    tsallis,
)

LN2 = math.log(2)


def test_majorizes_examples():
    assert majorizes([0.5, 0.5], [1, 0])
    assert not majorizes([1, 0], [0.5, 0.5])
    x = [0.1, 0.6, 0.3]
    assert majorizes(x, x)
    assert majorizes([0.4, 0.3, 0.3], [0.5, 0.25, 0.25])
    # zero padding of the shorter vector
    assert majorizes([0.25] * 4, [0.5, 0.5])
    with pytest.raises(InvalidComparisonError):
        majorizes([0.5, 0.5], [1, 1])


def test_shannon_examples():
    assert shannon([1, 0, 0]) == 0
    assert shannon(np.full(5, 0.2)) == pytest.approx(math.log(5), abs=1e-15)
    assert shannon([0.5, 0.25, 0.25]) == pytest.approx(1.5 * LN2, abs=1e-15)
    with pytest.raises(InvalidInputError):
        shannon([0.5, 0.6])


def test_tilde_entropy_examples():
    w = np.array([1 / np.sqrt(2), 1 - 1 / np.sqrt(2)])
    assert tilde_entropy(np.concatenate([[1.0], w])) == shannon(w)
    assert tilde_entropy([1, 1]) == 0
    h = -(0.7 * math.log(0.7) + 0.3 * math.log(0.3))
    assert tilde_entropy([0.7, 0.7, 0.3, 0.3]) == pytest.approx(2 * h, abs=1e-14)
    assert tilde_entropy([0.7, 0.7, 0.3, 0.3]) == pytest.approx(1.2217, abs=1e-4)


@pytest.mark.parametrize("alpha", [0, 0.3, 0.5, 2, 3, 7.5])
def test_renyi_tsallis_uniform_and_point_mass(alpha):
    assert renyi(np.full(4, 0.25), alpha) == pytest.approx(math.log(4), abs=1e-13)
    assert renyi([1, 0, 0], alpha) == pytest.approx(0, abs=1e-15)
    assert tsallis([1, 0, 0], alpha) == pytest.approx(0, abs=1e-15)


def test_renyi_tsallis_examples():
    assert renyi([0.5, 0.5], 2) == pytest.approx(LN2, abs=1e-15)
    assert tsallis([0.5, 0.5], 2) == pytest.approx(0.5, abs=1e-15)
    assert tsallis(np.full(3, 1 / 3), 0) == pytest.approx(2, abs=1e-14)
    p = [0.5, 0.3, 0.2]
    assert renyi(p, 1) == shannon(p) == tsallis(p, 1)
    for f in (renyi, tsallis):
        with pytest.raises(UnsupportedOrderError):
            f(p, -0.5)


def test_renyi_order_one_limit():
    # derivative of the Rényi entropy at order 1 is -Var_p(ln p) / 2
    p = np.array([0.5, 0.25, 0.125, 0.125])
    var = np.sum(p * np.log(p) ** 2) - np.sum(p * np.log(p)) ** 2
    h = shannon(p)
    d = 1e-4
    lo, hi = renyi(p, 1 - d), renyi(p, 1 + d)
    assert abs(0.5 * (lo + hi) - h) <= 1e-6
    assert abs(lo - (h + d * var / 2)) <= 1e-6
    assert abs(hi - (h - d * var / 2)) <= 1e-6
    # tsallis is continuous there as well
    assert abs(0.5 * (tsallis(p, 1 - d) + tsallis(p, 1 + d)) - h) <= 1e-6


def _doubly_stochastic_pair(rng, n):
    y = rng.dirichlet(np.ones(n) * rng.uniform(0.2, 2))
    weights = rng.dirichlet(np.ones(3))
    x = sum(w * y[rng.permutation(n)] for w in weights)
    return x / x.sum(), y


def test_schur_concavity_consistency(rng):
    for _ in range(10_000):
        x, y = _doubly_stochastic_pair(rng, int(rng.integers(2, 7)))
        assert majorizes(x, y, 1e-12)
        assert shannon(x) >= shannon(y) - 1e-9
        for a in (0.5, 2, 3):
            assert renyi(x, a) >= renyi(y, a) - 1e-9
            assert tsallis(x, a) >= tsallis(y, a) - 1e-9


probabilities = st.lists(st.floats(0, 1), min_size=1, max_size=8).filter(
    lambda v: sum(v) > 1e-3
).map(lambda v: np.array(v) / sum(v))


@given(probabilities)
@settings(max_examples=300, deadline=None)
def test_entropies_monotone_in_order(p):
    grid = [0, 0.1, 0.5, 0.9, 0.999, 1, 1.001, 1.5, 2, 3, 5, 10]
    r = [renyi(p, a) for a in grid]
    t = [tsallis(p, a) for a in grid]
    assert all(b <= a + 1e-9 for a, b in zip(r, r[1:]))
    assert all(b <= a + 1e-9 for a, b in zip(t, t[1:]))
    assert -1e-12 <= shannon(p) <= math.log(len(p)) + 1e-12


@given(probabilities, probabilities)
@settings(max_examples=200, deadline=None)
def test_mutual_information_of_product_is_zero(r, c):
    joint = JointDistribution.from_matrix(np.outer(r, c))
    assert abs(mutual_information(joint)) <= 1e-10


def test_mutual_information_examples(rng):
    assert mutual_information(np.diag([0.5, 0.5])) == pytest.approx(LN2, abs=1e-15)
    for _ in range(200):
        m = rng.dirichlet(np.ones(12)).reshape(3, 4)
        j = JointDistribution.from_matrix(m)
        r, c = j.row_marginal, j.col_marginal
        direct = np.sum(m * np.log(m / np.outer(r, c)))
        assert mutual_information(j) == pytest.approx(direct, abs=1e-9)
        assert mutual_information(j) >= 0
