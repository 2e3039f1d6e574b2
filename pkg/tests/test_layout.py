import math

import numpy as np
import pytest
import scipy.optimize

from citenv.layout import (
    MIN_SPRING_LENGTH,
    kk_layout,
    minimize_spring_energy,
    spring_energy,
    spring_gradient,
    target_distances,
)
from citenv.similarity import CosineMatrix
from oracles import naive_shortest_paths, naive_spring_energy


def _cosine_matrix(values, cutoff=0.2):
    values = np.asarray(values, dtype=float)
    return CosineMatrix(
        members=tuple(f"J{i}" for i in range(values.shape[0])),
        values=values,
        cutoff=cutoff,
        vector_axis="cited",
        include_diagonal=True,
    )


def test_target_distance_is_one_minus_cosine():
    cm = _cosine_matrix([[0.0, 0.6], [0.6, 0.0]])
    dist = target_distances(cm)
    assert dist[0, 1] == pytest.approx(0.4)
    assert dist[0, 0] == 0.0


def test_target_distance_full_similarity_is_zero():
    cm = _cosine_matrix([[0.0, 1.0], [1.0, 0.0]])
    assert target_distances(cm)[0, 1] == 0.0


def test_target_distances_use_shortest_paths():
    # A-B cosine 0.8 and B-C cosine 0.5: d(A, C) = 0.2 + 0.5
    cm = _cosine_matrix([[0.0, 0.8, 0.0], [0.8, 0.0, 0.5], [0.0, 0.5, 0.0]])
    dist = target_distances(cm)
    oracle = naive_shortest_paths({(0, 1): 0.2, (1, 2): 0.5})
    assert dist[0, 2] == pytest.approx(0.7)
    for i in range(3):
        for j in range(3):
            assert dist[i, j] == pytest.approx(oracle[i][j])


def test_target_distances_disconnected_pairs_get_no_spring():
    cm = _cosine_matrix([[0.0, 0.9, 0.0], [0.9, 0.0, 0.0], [0.0, 0.0, 0.0]])
    dist = target_distances(cm)
    assert math.isinf(dist[0, 2]) and math.isinf(dist[1, 2])


def test_energy_matches_naive_oracle():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 8))
        positions = rng.uniform(0, 2, (n, 2))
        m = rng.uniform(0.3, 2.0, (n, n))
        m = (m + m.T) / 2
        np.fill_diagonal(m, 0.0)
        m[m < 0.6] = np.inf  # some pairs unconnected
        np.fill_diagonal(m, 0.0)
        ours = spring_energy(positions, m)
        naive = naive_spring_energy(positions.tolist(), m.tolist())
        assert ours == pytest.approx(naive, rel=1e-12)


def test_gradient_matches_central_differences():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(3, 8))
        positions = rng.uniform(0, 2, (n, 2))
        m = rng.uniform(0.5, 2.0, (n, n))
        m = (m + m.T) / 2
        np.fill_diagonal(m, 0.0)
        grad = spring_gradient(positions, m)
        h = 1e-6
        fd = np.zeros_like(grad)
        for i in range(n):
            for axis in range(2):
                plus = positions.copy()
                plus[i, axis] += h
                minus = positions.copy()
                minus[i, axis] -= h
                fd[i, axis] = (spring_energy(plus, m) - spring_energy(minus, m)) / (2 * h)
        rel = np.abs(grad - fd).max() / max(1.0, np.abs(fd).max())
        assert rel < 1e-5


def test_energy_trace_non_increasing():
    rng = np.random.default_rng(23)
    for seed in range(5):
        n = 7
        m = rng.uniform(0.5, 2.0, (n, n))
        m = (m + m.T) / 2
        np.fill_diagonal(m, 0.0)
        _, trace = minimize_spring_energy(m, np.random.default_rng(seed).uniform(0, 2, (n, 2)))
        assert all(later <= earlier for earlier, later in zip(trace, trace[1:]))
        assert trace[-1] <= trace[0]


def test_two_nodes_attain_target_distance():
    distances = np.array([[0.0, 0.5], [0.5, 0.0]])
    positions, trace = minimize_spring_energy(
        distances, np.random.default_rng(1).uniform(0, 1, (2, 2))
    )
    assert np.linalg.norm(positions[0] - positions[1]) == pytest.approx(0.5, abs=1e-3)
    assert trace[-1] < 4e-6


def test_five_node_path_spaces_evenly():
    n = 5
    distances = np.abs(np.subtract.outer(np.arange(n), np.arange(n))).astype(float)
    initial = np.random.default_rng(3).uniform(0, 4, (n, 2))
    positions, _ = minimize_spring_energy(distances, initial)
    consecutive = [np.linalg.norm(positions[i + 1] - positions[i]) for i in range(n - 1)]
    assert max(consecutive) / min(consecutive) < 1.05

    # independent reference: scipy minimizing the oracle energy from the same start
    def objective(flat):
        return naive_spring_energy(flat.reshape(n, 2).tolist(), distances.tolist())

    result = scipy.optimize.minimize(objective, initial.ravel(), method="BFGS")
    reference = result.x.reshape(n, 2)
    ref_consecutive = [np.linalg.norm(reference[i + 1] - reference[i]) for i in range(n - 1)]
    assert max(ref_consecutive) / min(ref_consecutive) < 1.05
    assert abs(objective(positions.ravel()) - result.fun) < 1e-3


def test_single_node_centered():
    result = kk_layout(np.zeros((1, 1)), rng_seed=9)
    assert result.coords.tolist() == [[0.5, 0.5]]
    assert result.energy == 0.0


def test_layout_deterministic_bit_for_bit():
    cm = _cosine_matrix(
        [[0.0, 0.8, 0.3], [0.8, 0.0, 0.45], [0.3, 0.45, 0.0]]
    )
    distances = target_distances(cm)
    a = kk_layout(distances, rng_seed=42)
    b = kk_layout(distances, rng_seed=42)
    assert np.array_equal(a.coords, b.coords)
    assert a.energy == b.energy
    c = kk_layout(distances, rng_seed=43)
    assert not np.array_equal(a.coords, c.coords)


def test_layout_coordinates_stay_in_unit_square():
    rng = np.random.default_rng(5)
    for seed in range(5):
        n = 12
        values = np.triu(rng.uniform(0, 1, (n, n)), 1)
        values[values < 0.5] = 0.0
        values = values + values.T
        distances = target_distances(_cosine_matrix(values, cutoff=0.5))
        result = kk_layout(distances, rng_seed=seed)
        assert np.isfinite(result.coords).all()
        assert result.coords.min() >= 0.0 and result.coords.max() <= 1.0


def test_disconnected_components_are_separated():
    # two 2-node components and one isolate
    values = np.zeros((5, 5))
    values[0, 1] = values[1, 0] = 0.9
    values[2, 3] = values[3, 2] = 0.7
    distances = target_distances(_cosine_matrix(values))
    result = kk_layout(distances, rng_seed=1)
    assert np.isfinite(result.coords).all()
    # members of different components do not coincide
    assert np.linalg.norm(result.coords[0] - result.coords[2]) > 1e-3
    assert np.linalg.norm(result.coords[0] - result.coords[4]) > 1e-3
    again = kk_layout(distances, rng_seed=1)
    assert np.array_equal(result.coords, again.coords)


def test_full_similarity_pair_respects_spring_floor():
    cm = _cosine_matrix([[0.0, 1.0], [1.0, 0.0]])
    distances = target_distances(cm)
    result = kk_layout(distances, rng_seed=2)
    assert np.isfinite(result.coords).all()
    # the spring floor keeps the pair from collapsing to one point
    assert MIN_SPRING_LENGTH == pytest.approx(0.01)


def test_layout_requires_a_node():
    with pytest.raises(ValueError):
        kk_layout(np.zeros((0, 0)), rng_seed=0)
