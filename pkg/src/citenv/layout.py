"""Spring embedding of the thresholded cosine graph.

Retained cosine edges become springs whose relaxed length grows as
similarity falls (1 - cosine); multi-hop target distances are shortest-path
sums over those lengths. Node positions are then moved, one worst node at a
time with a damped Newton step, to reduce the total spring energy

    E = sum_{i<j, connected} (|p_i - p_j| - d_ij)^2 / d_ij^2

until the accepted displacement falls under ``MOVE_TOL``. Everything is
driven by an explicit integer seed, so a layout is reproducible bit for bit.
Disconnected components are embedded independently and parked on a ring
around the main component at a seeded angle (they carry no springs to it).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .similarity import CosineMatrix

MOVE_TOL = 1e-4
MAX_ITERATIONS = 10_000
MIN_SPRING_LENGTH = 0.01  # avoids zero-length springs at cosine = 1


@dataclass(frozen=True, eq=False)
class LayoutResult:
    coords: np.ndarray  # n x 2, inside the unit square
    energy: float
    rng_seed: int

    def __post_init__(self):
        self.coords.setflags(write=False)


def target_distances(cosine_matrix: CosineMatrix) -> np.ndarray:
    """Symmetric target distance matrix; ``inf`` marks pairs with no spring.

    A retained edge contributes length 1 - cosine; other pairs get the
    shortest-path sum over edge lengths, or ``inf`` across components.
    """
    values = np.asarray(cosine_matrix.values, dtype=float)
    n = values.shape[0]
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    edge = values > 0.0
    dist[edge] = 1.0 - values[edge]
    for k in range(n):  # Floyd-Warshall; n stays small (tens of journals)
        dist = np.minimum(dist, dist[:, k, None] + dist[None, k, :])
    return dist


def spring_energy(positions: np.ndarray, distances: np.ndarray) -> float:
    """Total spring energy of a configuration (unconnected pairs excluded)."""
    positions = np.asarray(positions, dtype=float)
    distances = np.asarray(distances, dtype=float)
    n = positions.shape[0]
    i, j = np.triu_indices(n, k=1)
    d = distances[i, j]
    connected = np.isfinite(d)
    i, j, d = i[connected], j[connected], d[connected]
    r = np.linalg.norm(positions[i] - positions[j], axis=1)
    return float((((r - d) ** 2) / d**2).sum())


def spring_gradient(positions: np.ndarray, distances: np.ndarray) -> np.ndarray:
    """Analytic gradient of :func:`spring_energy`, one row per node."""
    positions = np.asarray(positions, dtype=float)
    distances = np.asarray(distances, dtype=float)
    n = positions.shape[0]
    diff = positions[:, None, :] - positions[None, :, :]
    r = np.sqrt((diff**2).sum(axis=-1))
    connected = np.isfinite(distances) & ~np.eye(n, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(connected, 2.0 * (r - distances) / (distances**2 * np.maximum(r, 1e-12)), 0.0)
    return (w[:, :, None] * diff).sum(axis=1)


def _node_energy(positions: np.ndarray, distances: np.ndarray, m: int, point: np.ndarray) -> float:
    """Energy of the springs attached to node ``m`` with ``m`` at ``point``."""
    d = distances[m]
    mask = np.isfinite(d)
    mask[m] = False
    d = d[mask]
    r = np.linalg.norm(positions[mask] - point, axis=1)
    return float((((r - d) ** 2) / d**2).sum())


def _newton_step(positions: np.ndarray, distances: np.ndarray, m: int) -> np.ndarray:
    """Damped Newton direction for node ``m`` (falls back to steepest descent)."""
    d = distances[m]
    mask = np.isfinite(d)
    mask[m] = False
    d = d[mask]
    diff = positions[m] - positions[mask]
    r = np.maximum(np.linalg.norm(diff, axis=1), 1e-12)
    u, v = diff[:, 0], diff[:, 1]
    w = 2.0 / d**2
    gx = float((w * (r - d) * u / r).sum())
    gy = float((w * (r - d) * v / r).sum())
    exx = float((w * (1.0 - d * v**2 / r**3)).sum())
    eyy = float((w * (1.0 - d * u**2 / r**3)).sum())
    exy = float((w * d * u * v / r**3).sum())
    grad = np.array([gx, gy])
    det = exx * eyy - exy * exy
    if abs(det) > 1e-12:
        step = np.array([-(eyy * gx - exy * gy), -(exx * gy - exy * gx)]) / det
        if step @ grad < 0.0:  # genuine descent direction
            return step
    norm = np.linalg.norm(grad)
    return -grad / norm if norm > 0 else np.zeros(2)


def minimize_spring_energy(
    distances: np.ndarray,
    positions: np.ndarray,
    max_iterations: int = MAX_ITERATIONS,
    move_tol: float = MOVE_TOL,
) -> tuple[np.ndarray, list[float]]:
    """Relax the spring system; returns final positions and the energy trace.

    One iteration moves the node with the largest gradient norm by a
    backtracked Newton step; a move is only accepted if it strictly lowers
    the energy, so the returned trace is non-increasing. Iteration stops
    when the accepted displacement drops below ``move_tol``, when every
    node is stuck, or at the iteration cap.
    """
    positions = np.array(positions, dtype=float)
    distances = np.asarray(distances, dtype=float)
    n = positions.shape[0]
    energies = [spring_energy(positions, distances)]
    if n < 2:
        return positions, energies

    stuck: set[int] = set()
    for _ in range(max_iterations):
        grad_norms = np.linalg.norm(spring_gradient(positions, distances), axis=1)
        for m in stuck:
            grad_norms[m] = -1.0
        m = int(np.argmax(grad_norms))
        if grad_norms[m] <= 1e-9:
            break

        current = _node_energy(positions, distances, m, positions[m])
        step = _newton_step(positions, distances, m)
        scale = 1.0
        moved = False
        for _ in range(40):
            trial = positions[m] + scale * step
            trial_energy = _node_energy(positions, distances, m, trial)
            if trial_energy < current:
                delta = float(np.linalg.norm(scale * step))
                positions[m] = trial
                energies.append(energies[-1] - (current - trial_energy))
                moved = True
                break
            scale *= 0.5
        if moved:
            stuck.clear()
            if delta < move_tol:
                break
        else:
            stuck.add(m)
            if len(stuck) == n:
                break
    return positions, energies


def _components(distances: np.ndarray) -> list[list[int]]:
    """Connected components under finite target distance, largest first."""
    n = distances.shape[0]
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        queue, group = [start], []
        seen[start] = True
        while queue:
            node = queue.pop()
            group.append(node)
            for other in range(n):
                if not seen[other] and np.isfinite(distances[node, other]):
                    seen[other] = True
                    queue.append(other)
        components.append(sorted(group))
    components.sort(key=lambda g: (-len(g), g[0]))
    return components


def _rescale_unit(coords: np.ndarray) -> np.ndarray:
    """Isotropic rescale into the unit square, centred at (0.5, 0.5)."""
    mins = coords.min(axis=0)
    maxs = coords.max(axis=0)
    span = float((maxs - mins).max())
    if span <= 0.0:
        return np.full_like(coords, 0.5)
    center = (mins + maxs) / 2.0
    return (coords - center) / span + 0.5


def kk_layout(distances: np.ndarray, rng_seed: int = 0) -> LayoutResult:
    """Embed nodes so Euclidean distances approximate the targets.

    Target lengths below ``MIN_SPRING_LENGTH`` are clamped before the springs
    are built. Components are relaxed independently; extras are placed on a
    ring around the largest one at a seeded angle. Coordinates come back in
    the unit square.
    """
    distances = np.asarray(distances, dtype=float)
    n = distances.shape[0]
    if n == 0:
        raise ValueError("layout needs at least one node")
    rng = np.random.default_rng(rng_seed)
    if n == 1:
        return LayoutResult(coords=np.array([[0.5, 0.5]]), energy=0.0, rng_seed=rng_seed)

    springs = distances.copy()
    finite_off = np.isfinite(springs) & ~np.eye(n, dtype=bool)
    springs[finite_off] = np.maximum(springs[finite_off], MIN_SPRING_LENGTH)

    scale = float(springs[finite_off].max()) if finite_off.any() else 1.0
    initial = rng.uniform(0.0, scale, size=(n, 2))
    ring_angle = float(rng.uniform(0.0, 2.0 * np.pi))

    components = _components(springs)
    total_energy = 0.0
    placed = np.zeros((n, 2))
    radii = []
    locals_ = []
    for group in components:
        idx = np.array(group)
        sub, trace = minimize_spring_energy(springs[np.ix_(idx, idx)], initial[idx])
        total_energy += trace[-1]
        sub = sub - sub.mean(axis=0)
        radii.append(float(np.linalg.norm(sub, axis=1).max()) if len(group) > 1 else 0.0)
        locals_.append(sub)

    placed[np.array(components[0])] = locals_[0]
    if len(components) > 1:
        gap = 0.2 * max(scale, 1.0)
        extras = len(components) - 1
        for k, group in enumerate(components[1:]):
            angle = ring_angle + 2.0 * np.pi * k / extras
            radius = radii[0] + radii[k + 1] + gap
            offset = radius * np.array([np.cos(angle), np.sin(angle)])
            placed[np.array(group)] = locals_[k + 1] + offset

    return LayoutResult(
        coords=_rescale_unit(placed),
        energy=total_energy,
        rng_seed=rng_seed,
    )
