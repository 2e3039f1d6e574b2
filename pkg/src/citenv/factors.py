"""Principal components with varimax rotation over citation profiles.

Used to validate the visual clusters of a map: members become variables,
their citing rows (or cited columns) the observations, and the rotated
loadings show which journals share a citation pattern. Pearson correlation
is the right instrument here (it is only avoided for the *maps*, where
sparse profiles favour the cosine).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DISPLAY_SUPPRESSION = 0.1  # |loading| below this is blanked in reports
_KAISER_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class CorrelationResult:
    variables: tuple[str, ...]
    values: np.ndarray  # symmetric, unit diagonal
    dropped: tuple[str, ...]  # constant-profile variables removed


@dataclass(frozen=True, eq=False)
class LoadingsMatrix:
    variables: tuple[str, ...]
    loadings: np.ndarray  # p x k
    eigenvalues: np.ndarray  # k, descending
    variance_explained_percent: float
    rotation_iterations: int = 0
    display_suppression: float = DISPLAY_SUPPRESSION

    @property
    def n_components(self) -> int:
        return self.loadings.shape[1]

    def communalities(self) -> np.ndarray:
        return (self.loadings**2).sum(axis=1)


def correlation_matrix(env_matrix, direction: str) -> CorrelationResult:
    """Pearson correlations between member citation profiles.

    ``direction`` picks the profile axis (citing rows / cited columns), the
    same convention as the cosine maps. Variables with zero variance carry
    no factor information and are dropped with a warning.
    """
    if direction not in ("cited", "citing"):
        raise ValueError(f"direction must be 'cited' or 'citing', got {direction!r}")
    cells = np.asarray(env_matrix.cells, dtype=float)
    profiles = cells if direction == "citing" else cells.T  # one variable per row
    variances = profiles.var(axis=1)
    keep = variances > 0.0
    dropped = tuple(m for m, ok in zip(env_matrix.members, keep) if not ok)
    if dropped:
        warnings.warn(
            f"dropping constant-profile variable(s): {', '.join(dropped)}",
            stacklevel=2,
        )
    kept = tuple(m for m, ok in zip(env_matrix.members, keep) if ok)
    if len(kept) < 2:
        raise ValueError("fewer than two variables with nonzero variance")
    values = np.corrcoef(profiles[keep])
    np.fill_diagonal(values, 1.0)
    return CorrelationResult(variables=kept, values=values, dropped=dropped)


def kaiser_k(eigenvalues: np.ndarray) -> int:
    """Number of components with eigenvalue > 1; the variable count when
    none qualifies (flat spectrum: no dimensionality reduction possible)."""
    k = int((eigenvalues > 1.0 + _KAISER_EPS).sum())
    return k if k > 0 else len(eigenvalues)


def pca(
    correlation: np.ndarray | CorrelationResult,
    k: int | None = None,
    variables: Sequence[str] | None = None,
) -> LoadingsMatrix:
    """Unrotated principal-component loadings of a correlation matrix.

    Column j is eigvec_j * sqrt(eigval_j); ``k`` defaults to the Kaiser
    rule. Eigenvector signs follow the largest-magnitude-entry convention
    so results are deterministic.
    """
    if isinstance(correlation, CorrelationResult):
        variables = correlation.variables
        matrix = correlation.values
    else:
        matrix = np.asarray(correlation, dtype=float)
    p = matrix.shape[0]
    if matrix.shape != (p, p) or not np.allclose(matrix, matrix.T, atol=1e-8):
        raise ValueError("correlation matrix must be symmetric")
    if not np.allclose(np.diag(matrix), 1.0, atol=1e-8):
        raise ValueError("correlation matrix must have a unit diagonal")
    if variables is None:
        variables = tuple(f"v{i + 1}" for i in range(p))

    eigvals, eigvecs = np.linalg.eigh(matrix)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    if k is None:
        k = kaiser_k(eigvals)
    if not 1 <= k <= p:
        raise ValueError(f"k must lie in [1, {p}], got {k}")

    top = np.clip(eigvals[:k], 0.0, None)
    loadings = eigvecs[:, :k] * np.sqrt(top)
    loadings = _fix_column_signs(loadings)
    return LoadingsMatrix(
        variables=tuple(variables),
        loadings=loadings,
        eigenvalues=eigvals[:k].copy(),
        variance_explained_percent=100.0 * float(eigvals[:k].sum()) / p,
    )


def _fix_column_signs(loadings: np.ndarray, rotation: np.ndarray | None = None):
    for j in range(loadings.shape[1]):
        pivot = int(np.argmax(np.abs(loadings[:, j])))
        if loadings[pivot, j] < 0.0:
            loadings[:, j] = -loadings[:, j]
            if rotation is not None:
                rotation[:, j] = -rotation[:, j]
    return loadings if rotation is None else (loadings, rotation)


def _varimax_criterion(loadings: np.ndarray) -> float:
    p = loadings.shape[0]
    sq = loadings**2
    return float(((sq**2).sum(axis=0) / p - (sq.sum(axis=0) / p) ** 2).sum())


def varimax(
    loadings: np.ndarray,
    kaiser_normalize: bool = True,
    tol: float = 1e-7,
    max_sweeps: int = 100,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Varimax rotation by pairwise planar rotations; returns (rotated, R, sweeps).

    Kaiser row normalization is applied before and undone after rotation when
    flagged; since that is a row scaling, ``rotated == loadings @ R`` holds
    either way. Sweeps run over ascending column pairs until the criterion
    gain drops below ``tol``. Each column is finally signed so its largest
    magnitude entry is positive.
    """
    A = np.array(loadings, dtype=float)
    if A.ndim != 2:
        raise ValueError("loadings must be a 2-d array")
    p, k = A.shape
    R = np.eye(k)
    if k < 2:
        return A, R, 0

    norms = np.sqrt((A**2).sum(axis=1))
    scale = np.where(norms > 0.0, norms, 1.0) if kaiser_normalize else np.ones(p)
    B = A / scale[:, None]

    iterations = 0
    previous = _varimax_criterion(B)
    for _ in range(max_sweeps):
        for i in range(k - 1):
            for j in range(i + 1, k):
                x, y = B[:, i], B[:, j]
                u = x * x - y * y
                v = 2.0 * x * y
                su, sv = u.sum(), v.sum()
                num = 2.0 * (u @ v) - 2.0 * su * sv / p
                den = (u @ u - v @ v) - (su * su - sv * sv) / p
                theta = 0.25 * np.arctan2(num, den)
                if abs(theta) < 1e-15:
                    continue
                c, s = np.cos(theta), np.sin(theta)
                rot = np.array([[c, -s], [s, c]])
                B[:, [i, j]] = B[:, [i, j]] @ rot
                R[:, [i, j]] = R[:, [i, j]] @ rot
        iterations += 1
        criterion = _varimax_criterion(B)
        if criterion - previous < tol:
            break
        previous = criterion

    rotated = B * scale[:, None]
    rotated, R = _fix_column_signs(rotated, R)
    return rotated, R, iterations


def rotate_loadings(lm: LoadingsMatrix, kaiser_normalize: bool = True) -> LoadingsMatrix:
    """Varimax-rotated copy of a loadings matrix (k = 1 passes through)."""
    rotated, _, iterations = varimax(lm.loadings, kaiser_normalize=kaiser_normalize)
    return LoadingsMatrix(
        variables=lm.variables,
        loadings=rotated,
        eigenvalues=lm.eigenvalues,
        variance_explained_percent=lm.variance_explained_percent,
        rotation_iterations=iterations,
        display_suppression=lm.display_suppression,
    )


def _cell(value: float, suppression: float) -> str:
    if abs(value) < suppression:
        return ""
    text = f"{value:.3f}"
    return text.replace("0.", ".", 1) if text.startswith(("0.", "-0.")) else text


def format_loadings_table(lm: LoadingsMatrix, title: str = "Rotated component matrix") -> str:
    """Plain-text loadings table: variables x components, small cells blank,
    method and iteration footnotes underneath."""
    k = lm.n_components
    name_width = max(len(v) for v in lm.variables)
    name_width = max(name_width, len("Variable"))
    col_width = 8
    lines = [title, ""]
    header = "Variable".ljust(name_width) + "".join(str(j + 1).rjust(col_width) for j in range(k))
    lines.append(header)
    for variable, row in zip(lm.variables, lm.loadings):
        cells = "".join(_cell(float(v), lm.display_suppression).rjust(col_width) for v in row)
        lines.append(variable.ljust(name_width) + cells)
    lines.append("")
    lines.append("Extraction: principal component analysis.")
    if lm.rotation_iterations > 0:
        lines.append(
            "Rotation: varimax with Kaiser normalization"
            f" (converged in {lm.rotation_iterations} iterations)."
        )
    lines.append(
        f"Components: {k}; variance explained: {lm.variance_explained_percent:.1f}%."
    )
    return "\n".join(lines) + "\n"
