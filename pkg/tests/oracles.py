"""Independent brute-force reference implementations used across the tests.

Everything here is deliberately naive (pure-python loops, no numpy), so the
oracles share no code path with the package under test.
"""

import math

# Canonical 4-journal fixture: citing-row x cited-column counts.
TOY4_MATRIX = {
    ("A", "A"): 10,
    ("A", "B"): 5,
    ("B", "A"): 4,
    ("B", "B"): 20,
    ("B", "C"): 2,
    ("C", "B"): 3,
    ("C", "C"): 30,
    ("C", "D"): 2,
    ("D", "C"): 2,
    ("D", "D"): 8,
}
TOY4_IDS = ("A", "B", "C", "D")
TOY4_EDGES = tuple((citing, cited, count) for (citing, cited), count in TOY4_MATRIX.items())


def toy4_row_sum(journal):
    return sum(c for (citing, _), c in TOY4_MATRIX.items() if citing == journal)


def toy4_col_sum(journal):
    return sum(c for (_, cited), c in TOY4_MATRIX.items() if cited == journal)


def toy4_diagonal(journal):
    return TOY4_MATRIX.get((journal, journal), 0)


def naive_cosine(x, y):
    dot = sum(a * b for a, b in zip(x, y))
    nx = math.sqrt(sum(a * a for a in x))
    ny = math.sqrt(sum(b * b for b in y))
    if nx == 0.0 or ny == 0.0:
        return 0.0
    return dot / (nx * ny)


def naive_cosine_map(cells, direction, include_diagonal=True, cutoff=0.2):
    """Double-loop reimplementation of the cosine map over a list-of-lists."""
    n = len(cells)
    work = [row[:] for row in cells]
    if not include_diagonal:
        for i in range(n):
            work[i][i] = 0
    if direction == "cited":
        profiles = [[work[i][j] for i in range(n)] for j in range(n)]
    else:
        profiles = [row[:] for row in work]
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = naive_cosine(profiles[i], profiles[j])
            if value < cutoff:
                value = 0.0
            out[i][j] = out[j][i] = value
    return out


def naive_pearson(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    dx = [a - mx for a in x]
    dy = [b - my for b in y]
    num = sum(a * b for a, b in zip(dx, dy))
    den = math.sqrt(sum(a * a for a in dx) * sum(b * b for b in dy))
    return num / den


def naive_shortest_paths(lengths):
    """Floyd-Warshall over a dict {(i, j): length}; returns dict of dicts."""
    nodes = sorted({i for i, _ in lengths} | {j for _, j in lengths})
    dist = {i: {j: math.inf for j in nodes} for i in nodes}
    for i in nodes:
        dist[i][i] = 0.0
    for (i, j), length in lengths.items():
        dist[i][j] = min(dist[i][j], length)
        dist[j][i] = min(dist[j][i], length)
    for k in nodes:
        for i in nodes:
            for j in nodes:
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    return dist


def naive_spring_energy(positions, distances):
    """The layout energy, summed pair by pair with plain floats."""
    n = len(positions)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = distances[i][j]
            if math.isinf(d):
                continue
            r = math.dist(positions[i], positions[j])
            total += (r - d) ** 2 / d**2
    return total


def varimax_criterion(loadings):
    p = len(loadings)
    k = len(loadings[0])
    total = 0.0
    for j in range(k):
        col = [loadings[i][j] ** 2 for i in range(p)]
        total += sum(v * v for v in col) / p - (sum(col) / p) ** 2
    return total
