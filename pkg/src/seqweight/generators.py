"""Deterministic graph families and seeded random generators."""

from __future__ import annotations

import random
from itertools import combinations

from .errors import InvalidGraphError
from .graph import Graph, is_nice

DEFAULT_RETRIES = 1000


def cycle(n: int) -> Graph:
    """C_n with edge ``i`` joining ``i`` and ``i+1 mod n``."""
    if n < 3:
        raise InvalidGraphError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidGraphError("a path needs at least 1 vertex")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidGraphError("K_n needs n >= 1")
    return Graph(n, tuple(combinations(range(n), 2)))


def star(k: int) -> Graph:
    """K_{1,k}: centre 0 and leaves 1..k."""
    if k < 1:
        raise InvalidGraphError("a star needs at least one leaf")
    return Graph(k + 1, tuple((0, i) for i in range(1, k + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def random_regular(n: int, d: int, seed: int = 0, retries: int = DEFAULT_RETRIES) -> Graph:
    """Uniform-ish simple d-regular graph via the pairing model.

    Points are paired one random pair at a time; a pair that would create a
    loop or a repeated edge is rejected and redrawn, and the whole pairing
    restarts (up to ``retries`` times) only when no admissible pair is left.
    """
    if d < 0 or n < 1 or d >= n:
        raise InvalidGraphError(f"no {d}-regular graph on {n} vertices")
    if (n * d) % 2:
        raise InvalidGraphError("n*d must be even")
    rng = random.Random(seed)
    for _ in range(retries):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return Graph(n, tuple(edges))
    raise InvalidGraphError(f"pairing failed {retries} times for n={n}, d={d}")


def _try_pairing(n, d, rng):
    points = [v for v in range(n) for _ in range(d)]
    present = set()
    edges = []
    while points:
        for _ in range(50):
            i, j = rng.sample(range(len(points)), 2)
            u, v = points[i], points[j]
            if u != v and (min(u, v), max(u, v)) not in present:
                break
        else:
            # random draws keep failing; check admissible pairs exhaustively
            pairs = [
                (i, j)
                for i, j in combinations(range(len(points)), 2)
                if points[i] != points[j]
                and (min(points[i], points[j]), max(points[i], points[j])) not in present
            ]
            if not pairs:
                return None
            i, j = rng.choice(pairs)
            u, v = points[i], points[j]
        e = (min(u, v), max(u, v))
        present.add(e)
        edges.append(e)
        for idx in sorted((i, j), reverse=True):
            points[idx] = points[-1]
            points.pop()
    return sorted(edges)


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, tuple(pair for pair in combinations(range(n), 2) if rng.random() < p))


def random_nice(n: int, p: float, seed: int = 0, retries: int = DEFAULT_RETRIES) -> Graph:
    """G(n, p) conditioned on having no K2 component."""
    if n < 1 or not 0 <= p <= 1:
        raise InvalidGraphError("need n >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    for _ in range(retries):
        G = gnp(n, p, rng)
        if is_nice(G):
            return G
    raise InvalidGraphError(f"no nice G({n}, {p}) after {retries} draws")


def random_connected_nice(n: int, seed: int = 0, extra: float = 0.15) -> Graph:
    """Random spanning tree plus G(n, extra) edges; connected and nice for n >= 3."""
    if n < 3:
        raise InvalidGraphError("connected nice graphs need n >= 3")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for pair in combinations(range(n), 2):
        if rng.random() < extra:
            edges.add(pair)
    return Graph(n, tuple(sorted(edges)))


def random_multigraph(n: int, p: float, mu: int, seed: int = 0,
                      retries: int = DEFAULT_RETRIES) -> Graph:
    """Nice loopless multigraph: G(n, p) with each edge repeated 1..mu times."""
    if mu < 1:
        raise InvalidGraphError("mu must be >= 1")
    rng = random.Random(seed)
    for _ in range(retries):
        base = gnp(n, p, rng)
        if not is_nice(base):
            continue
        edges = []
        for e in base.edges:
            edges.extend([e] * rng.randint(1, mu))
        return Graph(n, tuple(edges), is_multigraph=True)
    raise InvalidGraphError(f"no nice multigraph after {retries} draws")


FAMILIES = {
    "cycle": ("n",),
    "path": ("n",),
    "complete": ("n",),
    "star": ("n",),
    "petersen": (),
    "random_regular": ("n", "d", "seed"),
    "random_nice": ("n", "p", "seed"),
    "random_multigraph": ("n", "p", "mu", "seed"),
}


def generate(family: str, **params) -> Graph:
    """Dispatch by family name; unknown keyword arguments are rejected."""
    builders = {
        "cycle": lambda n: cycle(n),
        "path": lambda n: path(n),
        "complete": lambda n: complete(n),
        "star": lambda n: star(n),
        "petersen": petersen,
        "random_regular": lambda n, d, seed=0: random_regular(n, d, seed),
        "random_nice": lambda n, p, seed=0: random_nice(n, p, seed),
        "random_multigraph": lambda n, p, mu, seed=0: random_multigraph(n, p, mu, seed),
    }
    if family not in builders:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(builders)}")
    return builders[family](**params)
