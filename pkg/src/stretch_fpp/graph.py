"""Width-two stretch graphs: edge families, weight sampling, exact shortest paths.

Vertices live on {0, ..., n} x {0, 1}.  Five translation-invariant edge
families may be present:

    v   up diagonals    (i, 0) -- (i+1, 1)
    w   down diagonals  (i, 1) -- (i+1, 0)
    x   bottom rails    (i, 0) -- (i+1, 0)
    y   top rails       (i, 1) -- (i+1, 1)
    z   rungs           (i, 0) -- (i, 1), at every column 0 <= i <= n

Every present edge carries an independent Exp(1) weight.  The only
first-passage times of interest start at (0, 0).
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field

import numpy as np

LETTERS = "VWXYZ"
EDGE_NAMES = "vwxyz"

TRIVIAL = "trivial"
SOLVED = "nontrivial-solved"
UNSOLVED = "nontrivial-unsolved"
DISCONNECTED = "disconnected"

SOLVED_FAMILIES = (frozenset("XYZ"), frozenset("VWXY"), frozenset("WXYZ"))
UNSOLVED_FAMILIES = (frozenset("VWX"), frozenset("VWXZ"), frozenset("VWXYZ"))


@dataclass(frozen=True)
class GraphFamily:
    """Presence flags for the five edge families."""

    has_v: bool = False
    has_w: bool = False
    has_x: bool = False
    has_y: bool = False
    has_z: bool = False

    @classmethod
    def from_letters(cls, letters: str) -> "GraphFamily":
        """Build a family from a letter string like ``"XYZ"``.

        Order and case are ignored; repeated or unknown letters are
        rejected so a typo never silently drops an edge family.
        """
        seen: set[str] = set()
        for ch in letters.upper():
            if ch not in LETTERS:
                raise ValueError(f"unknown edge family {ch!r}; expected letters from {LETTERS}")
            if ch in seen:
                raise ValueError(f"repeated edge family {ch!r}")
            seen.add(ch)
        return cls(*(ch in seen for ch in LETTERS))

    @property
    def flags(self) -> tuple[bool, bool, bool, bool, bool]:
        return (self.has_v, self.has_w, self.has_x, self.has_y, self.has_z)

    @property
    def letters(self) -> str:
        """Canonical alphabetical letter form, e.g. ``"XYZ"``."""
        return "".join(ch for ch, f in zip(LETTERS, self.flags) if f)

    @property
    def edge_names(self) -> tuple[str, ...]:
        """Lower-case names of the present per-layer edges, in draw order."""
        return tuple(nm for nm, f in zip(EDGE_NAMES, self.flags) if f)

    def __str__(self) -> str:
        return self.letters or "(empty)"


@dataclass
class LayerWeights:
    """Sampled weights of the edges entering one column; None when absent."""

    v: float | None = None
    w: float | None = None
    x: float | None = None
    y: float | None = None
    z: float | None = None


@dataclass
class WeightedLadder:
    """A finite sampled ladder: n layers of weights plus the column-0 rung."""

    family: GraphFamily
    n: int
    layers: list[LayerWeights] = field(default_factory=list)
    z0: float | None = None

    def to_json(self) -> str:
        """Serialize to the JSON debug format (per-family weight arrays).

        Meant for reproducing failures, not as a stable interchange format.
        """
        doc: dict = {"family": self.family.letters, "n": self.n, "z0": self.z0}
        for nm in EDGE_NAMES:
            if getattr(self.family, f"has_{nm}"):
                doc[nm] = [getattr(layer, nm) for layer in self.layers]
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "WeightedLadder":
        doc = json.loads(text)
        family = GraphFamily.from_letters(doc["family"])
        n = int(doc["n"])
        layers = [
            LayerWeights(**{nm: doc[nm][i] for nm in family.edge_names})
            for i in range(n)
        ]
        return cls(family=family, n=n, layers=layers, z0=doc.get("z0"))


def shard_rng(seed: int, shard: int = 0) -> np.random.Generator:
    """Counter-based generator for the (seed, shard) pair.

    Philox is counter based, so shard streams derived from the same seed are
    reproducible and independent: same pair, same stream, on any platform.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, shard])))


def exp_samples(rng: np.random.Generator, size=None):
    """Exp(1) draws by inverse CDF.

    Uses -log(1 - U) with U uniform on [0, 1), so the argument of log never
    hits zero and results are reproducible for a fixed stream (no rejection
    steps, one uniform per sample).
    """
    return -np.log1p(-rng.random(size))


def sample_ladder(family: GraphFamily, n: int, seed: int) -> WeightedLadder:
    """Sample all present edge weights of an n-layer ladder.

    Deterministic for a fixed seed.  Draw order is the column-0 rung first,
    then layer by layer the present edges in v, w, x, y, z order; the chain
    and Monte Carlo modules follow the same order so a streamed run visits
    exactly this ladder.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = shard_rng(seed)
    z0 = float(exp_samples(rng)) if family.has_z else None
    names = family.edge_names
    draws = exp_samples(rng, (n, len(names)))
    layers = [
        LayerWeights(**{nm: float(draws[i, j]) for j, nm in enumerate(names)})
        for i in range(n)
    ]
    return WeightedLadder(family=family, n=n, layers=layers, z0=z0)


def _adjacency(ladder: WeightedLadder) -> dict:
    adj: dict[tuple[int, int], list] = {}

    def add(u, v, wt):
        if wt is None:
            return
        adj.setdefault(u, []).append((v, wt))
        adj.setdefault(v, []).append((u, wt))

    add((0, 0), (0, 1), ladder.z0)
    for k, layer in enumerate(ladder.layers):
        add((k, 0), (k + 1, 0), layer.x)
        add((k, 1), (k + 1, 1), layer.y)
        add((k, 0), (k + 1, 1), layer.v)
        add((k, 1), (k + 1, 0), layer.w)
        add((k + 1, 0), (k + 1, 1), layer.z)
    return adj


def dijkstra_oracle(ladder: WeightedLadder, target: tuple[int, int]) -> float:
    """Exact first-passage time from (0, 0) to target; math.inf if unreachable.

    The reference implementation the fast frontier recursion is validated
    against.  Heap entries are keyed (distance, column, row) so expansion
    order is deterministic even under exact ties.
    """
    col, row = target
    if not (0 <= col <= ladder.n) or row not in (0, 1):
        raise ValueError(f"target {target} outside the ladder")
    adj = _adjacency(ladder)
    dist: dict[tuple[int, int], float] = {(0, 0): 0.0}
    heap: list[tuple[float, int, int]] = [(0.0, 0, 0)]
    done: set[tuple[int, int]] = set()
    while heap:
        d, c, r = heapq.heappop(heap)
        u = (c, r)
        if u in done:
            continue
        done.add(u)
        if u == target:
            return d
        for v, wt in adj.get(u, ()):
            nd = d + wt
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v[0], v[1]))
    return dist.get(target, math.inf)


def _reaches_bottom(family: GraphFamily, n: int) -> bool:
    """Is (n, 0) reachable from (0, 0) on the unweighted presence graph?"""
    ladder = WeightedLadder(
        family=family,
        n=n,
        layers=[
            LayerWeights(**{nm: 1.0 for nm in family.edge_names})
            for _ in range(n)
        ],
        z0=1.0 if family.has_z else None,
    )
    return math.isfinite(dijkstra_oracle(ladder, (n, 0)))


def classify(family: GraphFamily) -> str:
    """Sort a family into trivial / nontrivial-solved / nontrivial-unsolved /
    disconnected.

    The six nontrivial families are fixed lists.  Everything else is decided
    by reachability of the bottom-right vertex: the set of rows reachable at
    a column evolves under a monotone map on subsets of {0, 1}, whose only
    possible cycle has period two, so probing depths 8 and 9 settles
    reachability for arbitrarily large n (this also covers families such as
    two bare diagonals that connect only every other column).
    """
    fam = frozenset(family.letters)
    if fam in SOLVED_FAMILIES:
        return SOLVED
    if fam in UNSOLVED_FAMILIES:
        return UNSOLVED
    if _reaches_bottom(family, 8) or _reaches_bottom(family, 9):
        return TRIVIAL
    return DISCONNECTED
