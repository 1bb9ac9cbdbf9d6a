"""Frontier recursions: O(1)-per-layer growth of first-passage times.

Two recursions live here.  ``delta_step`` is the chain for the
rails-plus-rungs family {X, Y, Z}: the state is the gap delta = l' - l
between the first-passage times to the top and bottom frontier vertices,
and the increment Lambda = l_n - l_{n-1} follows from the same minimum.
``generic_step`` extends the idea to every family by tracking both frontier
times, with +inf standing in for unreachable vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .graph import GraphFamily, LayerWeights, WeightedLadder, exp_samples, shard_rng

INF = math.inf

_CHUNK = 4096


@dataclass
class DeltaState:
    """State of the {X, Y, Z} chain: delta = l' - l, plus the running l.

    delta stays O(1) while l grows linearly, so keeping the pair (l, delta)
    instead of (l, l') avoids ever subtracting two large nearly equal
    totals.
    """

    delta: float
    l: float


def delta_init(z0: float) -> DeltaState:
    """Initial state from the column-0 rung: delta = z0, l = 0.

    With z0 ~ Exp(1) the initial gap is Exp(1) distributed, the law the
    stationary analysis starts from.
    """
    if z0 < 0:
        raise ValueError("z0 must be nonnegative")
    return DeltaState(delta=float(z0), l=0.0)


def delta_step(state: DeltaState, w: LayerWeights) -> DeltaState:
    """One column of the {X, Y, Z} recursion.

    The increment lam = min(x, delta + y + z) is how much the bottom
    frontier time grows; the new gap is min(delta + y, x + z) - lam.
    """
    if w.x is None or w.y is None or w.z is None:
        raise ValueError("delta_step needs x, y and z weights")
    lam = min(w.x, state.delta + w.y + w.z)
    new_delta = min(state.delta + w.y, w.x + w.z) - lam
    return DeltaState(delta=new_delta, l=state.l + lam)


@dataclass
class GenericFrontier:
    """First-passage times to the two frontier vertices (n, 0) and (n, 1).

    Stored as the bottom time plus the top-minus-bottom gap, for the same
    stability reason as DeltaState.  gap = +inf encodes an unreachable top
    vertex; arithmetic saturates rather than erroring.  The bottom vertex is
    assumed reachable at every column, which holds for all six nontrivial
    families (and for any family containing bottom rails).
    """

    base: float
    gap: float

    @property
    def d0(self) -> float:
        return self.base

    @property
    def d1(self) -> float:
        return self.base + self.gap


def frontier_init(family: GraphFamily, z0: float | None) -> GenericFrontier:
    """Frontier at column 0: d0 = 0, d1 = z0 when rungs exist, else +inf."""
    gap = float(z0) if (family.has_z and z0 is not None) else INF
    return GenericFrontier(base=0.0, gap=gap)


def generic_step(front: GenericFrontier, w: LayerWeights, family: GraphFamily) -> GenericFrontier:
    """Advance the frontier by one column.

    Reach the new bottom vertex along a bottom rail or a down diagonal, the
    new top vertex along a top rail or an up diagonal, then relax across the
    new column's effective rung.  A shortest path may also hop between the
    two new vertices through the previous column (back along one new edge,
    across, out along the other), so the effective rung is

        z_eff = min(z, x + v, y + w)

    over present edges.  Without the two detour terms the update misses
    genuine shortest paths whenever both diagonals are present.  Absent
    edges enter as +inf; the family argument is carried for symmetry with
    the rest of the API (presence is visible from the weights themselves).
    """
    v = w.v if w.v is not None else INF
    wd = w.w if w.w is not None else INF
    x = w.x if w.x is not None else INF
    y = w.y if w.y is not None else INF
    z = w.z if w.z is not None else INF
    g = front.gap
    t0 = min(x, g + wd)
    t1 = min(g + y, v)
    z_eff = min(z, x + v, y + wd)
    a = min(t0, t1 + z_eff)
    b = min(t1, t0 + z_eff)
    gap = INF if (math.isinf(a) and math.isinf(b)) else b - a
    return GenericFrontier(base=front.base + a, gap=gap)


def frontier_from_ladder(ladder: WeightedLadder) -> GenericFrontier:
    """Run the generic recursion over a materialized ladder."""
    front = frontier_init(ladder.family, ladder.z0)
    for w in ladder.layers:
        front = generic_step(front, w, ladder.family)
    return front


def run_chain(family: GraphFamily, n: int, seed: int) -> Iterator[tuple[float, float]]:
    """Stream (lambda_k, delta_k) for k = 1..n without storing the ladder.

    lambda_k is the growth of the bottom frontier time at column k and
    delta_k the top-minus-bottom gap after the step.  Draws follow
    sample_ladder's order, so the chain driven by seed s walks exactly the
    ladder sample_ladder(family, n, s) describes.  Draws are chunked for
    speed but memory stays O(1) in n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = shard_rng(seed)
    front = frontier_init(family, float(exp_samples(rng)) if family.has_z else None)
    names = family.edge_names
    k = len(names)
    done = 0
    while done < n:
        c = min(_CHUNK, n - done)
        draws = exp_samples(rng, (c, k))
        for t in range(c):
            w = LayerWeights(**{nm: draws[t, j] for j, nm in enumerate(names)})
            new = generic_step(front, w, family)
            yield new.base - front.base, new.gap
            front = new
        done += c


def trajectory_csv(family: GraphFamily, n: int, seed: int, path) -> None:
    """Dump a chain trajectory as CSV rows (n, lambda, delta).

    Debug/histogram helper behind a CLI flag; floats carry 15 significant
    digits.
    """
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("n,lambda,delta\n")
        for i, (lam, delta) in enumerate(run_chain(family, n, seed), start=1):
            fh.write(f"{i},{lam:.15g},{delta:.15g}\n")
