"""Sharded Monte Carlo rate estimation, plus the oracle cross-check harnesses.

Shards are independent chains with streams derived from (seed, shard). The
per-shard slope (t0(end) - t0(burn_in)) / n_steps estimates the rate; shard
independence is exact by construction, so the quoted standard error is the
plain shard standard deviation over sqrt(n_shards) with no autocorrelation
correction needed.  The inner loop keeps all shards in lockstep as numpy
vectors, drawing each shard's weights in the same order a scalar chain
would, so results are bit-reproducible and match the chain module stream
for stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import frontier_from_ladder
from .graph import (
    SOLVED,
    UNSOLVED,
    GraphFamily,
    WeightedLadder,
    classify,
    dijkstra_oracle,
    exp_samples,
    sample_ladder,
    shard_rng,
)

_CHUNK = 4096

_METHODS = ("frontier", "delta")


@dataclass
class RateEstimate:
    """A percolation rate tagged with how it was computed and how well."""

    family: GraphFamily
    method: str  # "exact" | "operator" | "monte-carlo"
    value: float
    std_error: float = 0.0
    n_steps: int = 0
    n_shards: int = 0
    seed: int = 0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("value must be finite")
        if (self.method == "monte-carlo") != (self.std_error > 0):
            raise ValueError("std_error must be positive exactly for monte-carlo estimates")

    def to_record(self) -> dict:
        """Plain dict for the JSON-lines results file."""
        return {
            "family": self.family.letters,
            "method": self.method,
            "value": float(self.value),
            "std_error": float(self.std_error),
            "n_steps": self.n_steps,
            "n_shards": self.n_shards,
            "seed": self.seed,
        }


def _run_shards(
    family: GraphFamily,
    n_steps: int,
    n_shards: int,
    burn_in: int,
    seed: int,
    method: str = "frontier",
    collect_every: int = 0,
):
    """Advance n_shards chains in lockstep for burn_in + n_steps layers.

    Returns per-shard slopes plus, when collect_every > 0, the post-burn-in
    (delta, lambda) samples thinned by that stride.  Weight draws per shard
    happen in chunks of row-major (step, edge) matrices, which is the same
    sequence a scalar per-layer loop would produce.
    """
    hv, hw, hx, hy, hz = family.flags
    if method == "delta" and family.letters != "XYZ":
        raise ValueError("the delta recursion is exact only for family XYZ")
    k = hv + hw + hx + hy + hz
    rngs = [shard_rng(seed, s) for s in range(n_shards)]
    if hz:
        gap = np.array([float(exp_samples(r)) for r in rngs])
    else:
        gap = np.full(n_shards, np.inf)
    total = np.zeros(n_shards)
    at_burn = np.zeros(n_shards)
    deltas: list[np.ndarray] = []
    lams: list[np.ndarray] = []
    inf = np.full(n_shards, np.inf)
    n_total = burn_in + n_steps
    done = 0
    E = None
    while done < n_total:
        c = min(_CHUNK, n_total - done)
        if E is None or E.shape[0] != c:
            E = np.empty((c, n_shards, k))
        for s, r in enumerate(rngs):
            E[:, s, :] = exp_samples(r, (c, k))
        j = 0
        col = {}
        for name, flag in zip("vwxyz", family.flags):
            if flag:
                col[name] = E[:, :, j]
                j += 1
        for t in range(c):
            if method == "delta":
                x, y, z = col["x"][t], col["y"][t], col["z"][t]
                lam = np.minimum(x, gap + y + z)
                gap = np.minimum(gap + y, x + z) - lam
            else:
                v = col["v"][t] if hv else inf
                wd = col["w"][t] if hw else inf
                x = col["x"][t] if hx else inf
                y = col["y"][t] if hy else inf
                z = col["z"][t] if hz else inf
                t0 = np.minimum(x, gap + wd)
                t1 = np.minimum(gap + y, v)
                z_eff = np.minimum(z, np.minimum(x + v, y + wd))
                lam = np.minimum(t0, t1 + z_eff)
                gap = np.minimum(t1, t0 + z_eff) - lam
            total += lam
            step = done + t + 1
            if step == burn_in:
                at_burn[:] = total
            if collect_every and step > burn_in and (step - burn_in) % collect_every == 0:
                deltas.append(gap.copy())
                lams.append(lam.copy())
        done += c
    slopes = (total - at_burn) / n_steps
    out = {"per_shard": slopes}
    if collect_every:
        out["deltas"] = np.concatenate(deltas)
        out["lams"] = np.concatenate(lams)
    return out


def estimate_chi(
    family: GraphFamily,
    n_steps: int,
    n_shards: int = 32,
    burn_in: int = 10_000,
    seed: int = 0,
    method: str = "frontier",
) -> RateEstimate:
    """Monte Carlo rate from independent sharded chains.

    n_steps counts post-burn-in layers per shard.  method picks the
    recursion: "frontier" (any nontrivial family) or "delta" (the gap
    recursion, family XYZ only); the two are independent implementations of
    the same law.  Identical arguments give a bit-identical estimate.
    """
    kind = classify(family)
    if kind not in (SOLVED, UNSOLVED):
        raise ValueError(
            f"family {family.letters or '(empty)'!r} is {kind}; rate estimation covers the six nontrivial families"
        )
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}")
    if n_steps < 10_000:
        raise ValueError("n_steps must be >= 10^4")
    if burn_in < 1_000:
        raise ValueError("burn_in must be >= 10^3")
    if n_shards < 2:
        raise ValueError("need at least 2 shards for a standard error")
    res = _run_shards(family, n_steps, n_shards, burn_in, seed, method=method)
    slopes = res["per_shard"]
    if not np.all(np.isfinite(slopes)):
        raise RuntimeError("degenerate shard: non-finite frontier time")
    return RateEstimate(
        family=family,
        method="monte-carlo",
        value=float(slopes.mean()),
        std_error=float(slopes.std(ddof=1) / math.sqrt(n_shards)),
        n_steps=n_steps,
        n_shards=n_shards,
        seed=seed,
    )


def collect_samples(
    family: GraphFamily,
    n_samples: int,
    n_shards: int = 32,
    burn_in: int = 10_000,
    seed: int = 0,
    thin: int = 3,
):
    """Post-burn-in (delta, lambda) draws for distributional checks.

    Thinning by a few steps knocks down the short autocorrelation of the
    chain, so n_samples draws carry close to n_samples of information in a
    histogram.  Returns (deltas, lambdas) arrays of length n_samples.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    per_shard = -(-n_samples // n_shards)
    res = _run_shards(
        family,
        per_shard * thin,
        n_shards,
        burn_in,
        seed,
        collect_every=thin,
    )
    return res["deltas"][:n_samples], res["lams"][:n_samples]


@dataclass
class RecursionReport:
    """Outcome of the frontier-vs-oracle equivalence run."""

    family: GraphFamily
    trials: int
    max_n: int
    failures: int
    max_discrepancy: float


def validate_recursion(
    family: GraphFamily,
    trials: int,
    max_n: int = 50,
    seed: int = 0,
    tol: float = 1e-9,
) -> RecursionReport:
    """Frontier recursion vs the Dijkstra oracle on random ladders.

    Each trial samples a ladder with uniformly random length n <= max_n and
    compares both frontier first-passage times; discrepancies above tol
    count as failures (reported, never raised).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    rng = shard_rng(seed, 999_331)
    failures = 0
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, max_n + 1))
        ladder_seed = int(rng.integers(0, 2**62))
        ladder = sample_ladder(family, n, ladder_seed)
        front = frontier_from_ladder(ladder)
        for got, want in (
            (front.d0, dijkstra_oracle(ladder, (n, 0))),
            (front.d1, dijkstra_oracle(ladder, (n, 1))),
        ):
            if math.isinf(got) and math.isinf(want):
                continue
            err = abs(got - want)
            worst = max(worst, err)
            if not err <= tol:
                failures += 1
    return RecursionReport(
        family=family, trials=trials, max_n=max_n, failures=failures, max_discrepancy=worst
    )


@dataclass
class SubadditivityReport:
    """Outcome of the split-path inequality probe."""

    family: GraphFamily
    trials: int
    n: int
    m: int
    violations: int
    max_excess: float  # largest d(0,n) - [d(0,m) + d(m,n)] seen; <= 0 when clean


def _truncated(ladder: WeightedLadder, m: int) -> WeightedLadder:
    return WeightedLadder(family=ladder.family, n=m, layers=ladder.layers[:m], z0=ladder.z0)


def _rerooted(ladder: WeightedLadder, m: int) -> WeightedLadder:
    """The sub-ladder on columns m..n, re-rooted at column m.

    Its column-0 rung is the original rung at column m, so paths confined to
    columns >= m are exactly the sub-ladder's paths.
    """
    if m == 0:
        return ladder
    z_at_m = ladder.layers[m - 1].z
    return WeightedLadder(
        family=ladder.family, n=ladder.n - m, layers=ladder.layers[m:], z0=z_at_m
    )


def subadditivity_probe(
    family: GraphFamily,
    trials: int,
    n: int,
    m: int,
    seed: int = 0,
    tol: float = 1e-9,
) -> SubadditivityReport:
    """Check d(0 -> n) <= d(0 -> m) + d(m -> n) on sampled ladders.

    Both right-hand terms restrict paths to their own column range (the
    split terms live on the truncated and re-rooted sub-ladders), so the
    inequality must hold path by path; any excess beyond tol is a
    violation.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = shard_rng(seed, 424_243)
    violations = 0
    max_excess = -math.inf
    for _ in range(trials):
        ladder = sample_ladder(family, max(n, 1), int(rng.integers(0, 2**62)))
        full = dijkstra_oracle(ladder, (n, 0))
        first = dijkstra_oracle(_truncated(ladder, m), (m, 0))
        second = dijkstra_oracle(_rerooted(ladder, m), (n - m, 0))
        excess = full - (first + second)
        max_excess = max(max_excess, excess)
        if excess > tol:
            violations += 1
    return SubadditivityReport(
        family=family,
        trials=trials,
        n=n,
        m=m,
        violations=violations,
        max_excess=max_excess,
    )
