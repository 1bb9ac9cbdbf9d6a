"""Kernels, stationary density, and the rate constant for rails plus rungs.

For the family {X, Y, Z} the frontier gap delta_n is a Markov chain.  This
module evaluates its transition kernel K(delta, d) and the increment kernel
Q(delta, l), the stationary gap density rho_inf (closed form and by
transfer-operator power iteration), the stationary increment density
eta_inf, and the rate chi = E[Lambda] both in closed form and by numerical
integration.  Everything is plain numpy on uniform grids; scipy supplies
adaptive quadrature for the certification helpers only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .bessel import bessel_j
from .graph import GraphFamily

_SQRT2 = math.sqrt(2.0)

_MAX_POWER_ITERATIONS = 100_000

# Integration window for the certification quadratures: every kernel decays
# at least like e^{-|t|}, so the mass beyond +-40 is below 1e-17.
_QUAD_SPAN = 40.0


def _as_array_pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a, b


def _maybe_scalar(out):
    return float(out) if out.ndim == 0 else out


def kernel_k(delta, d):
    """Transition kernel of the gap chain: density of the new gap at d.

    Five branches split on the signs of d and d - delta; the d = 0 line is a
    measure-zero case pinned to e^{-|delta|}.  Broadcasts over numpy inputs.
    """
    delta, d = _as_array_pair(delta, d)
    out = np.exp(-np.abs(d)) * np.where(
        d < 0,
        np.where(delta <= d, 1.0, np.exp(-(delta - d))),
        np.where(
            d == 0,
            np.exp(-np.abs(delta)),
            np.where(delta <= d, np.exp(-(d - delta)), 1.0),
        ),
    )
    return _maybe_scalar(out)


def _g1(delta, d):
    neg = d < 0
    r = np.where(
        neg,
        np.where(
            delta <= d,
            np.exp(delta) * (1 + 2 * (d - delta)),
            np.exp(2 * d - delta),
        ),
        np.where(
            delta <= 0,
            np.exp(delta) * (2 - 2 * delta - np.exp(-2 * d)),
            np.where(
                delta <= d,
                np.exp(-delta) * (2 + 2 * delta - np.exp(-2 * (d - delta))),
                np.exp(-delta) * (1 + 2 * d),
            ),
        ),
    )
    return 0.25 * r


def _g2(delta, d):
    r = np.where(
        delta <= 0,
        np.exp(delta) * (1 - np.exp(-2 * d)),
        np.where(
            delta <= d,
            4 - np.exp(-delta) * (3 + np.exp(-2 * (d - delta)) + 2 * delta),
            4 - 4 * np.exp(-d) - 2 * d * np.exp(-delta),
        ),
    )
    return 0.25 * np.where(d >= 0, r, 0.0)


def _g3(delta, d):
    neg = d < 0
    r = np.where(
        neg,
        np.where(
            delta <= d,
            4 * np.exp(d) + np.exp(delta) * (-2 * (d - delta) - 3),
            np.exp(2 * d - delta),
        ),
        np.where(
            delta <= 0,
            4 + np.exp(delta) * (2 * delta - 3),
            np.exp(-delta),
        ),
    )
    return 0.25 * r


_G_TABLES = {1: _g1, 2: _g2, 3: _g3}


def kernel_g(i: int, delta, d):
    """Joint law pieces behind K: P(event_i, new gap <= d | old gap = delta).

    Conditioned on the old gap delta and the next column's Exp(1) triple
    (X, Y, Z), the new gap forms in exactly one of three disjoint ways:

        1. no path crosses the new rung     (gap = delta + Y - X)
        2. the top vertex is reached via it (gap = +Z)
        3. the bottom vertex is reached     (gap = -Z)

    Each case table is the exact integral of its event region; the
    derivative reconstruction K = d(G1+G2+G3)/dd and direct simulation of
    the three events certify every branch (see the density tests).
    """
    if i not in _G_TABLES:
        raise ValueError("i must be 1, 2 or 3")
    delta, d = _as_array_pair(delta, d)
    return _maybe_scalar(_G_TABLES[i](delta, d))


def kernel_sum_derivative_check(delta: float, d: float, step: float = 1e-5) -> float:
    """|central difference in d of (G1+G2+G3) - K(delta, d)|.

    Meaningful away from the kink points d = 0 and d = delta, where the
    distribution functions are continuous but not differentiable.
    """
    up = sum(kernel_g(i, delta, d + step) for i in (1, 2, 3))
    dn = sum(kernel_g(i, delta, d - step) for i in (1, 2, 3))
    return abs((up - dn) / (2 * step) - kernel_k(delta, d))


def kernel_q(delta, l):
    """Increment kernel: density of Lambda at l given the old gap delta.

    Lambda = min(X, delta + Y + Z) can be negative when delta is, hence the
    support on l < 0.
    """
    delta, l = _as_array_pair(delta, l)
    r = np.where(
        l < 0,
        np.where(delta <= l, np.exp(delta) * (l - delta), 0.0),
        np.where(delta <= l, np.exp(-(l - delta)) * (1 + 2 * (l - delta)), 1.0),
    )
    return _maybe_scalar(np.exp(-l) * r)


def _p1(delta, l):
    r = np.where(
        delta <= 0,
        0.25 * np.exp(-2 * l + delta) * (np.exp(2 * l) * (3 - 2 * delta) - 3 - 2 * (l - delta)),
        np.where(
            delta <= l,
            0.25 * (4 - np.exp(-delta) - np.exp(-2 * l + delta) * (2 * (l - delta) + 3)),
            1 - np.exp(-l),
        ),
    )
    return np.where(l >= 0, r, 0.0)


def _p2(delta, l):
    return np.where(
        l < 0,
        np.where(delta <= l, 1 - np.exp(delta - l) * (1 + l - delta), 0.0),
        np.where(
            delta <= 0,
            1 - 0.25 * np.exp(delta) * (3 - 2 * delta + np.exp(-2 * l) * (1 + 2 * (l - delta))),
            np.where(
                delta <= l,
                0.25 * np.exp(-2 * l - delta) * (np.exp(2 * l) - np.exp(2 * delta) * (1 + 2 * (l - delta))),
                0.0,
            ),
        ),
    )


_P_TABLES = {1: _p1, 2: _p2}


def kernel_p(i: int, delta, l):
    """Distribution pieces behind Q: the two ways the increment can form.

    1. the bottom rail wins:  P(X <= delta + Y + Z, X <= l)
    2. the top detour wins:   P(X >= delta + Y + Z, delta + Y + Z <= l)

    As with the G tables, each branch is the exact integral of its event
    region, certified by Q = d(P1+P2)/dl and direct simulation.
    """
    if i not in _P_TABLES:
        raise ValueError("i must be 1 or 2")
    delta, l = _as_array_pair(delta, l)
    return _maybe_scalar(_P_TABLES[i](delta, l))


def q_from_p_check(delta: float, l: float, step: float = 1e-5) -> float:
    """|central difference in l of (P1+P2) - Q(delta, l)|, away from l in {0, delta}."""
    up = kernel_p(1, delta, l + step) + kernel_p(2, delta, l + step)
    dn = kernel_p(1, delta, l - step) + kernel_p(2, delta, l - step)
    return abs((up - dn) / (2 * step) - kernel_q(delta, l))


def inner_mean(delta):
    """Closed form of the conditional mean integral(l Q(delta, l) dl)."""
    delta = np.asarray(delta, dtype=float)
    out = 0.25 * np.where(
        delta < 0,
        8 + 4 * delta - np.exp(delta) * (5 - 2 * delta),
        4 - np.exp(-delta),
    )
    return _maybe_scalar(out)


def kernel_mass(kind: str, delta: float) -> float:
    """Integral of K(delta, .) or Q(delta, .) over the line, by adaptive
    quadrature split at the kink abscissae 0 and delta (transition kernels
    must integrate to one; this is the certification hook)."""
    if kind == "k":
        fn = kernel_k
    elif kind == "q":
        fn = kernel_q
    else:
        raise ValueError("kind must be 'k' or 'q'")
    edges = sorted({-_QUAD_SPAN, 0.0, float(delta), _QUAD_SPAN})
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b > a:
            total += quad(lambda t: float(fn(delta, t)), a, b, limit=200)[0]
    return total


@dataclass
class DensityGrid:
    """A density sampled on a uniform grid over [lo, hi]."""

    lo: float
    hi: float
    m: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.m,):
            raise ValueError(f"expected {self.m} values, got shape {self.values.shape}")
        if self.m < 2 or not self.hi > self.lo:
            raise ValueError("need at least two points and hi > lo")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.m)

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.m - 1)

    @property
    def weights(self) -> np.ndarray:
        return _trapezoid_weights(self.m, self.h)

    def integral(self) -> float:
        return float(self.weights @ self.values)

    def mean(self) -> float:
        return float(self.weights @ (self.values * self.x))

    def normalized(self) -> "DensityGrid":
        return DensityGrid(self.lo, self.hi, self.m, self.values / self.integral())


def _trapezoid_weights(m: int, h: float) -> np.ndarray:
    w = np.full(m, h)
    w[0] = w[-1] = 0.5 * h
    return w


def stationary_closed_form(d):
    """Closed form of the stationary gap density.

    rho_inf(d) = e^{-3|d|/2} J1(2 e^{-|d|/2}) / (2 J2(2)); even in d and
    integrating to one.
    """
    d = np.asarray(d, dtype=float)
    a = np.abs(d).ravel()
    j1 = np.fromiter(
        (bessel_j(1, 2.0 * math.exp(-0.5 * t)) for t in a),
        dtype=float,
        count=a.size,
    )
    out = np.exp(-1.5 * np.abs(d)) * j1.reshape(d.shape) / (2.0 * bessel_j(2, 2.0))
    return _maybe_scalar(out)


def _nearest_node(grid: np.ndarray, value: float = 0.0) -> int:
    """Index of the grid node at `value`, or -1 when no node sits there.

    Matches by distance below a quarter spacing rather than exact equality:
    grids built by stepping from a nonzero endpoint put the zero node a few
    ulps off.
    """
    j = int(np.argmin(np.abs(grid - value)))
    h = grid[1] - grid[0]
    return j if abs(grid[j] - value) < 0.25 * h else -1


def transition_matrix(x: np.ndarray) -> np.ndarray:
    """Kernel samples M[i, j] = K(x_i, x_j) ready for trapezoid contraction.

    K jumps in d across d = 0.  kernel_k's value on that line is a
    measure-zero convention, fine pointwise but wrong as a quadrature
    sample: a trapezoid column straddling a jump must carry the midpoint of
    the one-sided limits or the discrete fixed point picks up an O(1) error
    at that node.  Both limits average to (1 + e^{-|delta|}) / 2.
    """
    M = kernel_k(x[:, None], x[None, :])
    j0 = _nearest_node(x)
    if j0 >= 0:
        M[:, j0] = 0.5 * (1.0 + np.exp(-np.abs(x)))
    return M


def lambda_matrix(x: np.ndarray, lx: np.ndarray) -> np.ndarray:
    """Increment-kernel samples Q[i, j] = Q(x_i, lx_j), jump-corrected.

    Q jumps in l across l = 0; as in transition_matrix, the column at the
    jump node takes the midpoint of the one-sided limits.
    """
    M = kernel_q(x[:, None], lx[None, :])
    j0 = _nearest_node(lx)
    if j0 >= 0:
        lo = np.where(x < 0, np.exp(x) * (-x), 0.0)
        hi = np.where(x <= 0, np.exp(x) * (1 - 2 * x), 1.0)
        M[:, j0] = 0.5 * (lo + hi)
    return M


def stationary_by_power_iteration(
    hi: float = 10.0,
    m: int = 2001,
    tol: float = 1e-10,
    init: str = "exp",
    max_iterations: int = _MAX_POWER_ITERATIONS,
) -> DensityGrid:
    """Fixed point of the discretized transfer operator on [-hi, hi].

    Iterates rho <- normalize(integral rho(delta) K(delta, .) d delta) with
    the trapezoid rule until the L1 change drops below tol.  init selects
    the starting density: "exp" for the Exp(1) law of the initial gap,
    "uniform" for uniform on [-1, 1]; both converge to the same fixed point
    since the kernel is strictly positive.
    """
    if hi < 8:
        raise ValueError("hi must be >= 8 (tail mass beyond |d| = 8 is below 1e-5)")
    if m < 801:
        raise ValueError("m must be >= 801")
    x = np.linspace(-hi, hi, m)
    w = _trapezoid_weights(m, x[1] - x[0])
    M = transition_matrix(x)
    if init == "exp":
        rho = np.exp(-np.clip(x, 0.0, None)) * (x >= 0)
    elif init == "uniform":
        rho = ((x >= -1.0) & (x <= 1.0)).astype(float)
    else:
        raise ValueError("init must be 'exp' or 'uniform'")
    rho = rho / (w @ rho)
    for _ in range(max_iterations):
        new = (w * rho) @ M
        new /= w @ new
        change = w @ np.abs(new - rho)
        rho = new
        if change < tol:
            return DensityGrid(lo=-hi, hi=hi, m=m, values=rho)
    raise RuntimeError(
        f"power iteration did not converge within {max_iterations} iterations; "
        "the operator is strictly positive and contracting, so this signals a "
        "kernel implementation bug"
    )


def lambda_density(rho: DensityGrid, lo: float = -8.0, hi: float = 12.0) -> DensityGrid:
    """Stationary increment density eta(l) = integral rho(delta) Q(delta, l).

    The l-grid reuses rho's spacing and covers [lo, hi]; the result is
    renormalized so its trapezoid integral is exactly one (the raw integral
    differs only by discretization residue).
    """
    if abs(rho.integral() - 1.0) > 1e-8:
        raise ValueError("rho must be normalized")
    h = rho.h
    npts = int(math.ceil((hi - lo) / h - 1e-9)) + 1
    top = lo + h * (npts - 1)
    lx = np.linspace(lo, top, npts)
    eta = (rho.weights * rho.values) @ lambda_matrix(rho.x, lx)
    grid = DensityGrid(lo=lo, hi=top, m=npts, values=eta)
    return grid.normalized()


def chi_exact(family: GraphFamily) -> float:
    """Closed-form rate for the three solved families."""
    letters = family.letters
    if letters == "XYZ":
        return 1.5 - bessel_j(1, 2.0) / (2.0 * bessel_j(2, 2.0))
    if letters == "VWXY":
        return 0.75 - bessel_j(0, _SQRT2) / (2.0 * _SQRT2 * bessel_j(1, _SQRT2))
    if letters == "WXYZ":
        t = math.tan(1.0)
        return (2.0 * t - 2.0) / (2.0 * t - 1.0)
    raise ValueError(f"no closed form for family {letters or '(empty)'!r}")


def chi_by_expectation(rho: DensityGrid) -> float:
    """Rate as the stationary mean of the increment:
    chi = integral rho(delta) inner_mean(delta) d delta by the trapezoid rule."""
    if rho.hi < 10:
        raise ValueError("rho grid must extend to |d| >= 10")
    if abs(rho.integral() - 1.0) > 1e-8:
        raise ValueError("rho must be normalized")
    return float(rho.weights @ (rho.values * inner_mean(rho.x)))


def ode_residual(d, step: float = 1e-3):
    """Residual of the second-order ODE the closed-form density satisfies.

    For d < 0: rho'' - 3 rho' + (2 + e^d) rho; for d > 0 the mirrored
    equation with the drift sign flipped.  Derivatives by five-point central
    differences with the given step; keep the stencil (|d| > 2 * step) away
    from the kink at 0.
    """
    d = np.asarray(d, dtype=float)
    f = stationary_closed_form
    s = step
    d2 = (-f(d + 2 * s) + 16 * f(d + s) - 30 * f(d) + 16 * f(d - s) - f(d - 2 * s)) / (12 * s * s)
    d1 = (-f(d + 2 * s) + 8 * f(d + s) - 8 * f(d - s) + f(d - 2 * s)) / (12 * s)
    drift = np.where(d < 0, 3.0, -3.0)
    out = d2 - drift * d1 + (2.0 + np.exp(-np.abs(d))) * f(d)
    return _maybe_scalar(np.abs(out))


def integral_equation_residual(d: float) -> float:
    """|rho_inf(d) - integral rho_inf(delta) K(delta, d) d delta|.

    The stationarity identity, checked by adaptive quadrature with the
    integrand split at its kinks (delta = 0 from the density, delta = d
    from the kernel).
    """
    edges = sorted({-_QUAD_SPAN, 0.0, float(d), _QUAD_SPAN})
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b > a:
            total += quad(
                lambda t: float(stationary_closed_form(t)) * float(kernel_k(t, d)),
                a,
                b,
                limit=200,
            )[0]
    return abs(total - float(stationary_closed_form(d)))
