"""File-output figure rendering for densities and rate tables.

Uses the Agg backend unconditionally: the CLI is headless and every figure
goes straight to disk next to its data file.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_density_figure(path, rho_closed, rho_power, eta) -> None:
    """Two panels: the stationary gap density (closed form vs operator
    fixed point) and the stationary increment density."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 3.6))
    ax1.plot(rho_closed.x, rho_closed.values, lw=1.8, label="closed form")
    ax1.plot(rho_power.x, rho_power.values, ls="--", lw=1.2, label="power iteration")
    ax1.set_xlabel("$d$")
    ax1.set_ylabel(r"$\rho_\infty(d)$")
    ax1.legend(frameon=False)
    ax2.plot(eta.x, eta.values, color="C2", lw=1.8)
    ax2.set_xlabel(r"$\ell$")
    ax2.set_ylabel(r"$\eta_\infty(\ell)$")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_rate_figure(path, estimates) -> None:
    """Rates by family: exact values as bars, Monte Carlo as dots with
    three-standard-error whiskers."""
    order: list[str] = []
    for est in estimates:
        if est.family.letters not in order:
            order.append(est.family.letters)
    pos = {letters: i for i, letters in enumerate(order)}
    fig, ax = plt.subplots(figsize=(7.4, 3.8))
    seen = set()
    for est in estimates:
        i = pos[est.family.letters]
        if est.method == "monte-carlo":
            label = "Monte Carlo $\\pm 3$ s.e." if "mc" not in seen else None
            seen.add("mc")
            ax.errorbar(
                [i], [est.value], yerr=[3 * est.std_error],
                fmt="o", color="C0", capsize=4, label=label,
            )
        else:
            label = est.method if est.method not in seen else None
            seen.add(est.method)
            ax.plot([i - 0.22, i + 0.22], [est.value] * 2, color="C3", lw=2, label=label)
    ax.set_xticks(range(len(order)))
    ax.set_xticklabels(order)
    ax.set_ylabel(r"$\chi$")
    ax.grid(alpha=0.3, axis="y")
    ax.legend(frameon=False, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
