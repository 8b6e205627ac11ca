"""Matplotlib figures written next to CLI reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STATUS_COLORS = {"VerifiedUpTo": "#2b8a3e", "RefutedAt": "#c92a2a", "Unchecked": "#868e96"}


def _figure(width=7.0, height=None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    # fixed metadata keeps reruns byte-stable
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_coefficients(series, path, title=""):
    """log10|c_n| for exact series, residues for modular ones."""
    fig, ax = _figure()
    n = np.arange(len(series))
    if series.ring.is_exact:
        vals = [math.log10(abs(v)) if v else float("nan") for v in series.tolist()]
        ax.plot(n, vals, lw=1.0, color="#1c7ed6")
        ax.set_ylabel(r"$\log_{10}|c_n|$")
    else:
        ax.scatter(n, series.coeffs, s=4, color="#1c7ed6")
        ax.set_ylabel(f"$c_n$ mod {series.ring.modulus}")
    ax.set_xlabel("$n$")
    ax.set_title(title)
    return _save(fig, path)


def plot_claims(claims, path, title=""):
    """Horizontal bars: number of progression indices tested per claim."""
    fig, ax = _figure(height=max(2.5, 0.35 * len(claims) + 1))
    names = [c.name for c in claims]
    y = np.arange(len(claims))
    ax.barh(y, [c.tested for c in claims], color=[STATUS_COLORS[c.status] for c in claims])
    ax.set_yticks(y, names)
    ax.invert_yaxis()
    ax.set_xlabel("indices tested")
    ax.set_title(title)
    return _save(fig, path)


def plot_scan(claims, a_max, moduli, path, title=""):
    """One panel per modulus; a filled cell at (a, b) marks a vanishing progression."""
    moduli = sorted(moduli)
    fig, axes = plt.subplots(1, len(moduli), figsize=(3.2 * len(moduli), 3.2), squeeze=False)
    for ax, m in zip(axes[0], moduli):
        grid = np.full((a_max, a_max), np.nan)
        for a in range(1, a_max + 1):
            grid[a - 1, :a] = 0
        for c in claims:
            if c.m == m:
                grid[c.a - 1, c.b] = 1
        ax.imshow(grid, origin="lower", cmap="Greens", vmin=0, vmax=1, interpolation="nearest")
        ax.set_title(f"mod {m}")
        ax.set_xlabel("b")
        ax.set_ylabel("a")
        ticks = np.arange(0, a_max, max(1, a_max // 6))
        ax.set_xticks(ticks, ticks)
        ax.set_yticks(ticks, ticks + 1)
    fig.suptitle(title)
    return _save(fig, path)


def plot_quadratic(reports, path, title=""):
    fig, ax = _figure()
    for sym, color, label in ((-1, "#1c7ed6", "(-3/p) = -1"), (1, "#f08c00", "(-3/p) = +1")):
        rs = [r for r in reports if r.legendre == sym]
        ax.scatter([r.p for r in rs], [len(r.solutions) for r in rs], s=12, color=color, label=label)
    ax.set_xlabel("p")
    ax.set_ylabel("solutions in box")
    ax.set_yscale("log")
    ax.legend(frameon=False)
    ax.set_title(title)
    return _save(fig, path)


def plot_identities(reports, path, title=""):
    fig, ax = _figure(height=max(2.5, 0.3 * len(reports) + 1))
    y = np.arange(len(reports))
    colors = ["#2b8a3e" if r.equal else "#c92a2a" for r in reports]
    ax.barh(y, [r.order if r.equal else r.mismatch for r in reports], color=colors)
    ax.set_yticks(y, [r.name for r in reports], fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("order verified")
    ax.set_title(title)
    return _save(fig, path)
