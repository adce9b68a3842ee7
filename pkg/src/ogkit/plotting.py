"""Matplotlib renderings of optiongraphs and congruence lattices.

Figures are written straight to files (PNG, PDF or SVG by extension) with the
non-interactive Agg backend; nothing here opens a window.
"""

from __future__ import annotations

import math
from collections.abc import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .congruence import Lattice  # noqa: E402
from .graph import Optiongraph  # noqa: E402

NODE_STYLE = dict(boxstyle="round,pad=0.3", fc="white", ec="black", lw=0.8)


def _circle_layout(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [
        (math.cos(math.pi / 2 - 2 * math.pi * k / n), math.sin(math.pi / 2 - 2 * math.pi * k / n))
        for k in range(n)
    ]


def plot_optiongraph(graph: Optiongraph, path, decorations: Mapping[int, str] | None = None,
                     title: str | None = None):
    """Draw positions on a circle; a decoration is printed under the label."""
    decorations = decorations or {}
    pos = _circle_layout(graph.n)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for p, q in graph.edges():
        (x0, y0), (x1, y1) = pos[p], pos[q]
        if p == q:
            ax.add_patch(plt.Circle((x0 * 1.18, y0 * 1.18 + (0.18 if graph.n == 1 else 0)),
                                    0.12, fill=False, lw=0.8))
            continue
        ax.add_patch(FancyArrowPatch((x0, y0), (x1, y1), arrowstyle="-|>", mutation_scale=12,
                                     shrinkA=14, shrinkB=14, lw=0.8,
                                     connectionstyle="arc3,rad=0.12"))
    for p, (x, y) in enumerate(pos):
        text = graph.labels[p]
        if p in decorations:
            text += "\n" + str(decorations[p])
        ax.text(x, y, text, ha="center", va="center", fontsize=9, bbox=NODE_STYLE, zorder=3)
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_lattice(lattice: Lattice, path, highlight=(), title: str | None = None):
    """Hasse diagram, coarser congruences higher; ``highlight`` indices are shaded."""
    n_pos = lattice.elements[0].graph.n
    rank = [n_pos - len(c.classes) for c in lattice.elements]
    levels: dict[int, list[int]] = {}
    for i, r in enumerate(rank):
        levels.setdefault(r, []).append(i)
    xy = {}
    for r, members in levels.items():
        for k, i in enumerate(members):
            xy[i] = (k - (len(members) - 1) / 2, r)
    fig, ax = plt.subplots(figsize=(5, 1.2 + 1.1 * len(levels)))
    for lo, hi in lattice.covers:
        ax.plot(*zip(xy[lo], xy[hi]), color="black", lw=0.8, zorder=1)
    shaded = set(highlight)
    for i, c in enumerate(lattice.elements):
        style = dict(NODE_STYLE, fc="#f5b97a" if i in shaded else "white")
        ax.text(*xy[i], str(c) or "∅", ha="center", va="center", fontsize=9, bbox=style, zorder=2)
    width = max(len(m) for m in levels.values())
    ax.set_xlim(-width / 2 - 0.5, width / 2 + 0.5)
    ax.set_ylim(min(rank) - 0.6, max(rank) + 0.6)
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
