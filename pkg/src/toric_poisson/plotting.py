"""Render moment-polytope figures with matplotlib (an optional dependency)."""

from __future__ import annotations

from pathlib import Path

from .moment import FigureData


def _pyplot():
    try:
        import matplotlib
    except ImportError as exc:
        raise RuntimeError("figure rendering needs matplotlib: pip install 'artifact[plot]'") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_figure(data: FigureData, path: str | Path) -> Path:
    """Draw the polytope, its median lines (n = 2) and the marked centroids; save to path."""
    plt = _pyplot()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4, 4) if data.n == 2 else (5, 1.6))
    marked = [tuple(float(x) for x in z.image) for z in data.marked]
    if data.n == 1:
        xs = [float(v[0]) for v in data.vertices]
        ax.plot([min(xs), max(xs)], [0, 0], color="black", lw=1.5)
        ax.plot([m[0] for m in marked], [0] * len(marked), "o", color="tab:red")
        ax.set_yticks([])
        ax.set_ylim(-0.5, 0.5)
    else:
        ring = [tuple(float(x) for x in v) for v in _planar_ring(data.vertices)]
        ax.fill(*zip(*ring), facecolor="0.93", edgecolor="black", lw=1.5)
        for name, _, ends in data.lines:
            (x0, y0), (x1, y1) = [tuple(float(c) for c in e) for e in ends]
            ax.plot([x0, x1], [y0, y1], ls="--", lw=1, color="tab:blue")
            ax.annotate(name, (x1, y1), textcoords="offset points", xytext=(3, 3), fontsize=8)
        ax.plot([m[0] for m in marked], [m[1] for m in marked], "o", color="tab:red")
        ax.set_aspect("equal")
    ax.set_title(f"n = {data.n}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _planar_ring(vertices):
    """Vertices of a convex polygon in counter-clockwise order."""
    import math

    cx = sum(float(v[0]) for v in vertices) / len(vertices)
    cy = sum(float(v[1]) for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: math.atan2(float(v[1]) - cy, float(v[0]) - cx))
