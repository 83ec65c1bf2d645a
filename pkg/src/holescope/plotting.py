"""Static figures: straight-line drawings and count-versus-n tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .drawing import Drawing, DrawingError  # noqa: E402

# fixed metadata keeps svg output byte-stable across runs
_SVG_META = {"Date": None, "Creator": None}
plt.rcParams["svg.hashsalt"] = "holescope"


def _save(fig, path) -> None:
    path = str(path)
    meta = _SVG_META if path.endswith(".svg") else None
    fig.savefig(path, metadata=meta, bbox_inches="tight")
    plt.close(fig)


def draw_straight_line(d: Drawing, path, highlight=(), title: str | None = None) -> None:
    """Render a geometric drawing; ``highlight`` is a vertex cycle drawn on top."""
    if d.points is None:
        raise DrawingError("no coordinates")
    pts = {v: d.points[v - 1] for v in d.vertices}
    fig, ax = plt.subplots(figsize=(5, 5))
    for a in d.vertices:
        for b in range(a + 1, d.n + 1):
            (x1, y1), (x2, y2) = pts[a], pts[b]
            ax.plot([x1, x2], [y1, y2], color="#9aa5b1", linewidth=0.6, zorder=1)
    cyc = list(highlight)
    if cyc:
        loop = cyc + cyc[:1]
        ax.plot([pts[v][0] for v in loop], [pts[v][1] for v in loop],
                color="#c0392b", linewidth=2.0, zorder=2)
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    ax.scatter(xs, ys, s=36, color="#1f3b57", zorder=3)
    for v, (x, y) in pts.items():
        ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(title or d.label, fontsize=10)
    _save(fig, path)


def plot_census(rows: list[dict], x: str, y: str, path, title: str = "") -> None:
    """Line plot of one census column against n."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([r[x] for r in rows], [r[y] for r in rows], marker="o", color="#1f3b57")
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title, fontsize=10)
    _save(fig, path)


def plot_verdicts(summary: dict[str, dict[str, int]], path) -> None:
    """Stacked bars of verdict counts per claim."""
    claims = list(summary)
    verdicts = sorted({v for counts in summary.values() for v in counts})
    colors = {"pass": "#2e7d32", "fail": "#c62828", "skip": "#9e9e9e"}
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(claims) + 2), 3.5))
    base = [0] * len(claims)
    for v in verdicts:
        heights = [summary[c].get(v, 0) for c in claims]
        ax.bar(claims, heights, bottom=base, label=v, color=colors.get(v, "#1565c0"))
        base = [b + h for b, h in zip(base, heights)]
    ax.set_ylabel("corpus items")
    ax.legend(fontsize=8, frameon=False)
    _save(fig, path)
