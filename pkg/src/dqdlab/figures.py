"""Figures written to files: Hasse diagrams and a verification summary."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .algebra import FiniteAlgebra  # noqa: E402
from .congruence import CongruenceLattice  # noqa: E402


def _covers(n: int, leq) -> list[tuple[int, int]]:
    out = []
    for a in range(n):
        for b in range(n):
            if a != b and leq(a, b) and not any(
                c not in (a, b) and leq(a, c) and leq(c, b) for c in range(n)
            ):
                out.append((a, b))
    return out


def _ranks(n: int, covers: Sequence[tuple[int, int]]) -> list[int]:
    rank = [0] * n
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            if rank[b] < rank[a] + 1:
                rank[b] = rank[a] + 1
                changed = True
    return rank


def _layout(n: int, covers) -> list[tuple[float, float]]:
    rank = _ranks(n, covers)
    pos = [(0.0, 0.0)] * n
    for r in set(rank):
        row = [x for x in range(n) if rank[x] == r]
        for i, x in enumerate(row):
            pos[x] = (i - (len(row) - 1) / 2, float(r))
    return pos


def hasse(ax, n: int, covers, labels: Sequence[str], title: str = "") -> None:
    pos = _layout(n, covers)
    for a, b in covers:
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.4", lw=1, zorder=1)
    for x in range(n):
        ax.scatter(*pos[x], s=220, color="white", edgecolor="black", zorder=2)
        ax.annotate(labels[x], pos[x], ha="center", va="center", fontsize=8, zorder=3)
    ax.set_title(title, fontsize=9)
    ax.set_axis_off()
    ax.margins(0.2)


def plot_algebra(A: FiniteAlgebra, path: str | Path) -> Path:
    covers = _covers(A.size, A.leq)
    fig, ax = plt.subplots(figsize=(3, 3.5))
    hasse(ax, A.size, covers, [A.label(x) for x in range(A.size)], A.name)
    return _save(fig, path)


def plot_congruences(A: FiniteAlgebra, con: CongruenceLattice, path: str | Path) -> Path:
    labels = [str(theta) for theta in con]
    fig, ax = plt.subplots(figsize=(max(3, 1.2 * A.size), 3.5))
    hasse(ax, len(con), list(con.covers), labels, f"Con({A.name})")
    return _save(fig, path)


def plot_report(report, path: str | Path) -> Path:
    """Horizontal bars of per-claim wall time, coloured by status."""
    colours = {"pass": "tab:green", "fail": "tab:red", "inconclusive": "tab:orange"}
    rs = report.results
    fig, ax = plt.subplots(figsize=(6, 0.22 * len(rs) + 1))
    ax.barh(range(len(rs)), [r.seconds for r in rs], color=[colours[r.status] for r in rs])
    ax.set_yticks(range(len(rs)), [r.claim for r in rs], fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    c = report.counts
    ax.set_title(f"pass {c['pass']}  fail {c['fail']}  inconclusive {c['inconclusive']}", fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
