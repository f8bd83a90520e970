"""Matplotlib figures written next to the textual reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    meta = {"Software": None} if path.suffix == ".png" else None
    fig.savefig(path, dpi=120, metadata=meta)
    plt.close(fig)
    return path


def plot_kh_table(kh: dict, tau_table: dict | None, path, title: str = "") -> Path:
    """E1 page as an (h, q) table; cells show dim or dim/ker(1 + tau_*)."""
    hs = sorted({h for h, _ in kh})
    qs = sorted({q for _, q in kh})
    fig, ax = plt.subplots(figsize=(1 + 0.6 * len(hs), 1 + 0.35 * len(qs)))
    grid = [[kh.get((h, q), 0) for h in hs] for q in qs]
    ax.imshow(grid, origin="lower", cmap="Blues", aspect="auto", vmin=0)
    for i, q in enumerate(qs):
        for j, h in enumerate(hs):
            v = kh.get((h, q), 0)
            if not v:
                continue
            label = str(v)
            if tau_table and (h, q) in tau_table:
                k = tau_table[(h, q)][1]
                if k != v:
                    label = f"{v}/{k}"
            ax.text(j, i, label, ha="center", va="center", fontsize=8)
    ax.set_xticks(range(len(hs)), [str(h) for h in hs])
    ax.set_yticks(range(len(qs)), [str(q) for q in qs])
    ax.set_xlabel("h")
    ax.set_ylabel("q")
    ax.set_title(title or "E1 page (dim/ker where tau acts)")
    return _finish(fig, path)


def plot_sq_grid(grid: dict, path, title: str = "") -> Path:
    """Heat map of s_{Q,A,B} with B down the rows (inf last)."""
    As = sorted({a for a, _ in grid})
    Bs = sorted({b for _, b in grid}, key=lambda b: (b == math.inf, b))
    vals = [[grid.get((a, b), math.nan) for a in As] for b in Bs]
    fig, ax = plt.subplots(figsize=(1.5 + 0.7 * len(As), 1 + 0.5 * len(Bs)))
    ax.imshow(vals, cmap="viridis", aspect="auto")
    for i, b in enumerate(Bs):
        for j, a in enumerate(As):
            v = grid.get((a, b))
            if v is not None:
                ax.text(j, i, str(v), ha="center", va="center", color="w", fontsize=9)
    ax.set_xticks(range(len(As)), [str(a) for a in As])
    ax.set_yticks(range(len(Bs)), ["inf" if b == math.inf else str(b) for b in Bs])
    ax.set_xlabel("A")
    ax.set_ylabel("B")
    ax.set_title(title or "s_{Q,A,B}")
    return _finish(fig, path)


def plot_corpus(results, path) -> Path:
    """Recomputed s against s-tilde for every corpus row."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ok = [r for r in results if r.s is not None and r.s_tilde is not None]
    for passed, colour in ((True, "tab:blue"), (False, "tab:red")):
        pts = [r for r in ok if r.passed == passed]
        if pts:
            ax.scatter([r.s for r in pts], [r.s_tilde for r in pts], c=colour,
                       label="pass" if passed else "fail", alpha=0.7)
    if ok:
        lo = min(r.s for r in ok) - 2
        hi = max(r.s for r in ok) + 2
        ax.plot([lo, hi], [lo - 2, hi - 2], "k--", lw=0.8, label="s~ = s - 2")
    ax.set_xlabel("s")
    ax.set_ylabel("s~")
    ax.legend()
    return _finish(fig, path)


def plot_timings(results, path) -> Path:
    fig, ax = plt.subplots(figsize=(max(5, 0.18 * len(results)), 3))
    ax.bar(range(len(results)), [r.seconds for r in results])
    ax.set_xticks(range(len(results)), [r.name for r in results], rotation=90, fontsize=6)
    ax.set_ylabel("seconds")
    return _finish(fig, path)
