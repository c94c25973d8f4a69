"""Deterministic SVG pictures of 1-D and 2-D cone data.

Regions are drawn by evaluating the exact indicator sums at rational pixel
centres; only the picture is approximate, never the evaluation.
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from . import linalg as la  # noqa: E402
from .cones import Cone  # noqa: E402
from .indicators import PointBatch, gamma, sigma, Cell  # noqa: E402

PALETTE = ["#ffffff", "#a8ddb5", "#7bccc4", "#4eb3d3", "#2b8cbe", "#08589e", "#fdae6b", "#e6550d"]

STYLE = {
    "svg.hashsalt": "conecalc",
    "svg.fonttype": "none",
    "font.family": "sans-serif",
    "font.size": 8,
    "axes.labelsize": 8,
    "axes.linewidth": 0.6,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "lines.linewidth": 1.0,
    "figure.figsize": (3.4, 3.4),
    "image.interpolation": "nearest",
}


def _grid(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    step = (hi - lo) / steps
    return [lo + step * i + step / 2 for i in range(steps)]


def _save(fig) -> bytes:
    fig.tight_layout()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue().encode()


def _check_dim(n: int) -> None:
    if n > 2:
        raise ValueError(f"figures are available in dimension 1 or 2, not {n}")


def _extent(points: Sequence[Sequence], pad: Fraction = Fraction(3, 2)) -> Fraction:
    r = max((abs(x) for p in points for x in p), default=Fraction(1))
    return max(Fraction(1), r * pad)


def _raster(values: np.ndarray, extent: Fraction, ax, ncolors: int) -> None:
    cmap = ListedColormap(PALETTE[:max(ncolors, 2)])
    e = float(extent)
    ax.imshow(values, origin="lower", extent=(-e, e, -e, e), cmap=cmap,
              vmin=0, vmax=max(ncolors, 2) - 1)


def _draw_rays(ax, cone: Cone, extent: Fraction, **kw) -> None:
    e = float(extent)
    for r in cone.rays:
        v = np.array([float(x) for x in r])
        v = v / np.abs(v).max() * e
        ax.plot([0, v[0]], [0, v[1]], **kw)
    for l in cone.lineality.basis:
        v = np.array([float(x) for x in l])
        v = v / np.abs(v).max() * e
        ax.plot([-v[0], v[0]], [-v[1], v[1]], **kw)


def _plane_points(extent: Fraction, steps: int):
    xs = _grid(-extent, extent, steps)
    return xs, [(x, y) for y in xs for x in xs]


def gamma_figure(cone: Cone, t: Sequence, steps: int = 96) -> bytes:
    """Γ(C, ·, T): shaded where the value is nonzero, with C and T marked."""
    _check_dim(cone.n)
    if cone.n != 2:
        raise ValueError("the Γ picture needs a 2-D cone")
    t = la.vec(t)
    ext = _extent([t])
    xs, pts = _plane_points(ext, steps)
    vals = gamma(cone).evaluate_batch(PointBatch([p + t for p in pts]))
    img = (np.asarray(vals).reshape(steps, steps) != 0).astype(int)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        _raster(img * 5, ext, ax, 6)
        _draw_rays(ax, cone, ext, color="#444444", lw=0.8)
        ax.plot([float(t[0])], [float(t[1])], "o", color="#e6550d", ms=3)
        ax.annotate("T", (float(t[0]), float(t[1])), xytext=(4, 4), textcoords="offset points")
        ax.set_xlabel("H1")
        ax.set_ylabel("H2")
        return _save(fig)


def sigma_figure(cone: Cone, steps: int = 96) -> bytes:
    """Support of σ(F, C) for each proper nonzero face F of a 2-D cone, one colour per face."""
    if cone.n != 2:
        raise ValueError("the σ picture needs a 2-D cone")
    ext = Fraction(4)
    xs, pts = _plane_points(ext, steps)
    batch = PointBatch([p + la.zeros(2) for p in pts])
    img = np.zeros(steps * steps, dtype=int)
    faces = [f for f in cone.faces() if f != cone.top_face and f != cone.minimal_face]
    for k, f in enumerate(faces):
        vals = np.asarray(sigma(f, cone).evaluate_batch(batch))
        img[(vals != 0) & (img == 0)] = k + 1
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        _raster(img.reshape(steps, steps), ext, ax, len(faces) + 1)
        _draw_rays(ax, cone, ext, color="#222222", lw=1.0)
        ax.set_xlabel("H1")
        ax.set_ylabel("H2")
        return _save(fig)


def fan_figure(fan, t: Sequence | None = None, steps: int = 120) -> bytes:
    """Cells of a relative fan inside the closed subgroup chamber (1-D or 2-D)."""
    n = fan.dim
    _check_dim(n)
    cells = list(fan.cells.values())
    ext = Fraction(2)
    with plt.rc_context(STYLE):
        if n == 1:
            fig, ax = plt.subplots(figsize=(3.4, 1.0))
            xs = _grid(-ext, ext, steps)
            batch = PointBatch([(x, Fraction(0)) for x in xs])
            row = np.zeros(steps, dtype=int)
            for k, c in enumerate(cells):
                row[np.asarray(batch.cell_mask(Cell(c.cone)))] = k + 1
            e = float(ext)
            cmap = ListedColormap(PALETTE[:len(cells) + 1])
            ax.imshow(row[None, :], extent=(-e, e, -0.1, 0.1), cmap=cmap, vmin=0,
                      vmax=len(cells), aspect="auto")
            for k, c in enumerate(cells):
                p = c.cone.rint_point
                x = float(p[0]) if c.cone.dim else 0.0
                x = max(-e * 0.8, min(e * 0.8, x))
                if c.cone.dim == 0:
                    ax.plot([0], [0], "o", color=PALETTE[k + 1], ms=4, mec="#222222")
                ax.annotate(c.label, (x, 0.1), xytext=(0, 4), textcoords="offset points",
                            ha="center", fontsize=6)
            if t is not None:
                ax.axvline(float(la.vec(t)[0]), color="#e6550d", lw=0.8)
            ax.set_yticks([])
            ax.set_ylim(-0.1, 0.35)
            ax.set_xlabel("a_0'")
        else:
            fig, ax = plt.subplots()
            xs, pts = _plane_points(ext, steps)
            batch = PointBatch([p + la.zeros(2) for p in pts])
            img = np.zeros(steps * steps, dtype=int)
            for k, c in enumerate(cells):
                if c.cone.dim == 2:
                    img[np.asarray(batch.cell_mask(Cell(c.cone)))] = k + 1
            _raster(img.reshape(steps, steps), ext, ax, len(cells) + 1)
            for k, c in enumerate(cells):
                if c.cone.dim == 1:
                    _draw_rays(ax, c.cone, ext, color="#222222", lw=0.9)
                if c.cone.dim == 2:
                    p = np.array([float(x) for x in c.cone.rint_point])
                    p = p / np.abs(p).max() * float(ext) * 0.6
                    ax.annotate(c.label, tuple(p), ha="center", fontsize=6)
            ax.plot([0], [0], "o", color="#222222", ms=2)
            if t is not None:
                tv = la.vec(t)
                ax.plot([float(tv[0])], [float(tv[1])], "o", color="#e6550d", ms=3)
            ax.set_xlabel("H1")
            ax.set_ylabel("H2")
        ax.set_title(fan.config.name, fontsize=8)
        return _save(fig)


def default_gamma_cone() -> Cone:
    return Cone.from_generators(2, [(2, 1), (1, 3)])


FIGURES = ("fig3", "fig6", "fig7", "fig8")


def emit_figure(name: str, params: dict | None = None) -> bytes:
    """fig3: Γ region; fig6/fig7: the GL(1) ⊂ GL(2) and GL(2) ⊂ GL(3) fans; fig8: σ regions.

    params may carry "cone" (a Cone), "T" (a vector) or "config" (a built-in fan name).
    """
    from .relative import build_relative_fan, builtin_config

    params = params or {}
    if name == "fig3":
        cone = params.get("cone") or default_gamma_cone()
        t = params.get("T") or (Fraction(3, 2), Fraction(2))
        return gamma_figure(cone, t)
    if name == "fig8":
        return sigma_figure(params.get("cone") or default_gamma_cone())
    if name in ("fig6", "fig7"):
        default = "gl1_in_gl2_corner" if name == "fig6" else "gl2_in_gl3_plane"
        fan = build_relative_fan(builtin_config(params.get("config", default)))
        return fan_figure(fan, params.get("T"))
    raise ValueError(f"unknown figure {name!r}; known: {', '.join(FIGURES)}")
