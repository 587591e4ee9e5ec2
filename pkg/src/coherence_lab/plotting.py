"""Coherence phase-space figures.

Each panel shows the expectation trajectory (red) and the uncertainty ring
traced by ``S(theta) +/- (dS', dS'')`` pointed along ``theta`` (blue). A
state with no fluctuations draws a sharp circle; a vanishing expectation
with nonzero fluctuations draws a ring around the origin.
"""

from __future__ import annotations

import matplotlib
from matplotlib.figure import Figure
from matplotlib.path import Path
from matplotlib.patches import PathPatch
import numpy as np

from .scalar import CoherenceRecord

EXPECTATION_COLOR = "#c0392b"
RING_COLOR = "#2c6fbb"

RC = {
    "svg.hashsalt": "coherence-lab",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "path.simplify": False,
}
# Strip timestamps so identical inputs give identical files.
METADATA = {
    "svg": {"Date": None},
    "pdf": {"CreationDate": None, "ModDate": None},
    "png": {},
}


def _ring(values, d_re, d_im, theta):
    offset = d_re * np.sign(np.cos(theta)) + 1j * d_im * np.sign(np.sin(theta))
    return values + offset, values - offset


def _panel(ax, values, d_re, d_im, theta, title):
    outer, inner = _ring(values, d_re, d_im, theta)
    if np.any(d_re) or np.any(d_im):
        loop = np.concatenate([outer, outer[:1], inner[::-1], inner[-1:]])
        verts = np.column_stack([loop.real, loop.imag])
        n = len(outer) + 1
        codes = [Path.MOVETO] + [Path.LINETO] * (n - 2) + [Path.CLOSEPOLY]
        codes = codes + codes
        ax.add_patch(PathPatch(Path(verts, codes), facecolor=RING_COLOR, alpha=0.25, edgecolor="none"))
        ax.plot(outer.real, outer.imag, color=RING_COLOR, lw=1.0)
        ax.plot(inner.real, inner.imag, color=RING_COLOR, lw=1.0)
    ax.plot(values.real, values.imag, "-", color=EXPECTATION_COLOR, lw=1.5)
    ax.plot(values.real[:1], values.imag[:1], "o", color=EXPECTATION_COLOR, ms=3)
    reach = float(np.max(np.abs(np.concatenate([outer, inner, values])))) or 1.0
    lim = 1.15 * reach
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.axhline(0, color="0.7", lw=0.5)
    ax.axvline(0, color="0.7", lw=0.5)
    ax.set_title(title)
    ax.set_xlabel("real part")
    ax.set_ylabel("imaginary part")


def phase_space_figure(records) -> Figure:
    theta = np.array([r.theta for r in records])
    if isinstance(records[0], CoherenceRecord):
        fig = Figure(figsize=(4, 4))
        ax = fig.add_subplot(1, 1, 1)
        values = np.array([r.g for r in records])
        d_re = np.array([r.dg_real for r in records])
        d_im = np.array([r.dg_imag for r in records])
        _panel(ax, values, d_re, d_im, theta, "G")
    else:
        fig = Figure(figsize=(8, 8))
        S = np.array([r.S for r in records])
        d_re = np.array([r.dS_prime for r in records])
        d_im = np.array([r.dS_dprime for r in records])
        for n in range(4):
            ax = fig.add_subplot(2, 2, n + 1)
            _panel(ax, S[:, n], d_re[:, n], d_im[:, n], theta, f"S{n}")
    fig.tight_layout()
    return fig


def render_phase_space(records, path, fmt: str = "svg") -> None:
    records = list(records)
    with matplotlib.rc_context(RC):
        fig = phase_space_figure(records)
        fig.savefig(path, format=fmt, metadata=METADATA.get(fmt, {}))
