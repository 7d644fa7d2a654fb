"""Static SVG rendering of wall semicircles in the (b, a) half-plane.

Exact rational geometry is approximated as fixed-precision decimals for
display only; the CSV record keeps the exact values.  Output is a plain
standalone SVG string, byte-deterministic for identical input.
"""

from __future__ import annotations

import math

from .walls import DestabilizerCandidate, WallLocus

__all__ = ["render_candidates_svg"]

_W, _H, _PAD = 640, 360, 40


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_candidates_svg(candidates: list[DestabilizerCandidate],
                          title: str = "") -> str:
    semis = [(float(c.wall.center_b), math.sqrt(float(c.wall.radius_sq)), c)
             for c in candidates if c.wall.kind == WallLocus.SEMICIRCLE]
    if semis:
        b_lo = min(c - r for c, r, _ in semis) - 0.5
        b_hi = max(c + r for c, r, _ in semis) + 0.5
        a_hi = max(r for _, r, _ in semis) * 1.15
    else:
        b_lo, b_hi, a_hi = -1.0, 1.0, 1.0
    b_hi = max(b_hi, 0.5)
    sx = (_W - 2 * _PAD) / (b_hi - b_lo)
    sy = (_H - 2 * _PAD) / a_hi

    def X(b: float) -> float:
        return _PAD + (b - b_lo) * sx

    def Y(a: float) -> float:
        return _H - _PAD - a * sy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_fmt(X(b_lo))}" y1="{_fmt(Y(0))}" x2="{_fmt(X(b_hi))}" '
        f'y2="{_fmt(Y(0))}" stroke="black" stroke-width="1"/>',
    ]
    if b_lo < 0 < b_hi:
        parts.append(
            f'<line x1="{_fmt(X(0))}" y1="{_fmt(Y(0))}" x2="{_fmt(X(0))}" '
            f'y2="{_fmt(Y(a_hi))}" stroke="black" stroke-width="0.5"/>')
    for center, radius, cand in semis:
        x0, x1 = X(center - radius), X(center + radius)
        ry = radius * sy
        parts.append(
            f'<path d="M {_fmt(x0)} {_fmt(Y(0))} '
            f'A {_fmt(radius * sx)} {_fmt(ry)} 0 0 1 {_fmt(x1)} {_fmt(Y(0))}" '
            f'fill="none" stroke="#1f4e79" stroke-width="1.2">'
            f'<title>k={cand.k} d1={cand.d1} center={cand.wall.center_b} '
            f'radius_sq={cand.wall.radius_sq}</title></path>')
    if title:
        parts.append(f'<text x="{_PAD}" y="20" font-size="13">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
