"""Static SVG pictures of strip/quadrant decompositions.

Pure string generation with integer pixel arithmetic: the same decomposition
always renders to byte-identical output (no timestamps, no floating point).
Vertical strips are bands with a solid left edge and a dashed right edge
(half-open), horizontal strips are the mirror, quadrants are shaded
upper-right regions with a dot on the corner.
"""

from __future__ import annotations

from .twoparam import Decomposition

_UNIT = 40
_MARGIN = 48

_QUAD_FILL = "#f2c94c"
_VSTRIP_FILL = "#6fcf97"
_HSTRIP_FILL = "#56ccf2"
_AXIS = "#222222"
_EDGE = "#14532d"
_HEDGE = "#0c4a6e"
_DOT = "#b45309"


def _extent(deco: Decomposition) -> int:
    ext = 4
    for iv, _ in deco.vertical + deco.horizontal:
        ext = max(ext, iv.end + 1)
    for corner, _ in deco.quadrants:
        ext = max(ext, corner[0] + 2, corner[1] + 2)
    return ext


def render_svg(deco: Decomposition) -> str:
    ext = _extent(deco)
    side = ext * _UNIT
    width = side + 2 * _MARGIN
    height = side + 2 * _MARGIN

    def px(x: int) -> int:
        return _MARGIN + x * _UNIT

    def py(y: int) -> int:
        return _MARGIN + side - y * _UNIT

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    parts.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')

    # quadrants first (bottom layer)
    for corner, mult in deco.quadrants:
        x, y = corner
        parts.append(
            f'<rect x="{px(x)}" y="{py(ext)}" width="{side - x * _UNIT}" '
            f'height="{side - y * _UNIT}" fill="{_QUAD_FILL}" fill-opacity="0.45"/>'
        )
    for iv, mult in deco.vertical:
        x0, x1 = px(iv.start), px(iv.end)
        parts.append(
            f'<rect x="{x0}" y="{py(ext)}" width="{x1 - x0}" height="{side}" '
            f'fill="{_VSTRIP_FILL}" fill-opacity="0.4"/>'
        )
        parts.append(
            f'<line x1="{x0}" y1="{py(0)}" x2="{x0}" y2="{py(ext)}" '
            f'stroke="{_EDGE}" stroke-width="2"/>'
        )
        parts.append(
            f'<line x1="{x1}" y1="{py(0)}" x2="{x1}" y2="{py(ext)}" '
            f'stroke="{_EDGE}" stroke-width="2" stroke-dasharray="6 4"/>'
        )
        if mult > 1:
            parts.append(
                f'<text x="{x0 + 4}" y="{py(ext) + 16}" font-family="monospace" '
                f'font-size="14" fill="{_EDGE}">x{mult}</text>'
            )
    for iv, mult in deco.horizontal:
        y0, y1 = py(iv.start), py(iv.end)
        parts.append(
            f'<rect x="{px(0)}" y="{y1}" width="{side}" height="{y0 - y1}" '
            f'fill="{_HSTRIP_FILL}" fill-opacity="0.4"/>'
        )
        parts.append(
            f'<line x1="{px(0)}" y1="{y0}" x2="{px(ext)}" y2="{y0}" '
            f'stroke="{_HEDGE}" stroke-width="2"/>'
        )
        parts.append(
            f'<line x1="{px(0)}" y1="{y1}" x2="{px(ext)}" y2="{y1}" '
            f'stroke="{_HEDGE}" stroke-width="2" stroke-dasharray="6 4"/>'
        )
        if mult > 1:
            parts.append(
                f'<text x="{px(ext) - 28}" y="{y0 - 4}" font-family="monospace" '
                f'font-size="14" fill="{_HEDGE}">x{mult}</text>'
            )
    # corner dots above the fills
    for corner, mult in deco.quadrants:
        x, y = corner
        parts.append(
            f'<circle cx="{px(x)}" cy="{py(y)}" r="5" fill="{_DOT}"/>'
        )
        if mult > 1:
            parts.append(
                f'<text x="{px(x) + 8}" y="{py(y) - 8}" font-family="monospace" '
                f'font-size="14" fill="{_DOT}">x{mult}</text>'
            )
    # axes on top
    parts.append(
        f'<line x1="{px(0)}" y1="{py(0)}" x2="{px(ext)}" y2="{py(0)}" '
        f'stroke="{_AXIS}" stroke-width="2"/>'
    )
    parts.append(
        f'<line x1="{px(0)}" y1="{py(0)}" x2="{px(0)}" y2="{py(ext)}" '
        f'stroke="{_AXIS}" stroke-width="2"/>'
    )
    for t in range(ext + 1):
        parts.append(
            f'<line x1="{px(t)}" y1="{py(0) - 4}" x2="{px(t)}" y2="{py(0) + 4}" '
            f'stroke="{_AXIS}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px(t) - 4}" y="{py(0) + 20}" font-family="monospace" '
            f'font-size="12" fill="{_AXIS}">{t}</text>'
        )
        parts.append(
            f'<line x1="{px(0) - 4}" y1="{py(t)}" x2="{px(0) + 4}" y2="{py(t)}" '
            f'stroke="{_AXIS}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px(0) - 26}" y="{py(t) + 4}" font-family="monospace" '
            f'font-size="12" fill="{_AXIS}">{t}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
