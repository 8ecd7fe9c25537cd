"""Static SVG persistence diagrams with confidence-region overlays.

Blue rectangles are landmark-path regions, red ones are Kunneth-path
regions; bars are drawn as (birth, death) points with one marker shape
per homological dimension.
"""
from __future__ import annotations

import math

from .intervals import INF, GradedBarcode
from .sliding import ConfidenceRegion, ExperimentResult

_SIZE = 640
_MARGIN = 60
_COLORS = {"landmark": "#1f5fd0", "kunneth": "#d03030"}
_MARKERS = ["circle", "square", "triangle"]


def _data_max(result: ExperimentResult) -> float:
    top = 1.0
    for path in (result.landmark, result.kunneth):
        for _, bar in path.barcode:
            if bar.right != INF:
                top = max(top, bar.right)
            top = max(top, bar.left)
        for region in path.regions:
            top = max(top, region.birth_high, region.death_high)
    return 1.05 * top


class _Canvas:
    def __init__(self, top: float):
        self.top = top
        self.parts: list[str] = []

    def x(self, v: float) -> float:
        return _MARGIN + (min(v, self.top) / self.top) * (_SIZE - 2 * _MARGIN)

    def y(self, v: float) -> float:
        return _SIZE - _MARGIN - (min(v, self.top) / self.top) * (_SIZE - 2 * _MARGIN)

    def add(self, element: str) -> None:
        self.parts.append(element)

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
            f'viewBox="0 0 {_SIZE} {_SIZE}">\n<rect width="100%" height="100%" fill="white"/>\n'
            f"{body}\n</svg>\n"
        )


def _marker(canvas: _Canvas, shape: str, cx: float, cy: float, color: str) -> None:
    if shape == "circle":
        canvas.add(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="3.5" fill="{color}"/>')
    elif shape == "square":
        canvas.add(
            f'<rect x="{cx - 3:.1f}" y="{cy - 3:.1f}" width="6" height="6" fill="{color}"/>'
        )
    else:
        canvas.add(
            f'<polygon points="{cx:.1f},{cy - 4:.1f} {cx - 4:.1f},{cy + 3:.1f} '
            f'{cx + 4:.1f},{cy + 3:.1f}" fill="{color}"/>'
        )


def experiment_svg(result: ExperimentResult) -> str:
    """Persistence diagram of both paths with confidence rectangles."""
    canvas = _Canvas(_data_max(result))
    x0, y0 = canvas.x(0), canvas.y(0)
    x1, y1 = canvas.x(canvas.top), canvas.y(canvas.top)
    canvas.add(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>')
    canvas.add(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>')
    canvas.add(
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#bbbbbb" stroke-dasharray="4 3"/>'
    )
    canvas.add(
        f'<text x="{(x0 + x1) / 2:.0f}" y="{_SIZE - 18}" text-anchor="middle" '
        f'font-size="14">birth</text>'
    )
    canvas.add(
        f'<text x="18" y="{(y0 + y1) / 2:.0f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2:.0f})">death</text>'
    )
    # axis ticks at integer values
    for tick in range(0, int(math.floor(canvas.top)) + 1):
        tx, ty = canvas.x(tick), canvas.y(tick)
        canvas.add(f'<line x1="{tx}" y1="{y0}" x2="{tx}" y2="{y0 + 5}" stroke="black"/>')
        canvas.add(
            f'<text x="{tx}" y="{y0 + 20}" text-anchor="middle" font-size="11">{tick}</text>'
        )
        canvas.add(f'<line x1="{x0 - 5}" y1="{ty}" x2="{x0}" y2="{ty}" stroke="black"/>')
        canvas.add(
            f'<text x="{x0 - 10}" y="{ty + 4}" text-anchor="end" font-size="11">{tick}</text>'
        )

    for path in (result.landmark, result.kunneth):
        color = _COLORS[path.regions[0].method] if path.regions else "#888888"
        for region in path.regions:
            rx, ry = canvas.x(region.birth_low), canvas.y(region.death_high)
            w = canvas.x(region.birth_high) - rx
            h = canvas.y(region.death_low) - ry
            canvas.add(
                f'<rect x="{rx:.1f}" y="{ry:.1f}" width="{w:.1f}" height="{h:.1f}" '
                f'fill="{_COLORS[region.method]}" fill-opacity="0.15" '
                f'stroke="{_COLORS[region.method]}" stroke-width="1.2"/>'
            )
        for dim, bar in path.barcode:
            if dim == 0 or bar.right == INF:
                continue
            shape = _MARKERS[min(dim - 1, len(_MARKERS) - 1)]
            method = "landmark" if path is result.landmark else "kunneth"
            _marker(canvas, shape, canvas.x(bar.left), canvas.y(bar.right), _COLORS[method])

    legend_y = _MARGIN - 30
    canvas.add(
        f'<rect x="{_MARGIN}" y="{legend_y}" width="14" height="14" fill="{_COLORS["landmark"]}" '
        f'fill-opacity="0.3" stroke="{_COLORS["landmark"]}"/>'
        f'<text x="{_MARGIN + 20}" y="{legend_y + 12}" font-size="13">landmark regions</text>'
    )
    canvas.add(
        f'<rect x="{_MARGIN + 180}" y="{legend_y}" width="14" height="14" '
        f'fill="{_COLORS["kunneth"]}" fill-opacity="0.3" stroke="{_COLORS["kunneth"]}"/>'
        f'<text x="{_MARGIN + 200}" y="{legend_y + 12}" font-size="13">Kunneth regions</text>'
    )
    return canvas.render()
