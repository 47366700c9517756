"""Minimal deterministic SVG emission: fixed 800x600 viewbox, billiard
centered, no timestamps, byte-identical output for identical input."""

from __future__ import annotations

from dataclasses import dataclass, field

WIDTH, HEIGHT = 800, 600
MARGIN = 40


def _fmt(v: float) -> str:
    return f"{v:.3f}"


@dataclass
class SvgCanvas:
    """World-to-pixel mapping plus a list of SVG elements."""

    half_width: float  # world units shown from center to the nearest border
    elements: list[str] = field(default_factory=list)

    @property
    def scale(self) -> float:
        usable = min(WIDTH, HEIGHT) - 2 * MARGIN
        return usable / (2.0 * self.half_width)

    def to_px(self, x: float, y: float) -> tuple[float, float]:
        return (WIDTH / 2.0 + x * self.scale, HEIGHT / 2.0 - y * self.scale)

    def polyline(self, points, color: str, width: float = 1.0, closed: bool = False, dashed: bool = False) -> None:
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (self.to_px(*p) for p in points))
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        tag = "polygon" if closed else "polyline"
        self.elements.append(
            f'<{tag} points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"{dash}/>'
        )

    def ellipse(self, cx: float, cy: float, rx: float, ry: float, color: str, width: float = 1.5, dashed: bool = False) -> None:
        px, py = self.to_px(cx, cy)
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.elements.append(
            f'<ellipse cx="{_fmt(px)}" cy="{_fmt(py)}" rx="{_fmt(rx * self.scale)}" '
            f'ry="{_fmt(ry * self.scale)}" fill="none" stroke="{color}" stroke-width="{width}"{dash}/>'
        )

    def circle(self, cx: float, cy: float, r: float, color: str, width: float = 1.5, dashed: bool = False) -> None:
        self.ellipse(cx, cy, r, r, color, width, dashed)

    def dot(self, x: float, y: float, color: str, r_px: float = 2.5) -> None:
        px, py = self.to_px(x, y)
        self.elements.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{r_px}" fill="{color}"/>')

    def label(self, x_px: float, y_px: float, text: str, color: str = "#333") -> None:
        self.elements.append(
            f'<text x="{_fmt(x_px)}" y="{_fmt(y_px)}" font-family="monospace" font-size="12" fill="{color}">{text}</text>'
        )

    def render(self) -> str:
        header = (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
            f'width="{WIDTH}" height="{HEIGHT}">'
        )
        bg = f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>'
        scale_note = (
            f'<text x="{MARGIN}" y="{HEIGHT - 12}" font-family="monospace" font-size="12" '
            f'fill="#333">1 unit = {self.scale:.2f} px</text>'
        )
        return "\n".join([header, bg, *self.elements, scale_note, "</svg>"]) + "\n"
