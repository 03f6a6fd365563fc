"""Minimal self-contained SVG line/step charts (no rendering dependencies)."""

from __future__ import annotations

from dataclasses import dataclass, field

_PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7",
]

WIDTH, HEIGHT = 860, 520
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 200, 40, 55


@dataclass
class Series:
    label: str
    x: list[float]
    y: list[float]
    dashed: bool = False
    step: bool = False


@dataclass
class Chart:
    title: str
    x_label: str
    y_label: str
    series: list[Series] = field(default_factory=list)
    y_ticks: list[tuple[float, str]] | None = None

    def add(self, series: Series) -> None:
        self.series.append(series)

    def render(self) -> str:
        xs = [v for s in self.series for v in s.x]
        ys = [v for s in self.series for v in s.y]
        if not xs:
            raise ValueError("no data rows")
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        if x_hi == x_lo:
            x_hi = x_lo + 1.0
        if y_hi == y_lo:
            y_hi = y_lo + 1.0
        # pad the y range slightly so curves do not sit on the frame
        pad = 0.04 * (y_hi - y_lo)
        y_lo, y_hi = y_lo - pad, y_hi + pad

        plot_w = WIDTH - MARGIN_L - MARGIN_R
        plot_h = HEIGHT - MARGIN_T - MARGIN_B

        def px(x: float) -> float:
            return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

        def py(y: float) -> float:
            return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{_esc(self.title)}</text>',
        ]

        # frame
        parts.append(
            f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
            'fill="none" stroke="#333" stroke-width="1"/>'
        )

        # x ticks at nice intervals
        for frac in range(0, 11):
            xv = x_lo + frac / 10 * (x_hi - x_lo)
            parts.append(
                f'<line x1="{px(xv):.1f}" y1="{MARGIN_T + plot_h}" x2="{px(xv):.1f}" '
                f'y2="{MARGIN_T + plot_h + 5}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{px(xv):.1f}" y="{MARGIN_T + plot_h + 20}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">{xv:.2f}</text>'
            )
        y_ticks = self.y_ticks
        if y_ticks is None:
            y_ticks = []
            for frac in range(0, 6):
                yv = y_lo + frac / 5 * (y_hi - y_lo)
                y_ticks.append((yv, f"{yv:.3g}"))
        for yv, text in y_ticks:
            parts.append(
                f'<line x1="{MARGIN_L - 5}" y1="{py(yv):.1f}" x2="{MARGIN_L}" '
                f'y2="{py(yv):.1f}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{MARGIN_L - 9}" y="{py(yv) + 4:.1f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">{_esc(text)}</text>'
            )

        # axis labels
        parts.append(
            f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{_esc(self.x_label)}</text>'
        )
        parts.append(
            f'<text x="18" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" '
            f'transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.1f})">{_esc(self.y_label)}</text>'
        )

        # zero line if visible
        if y_lo < 0 < y_hi:
            parts.append(
                f'<line x1="{MARGIN_L}" y1="{py(0):.1f}" x2="{MARGIN_L + plot_w}" '
                f'y2="{py(0):.1f}" stroke="#999" stroke-dasharray="2,4"/>'
            )

        for i, s in enumerate(self.series):
            color = _PALETTE[i % len(_PALETTE)]
            pts = sorted(zip(s.x, s.y))
            coords: list[tuple[float, float]] = []
            prev_y: float | None = None
            for xv, yv in pts:
                if s.step and prev_y is not None:
                    coords.append((px(xv), py(prev_y)))
                coords.append((px(xv), py(yv)))
                prev_y = yv
            points = " ".join(f"{cx:.2f},{cy:.2f}" for cx, cy in coords)
            dash = ' stroke-dasharray="6,4"' if s.dashed else ""
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash} '
                f'points="{points}"/>'
            )
            # legend entry
            ly = MARGIN_T + 14 + 16 * i
            lx = WIDTH - MARGIN_R + 12
            parts.append(
                f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="2"{dash}/>'
            )
            parts.append(
                f'<text x="{lx + 30}" y="{ly}" font-family="sans-serif" '
                f'font-size="11">{_esc(s.label)}</text>'
            )

        parts.append("</svg>")
        return "\n".join(parts)


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
