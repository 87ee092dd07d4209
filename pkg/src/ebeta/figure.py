"""SVG drawing of the first levels of basic intervals (Delta, Delta_1, Delta_2, ...)."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from xml.sax.saxutils import escape

from .core import DIGITS, Beta, digit_value, format_rational, gamma

BAR_HEIGHT = 12
LEVEL_SPACING = 20
PLOT_WIDTH = 600
MARGIN_LEFT = 20
MARGIN_TOP = 20
LABEL_WIDTH = 60
MAX_LEVEL = 12

BAR_COLOR = "#000000"
OVERLAP_COLOR = "#1f4fd8"


def basic_intervals(beta: Beta, n: int) -> list[tuple[Fraction, int]]:
    """Distinct level-n maps as (offset, number of words inducing it), sorted by offset."""
    counts: Counter[Fraction] = Counter({Fraction(0): 1})
    vals = [digit_value(beta, d) for d in DIGITS]
    for _ in range(n):
        nxt: Counter[Fraction] = Counter()
        for o, c in counts.items():
            for v in vals:
                nxt[(v + o) / beta.value] += c
        counts = nxt
    return sorted(counts.items())


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def render_levels(beta: Beta, level: int) -> str:
    """Rows 0..level of basic intervals; maps shared by several words are highlighted."""
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"level must be in 0..{MAX_LEVEL}")
    top = gamma(beta)
    xscale = PLOT_WIDTH / top
    width = MARGIN_LEFT + PLOT_WIDTH + LABEL_WIDTH
    height = 2 * MARGIN_TOP + level * LEVEL_SPACING + BAR_HEIGHT
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>Basic intervals of E_beta, beta = {escape(format_rational(beta.value))}</title>",
    ]
    for k in range(level + 1):
        y = MARGIN_TOP + k * LEVEL_SPACING
        size = top / beta.value**k
        out.append(f'<g class="level" data-level="{k}">')
        for offset, words in basic_intervals(beta, k):
            x = MARGIN_LEFT + float(offset) * xscale
            w = float(size) * xscale
            shared = words > 1
            cls = "bar overlap" if shared else "bar"
            color = OVERLAP_COLOR if shared else BAR_COLOR
            out.append(
                f'<rect class="{cls}" x="{_fmt(x)}" y="{y}" width="{_fmt(w)}" height="{BAR_HEIGHT}" '
                f'fill="{color}" fill-opacity="0.6" data-lo="{format_rational(offset)}" '
                f'data-hi="{format_rational(offset + size)}"/>'
            )
        label = "Delta" if k == 0 else f"Delta_{k}"
        out.append(
            f'<text x="{MARGIN_LEFT + PLOT_WIDTH + 8}" y="{y + BAR_HEIGHT - 2}" '
            f'font-size="11" font-family="sans-serif">{label}</text>'
        )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
