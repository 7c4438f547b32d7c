"""单位圆扇区图的独立 SVG 渲染。"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional, Sequence

from src.core.domain.unity_logic import TWO_PI, roots_of_unity, sector_value

SVG_NAMESPACE = "http://www.w3.org/2000/svg"
CANVAS = 400
RADIUS = 150.0
CORRECT_COLOR = "#2e7d32"
INCORRECT_COLOR = "#c62828"


@dataclass(frozen=True)
class PlotPoint:
    weighted_sum: complex
    correct: bool


def _xy(z: complex) -> tuple[str, str]:
    center = CANVAS / 2
    return f"{center + RADIUS * z.real:.3f}", f"{center - RADIUS * z.imag:.3f}"


def _on_circle(z: complex) -> complex:
    if z == 0:
        return 0j
    return z / abs(z)


def render_sector_plot(
    k: int,
    points: Sequence[PlotPoint] = (),
    trajectory: Optional[Sequence[complex]] = None,
    *,
    title: Optional[str] = None,
) -> str:
    """单位圆、k 条扇区边界、单位根、样本点及可选的轨迹。

    样本点位于单位圆上其加权和的相位处（加权和为零时位于原点）。轨迹最大模长
    超过 1 时整体按该模长缩放，相位保持不变。
    """
    roots = roots_of_unity(k)
    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NAMESPACE,
            "width": str(CANVAS),
            "height": str(CANVAS),
            "viewBox": f"0 0 {CANVAS} {CANVAS}",
        },
    )
    if title:
        ET.SubElement(svg, "title").text = title

    cx, cy = _xy(0j)
    ET.SubElement(
        svg,
        "circle",
        {"class": "unit-circle", "cx": cx, "cy": cy, "r": f"{RADIUS:.3f}", "fill": "none", "stroke": "#444"},
    )
    for j in range(k):
        x2, y2 = _xy(complex(math.cos(TWO_PI * j / k), math.sin(TWO_PI * j / k)))
        ET.SubElement(
            svg,
            "line",
            {"class": "sector-boundary", "x1": cx, "y1": cy, "x2": x2, "y2": y2, "stroke": "#999"},
        )
    for root in roots:
        x, y = _xy(sector_value(root))
        marker = ET.SubElement(svg, "circle", {"class": "root", "cx": x, "cy": y, "r": "4", "fill": "#1565c0"})
        ET.SubElement(marker, "title").text = root.label()

    for point in points:
        x, y = _xy(_on_circle(point.weighted_sum))
        ET.SubElement(
            svg,
            "circle",
            {
                "class": "sample correct" if point.correct else "sample incorrect",
                "cx": x,
                "cy": y,
                "r": "3",
                "fill": CORRECT_COLOR if point.correct else INCORRECT_COLOR,
            },
        )

    if trajectory:
        scale = max(1.0, max(abs(z) for z in trajectory))
        coords = " ".join(",".join(_xy(z / scale)) for z in trajectory)
        ET.SubElement(
            svg,
            "polyline",
            {"class": "trajectory", "points": coords, "fill": "none", "stroke": "#ef6c00"},
        )

    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"
