"""Concentric k-shell drawings of a graph's core structure.

Nodes sit on one ring per coreness value, highest coreness innermost; dot
size grows with log-degree and colour runs from blue (shell 0) to red
(the maximum core).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from .graph import Graph


@dataclass(frozen=True)
class NodePlacement:
    radius: float
    angle: float
    dot_radius: float
    color_index: float


@dataclass(frozen=True)
class ShellLayout:
    placements: dict[int, NodePlacement]
    c_max: int

    def ring_radius(self, v: int) -> float:
        return self.placements[v].radius

    def position(self, v: int, cx: float = 0.0, cy: float = 0.0) -> tuple[float, float]:
        p = self.placements[v]
        return cx + p.radius * math.cos(p.angle), cy + p.radius * math.sin(p.angle)


def layout(g: Graph, coreness: Mapping[int, int], ring_scale: float = 450.0,
           dot_scale: float = 1.0) -> ShellLayout:
    """Place every node of ``g`` on its coreness ring.

    Ring c has radius ``ring_scale * (c_max - c + 1) / c_max``; nodes of one
    shell are spread at equal angles in ascending id order.
    """
    if len(g) == 0:
        raise ValueError("cannot lay out an empty graph")
    missing = [v for v in g.nodes if v not in coreness]
    if missing:
        raise ValueError(f"coreness missing for node {missing[0]}")
    c_max = max(coreness[v] for v in g.nodes)
    if c_max < 1:
        raise ValueError("graph has no links; every node has coreness 0")
    shells: dict[int, list[int]] = defaultdict(list)
    for v in g.nodes:
        shells[coreness[v]].append(v)
    placements = {}
    for c, members in shells.items():
        radius = ring_scale * (c_max - c + 1) / c_max
        step = 2 * math.pi / len(members)
        for i, v in enumerate(members):
            placements[v] = NodePlacement(
                radius=radius,
                angle=i * step,
                dot_radius=dot_scale * (1 + math.log2(1 + g.degree(v))),
                color_index=c / c_max,
            )
    return ShellLayout(dict(sorted(placements.items())), c_max)


def _hue(t: float) -> str:
    return f"#{round(255 * t):02x}00{round(255 * (1 - t)):02x}"


def render_svg(shells: ShellLayout, g: Graph, width: int = 1000, height: int = 1000) -> str:
    """Standalone SVG 1.1 document: links underneath, one circle per node."""
    cx, cy = width / 2, height / 2
    pos = {v: shells.position(v, cx, cy) for v in g.nodes}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        '<g stroke="#555555" stroke-opacity="0.25" stroke-width="0.5">',
    ]
    for u, v in g.edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}"/>')
    out.append("</g>")
    out.append('<g stroke="black" stroke-width="0.2">')
    # draw high-coreness nodes last so the core stays visible
    order = sorted(g.nodes, key=lambda v: (shells.placements[v].color_index, v))
    for v in order:
        p = shells.placements[v]
        x, y = pos[v]
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{p.dot_radius:.3f}" '
                   f'fill="{_hue(p.color_index)}"><title>{v}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
