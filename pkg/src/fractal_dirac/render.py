"""Static SVG figures of the construction steps.

Draws the placed cubes of every word up to the requested depth as nested
outlines, marks even vertices with filled dots and odd vertices with hollow
ones, and decorates the level-zero cube with its oriented edges.  Systems in
dimensions other than 2 are projected onto the first two axes.
"""

import warnings

import numpy as np

from .cube import oriented_edges, vertex_bits
from .ifs import IfsSystem, iter_placed


def _face_cycle(n):
    """Vertex indices tracing the first-two-axes face boundary, other bits zero."""
    if n == 1:
        return [0, 1]
    bits = vertex_bits(n)
    lookup = {tuple(row): i for i, row in enumerate(bits)}
    cycle = []
    for bx, by in ((0, 0), (1, 0), (1, 1), (0, 1)):
        cycle.append(lookup[(bx, by) + (0,) * (n - 2)])
    return cycle


def _project(points, n):
    pts = np.atleast_2d(points)
    if n == 1:
        return np.hstack([pts, np.zeros((pts.shape[0], 1))])
    return pts[:, :2]


def render_svg(ifs: IfsSystem, depth: int, size: int = 640, budget: int | None = None) -> str:
    """SVG document of the first depth+1 construction steps."""
    if ifs.n != 2:
        warnings.warn(
            f"rendering projects the {ifs.n}-dimensional system onto its first two axes",
            stacklevel=2,
        )
    pad = 0.08
    scale = size / (1.0 + 2.0 * pad)

    def to_px(xy):
        x, y = xy
        return (x + pad) * scale, (1.0 + pad - y) * scale

    cycle = _face_cycle(ifs.n)
    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    )
    out.append(
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="#444"/></marker></defs>'
    )
    out.append(f'<rect width="{size}" height="{size}" fill="white"/>')

    dots = []
    for cube in iter_placed(ifs, depth, budget=budget):
        verts = _project(cube.vertices, ifs.n)
        level = len(cube.word)
        pts = " ".join("%.3f,%.3f" % to_px(verts[i]) for i in cycle)
        width = max(0.25, 1.6 * 0.7**level)
        out.append(
            f'<polygon points="{pts}" fill="none" stroke="#1a1a8c" '
            f'stroke-width="{width:.2f}"/>'
        )
        radius = max(1.0, 4.0 * cube.e_w)
        for i, v in enumerate(verts):
            x, y = to_px(v)
            if i % 2 == 0:
                dots.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius:.2f}" fill="#c23" />')
            else:
                dots.append(
                    f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius:.2f}" fill="white" '
                    'stroke="#c23" stroke-width="0.8"/>'
                )
    out.extend(dots)

    root = _project(vertex_bits(ifs.n).astype(float), ifs.n)
    signs = oriented_edges(ifs.n).entries
    for i in range(signs.shape[0]):
        for j in range(signs.shape[1]):
            if signs[i, j] == 0:
                continue
            odd, even = 2 * i + 1, 2 * j
            tail, head = (even, odd) if signs[i, j] > 0 else (odd, even)
            (x1, y1), (x2, y2) = to_px(root[tail]), to_px(root[head])
            # shorten toward the head so the arrowhead stays visible
            x2s, y2s = x1 + 0.92 * (x2 - x1), y1 + 0.92 * (y2 - y1)
            out.append(
                f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2s:.3f}" y2="{y2s:.3f}" '
                'stroke="#444" stroke-width="1.2" marker-end="url(#arrow)"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(ifs: IfsSystem, depth: int, path, size: int = 640, budget: int | None = None):
    doc = render_svg(ifs, depth, size=size, budget=budget)
    with open(path, "w") as fh:
        fh.write(doc)
    return path
