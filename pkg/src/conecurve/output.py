"""CSV and SVG artifact writers.

Numbers are serialized with 17 significant digits so files re-parse
bit-exactly; footer comments carry events and stop reasons behind '#'
markers.  SVG output is a standalone 1.1 document of polyline projections.
"""

from __future__ import annotations

import math
import os
import tempfile
from typing import Iterable, Sequence

import numpy as np


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence], footer: Sequence[str] = ()) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    lines.extend(f"# {c}" for c in footer)
    _atomic_write(path, "\n".join(lines) + "\n")


def read_csv(path: str):
    """Parse a CSV written by write_csv: (header, float array, footer comments)."""
    header: list[str] = []
    rows: list[list[float]] = []
    comments: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif not header:
                header = line.split(",")
            else:
                rows.append([float(v) for v in line.split(",")])
    return header, np.array(rows), comments


def write_text(path: str, text: str) -> None:
    _atomic_write(path, text)


def _project(xy: np.ndarray, bbox, size, margin) -> list[tuple[float, float]]:
    (x0, y0, x1, y1) = bbox
    w = x1 - x0 or 1.0
    h = y1 - y0 or 1.0
    scale = (size - 2 * margin) / max(w, h)
    ox = margin + (size - 2 * margin - w * scale) / 2
    oy = margin + (size - 2 * margin - h * scale) / 2
    return [(ox + (x - x0) * scale, size - (oy + (y - y0) * scale)) for x, y in xy]


_PALETTE = ["#1f6fb2", "#d95f02", "#1b9e77", "#7570b3", "#e7298a"]


def svg_document(
    polylines: Sequence[np.ndarray],
    labels: Sequence[str] | None = None,
    circles: Sequence[tuple[float, float, float]] = (),
    ref_lines: Sequence[tuple[float, float, float, float]] = (),
    size: int = 600,
    margin: int = 30,
    title: str = "",
) -> str:
    """Standalone SVG of 2-d polylines with optional reference circles/lines.

    polylines: arrays of shape (n, 2) in data coordinates; circles are
    (cx, cy, r); ref_lines are (x0, y0, x1, y1), drawn dashed.
    """
    pts = np.vstack([p for p in polylines if len(p)]) if polylines else np.zeros((1, 2))
    extra = []
    for cx, cy, r in circles:
        extra.append([cx - r, cy - r])
        extra.append([cx + r, cy + r])
    for x0, y0, x1, y1 in ref_lines:
        extra.append([x0, y0])
        extra.append([x1, y1])
    if extra:
        pts = np.vstack([pts, np.array(extra)])
    bbox = (pts[:, 0].min(), pts[:, 1].min(), pts[:, 0].max(), pts[:, 1].max())

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        parts.append(f'<title>{title}</title>')
    for cx, cy, r in circles:
        (px, py), = _project(np.array([[cx, cy]]), bbox, size, margin)
        (qx, qy), = _project(np.array([[cx + r, cy]]), bbox, size, margin)
        parts.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{abs(qx - px):.2f}" fill="none" '
            'stroke="#999999" stroke-dasharray="6 4" stroke-width="1"/>'
        )
    for x0, y0, x1, y1 in ref_lines:
        (px, py), (qx, qy) = _project(np.array([[x0, y0], [x1, y1]]), bbox, size, margin)
        parts.append(
            f'<line x1="{px:.2f}" y1="{py:.2f}" x2="{qx:.2f}" y2="{qy:.2f}" '
            'stroke="#999999" stroke-dasharray="6 4" stroke-width="1"/>'
        )
    for i, poly in enumerate(polylines):
        if not len(poly):
            continue
        proj = _project(poly, bbox, size, margin)
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in proj)
        color = _PALETTE[i % len(_PALETTE)]
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        if labels and i < len(labels):
            x0, y0 = proj[0]
            parts.append(
                f'<text x="{x0 + 4:.2f}" y="{y0 - 4:.2f}" font-size="11" '
                f'fill="{color}">{labels[i]}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def write_svg(path: str, document: str) -> None:
    _atomic_write(path, document)
