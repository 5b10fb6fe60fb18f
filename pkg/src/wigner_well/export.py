"""CSV and PGM writers for Wigner fields.

CSV files start with ``# key = value`` metadata lines, then a ``x,p,value``
header and one row per grid node in x-major order, every number printed with
17 significant digits. Images are binary P5 greymaps with ``x`` running left to
right and ``p`` increasing upwards; the positive and negative parts of a field
go to separate images, each scaled so that 255 is its own largest magnitude.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from .core import PhaseSpaceGrid, WignerField, STATIONARY

GRID_KEYS = ("x_min", "x_max", "nx", "p_min", "p_max", "np")


def _fmt(value):
    return format(float(value), ".17g")


def _metadata_lines(field, metadata):
    grid = field.grid
    items = {key: getattr(grid, key) for key in GRID_KEYS}
    items["timestamp"] = field.timestamp
    items.update(metadata or {})
    lines = []
    for key, value in items.items():
        if isinstance(value, float):
            value = _fmt(value)
        text = str(value)
        if "\n" in text or "\r" in text:
            raise ValueError(f"metadata value for {key!r} spans several lines")
        lines.append(f"{key} = {text}")
    return lines


def field_to_csv(field: WignerField, metadata=None):
    buffer = io.StringIO(newline="")
    for line in _metadata_lines(field, metadata):
        buffer.write(f"# {line}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["x", "p", "value"])
    x, p = field.grid.x, field.grid.p
    p_text = [_fmt(v) for v in p]
    for i, xi in enumerate(x):
        x_text = _fmt(xi)
        row = field.values[i]
        writer.writerows((x_text, p_text[j], _fmt(row[j])) for j in range(len(p)))
    return buffer.getvalue()


def write_csv(path, field: WignerField, metadata=None):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(field_to_csv(field, metadata))


def read_csv(path):
    """Load a field written by :func:`write_csv`; returns ``(field, metadata)``."""
    metadata = {}
    with open(path, encoding="utf-8", newline="") as handle:
        body = []
        for line in handle:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(" = ")
                metadata[key] = value
            else:
                body.append(line)
    rows = list(csv.reader(body))
    if not rows or rows[0] != ["x", "p", "value"]:
        raise ValueError(f"{path}: missing 'x,p,value' header")
    grid = PhaseSpaceGrid(
        float(metadata["x_min"]),
        float(metadata["x_max"]),
        int(metadata["nx"]),
        float(metadata["p_min"]),
        float(metadata["p_max"]),
        int(metadata["np"]),
    )
    values = np.array([float(r[2]) for r in rows[1:]]).reshape(grid.shape)
    stamp = metadata.get("timestamp", STATIONARY)
    timestamp = stamp if stamp == STATIONARY else float(stamp)
    return WignerField(grid, values, timestamp), metadata


def sign_split(values):
    """Positive part and negated negative part, both non-negative."""
    values = np.asarray(values, dtype=float)
    return np.maximum(values, 0.0), np.maximum(-values, 0.0)


def to_pixels(magnitude):
    """Scale non-negative values to 0..255 with 255 at the maximum; all-zero stays zero."""
    magnitude = np.asarray(magnitude, dtype=float)
    peak = magnitude.max() if magnitude.size else 0.0
    if not peak > 0:
        return np.zeros(magnitude.shape, dtype=np.uint8)
    return np.rint(255.0 * magnitude / peak).astype(np.uint8)


def pgm_bytes(magnitude, comments=()):
    """Binary P5 image of an (nx, np) array: columns are x, top row is the largest p."""
    pixels = to_pixels(magnitude).T[::-1]
    height, width = pixels.shape
    header = ["P5"] + [f"# {c}" for c in comments] + [f"{width} {height}", "255"]
    return ("\n".join(header) + "\n").encode("ascii") + np.ascontiguousarray(pixels).tobytes()


def read_pgm(path):
    """Parse a P5 file written by :func:`write_pgm`; returns ``(pixels, comments)``."""
    with open(path, "rb") as handle:
        data = handle.read()
    comments, tokens, pos = [], [], 0
    while len(tokens) < 4:
        end = data.index(b"\n", pos)
        line = data[pos:end].decode("ascii")
        pos = end + 1
        if line.startswith("#"):
            comments.append(line[1:].strip())
        else:
            tokens.extend(line.split())
    if tokens[0] != "P5" or tokens[3] != "255":
        raise ValueError(f"{path}: not an 8-bit P5 greymap")
    width, height = int(tokens[1]), int(tokens[2])
    pixels = np.frombuffer(data[pos:pos + width * height], dtype=np.uint8)
    return pixels.reshape(height, width), comments


def write_pgm(path, magnitude, comments=()):
    with open(path, "wb") as handle:
        handle.write(pgm_bytes(magnitude, comments))


def write_field(prefix, field: WignerField, metadata=None, formats=("csv", "pgm")):
    """Write ``prefix.csv`` and/or ``prefix_pos.pgm`` / ``prefix_neg.pgm``; returns the paths."""
    written = []
    if "csv" in formats:
        path = f"{prefix}.csv"
        write_csv(path, field, metadata)
        written.append(path)
    if "pgm" in formats:
        comments = _metadata_lines(field, metadata)
        positive, negative = sign_split(field.values)
        for suffix, part in (("pos", positive), ("neg", negative)):
            path = f"{prefix}_{suffix}.pgm"
            write_pgm(path, part, comments + [f"part = {suffix}"])
            written.append(path)
    return written
