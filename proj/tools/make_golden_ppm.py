#!/usr/bin/env python3
"""Renders tests/golden/fixtures.json to P6 files with a standalone
implementation of the pixel mapping, for byte comparison with the C++
renderer."""

import json
import math
from pathlib import Path

GRID_SHADE = 160


def shade(value, peak, gamma):
    if not peak > 0:
        return 255
    ratio = min(max(value / peak, 0.0), 1.0)
    return 255 - int(math.floor(255.0 * ratio ** gamma + 0.5))


def render(fixture):
    spec = fixture["spec"]
    n_q, n_b, cells = fixture["n_q"], fixture["n_b"], fixture["cells"]
    px, grid = spec["cell_px"], spec["grid_lines"]
    width = n_b * px + (n_b + 1 if grid else 0)
    height = n_q * px + (n_q + 1 if grid else 0)
    peaks = [max(cells[r][c][ch] for r in range(n_q) for c in range(n_b)) for ch in range(3)]
    image = [[(GRID_SHADE,) * 3 for _ in range(width)] for _ in range(height)]
    pitch = px + (1 if grid else 0)
    origin = 1 if grid else 0
    for r in range(n_q):
        for c in range(n_b):
            if spec["mode"] == "gray":
                g = shade(cells[r][c][0], peaks[0], spec["gamma"])
                colour = (g, g, g)
            else:
                colour = tuple(shade(cells[r][c][ch], peaks[ch], spec["gamma"]) for ch in range(3))
            for y in range(origin + r * pitch, origin + r * pitch + px):
                for x in range(origin + c * pitch, origin + c * pitch + px):
                    image[y][x] = colour
    body = bytes(v for row in image for pixel in row for v in pixel)
    return f"P6\n{width} {height}\n255\n".encode("ascii") + body


def main():
    here = Path(__file__).resolve().parent.parent / "tests" / "golden"
    fixtures = json.loads((here / "fixtures.json").read_text())["fixtures"]
    for fixture in fixtures:
        (here / (fixture["name"] + ".ppm")).write_bytes(render(fixture))


if __name__ == "__main__":
    main()
