"""Point-set files and deterministic generators."""

from __future__ import annotations

import math
import random
from pathlib import Path
from typing import Union

from .errors import GenerationFailed, PointFileError
from .geom import COORD_LIMIT, Point, PointSet, convex_hull, orient, validate_general_position

SHAPES = ("convex", "random", "grid-perturbed")
MAX_RETRIES = 200


def parse_points(text: str) -> PointSet:
    """Parse ``x y`` integer pairs, one per line; ``#`` starts a comment."""
    coords = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise PointFileError(f"line {lineno}: expected 'x y', got {raw!r}")
        try:
            coords.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise PointFileError(f"line {lineno}: non-integer coordinate in {raw!r}") from None
    return PointSet(coords)


def read_points(path: Union[str, Path]) -> PointSet:
    return parse_points(Path(path).read_text())


def format_points(S: PointSet, comment: str = "") -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [f"{p.x} {p.y}" for p in S]
    return "\n".join(lines) + "\n"


def write_points(S: PointSet, path: Union[str, Path], comment: str = "") -> None:
    Path(path).write_text(format_points(S, comment))


def _fits(cand, pts) -> bool:
    if any((q.x, q.y) == (cand.x, cand.y) for q in pts):
        return False
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if orient(pts[i], pts[j], cand) == 0:
                return False
    return True


def _convex(n: int, rng: random.Random) -> PointSet:
    radius = COORD_LIMIT // 4
    for _ in range(MAX_RETRIES):
        offset = rng.random()
        coords = []
        for i in range(n):
            ang = 2 * math.pi * (i + offset + 0.3 * rng.random()) / n
            coords.append((round(radius * math.cos(ang)), round(radius * math.sin(ang))))
        S = PointSet(coords)
        if validate_general_position(S) and len(convex_hull(S)) == n:
            return S
    raise GenerationFailed(f"no convex {n}-gon found after {MAX_RETRIES} tries")


def _incremental(n: int, rng: random.Random, propose) -> PointSet:
    pts: list[Point] = []
    for i in range(n):
        for _ in range(MAX_RETRIES):
            x, y = propose(i)
            cand = Point(i, x, y)
            if _fits(cand, pts):
                pts.append(cand)
                break
        else:
            raise GenerationFailed(f"could not place point {i} in general position")
    return PointSet([(p.x, p.y) for p in pts])


def generate(shape: str, n: int, seed: int = 0) -> PointSet:
    """Deterministic general-position point set of the given shape."""
    if n < 3:
        raise ValueError("n must be >= 3")
    rng = random.Random(f"{shape}:{n}:{seed}")
    if shape == "convex":
        return _convex(n, rng)
    if shape == "random":
        span = 1 << 16
        return _incremental(n, rng, lambda i: (rng.randrange(span), rng.randrange(span)))
    if shape == "grid-perturbed":
        side = math.isqrt(n - 1) + 1
        step, jitter = 1000, 150

        def propose(i):
            gx, gy = divmod(i, side)
            return gx * step + rng.randint(-jitter, jitter), gy * step + rng.randint(-jitter, jitter)

        return _incremental(n, rng, propose)
    raise ValueError(f"unknown shape {shape!r}; choose from {', '.join(SHAPES)}")
