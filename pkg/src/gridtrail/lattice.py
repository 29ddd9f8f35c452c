"""Grids, lattice points, trails, and the exact JSON interchange format.

A grid is a box of integer points with per-axis extents stored sorted
ascending (the largest axis last).  Lattice points are plain int tuples;
trail vertices are tuples of QuadExt scalars so that turn points may sit
off-lattice and be irrational while staying exactly representable.

The interchange file is bit-exact JSON:

    {"dims": [2, 2, 2], "cycle": true,
     "vertices": [[coord, ...], ...]}

where each coord is an integer, a rational string "p/q", or a 4-list
[q0, q1, q2, q3] of rational strings standing for
q0 + q1*sqrt2 + q2*sqrt3 + q3*sqrt6.  Floating-point literals are
rejected outright.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import GridSizeError, TrailFormatError
from .quadext import QuadExt

DEFAULT_POINT_CAP = 10_000_000
POINT_CAP_ENV = "GRIDTRAIL_POINT_CAP"

LatticePoint = tuple  # tuple[int, ...]
Vertex = tuple  # tuple[QuadExt, ...]


def point_cap() -> int:
    """Enumeration cap, overridable through GRIDTRAIL_POINT_CAP."""
    raw = os.environ.get(POINT_CAP_ENV)
    if raw is None:
        return DEFAULT_POINT_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{POINT_CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{POINT_CAP_ENV} must be positive")
    return value


@dataclass(frozen=True)
class Grid:
    """Box of lattice points; dims are sorted ascending on construction."""

    dims: tuple

    def __init__(self, dims: Sequence[int]):
        dims = tuple(dims)
        if not dims:
            raise ValueError("grid needs at least one axis")
        for n in dims:
            if isinstance(n, bool) or not isinstance(n, int):
                raise ValueError(f"axis extent must be an int, got {n!r}")
            if n < 1:
                raise ValueError(f"axis extent must be >= 1, got {n}")
        object.__setattr__(self, "dims", tuple(sorted(dims)))

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def point_count(self) -> int:
        return math.prod(self.dims)

    @property
    def is_hypercubic(self) -> bool:
        return len(set(self.dims)) == 1

    @property
    def n(self) -> int:
        if not self.is_hypercubic:
            raise ValueError(f"grid {self.dims} is not hypercubic")
        return self.dims[0]

    def contains(self, point: Sequence[int]) -> bool:
        return len(point) == self.k and all(0 <= c < n for c, n in zip(point, self.dims))

    def points(self, cap: int | None = None) -> Iterator[LatticePoint]:
        """Every lattice point exactly once, lexicographic order."""
        limit = point_cap() if cap is None else cap
        if self.point_count > limit:
            raise GridSizeError(
                f"grid {self.dims} has {self.point_count} points, above the cap {limit}"
            )
        return itertools.product(*(range(n) for n in self.dims))

    def __str__(self) -> str:
        return "x".join(str(n) for n in self.dims)


def hypercube(n: int, k: int) -> Grid:
    """The k-dimensional grid with n points per axis."""
    return Grid((n,) * k)


def axis_sort_permutation(dims: Sequence[int]) -> tuple:
    """Permutation p with sorted(dims)[i] == dims[p[i]] (stable)."""
    return tuple(sorted(range(len(dims)), key=lambda i: (dims[i], i)))


def permute_coords(seq: Sequence, permutation: Sequence[int]) -> tuple:
    return tuple(seq[i] for i in permutation)


def to_vertex(coords: Iterable) -> Vertex:
    """Coerce ints/Fractions/QuadExt into a vertex tuple."""
    out = []
    for c in coords:
        if isinstance(c, QuadExt):
            out.append(c)
        else:
            out.append(QuadExt(Fraction(c)))
    return tuple(out)


class Trail:
    """Ordered polygonal chain; link count is len(vertices) - 1.

    Construction enforces shape only (at least one link, consistent
    dimension).  Semantic problems such as zero-length links, repeated
    segments, or a cycle flag that disagrees with the endpoints are
    reported by the verifier's validate_trail so that files can be loaded
    and diagnosed rather than refused at parse time.
    """

    __slots__ = ("vertices", "is_cycle")

    def __init__(self, vertices: Sequence[Vertex], is_cycle: bool = False):
        vertices = tuple(to_vertex(v) for v in vertices)
        if len(vertices) < 2:
            raise ValueError("a trail needs at least two vertices (one link)")
        dim = len(vertices[0])
        if dim < 1 or any(len(v) != dim for v in vertices):
            raise ValueError("all trail vertices must share one positive dimension")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "is_cycle", bool(is_cycle))

    def __setattr__(self, name, value):
        raise AttributeError("Trail is immutable")

    @classmethod
    def from_vertices(cls, vertices: Sequence[Vertex]) -> "Trail":
        """Build a trail, deriving the cycle flag from the endpoints."""
        vs = [to_vertex(v) for v in vertices]
        return cls(vs, is_cycle=(len(vs) >= 2 and vs[0] == vs[-1]))

    @property
    def link_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def links(self) -> Iterator[tuple]:
        for a, b in zip(self.vertices, self.vertices[1:]):
            yield a, b

    def reversed(self) -> "Trail":
        return Trail(tuple(reversed(self.vertices)), is_cycle=self.is_cycle)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trail):
            return NotImplemented
        return self.vertices == other.vertices and self.is_cycle == other.is_cycle

    def __hash__(self) -> int:
        return hash((self.vertices, self.is_cycle))

    def __repr__(self) -> str:
        return f"Trail({self.link_count} links, cycle={self.is_cycle})"


# -- interchange format ------------------------------------------------

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def _fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_rational(text: str, where: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise TrailFormatError(f"{where}: expected a rational string like 'p/q', got {text!r}")
    return Fraction(text)


def encode_coord(value: QuadExt):
    """Exact JSON form: int, 'p/q', or a 4-list of rational strings."""
    if value.is_rational:
        f = value.as_fraction()
        return int(f) if f.denominator == 1 else _fraction_str(f)
    return [_fraction_str(q) for q in (value.q0, value.q1, value.q2, value.q3)]


def decode_coord(obj, where: str = "coord") -> QuadExt:
    if isinstance(obj, bool):
        raise TrailFormatError(f"{where}: booleans are not coordinates")
    if isinstance(obj, float):
        raise TrailFormatError(f"{where}: floating-point literals are not accepted")
    if isinstance(obj, int):
        return QuadExt(obj)
    if isinstance(obj, str):
        return QuadExt(_parse_rational(obj, where))
    if isinstance(obj, list):
        if len(obj) != 4:
            raise TrailFormatError(f"{where}: coefficient list must have exactly 4 entries")
        coeffs = []
        for i, part in enumerate(obj):
            if isinstance(part, bool) or isinstance(part, float):
                raise TrailFormatError(f"{where}[{i}]: expected an exact rational")
            if isinstance(part, int):
                coeffs.append(Fraction(part))
            else:
                coeffs.append(_parse_rational(part, f"{where}[{i}]"))
        return QuadExt(*coeffs)
    raise TrailFormatError(f"{where}: unsupported coordinate form {type(obj).__name__}")


class TrailFile(NamedTuple):
    grid: Grid
    trail: Trail
    axis_permutation: tuple


def trail_to_obj(grid: Grid, trail: Trail) -> dict:
    if trail.dimension != grid.k:
        raise TrailFormatError(
            f"trail dimension {trail.dimension} does not match grid {grid.dims}"
        )
    return {
        "dims": list(grid.dims),
        "cycle": trail.is_cycle,
        "vertices": [[encode_coord(c) for c in v] for v in trail.vertices],
    }


def trail_from_obj(obj) -> TrailFile:
    if not isinstance(obj, dict):
        raise TrailFormatError("top level must be a JSON object")
    for key in ("dims", "cycle", "vertices"):
        if key not in obj:
            raise TrailFormatError(f"missing required key {key!r}")
    dims = obj["dims"]
    if not isinstance(dims, list) or not dims:
        raise TrailFormatError("'dims' must be a non-empty list of integers")
    for n in dims:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise TrailFormatError(f"'dims' entries must be positive integers, got {n!r}")
    cycle = obj["cycle"]
    if not isinstance(cycle, bool):
        raise TrailFormatError("'cycle' must be a boolean")
    raw_vertices = obj["vertices"]
    if not isinstance(raw_vertices, list) or len(raw_vertices) < 2:
        raise TrailFormatError("'vertices' must list at least two vertices")
    k = len(dims)
    perm = axis_sort_permutation(dims)
    vertices = []
    for vi, raw in enumerate(raw_vertices):
        if not isinstance(raw, list) or len(raw) != k:
            raise TrailFormatError(f"vertices[{vi}] must be a list of {k} coordinates")
        coords = [decode_coord(c, f"vertices[{vi}][{ci}]") for ci, c in enumerate(raw)]
        vertices.append(permute_coords(coords, perm))
    grid = Grid(dims)
    return TrailFile(grid, Trail(vertices, is_cycle=cycle), perm)


def _reject_float(text: str):
    raise TrailFormatError(f"floating-point literal {text!r} is not accepted")


def loads_trail(text: str) -> TrailFile:
    try:
        obj = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except TrailFormatError:
        raise
    except json.JSONDecodeError as exc:
        raise TrailFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return trail_from_obj(obj)


def dumps_trail(grid: Grid, trail: Trail) -> str:
    return json.dumps(trail_to_obj(grid, trail), indent=2) + "\n"


def read_trail_file(path) -> TrailFile:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_trail(fh.read())


def write_trail_file(path, grid: Grid, trail: Trail) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_trail(grid, trail))
