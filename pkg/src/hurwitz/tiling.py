"""Regular torus tilings as quotients of the hexagonal or square tiling.

Polygons are indexed by ``Z^2``: axial coordinates for hexagons (six
neighbours ``(+-1, 0), (0, +-1), (1, -1), (-1, 1)``) and ordinary coordinates
for squares (four neighbours).  A torus tiling is the quotient by the lattice
spanned by the columns of an integer matrix; it has ``det`` polygons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .ramcore import RamData, genus, is_euclidean

SHAPES = ("hexagon", "square")

_NEIGHBOURS = {
    "hexagon": ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)),
    "square": ((1, 0), (-1, 0), (0, 1), (0, -1)),
}


def polygon_distance(v: Sequence[int], shape: str) -> int:
    """Graph distance from the origin polygon to polygon ``v``."""
    x, y = v
    if shape == "hexagon":
        return (abs(x) + abs(y) + abs(x + y)) // 2
    if shape == "square":
        return abs(x) + abs(y)
    raise ValueError(f"unknown shape {shape!r}")


def disk(r: int, shape: str) -> Iterator[tuple[int, int]]:
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if polygon_distance((x, y), shape) <= r:
                yield (x, y)


@dataclass(frozen=True)
class LatticeBasis:
    """Rows of a 2x2 integer matrix; its columns span the lattice."""

    m: tuple[tuple[int, int], tuple[int, int]]

    @classmethod
    def from_columns(cls, u: Sequence[int], v: Sequence[int]) -> "LatticeBasis":
        return cls(((u[0], v[0]), (u[1], v[1])))

    @property
    def columns(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (a, b), (c, d) = self.m
        return (a, c), (b, d)

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.m
        return a * d - b * c

    @property
    def n(self) -> int:
        return self.det

    def column_lengths(self) -> tuple[float, float]:
        u, v = self.columns
        return math.hypot(*u), math.hypot(*v)

    def cos_angle(self) -> float:
        u, v = self.columns
        lu, lv = self.column_lengths()
        return (u[0] * v[0] + u[1] * v[1]) / (lu * lv)

    def contains(self, w: Sequence[int]) -> bool:
        """Is ``w`` an integer combination of the columns?"""
        (a, b), (c, d) = self.m
        det = self.det
        x, y = w
        # adjugate solve of M z = w
        return (d * x - b * y) % det == 0 and (-c * x + a * y) % det == 0

    def to_json(self) -> dict:
        return {"columns": [list(c) for c in self.columns], "det": self.det}


@dataclass(frozen=True)
class TorusTiling:
    shape: str
    basis: LatticeBasis

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.basis.det <= 0:
            raise ValueError("lattice basis must have positive determinant")

    @property
    def polygons(self) -> int:
        return self.basis.det

    def to_json(self, radius: int | None = None) -> dict:
        doc = {"shape": self.shape, "basis": self.basis.to_json(), "polygons": self.polygons}
        if radius is not None:
            doc["disk_radius"] = radius
        return doc


def tile_torus(n: int, shape: str = "hexagon") -> TorusTiling:
    """Lattice of determinant ``n`` with long columns and a non-degenerate angle.

    ``n = a^2`` uses ``diag(a, a)``.  Otherwise ``a^2 < n < (a+1)^2`` and one of
    ``(a+1)^2 - n`` or ``n - a^2`` is at most ``a``; the first case uses
    columns ``(a+1, 1), (k, a+1)``, the second ``(a, 1), (-k, a)``.
    """
    if n < 1:
        raise ValueError("need at least one polygon")
    a = math.isqrt(n)
    if a * a == n:
        basis = LatticeBasis.from_columns((a, 0), (0, a))
    elif (a + 1) ** 2 - n <= a:
        k = (a + 1) ** 2 - n
        basis = LatticeBasis.from_columns((a + 1, 1), (k, a + 1))
    else:
        k = n - a * a
        basis = LatticeBasis.from_columns((a, 1), (-k, a))
    assert basis.det == n
    return TorusTiling(shape, basis)


def max_disk_radius(t: TorusTiling) -> int:
    """Largest ``r`` whose radius-``r`` disk of polygons injects into the torus.

    Two disk polygons collide iff their difference, which ranges over the
    radius-``2r`` disk, is a nonzero lattice vector.
    """
    r = 0
    while True:
        shell = 2 * r + 1, 2 * r + 2
        for w in disk(shell[1], t.shape):
            if w != (0, 0) and polygon_distance(w, t.shape) in shell and t.basis.contains(w):
                return r
        r += 1


def is_regular_spherical(data: RamData, base: Sequence[int]) -> bool:
    """Genus-0 data whose slotwise lcm reproduces the Euclidean base."""
    if not is_euclidean(base):
        raise ValueError(f"base {list(base)} is not Euclidean")
    if genus(data) != 0:
        raise ValueError("regular spherical types are genus 0")
    if len(base) != len(data):
        raise ValueError("base length does not match number of partitions")
    return all(p.lcm() == k for p, k in zip(data, base))


def hermite_form(basis: LatticeBasis) -> tuple[int, int, int]:
    """``(p, q, s)`` with the lattice spanned by ``(p, q)`` and ``(0, s)``."""
    (a, b), (c, d) = basis.m
    # columns (a, c), (b, d); gcd-reduce on the first coordinate
    u, v = [a, c], [b, d]
    while v[0] != 0:
        t = u[0] // v[0]
        u = [u[0] - t * v[0], u[1] - t * v[1]]
        u, v = v, u
    if u[0] < 0:
        u = [-u[0], -u[1]]
    p, s = u[0], abs(v[1])
    return p, u[1] % s, s


def coset_rep(w: Sequence[int], hnf: tuple[int, int, int]) -> tuple[int, int]:
    p, q, s = hnf
    x, y = w
    i = x // p
    x, y = x - i * p, y - i * q
    return x, y % s


def quotient_dot(t: TorusTiling) -> str:
    """Adjacency graph of the polygons of the torus in DOT form."""
    hnf = hermite_form(t.basis)
    p, _, s = hnf
    reps = [(x, y) for x in range(p) for y in range(s)]
    index = {v: i for i, v in enumerate(reps)}
    edges = set()
    for v in reps:
        for dx, dy in _NEIGHBOURS[t.shape]:
            w = coset_rep((v[0] + dx, v[1] + dy), hnf)
            e = tuple(sorted((index[v], index[w])))
            edges.add(e)
    lines = ["graph torus {", f'  graph [shape="{t.shape}", polygons={t.polygons}];']
    for i, v in enumerate(reps):
        lines.append(f'  p{i} [pos="{v[0]},{v[1]}"];')
    for i, j in sorted(edges):
        lines.append(f"  p{i} -- p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
