"""Dessins as bicoloured maps read off a constellation.

For a constellation ``(s_1, ..., s_r)`` the dessin has ``n`` central vertices
(the sheets), one vertex of colour ``j`` per cycle of ``s_j`` for ``j < r``,
an edge from each sheet to the colour-``j`` vertex containing it, and one face
per cycle of ``s_r``.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .perms import Constellation, Perm
from .ramcore import Partition, RamData


class UnverifiedConstellation(ValueError):
    pass


@dataclass(frozen=True)
class Dessin:
    constellation: Constellation

    @property
    def degree(self) -> int:
        return self.constellation.degree

    @property
    def colors(self) -> int:
        return len(self.constellation) - 1

    @cached_property
    def vertex_cycles(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(tuple(map(tuple, p.cycles())) for p in self.constellation.perms[:-1])

    @cached_property
    def face_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.constellation.perms[-1].cycles()))

    def vertex_degrees(self, color: int) -> Partition:
        """Degrees of colour ``color`` vertices (1-based colour, as branch points are)."""
        return Partition(len(c) for c in self.vertex_cycles[color - 1])

    def face_degrees(self) -> Partition:
        return Partition(len(c) for c in self.face_cycles)

    @property
    def num_vertices(self) -> int:
        return self.degree + sum(len(cs) for cs in self.vertex_cycles)

    @property
    def num_edges(self) -> int:
        return self.colors * self.degree

    @property
    def num_faces(self) -> int:
        return len(self.face_cycles)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2 or chi > 2:
            raise ValueError(f"Euler characteristic {chi} is not that of a closed surface")
        return (2 - chi) // 2

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "vertices": [[list(c) for c in cs] for cs in self.vertex_cycles],
            "faces": [list(c) for c in self.face_cycles],
            "euler_characteristic": self.euler_characteristic(),
            "genus": self.genus(),
        }


def from_constellation(c: Constellation) -> Dessin:
    if not c.product_is_identity:
        raise UnverifiedConstellation("product of the permutations is not the identity")
    if not c.transitive:
        raise UnverifiedConstellation("permutations do not generate a transitive group")
    return Dessin(c)


def ram_type_of(d: Dessin) -> RamData:
    return RamData([d.vertex_degrees(j) for j in range(1, d.colors + 1)] + [d.face_degrees()])


@dataclass(frozen=True)
class CanonicalForm:
    labeling: tuple[int, ...]   # point -> canonical label
    encoding: tuple[tuple[int, ...], ...]
    digest: str


def _bfs_labeling(perms: list[tuple[int, ...]], n: int, seed: int) -> list[int]:
    label = [-1] * n
    label[seed] = 0
    queue = deque([seed])
    nxt = 1
    while queue:
        x = queue.popleft()
        for p in perms:
            y = p[x]
            if label[y] < 0:
                label[y] = nxt
                nxt += 1
                queue.append(y)
    return label


def canonical_form(d: Dessin) -> CanonicalForm:
    """Least relabelled image table over all BFS seeds.

    Two transitive constellations get the same encoding exactly when they are
    simultaneously conjugate.
    """
    perms = [p.images for p in d.constellation]
    n = d.degree
    best = None
    best_label = None
    for seed in range(n):
        label = _bfs_labeling(perms, n, seed)
        if min(label) < 0:
            raise ValueError("canonical form needs a transitive constellation")
        inv = [0] * n
        for x, l in enumerate(label):
            inv[l] = x
        enc = tuple(tuple(label[p[inv[i]]] for i in range(n)) for p in perms)
        if best is None or enc < best:
            best, best_label = enc, label
    digest = hashlib.sha256(json.dumps(best, separators=(",", ":")).encode()).hexdigest()
    return CanonicalForm(tuple(best_label), best, digest)


def relabel(c: Constellation, labeling: tuple[int, ...]) -> Constellation:
    return c.conjugate(Perm(labeling))


def reorder(c: Constellation, i: int) -> Constellation:
    """Swap branch points ``i`` and ``i+1`` by a braid move (duality transformation)."""
    perms = list(c.perms)
    a, b = perms[i], perms[i + 1]
    perms[i], perms[i + 1] = b, b.inverse() * a * b
    return Constellation(perms)


def export_dot(d: Dessin) -> str:
    """Bipartite incidence graph: sheets to vertex cycles, one edge per (sheet, colour)."""
    n = d.degree
    lines = ["graph dessin {"]
    faces = " ".join("(" + " ".join(map(str, f)) + ")" for f in d.face_cycles)
    lines.append(f'  graph [faces="{faces}", face_degrees="{d.face_degrees()}", genus={d.genus()}];')
    for x in range(n):
        lines.append(f'  s{x} [color=0, shape=point];')
    for j, cycles in enumerate(d.vertex_cycles, start=1):
        for k, cyc in enumerate(cycles):
            lines.append(f'  c{j}_{k} [color={j}, degree={len(cyc)}];')
    for j, cycles in enumerate(d.vertex_cycles, start=1):
        owner = {}
        for k, cyc in enumerate(cycles):
            for x in cyc:
                owner[x] = k
        for x in range(n):
            lines.append(f"  s{x} -- c{j}_{owner[x]} [color={j}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
