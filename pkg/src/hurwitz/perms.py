"""Permutations on ``{0, ..., n-1}`` and constellations.

Composition convention: ``p * q`` is ``p o q``, i.e. ``q`` is applied first,
so ``(p * q)(x) == p(q(x))``.  A constellation ``(s_1, ..., s_r)`` satisfies
``s_1 * s_2 * ... * s_r == identity``.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .ramcore import Partition, RamData


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        self.count -= 1


def is_transitive(images: Sequence[Sequence[int]], n: int) -> bool:
    uf = UnionFind(n)
    for p in images:
        for x in range(n):
            uf.union(x, p[x])
            if uf.count == 1:
                return True
    return uf.count == 1


def orbits(images: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    uf = UnionFind(n)
    for p in images:
        for x in range(n):
            uf.union(x, p[x])
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    return sorted(groups.values())


def cycles_of(images: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(images)
    out = []
    for x in range(len(images)):
        if seen[x]:
            continue
        cyc = []
        y = x
        while not seen[y]:
            seen[y] = True
            cyc.append(y)
            y = images[y]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int) -> "Perm":
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            for i, x in enumerate(cyc):
                if x in seen or not 0 <= x < n:
                    raise ValueError(f"bad cycle point {x}")
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, n: int) -> "Perm":
        """Cycle notation, e.g. ``(0 1)(2 3 4)``; commas are optional."""
        text = text.strip()
        if text in ("", "()", "1", "id"):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [[int(t) for t in re.split(r"[\s,]+", body.strip())]
                  for body in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(cycles, n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(other) != len(self):
            raise ValueError("degree mismatch")
        p = self.images
        return Perm(p[y] for y in other.images)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def conjugate(self, g: "Perm") -> "Perm":
        """``g * self * g^-1``: the relabelling of ``self`` along ``g``."""
        out = [0] * len(self.images)
        for x, y in enumerate(self.images):
            out[g.images[x]] = g.images[y]
        return Perm(out)

    def cycles(self) -> list[list[int]]:
        return cycles_of(self.images)

    def cycle_type(self) -> Partition:
        return Partition(len(c) for c in self.cycles())

    def num_cycles(self) -> int:
        return len(self.cycles())

    def fixed_points(self) -> list[int]:
        return [x for x, y in enumerate(self.images) if x == y]

    def support_size(self) -> int:
        return sum(1 for x, y in enumerate(self.images) if x != y)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def cycle_type(p: Perm) -> Partition:
    return p.cycle_type()


def compose_all(perms: Sequence[Perm]) -> Perm:
    """``perms[0] * perms[1] * ... * perms[-1]``."""
    return reduce(lambda a, b: a * b, perms)


@dataclass(frozen=True)
class Constellation:
    perms: tuple[Perm, ...]

    def __init__(self, perms: Iterable[Perm]):
        perms = tuple(perms)
        if len(perms) < 2:
            raise ValueError("a constellation needs at least two permutations")
        if len({len(p) for p in perms}) != 1:
            raise ValueError("permutations of different degrees")
        object.__setattr__(self, "perms", perms)

    @property
    def degree(self) -> int:
        return len(self.perms[0])

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)

    def __getitem__(self, i: int) -> Perm:
        return self.perms[i]

    def product(self) -> Perm:
        return compose_all(self.perms)

    @cached_property
    def product_is_identity(self) -> bool:
        return self.product().is_identity()

    @cached_property
    def transitive(self) -> bool:
        return is_transitive([p.images for p in self.perms], self.degree)

    def cycle_types(self) -> tuple[Partition, ...]:
        return tuple(p.cycle_type() for p in self.perms)

    def ram_data(self) -> RamData:
        return RamData(self.cycle_types())

    def conjugate(self, g: Perm) -> "Constellation":
        return Constellation(p.conjugate(g) for p in self.perms)

    def to_text(self) -> str:
        return " | ".join(str(p) for p in self.perms)

    def to_json(self) -> list[list[int]]:
        return [list(p.images) for p in self.perms]

    @classmethod
    def parse(cls, text: str, n: int) -> "Constellation":
        return cls(Perm.parse(part, n) for part in text.split("|"))

    @classmethod
    def from_json(cls, doc: str | list) -> "Constellation":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(Perm(images) for images in doc)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class VerifyReport:
    """``failure`` is the first violated condition; ``violations`` lists all of them."""

    ok: bool
    failure: str | None = None
    detail: str = ""
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "failure": self.failure, "detail": self.detail,
                "violations": list(self.violations)}


def verify(c: Constellation, data: RamData) -> VerifyReport:
    """Check cycle types, identity product and transitivity, in that order."""
    if c.degree != data.degree or len(c) != len(data):
        return VerifyReport(False, "shape", f"constellation is {len(c)} perms of degree {c.degree}, "
                                            f"data is {len(data)} partitions of degree {data.degree}",
                            ("shape",))
    found: list[tuple[str, str]] = []
    for i, (p, part) in enumerate(zip(c, data)):
        if p.cycle_type() != part:
            found.append(("cycle_type", f"slot {i}: {p.cycle_type()} != {part}"))
            break
    if not c.product_is_identity:
        found.append(("product", f"product is {c.product()}"))
    if not c.transitive:
        found.append(("transitivity", f"orbits {orbits([p.images for p in c], c.degree)}"))
    if not found:
        return VerifyReport(True)
    return VerifyReport(False, found[0][0], found[0][1], tuple(name for name, _ in found))


def is_fpf_involution(p: Perm) -> bool:
    return all(y != x and p.images[y] == x for x, y in enumerate(p.images))


def involution_product_profile(x: Perm, y: Perm) -> Partition:
    """Cycle type of ``x * y`` for two fixed-point-free involutions."""
    if len(x) != len(y):
        raise ValueError("degree mismatch")
    for name, p in (("x", x), ("y", y)):
        if not is_fpf_involution(p):
            raise ValueError(f"{name} is not a fixed-point-free involution")
    return (x * y).cycle_type()


def cycle_length_counts(p: Partition) -> Counter:
    return Counter(p.entries)
