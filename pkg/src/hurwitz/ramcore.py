"""Ramification data, almost-regular families and their exact arithmetic.

A *partition* is the multiset of ramification indices over one branch point.
A *ramification data* is a tuple of nontrivial partitions of a common degree.
An almost-regular *family* fixes a base type ``[k_1, ..., k_r]`` together with
irregular multisets ``A_j``; its member of degree ``n`` pads slot ``j`` with
copies of ``k_j`` until it sums to ``n``.

Text grammar::

    [1,3][2,2][2,2][2,2]          ramification data
    [1,3|2*][2*][2*][2*]          family; entries before ``|`` are irregular
"""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

EUCLIDEAN_BASES = ((2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6))


class GrammarError(ValueError):
    """Malformed bracket notation; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class NotRamificationData(ValueError):
    """The Riemann-Hurwitz genus is negative or not an integer."""

    def __init__(self, value: Fraction):
        super().__init__(f"genus {value} is not a nonnegative integer")
        self.value = value


class InvalidDegree(ValueError):
    def __init__(self, degree: int, slots: Sequence[int], reason: str):
        super().__init__(f"degree {degree} invalid for slots {list(slots)}: {reason}")
        self.degree = degree
        self.slots = tuple(slots)


class UnsupportedBase(ValueError):
    pass


# ---------------------------------------------------------------------------
# Partition / RamData
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    """Multiset of positive integers, stored in descending order."""

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int]):
        entries = tuple(sorted((int(e) for e in entries), reverse=True))
        if any(e < 1 for e in entries):
            raise ValueError(f"partition entries must be positive: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def sum(self) -> int:
        return sum(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __contains__(self, e: object) -> bool:
        return e in self.entries

    def is_trivial(self) -> bool:
        return all(e == 1 for e in self.entries)

    def counts(self) -> Counter:
        return Counter(self.entries)

    def lcm(self) -> int:
        return math.lcm(*self.entries)

    def weight(self) -> int:
        """``sum(e - 1)``, the contribution to the Riemann-Hurwitz sum."""
        return self.sum - len(self.entries)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, sorted(self.entries))) + "]"


@dataclass(frozen=True)
class RamData:
    partitions: tuple[Partition, ...]

    def __init__(self, partitions: Iterable[Partition | Iterable[int]]):
        parts = tuple(p if isinstance(p, Partition) else Partition(p) for p in partitions)
        if len(parts) < 2:
            raise ValueError("ramification data needs at least two partitions")
        sums = {p.sum for p in parts}
        if len(sums) != 1:
            raise ValueError(f"partition sums disagree: {[p.sum for p in parts]}")
        for i, p in enumerate(parts):
            if p.is_trivial():
                raise ValueError(f"partition {i} is trivial: {p}")
        object.__setattr__(self, "partitions", parts)

    @property
    def degree(self) -> int:
        return self.partitions[0].sum

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.partitions)

    def __getitem__(self, i: int) -> Partition:
        return self.partitions[i]

    def __str__(self) -> str:
        return "".join(str(p) for p in self.partitions)

    def to_json(self) -> dict:
        return {"degree": self.degree, "partitions": [sorted(p.entries) for p in self.partitions]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "RamData":
        if isinstance(doc, str):
            doc = json.loads(doc)
        data = cls(doc["partitions"])
        if "degree" in doc and doc["degree"] != data.degree:
            raise ValueError(f"declared degree {doc['degree']} != {data.degree}")
        return data


def raw_genus(data: RamData) -> Fraction:
    n = data.degree
    return 1 - n + Fraction(sum(p.weight() for p in data), 2)


def genus(data: RamData) -> int:
    """Riemann-Hurwitz genus; raises :class:`NotRamificationData` otherwise."""
    g = raw_genus(data)
    if g.denominator != 1 or g < 0:
        raise NotRamificationData(g)
    return int(g)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def is_euclidean(base: Sequence[int]) -> bool:
    return sum(1 - Fraction(1, k) for k in base) == 2


@dataclass(frozen=True, order=True)
class FamilySpec:
    base: tuple[int, ...]
    irregular: tuple[tuple[int, ...], ...]

    def __init__(self, base: Iterable[int], irregular: Iterable[Iterable[int]] | None = None):
        base = tuple(int(k) for k in base)
        if irregular is None:
            irregular = [()] * len(base)
        irregular = tuple(tuple(sorted((int(a) for a in A), reverse=True)) for A in irregular)
        if len(base) != len(irregular):
            raise ValueError("base and irregular parts differ in length")
        if len(base) < 2 or any(k < 2 for k in base):
            raise ValueError(f"base entries must be >= 2: {base}")
        for j, (k, A) in enumerate(zip(base, irregular)):
            if k in A:
                raise ValueError(f"slot {j}: irregular part {A} contains the regular entry {k}")
            if any(a < 1 for a in A):
                raise ValueError(f"slot {j}: irregular entries must be positive")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "irregular", irregular)

    @property
    def error(self) -> int:
        return sum(sum(A) for A in self.irregular)

    @property
    def sums(self) -> tuple[int, ...]:
        return tuple(sum(A) for A in self.irregular)

    def is_euclidean(self) -> bool:
        return is_euclidean(self.base)

    def is_regular(self) -> bool:
        return not any(self.irregular)

    def canonical(self) -> "FamilySpec":
        """Least arrangement of the irregular parts among slots with equal base entry."""
        slots = list(self.irregular)
        for k in set(self.base):
            idx = [j for j, kj in enumerate(self.base) if kj == k]
            for j, A in zip(idx, sorted(slots[j] for j in idx)):
                slots[j] = A
        return FamilySpec(self.base, slots)

    def sort_key(self):
        return (self.base, self.error, self.irregular)

    def __str__(self) -> str:
        out = []
        for k, A in zip(self.base, self.irregular):
            if A:
                out.append("[" + ",".join(map(str, sorted(A))) + f"|{k}*]")
            else:
                out.append(f"[{k}*]")
        return "".join(out)

    def to_json(self) -> dict:
        return {"base": list(self.base), "irregular": [sorted(A) for A in self.irregular]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "FamilySpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(doc["base"], doc["irregular"])


def raw_family_genus(f: FamilySpec) -> Fraction:
    if not f.is_euclidean():
        raise UnsupportedBase(f"base {list(f.base)} is not Euclidean")
    total = sum(Fraction(s, k) - len(A) for k, s, A in zip(f.base, f.sums, f.irregular))
    return 1 + total / 2


def family_genus(f: FamilySpec) -> int:
    g = raw_family_genus(f)
    if g.denominator != 1 or g < 0:
        raise NotRamificationData(g)
    return int(g)


def _degree_problems(f: FamilySpec, n: int) -> tuple[list[int], str]:
    bad = [j for j, (k, s) in enumerate(zip(f.base, f.sums)) if n < s or (n - s) % k]
    if bad:
        return bad, "congruence or size violated"
    trivial = [
        j for j, (k, s, A) in enumerate(zip(f.base, f.sums, f.irregular))
        if n == s and all(a == 1 for a in A)
    ]
    if trivial:
        return trivial, "partition would be trivial"
    return [], ""


def member(f: FamilySpec, n: int) -> RamData:
    bad, reason = _degree_problems(f, n)
    if bad:
        raise InvalidDegree(n, bad, reason)
    return RamData(
        list(A) + [k] * ((n - s) // k) for k, s, A in zip(f.base, f.sums, f.irregular)
    )


@dataclass(frozen=True)
class DegreeProgression:
    start: int
    step: int

    def __iter__(self) -> Iterator[int]:
        return itertools.count(self.start, self.step)

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and n >= self.start and (n - self.start) % self.step == 0

    def take(self, count: int) -> list[int]:
        return list(itertools.islice(self, count))


def valid_degrees(f: FamilySpec) -> DegreeProgression | None:
    """All degrees with a member, as ``n0 + step*i``; ``None`` if there are none."""
    step = math.lcm(*f.base)
    # Past this bound every slot has room for one regular entry, so validity
    # only depends on n mod step.
    bound = max(s + k for k, s in zip(f.base, f.sums))
    for n in range(1, bound + step + 1):
        if not _degree_problems(f, n)[0]:
            return DegreeProgression(n, step)
    return None


def family_of(data: RamData, base: Sequence[int]) -> FamilySpec:
    """Strip regular entries from ``data`` to recover its family over ``base``."""
    if len(base) != len(data):
        raise ValueError("base length does not match number of partitions")
    return FamilySpec(base, [[e for e in p if e != k] for p, k in zip(data, base)])


def classify(data: RamData) -> FamilySpec:
    """Generalized almost-regular reading of a concrete data.

    The regular entry of each slot is its most frequent entry >= 2, ties going
    to the larger value.
    """
    base = []
    for p in data:
        counts = Counter(e for e in p if e >= 2)
        base.append(max(counts, key=lambda e: (counts[e], e)))
    return family_of(data, base)


def _irregular_parts(k: int, budget: int) -> list[tuple[int, ...]]:
    """Multisets of positive integers != k with sum <= budget, descending tuples."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], largest: int, left: int) -> None:
        out.append(tuple(prefix))
        for a in range(min(largest, left), 0, -1):
            if a == k:
                continue
            prefix.append(a)
            rec(prefix, a, left - a)
            prefix.pop()

    rec([], budget, budget)
    return out


def enumerate_families(base: Sequence[int], target_genus: int, eps_max: int) -> list[FamilySpec]:
    """All almost-regular families over ``base`` with error <= eps_max and the given genus."""
    base = tuple(base)
    if not is_euclidean(base):
        raise UnsupportedBase(f"base {list(base)} is not Euclidean")
    options = [_irregular_parts(k, eps_max) for k in base]
    found: set[FamilySpec] = set()

    def rec(j: int, chosen: list[tuple[int, ...]], used: int, total: Fraction) -> None:
        if j == len(base):
            if 1 + total / 2 != target_genus:
                return
            f = FamilySpec(base, chosen)
            if valid_degrees(f) is not None:
                found.add(f.canonical())
            return
        k = base[j]
        for A in options[j]:
            s = sum(A)
            if used + s > eps_max:
                continue
            chosen.append(A)
            rec(j + 1, chosen, used + s, total + Fraction(s, k) - len(A))
            chosen.pop()

    rec(0, [], 0, Fraction(0))
    return sorted(found, key=FamilySpec.sort_key)


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------

_SPACE = re.compile(r"\s*")


def _split_brackets(text: str) -> list[tuple[str, int]]:
    groups = []
    i = 0
    while True:
        i = _SPACE.match(text, i).end()
        if i == len(text):
            break
        if text[i] != "[":
            raise GrammarError("expected '['", text, i)
        j = text.find("]", i)
        if j < 0:
            raise GrammarError("unclosed '['", text, i)
        if "[" in text[i + 1:j]:
            raise GrammarError("nested '['", text, text.index("[", i + 1))
        groups.append((text[i + 1:j], i + 1))
        i = j + 1
    if not groups:
        raise GrammarError("no partitions", text, 0)
    return groups


_TOKEN = re.compile(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def _parse_entries(body: str, offset: int, text: str) -> list[int]:
    entries: list[int] = []
    if not body.strip():
        return entries
    pos = offset
    for token in body.split(","):
        m = _TOKEN.match(token)
        if not m or int(m.group(1)) < 1:
            raise GrammarError("expected a positive integer", text, pos)
        entries.extend([int(m.group(1))] * int(m.group(2) or 1))
        pos += len(token) + 1
    return entries


def parse_ramdata(text: str) -> RamData:
    """Parse ``[1,3][2,2][2,2][2,2]``; ``e^m`` is accepted for repeated entries."""
    parts = []
    for body, offset in _split_brackets(text):
        if "|" in body or "*" in body:
            raise GrammarError("family notation in ramification data", text, offset)
        entries = _parse_entries(body, offset, text)
        if not entries:
            raise GrammarError("empty partition", text, offset)
        parts.append(entries)
    try:
        return RamData(parts)
    except ValueError as exc:
        raise GrammarError(str(exc), text, 0) from None


_STAR = re.compile(r"\s*(\d+)\s*\*\s*$")


def parse_family(text: str) -> FamilySpec:
    """Parse ``[1,3|2*][2*][2*][2*]``; ``[1,3,2*]`` is accepted as well."""
    base, irregular = [], []
    for body, offset in _split_brackets(text):
        if "|" in body:
            left, right = body.split("|", 1)
            m = _STAR.match(right)
            if not m:
                raise GrammarError("expected 'k*' after '|'", text, offset + len(left) + 1)
            A = _parse_entries(left, offset, text)
        else:
            head, _, tail = body.rpartition(",")
            m = _STAR.match(tail)
            if not m:
                raise GrammarError("expected a regular filler 'k*'", text, offset)
            A = _parse_entries(head, offset, text) if head.strip() else []
        base.append(int(m.group(1)))
        irregular.append(A)
    try:
        return FamilySpec(base, irregular)
    except ValueError as exc:
        raise GrammarError(str(exc), text, 0) from None


def is_family_text(text: str) -> bool:
    return "*" in text
