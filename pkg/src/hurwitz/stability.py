"""Approximate solutions of relator sets in symmetric groups.

A word is a tuple of ``(generator, exponent)`` letters with 1-based generator
indices and exponents ``+1`` or ``-1``.  Words are evaluated left to right as
products under the package convention, so ``a1 a2`` on ``(p, q)`` is ``p * q``.
"""

from __future__ import annotations

import re
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .perms import Perm

Letter = tuple[int, int]
Word = tuple[Letter, ...]


def hamming(p: Perm, q: Perm) -> Fraction:
    """Fraction of points on which ``p`` and ``q`` differ."""
    if len(p) != len(q):
        raise ValueError("degree mismatch")
    n = len(p)
    return Fraction(sum(1 for x, y in zip(p.images, q.images) if x != y), n)


_TOKEN = re.compile(r"a(\d+)(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """``"a1^2 a2 a3^-1"`` -> letters; ``"1"`` or ``""`` is the empty word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    letters: list[Letter] = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        gen, exp = int(m.group(1)), int(m.group(2) or 1)
        if gen < 1:
            raise ValueError("generators are numbered from 1")
        letters.extend([(gen, 1 if exp > 0 else -1)] * abs(exp))
    return tuple(letters)


def parse_relators(text: str) -> list[Word]:
    return [parse_word(part) for part in text.split(",")]


def word_str(w: Word) -> str:
    if not w:
        return "1"
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        gen, sign = w[i]
        e = (j - i) * sign
        out.append(f"a{gen}" if e == 1 else f"a{gen}^{e}")
        i = j
    return " ".join(out)


def triangle_relators(base: Sequence[int]) -> list[Word]:
    """``a_i^{k_i}`` for each slot, then the product relator ``a_1 ... a_r``."""
    rels: list[Word] = [tuple([(i, 1)] * k) for i, k in enumerate(base, start=1)]
    rels.append(tuple((i, 1) for i in range(1, len(base) + 1)))
    return rels


def eval_word(w: Word, perms: Sequence[Perm], n: int | None = None) -> Perm:
    if n is None:
        if not perms:
            raise ValueError("degree unknown for an empty tuple")
        n = len(perms[0])
    images = list(range(n))
    # right-to-left application: the last letter acts first
    for gen, sign in reversed(w):
        if not 1 <= gen <= len(perms):
            raise IndexError(f"generator a{gen} out of range for {len(perms)} permutations")
        p = perms[gen - 1].images
        if sign > 0:
            images = [p[x] for x in images]
        else:
            inv = [0] * n
            for x, y in enumerate(p):
                inv[y] = x
            images = [inv[x] for x in images]
    return Perm(images)


@dataclass(frozen=True)
class DeltaReport:
    ok: bool
    delta: Fraction
    defects: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "delta": str(self.delta), "defects": [str(d) for d in self.defects]}


def is_delta_solution(relators: Sequence[Word], perms: Sequence[Perm], delta) -> DeltaReport:
    """Is every relator within normalized Hamming distance ``< delta`` of the identity?"""
    delta = Fraction(delta)
    n = len(perms[0])
    ident = Perm.identity(n)
    defects = tuple(hamming(eval_word(w, perms, n), ident) for w in relators)
    return DeltaReport(all(d < delta for d in defects), delta, defects)


@dataclass(frozen=True)
class RateVerdict:
    """Finite-sample diagnostic for ``k_i / n_i -> 0``; a proxy, not a limit."""

    max_ratio: Fraction
    tail_slope: float
    tail_decreasing: bool

    def to_json(self) -> dict:
        return {
            "max_ratio": str(self.max_ratio),
            "tail_slope": self.tail_slope,
            "tail_decreasing": self.tail_decreasing,
            "kind": "finite-sample proxy",
        }


def quasi_local_rate(changes: Sequence[tuple[int, int]]) -> RateVerdict:
    """Ratios ``k_i/n_i``: the maximum and the least-squares slope over the later half."""
    if len(changes) < 2:
        raise ValueError("need at least two samples")
    degrees = [n for n, _ in changes]
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly increasing")
    ratios = [Fraction(k, n) for n, k in changes]
    tail = len(changes) // 2
    xs = [float(n) for n in degrees[tail:]] if len(changes) - tail >= 2 else [float(n) for n in degrees]
    ys = [float(q) for q in ratios[-len(xs):]]
    slope = statistics.linear_regression(xs, ys).slope
    return RateVerdict(max(ratios), slope, slope < 0)
