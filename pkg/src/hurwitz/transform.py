"""Transformations of ramification data, families and witnesses.

* ``compose``: ramification type of ``g o f`` for a covering ``f`` whose branch
  points are placed at points of a base map ``g``.
* ``add_edges``: grow one entry in each of two slots by ``k`` while every other
  slot gains ``k`` unramified sheets; genus is unchanged.
* ``merge_families``: slotwise union of irregular parts.
* ``split_2222``: the splitting of ``[1^k_i, 3^m_i, 2*]`` families of genus 1
  into two smaller halves, with its 12 exceptional types.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Sequence

from .perms import Constellation, Perm, cycles_of
from .ramcore import FamilySpec, Partition, RamData, parse_family

Point = Hashable


# ---------------------------------------------------------------------------
# Base maps and composition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseMap:
    """A rational map ``g`` given by its degree and the fibres over chosen targets.

    ``points`` lists ``(target, ((preimage, multiplicity), ...))``.  Targets
    that are not listed are assumed unramified, and so are preimages of listed
    targets that carry no branch point of the inner covering.
    """

    name: str
    degree: int
    points: tuple[tuple[Point, tuple[tuple[Point, int], ...]], ...]

    def __post_init__(self):
        seen = set()
        for target, fibre in self.points:
            total = sum(e for _, e in fibre)
            if total != self.degree:
                raise ValueError(f"fibre over {target!r} has multiplicity {total}, not {self.degree}")
            for p, e in fibre:
                if e < 1:
                    raise ValueError(f"multiplicity of {p!r} must be positive")
                if p in seen:
                    raise ValueError(f"preimage {p!r} listed twice")
                seen.add(p)

    def preimages(self) -> dict[Point, tuple[Point, int]]:
        """preimage -> (target, multiplicity)"""
        return {p: (t, e) for t, fibre in self.points for p, e in fibre}


def _labels(points) -> tuple:
    return tuple((t, tuple(fibre)) for t, fibre in points)


SQUARE = BaseMap("x^2", 2, _labels([
    ("0", [("0", 2)]),
    ("1", [("1", 1), ("-1", 1)]),
    ("inf", [("inf", 2)]),
    ("-1", [("i", 1), ("-i", 1)]),
]))

CUBE = BaseMap("x^3", 3, _labels([
    ("0", [("0", 3)]),
    ("1", [("1", 1), ("w", 1), ("w2", 1)]),
    ("inf", [("inf", 3)]),
    ("-1", [("-1", 1), ("-w", 1), ("-w2", 1)]),
]))

# x^2 (x - 1): critical points 0 (double root) and 2/3; the second critical
# value -4/27 has fibre {2/3 (double), -1/3}.  Simple preimages get labels.
CUBIC_21 = BaseMap("x^2(x-1)", 3, _labels([
    ("0", [("0", 2), ("1", 1)]),
    ("-4/27", [("2/3", 2), ("-1/3", 1)]),
    ("inf", [("inf", 3)]),
    ("c", [("c1", 1), ("c2", 1), ("c3", 1)]),
]))


def identity_map(labels: Sequence[Point]) -> BaseMap:
    return BaseMap("id", 1, tuple((t, ((t, 1),)) for t in labels))


BUILTIN_MAPS = {"x^2": SQUARE, "x^3": CUBE, "x^2(x-1)": CUBIC_21}


def compose(f: RamData, placement: Sequence[Point], g: BaseMap) -> RamData:
    """Ramification type of ``g o f`` with branch point ``i`` of ``f`` over ``placement[i]``.

    Composite slots follow the order of ``g.points``; targets whose composite
    partition is all ones are dropped.
    """
    if len(placement) != len(f):
        raise ValueError(f"{len(f)} branch points but {len(placement)} placements")
    pre = g.preimages()
    at: dict[Point, Partition] = {}
    for i, p in enumerate(placement):
        if p not in pre:
            raise ValueError(f"branch point {i} placed at unknown point {p!r}")
        if p in at:
            raise ValueError(f"branch points collide at {p!r}")
        at[p] = f[i]
    n = f.degree
    out = []
    for target, fibre in g.points:
        entries = []
        for p, e in fibre:
            part = at.get(p)
            entries.extend(e * x for x in (part.entries if part is not None else [1] * n))
        if any(x > 1 for x in entries):
            out.append(entries)
    return RamData(out)


# ---------------------------------------------------------------------------
# Adding edges
# ---------------------------------------------------------------------------


def _remove_one(entries: Sequence[int], x: int, slot: int) -> list[int]:
    entries = list(entries)
    try:
        entries.remove(x)
    except ValueError:
        raise ValueError(f"slot {slot} has no entry {x}") from None
    return entries


def add_edges(t: RamData, slot_a: int, a: int, slot_b: int, b: int, k: int) -> RamData:
    """Type-level move: ``a -> a+k`` in ``slot_a``, ``b -> b+k`` in ``slot_b``, ``k`` ones elsewhere."""
    r = len(t)
    if r < 3:
        raise ValueError("adding edges needs at least three branch points")
    if k < 0:
        raise ValueError("k must be non-negative")
    if slot_a == slot_b or not (0 <= slot_a < r and 0 <= slot_b < r):
        raise ValueError("slots must be distinct and in range")
    parts = []
    for j, p in enumerate(t):
        if j == slot_a:
            parts.append(_remove_one(p.entries, a, j) + [a + k])
        elif j == slot_b:
            parts.append(_remove_one(p.entries, b, j) + [b + k])
        else:
            parts.append(list(p.entries) + [1] * k)
    return RamData(parts)


def _splice(perms: list[list[int]], lo: int, elo: int, hi: int, ehi: int, k: int) -> bool:
    n = len(perms[0])
    between = perms[lo + 1:hi]

    def through_between(x: int) -> int:
        for p in reversed(between):
            x = p[x]
        return x

    lo_len = {x: len(cyc) for cyc in cycles_of(perms[lo]) for x in cyc}
    hi_len = {x: len(cyc) for cyc in cycles_of(perms[hi]) for x in cyc}
    v = next((v for v in range(n) if hi_len[v] == ehi
              and lo_len[through_between(perms[hi][v])] == elo), None)
    if v is None:
        return False
    for step in range(k):
        p = n + step
        for q in perms:
            q.append(p)
        w = perms[hi][v]
        u = through_between(w)
        perms[hi][v], perms[hi][p] = p, w
        perms[lo][u], perms[lo][p] = p, perms[lo][u]
        v = p
    return True


def add_edges_witness(c: Constellation, slot_a: int, a: int, slot_b: int, b: int,
                      k: int, budget: int = 0) -> Constellation:
    """Constellation realizing ``add_edges(type(c), ...)``, built by splicing new points.

    With ``lo < hi`` the two slots, a new point ``p`` enters the cycle of
    ``s_hi`` right after some ``v`` and the cycle of ``s_lo`` right after
    ``u = B(s_hi(v))``, where ``B`` is the product of the slots strictly
    between; all other slots fix ``p``.  This keeps the product trivial.
    Repeating at ``v = p`` grows the same two cycles.  If no ``v`` joins
    cycles of the requested lengths, the tuple is rotated cyclically (which
    conjugates the product) so that the complementary slots play ``B``.
    Failing that, a positive ``budget`` allows a fresh search at the target
    type; otherwise ``ValueError`` is raised.
    """
    t = c.ram_data()
    target = add_edges(t, slot_a, a, slot_b, b, k)  # validates the request
    if k == 0:
        return c
    (lo, elo), (hi, ehi) = sorted([(slot_a, a), (slot_b, b)])
    r = len(c)
    perms = [list(p.images) for p in c]
    if _splice(perms, lo, elo, hi, ehi, k):
        return Constellation(Perm(q) for q in perms)
    rot = perms[hi:] + perms[:hi]
    if _splice(rot, 0, ehi, lo + r - hi, elo, k):
        return Constellation(Perm(q) for q in rot[r - hi:] + rot[:r - hi])
    if budget:
        from .search import realize

        res = realize(target, budget=budget)
        if res.status == "witness":
            return res.constellation
    raise ValueError("no sheet joins the two chosen cycles; try another witness")


# ---------------------------------------------------------------------------
# Merging and splitting families
# ---------------------------------------------------------------------------


def merge_families(f1: FamilySpec, f2: FamilySpec) -> FamilySpec:
    if f1.base != f2.base:
        raise ValueError(f"bases differ: {list(f1.base)} vs {list(f2.base)}")
    return FamilySpec(f1.base, [A + B for A, B in zip(f1.irregular, f2.irregular)])


EXCEPTIONAL_SPLIT = {
    1: "[1^3,3^3,2*][2*][2*][2*]",
    2: "[1^2,3^2,2*][1,3,2*][2*][2*]",
    3: "[1,3^3,2*][1^2,2*][2*][2*]",
    4: "[3^2,2*][1^3,3,2*][2*][2*]",
    5: "[3^2,2*][1^2,2*][1,3,2*][2*]",
    6: "[1,3,2*][1,3,2*][1,3,2*][2*]",
    7: "[1^2,3,2*][1,2*][3,2*][3,2*]",
    8: "[1,2*][1,2*][3,2*][1,3^2,2*]",
    9: "[1,2*][1,2*][1,2*][3^3,2*]",
    10: "[1,2*][1,2*][1,2*][1,3^4,2*]",
    11: "[3,2*][3,2*][3,2*][1^3,2*]",
    12: "[3,2*][3,2*][3,2*][1^4,3,2*]",
}
_EXCEPTIONAL_KEYS = {parse_family(s).canonical(): i for i, s in EXCEPTIONAL_SPLIT.items()}
_FORBIDDEN_HALVES = {parse_family(s).canonical() for s in ("[2*][2*][2*][2*]", "[1,3,2*][2*][2*][2*]")}


@dataclass(frozen=True)
class Split:
    case: str
    halves: tuple[FamilySpec, FamilySpec]

    status = "split"


@dataclass(frozen=True)
class Exceptional:
    id: int
    case: str

    status = "exceptional"

    @property
    def family(self) -> FamilySpec:
        return parse_family(EXCEPTIONAL_SPLIT[self.id])


@dataclass(frozen=True)
class NotApplicable:
    reason: str

    status = "not-applicable"


def family_13(k: Sequence[int], m: Sequence[int]) -> FamilySpec:
    return FamilySpec((2, 2, 2, 2), [[1] * ki + [3] * mi for ki, mi in zip(k, m)])


def counts_13(f: FamilySpec) -> tuple[list[int], list[int]]:
    """Inverse of ``family_13``; rejects anything but ``[1^k, 3^m, 2*]`` slots."""
    if f.base != (2, 2, 2, 2) or any(x not in (1, 3) for A in f.irregular for x in A):
        raise ValueError(f"{f} is not of the form [1^k,3^m,2*]^4")
    c = [Counter(A) for A in f.irregular]
    return [x[1] for x in c], [x[3] for x in c]


def _case_slots(k, m, parity):
    """``(case, a, b)``: the slotwise counts of ones and threes moved to the first half."""
    r = range(4)
    zero = [0] * 4
    if parity == 0:
        for i in r:
            if k[i] >= 2 and m[i] >= 2:
                a, b = zero[:], zero[:]
                a[i] = b[i] = 2
                return "a", a, b
        for i in r:
            if k[i] <= 1 and m[i] >= 2:
                j = next(j for j in r if j != i and k[j] >= 2)
                a, b = zero[:], zero[:]
                b[i], a[j] = 2, 2
                return "b", a, b
        if all(mi <= 1 for mi in m):
            pair = [i for i in r if m[i] == 1][:2]
            a, b = zero[:], zero[:]
            for i in pair:
                a[i] = b[i] = 1
            return "c", a, b
    else:
        for p in r:
            for q in r:
                if q <= p or k[p] < 1 or k[q] < 1:
                    continue
                rest = [i for i in r if i not in (p, q) and m[i] >= 1]
                if len(rest) == 2:
                    a, b = zero[:], zero[:]
                    a[p] = a[q] = b[rest[0]] = b[rest[1]] = 1
                    return "d", a, b
        with_m = [i for i in r if m[i] >= 1]
        if len(with_m) <= 1:
            (i,) = with_m
            a, b = [1] * 4, zero[:]
            a[i], b[i] = 0, 3
            return "e", a, b
        with_k = [i for i in r if k[i] >= 1]
        if len(with_k) <= 1:
            (i,) = with_k
            a, b = zero[:], [1] * 4
            a[i], b[i] = 3, 0
            return "f", a, b
    raise AssertionError(f"no splitting case applies to k={k}, m={m}")


def split_2222(k: Sequence[int], m: Sequence[int]):
    """Split ``T = [1^k_i, 3^m_i, 2*]_i`` into two genus-1 halves.

    Returns ``Split`` (halves in the original slot order), ``Exceptional`` for
    the 12 types the case analysis cannot split, or ``NotApplicable`` when the
    error is at most 10.
    """
    k, m = [int(x) for x in k], [int(x) for x in m]
    if len(k) != 4 or len(m) != 4 or min(k + m) < 0:
        raise ValueError("need four non-negative counts of ones and of threes")
    if sum(k) != sum(m):
        raise ValueError(f"genus is not 1: {sum(k)} ones but {sum(m)} threes")
    parities = {(ki + mi) % 2 for ki, mi in zip(k, m)}
    if len(parities) != 1:
        raise ValueError("slots disagree on the parity of the degree; the family has no members")
    T = family_13(k, m)
    if T.error <= 10:
        return NotApplicable(f"error {T.error} <= 10")
    case, a, b = _case_slots(k, m, parities.pop())
    T1 = family_13(a, b)
    T2 = family_13([x - y for x, y in zip(k, a)], [x - y for x, y in zip(m, b)])
    if T1.canonical() in _FORBIDDEN_HALVES or T2.canonical() in _FORBIDDEN_HALVES:
        ident = _EXCEPTIONAL_KEYS.get(T.canonical())
        if ident is None:
            raise AssertionError(f"{T} fails case ({case}) but is not a listed exception")
        return Exceptional(ident, case)
    return Split(case, (T1, T2))


def split_family(f: FamilySpec):
    return split_2222(*counts_13(f))
