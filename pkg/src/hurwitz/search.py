"""Exhaustive constellation search.

``realize`` decides whether ramification data is the cycle type of a
transitive permutation tuple with identity product.  Internally the slots are
reordered so that the two largest conjugacy classes are the fixed slot (one
canonical representative) and the forced slot (the inverse of the partial
product).  Middle slots are enumerated cycle by cycle; the last of them is
built point by point while the forced permutation is tracked as a set of
partial chains, which prunes every branch that closes a cycle of a length not
left in the forced partition.  Found tuples are moved back to the requested
slot order by braid moves ``(a, b) -> (b, b^-1 a b)``.

The search tree is split statically by the first cycle of the first middle
slot.  Node counts and outcomes are computed as if the pieces ran one after
the other, so results do not depend on ``threads``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .perms import Constellation, Perm, is_transitive, verify
from .ramcore import FamilySpec, Partition, RamData, genus, member, valid_degrees

DEFAULT_BUDGET = 10**9
CENTRALIZER_THRESHOLD = 24
# Orbit-minimality tests cost one conjugation per centralizer element.
CENTRALIZER_CAP = 20_000


@dataclass(frozen=True)
class Witness:
    constellation: Constellation
    nodes: int
    status: str = field(default="witness", init=False)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "degree": self.constellation.degree,
            "nodes": self.nodes,
            "cycles": self.constellation.to_text(),
            "images": self.constellation.to_json(),
        }


@dataclass(frozen=True)
class ProvenUnsat:
    degree: int
    nodes: int
    space: int
    status: str = field(default="unsat", init=False)

    def to_json(self) -> dict:
        return {"status": self.status, "degree": self.degree, "nodes": self.nodes,
                "search_space": self.space}


@dataclass(frozen=True)
class Unknown:
    degree: int
    nodes: int
    budget: int
    status: str = field(default="unknown", init=False)

    def to_json(self) -> dict:
        return {"status": self.status, "degree": self.degree, "nodes": self.nodes,
                "budget": self.budget}


SearchResult = Witness | ProvenUnsat | Unknown


def class_size(p: Partition) -> int:
    """Number of permutations of cycle type ``p``."""
    denom = 1
    for length, mult in p.counts().items():
        denom *= length**mult * math.factorial(mult)
    return math.factorial(p.sum) // denom


def canonical_images(p: Partition) -> list[int]:
    """Cycles on consecutive blocks, longest first: [3,1] -> (0 1 2)(3)."""
    images = []
    start = 0
    for length in p.entries:
        images.extend(start + (i + 1) % length for i in range(length))
        start += length
    return images


def centralizer_order(p: Partition) -> int:
    order = 1
    for length, mult in p.counts().items():
        order *= length**mult * math.factorial(mult)
    return order


def centralizer_elements(p: Partition) -> list[list[int]]:
    """All permutations commuting with ``canonical_images(p)``."""
    n = p.sum
    blocks: dict[int, list[list[int]]] = {}
    start = 0
    for length in p.entries:
        blocks.setdefault(length, []).append(list(range(start, start + length)))
        start += length
    per_length = []
    for length, bl in blocks.items():
        options = []
        for perm in itertools.permutations(range(len(bl))):
            for shifts in itertools.product(range(length), repeat=len(bl)):
                pairs = []
                for i, (target, s) in enumerate(zip(perm, shifts)):
                    src, dst = bl[i], bl[target]
                    pairs.extend((src[t], dst[(t + s) % length]) for t in range(length))
                options.append(pairs)
        per_length.append(options)
    out = []
    for combo in itertools.product(*per_length):
        images = [0] * n
        for pairs in combo:
            for x, y in pairs:
                images[x] = y
        out.append(images)
    return out


class _BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class _Plan:
    n: int
    order: tuple[int, ...]            # internal slot -> requested slot
    parts: tuple[tuple[int, ...], ...]  # partitions in internal order
    budget: int
    centralizer: bool


def _first_cycles(counts: Counter, n: int) -> list[tuple[int, ...]]:
    """First-cycle choices (through point 0) of a cycle-by-cycle enumeration."""
    out = []
    for length in sorted(counts, reverse=True):
        for rest in itertools.permutations(range(1, n), length - 1):
            out.append((0,) + rest)
    return out


class _Runner:
    """One piece of the search: the first middle slot's first cycle is fixed."""

    def __init__(self, plan: _Plan, first_cycle: tuple[int, ...]):
        self.plan = plan
        self.n = plan.n
        self.first_cycle = first_cycle
        self.nodes = 0
        self.budget = plan.budget
        parts = [Partition(p) for p in plan.parts]
        self.fixed = canonical_images(parts[0])
        self.middle = [Counter(p.entries) for p in parts[1:-1]]
        self.forced = Counter(parts[-1].entries)
        self.cent: list[list[int]] | None = None
        if plan.centralizer and len(self.middle) >= 2:
            order = centralizer_order(parts[0])
            if CENTRALIZER_THRESHOLD < order <= CENTRALIZER_CAP:
                self.cent = centralizer_elements(parts[0])

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded

    # -- plain enumeration of a full conjugacy class --------------------------------

    def _enumerate(self, counts: Counter, prefix: tuple[int, ...] | None) -> Iterator[list[int]]:
        n = self.n
        sig = [-1] * n
        free = [True] * n
        counts = Counter(counts)

        def place(cyc: Sequence[int]) -> None:
            for i, x in enumerate(cyc):
                sig[x] = cyc[(i + 1) % len(cyc)]
                free[x] = False
            counts[len(cyc)] -= 1

        def unplace(cyc: Sequence[int]) -> None:
            for x in cyc:
                sig[x] = -1
                free[x] = True
            counts[len(cyc)] += 1

        def rec() -> Iterator[list[int]]:
            try:
                x = free.index(True)
            except ValueError:
                yield list(sig)
                return
            for length in sorted(counts, reverse=True):
                if counts[length] <= 0:
                    continue
                free[x] = False
                pool = [y for y in range(n) if free[y]]
                free[x] = True
                for rest in itertools.permutations(pool, length - 1):
                    self.tick()
                    cyc = (x,) + rest
                    place(cyc)
                    yield from rec()
                    unplace(cyc)

        if prefix is not None:
            if counts[len(prefix)] <= 0:
                return
            self.tick()
            place(prefix)
        yield from rec()

    def _canonical_under_centralizer(self, sig: list[int]) -> bool:
        for c in self.cent:
            conj = [0] * self.n
            for x in range(self.n):
                conj[c[x]] = c[sig[x]]
            if conj < sig:
                return False
        return True

    # -------------------------------------------------------------------------------

    def run(self) -> list[list[int]] | None:
        """Return the first solution in internal slot order, or None."""
        n = self.n
        fixed = self.fixed
        if not self.middle:  # r == 2
            self.tick()
            inv = [0] * n
            for x, y in enumerate(fixed):
                inv[y] = x
            perm = Perm(inv)
            if perm.cycle_type() == Partition(self.forced.elements()) and is_transitive([fixed], n):
                return [fixed, inv]
            return None
        return self._descend(0, fixed, [fixed])

    def _descend(self, depth: int, Q: list[int], chosen: list[list[int]]) -> list[list[int]] | None:
        n = self.n
        counts = self.middle[depth]
        prefix = self.first_cycle if depth == 0 else None
        if depth == len(self.middle) - 1:
            return _PrunedSearch(self, counts, Q, prefix, chosen).run()
        for sig in self._enumerate(counts, prefix):
            if depth == 0 and self.cent is not None and not self._canonical_under_centralizer(sig):
                continue
            Q2 = [Q[sig[x]] for x in range(n)]
            found = self._descend(depth + 1, Q2, chosen + [sig])
            if found is not None:
                return found
        return None


class _PrunedSearch:
    """Point-by-point construction of the last middle slot.

    The forced permutation ``F = (Q o sig)^-1`` gains one arrow ``Q(b) -> a``
    per assignment ``sig(a) = b``.  Arrows are kept as disjoint open chains
    (``start``/``end`` endpoint maps with lengths) and closed cycles are
    checked against the forced partition as soon as they appear.
    """

    def __init__(self, runner: _Runner, counts: Counter, Q: list[int],
                 prefix: tuple[int, ...] | None, chosen: list[list[int]]):
        self.runner = runner
        self.n = runner.n
        self.Q = Q
        self.counts = Counter(counts)
        self.prefix = prefix
        self.chosen = chosen
        self.rem = Counter(runner.forced)
        n = self.n
        self.sig = [-1] * n
        self.free = [True] * n
        # chain endpoints: end_of[start] = end, start_of[end] = start, for open chains;
        # an isolated point is a chain with start == end.
        self.end_of = list(range(n))
        self.start_of = list(range(n))
        self.length = [1] * n
        self.max_rem = max(self.rem)

    def _refresh_max(self) -> None:
        live = [k for k, v in self.rem.items() if v > 0]
        self.max_rem = max(live) if live else 0

    def assign(self, a: int, b: int):
        """Set sig(a) = b; return an undo token or None if pruned."""
        self.runner.tick()
        u, v = self.Q[b], a           # new forced arrow u -> v
        # u is the end of its chain, v the start of its chain
        s = self.start_of[u]
        e = self.end_of[v]
        if s == v:                    # closes a cycle
            length = self.length[s]
            if self.rem[length] <= 0:
                return None
            self.rem[length] -= 1
            if self.rem[length] == 0:
                self._refresh_max()
            self.sig[a] = b
            return ("close", length)
        length = self.length[s] + self.length[v]
        if length > self.max_rem:
            return None
        token = ("merge", s, u, v, e, self.length[s], self.length[v])
        self.end_of[s] = e
        self.start_of[e] = s
        self.length[s] = length
        self.sig[a] = b
        return token

    def release(self, a: int, token) -> None:
        self.sig[a] = -1
        if token[0] == "close":
            length = token[1]
            self.rem[length] += 1
            if self.rem[length] == 1 and length > self.max_rem:
                self.max_rem = length
            return
        _, s, u, v, e, ls, lv = token
        self.end_of[s] = u
        self.start_of[u] = s
        self.end_of[v] = e
        self.start_of[e] = v
        self.length[s] = ls
        self.length[v] = lv

    def run(self) -> list[list[int]] | None:
        prefix = self.prefix
        if prefix is not None:
            if self.counts[len(prefix)] <= 0:
                return None
            self.counts[len(prefix)] -= 1
            x = prefix[0]
            self.free[x] = False
            path = list(prefix) + [x]
            for a, b in zip(path, path[1:]):
                if self.assign(a, b) is None:
                    return None
                self.free[b] = False
        return self._rec()

    def _leaf(self) -> list[list[int]] | None:
        n = self.n
        Q = self.Q
        sig = self.sig
        # forced = (Q o sig)^-1
        forced = [0] * n
        for x in range(n):
            forced[Q[sig[x]]] = x
        perms = self.chosen + [list(sig), forced]
        if is_transitive(perms, n):
            return perms
        return None

    def _rec(self) -> list[list[int]] | None:
        free = self.free
        try:
            x = free.index(True)
        except ValueError:
            return self._leaf()
        counts = self.counts
        for length in sorted(counts, reverse=True):
            if counts[length] <= 0:
                continue
            counts[length] -= 1
            free[x] = False
            found = self._extend(x, x, length - 1)
            free[x] = True
            counts[length] += 1
            if found is not None:
                return found
        return None

    def _extend(self, start: int, cur: int, left: int) -> list[list[int]] | None:
        if left == 0:
            token = self.assign(cur, start)
            if token is None:
                return None
            found = self._rec()
            self.release(cur, token)
            return found
        free = self.free
        for y in range(self.n):
            if not free[y]:
                continue
            token = self.assign(cur, y)
            if token is None:
                continue
            free[y] = False
            found = self._extend(start, y, left - 1)
            free[y] = True
            self.release(cur, token)
            if found is not None:
                return found
        return None


def _search_order(data: RamData) -> tuple[int, ...]:
    sizes = [class_size(p) for p in data]
    ranked = sorted(range(len(data)), key=lambda i: (-sizes[i], i))
    middle = sorted(ranked[2:], key=lambda i: (sizes[i], i))
    return (ranked[0], *middle, ranked[1])


def _run_piece(plan: _Plan, first_cycle: tuple[int, ...] | None, budget: int):
    runner = _Runner(plan, first_cycle)
    runner.budget = budget
    try:
        found = runner.run()
    except _BudgetExceeded:
        return "budget", runner.nodes, None
    return ("found" if found is not None else "exhausted"), runner.nodes, found


def _restore_order(perms: list[list[int]], order: Sequence[int]) -> list[Perm]:
    """Braid moves (a, b) -> (b, b^-1 a b) until slots are in requested order."""
    tuple_ = [Perm(p) for p in perms]
    labels = list(order)
    changed = True
    while changed:
        changed = False
        for j in range(len(labels) - 1):
            if labels[j] > labels[j + 1]:
                a, b = tuple_[j], tuple_[j + 1]
                tuple_[j], tuple_[j + 1] = b, b.inverse() * a * b
                labels[j], labels[j + 1] = labels[j + 1], labels[j]
                changed = True
    return tuple_


def search_space_size(data: RamData) -> int:
    """Tuples left once one slot is fixed and another forced."""
    order = _search_order(data)
    size = 1
    for i in order[1:-1]:
        size *= class_size(data[i])
    return size


def realize(data: RamData, budget: int = DEFAULT_BUDGET, threads: int = 1,
            centralizer: bool = True) -> SearchResult:
    """Search for a constellation of type ``data``.

    Returns a :class:`Witness`, a :class:`ProvenUnsat` once the space is
    exhausted, or :class:`Unknown` when more than ``budget`` nodes are needed.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    genus(data)
    n = data.degree
    order = _search_order(data)
    plan = _Plan(n, order, tuple(data[i].entries for i in order), budget, centralizer)
    pieces: list[tuple[int, ...] | None]
    if len(data) == 2:
        pieces = [None]
    else:
        pieces = _first_cycles(Counter(data[order[1]].entries), n)

    used = 0
    for status, nodes, found in _piece_results(plan, pieces, budget, threads):
        if status == "budget" or used + nodes > budget:
            return Unknown(n, budget, budget)
        used += nodes
        if status == "found":
            c = Constellation(_restore_order(found, order))
            if not verify(c, data):
                raise AssertionError(f"search produced an invalid witness: {c}")
            return Witness(c, used)
    return ProvenUnsat(n, used, search_space_size(data))


def _piece_results(plan: _Plan, pieces, budget: int, threads: int):
    if threads == 1:
        used = 0
        for piece in pieces:
            result = _run_piece(plan, piece, budget - used)
            yield result
            used += result[1]
        return
    window = 4 * threads
    with ProcessPoolExecutor(max_workers=threads) as pool:
        pending = []
        it = iter(pieces)
        try:
            for piece in itertools.islice(it, window):
                pending.append(pool.submit(_run_piece, plan, piece, budget))
            while pending:
                result = pending.pop(0).result()
                for piece in itertools.islice(it, 1):
                    pending.append(pool.submit(_run_piece, plan, piece, budget))
                yield result
        finally:
            for fut in pending:
                fut.cancel()


@dataclass(frozen=True)
class NonexistenceReport:
    family: FamilySpec
    results: tuple[tuple[int, SearchResult], ...]

    @property
    def status(self) -> str:
        statuses = {r.status for _, r in self.results}
        for s in ("witness", "unknown"):
            if s in statuses:
                return s
        return "unsat"

    def to_json(self) -> dict:
        return {"family": str(self.family), "status": self.status,
                "degrees": [dict(r.to_json(), degree=d) for d, r in self.results]}


def check_nonexistence(f: FamilySpec, degrees: Sequence[int], budget: int = DEFAULT_BUDGET,
                       threads: int = 1) -> NonexistenceReport:
    """Run :func:`realize` on each listed member of ``f``."""
    prog = valid_degrees(f)
    results = []
    for n in degrees:
        if prog is None or n not in prog:
            raise ValueError(f"degree {n} is not a valid degree of {f}")
        results.append((n, realize(member(f, n), budget=budget, threads=threads)))
    return NonexistenceReport(f, tuple(results))
