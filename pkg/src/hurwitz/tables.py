"""Reference realizability tables for almost-regular families.

Each entry is ``(id, marker, family)``; the marker is ``NR`` (realized by a
direct drawing), ``R<id>`` (reduced to entry ``id`` of the same table) or
``NE`` (nonexistent).  Genus-1 tables cover error <= 10 for ``[3,3,3]`` and
``[2,2,2,2]`` and error <= 6 for ``[2,3,6]`` and ``[2,4,4]``; the genus-0
tables use the same bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ramcore import FamilySpec, parse_family

TABLE_BOUNDS = {(3, 3, 3): 10, (2, 3, 6): 6, (2, 4, 4): 6, (2, 2, 2, 2): 10}

_GENUS1 = """
1 NR [3*][3*][3*]
2 NR [3*][3*][1,5,3*]
3 NE [3*][3*][2,4,3*]
4 NR [1,3*][1,3*][7,3*]
5 R1 [1,3*][4,3*][4,3*]
6 NR [2,3*][2,3*][5,3*]
7 R4 [3*][3*][1,1,7,3*]
8 NR [3*][3*][1,2,6,3*]
9 R5 [3*][3*][1,4,4,3*]
10 R6 [3*][3*][2,2,5,3*]
11 NR [3*][1,2,3*][6,3*]
12 NR [2*][3*][6*]
13 NR [1,3,2*][3*][6*]
14 NR [3,2*][3*][3,6*]
15 R2 [2*][1,5,3*][6*]
16 NR [2*][2,4,3*][6*]
17 R24 [1,1,4,2*][3*][6*]
18 NR [2*][4*][4*]
19 NR [1,3,2*][4*][4*]
20 R24 [1,1,4,2*][4*][4*]
21 NR [2*][2*][2*][2*]
22 NE [2*][2*][2*][1,3,2*]
23 R24 [2*][2*][2*][1,1,4,2*]
24 NR [2*][2*][1,1,2*][4,2*]
25 NR [1,2*][1,2*][1,2*][5,2*]
26 R21 [1,2*][1,2*][3,2*][3,2*]
27 R26 [2*][2*][1,1,2*][3,3,2*]
28 R26 [2*][2*][1,3,2*][1,3,2*]
29 R25 [1,5,2*][2*][2*][1^2,2*]
30 R29 [1^3,5,2*][2*][2*][2*]
31 R27 [1^2,3^2,2*][2*][2*][2*]
32 R23 [1,2*][1,2*][1,4,2*][3,2*]
33 NR [2*][1,1,2*][1,1,2*][6,2*]
34 R37 [2*][2*][1,1,1,3,2*][4,2*]
35 R32 [2*][2*][1,1,4,2*][1,3,2*]
36 R33 [2*][2*][1^4,2*][6,2*]
37 NR [2*][1,1,2*][1,3,2*][4,2*]
38 R42 [1^2,6,2*][2*][2*][1^2,2*]
39 R36 [1^4,6,2*][2*][2*][2*]
40 R37 [1,3,4,2*][2*][2*][1^2,2*]
41 R34 [1^3,3,4,2*][2*][2*][2*]
42 NR [1,6,2*][1,2*][1,2*][1,2*]
43 NR [3,4,2*][1,2*][1,2*][1,2*]
"""

_GENUS0 = """
1 NR [1,3*][1,3*][1,3*]
2 R1 [3*][3*][1,1,1,3*]
3 NR [1,3*][1,3*][2,2,3*]
4 NR [1,1,3*][2,3*][2,3*]
5 NR [3*][1,2,3*][1,2,3*]
6 R4 [3*][3*][1,1,2,2,3*]
7 NR [1,3*][1,3*][1,1,5,3*]
8 NR [1,3*][1,3*][1,2,4,3*]
9 NR [1,3*][1,1,2,3*][4,3*]
10 NR [1,3*][2,2,3*][2,2,3*]
11 NR [1,2,2,3*][2,3*][2,3*]
12 R1 [1,1,3*][1,4,3*][2,3*]
13 NR [1,1,3*][1,1,3*][5,3*]
14 R13 [3*][3*][1^4,5,3*]
15 R12 [3*][3*][1^3,2,4,3*]
16 R10 [3*][3*][1,2^4,3*]
17 NR [3*][1,1,4,3*][1,2,3*]
18 NR [3*][1,2,3*][2^3,3*]
19 NR [3*][1^3,3*][1,5,3*]
20 NR [3*][1^3,3*][2,4,3*]
21 NR [1,2*][1,3*][1,6*]
22 R2 [2*][1,1,1,3*][6*]
23 R47 [1^4,2*][3*][6*]
24 R1 [2*][1,1,3*][2,6*]
25 NR [2*][2,3*][1,1,6*]
26 NR [1,2*][3*][1,2,6*]
27 NR [1,1,2*][1,2,3*][6*]
28 NR [2*][1,3*][1,3,6*]
29 NE [2*][1,3*][2,2,6*]
30 R25 [2*][3*][1,1,4,6*]
31 NR [2*][3*][1,2,3,6*]
32 R2 [2*][3*][2,2,2,6*]
33 R5 [2*][1,1,2,2,3*][6*]
34 NR [1,2*][2,2,3*][1,6*]
35 NR [1,1,2*][2,3*][2,6*]
36 R25 [3,2*][3*][1^3,6*]
37 R45 [1^3,2*][3*][3,6*]
38 NR [1,2*][1,4*][1,4*]
39 R47 [1^4,2*][4*][4*]
40 NR [2*][4*][1,1,2,4*]
41 R38 [2*][2,4*][1,1,4*]
42 NR [1,1,2*][4*][1,3,4*]
43 R47 [1,1,2*][4*][2,2,4*]
44 R45 [1,1,2*][2,4*][2,4*]
45 NR [1,2*][1,2*][1,2*][1,2*]
46 NR [2*][2*][2*][1^4,2*]
47 R45 [2*][2*][1,1,2*][1,1,2*]
48 NR [1,2*][1,2*][1,2*][1,1,3,2*]
49 R46 [1,2*][1,2*][1^3,2*][3,2*]
50 R48 [2*][2*][1,1,2*][1^3,3,2*]
51 R49 [2*][2*][1^4,2*][1,3,2*]
52 R45 [2*][1,1,2*][1,1,2*][1,3,2*]
53 NR [1^5,3,2*][2*][2*][2*]
54 NR [1,2*][1,2*][1^3,2*][1,4,2*]
55 R58 [2*][2*][1^6,2*][4,2*]
56 R59 [2*][2*][1^4,2*][1,1,4,2*]
57 NR [2*][1^2,2*][1^2,2*][1^2,4,2*]
58 NR [2*][1,1,2*][1^4,2*][4,2*]
59 NR [1^2,2*][1^2,2*][1^2,2*][4,2*]
60 NR [1^4,4,2*][2*][2*][1^2,2*]
61 NR [1^6,4,2*][2*][2*][2*]
62 NR [1^3,4,2*][1,2*][1,2*][1,2*]
"""

# The four conjecturally or provenly nonrealizable genus-1 families.
EXCEPTIONAL_GENUS1 = {
    "A": "[1,3,2*][2*][2*][2*]",
    "B": "[2,4,3*][3*][3*]",
    "C": "[2*][3,5,4*][4*]",
    "D": "[2*][3*][5,7,6*]",
}


@dataclass(frozen=True)
class TableEntry:
    id: int
    marker: str
    family: FamilySpec

    @property
    def base(self) -> tuple[int, ...]:
        return self.family.base


def _load(text: str) -> tuple[TableEntry, ...]:
    rows = []
    for line in text.strip().splitlines():
        ident, marker, family = line.split(None, 2)
        rows.append(TableEntry(int(ident), marker, parse_family(family)))
    return tuple(rows)


GENUS1_TABLE = _load(_GENUS1)
GENUS0_TABLE = _load(_GENUS0)


def table(genus: int) -> tuple[TableEntry, ...]:
    if genus == 1:
        return GENUS1_TABLE
    if genus == 0:
        return GENUS0_TABLE
    raise ValueError("tables exist for genus 0 and 1 only")


def entry(genus: int, ident: int) -> TableEntry:
    for row in table(genus):
        if row.id == ident:
            return row
    raise KeyError(ident)


_INDEX = {g: {row.family.canonical(): row for row in table(g)} for g in (0, 1)}


def lookup(genus: int, family: FamilySpec) -> TableEntry | None:
    if genus not in _INDEX:
        raise ValueError("tables exist for genus 0 and 1 only")
    return _INDEX[genus].get(family.canonical())


def exceptional_family(label: str) -> FamilySpec:
    return parse_family(EXCEPTIONAL_GENUS1[label])
