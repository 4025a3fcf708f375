import itertools
import random

import pytest

from hurwitz.perms import verify
from hurwitz.ramcore import (
    EUCLIDEAN_BASES, FamilySpec, RamData, enumerate_families, family_genus, genus, member,
    parse_family, parse_ramdata, raw_family_genus, valid_degrees,
)
from hurwitz.search import realize
from hurwitz.tables import GENUS0_TABLE, GENUS1_TABLE, lookup
from hurwitz.transform import (
    CUBE, CUBIC_21, EXCEPTIONAL_SPLIT, SQUARE, BaseMap, Exceptional, NotApplicable, Split,
    add_edges, add_edges_witness, compose, counts_13, family_13, identity_map, merge_families,
    split_2222, split_family,
)


def test_base_map_fibres_checked():
    with pytest.raises(ValueError):
        BaseMap("bad", 2, (("0", (("0", 1),)),))
    for g in (SQUARE, CUBE, CUBIC_21):
        assert all(sum(e for _, e in fibre) == g.degree for _, fibre in g.points)


@pytest.mark.parametrize("k", [3, 6, 9])
def test_compose_square_worked_example(k):
    f = RamData([[3] * (k // 3)] * 3)
    out = compose(f, ["inf", "1", "-1"], SQUARE)
    assert out == RamData([[2] * k, [3] * (2 * k // 3), [6] * (k // 3)])
    assert out.degree == 2 * f.degree


def test_compose_case_15_from_case_2():
    inner = parse_family("[1,5|3*][3*][3*]")
    target = parse_family("[2*][1,5|3*][6*]")
    for n in valid_degrees(inner).take(3):
        out = compose(member(inner, n), ["1", "-1", "inf"], SQUARE)
        assert out == member(target, 2 * n)


def test_compose_identity_is_noop():
    f = parse_ramdata("[1,3][2,2][2,2][2,2]")
    g = identity_map(["p", "q", "r", "s"])
    assert compose(f, ["p", "q", "r", "s"], g) == f


def test_compose_errors():
    f = parse_ramdata("[3][3][3]")
    with pytest.raises(ValueError):
        compose(f, ["1", "1", "inf"], SQUARE)
    with pytest.raises(ValueError):
        compose(f, ["1", "inf"], SQUARE)
    with pytest.raises(ValueError):
        compose(f, ["1", "inf", "nowhere"], SQUARE)


def test_compose_genus_randomized():
    rng = random.Random(5)
    fams = [row.family for row in GENUS1_TABLE + GENUS0_TABLE]
    for _ in range(50):
        f = rng.choice(fams)
        n = valid_degrees(f).take(2)[-1]
        data = member(f, n)
        g = rng.choice([SQUARE, CUBE])
        labels = [p for _, fibre in g.points for p, _ in fibre]
        placement = rng.sample(labels, len(data))
        out = compose(data, placement, g)
        assert out.degree == g.degree * n
        # Riemann-Hurwitz for g o f from the genus of f and the ramification of g
        direct = genus(out)
        assert direct >= 0
        assert genus(compose(out, list(range(len(out))), identity_map(range(len(out))))) == direct


def test_add_edges_examples():
    t = parse_ramdata("[1,2,2][1,2,2][1,2,2][1,2,2]")
    assert add_edges(t, 0, 1, 1, 1, 1) == parse_ramdata("[2,2,2][2,2,2][1,1,2,2][1,1,2,2]")
    assert add_edges(t, 0, 2, 1, 1, 1) == parse_ramdata("[1,2,3][2,2,2][1,1,2,2][1,1,2,2]")
    assert add_edges(t, 0, 1, 1, 1, 0) == t
    with pytest.raises(ValueError):
        add_edges(t, 0, 5, 1, 1, 1)
    with pytest.raises(ValueError):
        add_edges(t, 0, 1, 1, 1, -1)
    with pytest.raises(ValueError):
        add_edges(parse_ramdata("[2][2]"), 0, 2, 1, 2, 1)


def test_add_edges_preserves_genus_on_tables():
    for row in GENUS1_TABLE + GENUS0_TABLE:
        data = member(row.family, valid_degrees(row.family).take(2)[-1])
        g = genus(data)
        for sa, sb in itertools.permutations(range(len(data)), 2):
            for a in set(data[sa]):
                for b in set(data[sb]):
                    for k in (1, 2):
                        assert genus(add_edges(data, sa, a, sb, b, k)) == g


def test_add_edges_witness_surgery():
    rng = random.Random(11)
    for text in ("[1,2,2][1,2,2][1,2,2][1,2,2]", "[2,3][2,3][5]", "[3,3][2,2,2][6]",
                 "[1,3][1,3][1,3]"):
        data = parse_ramdata(text)
        c = realize(data).constellation
        for sa, sb in itertools.permutations(range(len(data)), 2):
            a, b = rng.choice(data[sa].entries), rng.choice(data[sb].entries)
            k = rng.randint(0, 3)
            target = add_edges(data, sa, a, sb, b, k)
            out = add_edges_witness(c, sa, a, sb, b, k, budget=10**6)
            assert verify(out, target)


def test_merge_families():
    f1 = parse_family("[1,3|2*][2*][2*][2*]")
    f2 = parse_family("[2*][1,3|2*][2*][2*]")
    m = merge_families(f1, f2)
    assert m.irregular[0] == (3, 1) and m.irregular[1] == (3, 1)
    assert merge_families(f1, FamilySpec((2, 2, 2, 2))) == f1
    with pytest.raises(ValueError):
        merge_families(f1, FamilySpec((3, 3, 3)))
    for base in EUCLIDEAN_BASES:
        fams = enumerate_families(base, 1, 6) + enumerate_families(base, 0, 6)
        for a, b in itertools.product(fams[:8], repeat=2):
            merged = merge_families(a, b)
            assert raw_family_genus(merged) == raw_family_genus(a) + raw_family_genus(b) - 1


def test_split_examples():
    res = split_2222([1, 1, 1, 1], [1, 1, 1, 1])
    assert isinstance(res, Split)
    assert [str(h) for h in res.halves] == ["[1,3|2*][1,3|2*][2*][2*]", "[2*][2*][1,3|2*][1,3|2*]"]
    assert split_2222([1, 1, 1, 0], [1, 1, 1, 0]) == Exceptional(6, "c")
    assert split_2222([3, 0, 0, 0], [3, 0, 0, 0]).id == 1
    assert isinstance(split_2222([1, 0, 0, 0], [1, 0, 0, 0]), NotApplicable)
    with pytest.raises(ValueError):
        split_2222([1, 0, 0, 0], [0, 0, 0, 0])


def test_split_exceptional_ids():
    for ident, text in EXCEPTIONAL_SPLIT.items():
        f = parse_family(text)
        k, m = counts_13(f)
        for perm in itertools.permutations(range(4)):
            res = split_2222([k[i] for i in perm], [m[i] for i in perm])
            assert isinstance(res, Exceptional) and res.id == ident


def _compositions(total, parts=4):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _valid_inputs(max_k):
    for s in range(max_k + 1):
        for k in _compositions(s):
            for m in _compositions(s):
                if len({(a + b) % 2 for a, b in zip(k, m)}) == 1 and s + 3 * s > 10:
                    yield list(k), list(m)


def _split_terminates(f, depth, done):
    assert depth <= 10
    key = f.canonical()
    if key in done:
        return
    res = split_family(f)
    if not isinstance(res, Exceptional):
        assert isinstance(res, Split)
        for h in res.halves:
            if h.error <= 10:
                row = lookup(1, h)
                assert row is not None and row.marker != "NE", str(h)
            else:
                _split_terminates(h, depth + 1, done)
    done.add(key)


def test_split_all_small_inputs():
    seen = 0
    done = set()
    for k, m in _valid_inputs(10):
        res = split_2222(k, m)
        if isinstance(res, Exceptional):
            assert family_13(k, m).canonical() == res.family.canonical()
            continue
        seen += 1
        T1, T2 = res.halves
        assert family_genus(T1) == family_genus(T2) == 1
        assert merge_families(T1, T2) == family_13(k, m)
        for h in (T1, T2):
            assert valid_degrees(h) is not None
            assert str(h.canonical()) not in ("[2*][2*][2*][2*]", "[2*][2*][2*][1,3|2*]")
        _split_terminates(family_13(k, m), 0, done)
    assert seen > 1000
