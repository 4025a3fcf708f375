import math

import pytest

from hurwitz.ramcore import parse_ramdata
from hurwitz.tiling import (
    LatticeBasis, TorusTiling, coset_rep, disk, hermite_form, is_regular_spherical,
    max_disk_radius, quotient_dot, tile_torus,
)


def _injective_radius(t, limit=40):
    """Largest r with the disk mapping injectively to coset representatives."""
    hnf = hermite_form(t.basis)
    r = 0
    while r < limit:
        pts = list(disk(r + 1, t.shape))
        if len({coset_rep(p, hnf) for p in pts}) < len(pts):
            return r
        r += 1
    return r


def test_matrix_cases():
    assert tile_torus(9).basis.columns == ((3, 0), (0, 3))
    assert tile_torus(7).basis.columns == ((3, 1), (2, 3))
    assert tile_torus(6).basis.columns == ((2, 1), (-2, 2))


def test_determinant_range():
    for n in range(1, 501):
        assert tile_torus(n).basis.det == n
        assert tile_torus(n, "square").polygons == n


def test_column_lengths_and_angle():
    for n in range(12, 501):
        a = math.isqrt(n)
        if a * a == n:
            continue
        t = tile_torus(n)
        assert min(t.basis.column_lengths()) >= math.sqrt(n) - 1
        if a > 10:
            assert abs(t.basis.cos_angle()) <= 1 / math.sqrt(2) + 0.1


def test_small_radii():
    assert max_disk_radius(tile_torus(1)) == 0
    assert max_disk_radius(TorusTiling("hexagon", LatticeBasis.from_columns((2, 0), (0, 2)))) == 0
    assert max_disk_radius(TorusTiling("square", LatticeBasis.from_columns((2, 0), (0, 2)))) == 0


@pytest.mark.parametrize("shape", ["hexagon", "square"])
def test_radius_matches_coset_oracle(shape):
    for n in list(range(1, 80)) + [100, 121, 150, 199]:
        t = tile_torus(n, shape)
        assert max_disk_radius(t) == _injective_radius(t)


def test_hermite_form_index():
    for n in range(1, 200):
        p, q, s = hermite_form(tile_torus(n).basis)
        assert p * s == n and 0 <= q < s


@pytest.mark.parametrize("shape", ["hexagon", "square"])
def test_radius_unbounded_along_squares(shape):
    radii = [max_disk_radius(tile_torus(a * a, shape)) for a in range(2, 31)]
    assert radii == sorted(radii)
    assert radii[-1] >= 10


def test_every_radius_reached_early():
    for r in range(9):
        bound = 4 * (2 * r + 2) ** 2
        assert any(max_disk_radius(tile_torus(n)) >= r for n in range(1, bound + 1))


def test_regular_spherical():
    assert is_regular_spherical(parse_ramdata("[1,2,2][1,2,2][1,2,2][1,2,2]"), [2, 2, 2, 2])
    assert is_regular_spherical(parse_ramdata("[1,3][1,3][1,3]"), [3, 3, 3])
    assert not is_regular_spherical(parse_ramdata("[2,2][1,3][2,2]"), [2, 3, 6])
    with pytest.raises(ValueError):
        is_regular_spherical(parse_ramdata("[3][3][3]"), [3, 3, 3])
    with pytest.raises(ValueError):
        is_regular_spherical(parse_ramdata("[1,3][1,3][1,3]"), [2, 3, 7])


def test_dumps():
    t = tile_torus(7)
    doc = t.to_json(max_disk_radius(t))
    assert doc["basis"]["columns"] == [[3, 1], [2, 3]] and doc["polygons"] == 7
    dot = quotient_dot(tile_torus(12, "square"))
    # a 4-regular graph on 12 vertices has 24 edges
    assert dot.count(" -- ") == 24
    assert quotient_dot(tile_torus(12, "square")) == dot
