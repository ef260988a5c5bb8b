import pytest

from manifold.complex_core import edge_orbits, orbit_index_of_edge, validate
from manifold.errors import DomainError
from manifold.families import build, build_m24, build_m25, wrap
from manifold.modes import Family_Id


def sizes(complex_):
    return len(complex_.vertex_labels), len(complex_.edges), len(complex_.faces)


@pytest.mark.parametrize(
    "complex_, expected",
    [
        (build_m24(3), (12, 30, 20)),
        (build_m24(5), (20, 50, 32)),
        (build_m24(1), (4, 10, 8)),
        (build_m25(2), (8, 20, 14)),
    ],
)
def test_cell_sizes(complex_, expected):
    assert sizes(complex_) == expected


def test_monogon_at_n_1():
    polygon = build_m24(1).face("D")
    assert polygon.vertices == ("P1",)
    assert polygon.edges == (("pp1", 1),)


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("family", list(Family_Id))
def test_families_are_valid(family, n):
    complex_ = build(family, n)
    assert validate(complex_) == []
    assert complex_.n == n
    assert complex_.name == f"{family.name}({n})"


@pytest.mark.parametrize("builder", [build_m24, build_m25])
@pytest.mark.parametrize("n", [0, -2])
def test_non_positive_n(builder, n):
    with pytest.raises(DomainError):
        builder(n)


def test_m25_product_class():
    complex_ = build_m25(3)
    assert len(edge_orbits(complex_)[orbit_index_of_edge(complex_, "pq1")]) == 3


def test_pairings_join_bar_faces():
    complex_ = build_m24(2)
    names = [p.name for p in complex_.pairings]
    assert names == ["a1", "a2", "b1", "b2", "c1", "c2", "d"]
    for pairing in complex_.pairings:
        stem, index = pairing.source[0], pairing.source[1:]
        assert pairing.target == f"{stem}bar{index}"


def test_generator_hints():
    assert [name for _, name, _ in build_m24(2).generator_hints] == ["x1", "x2", "y1", "y2", "z1", "z2", "u"]
    assert [name for _, name, _ in build_m25(3).generator_hints][-1] == "u"
    assert [name for _, name, _ in build_m25(4).generator_hints][-2:] == ["u", "v"]


def test_wrap():
    assert [wrap(i, 3) for i in range(-1, 6)] == [2, 3, 1, 2, 3, 1, 2]
