import pytest

from manifold.complex_core import (
    Edge,
    Face,
    PairedComplex,
    Pairing,
    boundary_orientation,
    cell_counts,
    edge_orbits,
    euler_characteristic,
    is_manifold,
    orbit_index_of_edge,
    structurally_equal,
    validate,
    vertex_orbits,
)
from manifold.errors import StructuralError, UnknownNameError
from manifold.families import build_m24, build_m25
from manifold.words import cyclically_equal, word


def bigon_sphere(pairings, count=3) -> PairedComplex:
    """Bigons N-S glued side by side into a sphere."""
    return PairedComplex(
        name="sphere",
        vertex_labels=("N", "S"),
        edges=tuple(Edge(f"e{k}", "N", "S") for k in range(1, count + 1)),
        faces=tuple(
            Face(f"F{k}", ("N", "S"), ((f"e{k}", 1), (f"e{k % count + 1}", -1))) for k in range(1, count + 1)
        ),
        pairings=pairings,
    )


@pytest.fixture
def unpaired():
    return bigon_sphere((Pairing("g", "F1", "F2", 0, True),))


def test_unpaired_face_is_reported(unpaired):
    violations = validate(unpaired)
    assert [(v.kind, v.where) for v in violations] == [("unpaired face", "F3")]
    assert str(violations[0]) == "unpaired face F3 (F3)"


def test_orbit_operations_reject_invalid_complex(unpaired):
    with pytest.raises(StructuralError) as error:
        edge_orbits(unpaired)
    assert "unpaired face F3" in str(error.value)
    with pytest.raises(StructuralError):
        cell_counts(unpaired)


def test_doubly_paired_face():
    complex_ = bigon_sphere((Pairing("g", "F1", "F2", 0, True), Pairing("h", "F2", "F3", 0, True)))
    kinds = {v.kind for v in validate(complex_)}
    assert "face doubly paired" in kinds
    assert "unpaired face" not in kinds


def test_orientation_preserving_pairing_is_rejected():
    complex_ = bigon_sphere((Pairing("g", "F1", "F2", 0, False), Pairing("h", "F3", "F4", 0, True)), count=4)
    assert [(v.kind, v.where) for v in validate(complex_)] == [("orientation preserving", "g")]


def test_malformed_faces():
    complex_ = PairedComplex(
        name="broken",
        vertex_labels=("N", "S", "W"),
        edges=(Edge("e1", "N", "S"), Edge("e2", "N", "X")),
        faces=(Face("F1", ("N", "S"), (("e1", 1),)), Face("F2", ("S", "N"), (("e1", 1), ("e9", 1)))),
        pairings=(),
    )
    kinds = {v.kind for v in validate(complex_)}
    assert {"unknown vertex", "ragged face", "unknown edge", "slot endpoints", "isolated vertex"} <= kinds


@pytest.mark.parametrize(
    "complex_, counts",
    [
        (build_m24(3), (1, 10, 10, 1)),
        (build_m25(4), (2, 14, 13, 1)),
        (build_m24(1), (1, 4, 4, 1)),
    ],
)
def test_cell_counts(complex_, counts):
    assert cell_counts(complex_).as_tuple() == counts
    assert euler_characteristic(complex_) == 0


@pytest.mark.parametrize("n", range(1, 51))
def test_cell_census(n):
    assert cell_counts(build_m24(n)).as_tuple() == (1, 3 * n + 1, 3 * n + 1, 1)
    expected = (1, 3 * n + 1, 3 * n + 1, 1) if n % 2 else (2, 3 * n + 2, 3 * n + 1, 1)
    assert cell_counts(build_m25(n)).as_tuple() == expected


@pytest.mark.parametrize("n", range(1, 21))
@pytest.mark.parametrize("build", [build_m24, build_m25])
def test_is_manifold(build, n):
    certificate = is_manifold(build(n))
    assert certificate
    assert certificate.euler_characteristic == 0
    assert certificate.reasons == ()


def test_product_edge_class_of_m24():
    complex_ = build_m24(3)
    orbits = edge_orbits(complex_)
    assert len(orbits) == 10
    orbit = orbits[orbit_index_of_edge(complex_, "qp1")]
    assert len(orbit) == 3
    assert cyclically_equal(orbit.cycle_word, word("a1 a2 a3"))


def test_split_product_class_of_m25():
    complex_ = build_m25(4)
    orbits = edge_orbits(complex_)
    assert len(orbits) == 14
    for edge, relator in (("pq1", "a1 a3"), ("pq2", "a2 a4")):
        orbit = orbits[orbit_index_of_edge(complex_, edge)]
        assert len(orbit) == 2
        assert cyclically_equal(orbit.cycle_word, word(relator))


@pytest.mark.parametrize("complex_, count", [(build_m24(5), 1), (build_m25(4), 2), (build_m25(3), 1)])
def test_vertex_orbits(complex_, count):
    assert len(vertex_orbits(complex_)) == count


@pytest.mark.parametrize("complex_", [build_m24(4), build_m25(4), build_m25(5)])
def test_orbits_partition_cells(complex_):
    members = [edge for orbit in edge_orbits(complex_) for edge in orbit.member_edges]
    assert sorted(members) == sorted(edge.name for edge in complex_.edges)
    assert all(orbit.coherent for orbit in edge_orbits(complex_))
    labels = [label for orbit in vertex_orbits(complex_) for label in orbit.member_vertices]
    assert sorted(labels) == sorted(complex_.vertex_labels)


def test_boundary_involution():
    complex_ = build_m25(3)
    for slot in complex_.all_slots():
        other = complex_.opposite_slot(slot)
        assert other != slot
        assert complex_.opposite_slot(other) == slot
        assert complex_.slot_edge(other)[0] == complex_.slot_edge(slot)[0]


def test_boundary_orientation_is_consistent():
    complex_ = build_m24(3)
    signs = boundary_orientation(complex_)
    assert set(signs) == {face.name for face in complex_.faces}
    for pairing in complex_.pairings:
        assert signs[pairing.source] == -signs[pairing.target]


def test_pairing_slot_maps_are_inverse():
    for pairing in (Pairing("g", "A", "B", 2, False), Pairing("h", "A", "B", 1, True)):
        for k in range(5):
            assert pairing.slot_preimage(pairing.slot_image(k, 5), 5) == k
            assert pairing.vertex_preimage(pairing.vertex_image(k, 5), 5) == k


def test_unknown_face_lookup():
    with pytest.raises(UnknownNameError, match="unknown face 'Z9'"):
        build_m24(2).face("Z9")


def test_structurally_equal():
    assert structurally_equal(build_m24(3), build_m24(3))
    assert not structurally_equal(build_m24(3), build_m25(3))
