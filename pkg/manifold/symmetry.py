from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from manifold.complex_core import Edge, Face, PairedComplex, Pairing, edge_orbits, require_valid
from manifold.errors import DomainError, UnknownNameError, UnsupportedQuotientError
from manifold.families import EDGE_KINDS, LETTERS, build, edge_name, label
from manifold.homology import AbelianGroup, h1
from manifold.modes import Component_Kind, Family_Id
from manifold.presentation import presentation_from_pairings
from utils.naming import natural_key, natural_sorted

logger = logging.getLogger(__name__)

AXIS_NOTE = (
    "rotation-axis components use the face-center rule: a face mapped to itself by a "
    "power of the rotation has its center on the axis (assumed, not derived from geometry)"
)


@dataclass(frozen=True)
class ComplexAutomorphism:
    vertex_map: Dict[str, str]
    order: int
    # edge -> (image edge, +1 if directions agree); inferred from endpoints when None
    edge_map: Dict[str, Tuple[str, int]] | None = None
    name: str = "automorphism"


@dataclass(frozen=True)
class AutomorphismCheck:
    valid: bool
    order: int
    reasons: Tuple[str, ...] = ()
    # face -> (image face, slot offset)
    face_map: Dict[str, Tuple[str, int]] = field(default_factory=dict)
    edge_map: Dict[str, Tuple[str, int]] = field(default_factory=dict)

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class SingularComponent:
    kind: Component_Kind
    branching_index: int
    upstairs_orbit_size: int
    label: str = ""


@dataclass(frozen=True)
class SingularityReport:
    base_family: Family_Id
    base_n: int
    covering_degree: int
    components: Tuple[SingularComponent, ...]
    base_homology: AbelianGroup
    notes: Tuple[str, ...] = ()

    @property
    def strongly_cyclic(self) -> bool:
        return all(c.branching_index == self.covering_degree for c in self.components)


def rotation(family: Family_Id, n: int, step: int) -> ComplexAutomorphism:
    """X_i -> X_{i+step} for every letter, indices mod n."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if step not in (1, 2):
        raise DomainError(f"rotation step must be 1 or 2, got {step}")
    if step == 2 and n % 2:
        raise DomainError(f"rotation step 2 needs an even n, got {n}")
    vertex_map = {label(letter, i, n): label(letter, i + step, n) for letter in LETTERS for i in range(1, n + 1)}
    edge_map = {edge_name(kind, i, n): (edge_name(kind, i + step, n), 1) for kind in EDGE_KINDS for i in range(1, n + 1)}
    order = n // math.gcd(n, step)
    logger.debug(f"{family.name}({n}): rotation by {step} has order {order}")
    return ComplexAutomorphism(vertex_map, order, edge_map, name=f"rho{step}")


def automorphism_from_vertex_map(vertex_map: Dict[str, str], order: int | None = None) -> ComplexAutomorphism:
    if order is None:
        # 0 for a map that is not a permutation; verification reports it
        closed = set(vertex_map.values()) == set(vertex_map)
        order = _permutation_order({k: (v, 1) for k, v in vertex_map.items()}) if closed else 0
    return ComplexAutomorphism(dict(vertex_map), order)


def _permutation_order(mapping: Dict[str, Tuple[str, int]]) -> int:
    order, seen = 1, set()
    for start in mapping:
        if start in seen:
            continue
        length, current, sign = 0, start, 1
        while True:
            seen.add(current)
            current, s = mapping[current]
            sign *= s
            length += 1
            if current == start:
                break
        # an edge sent back onto itself reversed needs a second lap
        order = math.lcm(order, length if sign > 0 else 2 * length)
    return order


def _infer_edge_map(complex_: PairedComplex, vertex_map, reasons: List[str]) -> Dict[str, Tuple[str, int]]:
    by_ends: Dict[Tuple[str, str], List[Tuple[str, int]]] = {}
    for edge in complex_.edges:
        by_ends.setdefault((edge.tail, edge.head), []).append((edge.name, 1))
        by_ends.setdefault((edge.head, edge.tail), []).append((edge.name, -1))
    edge_map = {}
    for edge in complex_.edges:
        candidates = by_ends.get((vertex_map[edge.tail], vertex_map[edge.head]), [])
        if len(candidates) == 1:
            edge_map[edge.name] = candidates[0]
        elif not candidates:
            reasons.append(f"edge {edge.name} has no image")
        else:
            reasons.append(f"edge {edge.name} has several possible images")
    return edge_map


def _face_image(complex_: PairedComplex, face: Face, vertex_map, edge_map) -> Tuple[str, int] | None:
    m = len(face)
    mapped = [(edge_map[e][0], s * edge_map[e][1]) for e, s in face.edges]
    for other_name, r in complex_.slots_by_edge.get(mapped[0][0], []):
        other = complex_.face_by_name[other_name]
        if len(other) != m:
            continue
        # slot 0 of face lands on slot r of other
        if all(other.edges[(k + r) % m] == mapped[k] for k in range(m)) and all(
            other.vertices[(k + r) % m] == vertex_map[face.vertices[k]] for k in range(m)
        ):
            return other_name, r
    return None


def verify_automorphism(complex_: PairedComplex, a: ComplexAutomorphism) -> AutomorphismCheck:
    """Check that a maps faces to faces and conjugates the pairings into themselves."""
    require_valid(complex_)
    labels = set(complex_.vertex_labels)
    for source, target in a.vertex_map.items():
        for name in (source, target):
            if name not in labels:
                raise UnknownNameError("vertex", name)
    reasons: List[str] = []
    if set(a.vertex_map) != labels or set(a.vertex_map.values()) != labels:
        return AutomorphismCheck(False, 0, ("vertex map is not a permutation of the vertex labels",))

    if a.edge_map is None:
        edge_map = _infer_edge_map(complex_, a.vertex_map, reasons)
    else:
        edge_map = dict(a.edge_map)
        for edge in complex_.edges:
            if edge.name not in edge_map or edge_map[edge.name][0] not in complex_.edge_by_name:
                reasons.append(f"edge {edge.name} has no image")
                continue
            image, sign = edge_map[edge.name]
            target = complex_.edge_by_name[image]
            ends = (target.tail, target.head) if sign > 0 else (target.head, target.tail)
            if ends != (a.vertex_map[edge.tail], a.vertex_map[edge.head]):
                reasons.append(f"edge {edge.name} is not sent along its endpoints")
    if reasons:
        return AutomorphismCheck(False, 0, tuple(reasons))
    if len({image for image, _ in edge_map.values()}) != len(edge_map):
        return AutomorphismCheck(False, 0, ("edge map is not a permutation",))

    face_map = {}
    for face in complex_.faces:
        image = _face_image(complex_, face, a.vertex_map, edge_map)
        if image is None:
            reasons.append(f"face {face.name} has no image")
        else:
            face_map[face.name] = image
    if not reasons and len({name for name, _ in face_map.values()}) != len(face_map):
        reasons.append("face map is not a permutation")

    if not reasons:
        for pairing in complex_.pairings:
            source, source_offset = face_map[pairing.source]
            target, target_offset = face_map[pairing.target]
            m = len(complex_.face_by_name[pairing.source])
            image, is_source = complex_.pairing_by_face[source]
            partner = image.target if is_source else image.source
            if partner != target or image.reflect != pairing.reflect:
                reasons.append(f"pairing {pairing.name} has no conjugate")
                continue
            move = image.slot_image if is_source else image.slot_preimage
            if any(move((k + source_offset) % m, m) != (pairing.slot_image(k, m) + target_offset) % m for k in range(m)):
                reasons.append(f"pairing {pairing.name} does not commute with {a.name}")

    order = _permutation_order(edge_map)
    order = math.lcm(order, _permutation_order({k: (v, 1) for k, v in a.vertex_map.items()}))
    if not reasons and order != a.order:
        reasons.append(f"declared order {a.order} but the map has order {order}")
    return AutomorphismCheck(not reasons, order, tuple(reasons), face_map, edge_map)


def _classes(mapping: Dict[str, Tuple[str, int]]) -> Dict[str, Tuple[str, int]]:
    """Orbit representative and direction relative to it, for every element."""
    classes: Dict[str, Tuple[str, int]] = {}
    for start in natural_sorted(mapping):
        if start in classes:
            continue
        classes[start] = (start, 1)
        current, sign = mapping[start]
        while current != start:
            classes[current] = (start, sign)
            current, s = mapping[current]
            sign *= s
        if sign < 0:
            raise UnsupportedQuotientError(f"{start} is sent back onto itself reversed")
    return classes


@dataclass(frozen=True)
class _Quotient:
    base: PairedComplex
    edge_classes: Dict[str, Tuple[str, int]]
    face_classes: Dict[str, Tuple[str, int]]
    stabilizers: Dict[str, int]


def _quotient(complex_: PairedComplex, a: ComplexAutomorphism) -> _Quotient:
    check = verify_automorphism(complex_, a)
    if not check:
        raise UnsupportedQuotientError(f"{a.name} is not an automorphism of {complex_.name}: {'; '.join(check.reasons)}")
    vertex_classes = {k: rep for k, (rep, _) in _classes({k: (v, 1) for k, v in a.vertex_map.items()}).items()}
    edge_classes = _classes(check.edge_map)

    face_classes: Dict[str, Tuple[str, int]] = {}
    stabilizers: Dict[str, int] = {}
    base_faces = []
    for face in natural_sorted(check.face_map):
        if face in face_classes:
            continue
        m = len(complex_.face_by_name[face])
        current, offset, size = face, 0, 0
        while True:
            face_classes[current] = (face, offset)
            size += 1
            current, r = check.face_map[current]
            offset = (offset + r) % m
            if current == face:
                break
        period = math.gcd(offset, m)
        stabilizer = check.order // size
        if m // period != stabilizer:
            raise UnsupportedQuotientError(f"face {face} is fixed by a symmetry that does not rotate it freely")
        stabilizers[face] = stabilizer
        polygon = complex_.face_by_name[face]
        base_faces.append(
            Face(
                face,
                tuple(vertex_classes[v] for v in polygon.vertices[:period]),
                tuple((edge_classes[e][0], s * edge_classes[e][1]) for e, s in polygon.edges[:period]),
            )
        )
    periods = {f.name: len(f) for f in base_faces}

    def slot_class(name: str, k: int) -> Tuple[str, int]:
        rep, offset = face_classes[name]
        m = len(complex_.face_by_name[name])
        return rep, ((k - offset) % m) % periods[rep]

    pairing_images = {}
    for pairing in complex_.pairings:
        image, _ = complex_.pairing_by_face[check.face_map[pairing.source][0]]
        pairing_images[pairing.name] = (image.name, 1)
    base_pairings = []
    for name in natural_sorted({rep for rep, _ in _classes(pairing_images).values()}):
        pairing = next(p for p in complex_.pairings if p.name == name)
        m = len(complex_.face_by_name[pairing.source])
        source, first = slot_class(pairing.source, 0)
        target, landed = slot_class(pairing.target, pairing.slot_image(0, m))
        p = periods[source]
        if source == target or periods[target] != p:
            raise UnsupportedQuotientError(f"pairing {name} does not descend to the quotient")
        shift = (landed + first + 1) % p if pairing.reflect else (landed - first) % p
        base = Pairing(name, source, target, shift, pairing.reflect)
        for k in range(m):
            _, c = slot_class(pairing.source, k)
            if slot_class(pairing.target, pairing.slot_image(k, m))[1] != base.slot_image(c, p):
                raise UnsupportedQuotientError(f"pairing {name} does not descend to the quotient")
        base_pairings.append(base)

    vertex_reps = natural_sorted(set(vertex_classes.values()))
    edge_reps = natural_sorted({rep for rep, _ in edge_classes.values()})
    edges = tuple(
        Edge(rep, vertex_classes[complex_.edge_by_name[rep].tail], vertex_classes[complex_.edge_by_name[rep].head])
        for rep in edge_reps
    )
    hints, named_edges, names = [], set(), set()
    for edge, hint_name, sign in complex_.generator_hints:
        rep, direction = edge_classes[edge]
        if rep not in named_edges and hint_name not in names:
            hints.append((rep, hint_name, sign * direction))
            named_edges.add(rep)
            names.add(hint_name)

    base = PairedComplex(
        name=f"{complex_.name}/{a.name}",
        vertex_labels=tuple(vertex_reps),
        edges=edges,
        faces=tuple(base_faces),
        pairings=tuple(base_pairings),
        generator_hints=tuple(hints),
        n=complex_.n // check.order if complex_.n % check.order == 0 else 0,
    )
    return _Quotient(base, edge_classes, face_classes, stabilizers)


def quotient_complex(complex_: PairedComplex, a: ComplexAutomorphism) -> PairedComplex:
    """Base complex whose cells are the a-orbits of cells."""
    return _quotient(complex_, a).base


def singularity_report(family: Family_Id, n: int, step: int) -> SingularityReport:
    a = rotation(family, n, step)
    complex_ = build(family, n)
    quotient = _quotient(complex_, a)
    base = quotient.base

    down = edge_orbits(base)
    down_index = {edge: i for i, orbit in enumerate(down) for edge, _ in orbit.directions}
    preimages: Dict[int, List] = {}
    for orbit in edge_orbits(complex_):
        rep, _ = quotient.edge_classes[orbit.directions[0][0]]
        preimages.setdefault(down_index[rep], []).append(orbit)

    components = []
    for i in sorted(preimages):
        sizes = {len(orbit) for orbit in preimages[i]}
        size = sizes.pop()
        if sizes or size % len(down[i]):
            raise UnsupportedQuotientError(f"edge class {i + 1} of the quotient has an irregular preimage")
        index = size // len(down[i])
        if index > 1:
            members = natural_sorted(edge for orbit in preimages[i] for edge in orbit.member_edges)
            components.append(
                SingularComponent(Component_Kind.COLLAPSED_EDGE_CLASS, index, len(members), " ".join(members))
            )

    notes = []
    for pairing in base.pairings:
        stabilizer = quotient.stabilizers[pairing.source]
        if stabilizer > 1:
            components.append(
                SingularComponent(Component_Kind.ROTATION_AXIS, stabilizer, 1, f"{pairing.source} {pairing.target}")
            )
            notes = [AXIS_NOTE]

    report = SingularityReport(
        base_family=family,
        base_n=n // a.order,
        covering_degree=a.order,
        components=tuple(components),
        base_homology=h1(presentation_from_pairings(base)),
        notes=tuple(notes),
    )
    logger.info(f"{family.name}({n}) by step {step}: {len(components)} singular components")
    return report
