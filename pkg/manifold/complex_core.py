from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from manifold.errors import StructuralError, UnknownNameError
from manifold.words import Word
from utils.naming import natural_key, natural_sorted
from utils.timer import timing_wrapper

logger = logging.getLogger(__name__)

# (face name, slot index); slot k runs from vertex k to vertex k+1
Slot = tuple[str, int]


@dataclass(frozen=True)
class Edge:
    name: str
    tail: str
    head: str


@dataclass(frozen=True)
class Face:
    """Cyclic boundary of a polygon.

    `edges[k]` is (edge name, sign) for the slot from `vertices[k]` to
    `vertices[k + 1]`; sign +1 when the slot runs along the edge's tail->head
    direction.
    """

    name: str
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, int], ...]

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class Pairing:
    """Face correspondence source -> target.

    Rotation: vertex k goes to k+shift, slot k to k+shift.
    Reflection: vertex k goes to shift-k, slot k to shift-k-1.
    """

    name: str
    source: str
    target: str
    shift: int = 0
    reflect: bool = False

    def vertex_image(self, k: int, m: int) -> int:
        return (self.shift - k) % m if self.reflect else (k + self.shift) % m

    def vertex_preimage(self, k: int, m: int) -> int:
        return (self.shift - k) % m if self.reflect else (k - self.shift) % m

    def slot_image(self, k: int, m: int) -> int:
        return (self.shift - k - 1) % m if self.reflect else (k + self.shift) % m

    def slot_preimage(self, k: int, m: int) -> int:
        return (self.shift - k - 1) % m if self.reflect else (k - self.shift) % m


@dataclass(frozen=True)
class PairedComplex:
    name: str
    vertex_labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    pairings: tuple[Pairing, ...]
    # (edge name, generator name, sign) naming the CW generator of the edge's orbit
    generator_hints: tuple[tuple[str, str, int], ...] = ()
    n: int = 0

    @cached_property
    def face_by_name(self) -> dict[str, Face]:
        return {face.name: face for face in self.faces}

    @cached_property
    def edge_by_name(self) -> dict[str, Edge]:
        return {edge.name: edge for edge in self.edges}

    @cached_property
    def pairing_by_face(self) -> dict[str, tuple[Pairing, bool]]:
        roles = {}
        for pairing in self.pairings:
            roles.setdefault(pairing.source, (pairing, True))
            roles.setdefault(pairing.target, (pairing, False))
        return roles

    @cached_property
    def slots_by_edge(self) -> dict[str, list[Slot]]:
        slots: dict[str, list[Slot]] = {}
        for face in self.faces:
            for k, (edge, _) in enumerate(face.edges):
                slots.setdefault(edge, []).append((face.name, k))
        return slots

    def face(self, name: str) -> Face:
        try:
            return self.face_by_name[name]
        except KeyError:
            raise UnknownNameError("face", name) from None

    def slot_edge(self, slot: Slot) -> tuple[str, int]:
        face_name, k = slot
        return self.face(face_name).edges[k]

    def opposite_slot(self, slot: Slot) -> Slot:
        """Boundary involution: the other slot bordering the same edge."""
        edge, _ = self.slot_edge(slot)
        first, second = self.slots_by_edge[edge]
        return second if first == slot else first

    def all_slots(self) -> list[Slot]:
        slots = [(face.name, k) for face in self.faces for k in range(len(face))]
        return sorted(slots, key=slot_key)


def slot_key(slot: Slot):
    return natural_key(slot[0]), slot[1]


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str

    def __str__(self):
        return f"{self.message} ({self.where})"


@dataclass(frozen=True)
class CellCounts:
    sigma0: int
    sigma1: int
    sigma2: int
    sigma3: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.sigma0, self.sigma1, self.sigma2, self.sigma3

    @property
    def euler_characteristic(self) -> int:
        return self.sigma0 - self.sigma1 + self.sigma2 - self.sigma3


@dataclass(frozen=True)
class EdgeOrbit:
    representative: Slot
    cycle_word: Word
    # slots visited by the cycle, starting at the representative
    slots: tuple[Slot, ...]
    # (edge name, direction relative to the representative edge)
    directions: tuple[tuple[str, int], ...]
    coherent: bool = True

    @property
    def member_edges(self) -> tuple[str, ...]:
        return tuple(natural_sorted(edge for edge, _ in self.directions))

    def direction(self, edge: str) -> int:
        return dict(self.directions)[edge]

    def __len__(self):
        return len(self.directions)


@dataclass(frozen=True)
class VertexOrbit:
    representative: str
    member_vertices: tuple[str, ...]

    def __len__(self):
        return len(self.member_vertices)


@dataclass(frozen=True)
class ManifoldCertificate:
    is_manifold: bool
    euler_characteristic: int
    cell_counts: CellCounts
    reasons: tuple[str, ...] = field(default=())

    def __bool__(self):
        return self.is_manifold


def _duplicates(names) -> list[str]:
    return natural_sorted(name for name, count in Counter(names).items() if count > 1)


def boundary_orientation(complex_: PairedComplex) -> dict[str, int] | None:
    """Face orientation signs making every edge cancel, or None if the boundary is not orientable.

    Each connected component is seeded with +1 on its first face.
    """
    signs: dict[str, int] = {}
    for seed in complex_.faces:
        if seed.name in signs:
            continue
        signs[seed.name] = 1
        queue = deque([seed.name])
        while queue:
            name = queue.popleft()
            for k, (edge, sign) in enumerate(complex_.face_by_name[name].edges):
                other_name, other_k = complex_.opposite_slot((name, k))
                _, other_sign = complex_.slot_edge((other_name, other_k))
                wanted = -signs[name] * sign * other_sign
                if other_name not in signs:
                    signs[other_name] = wanted
                    queue.append(other_name)
                elif signs[other_name] != wanted:
                    return None
    return signs


@lru_cache(maxsize=64)
def _violations(complex_: PairedComplex) -> tuple[Violation, ...]:
    found: list[Violation] = []

    def flag(kind, where, message):
        found.append(Violation(kind, where, message))

    for kind, names in (
        ("vertex", complex_.vertex_labels),
        ("edge", [e.name for e in complex_.edges]),
        ("face", [f.name for f in complex_.faces]),
        ("pairing", [p.name for p in complex_.pairings]),
    ):
        for name in _duplicates(names):
            flag(f"duplicate {kind}", name, f"duplicate {kind} name {name}")

    labels = set(complex_.vertex_labels)
    for edge in complex_.edges:
        for label in (edge.tail, edge.head):
            if label not in labels:
                flag("unknown vertex", edge.name, f"edge {edge.name} uses unknown vertex {label}")

    slot_counts: Counter = Counter()
    used_labels: set[str] = set()
    boundary_ok = True
    for face in complex_.faces:
        m = len(face.vertices)
        if m == 0:
            flag("empty face", face.name, f"face {face.name} has no slots")
            boundary_ok = False
            continue
        if len(face.edges) != m:
            flag("ragged face", face.name, f"face {face.name} lists {m} vertices but {len(face.edges)} edges")
            boundary_ok = False
            continue
        used_labels.update(face.vertices)
        for k, (edge_name, sign) in enumerate(face.edges):
            where = f"{face.name}[{k}]"
            edge = complex_.edge_by_name.get(edge_name)
            if edge is None:
                flag("unknown edge", where, f"slot references unknown edge {edge_name}")
                boundary_ok = False
                continue
            slot_counts[edge_name] += 1
            expected = (edge.tail, edge.head) if sign > 0 else (edge.head, edge.tail)
            if sign not in (1, -1) or (face.vertices[k], face.vertices[(k + 1) % m]) != expected:
                flag("slot endpoints", where, f"slot does not run along edge {edge_name}")
                boundary_ok = False
    for label in natural_sorted(labels - used_labels):
        flag("isolated vertex", label, f"vertex {label} lies on no face")
    for edge in complex_.edges:
        if slot_counts[edge.name] != 2:
            flag("edge incidence", edge.name, f"edge {edge.name} borders {slot_counts[edge.name]} slots instead of 2")
            boundary_ok = False

    roles: dict[str, str] = {}
    pairings_ok = True
    for pairing in complex_.pairings:
        if pairing.source == pairing.target:
            flag("self-paired face", pairing.name, f"pairing {pairing.name} glues face {pairing.source} to itself")
            pairings_ok = False
            continue
        for face_name in (pairing.source, pairing.target):
            if face_name not in complex_.face_by_name:
                flag("unknown face", pairing.name, f"pairing {pairing.name} uses unknown face {face_name}")
                pairings_ok = False
            elif face_name in roles:
                flag("face doubly paired", face_name, f"face doubly paired by {roles[face_name]} and {pairing.name}")
                pairings_ok = False
            else:
                roles[face_name] = pairing.name
        source = complex_.face_by_name.get(pairing.source)
        target = complex_.face_by_name.get(pairing.target)
        if source is not None and target is not None and len(source) != len(target):
            flag("length mismatch", pairing.name, f"pairing {pairing.name} joins faces of lengths {len(source)} and {len(target)}")
            pairings_ok = False
    for face in complex_.faces:
        if face.name not in roles:
            flag("unpaired face", face.name, f"unpaired face {face.name}")
            pairings_ok = False

    hint_names = [name for _, name, _ in complex_.generator_hints]
    for name in _duplicates(hint_names):
        flag("duplicate hint", name, f"generator name {name} hinted twice")
    for edge_name, name, sign in complex_.generator_hints:
        if edge_name not in complex_.edge_by_name or sign not in (1, -1):
            flag("bad hint", name, f"hint {name} refers to unknown edge {edge_name}")

    if not boundary_ok:
        return tuple(found)

    orientation = boundary_orientation(complex_)
    if orientation is None:
        flag("non-orientable boundary", complex_.name, "boundary surface is not orientable")
    chi = len(used_labels) - len(complex_.edges) + len(complex_.faces)
    if chi != 2:
        flag("boundary not a sphere", complex_.name, f"boundary Euler characteristic is {chi}, expected 2")

    if orientation is not None and pairings_ok:
        for pairing in complex_.pairings:
            same = orientation[pairing.source] == orientation[pairing.target]
            if same != pairing.reflect:
                flag("orientation preserving", pairing.name, f"pairing {pairing.name} preserves boundary orientation")
    return tuple(found)


def validate(complex_: PairedComplex) -> list[Violation]:
    return list(_violations(complex_))


def require_valid(complex_: PairedComplex) -> None:
    violations = _violations(complex_)
    if violations:
        raise StructuralError(violations)


def _traverse(complex_: PairedComplex, start: Slot) -> EdgeOrbit:
    letters = []
    visited = [start]
    start_edge, _ = complex_.slot_edge(start)
    directions = {start_edge: 1}
    direction = 1
    coherent = True
    current = start
    while True:
        face_name, k = current
        pairing, is_source = complex_.pairing_by_face[face_name]
        m = len(complex_.face_by_name[face_name])
        if is_source:
            landed = (pairing.target, pairing.slot_image(k, m))
            letters.append((pairing.name, 1))
        else:
            landed = (pairing.source, pairing.slot_preimage(k, m))
            letters.append((pairing.name, -1))
        _, sign = complex_.slot_edge(current)
        landed_edge, landed_sign = complex_.slot_edge(landed)
        direction *= sign * landed_sign * (-1 if pairing.reflect else 1)
        if directions.setdefault(landed_edge, direction) != direction:
            coherent = False
        current = complex_.opposite_slot(landed)
        if current == start:
            break
        visited.append(current)
    return EdgeOrbit(
        representative=start,
        cycle_word=Word(tuple(letters)),
        slots=tuple(visited),
        directions=tuple((edge, directions[edge]) for edge in natural_sorted(directions)),
        coherent=coherent,
    )


@lru_cache(maxsize=64)
@timing_wrapper
def _edge_orbits(complex_: PairedComplex) -> tuple[EdgeOrbit, ...]:
    require_valid(complex_)
    covered: set[str] = set()
    orbits = []
    for slot in complex_.all_slots():
        edge, _ = complex_.slot_edge(slot)
        if edge in covered:
            continue
        orbit = _traverse(complex_, slot)
        covered.update(e for e, _ in orbit.directions)
        logger.debug(f"{complex_.name}: orbit at {slot} word {orbit.cycle_word}")
        orbits.append(orbit)
    return tuple(orbits)


def edge_orbits(complex_: PairedComplex) -> list[EdgeOrbit]:
    """Classes of polyhedron edges, ordered by their least slot."""
    return list(_edge_orbits(complex_))


def orbit_index_of_edge(complex_: PairedComplex, edge: str) -> int:
    for i, orbit in enumerate(_edge_orbits(complex_)):
        if any(e == edge for e, _ in orbit.directions):
            return i
    raise UnknownNameError("edge", edge)


@lru_cache(maxsize=64)
def _vertex_orbits(complex_: PairedComplex) -> tuple[VertexOrbit, ...]:
    require_valid(complex_)
    parent = {label: label for label in complex_.vertex_labels}

    def find(label):
        while parent[label] != label:
            parent[label] = parent[parent[label]]
            label = parent[label]
        return label

    for pairing in complex_.pairings:
        source = complex_.face_by_name[pairing.source]
        target = complex_.face_by_name[pairing.target]
        m = len(source)
        for k, label in enumerate(source.vertices):
            root, other = find(label), find(target.vertices[pairing.vertex_image(k, m)])
            if root != other:
                parent[max(root, other, key=natural_key)] = min(root, other, key=natural_key)

    classes: dict[str, list[str]] = {}
    for label in complex_.vertex_labels:
        classes.setdefault(find(label), []).append(label)
    orbits = []
    for members in classes.values():
        ordered = tuple(natural_sorted(members))
        orbits.append(VertexOrbit(representative=ordered[0], member_vertices=ordered))
    return tuple(sorted(orbits, key=lambda orbit: natural_key(orbit.representative)))


def vertex_orbits(complex_: PairedComplex) -> list[VertexOrbit]:
    return list(_vertex_orbits(complex_))


def vertex_class_map(complex_: PairedComplex) -> dict[str, str]:
    return {label: orbit.representative for orbit in _vertex_orbits(complex_) for label in orbit.member_vertices}


def cell_counts(complex_: PairedComplex) -> CellCounts:
    return CellCounts(
        sigma0=len(_vertex_orbits(complex_)),
        sigma1=len(_edge_orbits(complex_)),
        sigma2=len(complex_.pairings),
        sigma3=1,
    )


def euler_characteristic(complex_: PairedComplex) -> int:
    return cell_counts(complex_).euler_characteristic


def is_manifold(complex_: PairedComplex) -> ManifoldCertificate:
    counts = cell_counts(complex_)
    chi = counts.euler_characteristic
    reasons = []
    if chi != 0:
        reasons.append(f"Euler characteristic is {chi}")
    for orbit in _edge_orbits(complex_):
        if not orbit.coherent:
            reasons.append(f"edge class at {orbit.representative} is glued to itself reversed")
    return ManifoldCertificate(
        is_manifold=not reasons,
        euler_characteristic=chi,
        cell_counts=counts,
        reasons=tuple(reasons),
    )


def structurally_equal(first: PairedComplex, second: PairedComplex) -> bool:
    """Same cells and pairings, ignoring name, parameter and declaration order."""
    return (
        set(first.vertex_labels) == set(second.vertex_labels)
        and first.edge_by_name == second.edge_by_name
        and first.face_by_name == second.face_by_name
        and {p.name: p for p in first.pairings} == {p.name: p for p in second.pairings}
        and first.generator_hints == second.generator_hints
    )
