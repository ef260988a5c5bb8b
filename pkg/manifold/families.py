from manifold.complex_core import Edge, Face, PairedComplex, Pairing
from manifold.errors import DomainError
from manifold.modes import Family_Id
from utils.const import BAR_SUFFIX

LETTERS = "PQRS"

# edge kind -> (tail letter, tail offset, head letter, head offset) relative to the edge index
EDGE_KINDS = {
    "pp": ("P", 0, "P", 1),
    "pq": ("P", 0, "Q", 0),
    "qp": ("Q", 0, "P", 1),
    "pr": ("P", 0, "R", 0),
    "qr": ("Q", 0, "R", 0),
    "rq": ("R", 1, "Q", 0),
    "qs": ("Q", 0, "S", 0),
    "rs": ("R", 0, "S", 0),
    "sr": ("S", 0, "R", 1),
    "ss": ("S", 0, "S", 1),
}

# (letter u, letter v, index(v) - index(u)) -> (edge kind, indexed by u or v, sign)
_SLOT_RULES = {}
for _kind, (_tail, _t, _head, _h) in EDGE_KINDS.items():
    _SLOT_RULES[(_tail, _head, _h - _t)] = (_kind, "u", 1) if _t == 0 else (_kind, "v", 1)
    _SLOT_RULES[(_head, _tail, _t - _h)] = (_kind, "v", -1) if _t == 0 else (_kind, "u", -1)

# triangle faces: name -> vertex offsets from i, source face first
PHI_TRIANGLES = {
    "a": ((("P", 0), ("P", 1), ("Q", 0)), (("R", 2), ("P", 2), ("Q", 1))),
    "b": ((("R", 0), ("P", 0), ("Q", 0)), (("S", 0), ("S", 1), ("R", 1))),
    "c": ((("S", 0), ("R", 0), ("Q", 0)), (("R", 1), ("Q", 0), ("S", 0))),
}
PSI_TRIANGLES = {
    "a": ((("P", 0), ("P", 1), ("Q", 0)), (("P", 2), ("R", 2), ("Q", 2))),
    "b": ((("Q", 0), ("R", 1), ("P", 1)), (("R", 2), ("S", 2), ("S", 1))),
    "c": ((("Q", -1), ("R", 0), ("S", -1)), (("S", 0), ("Q", 0), ("R", 0))),
}

# (edge kind, generator stem, sign, pinned index or None for every i)
PHI_HINTS = (("pp", "x", 1, None), ("pq", "y", 1, None), ("qr", "z", -1, None), ("qp", "u", -1, 1))
PSI_HINTS = (("pp", "x", 1, None), ("qp", "y", -1, None), ("rq", "z", -1, None), ("pq", "u", 1, 1))


def wrap(index: int, n: int) -> int:
    """Subscript arithmetic mod n, mapped into 1..n."""
    return (index - 1) % n + 1


def label(letter: str, index: int, n: int) -> str:
    return f"{letter}{wrap(index, n)}"


def edge_name(kind: str, index: int, n: int) -> str:
    return f"{kind}{wrap(index, n)}"


def _classify(u: tuple[str, int], v: tuple[str, int], n: int) -> tuple[str, int]:
    kind, base, sign = _SLOT_RULES[(u[0], v[0], v[1] - u[1])]
    return edge_name(kind, u[1] if base == "u" else v[1], n), sign


def _triangle(name: str, corners, i: int, n: int) -> Face:
    points = [(letter, i + offset) for letter, offset in corners]
    slots = tuple(_classify(points[k], points[(k + 1) % 3], n) for k in range(3))
    return Face(name, tuple(label(letter, j, n) for letter, j in points), slots)


def _build(n: int, triangles, hint_table, title: str) -> PairedComplex:
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    indices = range(1, n + 1)
    vertex_labels = tuple(f"{letter}{i}" for letter in LETTERS for i in indices)
    edges = tuple(
        Edge(edge_name(kind, i, n), label(tail, i + t, n), label(head, i + h, n))
        for kind, (tail, t, head, h) in EDGE_KINDS.items()
        for i in indices
    )
    sources, targets, pairings = [], [], []
    for stem, (source_corners, target_corners) in triangles.items():
        upper = stem.upper()
        for i in indices:
            sources.append(_triangle(f"{upper}{i}", source_corners, i, n))
            targets.append(_triangle(f"{upper}{BAR_SUFFIX}{i}", target_corners, i, n))
            pairings.append(Pairing(f"{stem}{i}", f"{upper}{i}", f"{upper}{BAR_SUFFIX}{i}"))
    # the n-gon D = [P_1 .. P_n] goes to [S_3 S_4 .. S_2]
    polygon = Face("D", tuple(label("P", k, n) for k in indices), tuple((edge_name("pp", k, n), 1) for k in indices))
    polygon_bar = Face(
        f"D{BAR_SUFFIX}",
        tuple(label("S", k + 2, n) for k in indices),
        tuple((edge_name("ss", k + 2, n), 1) for k in indices),
    )
    pairings.append(Pairing("d", "D", f"D{BAR_SUFFIX}"))

    hints = []
    for kind, stem, sign, pinned in hint_table:
        for i in indices if pinned is None else (pinned,):
            hints.append((edge_name(kind, i, n), stem if pinned else f"{stem}{i}", sign))
    if hint_table is PSI_HINTS and n % 2 == 0:
        hints.append((edge_name("pq", 2, n), "v", 1))

    faces = tuple(sorted(sources + targets, key=lambda face: face.name[0])) + (polygon, polygon_bar)
    return PairedComplex(
        name=f"{title}({n})",
        vertex_labels=vertex_labels,
        edges=edges,
        faces=faces,
        pairings=tuple(pairings),
        generator_hints=tuple(hints),
        n=n,
    )


def build_m24(n: int) -> PairedComplex:
    return _build(n, PHI_TRIANGLES, PHI_HINTS, "M24")


def build_m25(n: int) -> PairedComplex:
    return _build(n, PSI_TRIANGLES, PSI_HINTS, "M25")


def build(family: Family_Id, n: int) -> PairedComplex:
    return build_m24(n) if family == Family_Id.M24 else build_m25(n)
