import logging
import re
from typing import List

from manifold.complex_core import Edge, Face, PairedComplex, Pairing
from manifold.errors import DocumentParseError, ManifoldError
from manifold.presentation import Presentation
from manifold.words import Word
from utils.const import (
    COMPLEX_DOCUMENT_KIND,
    FORMAT_VERSION,
    GENERATORS_KEY,
    INVERSE_PREFIX,
    PRESENTATION_DOCUMENT_KIND,
    RELATOR_KEY,
)
from utils.naming import natural_key

logger = logging.getLogger(__name__)

# ASCII digits only
DIGITS = re.compile(r"[0-9]+")

ROTATE, REFLECT = "rot", "ref"


def _signed(name: str, sign: int) -> str:
    return f"+{name}" if sign > 0 else f"{INVERSE_PREFIX}{name}"


def serialize_complex(c: PairedComplex) -> str:
    lines = [f"{FORMAT_VERSION} {COMPLEX_DOCUMENT_KIND}", f"name {c.name}", f"n {c.n}"]
    lines.append("vertices " + " ".join(sorted(c.vertex_labels, key=natural_key)))
    for edge in sorted(c.edges, key=lambda e: natural_key(e.name)):
        lines.append(f"edge {edge.name} {edge.tail} {edge.head}")
    for face in sorted(c.faces, key=lambda f: natural_key(f.name)):
        slots = " ".join(_signed(edge, sign) for edge, sign in face.edges)
        lines.append(f"face {face.name} {' '.join(face.vertices)} : {slots}")
    for pairing in sorted(c.pairings, key=lambda p: natural_key(p.name)):
        source, target = c.face_by_name[pairing.source], c.face_by_name[pairing.target]
        m = len(source)
        images = [target.vertices[pairing.vertex_image(k, m)] for k in range(m)]
        mode = REFLECT if pairing.reflect else ROTATE
        lines.append(
            f"pair {pairing.name} {pairing.source} {pairing.target} {mode} {pairing.shift} : "
            f"{' '.join(source.vertices)} -> {' '.join(images)}"
        )
    for edge, name, sign in c.generator_hints:
        lines.append(f"hint {edge} {name} {'+' if sign > 0 else INVERSE_PREFIX}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _check_header(lines: List, kind: str, required: bool) -> List:
    if lines and lines[0][1].split()[0] == FORMAT_VERSION:
        number, line = lines[0]
        if line.split()[1:] != [kind]:
            raise DocumentParseError(number, f"expected a {kind} document, got '{line}'")
        return lines[1:]
    if required:
        raise DocumentParseError(lines[0][0] if lines else 1, f"missing header '{FORMAT_VERSION} {kind}'")
    return lines


def _read_slot(number: int, token: str):
    if token[:1] not in ("+", INVERSE_PREFIX) or len(token) < 2:
        raise DocumentParseError(number, f"slot '{token}' must start with + or {INVERSE_PREFIX}")
    return token[1:], 1 if token[0] == "+" else -1


def parse_complex(text: str) -> PairedComplex:
    lines = _check_header(list(_content_lines(text)), COMPLEX_DOCUMENT_KIND, required=True)
    name, n = "complex", 0
    vertices: List[str] = []
    edges, faces, pairings, hints = {}, {}, {}, []
    roles = {}

    def unique(number, kind, key, table):
        if key in table:
            raise DocumentParseError(number, f"duplicate {kind} name {key}")

    for number, line in lines:
        keyword, *fields = line.split()
        if keyword == "name":
            name = " ".join(fields)
        elif keyword == "n":
            if len(fields) != 1 or not DIGITS.fullmatch(fields[0]):
                raise DocumentParseError(number, "n must be a non-negative integer")
            n = int(fields[0])
        elif keyword == "vertices":
            for label in fields:
                if label in vertices:
                    raise DocumentParseError(number, f"duplicate vertex name {label}")
                vertices.append(label)
        elif keyword == "edge":
            if len(fields) != 3:
                raise DocumentParseError(number, "edge needs a name, a tail and a head")
            unique(number, "edge", fields[0], edges)
            for label in fields[1:]:
                if label not in vertices:
                    raise DocumentParseError(number, f"unknown vertex {label}")
            edges[fields[0]] = Edge(*fields)
        elif keyword == "face":
            if ":" not in fields or len(fields) < 2:
                raise DocumentParseError(number, "face needs a name, vertices, ':' and slots")
            split = fields.index(":")
            face_name, labels, slots = fields[0], fields[1:split], fields[split + 1 :]
            unique(number, "face", face_name, faces)
            if len(labels) != len(slots) or not labels:
                raise DocumentParseError(number, f"ragged face {face_name}: {len(labels)} vertices, {len(slots)} slots")
            for label in labels:
                if label not in vertices:
                    raise DocumentParseError(number, f"unknown vertex {label}")
            faces[face_name] = Face(face_name, tuple(labels), tuple(_read_slot(number, token) for token in slots))
        elif keyword == "pair":
            pairing = _read_pairing(number, fields, faces)
            unique(number, "pairing", pairing.name, pairings)
            for face_name in (pairing.source, pairing.target):
                if face_name in roles:
                    raise DocumentParseError(number, f"face doubly paired: {face_name} already in {roles[face_name]}")
                roles[face_name] = pairing.name
            pairings[pairing.name] = pairing
        elif keyword == "hint":
            if len(fields) != 3 or fields[2] not in ("+", INVERSE_PREFIX):
                raise DocumentParseError(number, "hint needs an edge, a generator name and a sign")
            if fields[0] not in edges:
                raise DocumentParseError(number, f"unknown edge {fields[0]}")
            hints.append((fields[0], fields[1], 1 if fields[2] == "+" else -1))
        else:
            raise DocumentParseError(number, f"unknown keyword '{keyword}'")

    return PairedComplex(
        name=name,
        vertex_labels=tuple(vertices),
        edges=tuple(edges.values()),
        faces=tuple(faces.values()),
        pairings=tuple(pairings.values()),
        generator_hints=tuple(hints),
        n=n,
    )


def _read_pairing(number: int, fields: List[str], faces) -> Pairing:
    if len(fields) < 6 or fields[5] != ":" or "->" not in fields:
        raise DocumentParseError(number, "pair needs name, source, target, rot|ref, shift, ':' and correspondence")
    name, source, target, mode, shift = fields[:5]
    for face_name in (source, target):
        if face_name not in faces:
            raise DocumentParseError(number, f"unknown face {face_name}")
    if mode not in (ROTATE, REFLECT):
        raise DocumentParseError(number, f"pairing mode must be {ROTATE} or {REFLECT}")
    if not DIGITS.fullmatch(shift):
        raise DocumentParseError(number, f"shift must be a non-negative integer, got {shift}")
    arrow = fields.index("->")
    domain, images = fields[6:arrow], fields[arrow + 1 :]
    m = len(faces[source])
    if len(domain) != len(images) or len(domain) != m or len(faces[target]) != m:
        raise DocumentParseError(number, f"ragged correspondence in pairing {name}")
    pairing = Pairing(name, source, target, int(shift) % m, mode == REFLECT)
    expected = [faces[target].vertices[pairing.vertex_image(k, m)] for k in range(m)]
    if list(domain) != list(faces[source].vertices) or list(images) != expected:
        raise DocumentParseError(number, f"correspondence of pairing {name} does not match its faces")
    return pairing


def serialize_presentation(p: Presentation) -> str:
    lines = [f"{FORMAT_VERSION} {PRESENTATION_DOCUMENT_KIND}", f"{GENERATORS_KEY} {' '.join(p.generators)}".rstrip()]
    lines += [f"{RELATOR_KEY} {relator}".rstrip() for relator in p.relators]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    lines = _check_header(list(_content_lines(text)), PRESENTATION_DOCUMENT_KIND, required=False)
    generators = None
    relators = []
    for number, line in lines:
        if line.startswith(GENERATORS_KEY):
            if generators is not None:
                raise DocumentParseError(number, "generators listed twice")
            generators = line[len(GENERATORS_KEY) :].split()
            for g in generators:
                if generators.count(g) > 1:
                    raise DocumentParseError(number, f"duplicate generator {g}")
        elif line.startswith(RELATOR_KEY):
            if generators is None:
                raise DocumentParseError(number, "relator before the generator line")
            try:
                relator = Word.parse(line[len(RELATOR_KEY) :])
            except ManifoldError as error:
                raise DocumentParseError(number, str(error)) from None
            for g in relator.generators():
                if g not in generators:
                    raise DocumentParseError(number, f"unknown generator {g}")
            relators.append(relator)
        else:
            raise DocumentParseError(number, f"expected '{GENERATORS_KEY}' or '{RELATOR_KEY}'")
    if generators is None:
        raise DocumentParseError(1, "missing generator line")
    return Presentation(tuple(generators), tuple(relators))
