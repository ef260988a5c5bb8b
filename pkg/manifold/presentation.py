from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx

from manifold.complex_core import PairedComplex, edge_orbits, orbit_index_of_edge, vertex_class_map
from manifold.errors import DomainError, EliminationError, UnknownNameError
from manifold.families import build, wrap
from manifold.modes import Family_Id, Preset_Id, Tree_Strategy
from manifold.words import Word, cyclic_normal_form, cyclic_reduce, cyclically_equal, free_reduce
from utils import defaults
from utils.naming import natural_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        seen = set()
        for g in self.generators:
            if g in seen:
                raise DomainError(f"duplicate generator '{g}'")
            seen.add(g)
        for relator in self.relators:
            for g in relator.generators():
                if g not in seen:
                    raise UnknownNameError("generator", g)

    def cyclic_relators(self) -> list[Word]:
        """Relators in cyclic normal form, sorted; for comparing presentations."""
        forms = [cyclic_normal_form(r) for r in self.relators]
        return sorted(forms, key=lambda w: [(natural_key(g), e) for g, e in w])

    def __str__(self):
        relators = ", ".join(r.compressed() for r in self.relators)
        return f"< {', '.join(self.generators)} | {relators} >"


def presentation_from_pairings(complex_: PairedComplex) -> Presentation:
    """One generator per pairing, one relator per edge class (its cycle word)."""
    orbits = edge_orbits(complex_)
    return Presentation(
        generators=tuple(p.name for p in complex_.pairings),
        relators=tuple(free_reduce(orbit.cycle_word) for orbit in orbits),
    )


def _cw_generators(complex_: PairedComplex, orbits) -> tuple[list[str], list[int]]:
    names: list[str | None] = [None] * len(orbits)
    # generator direction relative to each orbit's representative edge
    factors = [1] * len(orbits)
    for edge, name, sign in complex_.generator_hints:
        i = orbit_index_of_edge(complex_, edge)
        if names[i] is None:
            names[i] = name
            factors[i] = sign * orbits[i].direction(edge)
    taken = {name for name in names if name}
    for i, name in enumerate(names):
        if name is None:
            candidate, k = f"e{i + 1}", i + 1
            while candidate in taken:
                k += len(orbits)
                candidate = f"e{k}"
            names[i] = candidate
            taken.add(candidate)
    return names, factors


def presentation_from_cw(complex_: PairedComplex, tree_strategy: Tree_Strategy = defaults.tree_strategy) -> Presentation:
    """Dual presentation: edge classes generate, face pairs relate, tree edges are killed."""
    orbits = edge_orbits(complex_)
    names, factors = _cw_generators(complex_, orbits)
    hinted = [name for _, name, _ in complex_.generator_hints if name in names]
    order = list(dict.fromkeys(hinted + names))
    position = {name: k for k, name in enumerate(order)}

    lookup = {}
    for i, orbit in enumerate(orbits):
        for edge, direction in orbit.directions:
            lookup[edge] = (names[i], direction * factors[i])

    relators = []
    for pairing in complex_.pairings:
        face = complex_.face_by_name[pairing.source]
        letters = []
        for edge, sign in face.edges:
            name, direction = lookup[edge]
            letters.append((name, sign * direction))
        relators.append(free_reduce(Word(tuple(letters))))

    classes = vertex_class_map(complex_)
    graph = nx.MultiGraph()
    graph.add_nodes_from(set(classes.values()))
    for i, orbit in enumerate(orbits):
        edge = complex_.edge_by_name[orbit.directions[0][0]]
        weight = position[names[i]] if tree_strategy == Tree_Strategy.FIRST else -position[names[i]]
        graph.add_edge(classes[edge.tail], classes[edge.head], key=names[i], weight=weight)
    tree = sorted(
        (key for _, _, key in nx.minimum_spanning_edges(graph, algorithm="kruskal", weight="weight", keys=True, data=False)),
        key=position.get,
    )
    if tree:
        logger.info(f"{complex_.name}: spanning tree kills {', '.join(tree)}")
    relators.extend(Word(((name, 1),)) for name in tree)
    return Presentation(generators=tuple(order), relators=tuple(relators))


def _defining_relator(p: Presentation, g: str, relator: int | None) -> int:
    candidates = [i for i, r in enumerate(p.relators) if cyclic_reduce(r).occurrences(g) == 1]
    if relator is not None:
        if relator not in candidates:
            raise EliminationError(f"relator {relator} does not define {g}")
        return relator
    if not candidates:
        raise EliminationError(f"no relator defines {g}")
    return min(candidates, key=lambda i: (len(cyclic_reduce(p.relators[i])), i))


def _solve_for(relator: Word, g: str) -> Word:
    """Rewrite a relator containing g once as g = w and return w."""
    letters = cyclic_reduce(relator).letters
    j = next(k for k, (name, _) in enumerate(letters) if name == g)
    rotated = Word(letters[j:] + letters[:j])
    rest = Word(rotated.letters[1:])
    # g rest = 1 gives g = rest^-1, g^-1 rest = 1 gives g = rest
    return rest.inverse() if rotated.letters[0][1] > 0 else rest


def _eliminate(p: Presentation, g: str, relator: int | None) -> Tuple[Presentation, List[int]]:
    if g not in p.generators:
        raise UnknownNameError("generator", g)
    index = _defining_relator(p, g, relator)
    image = _solve_for(p.relators[index], g)
    logger.info(f"eliminate {g} = {image.compressed()}")
    kept, relators = [], []
    for i, r in enumerate(p.relators):
        if i == index:
            continue
        reduced = free_reduce(r.substitute({g: image}))
        if reduced:
            kept.append(i)
            relators.append(reduced)
    generators = tuple(name for name in p.generators if name != g)
    return Presentation(generators, tuple(relators)), kept


def tietze_eliminate(p: Presentation, g: str, relator: int | None = None) -> Presentation:
    """Remove g using a relator that contains it exactly once (shortest, lowest index by default)."""
    return _eliminate(p, g, relator)[0]


def simplify(p: Presentation) -> Presentation:
    """Eliminate generators while some relator defines one, shortest relator first."""
    while True:
        best = None
        for k, g in enumerate(p.generators):
            for i, r in enumerate(p.relators):
                reduced = cyclic_reduce(r)
                if reduced.occurrences(g) == 1:
                    key = (len(reduced), k, i)
                    if best is None or key < best[0]:
                        best = (key, g, i)
        if best is None:
            return p
        _, g, i = best
        p = tietze_eliminate(p, g, i)


# generator -> edge whose class carries its defining relator
ELIMINATION_SCRIPTS = {
    Family_Id.M24: (("b", "qr"), ("a", "pq")),
    Family_Id.M25: (("b", "rq"), ("a", "qp")),
}


@dataclass(frozen=True)
class ReductionStep:
    eliminated: str | None
    presentation: Presentation


def _scripted_reduction(family: Family_Id, n: int) -> Tuple[List[ReductionStep], List[int]]:
    complex_ = build(family, n)
    p = presentation_from_pairings(complex_)
    # tags[k] is the edge class that produced relator k
    tags = list(range(len(p.relators)))
    steps = [ReductionStep(None, p)]
    script = [(f"{stem}{i}", f"{edge}{i}") for stem, edge in ELIMINATION_SCRIPTS[family] for i in range(1, n + 1)]
    script.append(("d", "pp1"))
    for g, edge in script:
        tag = orbit_index_of_edge(complex_, edge)
        if tag not in tags:
            raise EliminationError(f"defining relator for {g} vanished during reduction")
        p, kept = _eliminate(p, g, tags.index(tag))
        tags = [tags[i] for i in kept]
        steps.append(ReductionStep(g, p))
    return steps, tags


def reduction_steps(family: Family_Id, n: int) -> list[ReductionStep]:
    return _scripted_reduction(family, n)[0]


def reduced_family_presentation(family: Family_Id, n: int) -> Presentation:
    """π_1 on c_1..c_n after eliminating every b_i, then every a_i, then d."""
    return _scripted_reduction(family, n)[0][-1].presentation


def product_relator(n: int) -> Word:
    """The relator of the n-edge class of M24(n) after reduction."""
    steps, tags = _scripted_reduction(Family_Id.M24, n)
    tag = orbit_index_of_edge(build(Family_Id.M24, n), "qp1")
    return steps[-1].presentation.relators[tags.index(tag)]


def displayed_product_relator(n: int) -> Word:
    """c_1^3 c_2^3 ... c_n^3"""
    cubes = Word()
    for j in range(1, n + 1):
        cubes = cubes * Word.power(f"c{j}", 3)
    return cubes


def product_relator_matches_display(n: int) -> bool:
    matches = cyclically_equal(product_relator(n), displayed_product_relator(n))
    if not matches:
        logger.warning(f"M24({n}): product relator differs from the displayed product of cubes")
    return matches


def _indexed(stem: str, n: int) -> tuple[str, ...]:
    return tuple(f"{stem}{i}" for i in range(1, n + 1))


def preset_presentation(preset: Preset_Id, n: int = 1) -> Presentation:
    """Presentations written out in closed form for the two families."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if preset == Preset_Id.SEIFERT_M24_2:
        return Presentation(
            ("x", "y", "z", "h"),
            tuple(
                Word.parse(text)
                for text in (
                    "x y z",
                    "x h -x -h",
                    "y h -y -h",
                    "z h -z -h",
                    "x x x h",
                    "y y y h h",
                    "z z z -h",
                )
            ),
        )
    if preset == Preset_Id.H25 and n % 2:
        raise DomainError(f"H25 needs an even n, got {n}")

    generators = _indexed("x", n) + _indexed("y", n) + _indexed("z", n) + ("u",)
    product = Word(tuple((x, 1) for x in _indexed("x", n)))
    relators = [product]
    for i in range(1, n + 1):
        prev, ahead = wrap(i - 1, n), wrap(i + 2, n)
        if preset == Preset_Id.DUAL24:
            texts = [f"x{i} u -y{i}", f"x{i} y{ahead} -z{ahead}", f"z{i} z{i} y{prev}"]
        elif preset == Preset_Id.G25:
            texts = [f"x{i} y{i} -u", f"y{i} z{i} -x{prev}", f"z{prev} z{i} -y{prev}"]
        else:
            texts = [f"y{i} z{i} -x{prev}", f"z{prev} z{i} -y{prev}", f"x{i} y{i} -u" if i % 2 else f"x{i} y{i}"]
        relators.extend(Word.parse(text) for text in texts)
    return Presentation(generators, tuple(relators))
