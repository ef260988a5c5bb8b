from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from manifold.errors import CapacityError, DomainError, UnknownNameError
from manifold.presentation import Presentation, simplify
from manifold.words import free_reduce
from utils import defaults
from utils.timer import timing_wrapper
from utils.types import type_group_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its multiplication table; elements are 0..order-1."""

    name: str
    table: np.ndarray
    identity: int = field(init=False)
    inverses: np.ndarray = field(init=False)

    def __post_init__(self):
        table = np.asarray(self.table)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise DomainError(f"{self.name}: multiplication table must be square and non-empty")
        if not np.issubdtype(table.dtype, np.integer):
            raise DomainError(f"{self.name}: multiplication table must hold integers")
        order = table.shape[0]
        table = table.astype(type_group_element)
        if table.min() < 0 or table.max() >= order:
            raise DomainError(f"{self.name}: table entries out of range")
        elements = np.arange(order)
        identities = [e for e in range(order) if (table[e] == elements).all() and (table[:, e] == elements).all()]
        if not identities:
            raise DomainError(f"{self.name}: no identity element")
        identity = identities[0]
        hits = np.argwhere(table == identity)
        inverses = np.full(order, -1, dtype=type_group_element)
        for a, b in hits:
            if table[b, a] == identity:
                inverses[a] = b
        if (inverses < 0).any():
            raise DomainError(f"{self.name}: some element has no inverse")
        left = table[table[:, :, None], elements[None, None, :]]
        right = table[elements[:, None, None], table[None, :, :]]
        if not (left == right).all():
            raise DomainError(f"{self.name}: multiplication is not associative")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverses", inverses)

    @property
    def order(self) -> int:
        return self.table.shape[0]


def cyclic_group(m: int) -> FiniteGroup:
    elements = np.arange(m)
    return FiniteGroup(f"Z{m}", np.add.outer(elements, elements) % m)


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    a, b = first.table, second.table
    size = second.order
    table = a[:, None, :, None] * size + b[None, :, None, :]
    order = first.order * size
    return FiniteGroup(f"{first.name}x{second.name}", table.reshape(order, order))


def _from_rule(name: str, elements: list, multiply) -> FiniteGroup:
    index = {element: k for k, element in enumerate(elements)}
    table = np.array([[index[multiply(x, y)] for y in elements] for x in elements])
    return FiniteGroup(name, table)


def dihedral_group(m: int) -> FiniteGroup:
    """Order 2m: r^k s^e with s r s = r^-1."""
    elements = list(product(range(m), (0, 1)))

    def multiply(x, y):
        (k1, e1), (k2, e2) = x, y
        return ((k1 + (-k2 if e1 else k2)) % m, (e1 + e2) % 2)

    return _from_rule(f"D{m}", elements, multiply)


def dicyclic_group(m: int) -> FiniteGroup:
    """Order 4m: a^k x^e with x^2 = a^m, x a x^-1 = a^-1 (m = 2 is Q8)."""
    elements = list(product(range(2 * m), (0, 1)))

    def multiply(x, y):
        (k1, e1), (k2, e2) = x, y
        if not e1:
            return ((k1 + k2) % (2 * m), e2)
        if not e2:
            return ((k1 - k2) % (2 * m), 1)
        return ((k1 - k2 + m) % (2 * m), 0)

    return _from_rule("Q8" if m == 2 else f"Dic{m}", elements, multiply)


def alternating_group_4() -> FiniteGroup:
    def parity(p):
        return sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2

    elements = [p for p in permutations(range(4)) if parity(p) == 0]
    return _from_rule("A4", elements, lambda p, q: tuple(p[q[i]] for i in range(4)))


def small_groups(max_order: int = defaults.small_group_max_order) -> list[FiniteGroup]:
    """Every group of order up to 12, one per isomorphism class."""
    z = cyclic_group
    groups = [z(m) for m in range(1, 13)]
    groups += [
        direct_product(z(2), z(2)),
        dihedral_group(3),
        direct_product(z(4), z(2)),
        direct_product(direct_product(z(2), z(2)), z(2)),
        dihedral_group(4),
        dicyclic_group(2),
        direct_product(z(3), z(3)),
        dihedral_group(5),
        direct_product(z(2), z(6)),
        dihedral_group(6),
        alternating_group_4(),
        dicyclic_group(3),
    ]
    return sorted((g for g in groups if g.order <= max_order), key=lambda g: g.order)


@timing_wrapper
def count_homomorphisms(
    p: Presentation, target: FiniteGroup, limit: int = defaults.homomorphism_generator_limit
) -> int:
    """Count generator images satisfying every relator, extending one generator at a time."""
    if len(p.generators) > limit:
        logger.info(f"{len(p.generators)} generators exceed {limit}, simplifying first")
        p = simplify(p)
    if len(p.generators) > limit:
        raise CapacityError(f"{len(p.generators)} generators exceed the search limit of {limit}")
    column = {g: k for k, g in enumerate(p.generators)}
    # relators are checked as soon as their last generator is assigned
    schedule = [[] for _ in p.generators]
    for relator in p.relators:
        relator = free_reduce(relator)
        if not relator:
            continue
        for g in relator.generators():
            if g not in column:
                raise UnknownNameError("generator", g)
        schedule[max(column[g] for g in relator.generators())].append(relator)

    order = target.order
    assignments = np.zeros((1, 0), dtype=type_group_element)
    for k in range(len(p.generators)):
        count = assignments.shape[0]
        assignments = np.hstack(
            [np.repeat(assignments, order, axis=0), np.tile(np.arange(order, dtype=type_group_element), count)[:, None]]
        )
        for relator in schedule[k]:
            values = np.full(assignments.shape[0], target.identity, dtype=type_group_element)
            for g, e in relator:
                images = assignments[:, column[g]]
                if e < 0:
                    images = target.inverses[images]
                values = target.table[values, images]
            assignments = assignments[values == target.identity]
    return int(assignments.shape[0])
