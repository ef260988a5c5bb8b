from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from manifold.errors import DomainError
from manifold.presentation import Presentation
from utils.timer import timing_wrapper
from utils.types import type_exact_int

logger = logging.getLogger(__name__)


class IntegerMatrix:
    """Rectangular matrix of Python ints held in a numpy object array."""

    def __init__(self, entries, rows: int | None = None, cols: int | None = None):
        array = np.array(entries, dtype=type_exact_int)
        if array.size == 0:
            if rows is not None and cols is not None:
                shape = (rows, cols)
            else:
                shape = array.shape if array.ndim == 2 else (0, 0)
            array = np.zeros(shape, dtype=type_exact_int)
        if array.ndim != 2:
            raise DomainError(f"matrix must be two dimensional, got shape {array.shape}")
        for value in array.flat:
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"matrix entries must be integers, got {value!r}")
        self.entries = np.vectorize(int, otypes=[type_exact_int])(array) if array.size else array

    @classmethod
    def identity(cls, size: int) -> IntegerMatrix:
        return cls(np.eye(size, dtype=int), size, size)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def __getitem__(self, index):
        return self.entries[index]

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        product = np.zeros((self.rows, other.cols), dtype=type_exact_int)
        if self.cols:
            product = self.entries.dot(other.entries)
        return IntegerMatrix(product, self.rows, other.cols)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries.flat, other.entries.flat))

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.entries.T, self.cols, self.rows)

    def diagonal(self) -> list[int]:
        return [int(self.entries[i, i]) for i in range(min(self.shape))]

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def determinant(self) -> int:
        """Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise DomainError("determinant needs a square matrix")
        a = self.entries.copy()
        size, sign, previous = self.rows, 1, 1
        for k in range(size - 1):
            if a[k, k] == 0:
                swap = next((i for i in range(k + 1, size) if a[i, k] != 0), None)
                if swap is None:
                    return 0
                a[[k, swap], :] = a[[swap, k], :]
                sign = -sign
            for i in range(k + 1, size):
                for j in range(k + 1, size):
                    a[i, j] = (a[i, j] * a[k, k] - a[i, k] * a[k, j]) // previous
            previous = a[k, k]
        return sign * int(a[size - 1, size - 1]) if size else 1

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()})"


class SmithNormalForm(NamedTuple):
    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix


def _smallest_nonzero(d: np.ndarray, t: int) -> tuple[int, int] | None:
    block = d[t:, t:]
    positions = np.argwhere(block != 0)
    if len(positions) == 0:
        return None
    # argwhere is row-major, so min keeps the first of equal values
    i, j = min(positions, key=lambda ij: abs(block[ij[0], ij[1]]))
    return t + int(i), t + int(j)


def _first_indivisible(d: np.ndarray, t: int) -> int | None:
    block = d[t + 1 :, t + 1 :]
    if block.size == 0:
        return None
    positions = np.argwhere(block % d[t, t] != 0)
    return t + 1 + int(positions[0][0]) if len(positions) else None


@timing_wrapper
def smith_normal_form(m: IntegerMatrix) -> SmithNormalForm:
    """Return D, U, V with U @ m @ V == D, U and V unimodular, d_1 | d_2 | ..."""
    d = m.entries.copy()
    rows, cols = d.shape
    u = IntegerMatrix.identity(rows).entries
    v = IntegerMatrix.identity(cols).entries
    for t in range(min(rows, cols)):
        while True:
            pivot = _smallest_nonzero(d, t)
            if pivot is None:
                break
            i, j = pivot
            d[[t, i], :] = d[[i, t], :]
            u[[t, i], :] = u[[i, t], :]
            d[:, [t, j]] = d[:, [j, t]]
            v[:, [t, j]] = v[:, [j, t]]
            p = d[t, t]
            clean = True
            for i in range(t + 1, rows):
                q = d[i, t] // p
                if q:
                    d[i, :] -= q * d[t, :]
                    u[i, :] -= q * u[t, :]
                clean = clean and d[i, t] == 0
            for j in range(t + 1, cols):
                q = d[t, j] // p
                if q:
                    d[:, j] -= q * d[:, t]
                    v[:, j] -= q * v[:, t]
                clean = clean and d[t, j] == 0
            if not clean:
                continue
            bad = _first_indivisible(d, t)
            if bad is None:
                break
            d[t, :] += d[bad, :]
            u[t, :] += u[bad, :]
        if d[t, t] < 0:
            d[t, :] *= -1
            u[t, :] *= -1
    return SmithNormalForm(IntegerMatrix(d, rows, cols), IntegerMatrix(u, rows, rows), IntegerMatrix(v, cols, cols))


_TERM = re.compile(r"Z(\d+)|Z\^(\d+)")


@dataclass(frozen=True)
class AbelianGroup:
    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.rank < 0:
            raise DomainError(f"negative rank {self.rank}")
        for k, d in enumerate(self.invariant_factors):
            if d < 2:
                raise DomainError(f"invariant factor {d} is below 2")
            if k and d % self.invariant_factors[k - 1]:
                raise DomainError(f"invariant factors {self.invariant_factors} do not form a divisibility chain")

    @property
    def order(self) -> int | None:
        """None for an infinite group."""
        if self.rank:
            return None
        return math.prod(self.invariant_factors)

    def __str__(self):
        terms = [f"Z{d}" for d in self.invariant_factors]
        if self.rank:
            terms.append(f"Z^{self.rank}")
        return " + ".join(terms) if terms else "0"

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text == "0":
            return cls()
        rank, factors = 0, []
        for term in text.split("+"):
            match = _TERM.fullmatch(term.strip())
            if match is None:
                raise DomainError(f"cannot read abelian group term '{term.strip()}'")
            if match.group(1):
                factors.append(int(match.group(1)))
            else:
                rank += int(match.group(2))
        return cls(rank, tuple(factors))


def abelianization_matrix(p: Presentation) -> IntegerMatrix:
    """Exponent sums: one row per relator, one column per generator."""
    column = {g: k for k, g in enumerate(p.generators)}
    rows = np.zeros((len(p.relators), len(p.generators)), dtype=type_exact_int)
    for i, relator in enumerate(p.relators):
        for g in relator.generators():
            rows[i, column[g]] = relator.exponent_sum(g)
    return IntegerMatrix(rows, len(p.relators), len(p.generators))


def invariant_factors(m: IntegerMatrix) -> tuple[int, list[int]]:
    """Cokernel data of m^T: (number of nonzero diagonal entries, diagonal)."""
    diagonal = smith_normal_form(m).D.diagonal()
    nonzero = [d for d in diagonal if d != 0]
    return len(nonzero), nonzero


def h1(p: Presentation) -> AbelianGroup:
    matrix_rank, diagonal = invariant_factors(abelianization_matrix(p))
    group = AbelianGroup(
        rank=len(p.generators) - matrix_rank,
        invariant_factors=tuple(d for d in diagonal if d > 1),
    )
    logger.debug(f"H1 of {len(p.generators)}-generator presentation: {group}")
    return group
