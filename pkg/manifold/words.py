from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from manifold.errors import DomainError
from utils.const import INVERSE_PREFIX
from utils.naming import natural_key

Letter = tuple[str, int]


@dataclass(frozen=True)
class Word:
    """A free-group word: a flat sequence of (generator, +1 or -1) letters."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((str(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if e not in (1, -1):
                raise DomainError(f"exponent of '{g}' must be +1 or -1, got {e}")
            if not g or any(c.isspace() for c in g) or g.startswith(INVERSE_PREFIX):
                raise DomainError(f"invalid generator name '{g}'")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> Word:
        """Read space separated tokens, "-g" standing for g^-1."""
        letters = []
        for token in text.split():
            if token.startswith(INVERSE_PREFIX):
                letters.append((token[len(INVERSE_PREFIX) :], -1))
            else:
                letters.append((token, 1))
        return cls(tuple(letters))

    @classmethod
    def power(cls, generator: str, exponent: int) -> Word:
        sign = 1 if exponent >= 0 else -1
        return cls(((generator, sign),) * abs(exponent))

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def occurrences(self, generator: str) -> int:
        return sum(1 for g, _ in self.letters if g == generator)

    def exponent_sum(self, generator: str) -> int:
        return sum(e for g, e in self.letters if g == generator)

    def substitute(self, images: Mapping[str, Word]) -> Word:
        letters = []
        for g, e in self.letters:
            if g in images:
                image = images[g] if e > 0 else images[g].inverse()
                letters.extend(image.letters)
            else:
                letters.append((g, e))
        return Word(tuple(letters))

    def __str__(self):
        return " ".join(g if e > 0 else f"{INVERSE_PREFIX}{g}" for g, e in self.letters)

    def compressed(self) -> str:
        """Run-length form such as "c1^3 c2^-2", "1" for the empty word."""
        if not self.letters:
            return "1"
        runs: list[list] = []
        for g, e in self.letters:
            if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (e > 0):
                runs[-1][1] += e
            else:
                runs.append([g, e])
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in runs)


def word(text: str) -> Word:
    return Word.parse(text)


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for g, e in w:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


def cyclic_reduce(w: Word) -> Word:
    letters = free_reduce(w).letters
    start, stop = 0, len(letters)
    while stop - start >= 2 and letters[start][0] == letters[stop - 1][0] and letters[start][1] == -letters[stop - 1][1]:
        start += 1
        stop -= 1
    return Word(letters[start:stop])


def _letter_key(letter: Letter):
    # g sorts before g^-1
    return natural_key(letter[0]), 0 if letter[1] > 0 else 1


def _rotations(letters: tuple[Letter, ...]) -> Iterable[tuple[Letter, ...]]:
    for i in range(len(letters)):
        yield letters[i:] + letters[:i]


def cyclic_normal_form(w: Word) -> Word:
    """Least rotation of the cyclically reduced w or its inverse."""
    reduced = cyclic_reduce(w)
    if not reduced:
        return reduced
    candidates = list(_rotations(reduced.letters)) + list(_rotations(reduced.inverse().letters))
    best = min(candidates, key=lambda letters: [_letter_key(letter) for letter in letters])
    return Word(best)


def cyclically_equal(first: Word, second: Word) -> bool:
    return cyclic_normal_form(first) == cyclic_normal_form(second)
