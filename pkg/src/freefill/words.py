"""Free-group words.

A word is a tuple of nonzero ints in Tietze form: ``i`` stands for the
generator x_i and ``-i`` for its inverse. Cyclic words are represented by
cyclically reduced tuples; two of them are the same cyclic word exactly when
their canonical rotations agree.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernels

Word = tuple  # tuple[int, ...]

MAX_RANK = 26


class WordParseError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Rank-N alphabet with text names for the generators.

    Lowercase names are generators, uppercase their inverses. ``names``
    defaults to ``abc...``; for rank <= 3 the names ``xyz`` are accepted as
    well when parsing with :meth:`detect`.
    """

    rank: int
    names: str = string.ascii_lowercase

    def __post_init__(self):
        if not 2 <= self.rank <= MAX_RANK:
            raise ValueError(f"rank must be in [2, {MAX_RANK}], got {self.rank}")
        if len(self.names) < self.rank:
            raise ValueError("not enough generator names for this rank")

    @classmethod
    def detect(cls, rank: int, *texts: str) -> "Alphabet":
        """Pick ``xyz`` naming when the texts use it and rank allows, else ``abc``."""
        if rank <= 3:
            used = {ch.lower() for t in texts for ch in t if ch.isalpha()}
            if used and used <= set("xyz") and not used & set("abc"):
                return cls(rank, "xyz")
        return cls(rank)

    def letters(self) -> list[int]:
        """All 2N letters in the fixed order x1 < X1 < x2 < X2 < ..."""
        return [s * g for g in range(1, self.rank + 1) for s in (1, -1)]

    def letter_name(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name.upper()

    def parse_letter(self, ch: str) -> int:
        idx = self.names.find(ch.lower())
        if idx < 0 or idx >= self.rank or not ch.isalpha():
            raise WordParseError(f"letter {ch!r} is not in the rank-{self.rank} alphabet")
        return idx + 1 if ch.islower() else -(idx + 1)

    def parse(self, text: str) -> Word:
        """Parse a word; no reduction is applied. Whitespace, '1' and 'e' mean nothing."""
        text = text.strip()
        if text in ("", "1", "e"):
            return ()
        return tuple(self.parse_letter(ch) for ch in text if not ch.isspace())

    def format(self, w: Sequence[int]) -> str:
        return "".join(self.letter_name(a) for a in w)

    def check(self, w: Sequence[int]) -> None:
        for a in w:
            if a == 0 or abs(a) > self.rank:
                raise ValueError(f"letter {a} outside rank {self.rank}")


def inverse_letter(a: int) -> int:
    return -a


def free_reduce(raw: Sequence[int]) -> Word:
    return kernels.free_reduce(raw)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != -w[-1])


def inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def concat(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return kernels.free_reduce(out)


def conjugate(w: Sequence[int], g: Sequence[int]) -> Word:
    """Right conjugation ``g^-1 w g``."""
    return concat(inverse(g), w, g)


def power(w: Sequence[int], e: int) -> Word:
    if e < 0:
        return power(inverse(w), -e)
    return kernels.free_reduce(tuple(w) * e)


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w == conjugator^-1 * core * conjugator``."""
    w = kernels.free_reduce(w)
    k = kernels.cyclic_peel(w)
    if k == 0:
        return w, ()
    return w[k : len(w) - k], inverse(w[:k])


def cyclic_core(w: Sequence[int]) -> Word:
    return cyclic_reduce(w)[0]


def rotate(w: Sequence[int], k: int) -> Word:
    w = tuple(w)
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def canonical_rotation(w: Sequence[int]) -> Word:
    """Least rotation under the order x1 < X1 < x2 < X2 < ..."""
    return rotate(w, kernels.least_rotation(w))


def same_cyclic_word(u: Sequence[int], v: Sequence[int]) -> bool:
    return kernels.is_rotation(u, v)


def is_proper_power(w: Sequence[int]) -> tuple[bool, Word, int]:
    """Return ``(e > 1, root, e)`` with ``w == root * e`` letter for letter.

    ``w`` is read as a cyclic word, so it should be cyclically reduced for the
    answer to mean "proper power in F(X)". Linear time.
    """
    w = tuple(w)
    if not w:
        raise ValueError("no root of identity")
    p = kernels.smallest_period(w)
    e = len(w) // p
    return e > 1, w[:p], e


def letter_order_key(w: Sequence[int]) -> tuple:
    return tuple(kernels.letter_key(a) for a in w)


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_reduced_word(n: int, rank: int, rng=None) -> Word:
    """Uniform sample from the sphere of reduced words of length exactly ``n``.

    ``rng`` is a seed or a ``numpy.random.Generator`` owned by the caller.
    """
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        return ()
    gen = _as_rng(rng)
    m = 2 * rank
    first = int(gen.integers(m))
    draws = gen.integers(m - 1, size=n - 1)
    return kernels.walk_draws(first, draws.tolist(), rank)


def sphere_size(n: int, rank: int) -> int:
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (n - 1)


def ball_size(n: int, rank: int) -> int:
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        return 1
    # 1 + 2N((2N-1)^n - 1)/(2N-2)
    q = 2 * rank - 1
    return 1 + rank * (q**n - 1) // (rank - 1)


def iter_sphere(n: int, rank: int) -> Iterator[Word]:
    """All reduced words of length ``n`` in lexicographic letter order."""
    letters = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    if n == 0:
        yield ()
        return
    word: list[int] = []

    def extend(depth: int):
        if depth == n:
            yield tuple(word)
            return
        for a in letters:
            if word and word[-1] == -a:
                continue
            word.append(a)
            yield from extend(depth + 1)
            word.pop()

    yield from extend(0)


def iter_cyclic_words(n: int, rank: int) -> Iterator[Word]:
    """One representative (the canonical rotation) per cyclic word of length ``n``."""
    for w in iter_sphere(n, rank):
        if n and w[0] == -w[-1]:
            continue
        if canonical_rotation(w) == w:
            yield w
