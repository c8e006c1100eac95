"""Letter and cyclic digram counts of a cyclic word."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels


@dataclass(frozen=True)
class SubwordStats:
    """Counts ``w_x`` and ``w_xy`` of a cyclically reduced word of length ``n``.

    Both tables are indexed by letter key (x1, X1, x2, X2, ...); the digram
    table is flat with ``xy`` at ``key(x) * 2N + key(y)``. Entries for
    cancelling digrams ``x x^-1`` are always zero.
    """

    rank: int
    n: int
    singles: tuple
    digrams: tuple

    def single(self, x: int) -> int:
        return self.singles[kernels.letter_key(x)]

    def digram(self, x: int, y: int) -> int:
        if x == -y:
            raise KeyError("digram of a letter and its inverse is not counted")
        return self.digrams[kernels.letter_key(x) * 2 * self.rank + kernels.letter_key(y)]

    def as_dicts(self) -> tuple[dict, dict]:
        letters = [s * g for g in range(1, self.rank + 1) for s in (1, -1)]
        singles = {x: self.single(x) for x in letters}
        digrams = {(x, y): self.digram(x, y) for x in letters for y in letters if x != -y}
        return singles, digrams


def subword_stats(w: Sequence[int], rank: int) -> SubwordStats:
    if not w:
        raise ValueError("subword statistics of the empty word are undefined")
    singles, digrams = kernels.cyclic_counts(w, rank)
    return SubwordStats(rank, len(w), tuple(singles), tuple(digrams))
