"""Membership in L(eps), TS and TS'."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .automorphisms import (
    DeltaTable,
    TypeIAut,
    TypeIIAut,
    enumerate_type1,
    enumerate_type2,
)
from .stats import SubwordStats, subword_stats
from .words import cyclic_core, is_cyclically_reduced


def epsilon_bound(rank: int) -> Fraction:
    """Upper end of the frequency window for which L(eps) lies in TS (up to relabelings)."""
    if rank < 2:
        raise ValueError("rank must be at least 2")
    n = rank
    return Fraction(2 * n - 3, n * (2 * n - 1) * (4 * n - 3))


@dataclass(frozen=True)
class FrequencyWindow:
    epsilon: Fraction
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @property
    def below_bound(self) -> bool:
        return self.epsilon < epsilon_bound(self.rank)

    @property
    def single_target(self) -> Fraction:
        return Fraction(1, 2 * self.rank)

    @property
    def digram_target(self) -> Fraction:
        return Fraction(1, 2 * self.rank * (2 * self.rank - 1))


@dataclass(frozen=True)
class FrequencyViolation:
    letters: tuple  # (x,) or (x, y)
    frequency: Fraction
    target: Fraction


def l_epsilon_violation(
    w: Sequence[int], epsilon, rank: int, stats: Optional[SubwordStats] = None
) -> Optional[FrequencyViolation]:
    """First letter or digram whose frequency leaves the window, or None."""
    if not w:
        raise ValueError("L(eps) membership of the empty word is undefined")
    win = FrequencyWindow(Fraction(epsilon), rank)
    st = stats if stats is not None else subword_stats(w, rank)
    n = st.n
    eps = win.epsilon
    letters = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    t1 = win.single_target
    for x in letters:
        f = Fraction(st.single(x), n)
        if not abs(f - t1) < eps:
            return FrequencyViolation((x,), f, t1)
    t2 = win.digram_target
    for x in letters:
        for y in letters:
            if x == -y:
                continue
            f = Fraction(st.digram(x, y), n)
            if not abs(f - t2) < eps:
                return FrequencyViolation((x, y), f, t2)
    return None


def in_L_epsilon(w: Sequence[int], epsilon, rank: int) -> bool:
    return l_epsilon_violation(w, epsilon, rank) is None


def in_L_epsilon_prime(w: Sequence[int], epsilon, rank: int) -> bool:
    core = cyclic_core(w)
    return bool(core) and in_L_epsilon(core, epsilon, rank)


@dataclass(frozen=True)
class TSFailure:
    """Why a cyclic word is not in TS.

    ``reason`` is one of ``"empty"``, ``"proper power"``, ``"type II"``,
    ``"type I"``; ``witness`` is the exponent, the offending ``TypeIIAut``
    (with its ``delta``) or the offending ``TypeIAut``.
    """

    reason: str
    witness: object = None
    delta: Optional[int] = None


class TSChecker:
    """Precomputed automorphism tables for TS membership at one rank."""

    def __init__(self, rank: int):
        self.rank = rank
        self.table = DeltaTable(enumerate_type2(rank, include_inner=False))
        self.relabelings = [s for s in enumerate_type1(rank) if not s.is_identity()]
        # key permutation per relabeling, for the count filter
        m = 2 * rank
        self._key_perms = []
        for s in self.relabelings:
            perm = np.empty(m, dtype=np.int64)
            for g in range(1, rank + 1):
                for a in (g, -g):
                    perm[kernels.letter_key(a)] = kernels.letter_key(s.letter_map(a))
            self._key_perms.append(perm)

    def failure(self, w: Sequence[int]) -> Optional[TSFailure]:
        """None if the cyclically reduced word ``w`` is in TS."""
        n = len(w)
        if n == 0:
            return TSFailure("empty")
        p = kernels.smallest_period(w)
        if p < n:
            return TSFailure("proper power", n // p)
        st = subword_stats(w, self.rank)
        d = self.table.deltas(st)
        bad = np.flatnonzero(d <= 0)
        if bad.size:
            i = int(bad[0])
            return TSFailure("type II", self.table.auts[i], int(d[i]))
        singles = np.asarray(st.singles)
        for s, perm in zip(self.relabelings, self._key_perms):
            # s(w) rotation of w forces s to preserve letter counts
            if not np.array_equal(singles[perm], singles):
                continue
            if kernels.is_rotation(w, s(w)):
                return TSFailure("type I", s)
        return None

    def contains(self, w: Sequence[int]) -> bool:
        return self.failure(w) is None


@lru_cache(maxsize=None)
def ts_checker(rank: int) -> TSChecker:
    return TSChecker(rank)


def ts_failure(w: Sequence[int], rank: int) -> Optional[TSFailure]:
    if not is_cyclically_reduced(w):
        raise ValueError("TS membership is defined on cyclically reduced words")
    return ts_checker(rank).failure(w)


def in_TS(w: Sequence[int], rank: int) -> bool:
    return ts_failure(w, rank) is None


def in_TS_prime(w: Sequence[int], rank: int) -> bool:
    """Membership of an arbitrary word in TS': cyclically reduce, then test TS.

    Linear in ``len(w)`` for fixed rank.
    """
    return ts_checker(rank).failure(cyclic_core(w)) is None


def ts_prime_failure(w: Sequence[int], rank: int) -> Optional[TSFailure]:
    return ts_checker(rank).failure(cyclic_core(w))


def shortest_ts_element(rank: int, max_length: int = 12):
    """First cyclic word in TS by length, then canonical letter order; None if none up to ``max_length``."""
    from .words import iter_cyclic_words

    checker = ts_checker(rank)
    for n in range(1, max_length + 1):
        for w in iter_cyclic_words(n, rank):
            if checker.contains(w):
                return w
    return None
