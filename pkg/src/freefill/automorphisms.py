"""Endomorphisms given by basis images and the Whitehead automorphisms of F(X).

Type I automorphisms are signed permutations of the basis. A type II
automorphism ``(A, a)`` has multiplier letter ``a`` and a set ``A`` of letters
with ``a`` in ``A`` and ``a^-1`` not in ``A``; a letter ``u`` other than
``a^{+-1}`` goes to ``a^-[u^-1 in A] u a^[u in A]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from . import kernels
from .stats import SubwordStats, subword_stats
from .words import Word, concat, cyclic_core, free_reduce, inverse


def _letters(rank: int) -> list[int]:
    return [s * g for g in range(1, rank + 1) for s in (1, -1)]


def _check_rank(w: Sequence[int], rank: int) -> None:
    for a in w:
        if a == 0 or abs(a) > rank:
            raise ValueError(f"rank mismatch: letter {a} outside rank {rank}")


def _substitute(images: Sequence[Word], w: Sequence[int]) -> Word:
    inv = [inverse(img) for img in images]
    out: list[int] = []
    for a in w:
        out.extend(images[a - 1] if a > 0 else inv[-a - 1])
    return kernels.free_reduce(out)


@dataclass(frozen=True)
class EndoByImages:
    """Endomorphism sending generator ``x_i`` to ``images[i-1]``."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(free_reduce(img) for img in self.images))

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, w: Sequence[int]) -> Word:
        _check_rank(w, self.rank)
        return _substitute(self.images, w)

    def is_identity(self) -> bool:
        return all(img == (i + 1,) for i, img in enumerate(self.images))


@dataclass(frozen=True)
class TypeIAut:
    """Relabeling: generator ``x_i`` goes to the letter ``perm[i-1]``."""

    perm: tuple

    def __post_init__(self):
        if sorted(abs(a) for a in self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"not a signed permutation: {self.perm}")

    @property
    def rank(self) -> int:
        return len(self.perm)

    @property
    def images(self) -> tuple:
        return tuple((a,) for a in self.perm)

    def letter_map(self, a: int) -> int:
        b = self.perm[abs(a) - 1]
        return b if a > 0 else -b

    def __call__(self, w: Sequence[int]) -> Word:
        _check_rank(w, self.rank)
        p = self.perm
        return tuple(p[a - 1] if a > 0 else -p[-a - 1] for a in w)

    def is_identity(self) -> bool:
        return all(a == i + 1 for i, a in enumerate(self.perm))

    def inverse(self) -> "TypeIAut":
        inv = [0] * self.rank
        for i, b in enumerate(self.perm):
            inv[abs(b) - 1] = (i + 1) if b > 0 else -(i + 1)
        return TypeIAut(tuple(inv))


@dataclass(frozen=True)
class TypeIIAut:
    rank: int
    a: int
    A: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        if self.a not in self.A or -self.a in self.A:
            raise ValueError("multiplier must lie in A and its inverse outside A")
        _check_rank(tuple(self.A), self.rank)

    def letter_image(self, u: int) -> Word:
        a, A = self.a, self.A
        if u == a or u == -a:
            return (u,)
        img = [u]
        if -u in A:
            img.insert(0, -a)
        if u in A:
            img.append(a)
        return tuple(img)

    @property
    def images(self) -> tuple:
        return tuple(self.letter_image(g) for g in range(1, self.rank + 1))

    def __call__(self, w: Sequence[int]) -> Word:
        _check_rank(w, self.rank)
        out: list[int] = []
        for u in w:
            out.extend(self.letter_image(u))
        return kernels.free_reduce(out)

    def is_identity(self) -> bool:
        return self.A == {self.a}

    def is_inner(self) -> bool:
        """Conjugation by ``a`` (the set is everything except ``a^-1``)."""
        return len(self.A) == 2 * self.rank - 1

    def inverse(self) -> "TypeIIAut":
        return TypeIIAut(self.rank, -self.a, (self.A - {self.a}) | {-self.a})


WhiteheadAut = Union[TypeIAut, TypeIIAut]
Automorphism = Union[EndoByImages, TypeIAut, TypeIIAut]


def apply(phi: Automorphism, w: Sequence[int]) -> Word:
    return phi(w)


def compose(*maps: Automorphism) -> EndoByImages:
    """``compose(f, g)`` is ``f after g``: apply ``g`` first."""
    rank = maps[0].rank
    images = tuple((g,) for g in range(1, rank + 1))
    for phi in reversed(maps):
        if phi.rank != rank:
            raise ValueError("rank mismatch")
        images = tuple(phi(img) for img in images)
    return EndoByImages(images)


def is_identity_map(phi: Automorphism) -> bool:
    return all(phi((g,)) == (g,) for g in range(1, phi.rank + 1))


@lru_cache(maxsize=None)
def enumerate_type1(rank: int) -> tuple:
    """All 2^N N! signed permutations; the identity comes first."""
    if rank < 2:
        raise ValueError("rank must be at least 2")
    out = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append(TypeIAut(tuple(s * p for s, p in zip(signs, perm))))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_type2(rank: int, include_inner: bool = True) -> tuple:
    """All ``(A, a)`` pairs, multiplier-major in letter order.

    For a fixed multiplier the extra letters of ``A`` run over subsets of the
    other ``2N-2`` letters in binary counting order (first letter = lowest bit).
    With ``include_inner=False`` the identity and the inner automorphism are
    dropped for every multiplier.
    """
    if rank < 2:
        raise ValueError("rank must be at least 2")
    out = []
    for a in _letters(rank):
        others = [u for u in _letters(rank) if u != a and u != -a]
        for mask in range(1 << len(others)):
            A = frozenset([a] + [u for i, u in enumerate(others) if mask >> i & 1])
            tau = TypeIIAut(rank, a, A)
            if not include_inner and (tau.is_identity() or tau.is_inner()):
                continue
            out.append(tau)
    return tuple(out)


def cyclic_delta_direct(tau: TypeIIAut, w: Sequence[int]) -> int:
    """Change in cyclic length from ``w`` to ``tau(w)``, by applying ``tau``."""
    return len(cyclic_core(tau(w))) - len(cyclic_core(w))


def _crossing_mask(tau: TypeIIAut) -> np.ndarray:
    """0/1 over digrams ``xy`` whose Whitehead edge {x, y^-1} leaves A."""
    letters = _letters(tau.rank)
    m = len(letters)
    mask = np.zeros(m * m, dtype=np.int64)
    for x in letters:
        for y in letters:
            if x != -y and ((x in tau.A) != (-y in tau.A)):
                mask[kernels.letter_key(x) * m + kernels.letter_key(y)] = 1
    return mask


def _degree_mask(tau: TypeIIAut) -> np.ndarray:
    mask = np.zeros(2 * tau.rank, dtype=np.int64)
    mask[kernels.letter_key(tau.a)] = 1
    mask[kernels.letter_key(-tau.a)] = 1
    return mask


def cyclic_delta_counts(tau: TypeIIAut, stats: SubwordStats) -> int:
    """Change in cyclic length computed from counts alone.

    The cut between ``A`` and its complement in the Whitehead graph, minus
    the degree of the multiplier vertex. O(N^2), independent of word length.
    """
    if stats.rank != tau.rank:
        raise ValueError("rank mismatch")
    letters = _letters(tau.rank)
    m = len(letters)
    A = tau.A
    cut = 0
    for x in letters:
        kx = kernels.letter_key(x) * m
        in_a = x in A
        for y in letters:
            if x != -y and in_a != (-y in A):
                cut += stats.digrams[kx + kernels.letter_key(y)]
    return cut - stats.single(tau.a) - stats.single(-tau.a)


class DeltaTable:
    """Count-based deltas of a fixed list of type II automorphisms, vectorized."""

    def __init__(self, auts: Sequence[TypeIIAut]):
        self.auts = tuple(auts)
        self.cut = np.array([_crossing_mask(t) for t in self.auts])
        self.deg = np.array([_degree_mask(t) for t in self.auts])

    def deltas(self, stats: SubwordStats) -> np.ndarray:
        return self.cut @ np.asarray(stats.digrams) - self.deg @ np.asarray(stats.singles)


@lru_cache(maxsize=None)
def noninner_delta_table(rank: int) -> DeltaTable:
    return DeltaTable(enumerate_type2(rank, include_inner=False))


def whitehead_minimize(w: Sequence[int], rank: int) -> tuple[Word, list]:
    """Greedy Whitehead reduction of the cyclic word of ``w``.

    Each step applies the type II automorphism with the largest decrease in
    cyclic length (first in enumeration order on ties). Returns the minimal
    cyclically reduced word and the automorphisms applied, in order.
    """
    core = cyclic_core(w)
    _check_rank(core, rank)
    table = noninner_delta_table(rank)
    applied = []
    while core:
        d = table.deltas(subword_stats(core, rank))
        i = int(np.argmin(d))
        if d[i] >= 0:
            break
        tau = table.auts[i]
        core = cyclic_core(tau(core))
        applied.append(tau)
    return core, applied


@dataclass(frozen=True)
class WhiteheadGraph:
    """Undirected multigraph on all 2N letters; digram ``xy`` gives edge {x, y^-1}."""

    rank: int
    edges: dict  # (u, v) with key(u) <= key(v) -> multiplicity

    @property
    def vertices(self) -> list[int]:
        return _letters(self.rank)

    def edge_count(self) -> int:
        return sum(self.edges.values())

    def degree(self, v: int) -> int:
        return sum(c * ((u == v) + (x == v)) for (u, x), c in self.edges.items())

    def neighbours(self) -> dict:
        nb: dict = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb


def whitehead_graph(w: Sequence[int], rank: int) -> WhiteheadGraph:
    if not w:
        raise ValueError("Whitehead graph of the empty word is undefined")
    edges: dict = {}
    n = len(w)
    for i in range(n):
        x, y = w[i], w[(i + 1) % n]
        u, v = x, -y
        if kernels.letter_key(u) > kernels.letter_key(v):
            u, v = v, u
        edges[(u, v)] = edges.get((u, v), 0) + 1
    return WhiteheadGraph(rank, edges)


def _connected(vertices: set, nb: dict) -> bool:
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in nb[u]:
            if v in vertices and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(vertices)


def has_cut_vertex_or_disconnected(g: WhiteheadGraph) -> bool:
    """True when the graph on all 2N vertices is disconnected or has a cut vertex.

    A False answer certifies the word lies in no proper free factor.
    """
    nb = g.neighbours()
    verts = set(g.vertices)
    if not _connected(verts, nb):
        return True
    return any(not _connected(verts - {v}, nb) for v in verts)
