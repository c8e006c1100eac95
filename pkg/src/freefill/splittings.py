"""Elementary cyclic splittings of F(X) and the non-filling witnesses they give.

A splitting is described up to the normal forms of its vertex groups:

* ``free``: basis partition A | B, vertex groups <A> and <B> (trivial edge group);
* ``segment``: basis partition A | B with #A >= 1, #B >= 2 and an edge word
  b in <B>, vertex groups <A, b> and <B>;
* ``loop``: a basis letter v and the remaining generators U with an edge
  word u in <U>, vertex group <U, v^-1 u v>.

An element elliptic in any of these (conjugate into a vertex group) is not
filling; finding one is a bounded search, so "no witness" is never a proof of
filling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .automorphisms import EndoByImages
from .stallings import conjugator_into, contains, stallings_graph
from .words import (
    Alphabet,
    Word,
    canonical_rotation,
    conjugate,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_proper_power,
    iter_sphere,
    letter_order_key,
)

KINDS = ("free", "segment", "loop")


@dataclass(frozen=True)
class SplittingSpec:
    kind: str
    rank: int
    A: tuple = ()  # generator indices (free, segment)
    B: tuple = ()
    edge_word: Word = ()  # b (segment) or u (loop)
    v: int = 0  # signed stable letter (loop)

    def __post_init__(self):
        gens = set(range(1, self.rank + 1))
        if self.kind == "free":
            if not self.A or not self.B or set(self.A) | set(self.B) != gens or set(self.A) & set(self.B):
                raise ValueError("free splitting needs a partition of the basis into two nonempty parts")
        elif self.kind == "segment":
            if set(self.A) | set(self.B) != gens or set(self.A) & set(self.B):
                raise ValueError("segment splitting needs a partition of the basis")
            if len(self.A) < 1 or len(self.B) < 2:
                raise ValueError("segment splitting needs #A >= 1 and #B >= 2")
            self._check_edge_word(self.B)
        elif self.kind == "loop":
            if self.v == 0 or abs(self.v) > self.rank:
                raise ValueError("loop splitting needs a basis letter v")
            self._check_edge_word(self.U)
        else:
            raise ValueError(f"unknown splitting kind {self.kind!r}")

    def _check_edge_word(self, allowed: Sequence[int]) -> None:
        w = self.edge_word
        if not w or free_reduce(w) != tuple(w):
            raise ValueError("edge word must be a nontrivial reduced word")
        if any(abs(a) not in allowed for a in w):
            raise ValueError("edge word uses letters outside its vertex group basis")
        if is_cyclically_reduced(w) and is_proper_power(w)[0]:
            raise ValueError("edge word must not be a proper power")

    @property
    def U(self) -> tuple:
        return tuple(g for g in range(1, self.rank + 1) if g != abs(self.v))

    def vertex_generators(self) -> list[list[Word]]:
        if self.kind == "free":
            return [[(g,) for g in self.A], [(g,) for g in self.B]]
        if self.kind == "segment":
            return [[(g,) for g in self.A] + [self.edge_word], [(g,) for g in self.B]]
        return [[(g,) for g in self.U] + [conjugate(self.edge_word, (self.v,))]]

    def vertex_graphs(self) -> tuple:
        return _vertex_graphs(self)

    def describe(self, alphabet: Alphabet) -> str:
        def gset(gs):
            return "{" + ",".join(alphabet.letter_name(g) for g in gs) + "}"

        if self.kind == "loop":
            part = f"{gset(self.U)}|v={alphabet.letter_name(self.v)}"
        else:
            part = f"{gset(self.A)}|{gset(self.B)}"
        edge = alphabet.format(self.edge_word) if self.edge_word else "1"
        return f"kind={self.kind} partition={part} edge_word={edge}"


@lru_cache(maxsize=4096)
def _vertex_graphs(spec: SplittingSpec) -> tuple:
    return tuple(stallings_graph(gens, spec.rank) for gens in spec.vertex_generators())


@dataclass(frozen=True)
class EllipticWitness:
    spec: SplittingSpec
    vertex: int  # index into spec.vertex_generators()
    conjugator: Word  # conjugate(w, conjugator) lies in that vertex group


def elliptic_witness(spec: SplittingSpec, w: Sequence[int]) -> Optional[EllipticWitness]:
    for i, g in enumerate(spec.vertex_graphs()):
        c = conjugator_into(g, w)
        if c is not None:
            return EllipticWitness(spec, i, c)
    return None


def is_elliptic(spec: SplittingSpec, w: Sequence[int]) -> bool:
    return elliptic_witness(spec, w) is not None


def _edge_words(gens: Sequence[int], bound: int) -> list[Word]:
    """Cyclically reduced non-powers over ``gens``, one per class up to rotation and inversion."""
    out = []
    sub = len(gens)
    if sub == 0:
        return out
    for n in range(1, bound + 1):
        for w in iter_sphere(n, sub):
            if n > 1 and w[0] == -w[-1]:
                continue
            if is_proper_power(w)[0]:
                continue
            rep = min(canonical_rotation(w), canonical_rotation(inverse(w)), key=letter_order_key)
            if rep != w:
                continue
            out.append(tuple(gens[abs(a) - 1] * (1 if a > 0 else -1) for a in w))
    return out


def enumerate_small_splittings(rank: int, max_edge_word_len: int) -> Iterator[SplittingSpec]:
    """Free splittings, then segments, then loops; each without duplicates."""
    if rank < 2 or max_edge_word_len < 1:
        raise ValueError("need rank >= 2 and a positive edge word bound")
    gens = list(range(1, rank + 1))
    subsets = [
        c for k in range(1, rank) for c in itertools.combinations(gens, k)
    ]
    for A in subsets:
        if 1 in A:
            B = tuple(g for g in gens if g not in A)
            yield SplittingSpec("free", rank, A=A, B=B)
    for B in sorted((c for c in subsets if len(c) >= 2), key=lambda c: (len(c), c)):
        A = tuple(g for g in gens if g not in B)
        for b in _edge_words(B, max_edge_word_len):
            yield SplittingSpec("segment", rank, A=A, B=B, edge_word=b)
    for v in [s * g for g in gens for s in (1, -1)]:
        U = [g for g in gens if g != abs(v)]
        for u in _edge_words(U, max_edge_word_len):
            yield SplittingSpec("loop", rank, edge_word=u, v=v)


@lru_cache(maxsize=64)
def small_splittings(rank: int, max_edge_word_len: int) -> tuple:
    return tuple(enumerate_small_splittings(rank, max_edge_word_len))


@dataclass(frozen=True)
class WitnessSearch:
    """Outcome of a bounded witness search; ``witness`` is None when nothing was found."""

    bound: int
    witness: Optional[EllipticWitness] = None

    @property
    def found(self) -> bool:
        return self.witness is not None

    def describe(self, alphabet: Alphabet) -> str:
        if self.witness is None:
            return f"kind=none bound={self.bound}"
        wt = self.witness
        conj = alphabet.format(wt.conjugator) if wt.conjugator else "1"
        return f"{wt.spec.describe(alphabet)} vertex={wt.vertex} conjugator={conj} bound={self.bound}"


def find_nonfilling_witness(w: Sequence[int], rank: int, max_edge_word_len: int) -> WitnessSearch:
    """First enumerated splitting in which ``w`` is elliptic."""
    w = free_reduce(w)
    for spec in small_splittings(rank, max_edge_word_len):
        wt = elliptic_witness(spec, w)
        if wt is not None:
            return WitnessSearch(max_edge_word_len, wt)
    return WitnessSearch(max_edge_word_len)


def _right_conjugation(w: Word, rank: int) -> EndoByImages:
    return EndoByImages(tuple(conjugate((g,), w) for g in range(1, rank + 1)))


def _partial_conjugation(moved: Sequence[int], c: Word, rank: int) -> EndoByImages:
    return EndoByImages(
        tuple(conjugate((g,), c) if g in moved else (g,) for g in range(1, rank + 1))
    )


def stabilizer_witnesses(spec: SplittingSpec, w: Sequence[int]) -> tuple[EndoByImages, EndoByImages]:
    """Two automorphisms fixing ``w``: right conjugation by ``w`` and a partial conjugation.

    ``w`` must lie in a vertex group as written (conjugate it in first).
    The partial conjugation fixes the whole vertex group containing ``w``
    pointwise, which a power of the conjugation by ``w`` cannot do once the
    vertex group is non-cyclic.
    """
    w = free_reduce(w)
    rank = spec.rank
    graphs = spec.vertex_graphs()
    home = [i for i, g in enumerate(graphs) if contains(g, w)]
    if not home:
        raise ValueError("word is not in a vertex group of this splitting as written")
    sigma = _right_conjugation(w, rank)
    if spec.kind == "free":
        part = spec.A if 0 in home else spec.B
        tau = _partial_conjugation(part, w, rank)
    elif spec.kind == "segment":
        if 0 in home:
            tau = _partial_conjugation(spec.B, spec.edge_word, rank)
        else:
            # w in <B>, a proper free factor since A is nonempty
            tau = _partial_conjugation(spec.B, w, rank)
    else:
        v, u = spec.v, spec.edge_word
        new_v = free_reduce(u + (v,))  # v -> u v
        images = [(g,) for g in range(1, rank + 1)]
        images[abs(v) - 1] = new_v if v > 0 else inverse(new_v)
        tau = EndoByImages(tuple(images))
    return sigma, tau


def fixed_generators(spec: SplittingSpec, w: Sequence[int]) -> list[Word]:
    """Generators of the subgroup the partial conjugation fixes pointwise."""
    w = free_reduce(w)
    graphs = spec.vertex_graphs()
    home = [i for i, g in enumerate(graphs) if contains(g, w)]
    if spec.kind == "free":
        return [(g,) for g in (spec.B if 0 in home else spec.A)] + [w]
    if spec.kind == "segment" and 0 not in home:
        return [(g,) for g in spec.A] + [w]
    return spec.vertex_generators()[home[0]]
