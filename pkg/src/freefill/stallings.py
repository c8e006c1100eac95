"""Stallings subgroup graphs: folding, membership, conjugacy into a subgroup."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .words import Word, cyclic_reduce, free_reduce, inverse


@dataclass(frozen=True)
class StallingsGraph:
    """Folded core graph of a finitely generated subgroup, base vertex 0.

    ``adjacency[v]`` maps a signed letter to the endpoint of the edge read
    from ``v``; every positive edge ``u --g--> v`` also appears as
    ``v --(-g)--> u``. Vertices are numbered breadth-first from the base with
    letters tried in the order x1, X1, x2, X2, ..., so two graphs of the same
    subgroup compare equal.
    """

    rank: int
    adjacency: tuple
    paths: tuple = field(compare=False)  # BFS-tree label from base to each vertex

    @property
    def n_vertices(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted(
            (u, a, v) for u, nb in enumerate(self.adjacency) for a, v in nb.items() if a > 0
        )

    @property
    def n_edges(self) -> int:
        return len(self.edges())

    @property
    def subgroup_rank(self) -> int:
        return self.n_edges - self.n_vertices + 1

    def is_rose(self) -> bool:
        """True iff the subgroup is the whole free group."""
        return self.n_vertices == 1 and len(self.adjacency[0]) == 2 * self.rank

    def read(self, start: int, w: Sequence[int]) -> Optional[int]:
        v = start
        adj = self.adjacency
        for a in w:
            v = adj[v].get(a)
            if v is None:
                return None
        return v


class _Folder:
    def __init__(self):
        self.parent: list[int] = []
        self.out: list[dict] = []

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def add_edge(self, u: int, a: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        t = self.out[u].get(a)
        if t is not None:
            self.merge(t, v)
            return
        s = self.out[v].get(-a)
        if s is not None:
            self.merge(s, u)
            return
        self.out[u][a] = v
        self.out[v][-a] = u

    def merge(self, x: int, y: int) -> None:
        queue = [(x, y)]
        while queue:
            x, y = queue.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            moved, self.out[y] = self.out[y], {}
            for a, t in moved.items():
                cur = self.out[x].get(a)
                if cur is None:
                    self.out[x][a] = t
                elif self.find(cur) != self.find(t):
                    queue.append((cur, t))


def _finish(rank: int, folder: _Folder) -> StallingsGraph:
    roots = {folder.find(v) for v in range(len(folder.parent))}
    adj = {r: {a: folder.find(t) for a, t in folder.out[r].items()} for r in roots}
    base = folder.find(0)
    # trim hanging trees
    degree = {r: len(nb) for r, nb in adj.items()}
    stack = [r for r in adj if r != base and degree[r] <= 1]
    while stack:
        r = stack.pop()
        if r not in adj:
            continue
        for a, t in adj.pop(r).items():
            if t in adj and t != r:
                del adj[t][-a]
                degree[t] -= 1
                if t != base and degree[t] <= 1:
                    stack.append(t)
    order = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    index = {base: 0}
    paths: list[Word] = [()]
    queue = deque([base])
    while queue:
        r = queue.popleft()
        for a in order:
            t = adj[r].get(a)
            if t is not None and t not in index:
                index[t] = len(paths)
                paths.append(paths[index[r]] + (a,))
                queue.append(t)
    adjacency = [None] * len(index)
    for r, i in index.items():
        adjacency[i] = {a: index[t] for a, t in adj[r].items()}
    return StallingsGraph(rank, tuple(adjacency), tuple(paths))


def stallings_graph(generators: Sequence[Sequence[int]], rank: int) -> StallingsGraph:
    """Fold the wedge of loops spelling ``generators`` and trim to the core."""
    folder = _Folder()
    base = folder.new_vertex()
    for g in generators:
        g = free_reduce(g)
        for a in g:
            if a == 0 or abs(a) > rank:
                raise ValueError(f"letter {a} outside rank {rank}")
        if not g:
            continue
        prev = base
        for i, a in enumerate(g):
            nxt = base if i == len(g) - 1 else folder.new_vertex()
            folder.add_edge(prev, a, nxt)
            prev = nxt
    return _finish(rank, folder)


def contains(g: StallingsGraph, w: Sequence[int]) -> bool:
    return g.read(0, free_reduce(w)) == 0


def conjugator_into(g: StallingsGraph, w: Sequence[int]) -> Optional[Word]:
    """A word ``c`` with ``c^-1 w c`` in the subgroup, or None if no conjugate of ``w`` is."""
    core, c = cyclic_reduce(w)
    if not core:
        return ()
    for v in range(g.n_vertices):
        if g.read(v, core) == v:
            # path(v) core path(v)^-1 is in H and core = c w c^-1
            return free_reduce(inverse(c) + inverse(g.paths[v]))
    return None


def conjugate_into(g: StallingsGraph, w: Sequence[int]) -> bool:
    return conjugator_into(g, w) is not None


def is_automorphism(images: Sequence[Sequence[int]], rank: int) -> bool:
    """Images of a basis define an automorphism iff they generate (free groups are Hopfian)."""
    return len(images) == rank and stallings_graph(images, rank).is_rose()
