"""Finite ultragraphs and the graph-theoretic primitives used throughout.

Vertices and edges are addressed internally by small integers, assigned in
sorted order of their display names, so that every iteration order in the
package is deterministic.  Vertex sets are encoded as integer bitmasks
(bit ``i`` set means vertex ``i`` is a member); the empty set is ``0``.
Paths are tuples of edge indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...] of edge indices


class InvalidUltragraph(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def validate(vertices: Sequence[str], edges: Sequence[tuple[str, str, Sequence[str]]]) -> list[str]:
    """Return the list of violations of the ultragraph axioms (empty if valid)."""
    problems = []
    seen = set()
    for v in vertices:
        if v in seen:
            problems.append(f"duplicate vertex {v!r}")
        seen.add(v)
    eseen = set()
    for eid, src, rng in edges:
        if eid in eseen:
            problems.append(f"duplicate edge {eid!r}")
        eseen.add(eid)
        if src not in seen:
            problems.append(f"edge {eid!r}: source {src!r} is not a declared vertex")
        if len(rng) == 0:
            problems.append(f"edge {eid!r}: empty range")
        for u in rng:
            if u not in seen:
                problems.append(f"edge {eid!r}: range cites undeclared vertex {u!r}")
    return problems


@dataclass(frozen=True, eq=False)
class Ultragraph:
    """A finite ultragraph ``(G0, G1, r, s)``.

    Build with ``Ultragraph.build(vertices, edges)`` where ``edges`` is a list
    of ``(edge_id, source, range_list)`` triples.
    """

    vertex_names: tuple[str, ...]
    edge_names: tuple[str, ...]
    src: tuple[int, ...]
    rng: tuple[int, ...]
    out_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    _vindex: dict = field(repr=False)
    _eindex: dict = field(repr=False)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, Iterable[str]]]) -> "Ultragraph":
        vertices = list(vertices)
        edges = [(e, s, list(r)) for e, s, r in edges]
        problems = validate(vertices, edges)
        if problems:
            raise InvalidUltragraph(problems)
        vnames = tuple(sorted(vertices))
        vindex = {v: i for i, v in enumerate(vnames)}
        edges.sort(key=lambda t: t[0])
        enames = tuple(e for e, _, _ in edges)
        eindex = {e: i for i, e in enumerate(enames)}
        src = tuple(vindex[s] for _, s, _ in edges)
        rng = tuple(sum(1 << vindex[u] for u in set(r)) for _, _, r in edges)
        out = tuple(tuple(i for i in range(len(enames)) if src[i] == v) for v in range(len(vnames)))
        return cls(vnames, enames, src, rng, out, vindex, eindex)

    # -- sizes and naming -------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def n_edges(self) -> int:
        return len(self.edge_names)

    @property
    def all_vertices(self) -> int:
        return (1 << self.n_vertices) - 1

    def v(self, name: str) -> int:
        return self._vindex[name]

    def e(self, name: str) -> int:
        return self._eindex[name]

    def has_edge(self, name: str) -> bool:
        return name in self._eindex

    def has_vertex(self, name: str) -> bool:
        return name in self._vindex

    def mask(self, *names: str) -> int:
        """Bitmask of the named vertices."""
        m = 0
        for n in names:
            m |= 1 << self._vindex[n]
        return m

    def word(self, *names: str) -> Word:
        return tuple(self._eindex[n] for n in names)

    def vnames(self, mask: int) -> list[str]:
        return [self.vertex_names[i] for i in bits(mask)]

    def wnames(self, word: Sequence[int]) -> list[str]:
        return [self.edge_names[i] for i in word]

    # -- path helpers -----------------------------------------------------
    def is_path(self, word: Sequence[int]) -> bool:
        for a, b in zip(word, word[1:]):
            if not (self.rng[a] >> self.src[b]) & 1:
                return False
        return True

    def eff_range(self, word: Sequence[int]) -> int:
        """r(last edge), or every vertex for the empty word."""
        return self.rng[word[-1]] if word else self.all_vertices

    def has_sinks(self) -> bool:
        return any(not out for out in self.out_edges)

    def to_records(self) -> tuple[list[str], list[tuple[str, str, list[str]]]]:
        edges = [(self.edge_names[i], self.vertex_names[self.src[i]], self.vnames(self.rng[i]))
                 for i in range(self.n_edges)]
        return list(self.vertex_names), edges


# -- vertex classification --------------------------------------------------

def sinks(U: Ultragraph) -> int:
    return sum(1 << v for v in range(U.n_vertices) if not U.out_edges[v])


def regular_vertices(U: Ultragraph) -> int:
    # finite graphs have no infinite emitters
    return sum(1 << v for v in range(U.n_vertices) if U.out_edges[v])


def epsilon(U: Ultragraph, A: int) -> list[int]:
    """Edges whose source lies in ``A``."""
    return [e for e in range(U.n_edges) if (A >> U.src[e]) & 1]


def generate_G0(U: Ultragraph) -> set[int]:
    """Closure of singletons and edge ranges under union and intersection.

    The empty set is excluded from the returned family.
    """
    family = {1 << v for v in range(U.n_vertices)} | set(U.rng)
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in family:
                for c in (a | b, a & b):
                    if c and c not in family:
                        new.add(c)
        family |= new
        frontier = new
    return family


def reachable_from(U: Ultragraph, w: int) -> int:
    """Mask of all vertices v with w >= v (w itself included)."""
    seen = 1 << w
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for e in U.out_edges[u]:
            new = U.rng[e] & ~seen
            for x in bits(new):
                queue.append(x)
            seen |= new
    return seen


def reaches(U: Ultragraph, w: int, v: int) -> bool:
    """True iff some path starts at ``w`` and has ``v`` in its range."""
    return bool((reachable_from(U, w) >> v) & 1)


# -- cycles -------------------------------------------------------------------

class NotAPath(ValueError):
    pass


def is_cycle(U: Ultragraph, word: Sequence[int]) -> bool:
    if not U.is_path(word):
        raise NotAPath(f"{U.wnames(word)} is not a path")
    return len(word) >= 1 and bool((U.rng[word[-1]] >> U.src[word[0]]) & 1)


@dataclass(frozen=True)
class Exit:
    index: int          # 1-based position i in the cycle
    kind: str           # "edge" or "sink"
    item: int           # edge index or vertex index


def cycle_exits(U: Ultragraph, word: Sequence[int]) -> list[Exit]:
    """Exits of a cycle, both edge exits and sink exits, with the index i."""
    if not U.is_path(word):
        raise NotAPath(f"{U.wnames(word)} is not a path")
    n = len(word)
    exits = []
    for i, ei in enumerate(word):
        nxt = word[(i + 1) % n]
        for f in range(U.n_edges):
            if (U.rng[ei] >> U.src[f]) & 1 and f != nxt:
                exits.append(Exit(i + 1, "edge", f))
        for w in bits(U.rng[ei]):
            if not U.out_edges[w]:
                exits.append(Exit(i + 1, "sink", w))
    return exits


@dataclass(frozen=True)
class FirstReturnVerdict:
    kind: str                       # "none", "one" or "many"
    witnesses: tuple[Word, ...] = ()

    @property
    def count(self) -> str:
        return {"none": "0", "one": "1", "many": ">=2"}[self.kind]


def _first_return_automaton(U: Ultragraph, v: int):
    """States are edges; returns (initial, successor map, accepting set) restricted
    to useful states (reachable from an initial edge and co-reachable to acceptance)."""
    initial = [e for e in U.out_edges[v]]
    succ = {e: [f for f in range(U.n_edges)
                if U.src[f] != v and (U.rng[e] >> U.src[f]) & 1]
            for e in range(U.n_edges)}
    accepting = {e for e in range(U.n_edges) if (U.rng[e] >> v) & 1}
    reach = set(initial)
    stack = list(initial)
    while stack:
        e = stack.pop()
        for f in succ[e]:
            if f not in reach:
                reach.add(f)
                stack.append(f)
    pred = {e: [] for e in range(U.n_edges)}
    for e, fs in succ.items():
        for f in fs:
            pred[f].append(e)
    coreach = set(accepting)
    stack = list(accepting)
    while stack:
        f = stack.pop()
        for e in pred[f]:
            if e not in coreach:
                coreach.add(e)
                stack.append(e)
    useful = reach & coreach
    succ_u = {e: [f for f in succ[e] if f in useful] for e in useful}
    return [e for e in initial if e in useful], succ_u, accepting & useful


def _has_cycle(nodes, succ) -> bool:
    color = dict.fromkeys(nodes, 0)
    for root in sorted(nodes):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if color[nxt] == 1:
                    return True
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(succ[nxt])))
                    break
            else:
                color[node] = 2
                stack.pop()
    return False


def first_return(U: Ultragraph, v: int) -> FirstReturnVerdict:
    """Classify the first-return paths based at ``v`` as none / exactly one / at least two."""
    initial, succ, accepting = _first_return_automaton(U, v)
    if not initial:
        return FirstReturnVerdict("none")
    # breadth-first by length, edges in index order: the two shortest witnesses
    found = []
    queue = deque((e,) for e in initial)
    while queue and len(found) < 2:
        w = queue.popleft()
        if w[-1] in accepting:
            found.append(w)
        for f in succ[w[-1]]:
            queue.append(w + (f,))
    if len(found) >= 2:
        return FirstReturnVerdict("many", tuple(found[:2]))
    if _has_cycle(list(succ), succ):
        # an internal cycle on an accepting run makes the language infinite;
        # unreachable in practice since the BFS above would have found two words
        return FirstReturnVerdict("many", tuple(found))
    return FirstReturnVerdict("one", tuple(found))


def edge_cycle(U: Ultragraph, allowed: Iterable[int]) -> Word | None:
    """A cycle in the edge graph restricted to ``allowed`` edges, or None.

    Edge ``e`` may be followed by edge ``f`` when ``s(f)`` lies in ``r(e)``.
    """
    allowed = sorted(set(allowed))
    aset = set(allowed)
    succ = {e: [f for f in allowed if (U.rng[e] >> U.src[f]) & 1] for e in allowed}
    color = dict.fromkeys(allowed, 0)
    for root in allowed:
        if color[root]:
            continue
        path = [root]
        stack = [iter(succ[root])]
        color[root] = 1
        while stack:
            for nxt in stack[-1]:
                if color[nxt] == 1:
                    return tuple(path[path.index(nxt):])
                if color[nxt] == 0 and nxt in aset:
                    color[nxt] = 1
                    path.append(nxt)
                    stack.append(iter(succ[nxt]))
                    break
            else:
                color[path.pop()] = 2
                stack.pop()
    return None
