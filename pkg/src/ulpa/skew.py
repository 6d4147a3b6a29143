"""The skew-product ultragraph G x_1 Z on a finite window, the smash product
L_K(G) # Z, and a sampled check that the generator map between them respects
relations and products."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

from .algebra import Algebra, Element, Monomial, normalize, random_element
from .field import QQ, Field
from .ultragraph import Ultragraph, bits, regular_vertices


def level_name(name: str, n: int) -> str:
    return f"{name}@{n}"


@dataclass(frozen=True)
class SkewWindow:
    """Levels -N..N of G x_1 Z.  Edge (e, n) runs from (s(e), n) to r(e) x {n + step}
    where ``step`` is -1 (decreasing indices, the default) or +1."""
    base: Ultragraph
    N: int
    graph: Ultragraph
    vertex_of: dict      # window vertex index -> (base vertex, level)
    edge_of: dict        # window edge index -> (base edge, level)
    step: int = -1

    def vertex(self, v: int, n: int) -> int:
        return self.graph.v(level_name(self.base.vertex_names[v], n))

    def edge(self, e: int, n: int) -> int:
        return self.graph.e(level_name(self.base.edge_names[e], n))

    def levels(self, mask: int) -> dict[int, int]:
        """Split a window vertex set into base vertex sets per level."""
        out: dict[int, int] = {}
        for x in bits(mask):
            v, n = self.vertex_of[x]
            out[n] = out.get(n, 0) | (1 << v)
        return out

    def interior_vertex(self, x: int) -> bool:
        return abs(self.vertex_of[x][1]) < self.N

    def interior_edge(self, f: int) -> bool:
        n = self.edge_of[f][1]
        return abs(n) < self.N and abs(n + self.step) < self.N


def build_skew(U: Ultragraph, N: int, decreasing: bool = True) -> SkewWindow:
    if N < 1:
        raise ValueError("window radius must be at least 1")
    step = -1 if decreasing else 1
    vertices = [level_name(v, n) for v in U.vertex_names for n in range(-N, N + 1)]
    lo, hi = (-N + 1, N) if decreasing else (-N, N - 1)
    edges = []
    for e, name in enumerate(U.edge_names):
        for n in range(lo, hi + 1):
            edges.append((level_name(name, n), level_name(U.vertex_names[U.src[e]], n),
                          [level_name(u, n + step) for u in U.vnames(U.rng[e])]))
    G = Ultragraph.build(vertices, edges)
    vertex_of = {G.v(level_name(U.vertex_names[v], n)): (v, n)
                 for v in range(U.n_vertices) for n in range(-N, N + 1)}
    edge_of = {G.e(level_name(U.edge_names[e], n)): (e, n)
               for e in range(U.n_edges) for n in range(lo, hi + 1)}
    return SkewWindow(U, N, G, vertex_of, edge_of, step)


def is_acyclic(W: SkewWindow | Ultragraph) -> bool:
    """Topological sort of the vertex graph x -> y for y in r(e), s(e) = x."""
    G = W.graph if isinstance(W, SkewWindow) else W
    ts = TopologicalSorter({x: set() for x in range(G.n_vertices)})
    for e in range(G.n_edges):
        for y in bits(G.rng[e]):
            ts.add(y, G.src[e])
    try:
        ts.prepare()
    except CycleError:
        return False
    return True


# -- smash product ----------------------------------------------------------------------

class SmashElement:
    """Finite sum of r p_gamma with r in L_K(G) and gamma in Z."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def of(cls, r: Element, gamma: int) -> "SmashElement":
        return cls(r.alg, {(m, gamma): c for m, c in r.terms.items()})

    def component(self, gamma: int) -> Element:
        return Element(self.alg, {m: c for (m, g), c in self.terms.items() if g == gamma})

    @property
    def support(self) -> set[int]:
        return {g for _, g in self.terms}

    def __add__(self, other: "SmashElement") -> "SmashElement":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, self.alg.field.zero) + c
        return SmashElement(self.alg, t)

    def __neg__(self):
        return SmashElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return smash_mul(self, other)

    def canonical(self) -> "SmashElement":
        out = {}
        for g in sorted(self.support):
            for m, c in normalize(self.component(g)).terms.items():
                out[(m, g)] = c
        return SmashElement(self.alg, out)

    def is_zero(self) -> bool:
        return not self.canonical().terms

    def __eq__(self, other):
        if not isinstance(other, SmashElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        parts = [f"({self.component(g)}) p_{g}" for g in sorted(self.support)]
        return " + ".join(parts) or "0"


def smash_mul(a: SmashElement, b: SmashElement) -> SmashElement:
    """(r p_alpha)(s p_beta) = r s_{alpha - beta} p_beta, extended bilinearly."""
    if a.alg is not b.alg:
        raise ValueError("smash factors must share a base algebra")
    alg = a.alg
    out: dict = {}
    for (m1, al), c1 in a.terms.items():
        for (m2, be), c2 in b.terms.items():
            # a monomial is homogeneous, so the (alpha - beta)-component of s_m2 is all or nothing
            if len(m2[0]) - len(m2[2]) != al - be:
                continue
            prod = Element(alg, {m1: c1}) * Element(alg, {m2: c2})
            for m, c in prod.terms.items():
                out[(m, be)] = out.get((m, be), alg.field.zero) + c
    return SmashElement(alg, out)


# -- the generator map -------------------------------------------------------------------

class Phi:
    """phi: L_K(G x_1 Z) -> L_K(G) # Z on the window, defined on generators by
    p_{A x {n}} -> p_A p_n, s_(e,n) -> s_e p_{n-1}, s*_(e,n) -> s_e^* p_n."""

    def __init__(self, W: SkewWindow, field: Field = QQ):
        if W.step != -1:
            raise ValueError("the generator map is defined for the decreasing-index convention")
        self.W = W
        self.base = Algebra(W.base, field)
        self.window = Algebra(W.graph, field)

    def p(self, mask: int) -> SmashElement:
        out = SmashElement(self.base, {})
        for n, A in self.W.levels(mask).items():
            out = out + SmashElement.of(self.base.p_mask(A), n)
        return out

    def s(self, f: int) -> SmashElement:
        e, n = self.W.edge_of[f]
        return SmashElement.of(self.base.s(self.W.base.edge_names[e]), n - 1)

    def s_star(self, f: int) -> SmashElement:
        e, n = self.W.edge_of[f]
        return SmashElement.of(self.base.s_star(self.W.base.edge_names[e]), n)

    def monomial(self, m: Monomial) -> SmashElement:
        alpha, A, beta = m
        out = None
        for f in alpha:
            out = self.s(f) if out is None else out * self.s(f)
        pa = self.p(A)
        out = pa if out is None else out * pa
        for f in reversed(beta):
            out = out * self.s_star(f)
        return out

    def __call__(self, x: Element) -> SmashElement:
        out = SmashElement(self.base, {})
        for m, c in x.terms.items():
            img = self.monomial(m)
            out = out + SmashElement(self.base, {k: c * v for k, v in img.terms.items()})
        return out


def phi_gen(W: SkewWindow, kind: str, name: str, field: Field = QQ) -> SmashElement:
    """Image of one generator, given by kind ``p``/``s``/``s*`` and a window name
    (for ``p``, a comma-separated vertex list)."""
    ph = Phi(W, field)
    G = W.graph
    if kind == "p":
        return ph.p(G.mask(*name.split(",")))
    if kind == "s":
        return ph.s(G.e(name))
    if kind == "s*":
        return ph.s_star(G.e(name))
    raise ValueError(f"unknown generator kind {kind!r}")


@dataclass
class PhiReport:
    relations_checked: int = 0
    products_checked: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _relation_instances(W: SkewWindow, alg: Algebra):
    """Yield (label, lhs, rhs, interior) for instances of the defining relations."""
    G = W.graph
    V = range(G.n_vertices)
    level_sets: dict[int, int] = {}
    for x in V:
        level_sets[W.vertex_of[x][1]] = level_sets.get(W.vertex_of[x][1], 0) | (1 << x)
    family = sorted({1 << x for x in V} | {G.rng[f] for f in range(G.n_edges)} | set(level_sets.values()))

    def inside(mask):
        return all(W.interior_vertex(x) for x in bits(mask))

    def names(mask):
        return "{" + ",".join(G.vnames(mask)) + "}"

    P = alg.p_mask
    for i, A in enumerate(family):
        for B in family[i:]:
            ok = inside(A | B)
            yield f"p{names(A)} p{names(B)} = p{names(A & B)}", P(A) * P(B), P(A & B), ok
            yield (f"p{names(A | B)} = p{names(A)} + p{names(B)} - p{names(A & B)}",
                   P(A | B), P(A) + P(B) - P(A & B), ok)
    for f in range(G.n_edges):
        ok = W.interior_edge(f)
        e = G.edge_names[f]
        s, ss = alg.s(e), alg.s_star(e)
        yield f"p{names(1 << G.src[f])} s[{e}] = s[{e}]", P(1 << G.src[f]) * s, s, ok
        yield f"s[{e}] p{names(G.rng[f])} = s[{e}]", s * P(G.rng[f]), s, ok
        for g in range(G.n_edges):
            rhs = P(G.rng[f]) if f == g else alg.zero()
            yield (f"s*[{e}] s[{G.edge_names[g]}] = {'p' + names(G.rng[f]) if f == g else '0'}",
                   ss * alg.s(G.edge_names[g]), rhs, ok and W.interior_edge(g))
    reg = regular_vertices(G)
    for x in V:
        # CK is a relation of the full skew graph at every level; the bottom level is a
        # sink only because of the truncation.
        out = G.out_edges[x]
        ok = W.interior_vertex(x) and all(W.interior_edge(f) for f in out)
        if not (reg >> x) & 1:
            if W.vertex_of[x][1] == -W.N:
                yield f"p{names(1 << x)} = sum s s* (truncated level)", None, None, False
            continue
        rhs = alg.zero()
        for f in out:
            rhs = rhs + alg.s(G.edge_names[f]) * alg.s_star(G.edge_names[f])
        yield f"p{names(1 << x)} = sum s s*", P(1 << x), rhs, ok


def _interior_monomial(W: SkewWindow, m: Monomial) -> bool:
    alpha, A, beta = m
    return (all(W.interior_edge(f) for f in alpha + beta)
            and all(W.interior_vertex(x) for x in bits(A)))


def verify_phi(U: Ultragraph, N: int, samples: int = 100, seed: int = 0,
               field: Field = QQ) -> PhiReport:
    """Check that phi respects every interior relation instance and ``samples``
    random interior products phi(xy) = phi(x) phi(y).  Instances touching the
    window boundary are listed in ``skipped``."""
    W = build_skew(U, N)
    ph = Phi(W, field)
    rep = PhiReport()
    for label, lhs, rhs, interior in _relation_instances(W, ph.window):
        if not interior:
            rep.skipped.append(label)
            continue
        rep.relations_checked += 1
        if ph(lhs) != ph(rhs):
            rep.failures.append(("relation", label))
    rng = random.Random(seed)

    def sample():
        while True:
            x = random_element(ph.window, rng, n_terms=2, max_len=2)
            if x.terms and all(_interior_monomial(W, m) for m in x.terms):
                return x

    for _ in range(samples):
        x, y = sample(), sample()
        rep.products_checked += 1
        if ph(x * y) != ph(x) * ph(y):
            rep.failures.append(("product", str(x), str(y)))
    return rep
