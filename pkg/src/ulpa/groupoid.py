"""The Steinberg-algebra model of L_K(G) on the ultragraph groupoid.

A cylinder ``Cylinder(alpha, beta, A)`` is the compact open bisection
A((alpha, A), (beta, A)) = {(alpha.mu, |alpha|-|beta|, beta.mu) : s(mu) in A}.
Only finite ultragraphs without sinks are supported, where the unit space is
the set of infinite paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import Element
from .field import QQ, Field
from .paths import InfinitePath, Ultrapath, shifted_tail_equal
from .ultragraph import Ultragraph, bits, epsilon


class SinkError(ValueError):
    """The groupoid model needs an ultragraph without sinks."""


def require_sink_free(U: Ultragraph) -> None:
    if U.has_sinks():
        names = [U.vertex_names[v] for v in range(U.n_vertices) if not U.out_edges[v]]
        raise SinkError("this construction requires an ultragraph without sinks; "
                        f"sinks: {', '.join(names)}")


@dataclass(frozen=True, order=True)
class Cylinder:
    alpha: tuple
    beta: tuple
    A: int

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)

    @property
    def x(self) -> Ultrapath:
        return Ultrapath(self.alpha, self.A)

    @property
    def y(self) -> Ultrapath:
        return Ultrapath(self.beta, self.A)

    @property
    def depth(self) -> int:
        return min(len(self.alpha), len(self.beta))

    def check(self, U: Ultragraph) -> None:
        if not self.A:
            raise ValueError("cylinder range must be nonempty")
        self.x.check(U)
        self.y.check(U)


def cylinder(x: Ultrapath, y: Ultrapath) -> Cylinder:
    if x.rng != y.rng:
        raise ValueError("A(x, y) needs r(x) = r(y)")
    return Cylinder(tuple(x.word), tuple(y.word), x.rng)


def one_step(U: Ultragraph, c: Cylinder) -> list[Cylinder]:
    """A(x, y) as the disjoint union of its one-edge extensions x.e, y.e."""
    return [Cylinder(c.alpha + (e,), c.beta + (e,), U.rng[e]) for e in epsilon(U, c.A)]


def cyl_make(U: Ultragraph, x: Ultrapath, y: Ultrapath, K: Iterable[int] = (), Q: Iterable[int] = ()) -> list[Cylinder]:
    """A(x, y, K, Q) as a finite list of pairwise disjoint plain cylinders."""
    require_sink_free(U)
    c = cylinder(x, y)
    K = set(K)
    bad = K - set(epsilon(U, c.A))
    if bad:
        raise ValueError(f"edges {U.wnames(sorted(bad))} are not emitted by the range set")
    Qmask = 0
    for C in Q:
        Qmask |= C
    if not K and not Qmask:
        return [c]
    keep = c.A & ~Qmask
    out = []
    for v in bits(keep):
        cut = [e for e in U.out_edges[v] if e in K]
        if not cut:
            out.append(Cylinder(c.alpha, c.beta, 1 << v))
        else:
            out.extend(Cylinder(c.alpha + (e,), c.beta + (e,), U.rng[e])
                       for e in U.out_edges[v] if e not in K)
    return out


def cyl_inverse(c: Cylinder) -> Cylinder:
    return Cylinder(c.beta, c.alpha, c.A)


def cyl_compose(U: Ultragraph, c1: Cylinder, c2: Cylinder) -> Cylinder | None:
    """The product bisection c1 c2 (arrows g h with s(g) = r(h)), or None if empty.

    Arrows of c1 have source beta.mu with s(mu) in A; arrows of c2 have range
    gamma.nu with s(nu) in B.  They compose when beta.mu = gamma.nu.
    """
    beta, gamma = c1.beta, c2.alpha
    lb, lg = len(beta), len(gamma)
    if lb == lg:
        if beta != gamma or not (c1.A & c2.A):
            return None
        return Cylinder(c1.alpha, c2.beta, c1.A & c2.A)
    if lg > lb:
        # mu = w.nu with w the extra part of gamma; s(w) must lie in A
        if gamma[:lb] != beta:
            return None
        w = gamma[lb:]
        if not (c1.A >> U.src[w[0]]) & 1:
            return None
        return Cylinder(c1.alpha + w, c2.beta, c2.A)
    # nu = w.mu; s(w) must lie in B
    if beta[:lg] != gamma:
        return None
    w = beta[lg:]
    if not (c2.A >> U.src[w[0]]) & 1:
        return None
    return Cylinder(c1.alpha, c2.beta + w, c1.A)


class SteinbergElement:
    """Finite combination of cylinder indicator functions."""

    __slots__ = ("U", "field", "terms")

    def __init__(self, U: Ultragraph, terms: dict, field: Field = QQ):
        self.U = U
        self.field = field
        self.terms = {c: v for c, v in terms.items() if v}

    def __add__(self, other: "SteinbergElement"):
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, self.field.zero) + v
        return SteinbergElement(self.U, out, self.field)

    def __neg__(self):
        return SteinbergElement(self.U, {c: -v for c, v in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SteinbergElement"):
        return st_convolve(self, other)

    def canonical(self) -> "SteinbergElement":
        return canonicalize(self)

    def is_zero(self) -> bool:
        return not canonicalize(self).terms

    def __eq__(self, other):
        if not isinstance(other, SteinbergElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        parts = [f"{v}*A({self.U.wnames(c.alpha)},{self.U.wnames(c.beta)},{self.U.vnames(c.A)})"
                 for c, v in sorted(self.terms.items())]
        return "SteinbergElement(" + " + ".join(parts) + ")"


def canonicalize(F: SteinbergElement) -> SteinbergElement:
    """Disjoint refinement: singleton ranges, and within each degree every
    cylinder refined through one-step extensions to the largest depth present."""
    U = F.U
    single: dict = {}
    for c, v in F.terms.items():
        for u in bits(c.A):
            k = Cylinder(c.alpha, c.beta, 1 << u)
            single[k] = single.get(k, F.field.zero) + v
    target: dict = {}
    for c in single:
        target[c.degree] = max(target.get(c.degree, 0), c.depth)
    out: dict = {}
    work = list(single.items())
    while work:
        c, v = work.pop()
        if c.depth < target[c.degree]:
            for child in one_step(U, c):
                for u in bits(child.A):
                    work.append((Cylinder(child.alpha, child.beta, 1 << u), v))
        else:
            out[c] = out.get(c, F.field.zero) + v
    return SteinbergElement(U, out, F.field)


def st_convolve(F: SteinbergElement, G: SteinbergElement) -> SteinbergElement:
    out: dict = {}
    for c1, v1 in F.terms.items():
        for c2, v2 in G.terms.items():
            c = cyl_compose(F.U, c1, c2)
            if c is not None:
                out[c] = out.get(c, F.field.zero) + v1 * v2
    return canonicalize(SteinbergElement(F.U, out, F.field))


def indicator(U: Ultragraph, c: Cylinder, field: Field = QQ) -> SteinbergElement:
    return SteinbergElement(U, {c: field.one}, field)


# -- points of the groupoid --------------------------------------------------------------

class InvalidPoint(ValueError):
    pass


@dataclass(frozen=True)
class GroupoidPoint:
    """The arrow (q, k, p): range q, source p, degree k."""

    q: InfinitePath
    k: int
    p: InfinitePath

    def check(self, U: Ultragraph | None = None) -> None:
        if U is not None:
            self.q.check(U)
            self.p.check(U)
        if not shifted_tail_equal(self.q, self.p, self.k):
            raise InvalidPoint("no m with tau_{>m}(q) = tau_{>m-k}(p)")

    @property
    def is_valid(self) -> bool:
        return shifted_tail_equal(self.q, self.p, self.k)

    def inverse(self) -> "GroupoidPoint":
        return GroupoidPoint(self.p, -self.k, self.q)


def compose_points(g: GroupoidPoint, h: GroupoidPoint) -> GroupoidPoint:
    if g.p != h.q:
        raise InvalidPoint("arrows are not composable")
    return GroupoidPoint(g.q, g.k + h.k, h.p)


def membership(U: Ultragraph, c: Cylinder, pt: GroupoidPoint) -> bool:
    la, lb = len(c.alpha), len(c.beta)
    if pt.k != la - lb:
        return False
    if pt.q.take(la) != c.alpha or pt.p.take(lb) != c.beta:
        return False
    tail = pt.q.drop(la)
    if tail != pt.p.drop(lb):
        return False
    return bool((c.A >> tail.source(U)) & 1)


def st_eval(F: SteinbergElement, pt: GroupoidPoint):
    pt.check()
    total = F.field.zero
    for c, v in F.terms.items():
        if membership(F.U, c, pt):
            total = total + v
    return total


# -- the generator map ------------------------------------------------------------------------

def pi_G(a: Element) -> SteinbergElement:
    """s_alpha p_A s_beta^* -> 1_{A((alpha, A'), (beta, A'))}, A' = r(alpha) & r(beta) & A."""
    U = a.alg.U
    require_sink_free(U)
    out: dict = {}
    for (al, A, be), v in a.terms.items():
        Ap = A & U.eff_range(al) & U.eff_range(be)
        if not Ap:
            continue
        c = Cylinder(tuple(al), tuple(be), Ap)
        out[c] = out.get(c, a.alg.field.zero) + v
    return SteinbergElement(U, out, a.alg.field)


# -- isotropy and unperforation --------------------------------------------------------------

@dataclass(frozen=True)
class IsotropyResult:
    kind: str                      # "trivial" or "cyclic"
    generator_degree: int | None = None


def isotropy(mu: InfinitePath) -> IsotropyResult:
    """Isotropy at (mu, 0, mu): infinite cyclic generated in degree |sigma| for
    mu = p sigma sigma ..., trivial for a promised-aperiodic mu."""
    if mu.is_periodic:
        return IsotropyResult("cyclic", len(mu.cycle))
    return IsotropyResult("trivial")


def factor_positive(U: Ultragraph, g: GroupoidPoint) -> list[GroupoidPoint]:
    """Write a degree-n arrow (n > 0) as a product of n degree-1 arrows."""
    require_sink_free(U)
    if g.k <= 0:
        raise ValueError("factor_positive needs a positive degree")
    g.check(U)
    n = g.k
    out = [GroupoidPoint(g.q.drop(i - 1), 1, g.q.drop(i)) for i in range(1, n)]
    out.append(GroupoidPoint(g.q.drop(n - 1), 1, g.p))
    return out


def recompose(points: list[GroupoidPoint]) -> GroupoidPoint:
    acc = points[0]
    for h in points[1:]:
        acc = compose_points(acc, h)
    return acc
