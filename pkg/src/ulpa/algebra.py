"""The ultragraph Leavitt path algebra L_K(G) on monomials s_alpha p_A s_beta^*.

Elements are finitely supported maps from monomials ``(alpha, A, beta)`` to
field coefficients.  Multiplication follows the defining relations directly;
equality is decided through a canonical normal form (see ``normalize``).
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterable, NamedTuple

from . import kernels
from .field import QQ, Field
from .linsolve import Inconsistent, solve
from .ultragraph import Ultragraph, bits


class Monomial(NamedTuple):
    alpha: tuple
    mid: int
    beta: tuple

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)


class NotFoundWithinDepth(LookupError):
    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"no inner inverse found with word depth <= {depth}")


class Algebra:
    """L_K(U) for a finite ultragraph ``U`` over ``field`` (rationals by default)."""

    def __init__(self, U: Ultragraph, field: Field = QQ):
        self.U = U
        self.field = field
        self._paths: dict[int, list[tuple]] = {0: [()]}

    def __repr__(self):
        return f"Algebra({len(self.U.vertex_names)} vertices, {len(self.U.edge_names)} edges, {self.field})"

    # -- construction -------------------------------------------------------------
    def element(self, terms: dict) -> "Element":
        return Element(self, {Monomial(*m): self.field(c) for m, c in terms.items() if c})

    def zero(self) -> "Element":
        return Element(self, {})

    def mono(self, alpha, mid: int, beta, coeff=1) -> "Element":
        alpha, beta = tuple(alpha), tuple(beta)
        U = self.U
        if not U.is_path(alpha) or not U.is_path(beta):
            raise ValueError("alpha and beta must be paths")
        if not mid:
            return self.zero()
        if mid & ~(U.eff_range(alpha) & U.eff_range(beta)):
            raise ValueError("middle set must lie in r(alpha) and r(beta)")
        c = self.field(coeff)
        return Element(self, {Monomial(alpha, mid, beta): c} if c else {})

    def p(self, *names: str) -> "Element":
        return self.p_mask(self.U.mask(*names))

    def p_mask(self, A: int) -> "Element":
        return self.mono((), A, ()) if A else self.zero()

    def s(self, name: str) -> "Element":
        e = self.U.e(name)
        return self.mono((e,), self.U.rng[e], ())

    def s_star(self, name: str) -> "Element":
        e = self.U.e(name)
        return self.mono((), self.U.rng[e], (e,))

    def s_word(self, word) -> "Element":
        word = tuple(word)
        if not word:
            return self.unit()
        return self.mono(word, self.U.rng[word[-1]], ())

    def s_word_star(self, word) -> "Element":
        word = tuple(word)
        if not word:
            return self.unit()
        return self.mono((), self.U.rng[word[-1]], word)

    def unit(self) -> "Element":
        """Sum of p_v over all vertices; the identity since G0 is a generalized vertex."""
        return Element(self, {Monomial((), 1 << v, ()): self.field.one for v in range(self.U.n_vertices)})

    def parse(self, text: str) -> "Element":
        from .expr import parse_element
        return parse_element(self, text)

    # -- paths used by the inner-inverse search ------------------------------------
    def paths(self, length: int) -> list[tuple]:
        if length not in self._paths:
            prev = self.paths(length - 1)
            U = self.U
            if length == 1:
                out = [(e,) for e in range(U.n_edges)]
            else:
                out = [w + (f,) for w in prev for f in range(U.n_edges) if (U.rng[w[-1]] >> U.src[f]) & 1]
            self._paths[length] = out
        return self._paths[length]

    def monomials(self, degree: int, depth: int) -> list[Monomial]:
        """All singleton-middled monomials of ``degree`` with min(|alpha|,|beta|) == depth."""
        la, lb = (depth + degree, depth) if degree >= 0 else (depth, depth - degree)
        U = self.U
        out = []
        for a in self.paths(la):
            ra = U.eff_range(a)
            for b in self.paths(lb):
                for v in bits(ra & U.eff_range(b)):
                    out.append(Monomial(a, 1 << v, b))
        return out


class Element:
    """An element of an ``Algebra``; immutable by convention."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _check(self, other: "Element"):
        if other.alg.U is not self.alg.U:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, self.alg.field.zero) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Element(self.alg, out)

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "Element":
        k = self.alg.field(k)
        if not k:
            return self.alg.zero()
        return Element(self.alg, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.alg, kernels.mul_terms(self.terms, other.terms, self.alg.U.src))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return eq(self, other)

    __hash__ = None

    def __bool__(self):
        return not is_zero(self)

    def __repr__(self):
        from .expr import format_element
        return f"<{format_element(self)}>"

    def __str__(self):
        from .expr import format_element
        return format_element(self)

    def star(self) -> "Element":
        return involution(self)

    def normalize(self) -> "Element":
        return normalize(self)

    def is_zero(self) -> bool:
        return is_zero(self)

    @property
    def degrees(self) -> set[int]:
        return {len(a) - len(b) for a, _, b in self.terms}

    def is_homogeneous(self) -> bool:
        return len(normalize(self).degrees) <= 1


# -- operations ---------------------------------------------------------------------

def mono_mul(alg: Algebra, m1: Monomial, m2: Monomial) -> Element:
    r = kernels.mono_mul(tuple(m1[0]), m1[1], tuple(m1[2]), tuple(m2[0]), m2[1], tuple(m2[2]), alg.U.src)
    return Element(alg, {} if r is None else {Monomial(*r): alg.field.one})


def mul(a: Element, b: Element) -> Element:
    return a * b


def add(a: Element, b: Element) -> Element:
    return a + b


def sub(a: Element, b: Element) -> Element:
    return a - b


def scale(a: Element, k) -> Element:
    return a.scale(k)


def involution(a: Element) -> Element:
    """(alpha, A, beta) -> (beta, A, alpha); coefficients unchanged."""
    return Element(a.alg, {Monomial(b, A, al): c for (al, A, b), c in a.terms.items()})


def normalize(a: Element) -> Element:
    """Canonical normal form.

    Middles are split into singletons, every non-sink monomial is expanded by
    p_v = sum s_e s_e^* until all monomials of a degree share the maximal depth
    min(|alpha|, |beta|), like terms are collected, and finally complete
    expansions are contracted back level by level.  Zero has empty support.
    """
    U = a.alg.U
    t = kernels.normalize_terms(a.terms, U.src, U.rng, U.out_edges)
    return Element(a.alg, {Monomial(*m): c for m, c in t.items()})


def expand_to_depth(a: Element, depth: dict) -> dict:
    """Singleton-middled expansion of ``a`` with degree-d monomials at depth ``depth[d]``
    (sink-middled monomials stay where they are).  Returns raw terms."""
    U = a.alg.U
    t = kernels.split_singletons(a.terms)
    t = {m: c for m, c in t.items() if c}
    target = kernels.max_depths(t)
    for d, k in depth.items():
        if d in target and target[d] > k:
            raise ValueError("cannot expand to a depth below the current one")
        target[d] = k
    return kernels.expand_to(t, target, U.rng, U.out_edges)


def is_zero(a: Element) -> bool:
    return not normalize(a).terms


def eq(a: Element, b: Element) -> bool:
    return is_zero(a - b)


def degree_components(a: Element) -> dict[int, Element]:
    comps: dict[int, dict] = {}
    for m, c in normalize(a).terms.items():
        comps.setdefault(len(m[0]) - len(m[2]), {})[m] = c
    return {d: Element(a.alg, t) for d, t in sorted(comps.items())}


def graded_component(a: Element, n: int) -> Element:
    """Projection onto degree ``n`` (the relations are homogeneous, so no normal form is needed)."""
    return Element(a.alg, {m: c for m, c in a.terms.items() if len(m[0]) - len(m[2]) == n})


def psi(a: Element, b: Element) -> Element:
    """The pairing A_{-1} x A_1 -> A_0 given by multiplication."""
    if any(d != -1 for d in a.degrees) or any(d != 1 for d in b.degrees):
        raise ValueError("psi takes a degree -1 and a degree 1 element")
    return a * b


def unit(alg: Algebra) -> Element:
    return alg.unit()


def inner_inverse(x: Element, depth_max: int) -> Element:
    """Homogeneous y of degree -deg(x) with x y x = x.

    Searches word depth D = 0, 1, ..., depth_max, solving the exact linear
    system in the coefficients of all degree -deg(x) monomials of depth <= D.
    Raises ``NotFoundWithinDepth`` if none is found; that says nothing about
    existence at larger depth.
    """
    alg = x.alg
    xn = normalize(x)
    if not xn.terms:
        raise ValueError("x must be nonzero")
    degs = xn.degrees
    if len(degs) != 1:
        raise ValueError("x must be homogeneous")
    n = degs.pop()
    unknowns: list[Monomial] = []
    for D in range(depth_max + 1):
        unknowns.extend(alg.monomials(-n, D))
        images = [(xn * Element(alg, {m: alg.field.one}) * xn).terms for m in unknowns]
        depth = max([kernels.max_depths(kernels.split_singletons(t)).get(n, 0) for t in images]
                    + [kernels.max_depths(kernels.split_singletons(xn.terms)).get(n, 0)])
        cols = [expand_to_depth(Element(alg, t), {n: depth}) if t else {} for t in images]
        target = expand_to_depth(xn, {n: depth})
        keys = sorted(set(target).union(*cols), key=_mono_key)
        index = {k: i for i, k in enumerate(keys)}
        rows: list[dict] = [dict() for _ in keys]
        for j, col in enumerate(cols):
            for k, c in col.items():
                rows[index[k]][j] = c
        rhs = [target.get(k, alg.field.zero) for k in keys]
        try:
            sol = solve(rows, rhs, alg.field.zero)
        except Inconsistent:
            continue
        y = Element(alg, {unknowns[j]: c for j, c in sol.items()})
        if eq(x * y * x, x):
            return y
        raise AssertionError("linear solution failed re-verification")  # pragma: no cover
    raise NotFoundWithinDepth(depth_max)


def _mono_key(m):
    a, A, b = m
    return (len(a) - len(b), len(a), len(b), a, b, A)


def random_element(alg: Algebra, rng, n_terms: int = 3, max_len: int = 3,
                   degree: int | None = None, coeffs: Iterable = (-2, -1, 1, 2, 3)) -> Element:
    """A random element with up to ``n_terms`` monomials of word length <= ``max_len``."""
    coeffs = list(coeffs)
    U = alg.U
    out = alg.zero()
    tries = 0
    while len(out.terms) < n_terms and tries < 50 * n_terms:
        tries += 1
        la = rng.randint(0, max_len)
        lb = rng.randint(0, max_len) if degree is None else la - degree
        if lb < 0 or lb > max_len:
            continue
        pa, pb = alg.paths(la), alg.paths(lb)
        if not pa or not pb:
            continue
        a, b = rng.choice(pa), rng.choice(pb)
        allowed = U.eff_range(a) & U.eff_range(b)
        if not allowed:
            continue
        mid = 0
        while not mid:
            mid = rng.randint(1, (1 << U.n_vertices) - 1) & allowed
            if not mid and rng.random() < 0.3:
                mid = 1 << rng.choice(bits(allowed))
        out = out + alg.mono(a, mid, b, rng.choice(coeffs))
    return out
