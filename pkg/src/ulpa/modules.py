"""Chen-type simple modules over sink-free ultragraphs.

``V_[p]`` has basis the infinite paths tail equivalent to ``p``; a basis vector
is stored as a canonical ``ShiftedTail`` over ``p``.  The twisted module
``V^f_[c^oo]`` is built from the same paths together with a residue class in
K[t, t^-1]/(f): each path ``u . tau_{>m}(c^oo)`` carries the arrow degree
``|u| - m`` back to ``c^oo``, and when re-canonicalizing a path changes that
degree by ``d |c|`` the difference is absorbed into the residue as ``t^d``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .algebra import Algebra, Element, random_element
from .field import QQ, Field
from .groupoid import require_sink_free
from .paths import InfinitePath, ShiftedTail, canonicalize
from .ultragraph import Ultragraph, bits, generate_G0, regular_vertices


class UnsupportedModule(ValueError):
    pass


def vertex_module(U: Ultragraph, x) -> None:
    """Modules V_{r(x)} are indexed by minimal infinite emitters, which a
    finite ultragraph does not have; such requests are always rejected."""
    raise UnsupportedModule("V_{r(x)} needs an infinite emitter x; finite ultragraphs have none")


# -- polynomials ----------------------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class IrreduciblePoly:
    """A monic polynomial f in K[t] with f(0) != 0, standing for its class up to
    units c t^k of K[t, t^-1].  ``status`` is "verified" (degree <= 3, no roots
    in K) or "asserted"."""
    coeffs: tuple          # constant term first, monic
    field: Field
    status: str

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def make(cls, coeffs, field: Field = QQ) -> "IrreduciblePoly":
        c = [field(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        while c and not c[0]:          # divide by the unit t
            c.pop(0)
        if len(c) < 2:
            raise ValueError("f must have positive degree after removing unit factors")
        lead = c[-1]
        c = tuple(x / lead for x in c)
        deg = len(c) - 1
        if deg == 1:
            status = "verified"
        elif deg <= 3:
            root = _find_root(c, field)
            if root is not None:
                raise ValueError(f"f is reducible: t = {root} is a root")
            status = "verified"
        else:
            status = "asserted"
        return cls(c, field, status)

    def __call__(self, x):
        acc = self.field.zero
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc


def _find_root(c: tuple, field: Field):
    def f(x):
        acc = field.zero
        for a in reversed(c):
            acc = acc * x + a
        return acc
    if field.prime is not None:
        for r in range(field.prime):
            if not f(field(r)):
                return field(r)
        return None
    den = 1
    for a in c:
        den = math.lcm(den, Fraction(a).denominator)
    ints = [int(a * den) for a in c]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if f(r) == 0:
                    return r
    return None


class Residues:
    """Arithmetic in K[t]/(f) on coefficient vectors of length deg f."""

    def __init__(self, f: IrreduciblePoly):
        self.f = f
        self.n = f.degree
        self.zero = f.field.zero
        self._pow: dict[int, tuple] = {0: tuple([f.field.one] + [self.zero] * (self.n - 1))}

    def times_t(self, v: tuple) -> tuple:
        top = v[-1]
        out = (self.zero,) + v[:-1]
        return tuple(o - top * a for o, a in zip(out, self.f.coeffs))

    def times_t_inv(self, v: tuple) -> tuple:
        # t g = v  with g = (v - v0 / f0 * f) / t
        k = v[0] / self.f.coeffs[0]
        w = tuple(a - k * b for a, b in zip(v, self.f.coeffs)) + (-k,)
        return w[1:self.n + 1]

    def t_power(self, d: int) -> tuple:
        if d not in self._pow:
            self._pow[d] = (self.times_t(self.t_power(d - 1)) if d > 0
                            else self.times_t_inv(self.t_power(d + 1)))
        return self._pow[d]


# -- modules ------------------------------------------------------------------------------

class ChenModule:
    """V_[p] (``twist`` None) or V^f_[c^oo] (``twist`` = f, base a pure cycle c^oo).

    Keys of a ``ModuleVector`` are canonical ``ShiftedTail`` values, paired with a
    residue index j in [0, deg f) in the twisted case.
    """

    def __init__(self, U: Ultragraph, base: InfinitePath, twist: IrreduciblePoly | None = None,
                 field: Field = QQ):
        require_sink_free(U)
        base.check(U)
        if twist is not None:
            if not base.is_periodic:
                raise UnsupportedModule("twisted modules need a rational (periodic) base")
            if base.prefix:
                raise UnsupportedModule("twisted modules need a base of the form c^oo (empty prefix)")
            if twist.field != field:
                raise ValueError("twist polynomial and module must share the field")
        self.U, self.base, self.twist, self.field = U, base, twist, field
        self.alg = Algebra(U, field)
        self.res = Residues(twist) if twist is not None else None

    # basis helpers
    def tail(self, u=(), m: int = 0) -> ShiftedTail:
        return canonicalize(ShiftedTail(tuple(u), m, self.base))

    def key(self, st: ShiftedTail, j: int = 0):
        return st if self.twist is None else (st, j)

    def vector(self, terms: dict) -> "ModuleVector":
        return ModuleVector(self, terms)

    def basis(self, st: ShiftedTail, j: int = 0) -> "ModuleVector":
        return ModuleVector(self, {self.key(st, j): self.field.one})

    @staticmethod
    def _first(st: ShiftedTail) -> int:
        return st.u[0] if st.u else st.base.letter(st.m)

    def _source(self, st: ShiftedTail) -> int:
        return self.U.src[self._first(st)]

    # generator action on a tail: returns (new raw tail) or None
    def _gen_tail(self, kind: str, item: int, st: ShiftedTail) -> ShiftedTail | None:
        if kind == "p":
            return st if (item >> self._source(st)) & 1 else None
        if kind == "s":
            return ShiftedTail((item,) + st.u, st.m, st.base) if (self.U.rng[item] >> self._source(st)) & 1 else None
        if kind == "s*":
            if self._first(st) != item:
                return None
            return ShiftedTail(st.u[1:], st.m, st.base) if st.u else ShiftedTail((), st.m + 1, st.base)
        raise ValueError(f"unknown generator kind {kind!r}")

    def _emit(self, raw: ShiftedTail, j: int, c, out: dict):
        st = canonicalize(raw)
        if self.twist is None:
            out[st] = out.get(st, self.field.zero) + c
            return
        per = len(self.base.cycle)
        shift = (len(raw.u) - raw.m) - (len(st.u) - st.m)
        if shift % per:
            raise AssertionError("arrow degree shift is not a multiple of the cycle length")
        vec = self.res.t_power(j + shift // per)
        for i, a in enumerate(vec):
            if a:
                k = (st, i)
                out[k] = out.get(k, self.field.zero) + c * a

    def _split(self, key):
        return (key, 0) if self.twist is None else key

    def act_gen(self, kind: str, item: int, m: "ModuleVector") -> "ModuleVector":
        """Generator ``p_A`` (item = vertex mask), ``s_e`` or ``s_e^*`` (item = edge index)."""
        out: dict = {}
        for key, c in m.terms.items():
            st, j = self._split(key)
            raw = self._gen_tail(kind, item, st)
            if raw is not None:
                self._emit(raw, j, c, out)
        return ModuleVector(self, out)

    def act_monomial(self, mono, m: "ModuleVector") -> "ModuleVector":
        alpha, A, beta = mono
        for e in beta:                   # s_beta^* = s*_{beta_n} ... s*_{beta_1}
            m = self.act_gen("s*", e, m)
        m = self.act_gen("p", A, m)
        for e in reversed(alpha):
            m = self.act_gen("s", e, m)
        return m

    def act_elem(self, a: Element, m: "ModuleVector") -> "ModuleVector":
        out = ModuleVector(self, {})
        for mono, c in a.terms.items():
            out = out + self.act_monomial(mono, m).scale(c)
        return out

    def t_act(self, m: "ModuleVector", power: int = 1) -> "ModuleVector":
        """Right multiplication by t^power in K[t, t^-1]/(f)."""
        if self.twist is None:
            raise UnsupportedModule("t acts only on twisted modules")
        out: dict = {}
        for (st, j), c in m.terms.items():
            for i, a in enumerate(self.res.t_power(j + power)):
                if a:
                    out[(st, i)] = out.get((st, i), self.field.zero) + c * a
        return ModuleVector(self, out)

    def poly_act(self, coeffs, m: "ModuleVector") -> "ModuleVector":
        out = ModuleVector(self, {})
        for i, a in enumerate(coeffs):
            if a:
                out = out + self.t_act(m, i).scale(self.field(a))
        return out

    def random_tail(self, rng: random.Random, max_u: int = 3, max_m: int = 5) -> ShiftedTail:
        U = self.U
        m = rng.randint(0, max_m)
        tail_src = U.src[self.base.letter(m)]
        u: tuple = ()
        for _ in range(rng.randint(0, max_u)):
            head = U.src[u[0]] if u else tail_src
            choices = [e for e in range(U.n_edges) if (U.rng[e] >> head) & 1]
            if not choices:
                break
            u = (rng.choice(choices),) + u
        return self.tail(u, m)

    def random_vector(self, rng: random.Random, n_terms: int = 3) -> "ModuleVector":
        terms = {}
        for _ in range(n_terms):
            j = rng.randrange(self.twist.degree) if self.twist is not None else 0
            terms[self.key(self.random_tail(rng), j)] = self.field(rng.choice((-2, -1, 1, 2, 3)))
        return ModuleVector(self, terms)


class ModuleVector:
    __slots__ = ("module", "terms")

    def __init__(self, module: ChenModule, terms: dict):
        self.module = module
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, self.module.field.zero) + c
        return ModuleVector(self.module, t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ModuleVector":
        c = self.module.field(c)
        return ModuleVector(self.module, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"ModuleVector({self.terms!r})"


def act_gen(module: ChenModule, kind: str, item: int, m: ModuleVector) -> ModuleVector:
    return module.act_gen(kind, item, m)


def act_elem(a: Element, m: ModuleVector) -> ModuleVector:
    return m.module.act_elem(a, m)


def vf_act(kind: str, item: int, m: ModuleVector) -> ModuleVector:
    if m.module.twist is None:
        raise UnsupportedModule("vf_act needs a twisted module")
    return m.module.act_gen(kind, item, m)


def intertwine(m: ModuleVector, target: ChenModule) -> ModuleVector:
    """The map V^{t-1}_[c^oo] -> V_[c^oo], (q, 0) -> q."""
    f = m.module.twist
    if f is None or f.coeffs != (f.field(-1), f.field.one):
        raise ValueError("the basis intertwiner is defined for f = t - 1")
    return ModuleVector(target, {st: c for (st, _), c in m.terms.items()})


# -- verification --------------------------------------------------------------------------

def relation_instances(alg: Algebra, max_sets: int = 12):
    """(label, element) pairs whose elements are zero in L_K(G), one per relation instance."""
    U = alg.U
    G0 = sorted(generate_G0(U))
    if len(G0) > max_sets:
        G0 = sorted({1 << v for v in range(U.n_vertices)} | set(U.rng) | {U.all_vertices})
    P = alg.p_mask
    out = []
    for A, B in iproduct(G0, repeat=2):
        out.append((f"pA pB - pAnB [{A},{B}]", P(A) * P(B) - P(A & B)))
        out.append((f"pAuB - pA - pB + pAnB [{A},{B}]", P(A | B) - P(A) - P(B) + P(A & B)))
    for e in U.edge_names:
        s, ss = alg.s(e), alg.s_star(e)
        i = U.e(e)
        out.append((f"p_s(e) s_e - s_e [{e}]", P(1 << U.src[i]) * s - s))
        out.append((f"s_e p_r(e) - s_e [{e}]", s * P(U.rng[i]) - s))
        for f in U.edge_names:
            rhs = P(U.rng[i]) if e == f else alg.zero()
            out.append((f"s*_e s_f - delta p_r(e) [{e},{f}]", ss * alg.s(f) - rhs))
    for v in bits(regular_vertices(U)):
        rhs = alg.zero()
        for e in U.out_edges[v]:
            rhs = rhs + alg.s(U.edge_names[e]) * alg.s_star(U.edge_names[e])
        out.append((f"p_v - sum s_e s*_e [{U.vertex_names[v]}]", P(1 << v) - rhs))
    return out


@dataclass
class RepresentationReport:
    relations_checked: int = 0
    products_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_representation(module: ChenModule, samples: int = 200, vectors: int = 50,
                         seed: int = 0) -> RepresentationReport:
    """Relation operators vanish on ``vectors`` random vectors and
    act(ab, m) = act(a, act(b, m)) on ``samples`` random triples."""
    rng = random.Random(seed)
    rep = RepresentationReport()
    vecs = [module.random_vector(rng) for _ in range(vectors)]
    for label, r in relation_instances(module.alg):
        for m in vecs:
            rep.relations_checked += 1
            img = module.act_elem(r, m)
            if img:
                rep.failures.append(("relation", label, m))
                break
    for _ in range(samples):
        a = random_element(module.alg, rng, n_terms=3, max_len=3)
        b = random_element(module.alg, rng, n_terms=3, max_len=3)
        m = module.random_vector(rng)
        rep.products_checked += 1
        if module.act_elem(a * b, m) != module.act_elem(a, module.act_elem(b, m)):
            rep.failures.append(("product", str(a), str(b), m))
    return rep


def check_intertwiner(twisted: ChenModule, plain: ChenModule, samples: int = 100,
                      seed: int = 0) -> list:
    """Generator/basis pairs on which the f = t - 1 intertwiner fails to commute."""
    rng = random.Random(seed)
    U = twisted.U
    gens = ([("p", 1 << v) for v in range(U.n_vertices)] + [("p", A) for A in sorted(set(U.rng))]
            + [(k, e) for e in range(U.n_edges) for k in ("s", "s*")])
    bad = []
    for _ in range(samples):
        m = twisted.random_vector(rng)
        for kind, item in gens:
            if intertwine(twisted.act_gen(kind, item, m), plain) != plain.act_gen(kind, item, intertwine(m, plain)):
                bad.append((kind, item, m))
    return bad


def cyclic_witness(module: ChenModule, src: ShiftedTail, dst: ShiftedTail) -> Element:
    """A monomial s_alpha s_beta^* carrying basis vector ``src`` to ``dst`` in V_[p]."""
    U = module.U
    M = max(src.m, dst.m)
    beta = src.realize().take(len(src.u) + M - src.m)
    alpha = dst.realize().take(len(dst.u) + M - dst.m)
    mid = U.eff_range(alpha) & U.eff_range(beta)
    return module.alg.mono(alpha, mid, beta)
