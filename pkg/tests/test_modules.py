import random

import pytest
import sympy

from conftest import make_U1, make_U3, make_U4, relation_elements
from ulpa.algebra import Algebra, random_element, unit
from ulpa.field import QQ, Field
from ulpa.groupoid import SinkError
from ulpa.modules import (ChenModule, IrreduciblePoly, Residues, UnsupportedModule,
                          check_intertwiner, check_representation, cyclic_witness, intertwine,
                          vertex_module, vf_act)
from ulpa.paths import InfinitePath, ShiftedTail, sqrt_stream

U1, U3 = make_U1(), make_U3()
e, f = U1.e("e"), U1.e("f")
a, b = U3.e("a"), U3.e("b")
FINF = InfinitePath.periodic((), (f,))
STREAM = InfinitePath.streamed(sqrt_stream("s2", a, b))
TWISTS = {"t-1": [-1, 1], "t-2": [-2, 1], "t^2-t-1": [-1, -1, 1]}


def plain_U1():
    return ChenModule(U1, FINF)


def twisted(name, field=QQ):
    return ChenModule(U1, FINF, IrreduciblePoly.make(TWISTS[name], field), field)


def test_generator_examples():
    M = plain_U1()
    q = M.basis(M.tail())
    assert not M.act_gen("p", U1.mask("v"), q)
    assert M.act_gen("s", e, q) == M.basis(M.tail((e,)))
    assert M.act_gen("s*", f, q) == q
    assert not M.act_gen("s*", e, q)


def test_unit_acts_as_identity():
    rng = random.Random(31)
    for M in (plain_U1(), ChenModule(U3, STREAM), twisted("t^2-t-1")):
        for _ in range(20):
            m = M.random_vector(rng)
            assert M.act_elem(unit(M.alg), m) == m


def _relations_vanish(M, rng, vectors=50):
    vecs = [M.random_vector(rng) for _ in range(vectors)]
    for label, r in relation_elements(M.alg):
        for m in vecs:
            assert not M.act_elem(r, m), (label, m)


@pytest.mark.parametrize("case", ["U1 plain", "U3 stream", "t-1", "t-2", "t^2-t-1"])
def test_representation(case):
    if case == "U1 plain":
        M = plain_U1()
    elif case == "U3 stream":
        M = ChenModule(U3, STREAM)
    else:
        M = twisted(case)
    rng = random.Random(32)
    _relations_vanish(M, rng)
    rep = check_representation(M, samples=200, vectors=50)
    assert rep.passed, rep.failures[:2]
    for _ in range(100):
        x, y = random_element(M.alg, rng), random_element(M.alg, rng)
        m = M.random_vector(rng)
        assert M.act_elem(x * y, m) == M.act_elem(x, M.act_elem(y, m))


def test_mutation_negative_control(monkeypatch):
    original = ChenModule._gen_tail

    def corrupted(self, kind, item, st):
        if kind == "s*" and st.u:
            return ShiftedTail(st.u[1:], st.m, st.base)       # forgets to check the first letter
        return original(self, kind, item, st)
    monkeypatch.setattr(ChenModule, "_gen_tail", corrupted)
    rep = check_representation(plain_U1(), samples=20, vectors=10)
    assert not rep.passed and rep.failures


def test_wraparound_multiplies_by_t():
    for name in TWISTS:
        M = twisted(name)
        n = M.twist.degree
        for j in range(n):
            got = M.act_gen("s", f, M.basis(M.tail(), j))
            assert got == M.t_act(M.basis(M.tail(), j), 1)


def test_twist_t_squared():
    M = twisted("t^2-t-1")
    got = M.act_gen("s", f, M.basis(M.tail(), 1))
    assert got == M.basis(M.tail(), 0) + M.basis(M.tail(), 1)
    assert M.act_gen("s*", f, M.basis(M.tail(), 0)) == M.basis(M.tail(), 1) - M.basis(M.tail(), 0)


@pytest.mark.parametrize("name", list(TWISTS))
def test_f_annihilates_and_t_commutes(name):
    M = twisted(name)
    rng = random.Random(33)
    gens = [("p", U1.mask("v")), ("p", U1.mask("w")), ("p", U1.mask("v", "w"))] + \
        [(k, x) for x in (e, f) for k in ("s", "s*")]
    for _ in range(50):
        m = M.random_vector(rng)
        assert not M.poly_act(M.twist.coeffs, m)
        for kind, item in gens:
            assert vf_act(kind, item, M.t_act(m)) == M.t_act(vf_act(kind, item, m))


def test_intertwiner():
    T, P = twisted("t-1"), plain_U1()
    assert check_intertwiner(T, P, samples=100) == []
    rng = random.Random(34)
    for _ in range(50):
        x = random_element(T.alg, rng)
        m = T.random_vector(rng)
        assert intertwine(T.act_elem(x, m), P) == P.act_elem(x, intertwine(m, P))
    with pytest.raises(ValueError):
        intertwine(twisted("t-2").random_vector(rng), P)


def test_cyclic_witness():
    rng = random.Random(35)
    for M in (ChenModule(U3, STREAM), plain_U1(), ChenModule(U3, InfinitePath.periodic((a,), (a, b)))):
        for _ in range(50):
            src, dst = M.random_tail(rng), M.random_tail(rng)
            w = cyclic_witness(M, src, dst)
            assert len(w.terms) == 1
            assert M.act_elem(w, M.basis(src)) == M.basis(dst)


def _sympy_power(coeffs, d):
    t = sympy.Symbol("t")
    fp = sympy.Poly(list(reversed(coeffs)), t, domain="QQ")
    if d >= 0:
        r = sympy.Poly(t ** d, t, domain="QQ").rem(fp)
    else:
        inv = sympy.invert(sympy.Poly(t, t, domain="QQ"), fp)
        r = sympy.Poly(inv ** (-d), t, domain="QQ").rem(fp)
    c = list(reversed(r.all_coeffs()))
    n = len(coeffs) - 1
    return tuple(sympy.Rational(x) for x in c + [0] * (n - len(c)))


@pytest.mark.parametrize("coeffs", [[-1, -1, 1], [-2, 1], [2, 0, 0, 1], [1, 1, 0, 1]])
def test_residues_against_sympy(coeffs):
    fpoly = IrreduciblePoly.make(coeffs)
    R = Residues(fpoly)
    for d in range(-6, 7):
        got = tuple(sympy.Rational(x.numerator, x.denominator) for x in R.t_power(d))
        assert got == _sympy_power(list(fpoly.coeffs), d)


def test_polynomial_validation():
    assert IrreduciblePoly.make([-1, -1, 1]).status == "verified"
    assert IrreduciblePoly.make([1, 0, 0, 0, 1]).status == "asserted"
    assert IrreduciblePoly.make([0, -1, 1]).coeffs == (-1, 1)          # t^2 - t = t (t - 1)
    with pytest.raises(ValueError, match="reducible"):
        IrreduciblePoly.make([-1, 0, 1])
    with pytest.raises(ValueError):
        IrreduciblePoly.make([0, 0, 1])
    F5 = Field(5)
    assert IrreduciblePoly.make([2, 0, 1], F5).status == "verified"     # t^2 + 2 has no root mod 5
    with pytest.raises(ValueError):
        IrreduciblePoly.make([1, 0, 1], F5)                             # 2^2 + 1 = 0 mod 5


def test_prime_field_module():
    with pytest.raises(ValueError, match="reducible"):
        twisted("t^2-t-1", Field(5))                                    # t = 3 is a root mod 5
    M = twisted("t^2-t-1", Field(7))
    rep = check_representation(M, samples=50, vectors=20)
    assert rep.passed


def test_rejections():
    with pytest.raises(UnsupportedModule):
        vertex_module(U1, None)
    with pytest.raises(UnsupportedModule):
        ChenModule(U1, InfinitePath.periodic((e,), (f,)), IrreduciblePoly.make([-1, 1]))
    with pytest.raises(UnsupportedModule):
        ChenModule(U3, STREAM, IrreduciblePoly.make([-1, 1]))
    with pytest.raises(SinkError):
        ChenModule(make_U4(), InfinitePath.periodic((), (0,)))
    with pytest.raises(UnsupportedModule):
        plain_U1().t_act(plain_U1().basis(plain_U1().tail()))
