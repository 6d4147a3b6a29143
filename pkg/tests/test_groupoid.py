import random

import pytest

from conftest import make_U1, make_U3, make_U4, random_ultragraph
from ulpa.algebra import Algebra, is_zero, random_element
from ulpa.groupoid import (Cylinder, GroupoidPoint, InvalidPoint, SinkError, SteinbergElement,
                           compose_points, cyl_compose, cyl_inverse, cyl_make, factor_positive,
                           indicator, isotropy, membership, one_step, pi_G, recompose, st_eval)
from ulpa.paths import InfinitePath, Ultrapath, sqrt_stream, tail_shift

U1, U3 = make_U1(), make_U3()
e, f = U1.e("e"), U1.e("f")
a, b = U3.e("a"), U3.e("b")
V, W = U1.mask("v"), U1.mask("w")
VW = V | W
P = InfinitePath.periodic


def ind(U, *cyls):
    out = SteinbergElement(U, {})
    for c in cyls:
        out = out + indicator(U, c)
    return out


def sample_points(U, rng, n=60, max_pre=3, max_cyc=3):
    """Random valid arrows (q, k, p) between eventually periodic paths."""
    pts = []
    while len(pts) < n:
        def rpath():
            while True:
                pre = tuple(rng.randrange(U.n_edges) for _ in range(rng.randint(0, max_pre)))
                cyc = tuple(rng.randrange(U.n_edges) for _ in range(rng.randint(1, max_cyc)))
                if U.is_path(pre + cyc + cyc):
                    return P(pre, cyc)
        q = rpath()
        p = q.drop(rng.randint(0, 3))
        u = []
        for _ in range(rng.randint(0, 2)):
            head = U.src[u[0]] if u else p.source(U)
            opts = [x for x in range(U.n_edges) if (U.rng[x] >> head) & 1]
            if not opts:
                break
            u.insert(0, rng.choice(opts))
        p = p.prepend(u)
        k = tail_shift(q, p) + rng.randint(-1, 1) * q.period
        pts.append(GroupoidPoint(q, k, p))
    return pts


def test_sinks_rejected():
    with pytest.raises(SinkError):
        pi_G(Algebra(make_U4()).p("v"))


def test_cyl_make_examples():
    x = Ultrapath((), VW)
    assert cyl_make(U1, x, x) == [Cylinder((), (), VW)]
    got = ind(U1, *cyl_make(U1, x, x, K=[e]))
    assert got == ind(U1, Cylinder((f,), (f,), W))
    got = ind(U1, *cyl_make(U1, x, x, Q=[W]))
    assert got == ind(U1, Cylinder((), (), V))
    with pytest.raises(ValueError):
        cyl_make(U1, Ultrapath((), W), Ultrapath((), W), K=[e])


def test_cyl_make_set_difference_oracle():
    rng = random.Random(41)
    pts = sample_points(U1, rng, 150)
    for K, Q in [([e], []), ([f], []), ([e, f], []), ([], [W]), ([e], [W]), ([f], [V])]:
        x = Ultrapath((), VW)
        pieces = cyl_make(U1, x, x, K, Q)
        for pt in pts:
            inside = membership(U1, Cylinder((), (), VW), pt)
            removed = any(membership(U1, Cylinder((k,), (k,), U1.rng[k]), pt) for k in K) or \
                any(membership(U1, Cylinder((), (), C & VW), pt) for C in Q)
            hits = sum(membership(U1, c, pt) for c in pieces)
            assert hits == (1 if inside and not removed else 0)


def test_cyl_compose_examples():
    c1 = Cylinder((e,), (), VW)
    c2 = Cylinder((), (e,), VW)
    assert cyl_compose(U1, c1, c2) == Cylinder((e,), (e,), VW)
    assert cyl_compose(U1, c2, c1) == Cylinder((), (), VW)
    assert cyl_compose(U1, Cylinder((), (f,), W), Cylinder((e,), (), VW)) is None


def test_bisection_laws():
    rng = random.Random(42)
    pts = sample_points(U1, rng, 40)
    for c in [Cylinder((e,), (), VW), Cylinder((e, f), (f,), W), Cylinder((), (e, e), V)]:
        assert cyl_inverse(cyl_inverse(c)) == c
        u = cyl_compose(U1, c, cyl_inverse(c))
        assert u.alpha == u.beta
        for pt in pts:
            if membership(U1, u, pt):
                assert pt.k == 0 and pt.q == pt.p


def test_membership_examples():
    assert membership(U1, Cylinder((), (), W), GroupoidPoint(P((), (f,)), 0, P((), (f,))))
    assert membership(U1, Cylinder((e,), (), VW), GroupoidPoint(P((e,), (f,)), 1, P((), (f,))))
    assert st_eval(SteinbergElement(U1, {}), GroupoidPoint(P((), (f,)), 0, P((), (f,)))) == 0


def test_invalid_point():
    with pytest.raises(InvalidPoint):
        GroupoidPoint(P((), (a, b)), 0, P((), (b, a))).check(U3)


def test_partition_identity():
    for c in [Cylinder((), (), VW), Cylinder((e,), (), VW), Cylinder((e,), (e, f), W)]:
        assert ind(U1, c) == ind(U1, *one_step(U1, c))


def test_unit_space_products():
    A1 = Algebra(U1)
    assert ind(U1, Cylinder((), (), VW)) * ind(U1, Cylinder((), (), W)) == ind(U1, Cylinder((), (), W))
    assert (pi_G(A1.p("v")) * pi_G(A1.p("w"))).is_zero()


def _convolution_oracle(F, G, pt):
    """Sum of F(g) G(h) over the factorizations pt = g h with g in the support of F."""
    seen = set()
    total = F.field.zero
    for c in F.terms:
        if not pt.q.take(len(c.alpha)) == c.alpha:
            continue
        z = pt.q.drop(len(c.alpha)).prepend(c.beta)
        k1 = c.degree
        if (z, k1) in seen:
            continue
        seen.add((z, k1))
        g, h = GroupoidPoint(pt.q, k1, z), GroupoidPoint(z, pt.k - k1, pt.p)
        if g.is_valid and h.is_valid:
            total += st_eval(F, g) * st_eval(G, h)
    return total


@pytest.mark.parametrize("U", [U1, U3], ids=["U1", "U3"])
def test_convolution_pointwise(U):
    rng = random.Random(43)
    alg = Algebra(U)
    pts = sample_points(U, rng, 40)
    for _ in range(40):
        F = pi_G(random_element(alg, rng, n_terms=2, max_len=2))
        G = pi_G(random_element(alg, rng, n_terms=2, max_len=2))
        FG = F * G
        for pt in pts:
            assert st_eval(FG, pt) == _convolution_oracle(F, G, pt)


def test_pi_G_examples():
    A1 = Algebra(U1)
    assert pi_G(A1.p("v", "w")).terms == {Cylinder((), (), VW): 1}
    assert pi_G(A1.mono((e,), W, (e,))).terms == {Cylinder((e,), (e,), W): 1}
    assert pi_G(A1.p("v") - A1.s("e") * A1.s_star("e")).is_zero()


def test_pi_G_homomorphism_and_injectivity():
    rng = random.Random(44)
    graphs = [U1, U3] + [random_ultragraph(rng, max_v=3, max_e=4, sink_free=True) for _ in range(3)]
    for U in graphs:
        alg = Algebra(U)
        for _ in range(60):
            x, y = random_element(alg, rng), random_element(alg, rng)
            assert pi_G(x * y) == pi_G(x) * pi_G(y)
            assert is_zero(x) == pi_G(x).is_zero()
            assert is_zero(x - x)
            for n, comp in __import__("ulpa.algebra", fromlist=["x"]).degree_components(x).items():
                assert all(c.degree == n for c in pi_G(comp).terms)


def _min_period(mu):
    tail = mu.drop(mu.preperiod + 5)
    for d in range(1, 20):
        if all(tail.letter(i) == tail.letter(i + d) for i in range(60)):
            return d


def test_isotropy():
    assert isotropy(P((), (f,))).generator_degree == 1
    assert isotropy(P((), (a, b))).generator_degree == 2
    assert isotropy(P((), (a, b, a, b))).generator_degree == 2
    assert isotropy(InfinitePath.streamed(sqrt_stream("s2", a, b))).kind == "trivial"
    rng = random.Random(45)
    for _ in range(50):
        mu = P(tuple(rng.choice([a, b]) for _ in range(rng.randint(0, 4))),
               tuple(rng.choice([a, b]) for _ in range(rng.randint(1, 6))))
        r = isotropy(mu)
        assert r.kind == "cyclic" and r.generator_degree == _min_period(mu)


def test_factor_positive():
    g = GroupoidPoint(P((a, b), (a,)), 2, P((), (a,)))
    parts = factor_positive(U3, g)
    assert parts == [GroupoidPoint(P((a, b), (a,)), 1, P((b,), (a,))),
                     GroupoidPoint(P((b,), (a,)), 1, P((), (a,)))]
    assert recompose(parts) == g
    h = GroupoidPoint(P((e,), (f,)), 1, P((), (f,)))
    assert factor_positive(U1, h) == [h]
    with pytest.raises(ValueError):
        factor_positive(U1, GroupoidPoint(P((), (f,)), 0, P((), (f,))))


def test_factor_positive_random():
    rng = random.Random(46)
    for U in (U1, U3):
        for pt in sample_points(U, rng, 100):
            if pt.k <= 0:
                pt = pt.inverse()
            if pt.k <= 0 or pt.k > 5:
                continue
            parts = factor_positive(U, pt)
            assert len(parts) == pt.k and all(h.k == 1 and h.is_valid for h in parts)
            assert all(x.p == y.q for x, y in zip(parts, parts[1:]))
            assert recompose(parts) == pt
