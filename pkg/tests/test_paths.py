import random
from decimal import Decimal, getcontext
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_U1, make_U3
from ulpa.paths import (InfinitePath, ShiftedTail, UnsupportedComparison, Ultrapath, canonicalize,
                        concat_infinite, lcm, shifted_tail_equal, sqrt_stream, tail_equivalent,
                        tail_shift, tau_gt, tau_le, up_product)

U1 = make_U1()
U3 = make_U3()
e, f = U1.e("e"), U1.e("f")
a, b = U3.e("a"), U3.e("b")
V, W = U1.mask("v"), U1.mask("w")


def test_up_product_examples():
    assert up_product(U1, Ultrapath((), V | W), Ultrapath((), W)) == Ultrapath((), W)
    assert up_product(U1, Ultrapath((e,), V | W), Ultrapath((), W)) == Ultrapath((e,), W)
    assert up_product(U1, Ultrapath((), V), Ultrapath((f,), W)) is None
    assert up_product(U1, Ultrapath((e,), V | W), Ultrapath((f,), W)) == Ultrapath((e, f), W)


def _ultrapaths(U, max_len=2):
    out = [Ultrapath((), A) for A in range(1, 1 << U.n_vertices)]
    words = [()]
    for _ in range(max_len):
        words = [w + (x,) for w in words for x in range(U.n_edges) if U.is_path(w + (x,))]
        for w in words:
            R = U.rng[w[-1]]
            out += [Ultrapath(w, A) for A in range(1, 1 << U.n_vertices) if not A & ~R]
    return out


@pytest.mark.parametrize("U", [U1, U3])
def test_up_product_associative(U):
    ups = _ultrapaths(U)
    for x, y, z in product(ups, repeat=3):
        xy, yz = up_product(U, x, y), up_product(U, y, z)
        if xy is not None and yz is not None:
            l, r = up_product(U, xy, z), up_product(U, x, yz)
            assert l == r


def test_concat_infinite():
    fi = InfinitePath.periodic((), (f,))
    assert concat_infinite(U1, Ultrapath((e,), V | W), fi) == InfinitePath.periodic((e,), (f,))
    assert concat_infinite(U1, Ultrapath((), W), fi) == fi
    assert concat_infinite(U1, Ultrapath((), V), fi) is None


def test_tau():
    p = InfinitePath.periodic((e,), (f,))
    assert tau_gt(p, 1) == InfinitePath.periodic((), (f,))
    assert tau_le(InfinitePath.periodic((), (a, b)), 3) == (a, b, a)
    assert tau_gt(p, 0) == p


def _letters_equal(p, q, n):
    return all(p.letter(i) == q.letter(i) for i in range(n))


words = st.lists(st.sampled_from([a, b]), max_size=4).map(tuple)
cycles = st.lists(st.sampled_from([a, b]), min_size=1, max_size=4).map(tuple)


@settings(max_examples=300, deadline=None)
@given(words, cycles, words, cycles)
def test_canonical_equality_matches_letters(p1, c1, p2, c2):
    p, q = InfinitePath.periodic(p1, c1), InfinitePath.periodic(p2, c2)
    n = len(p1) + len(p2) + 2 * lcm(len(c1), len(c2))
    assert (p == q) == _letters_equal(p, q, n)


@settings(max_examples=200, deadline=None)
@given(words, cycles, st.integers(0, 8))
def test_tau_reconstructs(p1, c1, n):
    p = InfinitePath.periodic(p1, c1)
    assert tau_gt(p, n).prepend(tau_le(p, n)) == p


def _shift_oracle(p, q, k, horizon=12):
    n = len(p.prefix) + len(q.prefix) + 2 * lcm(max(1, p.period), max(1, q.period))
    for m in range(max(0, k), max(0, k) + horizon):
        if _letters_equal(p.drop(m), q.drop(m - k), n):
            return True
    return False


def test_shifted_tail_examples():
    p, q = InfinitePath.periodic((e,), (f,)), InfinitePath.periodic((), (f,))
    assert tail_equivalent(p, q)
    assert not tail_equivalent(InfinitePath.periodic((), (a,)), InfinitePath.periodic((), (b,)))
    # f^oo has period 1, so every shift aligns it with e f^oo past the first letter
    assert shifted_tail_equal(p, q, 1) and shifted_tail_equal(p, q, 0)
    r = InfinitePath.periodic((a,), (a, b))
    s = InfinitePath.periodic((), (a, b))
    assert shifted_tail_equal(r, s, 1) and not shifted_tail_equal(r, s, 0)
    assert shifted_tail_equal(r, s, 3)


@settings(max_examples=300, deadline=None)
@given(words, cycles, words, cycles, st.integers(-5, 5))
def test_shifted_tail_matches_alignment_search(p1, c1, p2, c2, k):
    p, q = InfinitePath.periodic(p1, c1), InfinitePath.periodic(p2, c2)
    assert shifted_tail_equal(p, q, k) == _shift_oracle(p, q, k)
    t = tail_shift(p, q)
    assert (t is not None) == tail_equivalent(p, q)
    if t is not None:
        assert shifted_tail_equal(p, q, t)


def test_tail_equivalence_is_equivalence():
    rng = random.Random(5)
    ps = [InfinitePath.periodic(tuple(rng.choice([a, b]) for _ in range(rng.randint(0, 3))),
                                tuple(rng.choice([a, b]) for _ in range(rng.randint(1, 3))))
          for _ in range(100)]
    for p in ps:
        assert tail_equivalent(p, p)
    for p, q in product(ps[:40], repeat=2):
        assert tail_equivalent(p, q) == tail_equivalent(q, p)
        if tail_equivalent(p, q):
            for r in ps[:40]:
                if tail_equivalent(q, r):
                    assert tail_equivalent(p, r)


def test_canonicalize_examples():
    base = InfinitePath.periodic((), (f,))
    assert canonicalize(ShiftedTail((f,), 0, base)) == ShiftedTail((), 0, base)
    assert canonicalize(ShiftedTail((e,), 0, base)) == ShiftedTail((e,), 0, base)
    ab = InfinitePath.periodic((), (a, b))
    assert canonicalize(ShiftedTail((), 2, ab)) == ShiftedTail((), 0, ab)


@settings(max_examples=300, deadline=None)
@given(words, st.integers(0, 6), words, st.integers(0, 6), words, cycles)
def test_canonicalize_decides_realized_equality(u1, m1, u2, m2, pre, cyc):
    base = InfinitePath.periodic(pre, cyc)
    s1, s2 = ShiftedTail(u1, m1, base), ShiftedTail(u2, m2, base)
    c1, c2 = canonicalize(s1), canonicalize(s2)
    assert canonicalize(c1) == c1
    assert c1.realize() == s1.realize()
    n = len(u1) + len(u2) + 2 * len(base.prefix) + 2 * len(base.cycle) + m1 + m2
    assert (c1 == c2) == _letters_equal(s1.realize(), s2.realize(), n)


def test_sqrt_stream_against_decimal():
    getcontext().prec = 60
    r2 = Decimal(2).sqrt()
    s = sqrt_stream("sqrt2", a, b)
    for i in range(300):
        d = int((i + 1) * r2) - int(i * r2) - 1
        assert s.letter(i) == (b if d else a)
    with pytest.raises(ValueError):
        sqrt_stream("x", a, b, n=4)


def test_streams():
    s = sqrt_stream("sqrt2", a, b)
    p = InfinitePath.streamed(s)
    q = InfinitePath.streamed(s, 3)
    assert tail_equivalent(p, q) and tail_shift(p, q) == 3
    assert shifted_tail_equal(p.prepend((s.letter(0),)).drop(1), p, 0)
    # the prefix absorbs letters the stream already supplies
    assert InfinitePath.streamed(s, 2, prefix=(s.letter(1),)) == InfinitePath.streamed(s, 1)
    other = InfinitePath.streamed(sqrt_stream("sqrt3", a, b, 3))
    with pytest.raises(UnsupportedComparison):
        tail_equivalent(p, other)
    assert not tail_equivalent(p, InfinitePath.periodic((), (a,)))
