"""Ultrapaths, infinite paths and the tail operations on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Callable

from .ultragraph import Ultragraph, Word


class UnsupportedComparison(ValueError):
    """Raised when two unrelated aperiodic streams are compared."""


# -- ultrapaths -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Ultrapath:
    """The pair ``(word, range)``; with an empty word this is a length-0 path ``A``."""

    word: Word
    rng: int

    def __len__(self):
        return len(self.word)

    def source_mask(self, U: Ultragraph) -> int:
        return self.rng if not self.word else 1 << U.src[self.word[0]]

    def check(self, U: Ultragraph) -> None:
        if not self.rng:
            raise ValueError("ultrapath range must be nonempty")
        if self.word:
            if not U.is_path(self.word):
                raise ValueError(f"{U.wnames(self.word)} is not a path")
            if self.rng & ~U.rng[self.word[-1]]:
                raise ValueError("ultrapath range must lie inside r(last edge)")

    @classmethod
    def of_path(cls, U: Ultragraph, word: Word) -> "Ultrapath":
        """Embed a nonempty path as ``(word, r(word))``."""
        return cls(tuple(word), U.rng[word[-1]])


def up_product(U: Ultragraph, x: Ultrapath, y: Ultrapath) -> Ultrapath | None:
    """Partial product on ultrapaths; ``None`` when undefined."""
    if not x.word and not y.word:
        both = x.rng & y.rng
        return Ultrapath((), both) if both else None
    if not x.word:
        return y if x.rng & y.source_mask(U) else None
    if not y.word:
        both = x.rng & y.rng
        return Ultrapath(x.word, both) if both else None
    if (x.rng >> U.src[y.word[0]]) & 1:
        return Ultrapath(x.word + y.word, y.rng)
    return None


# -- infinite paths ------------------------------------------------------------------

@dataclass(frozen=True)
class AperiodicStream:
    """An infinite edge sequence given by a stateless index function.

    ``promise`` records the caller's (unverifiable) assertion that no two
    distinct shifts of the stream coincide.
    """

    name: str
    letter: Callable[[int], int] = field(compare=False, repr=False)
    promise: bool = True


def sqrt_stream(name: str, a: int, b: int, n: int = 2) -> AperiodicStream:
    """Sturmian-type sequence over edges ``a``/``b`` with slope ``sqrt(n) - floor(sqrt(n))``.

    ``n`` must not be a perfect square.
    """
    r = isqrt(n)
    if r * r == n:
        raise ValueError("n must not be a perfect square")

    def letter(i: int) -> int:
        # floor((i+1)*sqrt(n)) - floor(i*sqrt(n)) - floor(sqrt(n)) is 0 or 1
        d = isqrt(n * (i + 1) ** 2) - isqrt(n * i * i) - r
        return b if d else a

    return AperiodicStream(name, letter)


def _primitive(cycle: tuple) -> tuple:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


def least_rotation(cycle: tuple) -> tuple:
    return min(cycle[i:] + cycle[:i] for i in range(len(cycle)))


@dataclass(frozen=True)
class InfinitePath:
    """``prefix`` followed by either ``cycle`` repeated forever or the stream from ``offset`` on.

    Values are canonicalized on construction (minimal period, then minimal
    preperiod; for streams the prefix absorbs nothing the stream already
    supplies), so ``==`` decides equality of the realized paths.
    """

    prefix: Word = ()
    cycle: Word = ()
    stream: AperiodicStream | None = None
    offset: int = 0

    def __post_init__(self):
        prefix, cycle = tuple(self.prefix), tuple(self.cycle)
        if self.stream is None:
            if not cycle:
                raise ValueError("an eventually periodic path needs a nonempty cycle")
            cycle = _primitive(cycle)
            while prefix and prefix[-1] == cycle[-1]:
                prefix = prefix[:-1]
                cycle = cycle[-1:] + cycle[:-1]
        else:
            if cycle:
                raise ValueError("a streamed path has no cycle")
            off = self.offset
            while prefix and off > 0 and self.stream.letter(off - 1) == prefix[-1]:
                prefix = prefix[:-1]
                off -= 1
            object.__setattr__(self, "offset", off)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def periodic(cls, prefix, cycle) -> "InfinitePath":
        return cls(tuple(prefix), tuple(cycle))

    @classmethod
    def streamed(cls, stream: AperiodicStream, offset: int = 0, prefix=()) -> "InfinitePath":
        return cls(tuple(prefix), (), stream, offset)

    @property
    def is_periodic(self) -> bool:
        return self.stream is None

    @property
    def preperiod(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def letter(self, i: int) -> int:
        n = len(self.prefix)
        if i < n:
            return self.prefix[i]
        if self.stream is None:
            return self.cycle[(i - n) % len(self.cycle)]
        return self.stream.letter(self.offset + i - n)

    def take(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))

    def drop(self, n: int) -> "InfinitePath":
        k = len(self.prefix)
        if n <= k:
            return InfinitePath(self.prefix[n:], self.cycle, self.stream, self.offset)
        j = n - k
        if self.stream is None:
            j %= len(self.cycle)
            return InfinitePath((), self.cycle[j:] + self.cycle[:j])
        return InfinitePath((), (), self.stream, self.offset + j)

    def prepend(self, word) -> "InfinitePath":
        return InfinitePath(tuple(word) + self.prefix, self.cycle, self.stream, self.offset)

    def source(self, U: Ultragraph) -> int:
        return U.src[self.letter(0)]

    def check(self, U: Ultragraph, lookahead: int = 64) -> None:
        """Validate the path; streams are checked on their first ``lookahead`` letters."""
        if self.stream is None:
            word = self.prefix + self.cycle + self.cycle
        else:
            word = self.take(len(self.prefix) + lookahead)
        if not U.is_path(word):
            raise ValueError("not a valid infinite path")

    def sort_key(self):
        if self.stream is None:
            return (0, len(self.prefix), self.prefix, self.cycle)
        return (1, self.stream.name, len(self.prefix), self.prefix, self.offset)


def concat_infinite(U: Ultragraph, y: Ultrapath, gamma: InfinitePath) -> InfinitePath | None:
    """``y . gamma``, or ``None`` when ``s(gamma)`` is not in ``r(y)``."""
    if not (y.rng >> gamma.source(U)) & 1:
        return None
    return gamma.prepend(y.word)


def tau_le(p: InfinitePath, n: int) -> Word:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return p.take(n)


def tau_gt(p: InfinitePath, n: int) -> InfinitePath:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return p.drop(n)


def _stream_shift(p: InfinitePath) -> int:
    # p = prefix . tau_{>offset}(stream): letter i of the stream sits at
    # position i - offset + len(prefix) of p
    return len(p.prefix) - p.offset


def tail_equivalent(p: InfinitePath, q: InfinitePath) -> bool:
    """Whether tau_{>m}(p) = tau_{>n}(q) for some m, n >= 0."""
    if p.is_periodic and q.is_periodic:
        return least_rotation(p.cycle) == least_rotation(q.cycle)
    if p.is_periodic != q.is_periodic:
        return False    # an aperiodic stream never becomes periodic (promise)
    if p.stream != q.stream:
        raise UnsupportedComparison(f"unrelated streams {p.stream.name!r} and {q.stream.name!r}")
    return True


def shifted_tail_equal(p: InfinitePath, q: InfinitePath, k: int) -> bool:
    """Whether tau_{>m}(p) = tau_{>n}(q) for some m, n >= 0 with m - n = k."""
    if p.is_periodic and q.is_periodic:
        if len(p.cycle) != len(q.cycle):
            return False
        m0 = max(len(p.prefix), len(q.prefix) + k, k, 0)
        return any(p.drop(m) == q.drop(m - k) for m in range(m0, m0 + len(p.cycle)))
    if not tail_equivalent(p, q):
        return False
    return _stream_shift(p) - _stream_shift(q) == k


def tail_shift(p: InfinitePath, q: InfinitePath) -> int | None:
    """Some k with shifted_tail_equal(p, q, k), or None; unique up to multiples of the period."""
    if p.is_periodic and q.is_periodic:
        if not tail_equivalent(p, q):
            return None
        for k in range(-len(q.prefix) - len(q.cycle), len(p.prefix) + len(p.cycle) + 1):
            if shifted_tail_equal(p, q, k):
                return k
        return None
    if not tail_equivalent(p, q):
        return None
    return _stream_shift(p) - _stream_shift(q)


# -- shifted tails (module basis keys) -------------------------------------------------

@dataclass(frozen=True)
class ShiftedTail:
    """The infinite path ``u . tau_{>m}(base)``."""

    u: Word
    m: int
    base: InfinitePath

    def realize(self) -> InfinitePath:
        return self.base.drop(self.m).prepend(self.u)

    def sort_key(self):
        return (len(self.u), self.u, self.m)

    def canonicalize(self) -> "ShiftedTail":
        return canonicalize(self)


def canonicalize(st: ShiftedTail) -> ShiftedTail:
    """Absorb trailing letters of ``u`` into the base and reduce the shift.

    After this, two shifted tails over the same base are equal iff their
    realized paths are equal.
    """
    u, m, base = st.u, st.m, st.base
    pre = len(base.prefix)
    per = len(base.cycle) if base.is_periodic else 0
    while True:
        if per and m >= pre:
            m = pre + (m - pre) % per
        if not u:
            break
        if m >= 1 and base.letter(m - 1) == u[-1]:
            u, m = u[:-1], m - 1
        elif per and m == pre and base.letter(pre + per - 1) == u[-1]:
            u, m = u[:-1], pre + per - 1
        else:
            break
    return ShiftedTail(u, m, base)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
