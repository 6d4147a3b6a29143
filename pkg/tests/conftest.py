import random
import sys
from pathlib import Path

import pytest

from ulpa.ultragraph import Ultragraph

GOLDEN = Path(__file__).parent / "golden"


def make_U1():
    return Ultragraph.build(["v", "w"], [("e", "v", ["v", "w"]), ("f", "w", ["w"])])


def make_U2():
    return Ultragraph.build(["v"], [("l", "v", ["v"])])


def make_U3():
    return Ultragraph.build(["v"], [("a", "v", ["v"]), ("b", "v", ["v"])])


def make_U4():
    return Ultragraph.build(["v", "w"], [("e", "v", ["w"])])


def random_ultragraph(rng: random.Random, max_v: int = 5, max_e: int = 8, sink_free: bool = False):
    n = rng.randint(1, max_v)
    names = [f"v{i}" for i in range(n)]
    m = rng.randint(n if sink_free else 0, max(max_e, n) if sink_free else max_e)
    sources = list(range(n)) if sink_free else []
    sources += [rng.randrange(n) for _ in range(m - len(sources))]
    edges = []
    for i, s in enumerate(sources):
        rng_set = [names[j] for j in range(n) if rng.random() < 0.4] or [rng.choice(names)]
        edges.append((f"e{i}", names[s], rng_set))
    return Ultragraph.build(names, edges)


@pytest.fixture
def U1():
    return make_U1()


@pytest.fixture
def U2():
    return make_U2()


@pytest.fixture
def U3():
    return make_U3()


@pytest.fixture
def U4():
    return make_U4()


@pytest.fixture
def rng():
    return random.Random(20241016)


def relation_elements(alg, all_sets: bool = True):
    """(label, element) for every instance of the four defining relation families;
    each element is zero in the algebra.  Written independently of the library's
    own relation helpers."""
    from ulpa.ultragraph import generate_G0
    U = alg.U
    sets = sorted(generate_G0(U)) if all_sets else sorted({1 << v for v in range(U.n_vertices)} | set(U.rng))
    P = alg.p_mask
    out = [("p_empty", alg.mono((), 1, ()) * alg.mono((), 1, ()) - alg.mono((), 1, ()))]
    for A in sets:
        for B in sets:
            out.append((f"(1a) {A},{B}", P(A) * P(B) - (P(A & B) if A & B else alg.zero())))
            out.append((f"(1b) {A},{B}", P(A | B) - P(A) - P(B) + (P(A & B) if A & B else alg.zero())))
    for e in range(U.n_edges):
        name = U.edge_names[e]
        s, ss = alg.s(name), alg.s_star(name)
        out.append((f"(2a) {name}", P(1 << U.src[e]) * s - s))
        out.append((f"(2b) {name}", s * P(U.rng[e]) - s))
        for g in range(U.n_edges):
            rhs = P(U.rng[e]) if e == g else alg.zero()
            out.append((f"(3) {name},{U.edge_names[g]}", ss * alg.s(U.edge_names[g]) - rhs))
    for v in range(U.n_vertices):
        out_edges = [e for e in range(U.n_edges) if U.src[e] == v]
        if out_edges:
            rhs = alg.zero()
            for e in out_edges:
                rhs = rhs + alg.s(U.edge_names[e]) * alg.s_star(U.edge_names[e])
            out.append((f"(4) {U.vertex_names[v]}", P(1 << v) - rhs))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
