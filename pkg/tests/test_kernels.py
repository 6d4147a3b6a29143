"""Differential tests: the compiled kernels against the pure-Python reference."""

import os
import random
import subprocess
import sys

import pytest

from conftest import make_U1, make_U3, random_ultragraph
from ulpa import _kernels_py as ref
from ulpa import kernels
from ulpa.algebra import Algebra, random_element

compiled = pytest.importorskip("ulpa._kernels")


def _cases():
    rng = random.Random(21)
    graphs = [make_U1(), make_U3()] + [random_ultragraph(rng, max_v=4, max_e=6) for _ in range(10)]
    for U in graphs:
        alg = Algebra(U)
        for _ in range(20):
            yield U, random_element(alg, rng, n_terms=4), random_element(alg, rng, n_terms=4)


def test_backend_selected():
    expected = "python" if os.environ.get("ULPA_PURE_PYTHON") else "cython"
    assert kernels.BACKEND == expected


def test_kernels_agree():
    for U, a, b in _cases():
        ta = {tuple(m): c for m, c in a.terms.items()}
        tb = {tuple(m): c for m, c in b.terms.items()}
        assert compiled.mul_terms(ta, tb, U.src) == ref.mul_terms(ta, tb, U.src)
        assert compiled.split_singletons(ta) == ref.split_singletons(ta)
        for reduce in (False, True):
            assert (compiled.normalize_terms(ta, U.src, U.rng, U.out_edges, reduce)
                    == ref.normalize_terms(ta, U.src, U.rng, U.out_edges, reduce))


def test_pure_python_fallback_runs():
    code = ("import ulpa; from ulpa.kernels import BACKEND; assert BACKEND == 'python';"
            "from ulpa.expr import parse_element; from ulpa.algebra import Algebra, is_zero;"
            "from ulpa.ultragraph import Ultragraph;"
            "U = Ultragraph.build(['v','w'], [('e','v',['v','w']), ('f','w',['w'])]);"
            "assert is_zero(parse_element(Algebra(U), 'p{v} - s[e]*s*[e]'))")
    env = dict(os.environ, ULPA_PURE_PYTHON="1")
    subprocess.run([sys.executable, "-c", code], env=env, check=True)
