import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from fraisselab import _kernels_py as py
from fraisselab import kernels

try:
    from fraisselab import _kernels as cy
except ImportError:  # extension not built
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")
FAMS = [py.FAM_PURE, py.FAM_RATIONALS, py.FAM_GRAPH, py.FAM_TOURNAMENT, py.FAM_S2]
seeds = st.integers(0, 2 ** 64 - 1)


@given(st.integers(0, 10 ** 9))
def test_index_key_bijection(i):
    assert py.index_of(py.key_of(i)) == i


def test_key_pairs_differ_by_one():
    for m in range(500):
        assert py.key_of(2 * m + 1) == py.key_of(2 * m) + py.ONE


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_cy
@given(st.integers(0, 10 ** 12), seeds)
def test_key_and_part_agree(i, seed):
    k = py.key_of(i)
    assert cy.key_of(i) == k
    assert cy.s2_part(seed, k) == py.s2_part(seed, k)


@needs_cy
@given(st.sampled_from(FAMS), seeds, st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_rel_bit_agrees(fam, seed, i, j):
    x, c = py.key_of(i), py.key_of(j)
    assert cy.rel_bit(fam, seed, x, c) == py.rel_bit(fam, seed, x, c)


@needs_cy
@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMS), seeds, st.lists(st.integers(0, 200), max_size=6, unique=True),
       st.integers(0, 50), st.sampled_from([-1, 0, 1]), st.randoms(use_true_random=False))
def test_scan_agrees(fam, seed, cons, start, part_want, rnd):
    ckeys = [py.key_of(c) for c in cons]
    masks = [rnd.choice([1, 2, 3]) for _ in cons]
    wants = [m & rnd.randrange(4) for m in masks]
    pw = part_want if fam == py.FAM_S2 else -1
    args = (fam, seed, start, start + 5000, ckeys, masks, wants, pw)
    assert cy.scan(*args) == py.scan(*args)


@needs_cy
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 6), st.booleans(), st.randoms(use_true_random=False))
def test_embeddings_agree(na, nb, bij, rnd):
    def codes(n):
        out = [0] * (n * n)
        for i in range(n):
            for j in range(i + 1, n):
                r = rnd.randrange(2)
                out[i * n + j] = 1 | (r << 1)
                out[j * n + i] = r << 1
        return out
    ac, bc = codes(na), codes(nb)
    au = [rnd.randrange(2) for _ in range(na)]
    bu = [rnd.randrange(2) for _ in range(nb)]
    lim = rnd.choice([-1, 3])
    assert [tuple(m) for m in cy.embeddings(na, ac, au, nb, bc, bu, lim, bij)] == \
        [tuple(m) for m in py.embeddings(na, ac, au, nb, bc, bu, lim, bij)]


def test_pure_backend_gives_identical_stages():
    code = ("from fraisselab import kernels; from fraisselab.limits import LimitHandle, LimitSpec;"
            "print(kernels.BACKEND);"
            "print(LimitHandle(LimitSpec.parse('s2', seed=3, expansion='order')).stage(40).dumps())")
    env = dict(os.environ, FRAISSELAB_PURE="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env.pop("FRAISSELAB_PURE")
    default = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert pure.stdout.splitlines()[0] == "python"
    assert pure.stdout.splitlines()[1:] == default.stdout.splitlines()[1:]
