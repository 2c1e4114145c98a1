import os
import subprocess
import sys
from itertools import product

import numpy as np
from hypothesis import given, settings, strategies as st

from artifact import kernels
from artifact.adlv import enumerate_brute_force
from artifact.eaw import ExtAffine, translation
from artifact.gallery import ChimneySpec, Gallery, Orientation, fold_stats
from artifact.rootdata import build_root_datum, weyl_group

DATA = {t: build_root_datum(t, 2) for t in "ABCG"}


def test_tables_shapes():
    R = DATA["G"]
    t = kernels.build_tables(R)
    assert t.wnext.shape == (12, 3) and t.wmu.shape == (12, 3, 2)
    assert t.roots.shape == (6, 2)
    # wnext is a permutation action of each letter
    for j in range(3):
        assert sorted(t.wnext[:, j]) == list(range(12))


@settings(max_examples=40)
@given(st.sampled_from("ABCG"), st.lists(st.integers(0, 2), max_size=9),
       st.integers(-2, 2), st.integers(-2, 2), st.integers(0, 11), st.integers(0, 11),
       st.sets(st.integers(1, 2), max_size=1), st.integers(1, 3))
def test_kernel_matches_brute_force(tag, types, a, b, k, m, par, workers):
    R = DATA[tag]
    W = weyl_group(R)
    start = ExtAffine((0, 0), W[0])
    spec = ChimneySpec.make(par, ExtAffine((a, b), W[m % len(W)]))
    o = Orientation(R, spec)
    masks, ps, fs = kernels.enumerate_masks(R, types, start, o, None, True, workers)
    brute = enumerate_brute_force(R, types, start, spec)
    expect = sorted(sum(1 << j for j, v in enumerate(g.mask) if v) for g in brute)
    assert list(masks) == expect
    for g, p, f in zip(sorted(brute, key=lambda g: sum(v << j for j, v in enumerate(g.mask))), ps, fs):
        s = fold_stats(g, o)
        assert (s.p, s.f) == (p, f)
    if brute:
        end = brute[k % len(brute)].end
        sub, _, _ = kernels.enumerate_masks(R, types, start, o, end, True, workers)
        assert list(sub) == [x for x, g in zip(expect, sorted(brute, key=lambda g: sum(v << j for j, v in enumerate(g.mask)))) if g.end == end]


def test_worker_split_is_deterministic():
    R = DATA["A"]
    o = Orientation(R, ChimneySpec.make({1}, translation(R, (0, 0))))
    types = (0, 1, 2, 1, 0, 1, 2, 1, 0, 2, 1)
    runs = [kernels.enumerate_masks(R, types, translation(R, (0, 0)), o, None, True, w) for w in (1, 2, 4)]
    for masks, ps, fs in runs[1:]:
        assert np.array_equal(masks, runs[0][0]) and np.array_equal(ps, runs[0][1])


def test_default_workers(monkeypatch):
    monkeypatch.setenv("ARTIFACT_WORKERS", "3")
    assert kernels.default_workers() == 3
    monkeypatch.setenv("ARTIFACT_WORKERS", "bogus")
    assert kernels.default_workers() == 1


def test_pure_python_fallback_agrees():
    code = (
        "from artifact import kernels\n"
        "from artifact.rootdata import build_root_datum\n"
        "from artifact.eaw import translation\n"
        "from artifact.gallery import ChimneySpec, Orientation\n"
        "R = build_root_datum('B', 2)\n"
        "o = Orientation(R, ChimneySpec.make({2}, translation(R, (1, 0))))\n"
        "m, p, f = kernels.enumerate_masks(R, (0,1,2,1,0,2,1,0), translation(R, (0, 0)), o)\n"
        "print(kernels.USING_NUMBA, list(m), list(p), list(f))\n"
    )
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, ARTIFACT_NO_NUMBA=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                   text=True, check=True).stdout.split(" ", 1))
    assert outs[0][0] == "False"
    assert outs[0][1] == outs[1][1]
