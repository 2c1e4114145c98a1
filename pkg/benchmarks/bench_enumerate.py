"""Compare the compiled enumeration kernel with its pure-Python source.

    python3 benchmarks/bench_enumerate.py [--lambda 4,4] [--repeat 3]

Both paths run the same depth-first search on the same integer tables, over
all positively folded galleries of type t^lam w0 for the (B, w0)-chimney.
"""

import argparse
import time

import numpy as np

from artifact import kernels
from artifact.eaw import ExtAffine, base_alcove, reduced_affine_word, sheet, translation
from artifact.gallery import ChimneySpec, Orientation
from artifact.rootdata import build_root_datum


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", default="A")
    ap.add_argument("--lambda", dest="lam", default="5,5")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    R = build_root_datum(args.type, 2)
    lam = tuple(int(c) for c in args.lam.split(","))
    x = ExtAffine(lam, R.w0)
    start = base_alcove(R, sheet(R, x))
    word = reduced_affine_word(R, x, start)
    o = Orientation(R, ChimneySpec.make((), ExtAffine((0, 0), R.w0)))
    tables = kernels.build_tables(R)
    chim = kernels.chimney_arrays(R, o)
    types = np.array(word, dtype=np.int64)
    w0 = tables.index[start.w]
    lam0 = np.array(start.lam, dtype=np.int64)
    tlam = np.zeros(R.rank, dtype=np.int64)

    def run(dfs):
        return dfs(types, 0, lam0, w0, 0, 0, 0, tables.roots, tables.wnext, tables.wmu, tables.hroot,
                   tables.hsign, tables.kwall, tables.bw_rho, tables.h, *chim, False, tlam, 0, False)

    print(f"{args.type}2 lambda={lam}: type length {len(word)}, numba={kernels.USING_NUMBA}")
    if kernels.USING_NUMBA:
        run(kernels._dfs)  # compile (or load from cache) outside the timing
        t_jit, out_jit = _time(lambda: run(kernels._dfs), args.repeat)
        t_py, out_py = _time(lambda: run(kernels._dfs.py_func), 1)
        assert np.array_equal(np.sort(out_jit[0]), np.sort(out_py[0]))
        print(f"galleries: {len(out_jit[0])}")
        print(f"numba  {t_jit * 1e3:9.2f} ms")
        print(f"python {t_py * 1e3:9.2f} ms  (x{t_py / t_jit:.0f})")
    else:
        t_py, out_py = _time(lambda: run(kernels._dfs), 1)
        print(f"galleries: {len(out_py[0])}\npython {t_py * 1e3:9.2f} ms")


if __name__ == "__main__":
    main()
