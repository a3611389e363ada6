"""Compare the compiled and pure-Python subset-construction kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from idealsync import _pykernels
from idealsync.languages import principal_ideal
from idealsync.synchro import cerny_automaton, full_mask, rc_search

try:
    from idealsync import _ckernels
except ImportError:
    _ckernels = None


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases():
    for n in (8, 10, 12):
        C = cerny_automaton(n)
        flat = C.base.flat()
        yield f"power_closure C_{n}", lambda k, f=flat, n=n: k.power_closure(f, n, 2, (1 << n) - 1, 1 << 20)
    A = cerny_automaton(10)
    T = principal_ideal("abaab", "ab").acceptor
    fin = [q in T.finals for q in T.states]
    yield "power_equals_dfa C_10 vs ideal", lambda k: k.power_equals_dfa(
        A.base.flat(), 10, 2, full_mask(A), T.base.flat(), T.initial, fin
    )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'case':34s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases():
        py = _best(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:34s} {py * 1e3:10.2f}")
            continue
        cy = _best(lambda: fn(_ckernels), args.repeat)
        print(f"{name:34s} {py * 1e3:10.2f} {cy * 1e3:10.2f} {py / cy:8.1f}x")

    # end-to-end: the exhaustive 4-state search, with each backend swapped in
    from idealsync import kernels

    for label, mod in (("python", _pykernels), ("cython", _ckernels)):
        if mod is None:
            continue
        saved = kernels.power_equals_dfa
        kernels.power_equals_dfa = mod.power_equals_dfa
        try:
            t = time.perf_counter()
            rc_search("aba", "ab", 4)
            print(f"rc_search aba n<=4 ({label}): {(time.perf_counter() - t) * 1e3:.0f} ms")
        finally:
            kernels.power_equals_dfa = saved


if __name__ == "__main__":
    main()
