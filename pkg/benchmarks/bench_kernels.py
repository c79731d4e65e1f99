"""Compare the compiled and pure-Python kernels on random families.

    python3 benchmarks/bench_kernels.py [--ns 6 8 10 12] [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import timeit

from oshlab.kernels import _pykernel

try:
    from oshlab.kernels import _ckernel
except ImportError:
    _ckernel = None


def random_members(n: int, q: float, seed: int) -> list[int]:
    rng = random.Random(f"bench:{n}:{seed}")
    return [x for x in range(1 << n) if rng.random() < q]


def shift_all(mod, members, n):
    for j in range(1, n + 1):
        members = mod.PackedFamily(members, n).shift(j)
    return members


def workloads(mod, members, n):
    fam = mod.PackedFamily(members, n)
    targets = fam.osh_all(True)
    return {
        "osh_all": lambda: fam.osh_all(),
        "osh_all(prune)": lambda: fam.osh_all(True),
        "shift T(F)": lambda: shift_all(mod, members, n),
        "witness x all": lambda: [fam.witness(s) for s in targets],
        "sh_all": lambda: fam.sh_all(),
        "longest_chain": lambda: mod.longest_chain(members, n),
    }


def _canon(x):
    return sorted(map(repr, x)) if isinstance(x, (list, tuple)) else x


def best_of(fn, repeat: int) -> float:
    timer = timeit.Timer(fn)
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[6, 8, 10, 12])
    ap.add_argument("--q", type=float, default=0.5, help="membership probability")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _ckernel is None:
        print("compiled kernel not built; reinstall with Cython available")
    print(f"{'n':>3} {'|F|':>6} {'workload':<16} {'python':>12} {'cython':>12} {'speedup':>8}")
    for n in args.ns:
        members = random_members(n, args.q, args.seed)
        py = workloads(_pykernel, members, n)
        cy = workloads(_ckernel, members, n) if _ckernel else {}
        for name, fn in py.items():
            if name == "sh_all" and n > 10:
                continue  # 3^n subset walk; too slow in pure Python at this size
            t_py = best_of(fn, args.repeat)
            if name in cy:
                assert _canon(fn()) == _canon(cy[name]()), name
                t_cy = best_of(cy[name], args.repeat)
                print(f"{n:>3} {len(members):>6} {name:<16} {t_py * 1e3:>10.3f}ms {t_cy * 1e3:>10.3f}ms"
                      f" {t_py / t_cy:>7.1f}x")
            else:
                print(f"{n:>3} {len(members):>6} {name:<16} {t_py * 1e3:>10.3f}ms {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
