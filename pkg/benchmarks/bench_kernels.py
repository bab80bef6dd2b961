"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py [--degree 500] [--repeat 5]

Times mul, divmod, gcd and series_div on dense polynomials over a few fields,
plus one end-to-end workload (exact relation checks at d = 3) under each
backend in a subprocess.
"""
import argparse
import os
import subprocess
import sys
import timeit

from fqzeta import _kernels_py as PY
from fqzeta.field import field_for_q

try:
    from fqzeta import _kernels as CY
except ImportError:
    CY = None

END_TO_END = (
    "from fqzeta.relations import derive_relation, verify_relation_exact\n"
    "for w in range(2, 17):\n"
    "    for a in range(1, w):\n"
    "        assert verify_relation_exact(derive_relation(3, a, w - a), 3)[0]\n"
)


def poly(q, n, seed):
    out = [(seed * 131 + 7 * i * i + 3 * i) % q for i in range(n)]
    out[-1] = out[-1] or 1
    return out


def bench_ops(q, deg, repeat):
    F = field_for_q(q)
    a, b = poly(q, deg + 1, 1), poly(q, deg // 2 + 1, 2)
    b[0] = b[0] or 1
    cases = {
        "mul": lambda K: K.mul(a, a, F),
        "divmod": lambda K: K.divmod_(a, b, F),
        "gcd": lambda K: K.gcd(a, b, F),
        "series_div": lambda K: K.series_div(a, b, deg, F),
    }
    rows = []
    for name, fn in cases.items():
        t_py = min(timeit.repeat(lambda: fn(PY), number=1, repeat=repeat))
        t_cy = min(timeit.repeat(lambda: fn(CY), number=1, repeat=repeat)) if CY else float("nan")
        rows.append((q, name, t_py, t_cy))
    return rows


def bench_end_to_end():
    times = {}
    for backend in ("python", "cython"):
        env = dict(os.environ, FQZETA_BACKEND=backend)
        code = "import time; t = time.perf_counter()\n" + END_TO_END + "print(time.perf_counter() - t)"
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        times[backend] = float(res.stdout) if res.returncode == 0 else float("nan")
    return times


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if CY is None:
        print("compiled kernels not built; only the Python timings are meaningful")
    print(f"{'q':>4} {'op':<11} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for q in (2, 3, 9, 251):
        for q_, name, t_py, t_cy in bench_ops(q, args.degree, args.repeat):
            print(f"{q_:>4} {name:<11} {1e3 * t_py:12.2f} {1e3 * t_cy:12.2f} {t_py / t_cy:8.1f}x")
    e2e = bench_end_to_end()
    print(f"\nexact relation checks at d=3, q=3, a+b<=16: "
          f"python {e2e['python']:.2f}s, cython {e2e['cython']:.2f}s, "
          f"speedup {e2e['python'] / e2e['cython']:.1f}x")


if __name__ == "__main__":
    main()
