"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 20] [--size 4000]

Also times one end-to-end entropy sweep under each backend, in a subprocess
so the import-time backend choice is honoured.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from wehrlkit import _core_py

try:
    from wehrlkit import _core
except ImportError:
    _core = None

SWEEP = (
    "from wehrlkit.entropy import wehrl_numeric\n"
    "from wehrlkit.phase_space import Pure, make_density\n"
    "for m in range(8):\n"
    "    for j in range(8):\n"
    "        wehrl_numeric(make_density(Pure(m, j)))\n"
)


def kernel_cases(size):
    lam = np.linspace(0.0, 60.0, size)
    q = np.exp(-lam)
    coeffs = np.linspace(1.0, 0.1, 12)
    return {
        "laguerre n=20": lambda mod: mod.laguerre(20, 3.0, lam),
        "laguerre n=2": lambda mod: mod.laguerre(2, 1.0, lam),
        "rakhmanov n=12": lambda mod: mod.rakhmanov(12, 4, -8.0, lam),
        "exp_poly deg=11": lambda mod: mod.exp_poly(coeffs, 0.7, lam),
        "neg_xlogx": lambda mod: mod.neg_xlogx(q),
    }


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def sweep_time(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("WEHRLKIT_PURE_PYTHON", None)
    if pure:
        env["WEHRLKIT_PURE_PYTHON"] = "1"
    code = f"import time\nt=time.perf_counter()\n{SWEEP}print(time.perf_counter()-t)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--size", type=int, default=4000)
    args = ap.parse_args(argv)

    if _core is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<18}{'numpy us':>12}{'compiled us':>14}{'speedup':>10}")
    for name, fn in kernel_cases(args.size).items():
        t_py = best_of(lambda: fn(_core_py), args.repeat) * 1e6
        if _core is None:
            print(f"{name:<18}{t_py:12.1f}{'-':>14}{'-':>10}")
            continue
        t_c = best_of(lambda: fn(_core), args.repeat) * 1e6
        print(f"{name:<18}{t_py:12.1f}{t_c:14.1f}{t_py / t_c:10.2f}")

    t_py = sweep_time(pure=True)
    line = f"\nentropy sweep m,j<8: fallback {t_py:.3f} s"
    if _core is not None:
        t_c = sweep_time(pure=False)
        line += f", compiled {t_c:.3f} s, speedup {t_py / t_c:.2f}"
    print(line)


if __name__ == "__main__":
    main()
