"""Wall-clock comparison of the compiled and pure-Python solver kernels.

Both backends implement identical arithmetic, so results must match exactly;
this script reports the real-time speedup of the compiled extension on the
dynamic-programming and branch-and-bound kernels.

Run:  python3 benchmarks/bench_backends.py [--sizes 50,100,200] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from sla_select.instances import GeneratorSpec, Variant, generate_instance
from sla_select.solvers import _kernels_py as pure

try:
    from sla_select.solvers import _kernels as compiled
except ImportError:  # pragma: no cover - extension not built
    compiled = None


def _time_call(fn, *args, repeats: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_dp(backend, instance, repeats: int):
    w = instance.weights()
    p = instance.profits()
    return _time_call(backend.dp_max_kernel, w, p, instance.capacity, repeats=repeats)


def bench_bnb(backend, instance, repeats: int):
    w, p = instance.weights(), instance.profits()
    order = np.argsort(-(p / w), kind="stable")
    w, p = w[order], p[order]
    return _time_call(
        backend.bnb_max_kernel, w, p, instance.capacity, 10**12, repeats=repeats
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,100,200")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if compiled is None:
        print("compiled extension not available; build it with `pip install -e .`")
        return

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'kernel':<10}{'n':>6}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}  match")
    for n in sizes:
        spec = GeneratorSpec(
            n=n, capacity_fraction=0.5, correlation=0.6, noise_sigma=20.0,
            weight_max=1000, seed=args.seed, variant=Variant.MAX,
        )
        instance = generate_instance(spec)
        for name, bench in (("dp_max", bench_dp), ("bnb_max", bench_bnb)):
            t_pure, r_pure = bench(pure, instance, args.repeats)
            t_comp, r_comp = bench(compiled, instance, args.repeats)
            match = r_pure[0] == r_comp[0] and r_pure[2:] == r_comp[2:]
            speedup = t_pure / t_comp if t_comp > 0 else float("inf")
            print(f"{name:<10}{n:>6}{t_pure:>12.5f}{t_comp:>14.5f}{speedup:>9.1f}x  {match}")


if __name__ == "__main__":
    main()
