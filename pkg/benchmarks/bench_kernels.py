"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from ecoplan import _kernels_py, bundled, kernels


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    compiled = kernels.compiled_module()
    prob = bundled.problem()
    spec = prob.spec
    sweep_args = (prob.coef, spec.speeds, spec.ds, prob.stage_sin, prob.stage_cos, spec.goal.vidx)
    row_args = (prob.coef, spec.speeds, spec.n_speeds // 2, spec.ds,
                float(prob.stage_sin[40]), float(prob.stage_cos[40]))

    cases = [("dp_sweep (full benchmark grid)", "dp_sweep", sweep_args, 1),
             ("edge_row (x1000)", "edge_row", row_args, 1000)]
    backends = [("python", _kernels_py)] + ([("compiled", compiled)] if compiled else [])

    print(f"grid: {spec.n_stages} stages x {spec.n_speeds} speeds")
    for label, name, fn_args, number in cases:
        times = {}
        for backend, mod in backends:
            fn = getattr(mod, name)
            times[backend] = min(timeit.repeat(lambda: fn(*fn_args), number=number,
                                               repeat=args.repeat))
        line = "  ".join(f"{b} {t * 1e3:9.2f} ms" for b, t in times.items())
        if "compiled" in times:
            line += f"  speedup {times['python'] / times['compiled']:.1f}x"
        print(f"{label:32s} {line}")
    if compiled is None:
        print("compiled extension not built; only the fallback was timed")
    else:
        a = compiled.dp_sweep(*sweep_args)[0]
        b = _kernels_py.dp_sweep(*sweep_args)[0]
        print("cost-to-go tables bit-identical:", bool(np.array_equal(a, b)))


if __name__ == "__main__":
    main()
