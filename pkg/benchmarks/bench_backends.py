"""Time the compiled kernel against the pure-Python reference.

Runs the packaged default scenario repeatedly through each backend and then
times one full optimization, printing per-run milliseconds and the speedup.
The two kernels return bit-identical arrays, so this is purely a wall-clock
comparison.

Usage: python3 benchmarks/bench_backends.py [repeats]
"""

import sys
import time

from pandecon import backends, epidemic, optimizer
from pandecon.scenario import load_fixture


def time_simulations(scn, repeats):
    path = (0, 2, 1, 0)
    args = (scn.epidemic, scn.effects, scn.schedule(), path)
    epidemic.simulate(*args)  # warm-up (schedule derivation, caches)
    started = time.perf_counter()
    for _ in range(repeats):
        epidemic.simulate(*args)
    return (time.perf_counter() - started) / repeats


def time_optimize(scn):
    started = time.perf_counter()
    optimizer.optimize_dp(scn)
    return time.perf_counter() - started


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    scn = load_fixture("default")
    n_steps = scn.epidemic.n_steps

    available = ["python"]
    if backends.get_backend("compiled") is not None:
        available.insert(0, "compiled")
    else:
        print("compiled extension not built; timing the pure-Python kernel only")

    sim_ms = {}
    opt_s = {}
    for name in available:
        with backends.use(name):
            sim_ms[name] = 1000.0 * time_simulations(scn, repeats)
            opt_s[name] = time_optimize(scn)

    print("default scenario, %d steps per run, %d runs per backend" % (n_steps, repeats))
    for name in available:
        print(
            "  %-8s  simulate %8.3f ms/run   optimize_dp %7.3f s"
            % (name, sim_ms[name], opt_s[name])
        )
    if len(available) == 2:
        print(
            "  speedup   simulate %8.1fx        optimize_dp %7.1fx"
            % (sim_ms["python"] / sim_ms["compiled"], opt_s["python"] / opt_s["compiled"])
        )


if __name__ == "__main__":
    main()
