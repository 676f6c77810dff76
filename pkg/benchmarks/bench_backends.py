"""Benchmark the numba kernel lane against the pure-numpy fallback.

Imports both implementations directly (bypassing the ANNEAL_LRT_BACKEND
switch) and times matched calls on identical inputs, reporting medians,
speedups and the worst relative disagreement.

    python benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

import numpy as np

from anneal_lrt import _kernels_numpy as knp
from anneal_lrt.spectral import ChainParams, build_modes

try:
    from anneal_lrt import _kernels_numba as knb
except ImportError:
    knb = None


def median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def rel_diff(a, b):
    a, b = np.atleast_1d(np.asarray(a)), np.atleast_1d(np.asarray(b))
    scale = np.maximum(np.abs(b), 1e-300)
    return float(np.max(np.abs(a - b) / scale))


def build_cases(quick):
    n_times = 500 if quick else 4000
    n_si = 100_000 if quick else 1_000_000
    modes = build_modes(ChainParams(j=1.0, gamma0=0.999995, n_spins=10_000))
    amps, omegas = modes.amplitudes, modes.omegas
    ts = np.linspace(0.0, 500.0, n_times)
    xs = np.geomspace(1e-3, 1e6, n_si)
    taus = np.geomspace(3.0, 3e4, 60 if quick else 120)

    rng = np.random.default_rng(0)
    seg_modes = build_modes(ChainParams(j=1.0, gamma0=0.5, n_spins=64))
    knots = np.concatenate([[0.0], np.sort(rng.uniform(0, 10.0, 63)), [10.0]])
    rates = rng.uniform(0.0, 1.0, knots.size - 1)

    return [
        (
            f"psi_bar batch ({len(amps)} modes x {n_times} t)",
            lambda k: k.psi_bar_many(amps, omegas, ts),
        ),
        (
            f"sine integral ({n_si:,} points)",
            lambda k: k.si_many(xs),
        ),
        (
            f"affine TA work ({len(taus)} taus)",
            lambda k: [k.work_affine(amps, omegas, float(t), 1) for t in taus],
        ),
        (
            f"optimal TA work ({len(taus)} taus)",
            lambda k: [k.opt_ta_sum(amps, omegas, float(t), 317.1) for t in taus],
        ),
        (
            f"piecewise work ({len(seg_modes.amplitudes)} modes x {rates.size} segments)",
            lambda k: k.work_segments(
                seg_modes.amplitudes, seg_modes.omegas, knots, rates, 1
            ),
        ),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller problem sizes")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    cases = build_cases(args.quick)
    if knb is None:
        print("numba not importable: timing the numpy lane only")

    header = f"{'kernel':<48} {'numpy':>10} {'numba':>10} {'speedup':>8} {'max rel diff':>13}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        ref = call(knp)
        t_np = median_time(lambda: call(knp), args.repeats)
        if knb is None:
            print(f"{name:<48} {t_np * 1e3:>8.2f}ms {'-':>10} {'-':>8} {'-':>13}")
            continue
        call(knb)  # JIT warmup
        got = call(knb)
        t_nb = median_time(lambda: call(knb), args.repeats)
        print(
            f"{name:<48} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
            f"{t_np / t_nb:>7.1f}x {rel_diff(got, ref):>13.2e}"
        )


if __name__ == "__main__":
    main()
