#!/usr/bin/env python3
"""Times the numba kernels against the pure-numpy fallbacks.

The package picks its backend from IRS_NOMA_BACKEND at import; this script
side-steps the switch and calls both implementations directly so one run
produces the comparison. The two paths must also agree on the result, so
this doubles as a consistency check.
"""

import argparse
import time

import numpy as np

from irs_noma._accel import NUMBA_ENABLED
from irs_noma.channel import SystemConfig, sample_scenario
from irs_noma.noma import sinr_noma
from irs_noma.oracle import GridSpec, _search_loop_jit, _search_numpy, grid_index


def time_calls(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--users", type=int, default=4)
    parser.add_argument("--elements", type=int, default=4)
    parser.add_argument("--grid-steps", type=int, default=16)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--sinr-calls", type=int, default=20000)
    args = parser.parse_args()

    cfg = SystemConfig(num_users=args.users, num_elements=args.elements,
                       dist_user_min_m=10, dist_user_max_m=100)
    grid = GridSpec(args.elements, args.grid_steps)
    channels = sample_scenario(cfg, np.random.default_rng(0))
    a = np.conj(channels.h_r) * channels.h_t[None, :]
    table = np.exp(1j * 2 * np.pi / args.grid_steps * np.arange(args.grid_steps))
    pk = cfg.power_coeffs * cfg.tx_power_watts
    sigma2 = cfg.noise_watts
    eps = cfg.sic_residual_eps

    print(f"grid search: K={args.users} M={args.elements} N={args.grid_steps} "
          f"({grid.total_combinations} combinations), best of {args.repeat}")
    t_np, out_np = time_calls(lambda: _search_numpy(a, table, pk, sigma2, eps),
                              args.repeat)
    print(f"  numpy  {1e3 * t_np:9.2f} ms   idx={out_np[0]} rate={out_np[1]:.6f}")
    if NUMBA_ENABLED:
        _search_loop_jit(a, table, pk, sigma2, eps)  # compile outside the clock
        t_nb, out_nb = time_calls(lambda: _search_loop_jit(a, table, pk, sigma2, eps),
                                  args.repeat)
        print(f"  numba  {1e3 * t_nb:9.2f} ms   idx={out_nb[0]} rate={out_nb[1]:.6f}"
              f"   ({t_np / t_nb:.1f}x vs numpy)")
        assert out_nb[0] == out_np[0]
        assert abs(out_nb[1] - out_np[1]) < 1e-9
    else:
        print("  numba  unavailable (IRS_NOMA_BACKEND=numpy or numba not installed)")

    print(f"\nper-step SINR path: {args.sinr_calls} calls "
          f"(backend as imported: {'numba' if NUMBA_ENABLED else 'numpy'})")
    gains = a.sum(axis=1)
    sinr_noma(gains, cfg.tx_power_watts, cfg.power_coeffs, sigma2, eps)
    t0 = time.perf_counter()
    for _ in range(args.sinr_calls):
        sinr_noma(gains, cfg.tx_power_watts, cfg.power_coeffs, sigma2, eps)
    dt = time.perf_counter() - t0
    print(f"  {1e6 * dt / args.sinr_calls:7.2f} us/call, {dt:.2f} s total")


if __name__ == "__main__":
    main()
