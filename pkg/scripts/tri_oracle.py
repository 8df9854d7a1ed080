"""Compare the three routes to the zero-dispersion limit on one datum.

    python3 scripts/tri_oracle.py --t 0.1,0.3,1 --K 512 --kmax 32
"""
import argparse

import numpy as np

from zdlab.characteristics import CausticError, alternating_sum, branches
from zdlab.fourier import TorusFunction, grid_points
from zdlab.kinetic import as_coefficient, as_hardy_log, as_profile
from zdlab.spectral import resolvent_hardy, zd_coefficients, zd_profile

DATA = {
    "2cos": TorusFunction.trig(0.0, [2.0]),
    "cos+0.5cos3": TorusFunction.trig(0.0, [1.0, 0.0, 0.5]),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", default="0.1,0.3,1")
    ap.add_argument("--K", type=int, default=512)
    ap.add_argument("--kmax", type=int, default=32)
    ap.add_argument("--grid", type=int, default=128)
    args = ap.parse_args()
    times = [float(s) for s in args.t.split(",")]
    print("datum,t,coef_diff,hardy_diff,profile_spec_quad,profile_quad_char")
    for name, u in DATA.items():
        x = grid_points(args.grid)
        for t in times:
            c = zd_coefficients(u, t, args.kmax, args.K)
            ref = np.array([as_coefficient(u, t, k) for k in range(args.kmax + 1)])
            hardy = max(abs(resolvent_hardy(u, t, z, args.K) - as_hardy_log(u, t, z))
                        for z in (0.3, 0.5j, -0.4))
            spec = zd_profile(u, t, args.K, args.K // 8)(x)
            quad = as_profile(u, t, x)
            char = []
            for xi in x:
                try:
                    char.append(alternating_sum(branches(u, t, xi)))
                except CausticError:
                    char.append(np.nan)
            char = np.array(char)
            ok = ~np.isnan(char)
            print(f"{name},{t:g},{np.max(np.abs(c - ref)):.3e},{hardy:.3e},"
                  f"{np.max(np.abs(spec - quad)):.3e},{np.max(np.abs(quad[ok] - char[ok])):.3e}")


if __name__ == "__main__":
    main()
