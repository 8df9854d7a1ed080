"""Distance of the small-dispersion coefficients to the zero-dispersion ones.

    python3 scripts/eps_sweep.py --t 1 --kmax 8
"""
import argparse

import numpy as np

from zdlab.fourier import TorusFunction
from zdlab.spectral import epsilon_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", type=float, default=1.0)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--K", type=int, default=512)
    ap.add_argument("--levels", type=int, default=7, help="number of halvings from 0.4")
    ap.add_argument("--perturb", action="store_true", help="use the datum 2cos x + eps cos 2x")
    args = ap.parse_args()
    u0 = TorusFunction.trig(0.0, [2.0])
    w = TorusFunction.trig(0.0, [0.0, 1.0]) if args.perturb else None
    eps = 0.4 * 0.5 ** np.arange(args.levels)
    print("epsilon,k_max,max_abs_error")
    for r in epsilon_sweep(u0, args.t, args.kmax, eps, args.K, perturbation=w):
        print(f"{r.epsilon:.17g},{r.k_max},{r.max_abs_error:.17g}")


if __name__ == "__main__":
    main()
