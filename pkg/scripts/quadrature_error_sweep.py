#!/usr/bin/env python3
"""Oracle error sweep: closed-form vs quadrature overlap as panels vary.

The hardest grid pairs are a narrow state against a wide one at large
separation (the truncation window scales with the wide sigma, so the node
spacing is coarse relative to the narrow state).  The sweep shows how much
margin the default configuration leaves below the 1e-10 gate.
"""

import argparse

from qfixpoint.gaussian import GaussianState, QuadratureConfig, overlap_closed_form, overlap_quadrature

HARD_PAIRS = [
    (GaussianState(-10, 0.1), GaussianState(10, 10.0)),
    (GaussianState(0, 0.1), GaussianState(0, 10.0)),
    (GaussianState(-10, 10.0), GaussianState(10, 10.0)),
    (GaussianState(0, 0.1), GaussianState(0.5, 0.1)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--panels", type=int, nargs="+",
                    default=[64, 128, 256, 512, 1024, 2048, 4096])
    args = ap.parse_args()

    print(f"{'pair':>32} " + " ".join(f"{p:>9}" for p in args.panels))
    for a, b in HARD_PAIRS:
        closed = overlap_closed_form(a, b)
        errs = []
        for panels in args.panels:
            quad = overlap_quadrature(a, b, QuadratureConfig(panels=panels))
            errs.append(abs(quad - closed))
        label = f"({a.mu:g},{a.sigma:g})x({b.mu:g},{b.sigma:g})"
        print(f"{label:>32} " + " ".join(f"{e:9.1e}" for e in errs))


if __name__ == "__main__":
    main()
