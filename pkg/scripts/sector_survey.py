#!/usr/bin/env python3
"""Print the full sector bookkeeping of the open chain for n=2.

For each sector k: the predicted eigenvalue count m_k, the observed
highest-weight eigenvalues, ladder length, and the worst residuals of the
closed-form ladder coefficients.  Totals are checked against 2^N.
"""

import argparse
import sys

from braidlab import spectra


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=6)
    ap.add_argument("--q", type=float, default=1.5)
    args = ap.parse_args()

    deco = spectra.diagonalize(spectra.OpenChain(2, args.N, args.q))
    rep = spectra.classify_sectors(deco, args.q)
    print(f"open chain n=2, N={args.N}, q={args.q}")
    print(f"{'k':>3} {'m_k':>5} {'d_k':>5} {'eigenvalues':<48} {'kappa_res':>10}")
    total = 0
    for k in sorted(rep.sectors):
        lads = rep.sectors[k]
        m_k = spectra.sector_multiplicity(args.N, k)
        d_k = spectra.sector_dimension(args.N, k)
        values = ", ".join(f"{lad.eigenvalue:.6g}" for lad in lads[:5])
        if len(lads) > 5:
            values += f", ... ({len(lads)} total)"
        worst = max((lad.kappa_residual for lad in lads), default=0.0)
        print(f"{k:>3} {m_k:>5} {d_k:>5} {values:<48} {worst:>10.2e}")
        total += m_k * d_k
    print(f"sum m_k d_k = {total} = 2^{args.N}: {total == 2 ** args.N}")
    if rep.warnings:
        print("warnings:")
        for w in rep.warnings:
            print(" ", w)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
