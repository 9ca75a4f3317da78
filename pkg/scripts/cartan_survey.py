#!/usr/bin/env python3
"""Survey of the Cartan-model corpus: equivariant series, truncation
stability, and the SU(2)-style torus-Weyl comparison on the point.
"""

import argparse
import sys

from stackcoh.cartan import (
    abelian_lie, cartan_cohomology, invariant_polynomials, torus_weyl_check,
)
from stackcoh.exactalg import QQ, Mat
from stackcoh.models import CARTAN_CORPUS, point_algebra


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--poly-trunc", type=int, default=None,
                        help="override the per-instance truncation")
    args = parser.parse_args()

    failures = 0
    for inst in CARTAN_CORPUS:
        poly_trunc = args.poly_trunc or inst.poly_trunc
        safe = 2 * poly_trunc - inst.algebra.top
        dims = cartan_cohomology(inst.lie, inst.algebra, poly_trunc,
                                 range(safe + 1))
        print(f"{inst.name:16s} P={poly_trunc}  H_G = {dims}")
        if args.poly_trunc is None and dims != inst.expected:
            print(f"    MISMATCH, expected {inst.expected}")
            failures += 1

    sign = [Mat.from_rows([[-1]], QQ)]
    series = invariant_polynomials(abelian_lie(1), sign, 8)
    print(f"invariant polynomials, sign Weyl datum: {series}")
    check = torus_weyl_check(abelian_lie(1), point_algebra(), 6, sign,
                             [(Mat.identity(1, QQ),)], degrees=range(9))
    print(f"torus-Weyl series on the point: {check.series} "
          f"[{'ok' if check.ok else 'FAIL'}]")
    failures += 0 if check.ok else 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
