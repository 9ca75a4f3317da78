#!/usr/bin/env python3
"""Classifying-space tower for a cyclic group: Betti table of the
homotopy quotient of the point, the E_2 page of the group-filtration
spectral sequence, and the bar-resolution cross-check.
"""

import argparse
import sys

from stackcoh.exactalg import GF, QQ
from stackcoh.groupcoh import bar_complex, trivial_module
from stackcoh.homalg import cohomology
from stackcoh.simplicial import trivial_groupoid
from stackcoh.spectra import discrete_borel_ss
from stackcoh.stackact import cyclic_group, equivariant_cohomology, \
    trivial_action


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--order", type=int, default=2)
    parser.add_argument("--p", type=int, default=2,
                        help="field characteristic (0 for Q)")
    parser.add_argument("--degrees", type=int, default=6)
    args = parser.parse_args()

    field = QQ if args.p == 0 else GF(args.p)
    group = cyclic_group(args.order)
    action = trivial_action(group, trivial_groupoid(1))
    n_top = args.degrees + 2

    dims = equivariant_cohomology(action, field, range(args.degrees + 1),
                                  n_top=n_top)
    oracle = bar_complex(trivial_module(group, field), n_top)
    bar = [cohomology(oracle, n) for n in range(args.degrees + 1)]
    print(f"H_G(point) over {field}: {dims}")
    print(f"bar-resolution oracle:  {bar}")
    if dims != bar:
        print("MISMATCH")
        return 1

    run = discrete_borel_ss(action, field, n_top)
    e2 = next(p for p in run.pages if p.r == 2)
    print("E_2 page (unflagged entries):")
    for (p, q) in sorted(e2.entries):
        if (p, q) in e2.flags or e2.entries[(p, q)] == 0:
            continue
        print(f"  E_2^{{{p},{q}}} = {e2.entries[(p, q)]}")
    print("identification:",
          "ok" if all(r["ok"] for r in run.identification) else "FAIL")
    print("convergence:", "ok" if run.convergence["ok"] else "FAIL")
    return 0 if run.ok else 1


if __name__ == "__main__":
    sys.exit(main())
