#!/usr/bin/env python3
"""Reproduce the degree-10 and degree-11 occurrence obstructions.

Evaluates, in exact arithmetic, the plethysm multiplicity and the
symmetric Kronecker coefficient behind Ikenmeyer's occurrence
obstructions against small determinantal expressions:

    pi = (9,9,2,2,2,2,2,2),    d = 10, n = 3
    pi = (11,11,2,2,2,2,2,1),  d = 11, n = 3

In both cases mult(pi in S^d(S^n)) = 1 while the symmetric Kronecker
coefficient vanishes, so S_pi occurs in the coordinate ring of the
permanent side but not the determinant side.  A custom triple can be
supplied with --pi/--d/--n.
"""

import argparse
import sys
import time

from gct import reptheory

KNOWN = [
    ((9, 9, 2, 2, 2, 2, 2, 2), 10, 3),
    ((11, 11, 2, 2, 2, 2, 2, 1), 11, 3),
]


def run_case(pi, d, n) -> bool:
    t0 = time.monotonic()
    rep = reptheory.occurrence_obstruction_test(pi, d, n)
    elapsed = time.monotonic() - t0
    print(f"pi = {rep.pi}, d = {rep.d}, n = {rep.n}")
    print(f"  mult(S_pi in S^d(S^n))         = {rep.mult}")
    print(f"  kronecker k(pi, d^n, d^n)      = {rep.kron}")
    print(f"  symmetric kronecker sk         = {rep.sym_kron}")
    print(f"  representation obstruction     = {rep.is_representation_obstruction}")
    print(f"  occurrence obstruction         = {rep.is_occurrence_obstruction}")
    print(f"  ({elapsed:.2f}s)")
    return rep.is_occurrence_obstruction


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pi", help="partition, comma separated (e.g. 9,9,2,2,2,2,2,2)")
    ap.add_argument("--d", type=int, help="plethysm degree d")
    ap.add_argument("--n", type=int, help="inner degree n")
    args = ap.parse_args(argv)

    if args.pi or args.d or args.n:
        if not (args.pi and args.d and args.n):
            ap.error("--pi, --d and --n must be given together")
        cases = [(tuple(int(x) for x in args.pi.split(",")), args.d, args.n)]
    else:
        cases = KNOWN

    all_obstructions = True
    for pi, d, n in cases:
        all_obstructions = run_case(pi, d, n) and all_obstructions
    return 0 if all_obstructions else 1


if __name__ == "__main__":
    sys.exit(main())
