"""Minimal contextual fraction over a grid of CHSH targets, LP against closed form.

    python scripts/fraction_sweep.py --step 1/16
"""
import argparse
from fractions import Fraction

from ksctx.fmt import decimal_str, rational_str
from ksctx.metrics import (average_contextual_per_quantum, fraction_closed_form,
                           min_contextual_fraction)
from ksctx.scenario import builtin_chsh


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--step", type=Fraction, default=Fraction(1, 8))
    p.add_argument("--lo", type=Fraction, default=Fraction(-4))
    p.add_argument("--hi", type=Fraction, default=Fraction(4))
    args = p.parse_args()

    s = builtin_chsh()
    print("lambda,lp_fraction,closed_form,decimal,witness_avg_count")
    lam = args.lo
    while lam <= args.hi:
        rep = min_contextual_fraction(s, lam)
        closed = fraction_closed_form(lam)
        assert rep.min_contextual_fraction == closed, lam
        avg = average_contextual_per_quantum(rep.witness)
        print(f"{rational_str(lam)},{rational_str(rep.min_contextual_fraction)},"
              f"{rational_str(closed)},{decimal_str(closed)},{rational_str(avg)}")
        lam += args.step


if __name__ == "__main__":
    main()
