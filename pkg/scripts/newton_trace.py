"""Print the residual orders of the Newton iteration for a square root.

    python3 scripts/newton_trace.py --poly "Z^2 - (T1^2 + T2^3)" --seed "t1*TN" --tprec 32
"""

import argparse

from serival.algebra import newton_steps
from serival.fields import BaseField
from serival.parsing import parse_completed, parse_poly


def main(argv=None):
    ap = argparse.ArgumentParser(description="Newton residual orders")
    ap.add_argument("--poly", default="Z^2 - (T1^2 + T2^3)")
    ap.add_argument("--seed", default="t1*TN")
    ap.add_argument("--field", default="q")
    ap.add_argument("--nvars", type=int, default=2)
    ap.add_argument("--tprec", type=int, default=32)
    args = ap.parse_args(argv)
    F = BaseField.parse(args.field)
    Q = parse_poly(args.poly, F, args.nvars, prec=2 * args.tprec + 8)
    z = parse_completed(args.seed, F, args.nvars - 1, args.tprec + 8)
    print("step  ord Q(z)  ord Q'(z)")
    for k, s in enumerate(newton_steps(Q, z, args.tprec)):
        print(f"{k:4d}  {s.residual.value:8d}  {s.derivative.value:9d}")


if __name__ == "__main__":
    main()
