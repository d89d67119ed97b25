"""One-step prediction error against prefix length for each benchmark.

    python scripts/one_step_sweep.py [--count 20]

Fixed degree spec, growing prefix of true coefficients; compare with the
fit-once-predict-many errors from reproduce_tables.py.
"""

import argparse

from algser import EXAMPLES, DegreeSpec, taylor
from algser.cli import sweep

SPECS = {"ex1": DegreeSpec(2, (1, 1, 1)), "ex2": DegreeSpec(2, (1, 1, 1)),
         "ex3": DegreeSpec(2, (2, 2, 2))}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--count", type=int, default=16)
    args = parser.parse_args()
    for name, spec in SPECS.items():
        print(f"\n{name} {spec}")
        for row in sweep(taylor(EXAMPLES[name], args.count), spec):
            if row["rel_err_pct"] is None:
                print(f"{row['prefix']:>4}  {row['status']}")
            else:
                print(f"{row['prefix']:>4}  a_j={float(row['a_j']):>14.6f}  "
                      f"rel={float(row['rel_err_pct']):6.3f}%")


if __name__ == "__main__":
    main()
