"""Print the three prediction tables for the benchmark functions.

    python scripts/reproduce_tables.py [--extra 10]

Each table fits quadratic Hermite-Padé polynomials to the first M Taylor
coefficients and predicts the following ones; ``--extra`` predicts further
coefficients to show how the error grows with the index.
"""

import argparse

from algser import EXAMPLES, DegreeSpec, predict_k, reference_errors, solve_hpp, taylor

RUNS = [
    ("ex1", "(2-3z)^(1/2) + 1/(5-z)", DegreeSpec(2, (1, 1, 1)), 3),
    ("ex2", "17(1-2z)^(-1/3) + z/(2-z)", DegreeSpec(2, (1, 1, 1)), 3),
    ("ex3", "exp(z)(2-3z)^(-1/3) + 1/(5-z)", DegreeSpec(2, (2, 2, 2)), 6),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--extra", type=int, default=0, help="predict this many more rows")
    args = parser.parse_args()
    k = 6 + args.extra
    for name, formula, spec, d in RUNS:
        f = taylor(EXAMPLES[name], spec.M + k)
        hpp = solve_hpp(f, spec)
        rows = reference_errors(f, predict_k(f, spec, hpp, k), spec.M)
        print(f"\n{name}: f(z) = {formula}, {spec}, M = {spec.M}")
        for n, p in enumerate(hpp.polys):
            print(f"  P_{n} = " + " + ".join(f"({c:.16g}) z^{j}" for j, c in enumerate(p)))
        print(f"{'j':>4} {'f_j':>14} {'a_j':>14} {'|f_j-a_j|':>12} {'rel. err (%)':>13}")
        for r in rows:
            print(f"{r.j:>4} {r.f_j:>14.{d}f} {r.a_j:>14.{d}f} {r.abs_err:>12.{d}f} "
                  f"{r.rel_err_pct:>13.2f}")


if __name__ == "__main__":
    main()
