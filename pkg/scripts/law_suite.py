"""Run the randomised law suite and print a table of pass/fail counts."""
import argparse
import sys
import time

from opengames.laws import FAMILIES, run_law


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family", action="append", choices=sorted(FAMILIES), help="repeatable; default all")
    args = ap.parse_args()

    failures = 0
    for fam in args.family or FAMILIES:
        start = time.perf_counter()
        for name, law in FAMILIES[fam]:
            passed, failed = run_law(fam, name, law, args.cases, args.seed)
            failures += failed
            print(f"{fam:>14}  {name:<26} {passed:>5} passed {failed:>4} failed")
        print(f"{fam:>14}  ({time.perf_counter() - start:.2f}s)")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
