"""Decide gradient-S_p and small-at-infinity for the three six-generator
example systems and print the verdicts with witnesses."""

import argparse

from coxsp.catalog import six_generator_example
from coxsp.diagram import decide_gradient_sp, has_cyclic_parity_path, is_small_at_infinity


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--variants", default="ABC")
    args = parser.parse_args()
    for variant in args.variants:
        system = six_generator_example(variant)
        cyc = has_cyclic_parity_path(system)
        decision = decide_gradient_sp(system)
        small = is_small_at_infinity(system)
        print(f"variant {variant}")
        print(f"  cyclic parity path: {'yes' if cyc else 'no'} ({cyc.reason})")
        if cyc.witness is not None:
            print(f"  witness: {cyc.witness.format(system)}")
        print(f"  gradient-S_p: {decision.verdict} ({decision.rationale})")
        print(f"  small-at-infinity: {small.verdict}")


if __name__ == "__main__":
    main()
