"""Scan the deformation parameter q and compare the exact squared S_2 norm of
the Hecke Psi operator with its upper bound."""

import argparse
from fractions import Fraction

from coxsp.catalog import infinite_dihedral, path_system
from coxsp.hecke import HeckeParams, hecke_s2_norm
from coxsp.lengths import LengthSpec, odd_components

SYSTEMS = {"dinf": infinite_dihedral, "path": path_system}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--system", choices=sorted(SYSTEMS), default="dinf")
    parser.add_argument("--u", type=int, default=1, help="1-based generator")
    parser.add_argument("--w", type=int, default=1, help="1-based generator")
    parser.add_argument("--radius", type=int, default=6)
    parser.add_argument("--q", default="1,2,4,9,16,1/4", help="comma-separated values to scan")
    args = parser.parse_args()

    system = SYSTEMS[args.system]()
    spec = LengthSpec.standard(system.rank)
    print(f"{'q':>6} {'exact':>14} {'bound':>14} {'ratio':>8} support")
    for text in args.q.split(","):
        q = Fraction(text)
        # one value per conjugacy class keeps the parameters admissible
        values = [Fraction(1)] * system.rank
        for comp in odd_components(system):
            for i in comp:
                values[i] = q
        params = HeckeParams(system, tuple(values))
        res = hecke_s2_norm(params, spec, args.u - 1, args.w - 1, args.radius)
        ratio = float(res.exact_sum) / float(res.bound) if res.bound != 0 else float("nan")
        flag = "complete" if res.support_complete else "truncated"
        print(f"{str(q):>6} {float(res.exact_sum):>14.6f} {float(res.bound):>14.6f} {ratio:>8.4f} {res.support} {flag}")


if __name__ == "__main__":
    main()
