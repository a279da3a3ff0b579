"""Count gradient-S_p verdicts over random right-angled or small-label systems
and report how often a cyclic parity path exists."""

import argparse
import collections
import random
import time

from coxsp.coxeter import INF, CoxeterSystem
from coxsp.diagram import decide_gradient_sp, has_cyclic_parity_path

LABELS = {"right-angled": (2, INF), "small": (2, 3, 4, 5, INF)}


def random_system(rng: random.Random, rank: int, labels) -> CoxeterSystem:
    pairs = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    return CoxeterSystem.from_pairs(rank, {p: rng.choice(labels) for p in pairs})


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--min-rank", type=int, default=3)
    parser.add_argument("--max-rank", type=int, default=7)
    parser.add_argument("--labels", choices=sorted(LABELS), default="small")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    counts: dict[int, collections.Counter] = collections.defaultdict(collections.Counter)
    start = time.perf_counter()
    for _ in range(args.samples):
        rank = rng.randint(args.min_rank, args.max_rank)
        system = random_system(rng, rank, LABELS[args.labels])
        counts[rank][str(decide_gradient_sp(system).verdict)] += 1
        counts[rank]["cyclic"] += bool(has_cyclic_parity_path(system))
    print(f"{'rank':>4} {'Yes':>6} {'No':>6} {'Unknown':>8} {'cyclic':>7}")
    for rank in sorted(counts):
        c = counts[rank]
        print(f"{rank:>4} {c['Yes']:>6} {c['No']:>6} {c['Unknown']:>8} {c['cyclic']:>7}")
    print(f"{args.samples} systems in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
