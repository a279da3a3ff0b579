"""Named Coxeter systems used throughout the tests and scripts."""

from __future__ import annotations

from .coxeter import INF, CoxeterSystem


def dihedral(m) -> CoxeterSystem:
    return CoxeterSystem.from_pairs(2, {(0, 1): m}, names=("s", "t"))


def infinite_dihedral() -> CoxeterSystem:
    return dihedral(INF)


def path_system() -> CoxeterSystem:
    """Four generators, consecutive ones commute, all other pairs free."""
    return CoxeterSystem.from_pairs(4, {(0, 1): 2, (1, 2): 2, (2, 3): 2})


def four_cycle() -> CoxeterSystem:
    """Square of commuting generators; opposite corners are free."""
    return CoxeterSystem.from_pairs(4, {(0, 1): 2, (1, 2): 2, (2, 3): 2, (0, 3): 2})


def four_points_on_a_line() -> CoxeterSystem:
    """m_ij = 2 exactly when |i - j| = 2, otherwise inf."""
    return CoxeterSystem.from_pairs(4, {(0, 2): 2, (1, 3): 2})


def type_a(n: int) -> CoxeterSystem:
    return CoxeterSystem.from_pairs(n, {(i, i + 1): 3 for i in range(n - 1)}, default=2)


_SIX_PAIRS = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5),
                 (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
_SIX_LABELS = [5, INF, INF, 13, 3, 6, INF, INF, INF, 9, INF, INF, INF, INF, INF]


def six_generator_example(variant: str = "A") -> CoxeterSystem:
    """Six-generator diagram with odd labels forming a path and one even bridge.

    Variant B adds the even label m_45 = 4, variant C the odd label m_56 = 5.
    """
    labels = dict(zip(_SIX_PAIRS, _SIX_LABELS))
    if variant == "B":
        labels[(3, 4)] = 4
    elif variant == "C":
        labels[(4, 5)] = 5
    elif variant != "A":
        raise ValueError(f"unknown variant {variant!r}")
    return CoxeterSystem.from_pairs(6, labels)


NAMED = {
    "dinf": infinite_dihedral,
    "path": path_system,
    "square": four_cycle,
    "line4": four_points_on_a_line,
    "six-a": lambda: six_generator_example("A"),
    "six-b": lambda: six_generator_example("B"),
    "six-c": lambda: six_generator_example("C"),
}
