"""Acceptance criteria. Each test prints one PASS/FAIL line; the lines are
repeated in the pytest terminal summary."""

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from oracles import all_systems, brute_cyclic_parity_path, equivalence_classes
from coxsp.catalog import (
    dihedral,
    four_cycle,
    four_points_on_a_line,
    infinite_dihedral,
    path_system,
    six_generator_example,
    type_a,
)
from coxsp.coxeter import INF, CoxeterSystem, cayley_ball, m_reduce, multiply
from coxsp.diagram import Verdict, decide_gradient_sp, has_cyclic_parity_path, is_cyclic_parity_path
from coxsp.gamma import gamma, gamma_lp_norm, gamma_table, intertwiner_set, product_support_bound, tilde_gamma_table
from coxsp.hecke import (
    HeckeElement,
    HeckeParams,
    hecke_multiply,
    hecke_s2_norm,
    psi_hecke,
    psi_hecke_definition,
    psi_hecke_matrix,
)
from coxsp.lengths import LengthSpec, odd_components
from coxsp.spectral import (
    carre_du_champ_gram,
    hadamard_tensor,
    psi_group_matrix,
    riesz_isometry_check,
    schatten_norm,
    spectral_gap_check,
    tensor_coefficient,
)

RESULTS: list[str] = []


def report(number, title, ok, elapsed, limit, detail=""):
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"[{status}] criterion {number:>2}: {title} ({elapsed:.2f}s / limit {limit:g}s){' - ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line)
    assert ok, detail
    assert in_time, f"took {elapsed:.1f}s, limit {limit}s"


def zero_based(*gens):
    return tuple(g - 1 for g in gens)


def random_params(system, rng):
    q = [Fraction(1)] * system.rank
    for comp in odd_components(system):
        val = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        for i in comp:
            q[i] = val
    return HeckeParams(system, tuple(q))


def random_weights(system, rng):
    w = [Fraction(1)] * system.rank
    for comp in odd_components(system):
        val = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        for i in comp:
            w[i] = val
    return LengthSpec.weighted(w)


def test_criterion_01_six_generator_regression():
    start = time.perf_counter()
    a, b, c = (six_generator_example(v) for v in "ABC")
    ok = (
        not has_cyclic_parity_path(a).exists
        and has_cyclic_parity_path(b).exists
        and has_cyclic_parity_path(c).exists
        and is_cyclic_parity_path(b, zero_based(3, 2, 3, 4, 4, 5, 4, 3))
        and is_cyclic_parity_path(c, zero_based(1, 5, 5, 6, 6, 1))
    )
    report(1, "six-generator diagrams A/B/C and reference witnesses", ok, time.perf_counter() - start, 1)


def test_criterion_02_characterization_equivalence():
    start = time.perf_counter()
    checked, disagreements = 0, []
    for rank in range(1, 5):
        for system in all_systems(rank, (2, 3, 4, INF)):
            fast = has_cyclic_parity_path(system)
            slow = brute_cyclic_parity_path(system, max_pairs=2 * rank * rank)
            checked += 1
            if fast.exists != (slow is not None) or (fast.exists and not is_cyclic_parity_path(system, fast.witness)):
                disagreements.append(system.matrix)
    report(
        2,
        "structural parity-path test vs brute-force search, rank <= 4",
        not disagreements,
        time.perf_counter() - start,
        300,
        f"{checked} systems, {len(disagreements)} disagreements",
    )


def test_criterion_03_right_angled_reflections():
    start = time.perf_counter()
    rng = random.Random(20240611)
    violations, yes, no = [], 0, 0
    for _ in range(200):
        rank = rng.randint(2, 6)
        labels = {(i, j): rng.choice((2, INF)) for i in range(rank) for j in range(i + 1, rank)}
        system = CoxeterSystem.from_pairs(rank, labels)
        d = decide_gradient_sp(system)
        spec = LengthSpec.standard(rank)
        if d.verdict is Verdict.YES:
            yes += 1
            radius = rank + 2
            for u in range(rank):
                for w in range(rank):
                    late = [v for v in intertwiner_set(system, u, w, radius) if v.length >= radius - 1]
                    if late:
                        violations.append((system.matrix, u, w, late[0].word))
        elif d.verdict is Verdict.NO:
            no += 1
            r, s, t = d.witness
            for n in range(1, 6):
                if gamma(system, spec, (r,), (r,), (s, t) * n) == 0:
                    violations.append((system.matrix, r, n))
        else:
            violations.append((system.matrix, "non-binary verdict"))
    report(
        3,
        "right-angled triple criterion vs intertwiner sets",
        not violations,
        time.perf_counter() - start,
        120,
        f"{yes} Yes, {no} No, {len(violations)} violations",
    )


def test_criterion_04_word_problem_oracle():
    start = time.perf_counter()
    systems = [dihedral(m) for m in (2, 3, 4, 5)] + list(all_systems(3, (2, 3, INF)))
    words, mismatches = 0, 0
    for system in systems:
        for word, normal in equivalence_classes(system, 8).items():
            words += 1
            if m_reduce(system, word).word != normal:
                mismatches += 1
    report(
        4,
        "m_reduce vs exhaustive M-equivalence, words of length <= 8",
        mismatches == 0,
        time.perf_counter() - start,
        120,
        f"{len(systems)} systems, {words} words, {mismatches} mismatches",
    )


def test_criterion_05_schatten_equals_gamma_norm():
    start = time.perf_counter()
    worst, complete, cases = 0.0, 0, 0
    dinf = infinite_dihedral()
    op = psi_group_matrix(dinf, LengthSpec.standard(2), 0, 0, 10)
    sqrt8_err = abs(schatten_norm(op, 2, interior=True) - math.sqrt(8)) / math.sqrt(8)
    for system, radius in ((dinf, 10), (path_system(), 8)):
        spec = LengthSpec.standard(system.rank)
        for u in range(system.rank):
            for w in range(system.rank):
                op = psi_group_matrix(system, spec, u, w, radius)
                table = gamma_table(system, spec, u, w, op.interior_radius)
                if not table.support_complete:
                    continue
                complete += 1
                for p in (1, 2, 3, 4, math.inf):
                    cases += 1
                    sp, lp = schatten_norm(op, p, interior=True), gamma_lp_norm(table, p)
                    worst = max(worst, abs(sp - lp) / max(lp, 1e-300) if lp else abs(sp))
    ok = worst <= 1e-9 and sqrt8_err <= 1e-9 and complete > 0
    report(
        5,
        "S_p norm of truncated Psi equals l_p norm of gamma",
        ok,
        time.perf_counter() - start,
        30,
        f"{cases} cases on {complete} support-complete tables, max rel err {worst:.1e}, sqrt(8) err {sqrt8_err:.1e}",
    )


def test_criterion_06_hecke_degeneration_and_consistency():
    start = time.perf_counter()
    rng = random.Random(7)
    pool = [infinite_dihedral(), path_system(), dihedral(3), CoxeterSystem.from_pairs(3, {(0, 1): 3, (1, 2): 4})]
    mismatches = 0
    for k in range(500):
        system = pool[k % len(pool)]
        elems = cayley_ball(system, 3).elements(3)
        x, y = rng.choice(elems), rng.choice(elems)
        prod = hecke_multiply(HeckeParams.trivial(system), HeckeElement.basis(system, x), HeckeElement.basis(system, y))
        if prod != HeckeElement.basis(system, multiply(system, x, y)):
            mismatches += 1
    consistency, checked = 0, 0
    for system in [infinite_dihedral()] + list(all_systems(3, (2, 3, INF))):
        params = random_params(system, rng)
        for spec in (LengthSpec.standard(system.rank), random_weights(system, rng)):
            for u in range(system.rank):
                for w in range(system.rank):
                    for v in cayley_ball(system, 4).elements(4):
                        checked += 1
                        if psi_hecke(params, spec, u, w, v) != psi_hecke_definition(params, spec, (u,), (w,), v):
                            consistency += 1
    report(
        6,
        "Hecke products at q = 1 and closed Psi formula vs definition",
        mismatches == 0 and consistency == 0,
        time.perf_counter() - start,
        120,
        f"500 products ({mismatches} bad), {checked} Psi values ({consistency} bad)",
    )


def test_criterion_07_hecke_s2_estimate():
    start = time.perf_counter()
    rng = random.Random(11)
    pool = [
        infinite_dihedral(),
        path_system(),
        four_cycle(),
        four_points_on_a_line(),
        dihedral(3),
        dihedral(4),
        CoxeterSystem.from_pairs(3, {(0, 1): 3, (1, 2): INF, (0, 2): 2}),
        CoxeterSystem.from_pairs(3, {(0, 1): 4, (1, 2): INF, (0, 2): INF}),
    ]
    radius = 4
    over, worst = 0, 0.0
    for _ in range(100):
        system = rng.choice(pool)
        params = random_params(system, rng)
        spec = LengthSpec.standard(system.rank)
        u, w = rng.randrange(system.rank), rng.randrange(system.rank)
        res = hecke_s2_norm(params, spec, u, w, radius)
        if not res.within_bound:
            over += 1
        op = psi_hecke_matrix(params, spec, u, w, radius + 2)
        svd = schatten_norm(op, 2, interior=True) ** 2
        exact = float(res.exact_sum)
        worst = max(worst, abs(svd - exact) / max(1.0, exact))
    report(
        7,
        "Hecke S_2 exact sum <= bound and equals SVD of assembled matrix",
        over == 0 and worst <= 1e-8,
        time.perf_counter() - start,
        300,
        f"100 configurations, {over} above bound, max rel err {worst:.1e}",
    )


def test_criterion_08_hadamard_young():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = math.inf
    for _ in range(300):
        n = int(rng.integers(1, 21))
        A, B = rng.standard_normal((n, n)), rng.standard_normal((n, n))
        for p, q, r in ((2, 2, 1), (4, 4, 2), (3, 6, 2)):
            slack = schatten_norm(A, p) * schatten_norm(B, q) - schatten_norm(hadamard_tensor(A, B), r)
            worst = min(worst, slack)
    exact = True
    for entries in itertools.product((-2, 0, 1, 3), repeat=4):
        A = np.array(entries, dtype=float).reshape(2, 2)
        B = np.array(entries[::-1], dtype=float).reshape(2, 2) + 1
        exact &= bool(np.array_equal(tensor_coefficient(A, B), A * B))
    report(
        8,
        "Hadamard product Young inequality and comultiplication identity",
        worst >= -1e-9 and exact,
        time.perf_counter() - start,
        30,
        f"min slack {worst:.3e}, 2x2 identity {'exact' if exact else 'broken'}",
    )


def test_criterion_09_clique_product_support():
    start = time.perf_counter()
    path = path_system()
    late = 0
    for u, w in list(itertools.product(range(4), repeat=2)) + [((0, 2), (1,)), ((1, 3), (2, 0))]:
        bound = product_support_bound(path, u, w)
        table = tilde_gamma_table(path, u, w, bound + 2)
        late += sum(1 for v in table.support if v.length > bound)
    sq = four_cycle()
    # the generator choice u = w = s1 vanishes through the {s1} clique factor
    table = tilde_gamma_table(sq, (0, 2), (2, 0), 12)
    family = [table.entries.get(m_reduce(sq, (1, 3) * n), 0) for n in range(1, 6)]
    report(
        9,
        "clique products vanish past the bound on the path system; (s2 s4)^n survives on the square",
        late == 0 and all(family),
        time.perf_counter() - start,
        60,
        f"{late} late support points; square family values {[int(x) for x in family]}",
    )


def test_criterion_10_riesz_and_gram():
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    failures, worst = 0, math.inf
    specs = {
        "dinf": (infinite_dihedral(), [LengthSpec.standard(2), LengthSpec.weighted([Fraction(1, 2), 3])]),
        "path": (path_system(), [LengthSpec.standard(4), LengthSpec.weighted([1, Fraction(2, 3), 5, 2])]),
    }
    for system, spec_list in specs.values():
        for spec in spec_list:
            rep = riesz_isometry_check(system, spec, 6)
            failures += len(rep.failures)
            elems = cayley_ball(system, 4).elements(4)
            for _ in range(20):
                picks = rng.integers(len(elems), size=(12, 2))
                gram = carre_du_champ_gram(system, spec, [(elems[i], elems[j]) for i, j in picks])
                worst = min(worst, gram.min_eigenvalue)
    report(
        10,
        "Riesz isometry on the ball and carre du champ Gram matrices PSD",
        failures == 0 and worst >= -1e-9,
        time.perf_counter() - start,
        60,
        f"{failures} isometry failures, min Gram eigenvalue {worst:.2e}",
    )


def test_criterion_11_spectral_gap():
    start = time.perf_counter()
    systems = [
        (infinite_dihedral(), LengthSpec.standard(2)),
        (infinite_dihedral(), LengthSpec.weighted([Fraction(1, 3), 2])),
        (path_system(), LengthSpec.standard(4)),
        (path_system(), LengthSpec.weighted([1, Fraction(1, 2), 3, Fraction(7, 3)])),
        (four_cycle(), LengthSpec.standard(4)),
        (four_points_on_a_line(), LengthSpec.weighted([2, 1, 1, 3])),
        (CoxeterSystem.from_pairs(3, {(0, 1): 3, (1, 2): 3, (0, 2): INF}), LengthSpec.standard(3)),
        (CoxeterSystem.from_pairs(3, {(0, 1): 4, (1, 2): 3, (0, 2): INF}), LengthSpec.weighted([5, 1, 1])),
        (type_a(4), LengthSpec.standard(4)),
    ]
    violations = 0
    for system, spec in systems:
        violations += len(spectral_gap_check(system, spec, 12).violations)
    report(
        11,
        "consecutive length values differ by at most the largest weight (radius 12)",
        violations == 0,
        time.perf_counter() - start,
        30,
        f"{len(systems)} systems, {violations} violations",
    )
