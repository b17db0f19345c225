"""One test per acceptance criterion.  Each records a pass/fail line that the
terminal summary prints under "acceptance criteria"."""
import math
import time

import numpy as np
import pytest

from acceptance_log import RESULTS
from frozen import E8_34_PRINTED, F4_17_PRINTED, F4_RANKS, PAIRED_MATRIX, PSEUDO_UNITARY
from oracles import rank_counts, tensor_by_characters
from qgfusion import verify
from qgfusion.based import deligne_product, even_subring_sl2, ring_from_generator
from qgfusion.classical import classical_tensor, weyl_dimension
from qgfusion.dimensions import (admissible_z, coroot_dimension, dimension_report, dimension_vector_fp,
                                 dimension_vector_qdim, fpdim_label, fpdim_perron, homomorphism_residual)
from qgfusion.fusion import LevelContext, alcove_labels, build_fusion_ring, fusion_matrix_of
from qgfusion.notation import parse_weight
from qgfusion.rootsystem import build_root_system, dot_reflect


def record(n, ok, desc):
    RESULTS[n] = (bool(ok), desc)
    return ok


# rings shared by the later criteria
_RINGS: dict = {}


def ring(ct, level):
    key = (ct, level)
    if key not in _RINGS:
        _RINGS[key] = build_fusion_ring(LevelContext(ct, level))
    return _RINGS[key]


def test_criterion_01_paired_matrix():
    t0 = time.perf_counter()
    f4 = verify.table_fusion("F4", 17, (1, 0, 0, 0), order="paired")
    f4_rows = [r.lhs for r in f4.records]
    t1 = time.perf_counter()
    e8 = verify.table_fusion("E8", 34, (0,) * 7 + (1,), order="paired")
    e8_rows = [r.lhs for r in e8.records]
    e8_time = time.perf_counter() - t1
    ok = f4_rows == PAIRED_MATRIX and e8_rows == PAIRED_MATRIX and e8_time < 300
    record(1, ok, f"F4 l=17 N_L1 and E8 l=34 N_l8 equal the printed 10x10 matrix "
                  f"(E8 side {e8_time:.2f}s, total {time.perf_counter() - t0:.2f}s)")
    assert f4_rows == PAIRED_MATRIX
    assert e8_rows == PAIRED_MATRIX
    assert e8_time < 300


@pytest.mark.xfail(strict=True, reason="printed F4 set contains 2L2, which lies on the wall "
                                       "<x + rho, theta_s> = 17; see decisions ledger")
def test_criterion_02_label_sets():
    t0 = time.perf_counter()
    f4 = set(alcove_labels(LevelContext("F4", 17)))
    e8 = set(alcove_labels(LevelContext("E8", 34)))
    printed_f4 = {parse_weight(w, build_root_system("F4")) for w in F4_17_PRINTED}
    printed_e8 = {parse_weight(w, build_root_system("E8")) for w in E8_34_PRINTED}
    elapsed = time.perf_counter() - t0
    missing = sorted(printed_f4 - f4)
    extra = sorted(f4 - printed_f4)
    ok = f4 == printed_f4 and e8 == printed_e8 and elapsed < 1
    record(2, ok, f"E8 l=34 set {'matches' if e8 == printed_e8 else 'differs'}; F4 l=17 set "
                  f"{'matches' if f4 == printed_f4 else f'differs: printed-only {missing}, computed-only {extra}'}"
                  f" ({elapsed:.3f}s)")
    assert e8 == printed_e8
    assert f4 == printed_f4


def test_criterion_02_supplement_e8_set_and_paired_orders():
    # the E8 half of the criterion, and the F4 set with 2L4 in place of 2L2
    assert set(alcove_labels(LevelContext("E8", 34))) == \
        {parse_weight(w, build_root_system("E8")) for w in E8_34_PRINTED}
    assert set(alcove_labels(LevelContext("F4", 17))) == set(verify.PAIRED_ORDERS[("F4", 17)])
    assert list(verify.PAIRED_ORDERS[("E8", 34)]) == \
        [parse_weight(w, build_root_system("E8")) for w in E8_34_PRINTED]


def test_criterion_03_ranks():
    g2_7 = len(alcove_labels(LevelContext("G2", 7)))
    f4 = {l: len(alcove_labels(LevelContext("F4", l))) for l in (15, 17, 19, 21)}
    coeffs = rank_counts([1, 2, 3], 40)
    # calibrate the offset of the series on the two smallest levels, then check the rest
    g2 = {l: len(alcove_labels(LevelContext("G2", l))) for l in range(7, 21) if l % 3}
    offsets = [o for o in range(0, 12) if all(coeffs[l - o] == g2[l] for l in (7, 8))]
    ok_offset = len(offsets) == 1
    rest_ok = ok_offset and all(coeffs[l - offsets[0]] == g2[l] for l in g2 if l >= 8)
    ok = g2_7 == 1 and all(f4[l] == F4_RANKS[l] for l in f4) and rest_ok
    record(3, ok, f"G2 l=7 rank {g2_7}; F4 ranks {list(f4.values())}; G2 ranks "
                  f"{[g2[l] for l in g2 if l >= 8]} for l in 8..20, 3 ∤ l, series offset {offsets}")
    assert g2_7 == 1
    assert f4 == {l: F4_RANKS[l] for l in f4}
    assert rest_ok


def test_criterion_04_pseudo_unitary_instances():
    lines, ok = [], True
    for ct, level, z in PSEUDO_UNITARY:
        t0 = time.perf_counter()
        r = dimension_report(ct, level, z, tol=1e-9)
        dt = time.perf_counter() - t0
        good = r.pseudo_unitary and r.all_positive and dt < 1
        ok &= good
        lines.append(f"{ct}@{level},z={z}:{'ok' if good else 'NO'}({dt:.2f}s)")
    record(4, ok, "pseudo-unitary with positive dims: " + " ".join(lines))
    assert ok


def test_criterion_05_sweeps():
    t0 = time.perf_counter()
    reports = [
        verify.verify_inequality_g2(range(16, 201), tol=1e-9, anchors=False),
        verify.verify_inequality_f4(range(19, 100, 2), tol=1e-9, anchors=False),
        verify.verify_inequality_bc(range(2, 9), None, tol=1e-9),
    ]
    elapsed = time.perf_counter() - t0
    fails, equalities, checked, skipped = [], [], 0, 0
    for rep in reports:
        for r in rep.records:
            if r.case == "bc" and r.params["l"] < 2 * r.params["k"] + 5:
                continue  # below the threshold; these are context records
            if r.verdict == "skip":
                skipped += 1  # hypothesis filter, e.g. 3 | l for G2
                continue
            if r.verdict == "equality":
                equalities.append(r.params)
                continue
            checked += 1
            if r.verdict != "pass" or r.extra.get("pseudo_unitary") is not False:
                fails.append((r.params, r.reason))
    pu_any = sum(1 for rep in reports for r in rep.records
                 if r.extra.get("pseudo_unitary") and r.verdict == "pass")
    ok = not fails and elapsed < 600 and pu_any == 0
    record(5, ok, f"{checked} (type, l, z) cases strict and non-pseudo-unitary, {len(fails)} failures, "
                  f"{len(equalities)} equality cases, {skipped} levels skipped by hypothesis, {elapsed:.1f}s")
    assert not fails, fails[:5]
    assert elapsed < 600


def _battery():
    cases = [("G2", l) for l in (8, 10, 11, 13, 14, 16, 17)] + [("F4", l) for l in (15, 17, 19, 21)]
    cases += [("B2", l) for l in (7, 9, 11, 13, 15)] + [("B3", l) for l in (9, 11, 13, 15)]
    cases += [("A1", l) for l in range(2, 11)]
    return cases


def test_criterion_06_fpdim_oracle():
    t0 = time.perf_counter()
    worst, n = 0.0, 0
    for ct, level in _battery():
        R = ring(ct, level)
        for i, lam in enumerate(R.labels):
            worst = max(worst, abs(fpdim_label(ct, level, lam) - fpdim_perron(R, i)))
            n += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 120
    record(6, ok, f"{n} labels, max |product formula - Perron| = {worst:.2e} ({elapsed:.1f}s)")
    assert worst <= 1e-8


def test_criterion_07_equivalence_battery():
    t0 = time.perf_counter()
    rep = verify.check_equivalences()
    elapsed = time.perf_counter() - t0
    bad = [r.case for r in rep.records if r.verdict != "pass"]
    ok = not bad and len(rep.records) == 9 and elapsed < 120
    record(7, ok, f"{len(rep.records) - len(bad)}/{len(rep.records)} witnesses re-validated ({elapsed:.1f}s)")
    assert not bad
    assert elapsed < 120


def _property_rings():
    out = []
    for ct, level in _battery() + [("G2", 7), ("G2", 19), ("G2", 20), ("C2", 9), ("C3", 11), ("C2", 11)]:
        out.append((f"{ct}@{level}", ring(ct, level), ct, level))
    z5 = even_subring_sl2(5)
    out.append(("Z5xZ5", deligne_product(z5, z5), None, None))
    out.append(("Z11", even_subring_sl2(11), None, None))
    ctx = LevelContext("E8", 34)
    labels = alcove_labels(ctx)
    g = labels.index((0,) * 7 + (1,))
    out.append(("E8@34", ring_from_generator(labels, fusion_matrix_of(ctx, labels[g], labels), g), "E8", 34))
    return out


def test_criterion_08_property_suites():
    problems = []
    worst_res = 0.0
    n_anti = 0
    rng = np.random.default_rng(2024)
    rings = _property_rings()
    for name, R, ct, level in rings:
        N = R.N
        if N.dtype.kind != "i" or (N < 0).any():
            problems.append(f"{name}: constants not non-negative integers")
        bad = R.violations(limit=3)
        if bad:
            problems.append(f"{name}: {bad}")
        for i in range(R.rank):
            if not np.array_equal(R.fusion_matrix(R.dual[i]), R.fusion_matrix(i).T):
                problems.append(f"{name}: N_i* != N_i^T at {i}")
                break
        if ct is None:
            continue
        rs = build_root_system(ct)
        vecs = [dimension_vector_fp(R, rs, level)]
        vecs += [dimension_vector_qdim(R, rs, level, z) for z in admissible_z(level)]
        res = max(homomorphism_residual(R, f) for f in vecs)
        worst_res = max(worst_res, res)
        if res >= 1e-9:
            problems.append(f"{name}: homomorphism residual {res:.2e}")
        if level % rs.m or rs.m == 1:  # coroot product applies
            for _ in range(100):
                lam = tuple(int(v) for v in rng.integers(-2 * level, 2 * level, rs.rank))
                d = coroot_dimension(rs, level, lam)
                for i in range(rs.rank):
                    if abs(coroot_dimension(rs, level, dot_reflect(rs, i, lam)) + d) > 1e-9 * max(1.0, abs(d)):
                        problems.append(f"{name}: antisymmetry fails at {lam}, s_{i + 1}")
                n_anti += 1
    record(8, not problems, f"{len(rings)} rings; max residual {worst_res:.1e}; "
                            f"{n_anti} antisymmetry samples; {len(problems)} problems")
    assert not problems, problems[:5]


def test_criterion_09_trig_anchors():
    recs = verify.anchor_records("G2") + verify.anchor_records("F4")
    vals = {r.case: r for r in recs}
    ok = all(r.verdict == "pass" for r in recs) and len(recs) == 3
    m = vals["sin7-minimum"]
    record(9, ok, f"min sin7t/sint = {m.lhs:.12f} vs {m.rhs:.12f}; identity errors "
                  f"{vals['identity-4cos^2(2t)-3'].lhs:.1e}, {vals['identity-4cos^2(3t)-3'].lhs:.1e} "
                  f"on {verify.GRID_POINTS} points")
    assert ok
    assert abs(m.lhs + (7 + 14 * math.sqrt(7)) / 27) <= 1e-6


def _small_weights(rng, rank, budget):
    while True:
        lam = tuple(int(v) for v in rng.integers(0, budget + 1, rank))
        if sum(lam) <= budget:
            return lam


def test_criterion_10_classical_oracle():
    rng = np.random.default_rng(10)
    mismatches, n_oracle = [], 0
    for ct, budget in (("A1", 8), ("A2", 3), ("B2", 3), ("G2", 2)):
        rs = build_root_system(ct)
        for _ in range(50):
            lam, mu = _small_weights(rng, rs.rank, budget), _small_weights(rng, rs.rank, budget)
            n_oracle += 1
            if classical_tensor(rs, lam, mu).terms != tensor_by_characters(rs, lam, mu):
                mismatches.append((ct, lam, mu))
    book_bad, n_book = [], 0
    types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"]
    for ct in types:
        rs = build_root_system(ct)
        budget = 1 if ct == "F4" else 2
        for _ in range(20):
            lam, mu = _small_weights(rng, rs.rank, budget), _small_weights(rng, rs.rank, budget)
            terms = classical_tensor(rs, lam, mu).terms
            n_book += 1
            if sum(c * weyl_dimension(rs, nu) for nu, c in terms.items()) != \
                    weyl_dimension(rs, lam) * weyl_dimension(rs, mu):
                book_bad.append((ct, lam, mu))
    ok = not mismatches and not book_bad
    record(10, ok, f"{n_oracle} oracle pairs ({len(mismatches)} mismatches), {n_book} bookkeeping pairs "
                   f"over {len(types)} types ({len(book_bad)} failures)")
    assert not mismatches
    assert not book_bad
