"""Sweeps of the non-pseudo-unitarity inequalities for G2, F4 and B/C, the
trigonometric anchors behind them, the equivalence battery and table output.

Every sweep case yields one :class:`~qgfusion.reports.Record`; hypothesis
violations become ``skip`` records carrying the violated condition, and
levels below a threshold are still evaluated but marked ``context``.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from . import dimensions as dm
from .based import (check_based_isomorphism, deligne_product, even_subring_sl2, find_equivalence,
                    generation_certificate, generator_equivalence, ring_from_generator, sl2_ring)
from .dimensions import DIM_TOL, EIG_TOL, admissible_z, fpdim_label, qdim
from .fusion import LevelContext, alcove_labels, build_fusion_ring, fusion_matrix_of
from .notation import format_weight
from .reports import CONTEXT, EQUALITY, FAIL, PASS, SKIP, Record, Report
from .rootsystem import build_root_system

DEFAULT_CAPS = {"G2": 200, "F4": 99, "BC": 99, "k": 8}
G2_THRESHOLD, F4_THRESHOLD = 16, 19
IDENTITY_TOL = 1e-12
MINIMUM_TOL = 1e-6
GRID_POINTS = 10_000

# Labels of C(F4, l=17) and C(E8, l=34) listed so that index i on one side
# corresponds to index i on the other under the rank-10 equivalence.
PAIRED_ORDERS = {
    ("F4", 17): [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                 (2, 0, 0, 0), (0, 0, 0, 2), (1, 0, 0, 1), (1, 1, 0, 0), (0, 1, 0, 1)],
    ("E8", 34): [(0,) * 8, (0, 0, 0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 0, 1, 0),
                 (0, 0, 0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 0, 0, 2), (1, 0, 0, 0, 0, 0, 0, 0),
                 (2, 0, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0, 0, 0),
                 (0, 0, 1, 0, 0, 0, 0, 0)],
}


def _sin(n: int, z: int, level: int, dps=None) -> float:
    """``sin(n z pi / l)`` with the angle reduced exactly mod ``2 pi`` first."""
    r = (n * z) % (2 * level)
    dps = dps if dps is not None else dm._default_dps()
    if dps:
        import mpmath
        with mpmath.workdps(dps):
            return mpmath.sin(mpmath.mpf(r) * mpmath.pi / level)
    return math.sin(math.pi * r / level)


def _ratio(num: Sequence[int], den: Sequence[int], z: int, level: int) -> float:
    val = 1
    for a in num:
        val *= _sin(a, z, level)
    for b in den:
        val /= _sin(b, z, level)
    return float(val)


def g2_sides(level: int, z: int) -> tuple[float, float]:
    return _ratio((7, 2, 12), (1, 4, 6), z, level), _ratio((7,), (1,), 1, level)


def f4_sides(level: int, z: int) -> tuple[float, float]:
    return (_ratio((3, 8, 13, 18), (1, 4, 6, 9), z, level),
            _ratio((8, 13), (1, 4), 1, level))


def bc_sides(k: int, level: int, z: int) -> tuple[float, float]:
    return (_ratio((2 * k + 1, 2 * (2 * k - 1)), (2, 2 * k - 1), z, level),
            _ratio((2 * k + 1,), (1,), 1, level))


def bc_cosine_sums(k: int, level: int, z: int) -> tuple[float, float]:
    left = sum(math.cos(2 * math.pi * (((2 * j - 1) * z) % level) / level) for j in range(1, k + 1))
    right = sum(math.cos(2 * math.pi * j / level) for j in range(1, k + 1))
    return left, right


def residue_sets(k: int, level: int, z: int) -> tuple[frozenset, frozenset]:
    s1 = frozenset(s * j % level for j in range(1, k + 1) for s in (1, -1))
    s2 = frozenset(s * (2 * j - 1) * z % level for j in range(1, k + 1) for s in (1, -1))
    return s1, s2


# trigonometric anchors

def sin7_minimum() -> tuple[float, float]:
    """Global minimum of ``sin(7t)/sin(t)`` on ``(0, pi)``: grid, then bounded refinement."""
    from scipy.optimize import minimize_scalar

    def f(t):
        return math.sin(7 * t) / math.sin(t)

    t = np.linspace(1e-6, math.pi - 1e-6, 200_001)
    vals = np.sin(7 * t) / np.sin(t)
    i = int(vals.argmin())
    res = minimize_scalar(f, bounds=(t[max(i - 5, 0)], t[min(i + 5, len(t) - 1)]),
                          method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


def identity_grid(n: int = GRID_POINTS) -> np.ndarray:
    """``n`` interior points of ``(0, pi/2)`` in extended precision."""
    pi = np.longdouble("3.14159265358979323846264338327950288")
    return np.arange(1, n + 1, dtype=np.longdouble) * (pi / 2) / (n + 1)


def g2_identity_error(t: np.ndarray) -> float:
    lhs = np.sin(2 * t) * np.sin(12 * t) / (np.sin(4 * t) * np.sin(6 * t))
    return float(np.max(np.abs(lhs - (4 * np.cos(2 * t) ** 2 - 3))))


def f4_identity_error(t: np.ndarray) -> float:
    lhs = np.sin(18 * t) * np.sin(3 * t) / (np.sin(6 * t) * np.sin(9 * t))
    return float(np.max(np.abs(lhs - (4 * np.cos(3 * t) ** 2 - 3))))


def anchor_records(which: str) -> list[Record]:
    t = identity_grid()
    recs = []
    if which == "G2":
        tmin, vmin = sin7_minimum()
        exact = -(7 + 14 * math.sqrt(7)) / 27
        err = abs(vmin - exact)
        recs.append(Record("sin7-minimum", {"t_min": tmin}, vmin, exact, MINIMUM_TOL - err,
                           PASS if err <= MINIMUM_TOL else FAIL, MINIMUM_TOL))
        err = g2_identity_error(t)
        recs.append(Record("identity-4cos^2(2t)-3", {"grid": len(t), "dtype": str(t.dtype)}, err, 0.0,
                           IDENTITY_TOL - err, PASS if err <= IDENTITY_TOL else FAIL, IDENTITY_TOL))
    elif which == "F4":
        err = f4_identity_error(t)
        recs.append(Record("identity-4cos^2(3t)-3", {"grid": len(t), "dtype": str(t.dtype)}, err, 0.0,
                           IDENTITY_TOL - err, PASS if err <= IDENTITY_TOL else FAIL, IDENTITY_TOL))
    return recs


# sweeps

def _scan_entries(rs, level, tol):
    try:
        return dm.pseudo_unitarity_scan(rs, level, tol).entries, ""
    except (ValueError, ArithmeticError) as exc:
        return None, str(exc)


def _sweep_case(case, params, lhs, rhs, tol, cross, scan, below_threshold, scan_err=""):
    margin = rhs - lhs
    problems = []
    if not lhs + tol < rhs:
        problems.append("inequality not strict")
    if cross is not None and cross > tol:
        problems.append(f"disagrees with dimension module by {cross:.3g}")
    extra = {"cross_check": cross}
    if scan is not None:
        extra.update(pseudo_unitary=scan.pseudo_unitary, scan_basis=scan.basis, scan_strict=scan.strict)
        if scan.pseudo_unitary:
            problems.append("scan finds pseudo-unitary")
        if not scan.strict:
            problems.append("dimension module gap not strict")
    elif scan_err:
        problems.append(f"scan failed: {scan_err}")
    if below_threshold:
        return Record(case, params, lhs, rhs, margin, CONTEXT, tol, below_threshold, extra)
    return Record(case, params, lhs, rhs, margin, FAIL if problems else PASS, tol,
                  "; ".join(problems), extra)


def verify_inequality_g2(levels: Iterable[int] | None = None, tol: float = DIM_TOL,
                         scan: bool = True, anchors: bool = True) -> Report:
    levels = list(levels) if levels is not None else list(range(8, DEFAULT_CAPS["G2"] + 1))
    rep = Report(["verify-g2", f"levels={_range_str(levels)}", f"tol={tol}"])
    rs = build_root_system("G2")
    L1 = (1, 0)
    for l in levels:
        if l % 3 == 0:
            rep.add(Record("g2", {"l": l}, verdict=SKIP, reason="hypothesis 3 ∤ l violated",
                           tolerance=tol))
            continue
        if l <= 7:
            rep.add(Record("g2", {"l": l}, verdict=SKIP, reason="hypothesis l > 7 violated",
                           tolerance=tol))
            continue
        below = "" if l >= G2_THRESHOLD else f"below threshold l >= {G2_THRESHOLD}"
        entries, err = _scan_entries(rs, l, tol) if scan else (None, "")
        fp = fpdim_label(rs, l, L1)
        for z in admissible_z(l):
            lhs, rhs = g2_sides(l, z)
            cross = abs((rhs - lhs) - (fp - qdim(rs, l, z, L1)))
            rep.add(_sweep_case("g2", {"l": l, "z": z}, lhs, rhs, tol, cross,
                                entries[z] if entries else None, below, err))
    if anchors:
        rep.extend(anchor_records("G2"))
    return rep


def verify_inequality_f4(levels: Iterable[int] | None = None, tol: float = DIM_TOL,
                         scan: bool = True, anchors: bool = True) -> Report:
    levels = list(levels) if levels is not None else list(range(15, DEFAULT_CAPS["F4"] + 1))
    rep = Report(["verify-f4", f"levels={_range_str(levels)}", f"tol={tol}"])
    rs = build_root_system("F4")
    L1 = (1, 0, 0, 0)
    for l in levels:
        if l % 2 == 0:
            rep.add(Record("f4", {"l": l}, verdict=SKIP, reason="hypothesis 2 ∤ l violated",
                           tolerance=tol))
            continue
        if l <= 13:
            rep.add(Record("f4", {"l": l}, verdict=SKIP, reason="hypothesis l > 13 violated",
                           tolerance=tol))
            continue
        below = "" if l >= F4_THRESHOLD else f"below threshold l >= {F4_THRESHOLD}"
        entries, err = _scan_entries(rs, l, tol) if scan else (None, "")
        fp = fpdim_label(rs, l, L1)
        for z in admissible_z(l):
            lhs, rhs = f4_sides(l, z)
            cross = abs((rhs - lhs) - (fp - qdim(rs, l, z, L1)))
            rep.add(_sweep_case("f4", {"l": l, "z": z}, lhs, rhs, tol, cross,
                                entries[z] if entries else None, below, err))
    if anchors:
        rep.extend(anchor_records("F4"))
    return rep


def verify_inequality_bc(ks: Iterable[int] | None = None, levels: Iterable[int] | None = None,
                         tol: float = DIM_TOL, scan: bool = True) -> Report:
    """Per ``(k, l, z)``: the dimension inequality for so_{2k+1}, its cosine-sum
    form and the residue-set comparison that decides equality of the sums.

    ``k = 1`` is accepted for the trigonometric checks only (so_3 is not a
    separate Cartan type here); there ``z = ±1`` gives equal sets, recorded
    with verdict ``equality``.
    """
    ks = list(ks) if ks is not None else list(range(2, DEFAULT_CAPS["k"] + 1))
    rep = Report(["verify-bc", f"k={_range_str(ks)}",
                  f"levels={_range_str(levels) if levels is not None else 'odd 2k+3..' + str(DEFAULT_CAPS['BC'])}",
                  f"tol={tol}"])
    for k in ks:
        lv = list(levels) if levels is not None else list(range(2 * k + 3, DEFAULT_CAPS["BC"] + 1, 2))
        rs = build_root_system(f"B{k}") if k >= 2 else None
        for l in lv:
            params = {"k": k, "l": l}
            if l % 2 == 0:
                rep.add(Record("bc", params, verdict=SKIP, reason="hypothesis 2 ∤ l violated",
                               tolerance=tol))
                continue
            if not 2 * k + 1 < l:
                rep.add(Record("bc", params, verdict=SKIP, reason="hypothesis 2k+1 < l violated",
                               tolerance=tol))
                continue
            below = "" if 2 * k + 5 <= l else "below threshold 2k+5 <= l"
            entries, err = (_scan_entries(rs, l, tol) if scan and rs is not None else (None, ""))
            fp = fpdim_label(rs, l, (1,) + (0,) * (k - 1)) if rs is not None else None
            for z in admissible_z(l):
                rep.add(_bc_case(k, l, z, tol, rs, fp, entries, err, below))
    return rep


def _bc_case(k, l, z, tol, rs, fp, entries, err, below) -> Record:
    params = {"k": k, "l": l, "z": z}
    lhs, rhs = bc_sides(k, l, z)
    c_left, c_right = bc_cosine_sums(k, l, z)
    s1, s2 = residue_sets(k, l, z)
    sets_equal = s1 == s2
    cross = None
    if rs is not None:
        cross = abs((rhs - lhs) - (fp - qdim(rs, l, z, (1,) + (0,) * (k - 1))))
    extra = {"cosine_lhs": c_left, "cosine_rhs": c_right, "cosine_margin": c_right - c_left,
             "sets_equal": sets_equal, "cross_check": cross}
    scan = entries[z] if entries else None
    if scan is not None:
        extra.update(pseudo_unitary=scan.pseudo_unitary, scan_basis=scan.basis, scan_strict=scan.strict)
    problems = []
    # the two forms are the same statement: rhs - lhs = 2 (c_right - c_left)
    if abs((rhs - lhs) - 2 * (c_right - c_left)) > tol:
        problems.append("inequality forms disagree")
    if cross is not None and cross > tol:
        problems.append(f"disagrees with dimension module by {cross:.3g}")
    if sets_equal:
        if abs(c_right - c_left) > tol:
            problems.append("equal residue sets but unequal cosine sums")
        verdict = FAIL if problems else EQUALITY
        return Record("bc", params, lhs, rhs, rhs - lhs, verdict, tol, "; ".join(problems) or below, extra)
    if not (lhs + tol < rhs):
        problems.append("dimension inequality not strict")
    if not (c_left + tol < c_right):
        problems.append("cosine inequality not strict")
    if scan is not None and scan.pseudo_unitary:
        problems.append("scan finds pseudo-unitary")
    if scan is not None and not scan.strict:
        problems.append("dimension module gap not strict")
    if err and rs is not None:
        problems.append(f"scan failed: {err}")
    if below:
        return Record("bc", params, lhs, rhs, rhs - lhs, CONTEXT, tol, below, extra)
    return Record("bc", params, lhs, rhs, rhs - lhs, FAIL if problems else PASS, tol,
                  "; ".join(problems), extra)


def _range_str(vals) -> str:
    vals = list(vals)
    if not vals:
        return "[]"
    if vals == list(range(vals[0], vals[-1] + 1)):
        return f"{vals[0]}..{vals[-1]}"
    return ",".join(str(v) for v in vals)


# equivalence battery

def _labels_str(ring, i):
    lab = ring.labels[i]
    return format_weight(lab) if isinstance(lab, tuple) else str(lab)


def _witness_record(case, R, S, witness, extra=None) -> Record:
    params = {"left": R.name, "right": S.name}
    if witness is None:
        return Record(case, params, R.rank, S.rank, None, FAIL, EIG_TOL, "no witness found", extra or {})
    check = check_based_isomorphism(R, S, witness.bijection)
    fpR = [dm.fpdim_perron(R, i) for i in range(R.rank)]
    fpS = [dm.fpdim_perron(S, witness.bijection[i]) for i in range(R.rank)]
    drift = max(abs(a - b) for a, b in zip(fpR, fpS))
    problems = []
    if not check.ok:
        problems.append(check.reason)
    if drift > EIG_TOL:
        problems.append(f"FPdim not preserved ({drift:.3g})")
    ext = {"mode": witness.mode, "fpdim_drift": drift,
           "witness": [[_labels_str(R, i), _labels_str(S, j)] for i, j in enumerate(witness.bijection)]}
    ext.update(extra or {})
    return Record(case, params, R.rank, S.rank, None, FAIL if problems else PASS, EIG_TOL,
                  "; ".join(problems), ext)


def _ring(ct, level):
    return build_fusion_ring(LevelContext(ct, level))


def equivalence_cases() -> list[tuple[str, callable]]:
    z5 = lambda: even_subring_sl2(5)  # noqa: E731
    cases = [
        ("G2@8 ~ sl2@3", lambda: (_ring("G2", 8), sl2_ring(3))),
        ("G2@10 ~ Z(sl2@5)xZ(sl2@5)", lambda: (_ring("G2", 10), deligne_product(z5(), z5()))),
        ("G2@11 ~ Z(sl2@11)", lambda: (_ring("G2", 11), even_subring_sl2(11))),
        ("F4@15 ~ Z(sl2@5)xZ(sl2@5)", lambda: (_ring("F4", 15), deligne_product(z5(), z5()))),
        ("F4@17 ~ E8@34", None),
        ("so5@9 ~ sp4@9", lambda: (_ring("B2", 9), _ring("C2", 9))),
        ("so5@11 ~ sp6@11", lambda: (_ring("B2", 11), _ring("C3", 11))),
        ("so7@11 ~ sp4@11", lambda: (_ring("B3", 11), _ring("C2", 11))),
        ("so7@9 ~ sl2@9", lambda: (_ring("B3", 9), sl2_ring(9))),
    ]
    return cases


def f4_e8_equivalence() -> Record:
    """Generator route: only ``N_{lambda_8}`` is computed on the E8 side; the
    rest of that ring is rebuilt from a generation certificate."""
    R = _ring("F4", 17)
    ctx = LevelContext("E8", 34)
    labels = alcove_labels(ctx)
    gS = labels.index((0, 0, 0, 0, 0, 0, 0, 1))
    NgS = fusion_matrix_of(ctx, labels[gS], labels)
    S = ring_from_generator(labels, NgS, gS, name="C(E8, l=34)")
    gR = R.index((1, 0, 0, 0))
    certR, certS = generation_certificate(R, gR), generation_certificate(S, gS)
    witness = find_equivalence(R, S)
    extra = {"generator": [format_weight(R.labels[gR]), format_weight(S.labels[gS])],
             "certificate_depths": [list(certR.depth), list(certS.depth)]}
    rec = _witness_record("F4@17 ~ E8@34", R, S, witness, extra)
    if witness is not None:
        if witness.bijection[gR] != gS:
            rec.extra["generator_note"] = "search matched the generator to a different label"
        gv = generator_equivalence(R, gR, S.fusion_matrix(witness.bijection[gR]), witness.bijection)
        axioms = S.violations()
        rec.extra.update(mode="generator-certificate", generator_check=gv.ok,
                         reconstructed_axioms=axioms or "ok")
        if not (gv.ok and certS.ok and not axioms):
            rec.verdict = FAIL
            rec.reason = "; ".join(filter(None, [rec.reason, gv.reason, certS.reason] + axioms))
    return rec


def check_equivalences(names: Sequence[str] | None = None) -> Report:
    rep = Report(["equivalences"] + list(names or []))
    for case, make in equivalence_cases():
        if names and case not in names:
            continue
        if make is None:
            rep.add(f4_e8_equivalence())
            continue
        R, S = make()
        rep.add(_witness_record(case, R, S, find_equivalence(R, S)))
    return rep


# tables

def ordered_labels(ctx: LevelContext, order: str = "default") -> list:
    if order == "paired":
        key = (str(ctx.rs.cartan_type), ctx.level)
        if key not in PAIRED_ORDERS:
            raise ValueError(f"no paired ordering for {key[0]} at l={key[1]}")
        return list(PAIRED_ORDERS[key])
    if order != "default":
        raise ValueError(f"unknown order {order!r}")
    return alcove_labels(ctx)


def table_labels(ct: str, level: int, order: str = "default") -> Report:
    ctx = LevelContext(ct, level)
    labels = ordered_labels(ctx, order)
    rep = Report(["labels", str(ctx.rs.cartan_type), str(level), f"order={order}"])
    for i, lab in enumerate(labels):
        rep.add(Record("label", {"index": i, "weight": list(lab)}, format_weight(lab), ctx.height(lab),
                       None, CONTEXT, None, "", {"in_alcove": ctx.contains(lab)}))
    rep.notes.append(f"{len(labels)} labels; rhs is <lam + rho, wall root> < {level}")
    return rep


def table_fusion(ct: str, level: int, lam, order: str = "default") -> Report:
    ctx = LevelContext(ct, level)
    labels = ordered_labels(ctx, order)
    M = fusion_matrix_of(ctx, lam, labels)
    rep = Report(["fusion", str(ctx.rs.cartan_type), str(level), format_weight(lam), f"order={order}"])
    for k, row in enumerate(M.tolist()):
        rep.add(Record("row", {"index": k, "weight": list(labels[k])}, row, None, None, CONTEXT, None))
    rep.notes.append(f"entry (k, j) is the multiplicity of label k in {format_weight(lam)} x label j")
    return rep


def table_dims(ct: str, level: int, z: int, tol: float = DIM_TOL) -> Report:
    r = dm.dimension_report(ct, level, z, tol)
    rep = Report(["dims", r.cartan_type, str(level), str(z), f"tol={tol}"])
    for lab, (d, f) in r.per_label.items():
        ok = abs(d) <= f + tol and f > 0
        rep.add(Record("dim", {"weight": list(lab), "label": format_weight(lab)}, d, f, f - abs(d),
                       PASS if ok else FAIL, tol, "" if ok else "Perron bound violated"))
    rep.add(Record("global", {"l": level, "z": z}, r.global_dim, r.fp_global, r.fp_global - r.global_dim,
                   CONTEXT, tol, "", {"pseudo_unitary": r.pseudo_unitary, "all_positive": r.all_positive}))
    return rep


def table_scan(ct: str, level: int, tol: float = DIM_TOL, method: str = "auto") -> Report:
    res = dm.pseudo_unitarity_scan(ct, level, tol, method=method)
    rep = Report(["scan", res.cartan_type, str(level), f"method={method}", f"tol={tol}"])
    for z, e in res.entries.items():
        ok = abs(e.dim_L1) <= e.fpdim_L1 + tol
        extra = {"pseudo_unitary": e.pseudo_unitary, "strict": e.strict, "basis": e.basis}
        if e.global_dim is not None:
            extra.update(global_dim=e.global_dim, fp_global=e.fp_global)
        rep.add(Record("z", {"l": level, "z": z}, e.dim_L1, e.fpdim_L1, e.gap,
                       PASS if ok else FAIL, tol, "" if ok else "Perron bound violated", extra))
    pu = [z for z, e in res.entries.items() if e.pseudo_unitary]
    rep.notes.append(f"rank {res.rank}; pseudo-unitary at z in {pu}; minimum gap {res.min_gap:.12g}")
    if res.lemma_partner is not None:
        rep.notes.append(f"L1 occurs in X_j x X_j* for j = {format_weight(res.lemma_partner)}")
    return rep
