"""Categorical and Frobenius-Perron dimensions, global dimensions and
pseudo-unitarity verdicts for C(g, q, l) with q = exp(pi i z / l).

Dimensions are floating point (numpy float64 by default).  Scalar entry points
accept ``dps`` to evaluate with mpmath at that many decimal digits; the
``QGFUSION_DPS`` environment variable sets the default.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fusion import FusionRing, LevelContext, alcove_labels, fusion_coefficients
from .rootsystem import RootSystem, Weight, build_root_system, to_dominant

DIM_TOL = 1e-9
EIG_TOL = 1e-8


def _default_dps():
    v = os.environ.get("QGFUSION_DPS", "").strip()
    return int(v) if v else None


@dataclass(frozen=True)
class RootOfUnityChoice:
    level: int
    z: int

    def __post_init__(self):
        l, z = int(self.level), int(self.z)
        if l < 2 or not 1 <= z <= l - 1 or math.gcd(z, l) != 1:
            raise ValueError(f"need 1 <= z <= l-1 with gcd(z, l) = 1, got z={z}, l={l}")


def admissible_z(level: int) -> list[int]:
    return [z for z in range(1, level) if math.gcd(z, level) == 1]


def _sin_ratio_product(num: Sequence[int], den: Sequence[int], angle: float, dps=None):
    """prod_a sin(num_a * angle) / sin(den_a * angle), float or mpmath."""
    dps = dps if dps is not None else _default_dps()
    if dps:
        import mpmath
        with mpmath.workdps(dps):
            a = mpmath.mpf(angle[0]) * mpmath.pi / angle[1]
            val = mpmath.mpf(1)
            for n, d in zip(num, den):
                sd = mpmath.sin(d * a)
                if abs(sd) < mpmath.mpf(10) ** (-dps // 2):
                    raise ZeroDivisionError(f"vanishing q-number [{d}]")
                val *= mpmath.sin(n * a) / sd
            return float(val)
    a = math.pi * angle[0] / angle[1]
    val = 1.0
    for n, d in zip(num, den):
        if d % angle[1] == 0 or (d * angle[0]) % angle[1] == 0:
            raise ZeroDivisionError(f"vanishing q-number [{d}]")
        val *= math.sin(n * a) / math.sin(d * a)
    return val


def q_number(n: int, choice: RootOfUnityChoice) -> float:
    t = math.pi * choice.z / choice.level
    return math.sin(n * t) / math.sin(t)


def _ctx(rs, level) -> LevelContext:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return LevelContext(rs, level)


def qdim(rs: RootSystem | str, level: int, z: int, lam, dps=None) -> float:
    """``prod_{alpha > 0} [<lam+rho, alpha>] / [<rho, alpha>]`` at ``q = e^{pi i z / l}``."""
    ctx = _ctx(rs, level)
    RootOfUnityChoice(level, z)
    lam = ctx.rs._check_weight(lam)
    if not ctx.contains(lam):
        raise ValueError(f"{lam} is not in C_l")
    P = ctx.rs.root_pairings
    num = (P @ (np.array(lam) + 1)).tolist()
    den = P.sum(axis=1).tolist()
    return _sin_ratio_product(num, den, (z, level), dps)


def coroot_dimension(rs: RootSystem | str, level: int, lam, dps=None) -> float:
    """``d_lam(e^{pi i / l}) = prod over positive coroots`` for any integral weight."""
    if isinstance(rs, str):
        rs = build_root_system(rs)
    lam = rs._check_weight(lam)
    Q = rs.coroot_coeffs
    num = (Q @ (np.array(lam) + 1)).tolist()
    den = Q.sum(axis=1).tolist()
    return _sin_ratio_product(num, den, (1, level), dps)


def fpdim_label(rs: RootSystem | str, level: int, lam, dps=None) -> float:
    """FPdim from the product formula: the coroot product at ``z = 1`` when
    ``m ∤ l`` or ``m = 1``, and ``dim_q`` at ``z = 1`` when ``m | l``."""
    ctx = _ctx(rs, level)
    lam = ctx.rs._check_weight(lam)
    if not ctx.contains(lam):
        raise ValueError(f"{lam} is not in C_l for {ctx.rs.cartan_type} at l={level}")
    if ctx.m_divides and ctx.rs.m != 1:
        return qdim(ctx.rs, level, 1, lam, dps)
    return coroot_dimension(ctx.rs, level, lam, dps)


def perron_eigenvalue(M: np.ndarray, tol: float = 1e-13, max_iter: int = 100_000) -> float:
    """Largest real eigenvalue of a non-negative matrix by shifted power iteration.

    Iterates ``M + I`` from the all-ones vector; the shift makes the Perron root
    strictly dominant even for periodic matrices such as permutations.
    """
    A = np.asarray(M, dtype=float)
    n = A.shape[0]
    B = A + np.eye(n)
    x = np.ones(n) / math.sqrt(n)
    lam = 0.0
    for _ in range(max_iter):
        y = B @ x
        ny = np.linalg.norm(y)
        x = y / ny
        lam = float(x @ (A @ x))
        res = np.linalg.norm(A @ x - lam * x)
        if res <= tol * max(1.0, abs(lam)):
            return lam
    raise ArithmeticError(f"power iteration did not converge in {max_iter} steps (residual {res:.3g})")


def fpdim_perron(ring: FusionRing, i: int, tol: float = 1e-13, max_iter: int = 100_000) -> float:
    return perron_eigenvalue(ring.fusion_matrix(i), tol, max_iter)


def dimension_vector_qdim(ring: FusionRing, rs, level, z) -> np.ndarray:
    return np.array([qdim(rs, level, z, lam) for lam in ring.labels])


def dimension_vector_fp(ring: FusionRing, rs, level) -> np.ndarray:
    return np.array([fpdim_label(rs, level, lam) for lam in ring.labels])


def homomorphism_residual(ring: FusionRing, f: np.ndarray) -> float:
    """``max_i ||N_i f - f_{i*} f||_inf / ||f||_inf``; zero for a dimension function."""
    f = np.asarray(f, dtype=float)
    scale = np.abs(f).max()
    worst = 0.0
    for i in range(ring.rank):
        r = ring.fusion_matrix(i) @ f - f[ring.dual[i]] * f
        worst = max(worst, float(np.abs(r).max()) / scale)
    return worst


# vectorized evaluation over many labels

def _label_array(labels) -> np.ndarray:
    return np.asarray(labels, dtype=np.int64).reshape(len(labels), -1)


def qdims_array(rs: RootSystem, level: int, z: int, labels: np.ndarray) -> np.ndarray:
    P = rs.root_pairings
    X = (labels + 1) @ P.T
    t = math.pi * z / level
    den = np.prod(np.sin(P.sum(axis=1) * t))
    out = np.empty(len(labels))
    for s in range(0, len(labels), 20_000):
        out[s:s + 20_000] = np.prod(np.sin(X[s:s + 20_000] * t), axis=1)
    return out / den


def fpdims_array(rs: RootSystem, level: int, labels: np.ndarray) -> np.ndarray:
    if level % rs.m == 0 and rs.m != 1:
        return qdims_array(rs, level, 1, labels)
    Q = rs.coroot_coeffs
    t = math.pi / level
    X = (labels + 1) @ Q.T
    den = np.prod(np.sin(Q.sum(axis=1) * t))
    out = np.empty(len(labels))
    for s in range(0, len(labels), 20_000):
        out[s:s + 20_000] = np.prod(np.sin(X[s:s + 20_000] * t), axis=1)
    return out / den


@dataclass(frozen=True)
class DimensionReport:
    cartan_type: str
    level: int
    z: int
    per_label: dict  # label -> (dim_q, fpdim)
    global_dim: float
    fp_global: float
    pseudo_unitary: bool
    tolerance: float

    @property
    def all_positive(self) -> bool:
        return all(d > self.tolerance for d, _ in self.per_label.values())


def _pu_verdict(global_dim, fp_global, tol) -> bool:
    return abs(global_dim - fp_global) <= tol * max(1.0, fp_global)


def dimension_report(rs: RootSystem | str, level: int, z: int, tol: float = DIM_TOL) -> DimensionReport:
    """Per-label dimensions and the pseudo-unitarity verdict.

    The verdict compares global dimensions with relative tolerance ``tol``
    (global dimensions grow quickly with ``l``).
    """
    ctx = _ctx(rs, level)
    RootOfUnityChoice(level, z)
    labels = alcove_labels(ctx)
    L = _label_array(labels)
    dq = qdims_array(ctx.rs, level, z, L)
    fp = fpdims_array(ctx.rs, level, L)
    g, fg = float(np.sum(dq ** 2)), float(np.sum(fp ** 2))
    per = {lab: (float(a), float(b)) for lab, a, b in zip(labels, dq, fp)}
    return DimensionReport(str(ctx.rs.cartan_type), level, z, per, g, fg,
                           _pu_verdict(g, fg, tol), tol)


def fundamental(rs: RootSystem, i: int = 0) -> Weight:
    return tuple(int(k == i) for k in range(rs.rank))


def dual_label(rs: RootSystem, lam) -> Weight:
    """Highest weight of the dual module, ``-w0(lam)``."""
    return to_dominant(rs, tuple(-v for v in lam))


def lemma_partner(ctx: LevelContext, target: Weight) -> Weight | None:
    """A label ``j`` with ``X_target`` a summand of ``X_j (x) X_j*``, if a cheap one exists.

    Candidates are the fundamental weights in the alcove, smallest first.
    """
    rs = ctx.rs
    cands = [fundamental(rs, i) for i in range(rs.rank)]
    from .classical import weyl_dimension
    cands = sorted((c for c in cands if ctx.contains(c)), key=lambda c: weyl_dimension(rs, c))
    for j in cands:
        jd = dual_label(rs, j)
        if fusion_coefficients(ctx, j, jd).get(tuple(target), 0) > 0:
            return j
    return None


def alcove_size(ctx: LevelContext) -> int:
    """Number of labels, by counting solutions of ``sum v_i lam_i <= budget``."""
    v = [int(c) for c in ctx.wall_pairing]
    budget = ctx.level - 1 - sum(v)
    ways = [1] + [0] * budget
    for c in v:
        for b in range(c, budget + 1):
            ways[b] += ways[b - c]
    return sum(ways)


@dataclass(frozen=True)
class ScanEntry:
    z: int
    pseudo_unitary: bool
    basis: str  # "global" or "lemma"
    dim_L1: float
    fpdim_L1: float
    gap: float  # fpdim - dim_q for X_{Lambda_1}
    strict: bool  # dim_q(Lambda_1) + tol < fpdim(Lambda_1)
    global_dim: float | None = None
    fp_global: float | None = None


@dataclass(frozen=True)
class ScanResult:
    cartan_type: str
    level: int
    rank: int
    entries: dict = field(default_factory=dict)  # z -> ScanEntry
    lemma_partner: Weight | None = None
    tolerance: float = DIM_TOL

    @property
    def min_gap(self) -> float:
        return min(e.gap for e in self.entries.values())


def pseudo_unitarity_scan(rs: RootSystem | str, level: int, tol: float = DIM_TOL,
                          max_labels: int = 100_000, method: str = "auto") -> ScanResult:
    """Verdict for every admissible ``z``.

    ``method="global"`` compares global dimensions over all labels.  ``"lemma"``
    uses that a pseudo-unitary category has ``dim = FPdim`` on every summand of
    some ``X_j (x) X_j*``; it needs such a ``j`` for ``X_{Lambda_1}`` and only
    evaluates that label.  ``"auto"`` picks global when the rank is at most
    ``max_labels``.
    """
    ctx = _ctx(rs, level)
    rs = ctx.rs
    L1 = fundamental(rs, 0)
    if not ctx.contains(L1):
        raise ValueError(f"Lambda_1 is not a label at l={level}")
    rank = alcove_size(ctx)
    if method == "auto":
        method = "global" if rank <= max_labels else "lemma"
    partner = lemma_partner(ctx, L1)
    if method == "lemma" and partner is None:
        raise ValueError("no partner j with Lambda_1 in X_j (x) X_j*; use method='global'")
    fp1 = fpdim_label(rs, level, L1)
    L = _label_array(alcove_labels(ctx)) if method == "global" else None
    fp = fpdims_array(rs, level, L) if L is not None else None
    fg = float(np.sum(fp ** 2)) if fp is not None else None
    entries = {}
    for z in admissible_z(level):
        d1 = qdim(rs, level, z, L1)
        gap = fp1 - d1
        strict = d1 + tol < fp1
        if method == "global":
            g = float(np.sum(qdims_array(rs, level, z, L) ** 2))
            pu = _pu_verdict(g, fg, tol)
            entries[z] = ScanEntry(z, pu, "global", d1, fp1, gap, strict, g, fg)
        else:
            # dim_q(Lambda_1) != FPdim(Lambda_1) rules pseudo-unitarity out; equality decides nothing
            if abs(gap) <= tol:
                raise ArithmeticError(f"lemma basis inconclusive at z={z}; use method='global'")
            entries[z] = ScanEntry(z, False, "lemma", d1, fp1, gap, strict)
    return ScanResult(str(rs.cartan_type), level, rank, entries, partner, tol)
