"""Fusion rings Gr(C(g, q, l)) from the alternating affine Weyl sum of classical
tensor multiplicities.

The label set is the alcove of the dot action of the affine Weyl group W_l.
When ``m | l`` the far wall is ``<x, theta> = l``; otherwise it is
``<x, theta_s> = l``.  Nothing here depends on the choice of ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from . import kernels
from .classical import accumulate, classical_tensor
from .rootsystem import RootSystem, Weight, build_root_system


@dataclass(frozen=True)
class LevelContext:
    rs: RootSystem
    level: int

    def __post_init__(self):
        if isinstance(self.rs, str):
            object.__setattr__(self, "rs", build_root_system(self.rs))
        if int(self.level) < 2:
            raise ValueError(f"level must be >= 2, got {self.level}")
        object.__setattr__(self, "level", int(self.level))
        rho_height = int(self.wall_pairing.sum())
        if rho_height >= self.level:
            raise ValueError(
                f"C_l is empty for {self.rs.cartan_type} at l={self.level}: "
                f"need l > {rho_height} in the {'m | l' if self.m_divides else 'm ∤ l'} regime "
                f"(smallest viable l: {_min_level(self.rs)})")

    @property
    def m_divides(self) -> bool:
        return self.level % self.rs.m == 0

    @property
    def wall_pairing(self) -> np.ndarray:
        """``v`` with ``v . x = <x, theta>`` (m | l) or ``<x, theta_s>`` (m ∤ l)."""
        return self.rs.theta_pairing if self.m_divides else self.rs.theta_s_pairing

    @property
    def affine_step(self) -> tuple[int, np.ndarray]:
        """``(div, v)`` so the far-wall reflection is ``x - ((p - l) / div) v``."""
        if self.m_divides:
            return self.rs.m, np.array(self.rs.theta, dtype=np.int64)
        return 1, np.array(self.rs.theta_s, dtype=np.int64)

    def height(self, lam) -> int:
        return int(self.wall_pairing @ (np.asarray(lam, dtype=np.int64) + 1))

    def contains(self, lam) -> bool:
        return min(lam) >= 0 and self.height(lam) < self.level

    def fold(self, points: np.ndarray):
        div, vec = self.affine_step
        return kernels.fold_points(points, self.rs.cartan_matrix, self.wall_pairing,
                                   self.level, div, vec)


def _min_level(rs: RootSystem) -> int:
    l = 2
    while True:
        v = rs.theta_pairing if l % rs.m == 0 else rs.theta_s_pairing
        if int(v.sum()) < l:
            return l
        l += 1


def alcove_labels(ctx: LevelContext) -> list[Weight]:
    """Dominant weights strictly inside the alcove, unit first, then by height
    ``<lam + rho, wall root>`` and reverse-lexicographic coordinates."""
    v = [int(c) for c in ctx.wall_pairing]
    budget = ctx.level - 1 - sum(v)  # sum v_i lam_i <= budget
    r = len(v)
    out: list[Weight] = []

    def rec(i, left, cur):
        if i == r:
            out.append(tuple(cur))
            return
        for a in range(left // v[i] + 1):
            cur.append(a)
            rec(i + 1, left - a * v[i], cur)
            cur.pop()

    rec(0, budget, [])
    out.sort(key=lambda lam: (ctx.height(lam), tuple(-a for a in lam)))
    return out


def fold_affine(ctx: LevelContext, mu) -> tuple[int, Weight | None]:
    """Bring ``mu`` into the alcove by the dot action of W_l.

    Returns ``(epsilon(w), w.mu)``, or ``(0, None)`` when ``mu + rho`` lies on a wall.
    """
    mu = ctx.rs._check_weight(mu)
    signs, out = ctx.fold(np.array([mu], dtype=np.int64) + 1)
    s = int(signs[0])
    if s == 0:
        return 0, None
    return s, tuple(int(v) - 1 for v in out[0])


def _require_label(ctx, lam) -> Weight:
    lam = ctx.rs._check_weight(lam)
    if not ctx.contains(lam):
        raise ValueError(f"{lam} is not in C_l for {ctx.rs.cartan_type} at l={ctx.level}")
    return lam


def fusion_coefficients(ctx: LevelContext, lam, mu) -> dict[Weight, int]:
    lam = _require_label(ctx, lam)
    mu = _require_label(ctx, mu)
    terms = classical_tensor(ctx.rs, lam, mu).terms
    if not terms:
        return {}
    pts = np.array(list(terms), dtype=np.int64) + 1
    mults = np.array(list(terms.values()), dtype=np.int64)
    signs, folded = ctx.fold(pts)
    out = accumulate(signs, folded, mults)
    bad = {k: v for k, v in out.items() if v < 0}
    if bad:
        raise ArithmeticError(f"negative fusion coefficient in {lam} x {mu}: {bad}")
    return out


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Unital based ring with ``N[i, j, k] = N_{i,j}^k``; label 0 is the unit."""

    labels: tuple
    N: np.ndarray
    dual: tuple[int, ...]
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        N = np.asarray(self.N, dtype=np.int64)
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))
        n = len(self.labels)
        if N.shape != (n, n, n) or len(self.dual) != n:
            raise ValueError("inconsistent ring shapes")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        return self.labels.index(tuple(label) if isinstance(label, list) else label)

    def fusion_matrix(self, i: int) -> np.ndarray:
        """``N_i`` with ``(k, j)`` entry ``N_{i,j}^k``."""
        return self.N[i].T.copy()

    def is_self_dual(self) -> bool:
        return all(d == i for i, d in enumerate(self.dual))

    def violations(self, limit: int = 1) -> list[str]:
        """Axiom failures (unit, duality symmetries, associativity), up to ``limit``."""
        N, d, n = self.N, np.array(self.dual), self.rank
        out: list[str] = []

        def first(mask, msg):
            idx = np.argwhere(mask)
            if len(idx) and len(out) < limit:
                out.append(f"{msg} at {tuple(int(v) for v in idx[0])}")

        first(N < 0, "negative constant")
        first(N[0] != np.eye(n, dtype=np.int64), "unit row N_0 != identity")
        first(N != N.transpose(1, 0, 2), "N_ij^k != N_ji^k")
        first(N != N[np.ix_(d, d, d)], "N_ij^k != N_i*j*^k*")
        # N_{i,j}^k = N_{i,k*}^{j*}
        first(N != N[:, d, :][:, :, d].transpose(0, 2, 1), "N_ij^k != N_ik*^j*")
        first(N[:, :, 0] != (np.arange(n)[None, :] == d[:, None]), "N_ij^0 != delta_{j,i*}")
        if sorted(d) != list(range(n)) or any(d[d[i]] != i for i in range(n)):
            out.append("dual is not an involution")
        lhs = np.einsum("ijt,tks->ijks", N, N)
        rhs = np.einsum("jkt,its->ijks", N, N)
        first(lhs != rhs, "associativity")
        return out[:limit]

    def check(self):
        bad = self.violations()
        if bad:
            raise AssertionError(f"{self.name or 'ring'}: {bad[0]}")
        return True

    def restrict(self, indices: Sequence[int], name: str = "") -> "FusionRing":
        """Based subring on ``indices`` (must contain 0 and be closed)."""
        idx = list(indices)
        if idx[0] != 0:
            raise ValueError("subring must start with the unit")
        outside = np.setdiff1d(np.arange(self.rank), idx)
        sub = self.N[np.ix_(idx, idx)]
        if sub[:, :, outside].any():
            raise ValueError("index set is not closed under fusion")
        pos = {g: k for k, g in enumerate(idx)}
        dual = [pos[self.dual[g]] for g in idx]
        return FusionRing([self.labels[g] for g in idx], sub[:, :, idx], dual, name=name)


def fusion_matrix(ring: FusionRing, i: int) -> np.ndarray:
    return ring.fusion_matrix(i)


def fusion_matrix_of(ctx: LevelContext, lam, labels: Sequence | None = None) -> np.ndarray:
    """``N_lam`` on the given label order without building the whole ring."""
    labels = [tuple(l) for l in (labels if labels is not None else alcove_labels(ctx))]
    pos = {l: k for k, l in enumerate(labels)}
    n = len(labels)
    M = np.zeros((n, n), dtype=np.int64)
    for j, mu in enumerate(labels):
        for nu, c in fusion_coefficients(ctx, lam, mu).items():
            M[pos[nu], j] = c
    return M


def build_fusion_ring(ctx: LevelContext, name: str | None = None) -> FusionRing:
    labels = alcove_labels(ctx)
    pos = {l: k for k, l in enumerate(labels)}
    n = len(labels)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            for nu, c in fusion_coefficients(ctx, labels[i], labels[j]).items():
                N[i, j, pos[nu]] = N[j, i, pos[nu]] = c
    dual = []
    for i in range(n):
        hits = np.flatnonzero(N[i, :, 0])
        if len(hits) != 1 or N[i, hits[0], 0] != 1:
            raise ArithmeticError(f"label {labels[i]} has no unique dual")
        dual.append(int(hits[0]))
    name = name or f"C({ctx.rs.cartan_type}, l={ctx.level})"
    return FusionRing(labels, N, dual, name=name,
                      meta={"type": str(ctx.rs.cartan_type), "level": ctx.level})
