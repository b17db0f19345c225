"""Classical representation data: Freudenthal multiplicities, Weyl dimensions and
Brauer-Klimyk tensor product decompositions.  Everything here is exact integer
arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .rootsystem import CartanType, RootSystem, Weight, build_root_system, to_dominant, weyl_orbit


@dataclass(frozen=True)
class DominantWeightTable:
    highest: Weight
    entries: dict  # dominant weight -> multiplicity, ordered from the top down


@dataclass(frozen=True)
class ClassicalDecomposition:
    left: Weight
    right: Weight
    terms: dict  # dominant weight -> multiplicity


def _dominant(rs: RootSystem, lam) -> Weight:
    lam = rs._check_weight(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not a dominant weight of {rs.cartan_type}")
    return lam


def weyl_dimension(rs: RootSystem, lam) -> int:
    lam = _dominant(rs, lam)
    return _weyl_dim(rs.cartan_type, lam)


@lru_cache(maxsize=None)
def _weyl_dim(ct: CartanType, lam: Weight) -> int:
    rs = build_root_system(ct)
    x = np.array(lam, dtype=np.int64) + 1
    num = rs.coroot_coeffs @ x
    den = rs.coroot_coeffs.sum(axis=1)
    val = Fraction(1)
    for a, b in zip(num.tolist(), den.tolist()):
        val *= Fraction(a, b)
    assert val.denominator == 1
    return int(val)


def dominant_weights(rs: RootSystem, lam) -> DominantWeightTable:
    lam = _dominant(rs, lam)
    return DominantWeightTable(lam, dict(_freudenthal(rs.cartan_type, lam)))


@lru_cache(maxsize=None)
def _freudenthal(ct: CartanType, lam: Weight) -> tuple:
    rs = build_root_system(ct)
    roots = [tuple(int(v) for v in r) for r in rs.positive_roots]
    pair = rs.root_pairings.tolist()  # <x, alpha> = pair[a] . x
    norms2 = (2 * rs.half_norms).tolist()  # <alpha, alpha>

    # dominant weights below lam, reached by subtracting positive roots
    found = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for r in roots:
            nu = tuple(a - b for a, b in zip(mu, r))
            if min(nu) >= 0 and nu not in found:
                found.add(nu)
                stack.append(nu)
    rho = rs.rho

    def height(mu):
        return rs.form_int(mu, rho)

    order = sorted(found, key=lambda mu: (-height(mu), tuple(-v for v in mu)))
    den = rs.form_denominator
    top = rs.form_int(tuple(v + 1 for v in lam), tuple(v + 1 for v in lam))
    mult = {}
    for mu in order:
        if mu == lam:
            mult[mu] = 1
            continue
        total = 0
        for a, r in enumerate(roots):
            pa = pair[a]
            base = sum(p * v for p, v in zip(pa, mu))
            k = 1
            while True:
                w = tuple(v + k * c for v, c in zip(mu, r))
                mw = mult.get(to_dominant(rs, w), 0)
                if mw == 0:
                    break
                total += mw * (base + k * norms2[a])
                k += 1
        gap = top - rs.form_int(tuple(v + 1 for v in mu), tuple(v + 1 for v in mu))
        num = 2 * den * total
        assert gap > 0 and num % gap == 0, (lam, mu)
        if num:
            mult[mu] = num // gap
    return tuple(mult.items())


def weight_multiplicity(rs: RootSystem, lam, mu) -> int:
    lam = _dominant(rs, lam)
    mu = rs._check_weight(mu)
    return dict(_freudenthal(rs.cartan_type, lam)).get(to_dominant(rs, mu), 0)


def all_weights(rs: RootSystem, lam) -> tuple[np.ndarray, np.ndarray]:
    """Every weight of ``V_lam`` with its multiplicity, as integer arrays."""
    lam = _dominant(rs, lam)
    return _all_weights(rs.cartan_type, lam)


@lru_cache(maxsize=256)
def _all_weights(ct: CartanType, lam: Weight):
    rs = build_root_system(ct)
    pts, mults = [], []
    for mu, m in _freudenthal(ct, lam):
        orb = weyl_orbit(rs, mu)
        pts.extend(orb)
        mults.extend([m] * len(orb))
    w = np.array(pts, dtype=np.int64).reshape(-1, rs.rank)
    m = np.array(mults, dtype=np.int64)
    w.setflags(write=False)
    m.setflags(write=False)
    return w, m


def accumulate(signs, folded, mults, shift=1) -> dict:
    """Sum ``sign * mult`` per folded point, returning ``{point - shift: total}``
    with zero totals dropped, in lexicographic order."""
    keep = signs != 0
    if not keep.any():
        return {}
    pts = folded[keep] - shift
    vals = signs[keep] * mults[keep]
    uniq, inv = np.unique(pts, axis=0, return_inverse=True)
    tot = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(tot, inv.reshape(-1), vals)
    return {tuple(int(v) for v in u): int(t) for u, t in zip(uniq, tot) if t != 0}


def classical_tensor(rs: RootSystem, lam, mu) -> ClassicalDecomposition:
    """Decompose ``V_lam (x) V_mu`` by the Brauer-Klimyk rule, summing over the
    weights of the factor of smaller dimension."""
    lam = _dominant(rs, lam)
    mu = _dominant(rs, mu)
    big, small = (lam, mu) if weyl_dimension(rs, lam) >= weyl_dimension(rs, mu) else (mu, lam)
    w, m = all_weights(rs, small)
    pts = w + np.array(big, dtype=np.int64) + 1
    zero = np.zeros(rs.rank, dtype=np.int64)
    signs, folded = kernels.fold_points(pts, rs.cartan_matrix, zero, 0, 1, zero)
    terms = accumulate(signs, folded, m)
    if any(v < 0 for v in terms.values()):
        raise ArithmeticError(f"negative classical multiplicity in {lam} x {mu}")
    terms = dict(sorted(terms.items(), key=lambda kv: (-rs.form_int(kv[0], rs.rho), kv[0])))
    return ClassicalDecomposition(lam, mu, terms)
