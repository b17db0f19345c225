"""Root systems of the simple Lie algebras, normalized so short roots have norm 2.

Weights are integer tuples in the fundamental-weight basis, so the pairing
``<lam, alpha_i^vee>`` is simply ``lam[i]``.  Roots are stored in the same
coordinates (row ``i`` of the Cartan matrix is the simple root ``alpha_i``).

Numbering of the simple roots
-----------------------------

====  =======================================================================
type  convention
====  =======================================================================
A_n   Bourbaki
B_n   Bourbaki (alpha_n short)
C_n   Bourbaki (alpha_n long)
D_n   Bourbaki
E_n   Bourbaki (E8: Lambda_8 is the 248-dimensional adjoint)
F4    alpha_1, alpha_2 short, alpha_3, alpha_4 long, i.e. Bourbaki reversed,
      so Lambda_1 is the 26-dimensional representation
G2    alpha_1 short, alpha_2 long (Lambda_1 is the 7-dimensional representation)
====  =======================================================================
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

Weight = tuple[int, ...]

_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise ValueError(f"unknown Lie family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_RULES[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank!r} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, token: str) -> "CartanType":
        """Parse ``"G2"``, ``"b3"``, or a classical name like ``"so7"``, ``"sp4"``, ``"sl2"``."""
        tok = token.strip().replace("_", "").lower()
        m = re.fullmatch(r"([a-g])(\d+)", tok)
        if m:
            return cls(m.group(1).upper(), int(m.group(2)))
        m = re.fullmatch(r"(sl|so|sp)(\d+)", tok)
        if not m:
            raise ValueError(f"cannot parse Lie type {token!r}")
        kind, n = m.group(1), int(m.group(2))
        if kind == "sl" and n >= 2:
            return cls("A", n - 1)
        if kind == "sp" and n % 2 == 0 and n >= 2:
            # sp_2 = sl_2
            return cls("A", 1) if n == 2 else cls("C", n // 2)
        if kind == "so" and n >= 5:
            if n % 2:
                return cls("B", (n - 1) // 2)
            if n >= 8:
                return cls("D", n // 2)
        raise ValueError(f"no simple Lie type for {token!r} in this library")


def _inner_products(ct: CartanType) -> list[list[int]]:
    """Gram matrix <alpha_i, alpha_j> of the simple roots (short roots have norm 2)."""
    n, f = ct.rank, ct.family
    S = [[0] * n for _ in range(n)]

    def link(i, j, v):
        S[i][j] = S[j][i] = v

    if f == "A":
        for i in range(n):
            S[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif f == "B":
        for i in range(n - 1):
            S[i][i] = 4
        S[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif f == "C":
        for i in range(n - 1):
            S[i][i] = 2
        S[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif f == "D":
        for i in range(n):
            S[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif f == "E":
        for i in range(n):
            S[i][i] = 2
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        for i, j in edges:
            link(i, j, -1)
    elif f == "F":
        S[0][0] = S[1][1] = 2
        S[2][2] = S[3][3] = 4
        link(0, 1, -1)
        link(1, 2, -2)
        link(2, 3, -2)
    elif f == "G":
        S[0][0], S[1][1] = 2, 6
        link(0, 1, -3)
    return S


def _frac_inverse(M: list[list[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root data for one simple type.

    Attributes of note:

    ``cartan_matrix[i][j] = <alpha_i, alpha_j^vee>``; row ``i`` is ``alpha_i`` in
    weight coordinates.  ``root_coeffs`` / ``coroot_coeffs`` express each positive
    root / coroot in the simple root / simple coroot basis, so that
    ``<lam, alpha^vee> = coroot_coeffs[a] . lam`` and
    ``<lam, alpha> = half_norms[a] * coroot_coeffs[a] . lam``.
    """

    cartan_type: CartanType
    cartan_matrix: np.ndarray
    simple_half_norms: tuple[int, ...]
    quadratic_form: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Weight, ...]
    root_coeffs: np.ndarray
    coroot_coeffs: np.ndarray
    half_norms: np.ndarray
    m: int
    theta: Weight
    theta_s: Weight
    _gram_int: np.ndarray = field(repr=False)
    _gram_den: int = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def simple_roots(self) -> np.ndarray:
        return self.cartan_matrix

    @property
    def positive_coroots(self) -> np.ndarray:
        """Positive coroots in the simple-coroot basis (pairing vectors)."""
        return self.coroot_coeffs

    @property
    def root_pairings(self) -> np.ndarray:
        """Integer matrix ``P`` with ``(P @ lam)[a] = <lam, alpha_a>``."""
        return self.half_norms[:, None] * self.coroot_coeffs

    def root_index(self, root: Weight) -> int:
        return self.positive_roots.index(tuple(root))

    @property
    def theta_pairing(self) -> np.ndarray:
        """Vector ``v`` with ``v . lam = <lam, theta>``."""
        return self.root_pairings[self.root_index(self.theta)]

    @property
    def theta_s_pairing(self) -> np.ndarray:
        """Vector ``v`` with ``v . lam = <lam, theta_s>``."""
        return self.root_pairings[self.root_index(self.theta_s)]

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.cartan_type == self.cartan_type

    def __hash__(self):
        return hash(self.cartan_type)

    def _check_weight(self, x) -> tuple[int, ...]:
        x = tuple(int(v) for v in x)
        if len(x) != self.rank:
            raise ValueError(f"weight {x} has length {len(x)}, expected {self.rank}")
        return x

    def form_int(self, x, y) -> int:
        """``den * <x, y>`` as an exact integer, see :attr:`form_denominator`."""
        return int(np.asarray(x, dtype=np.int64) @ self._gram_int @ np.asarray(y, dtype=np.int64))

    @property
    def form_denominator(self) -> int:
        return self._gram_den

    def is_dominant(self, lam) -> bool:
        return all(v >= 0 for v in lam)


def build_root_system(ct: CartanType | str) -> RootSystem:
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    return _build(ct)


@lru_cache(maxsize=None)
def _build(ct: CartanType) -> RootSystem:
    S = _inner_products(ct)
    n = ct.rank
    d = [S[i][i] // 2 for i in range(n)]
    C = np.array([[2 * S[i][j] // S[j][j] for j in range(n)] for i in range(n)], dtype=np.int64)
    for i in range(n):
        for j in range(n):
            assert 2 * S[i][j] % S[j][j] == 0

    Cinv = _frac_inverse(C.tolist())
    G = [[sum(Cinv[i][k] * (d[k] if k == j else 0) for k in range(n)) for j in range(n)]
         for i in range(n)]
    G = tuple(tuple(row) for row in G)
    for i in range(n):
        for j in range(n):
            assert G[i][j] == G[j][i], "quadratic form must be symmetric"

    # root coordinates a = C^{-T} x for x in weight coordinates
    def root_coords(x):
        return tuple(sum(Cinv[j][i] * x[j] for j in range(n)) for i in range(n))

    # all roots = W-orbit of the simple roots
    seen = {tuple(int(v) for v in C[i]) for i in range(n)}
    stack = list(seen)
    while stack:
        x = stack.pop()
        for i in range(n):
            if x[i] == 0:
                continue
            y = tuple(int(a - x[i] * c) for a, c in zip(x, C[i]))
            if y not in seen:
                seen.add(y)
                stack.append(y)

    pos = []
    for x in seen:
        a = root_coords(x)
        assert all(c.denominator == 1 for c in a)
        if all(c >= 0 for c in a):
            pos.append((sum(a), x, tuple(int(c) for c in a)))
    pos.sort()
    roots = tuple(x for _, x, _ in pos)
    rcoef = np.array([a for _, _, a in pos], dtype=np.int64)

    # <alpha, alpha>/2 = sum_ij a_i a_j S_ij / 2
    Snp = np.array(S, dtype=np.int64)
    half = np.array([int(a @ Snp @ a) // 2 for a in rcoef], dtype=np.int64)
    # alpha^vee = sum_i a_i (d_i / d_alpha) alpha_i^vee
    dvec = np.array(d, dtype=np.int64)
    ccoef = rcoef * dvec[None, :]
    assert np.all(ccoef % half[:, None] == 0)
    ccoef = ccoef // half[:, None]

    m = int(half.max())
    theta = roots[int(np.argmax(rcoef.sum(axis=1)))]
    short = [k for k in range(len(roots)) if half[k] == 1]
    theta_s = roots[max(short, key=lambda k: rcoef[k].sum())]

    den = math.lcm(*(v.denominator for row in G for v in row))
    gram_int = np.array([[int(v * den) for v in row] for row in G], dtype=np.int64)

    return RootSystem(
        cartan_type=ct,
        cartan_matrix=C,
        simple_half_norms=tuple(d),
        quadratic_form=G,
        positive_roots=roots,
        root_coeffs=rcoef,
        coroot_coeffs=ccoef,
        half_norms=half,
        m=m,
        theta=theta,
        theta_s=theta_s,
        _gram_int=gram_int,
        _gram_den=den,
    )


def bilinear_form(rs: RootSystem, x, y) -> Fraction:
    x = rs._check_weight(x)
    y = rs._check_weight(y)
    return Fraction(rs.form_int(x, y), rs.form_denominator)


def simple_reflect(rs: RootSystem, i: int, lam) -> Weight:
    """Linear action of ``s_i``: ``lam - <lam, alpha_i^vee> alpha_i``."""
    lam = rs._check_weight(lam)
    if not 0 <= i < rs.rank:
        raise IndexError(f"simple root index {i} out of range for {rs.cartan_type}")
    c = lam[i]
    return tuple(a - c * int(r) for a, r in zip(lam, rs.cartan_matrix[i]))


def dot_reflect(rs: RootSystem, i: int, lam) -> Weight:
    """Dot action ``s_i . lam = s_i(lam + rho) - rho``."""
    lam = rs._check_weight(lam)
    shifted = simple_reflect(rs, i, tuple(v + 1 for v in lam))
    return tuple(v - 1 for v in shifted)


def weyl_orbit(rs: RootSystem, lam) -> list[Weight]:
    """The W-orbit of ``lam`` under the linear action, in BFS order from ``lam``."""
    lam = rs._check_weight(lam)
    C = rs.cartan_matrix.tolist()
    seen = {lam}
    out = [lam]
    k = 0
    while k < len(out):
        x = out[k]
        k += 1
        for i in range(rs.rank):
            c = x[i]
            if c == 0:
                continue
            y = tuple(a - c * r for a, r in zip(x, C[i]))
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def weyl_orbit_size(rs: RootSystem, lam) -> int:
    lam = rs._check_weight(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    return len(weyl_orbit(rs, lam))


def to_dominant(rs: RootSystem, lam) -> Weight:
    """Dominant representative of the W-orbit of ``lam`` (linear action)."""
    x = list(lam)
    C = rs.cartan_matrix.tolist()
    n = rs.rank
    while True:
        for i in range(n):
            if x[i] < 0:
                c = x[i]
                row = C[i]
                for j in range(n):
                    x[j] -= c * row[j]
                break
        else:
            return tuple(x)


def weyl_group_order(rs: RootSystem) -> int:
    return weyl_orbit_size(rs, rs.rho)
