"""Isomorphisms of unital based rings (Grothendieck equivalence).

Two routes are provided.  ``find_equivalence`` searches for a basis bijection
preserving all structure constants.  ``generation_certificate`` shows that a
single basis element ``g`` generates the ring over Q; the whole multiplication
table is then a polynomial image of ``N_g``, so matching ``N_g`` matrices under
a unit-preserving bijection already forces an isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dimensions import perron_eigenvalue
from .fusion import FusionRing, LevelContext, build_fusion_ring


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violation: tuple | None = None  # (i, j, k) in R's indices
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_based_isomorphism(R: FusionRing, S: FusionRing, sigma: Sequence[int]) -> Verdict:
    if R.rank != S.rank:
        return Verdict(False, None, f"rank mismatch {R.rank} != {S.rank}")
    sigma = np.asarray(sigma, dtype=np.int64)
    if sorted(sigma.tolist()) != list(range(R.rank)):
        return Verdict(False, None, "not a bijection")
    if sigma[0] != 0:
        return Verdict(False, None, "unit not mapped to unit")
    bad = np.argwhere(R.N != S.N[np.ix_(sigma, sigma, sigma)])
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        return Verdict(False, (i, j, k),
                       f"N_{{{i},{j}}}^{k} = {R.N[i, j, k]} but image constant is "
                       f"{S.N[sigma[i], sigma[j], sigma[k]]}")
    return Verdict(True)


@dataclass(frozen=True)
class GenerationCertificate:
    generator: int
    ok: bool
    depth: tuple  # first power of g whose support contains each label (-1 if never)
    polynomials: tuple = ()  # polynomials[k][d]: coefficient of g^d in X_k
    reason: str = ""

    def __bool__(self):
        return self.ok


def _solve_columns(K: list[list[Fraction]]) -> list[list[Fraction]] | None:
    """Inverse of a square Fraction matrix, or None if singular."""
    n = len(K)
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(K)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _krylov(Ng: np.ndarray) -> list[list[int]]:
    n = Ng.shape[0]
    M = Ng.astype(object)
    v = [1] + [0] * (n - 1)
    out = [v]
    for _ in range(n - 1):
        v = [sum(M[k, j] * v[j] for j in range(n)) for k in range(n)]
        out.append(v)
    return out


def generation_certificate_from_matrix(Ng: np.ndarray, g: int) -> GenerationCertificate:
    Ng = np.asarray(Ng, dtype=np.int64)
    n = Ng.shape[0]
    vecs = _krylov(Ng)
    depth = [-1] * n
    seen = {0}
    depth[0] = 0
    frontier = {0}
    step = 0
    # breadth-first closure of supports under multiplication by g
    while frontier:
        step += 1
        nxt = set()
        for j in frontier:
            for k in np.flatnonzero(Ng[:, j]).tolist():
                if k not in seen:
                    seen.add(k)
                    depth[k] = step
                    nxt.add(k)
        frontier = nxt
    if len(seen) < n:
        return GenerationCertificate(g, False, tuple(depth), (),
                                     f"closure stalls after reaching {len(seen)} of {n} labels")
    # K[k][d] = coefficient of X_k in g^d
    K = [[Fraction(vecs[d][k]) for d in range(n)] for k in range(n)]
    Kinv = _solve_columns(K)
    if Kinv is None:
        return GenerationCertificate(g, False, tuple(depth), (),
                                     "powers of g do not span the ring over Q")
    polys = tuple(tuple(Kinv[d][k] for d in range(n)) for k in range(n))
    return GenerationCertificate(g, True, tuple(depth), polys)


def generation_certificate(R: FusionRing, g: int) -> GenerationCertificate:
    return generation_certificate_from_matrix(R.fusion_matrix(g), g)


def ring_from_generator(labels: Sequence, Ng: np.ndarray, g: int, name: str = "") -> FusionRing:
    """Rebuild every fusion matrix as ``N_k = p_k(N_g)`` from a certificate."""
    cert = generation_certificate_from_matrix(Ng, g)
    if not cert.ok:
        raise ValueError(f"label {g} does not generate: {cert.reason}")
    n = len(labels)
    M = [[Fraction(int(x)) for x in row] for row in np.asarray(Ng)]

    def matmul(A, B):
        return [[sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)] for i in range(n)]

    powers = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    for _ in range(n - 1):
        powers.append(matmul(M, powers[-1]))
    N = np.zeros((n, n, n), dtype=np.int64)
    for k, poly in enumerate(cert.polynomials):
        Nk = [[sum(c * P[i][j] for c, P in zip(poly, powers)) for j in range(n)] for i in range(n)]
        for t in range(n):
            for j in range(n):
                v = Nk[t][j]
                if v.denominator != 1 or v < 0:
                    raise ArithmeticError(f"reconstructed N_{k} has entry {v}")
                N[k, j, t] = int(v)
    dual = []
    for i in range(n):
        hits = np.flatnonzero(N[i, :, 0])
        if len(hits) != 1:
            raise ArithmeticError(f"label {i} has no unique dual")
        dual.append(int(hits[0]))
    return FusionRing(labels, N, dual, name=name, meta={"reconstructed_from": int(g)})


@dataclass(frozen=True)
class EquivalenceWitness:
    bijection: tuple  # R index -> S index
    mode: str  # "full-constants" or "generator-certificate"
    evidence: dict = field(default_factory=dict)

    def label_map(self, R: FusionRing, S: FusionRing) -> list:
        return [(R.labels[i], S.labels[j]) for i, j in enumerate(self.bijection)]


def _invariants(R: FusionRing) -> list[tuple]:
    out = []
    for i in range(R.rank):
        Ni = R.N[i]
        out.append((R.dual[i] == i, int(Ni[i, i]), tuple(sorted(int(Ni[j, j]) for j in range(R.rank))),
                    int(Ni.sum())))
    return out


def _fp_clusters(values: Sequence[float], tol: float) -> list[int]:
    order = np.argsort(values, kind="stable")
    ids = [0] * len(values)
    cid, prev = 0, None
    for k in order:
        if prev is not None and values[k] - prev > tol:
            cid += 1
        ids[k] = cid
        prev = values[k]
    return ids


def find_equivalence(R: FusionRing, S: FusionRing, tol: float = 1e-6) -> EquivalenceWitness | None:
    """Backtracking search for a based-ring isomorphism ``R -> S``.

    Labels are bucketed by Frobenius-Perron dimension (clustered at ``tol``),
    self-duality and diagonal data of ``N_i``; near-equal dimensions simply
    share a bucket, so clustering never loses a solution.
    """
    n = R.rank
    if n != S.rank:
        return None
    fpR = [perron_eigenvalue(R.fusion_matrix(i)) for i in range(n)]
    fpS = [perron_eigenvalue(S.fusion_matrix(i)) for i in range(n)]
    cl = _fp_clusters(fpR + fpS, tol)
    keyR = [(cl[i],) + inv for i, inv in enumerate(_invariants(R))]
    keyS = [(cl[n + i],) + inv for i, inv in enumerate(_invariants(S))]
    if sorted(keyR) != sorted(keyS) or keyR[0] != keyS[0]:
        return None
    buckets: dict = {}
    for a, k in enumerate(keyS):
        buckets.setdefault(k, []).append(a)
    order = [0] + sorted(range(1, n), key=lambda i: (len(buckets[keyR[i]]), i))
    sigma = [-1] * n
    used = [False] * n
    assigned: list[int] = []
    NR, NS = R.N, S.N

    def consistent(i, a):
        A = assigned + [i]
        B = [sigma[x] for x in assigned] + [a]
        # only triples touching the new label need checking
        ix, bx = np.ix_(A, A), np.ix_(B, B)
        return (np.array_equal(NR[i][ix], NS[a][bx])
                and np.array_equal(NR[:, i, :][ix], NS[:, a, :][bx])
                and np.array_equal(NR[:, :, i][ix], NS[:, :, a][bx]))

    def rec(pos):
        if pos == n:
            return True
        i = order[pos]
        for a in buckets[keyR[i]]:
            if used[a]:
                continue
            if not consistent(i, a):
                continue
            sigma[i] = a
            used[a] = True
            assigned.append(i)
            if rec(pos + 1):
                return True
            assigned.pop()
            used[a] = False
            sigma[i] = -1
        return False

    if not rec(0):
        return None
    witness = EquivalenceWitness(tuple(sigma), "full-constants", {"fpdims": tuple(fpR)})
    assert check_based_isomorphism(R, S, witness.bijection).ok
    return witness


def generator_equivalence(R: FusionRing, g: int, Ng_S: np.ndarray, sigma: Sequence[int]) -> Verdict:
    """``sigma`` maps unit to unit and intertwines ``N_g`` of R with ``Ng_S``;
    together with a generation certificate for ``g`` this proves ``R ≅ S``."""
    sigma = np.asarray(sigma, dtype=np.int64)
    n = R.rank
    if Ng_S.shape != (n, n):
        return Verdict(False, None, "rank mismatch")
    if sorted(sigma.tolist()) != list(range(n)) or sigma[0] != 0:
        return Verdict(False, None, "not a unit-preserving bijection")
    A = R.fusion_matrix(g)
    bad = np.argwhere(A != Ng_S[np.ix_(sigma, sigma)])
    if len(bad):
        k, j = (int(v) for v in bad[0])
        return Verdict(False, (g, j, k), f"N_g mismatch at ({k}, {j})")
    cert = generation_certificate(R, g)
    if not cert.ok:
        return Verdict(False, None, cert.reason)
    return Verdict(True)


def deligne_product(R: FusionRing, S: FusionRing, name: str = "") -> FusionRing:
    n, m = R.rank, S.rank
    N = np.einsum("ijk,abc->iajbkc", R.N, S.N).reshape(n * m, n * m, n * m)
    labels = [(a, b) for a in R.labels for b in S.labels]
    dual = [R.dual[i] * m + S.dual[a] for i in range(n) for a in range(m)]
    return FusionRing(labels, N, dual, name=name or f"{R.name} ⊠ {S.name}")


def sl2_ring(level: int) -> FusionRing:
    return build_fusion_ring(LevelContext("A1", level), name=f"C(sl2, l={level})")


def even_subring_sl2(level: int) -> FusionRing:
    if level < 3:
        raise ValueError("need l >= 3")
    A = sl2_ring(level)
    idx = [k for k, lab in enumerate(A.labels) if lab[0] % 2 == 0]
    return A.restrict(idx, name=f"Z(sl2, l={level})")
