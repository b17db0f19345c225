"""Pure-Python versions of the folding kernels (reference and fallback)."""
import numpy as np


def fold_points(points, roots, level_vec, level, div, affine_vec):
    """Fold shifted weights ``x = mu + rho`` into the fundamental chamber.

    With ``level == 0`` only the finite Weyl group acts.  Otherwise the affine
    wall ``level_vec . x == level`` is added, crossed by
    ``x -> x - ((level_vec . x - level) // div) * affine_vec``.

    Returns ``(signs, folded)``; ``signs[k] == 0`` marks a point on a wall.
    """
    pts = np.asarray(points, dtype=np.int64)
    n, r = pts.shape
    R = np.asarray(roots, dtype=np.int64).tolist()
    lv = [int(v) for v in level_vec]
    av = [int(v) for v in affine_vec]
    signs = np.zeros(n, dtype=np.int64)
    out = np.zeros_like(pts)
    for k in range(n):
        x = pts[k].tolist()
        s = 1
        while True:
            for i in range(r):
                c = x[i]
                if c < 0:
                    row = R[i]
                    for j in range(r):
                        x[j] -= c * row[j]
                    s = -s
                    break
            else:
                if 0 in x:
                    s = 0
                    break
                if level:
                    p = 0
                    for j in range(r):
                        p += lv[j] * x[j]
                    if p > level:
                        c = (p - level) // div
                        for j in range(r):
                            x[j] -= c * av[j]
                        s = -s
                        continue
                    if p == level:
                        s = 0
                break
        signs[k] = s
        out[k] = x
    return signs, out
