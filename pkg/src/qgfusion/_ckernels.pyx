# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled folding kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def fold_points(points, roots, level_vec, level, div, affine_vec):
    cdef cnp.int64_t[:, ::1] pts = np.ascontiguousarray(points, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] R = np.ascontiguousarray(roots, dtype=np.int64)
    cdef cnp.int64_t[::1] lv = np.ascontiguousarray(level_vec, dtype=np.int64)
    cdef cnp.int64_t[::1] av = np.ascontiguousarray(affine_vec, dtype=np.int64)
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t r = pts.shape[1]
    cdef cnp.int64_t lvl = level
    cdef cnp.int64_t dv = div
    out_arr = np.array(pts, dtype=np.int64, copy=True)
    signs_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.int64_t[::1] signs = signs_arr
    cdef Py_ssize_t k, i, j
    cdef cnp.int64_t c, p, s
    cdef bint moved, wall
    for k in range(n):
        s = 1
        while True:
            moved = False
            for i in range(r):
                c = out[k, i]
                if c < 0:
                    for j in range(r):
                        out[k, j] -= c * R[i, j]
                    s = -s
                    moved = True
                    break
            if moved:
                continue
            wall = False
            for i in range(r):
                if out[k, i] == 0:
                    wall = True
                    break
            if wall:
                s = 0
                break
            if lvl != 0:
                p = 0
                for j in range(r):
                    p += lv[j] * out[k, j]
                if p > lvl:
                    c = (p - lvl) // dv
                    for j in range(r):
                        out[k, j] -= c * av[j]
                    s = -s
                    continue
                if p == lvl:
                    s = 0
            break
        signs[k] = s
    return signs_arr, out_arr
