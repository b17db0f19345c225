import os
import subprocess
import sys

import numpy as np
import pytest

from qgfusion import kernels
from qgfusion.fusion import LevelContext

needs_ext = pytest.mark.skipif(kernels.compiled_fold_points is None, reason="extension not built")


@needs_ext
@pytest.mark.parametrize("ct,level", [("A1", 7), ("A2", 9), ("B3", 11), ("C3", 12), ("G2", 17), ("G2", 21),
                                      ("F4", 19), ("F4", 20), ("E8", 34), ("D5", 13)])
def test_compiled_matches_python(ct, level):
    ctx = LevelContext(ct, level)
    rng = np.random.default_rng(level)
    pts = rng.integers(-3 * level, 3 * level, size=(2000, ctx.rs.rank))
    pts[:50, 0] = 0  # some points on walls
    div, vec = ctx.affine_step
    args = (ctx.rs.cartan_matrix, ctx.wall_pairing, level, div, vec)
    s1, f1 = kernels.python_fold_points(pts, *args)
    s2, f2 = kernels.compiled_fold_points(pts, *args)
    assert np.array_equal(s1, s2)
    assert np.array_equal(f1[s1 != 0], f2[s2 != 0])
    # finite action only
    zero = np.zeros(ctx.rs.rank, dtype=np.int64)
    s1, f1 = kernels.python_fold_points(pts, ctx.rs.cartan_matrix, zero, 0, 1, zero)
    s2, f2 = kernels.compiled_fold_points(pts, ctx.rs.cartan_matrix, zero, 0, 1, zero)
    assert np.array_equal(s1, s2) and np.array_equal(f1[s1 != 0], f2[s2 != 0])


def test_folded_points_land_in_alcove():
    ctx = LevelContext("G2", 20)
    rng = np.random.default_rng(0)
    pts = rng.integers(-80, 80, size=(500, 2))
    signs, out = ctx.fold(pts)
    for s, x in zip(signs, out):
        if s:
            assert min(x) > 0 and ctx.wall_pairing @ x < ctx.level


def test_pure_python_switch():
    env = dict(os.environ, QGFUSION_PURE_PYTHON="1")
    code = "import qgfusion.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_empty_input():
    s, f = kernels.fold_points(np.zeros((0, 2), dtype=np.int64), np.array([[2, -1], [-3, 2]]),
                               np.array([2, 3]), 11, 1, np.array([1, 0]))
    assert s.shape == (0,) and f.shape == (0, 2)
