import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import tensor_by_characters, weyl_character
from qgfusion.classical import (all_weights, classical_tensor, dominant_weights, weight_multiplicity,
                                weyl_dimension)
from qgfusion.rootsystem import build_root_system, weyl_orbit


def test_g2_seven_dim():
    rs = build_root_system("G2")
    assert dominant_weights(rs, (1, 0)).entries == {(1, 0): 1, (0, 0): 1}
    assert dominant_weights(rs, (0, 1)).entries == {(0, 1): 1, (1, 0): 1, (0, 0): 2}


def test_known_dimensions():
    f4 = build_root_system("F4")
    assert [weyl_dimension(f4, tuple(int(i == k) for i in range(4))) for k in range(4)] == [26, 273, 1274, 52]
    e8 = build_root_system("E8")
    assert weyl_dimension(e8, (1,) + (0,) * 7) == 3875
    assert weight_multiplicity(e8, (0,) * 7 + (1,), (0,) * 8) == 8


@pytest.mark.parametrize("ct,lam", [("A2", (2, 1)), ("B2", (1, 2)), ("G2", (1, 1)), ("C3", (1, 0, 1)),
                                    ("F4", (0, 0, 0, 1)), ("D4", (1, 0, 0, 1))])
def test_multiplicities_sum_to_dimension(ct, lam):
    rs = build_root_system(ct)
    table = dominant_weights(rs, lam).entries
    assert sum(m * len(weyl_orbit(rs, mu)) for mu, m in table.items()) == weyl_dimension(rs, lam)
    w, m = all_weights(rs, lam)
    assert int(m.sum()) == weyl_dimension(rs, lam)


@pytest.mark.parametrize("ct,lam", [("A2", (2, 1)), ("B2", (2, 1)), ("G2", (1, 1)), ("G2", (0, 2))])
def test_freudenthal_matches_character_oracle(ct, lam):
    rs = build_root_system(ct)
    ch = weyl_character(rs, lam)
    for mu, m in dominant_weights(rs, lam).entries.items():
        assert ch[mu] == m
    assert sum(ch.values()) == weyl_dimension(rs, lam)


@pytest.mark.parametrize("ct,top", [("A1", 6), ("A2", 2), ("B2", 2), ("G2", 1)])
def test_tensor_matches_character_oracle(ct, top):
    rs = build_root_system(ct)
    rng = np.random.default_rng(hash(ct) % 2**32)
    for _ in range(12):
        lam = tuple(int(v) for v in rng.integers(0, top + 1, rs.rank))
        mu = tuple(int(v) for v in rng.integers(0, top + 1, rs.rank))
        assert classical_tensor(rs, lam, mu).terms == tensor_by_characters(rs, lam, mu)


@pytest.mark.parametrize("ct", ["A3", "B3", "C3", "G2"])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_dimension_bookkeeping(ct, data):
    rs = build_root_system(ct)
    w = st.tuples(*[st.integers(0, 2)] * rs.rank)
    lam, mu = data.draw(w), data.draw(w)
    terms = classical_tensor(rs, lam, mu).terms
    assert sum(c * weyl_dimension(rs, nu) for nu, c in terms.items()) == \
        weyl_dimension(rs, lam) * weyl_dimension(rs, mu)
    assert terms == classical_tensor(rs, mu, lam).terms


def test_non_dominant_rejected():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        weyl_dimension(rs, (-1, 0))
    with pytest.raises(ValueError):
        classical_tensor(rs, (1, 0), (0, -2))
