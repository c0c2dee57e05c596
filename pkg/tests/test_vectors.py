import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gangle import (
    BackendError,
    LpSpace,
    OracleSpace,
    SparseVector,
    add,
    check_norm_axioms,
    lp_norm,
    norm,
    norm_sq,
    scale,
    sgn,
)

from support import rand_float_vector

sv = SparseVector.from_dense


# -- construction and canonicalization --------------------------------------


def test_zero_coefficients_dropped():
    v = SparseVector({1: Fraction(0), 3: Fraction(2), 7: 0})
    assert v.support == (3,)
    assert v == SparseVector({3: 2})


def test_indices_sorted_and_one_based():
    v = SparseVector([(5, 1), (2, 3)])
    assert v.support == (2, 5)
    with pytest.raises(ValueError):
        SparseVector([(0, 1)])
    with pytest.raises(ValueError):
        SparseVector([(2, 1), (2, 1)])


def test_backend_mixing_rejected():
    with pytest.raises(BackendError):
        SparseVector({1: 0.5, 2: Fraction(1, 2)})
    with pytest.raises(BackendError):
        sv([1, 2]).add(sv([0.5]))
    with pytest.raises(BackendError):
        sv([1, 2]).scale(0.5)


def test_int_coefficients_promote_to_exact():
    assert sv([1, 2]).backend == "exact"
    assert sv([1.0, 2.0]).backend == "float"
    assert SparseVector().backend is None


# -- add / scale / sgn ------------------------------------------------------


def test_add_example():
    assert add(sv([-2, 0]), sv([0, 2])) == sv([-2, 2])


def test_scale_examples():
    x = sv([1, 2])
    assert scale(0, x).is_zero
    assert scale(-1, x) == sv([-1, -2])


def test_sgn():
    assert sgn(-3) == -1
    assert sgn(0) == 0
    assert sgn(2) == 1
    assert sgn(Fraction(-1, 7)) == -1
    assert sgn(0.25) == 1


def test_add_scale_match_dense_reference():
    rng = random.Random(7)
    for _ in range(50):
        x = rand_float_vector(rng)
        y = rand_float_vector(rng)
        a = rng.uniform(-3, 3)
        lhs = np.array(x.add(y.scale(a)).to_dense(8))
        rhs = np.array(x.to_dense(8)) + a * np.array(y.to_dense(8))
        assert np.allclose(lhs, rhs, atol=1e-12)


# -- norms ------------------------------------------------------------------


def test_norm_examples():
    assert norm(sv([1, 2, 1]), LpSpace(1)) == 4
    assert norm(SparseVector(), LpSpace(3)) == 0
    assert norm(sv([3, 4]), LpSpace(2)) == 5  # exact: 25 is a perfect square


def test_norm_zero_iff_zero_vector():
    assert norm(SparseVector(), LpSpace(1)) == 0
    assert norm(sv([0.0, 1e-30]), LpSpace(2.0)) > 0


def test_exact_norm_limited_to_p_1_2():
    with pytest.raises(BackendError):
        norm(sv([1, 1]), LpSpace(3))
    with pytest.raises(BackendError):
        norm(sv([1, 1]), LpSpace(2))  # sqrt(2) irrational
    assert norm_sq(sv([1, 1]), LpSpace(2)) == 2


@given(
    st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=6),
    st.floats(-4, 4, allow_nan=False),
    st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_norm_absolute_homogeneity(coords, a, p):
    x = sv([float(c) for c in coords])
    nx = lp_norm(x, p)
    assert math.isclose(lp_norm(x.scale(a), p), abs(a) * nx, rel_tol=1e-12, abs_tol=1e-12)


@given(
    st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=6),
    st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=6),
    st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_norm_triangle_inequality(xs, ys, p):
    x = sv([float(c) for c in xs])
    y = sv([float(c) for c in ys])
    assert lp_norm(x.add(y), p) <= lp_norm(x, p) + lp_norm(y, p) + 1e-9


# -- norm oracles -----------------------------------------------------------


def test_oracle_axiom_check_accepts_a_norm():
    sup = OracleSpace(lambda x: max((abs(v) for _, v in x), default=0.0), "max")
    check_norm_axioms(sup, random.Random(0))


def test_oracle_axiom_check_rejects_a_non_norm():
    bogus = OracleSpace(lambda x: sum(v for _, v in x) ** 2, "bogus")
    with pytest.raises(ValueError):
        check_norm_axioms(bogus, random.Random(0))
