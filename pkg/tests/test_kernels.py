"""The compiled and pure-Python kernels must agree on every input."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finitude import _kernels_py, kernels

compiled = pytest.importorskip("finitude._kernels")


def test_backend_is_compiled():
    assert kernels.BACKEND == "compiled"


@st.composite
def tables(draw, allow_zero=False):
    n = draw(st.integers(1, 7))
    lo = -1 if allow_zero else 0
    rows = draw(st.lists(st.lists(st.integers(lo, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return np.array(rows, dtype=np.int64)


@st.composite
def partial_maps(draw):
    d = draw(st.integers(1, 5))
    k = draw(st.integers(1, 8))
    return np.array(draw(st.lists(st.lists(st.integers(-1, d - 1), min_size=d, max_size=d),
                                  min_size=k, max_size=k)), dtype=np.int64)


@given(partial_maps())
def test_encode_and_products_agree(maps):
    assert np.array_equal(compiled.encode_maps(maps), _kernels_py.encode_maps(maps))
    assert np.array_equal(compiled.product_codes(maps), _kernels_py.product_codes(maps))


@given(tables(allow_zero=True))
def test_associativity_scan_agrees(t):
    assert compiled.find_nonassociative(t) == _kernels_py.find_nonassociative(t)


@given(tables())
def test_ideals_and_inverses_agree(t):
    for a, b in zip(compiled.ideal_matrices(t), _kernels_py.ideal_matrices(t)):
        assert np.array_equal(a, b)
    for a, b in zip(compiled.weak_inverses(t), _kernels_py.weak_inverses(t)):
        assert np.array_equal(a, b)


def test_product_codes_compose_right_to_left():
    maps = np.array([[1, 2, 0], [0, -1, 2]])
    codes = _kernels_py.product_codes(maps)
    # maps[0] o maps[1]: 0 -> 0 -> 1, 1 -> undefined, 2 -> 2 -> 0
    assert codes[0, 1] == _kernels_py.encode_maps(np.array([[1, -1, 0]]))[0]
