import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wronskpi import kernels
from wronskpi._pykernels import mul_trunc as py_mul


def naive(a, b, n):
    if not a or not b:
        return []
    out = [0] * min(n, max(len(a) + len(b) - 1, 0))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < len(out):
                out[i + j] += x * y
    return out


ints = st.lists(st.integers(-10**30, 10**30), max_size=40)


@pytest.mark.parametrize("name", sorted(kernels.available_backends()))
@given(a=ints, b=ints, n=st.integers(0, 90))
def test_mul_trunc_matches_naive(name, a, b, n):
    impl = kernels.available_backends()[name]
    assert impl(a, b, n) == naive(a, b, n)


@pytest.mark.parametrize("name", sorted(kernels.available_backends()))
def test_sparse_and_dense_paths(name):
    impl = kernels.available_backends()[name]
    rng = random.Random(7)
    dense = [rng.randint(-5, 5) for _ in range(300)]
    sparse = [0] * 300
    for k in range(0, 300, 17):
        sparse[k] = rng.randint(1, 9)
    for a, b in [(dense, sparse), (sparse, dense), (dense, dense)]:
        assert impl(a, b, 250) == naive(a, b, 250)


def test_backend_flag():
    assert kernels.BACKEND in ("python", "cython")
    assert "python" in kernels.available_backends()
    assert py_mul([], [1], 3) == []
