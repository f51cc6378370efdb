import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdde import _kernels
from pdde.algebra import evaluate_many
from pdde.fixtures import example1_pair
from pdde.generators import random_exppoly

needs_numba = pytest.mark.skipif(not _kernels.numba_available(), reason="numba not importable")


def _both(f, pts):
    table = f.table()
    a = _kernels.evaluate_table(pts, *table, backend="numpy")
    b = _kernels.evaluate_table(pts, *table, backend="numba")
    return a, b


@needs_numba
@given(st.integers(0, 2**32 - 1))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    f = random_exppoly(rng)
    pts = rng.uniform(-2, 2, (64, f.dim)) + 1j * rng.uniform(-2, 2, (64, f.dim))
    (va, ra), (vb, rb) = _both(f, pts)
    assert np.allclose(va, vb, rtol=1e-13, atol=1e-13)
    assert np.allclose(ra, rb, rtol=1e-13, atol=1e-13)


@needs_numba
def test_backends_agree_on_example1():
    f1, _ = example1_pair()
    pts = np.random.default_rng(1).normal(size=(200, 3)) * (1 + 1j)
    (va, _), (vb, _) = _both(f1, pts)
    assert np.allclose(va, vb, rtol=1e-13)


def test_empty_table():
    f1, _ = example1_pair()
    zero = f1 - f1
    out = evaluate_many(zero, np.zeros((3, 3)))
    assert np.all(out == 0)


def test_set_backend_round_trip():
    before = _kernels.get_backend()
    try:
        _kernels.set_backend("numpy")
        assert _kernels.get_backend() == "numpy"
        with pytest.raises(ValueError):
            _kernels.set_backend("fortran")
    finally:
        _kernels.set_backend(before)


@pytest.mark.parametrize("flag,want", [("0", "numpy"), ("off", "numpy"), ("1", "numba")])
def test_env_flag_selects_backend(flag, want):
    if want == "numba" and not _kernels.numba_available():
        want = "numpy"
    env = dict(os.environ, PDDE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from pdde import _kernels; print(_kernels.get_backend())"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == want
