from __future__ import annotations

import subprocess
import sys

import numpy as np

from hidss import kernels


def random_case(rng):
    n = int(rng.integers(2, 25))
    d = int(rng.integers(1, 4))
    X = np.round(rng.normal(size=(n, d)) * 2, 1)
    y = rng.integers(0, 2, size=n).astype(np.float64)
    return X, y


def test_active_backend_matches_scalar_reference():
    rng = np.random.default_rng(0)
    for _ in range(300):
        X, y = random_case(rng)
        got = kernels.best_split(X, y, 1)
        ref = kernels._best_split_scalar(X, y, 1)
        assert got == (int(ref[0]), float(ref[1]), float(ref[2]))


def test_numpy_backend_matches_scalar_reference():
    rng = np.random.default_rng(1)
    for _ in range(300):
        X, y = random_case(rng)
        got = kernels._best_split_numpy(X, y, 2)
        ref = kernels._best_split_scalar(X, y, 2)
        assert got == ref


def test_no_valid_split_returns_sentinel():
    X = np.array([[1.0], [1.0], [1.0]])
    y = np.array([1.0, 0.0, 1.0])
    feature, _, _ = kernels.best_split(X, y, 1)
    assert feature == -1


def test_env_flag_selects_numpy_backend():
    code = "from hidss import kernels; print(kernels.BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "HIDSS_KERNEL": "numpy"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "numpy"
