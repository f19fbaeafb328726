"""Split-search kernels for tree training.

The exhaustive Gini split search is the one hot loop in the system; it runs
once per tree node over every (feature, midpoint) candidate. Two backends
produce bit-identical results:

  * ``numba`` (default): the scalar loop below compiled with ``@njit``.
  * ``numpy``: a vectorized prefix-sum formulation, used when numba is
    unavailable or when ``HIDSS_KERNEL=numpy`` is set.

Candidates are ranked on an integer-exact key. For a split with ``nl``/``nr``
rows and ``pl``/``pr`` positives per side, the weighted child impurity equals
``N / (n * D)`` with ``N = a*nr + b*nl``, ``D = nl*nr``, ``a = nl*nl - pl*pl -
ql*ql`` (and ``b`` likewise for the right side), all integers. The single
division ``N / D`` is correctly rounded, so candidates whose impurities are
equal as rationals compare equal in float too, and the tie-break (lowest
feature index, then lowest threshold) is honoured exactly. Multi-step float
formulas do not have that property; they can separate true ties by an ulp.
``N`` fits in int64 for any realistic n (it grows as n**3).
``benchmarks/bench_split.py`` compares the two backends.

Contract: ``best_split(X, y, min_leaf) -> (feature, threshold, decrease)``
with ``feature == -1`` when no candidate keeps both children >= min_leaf.
Left child takes rows with ``value <= threshold``.
"""

from __future__ import annotations

import os

import numpy as np


def _best_split_scalar(X, y, min_leaf):
    n, d = X.shape
    pos = 0
    for i in range(n):
        pos += y[i]
    neg = n - pos
    fn = float(n)
    parent_gini = 1.0 - float(pos * pos + neg * neg) / (fn * fn)

    best_feature = -1
    best_threshold = 0.0
    best_key = np.inf
    for f in range(d):
        order = np.argsort(X[:, f])
        xs = X[:, f][order]
        ys = y[order]
        cum = 0
        for i in range(n - 1):
            cum += ys[i]
            if xs[i] == xs[i + 1]:
                continue
            nl = i + 1
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            pl = cum
            ql = nl - pl
            pr = pos - cum
            qr = nr - pr
            a = nl * nl - pl * pl - ql * ql
            b = nr * nr - pr * pr - qr * qr
            key = float(a * nr + b * nl) / float(nl * nr)
            if key < best_key:
                best_key = key
                best_feature = f
                best_threshold = (xs[i] + xs[i + 1]) / 2.0
    if best_feature == -1:
        return -1, 0.0, -np.inf
    return best_feature, best_threshold, parent_gini - best_key / fn


def _best_split_numpy(X, y, min_leaf):
    n, d = X.shape
    fn = float(n)
    pos = int(np.sum(y))
    neg = n - pos
    parent_gini = 1.0 - float(pos * pos + neg * neg) / (fn * fn)

    best_feature = -1
    best_threshold = 0.0
    best_key = np.inf
    for f in range(d):
        order = np.argsort(X[:, f])
        xs = X[:, f][order]
        ys = y[order]
        cum = np.cumsum(ys)[:-1]                     # positives left of each boundary
        nl = np.arange(1, n, dtype=np.int64)
        nr = n - nl
        valid = (xs[:-1] != xs[1:]) & (nl >= min_leaf) & (nr >= min_leaf)
        if not np.any(valid):
            continue
        pl = cum
        ql = nl - pl
        pr = pos - cum
        qr = nr - pr
        a = nl * nl - pl * pl - ql * ql
        b = nr * nr - pr * pr - qr * qr
        key = (a * nr + b * nl).astype(np.float64) / (nl * nr).astype(np.float64)
        key = np.where(valid, key, np.inf)
        i = int(np.argmin(key))                      # first min -> lowest threshold
        if key[i] < best_key:
            best_key = float(key[i])
            best_feature = f
            best_threshold = float((xs[i] + xs[i + 1]) / 2.0)
    if best_feature == -1:
        return -1, 0.0, -np.inf
    return best_feature, best_threshold, parent_gini - best_key / fn


def _select_backend() -> tuple[str, object]:
    requested = os.environ.get("HIDSS_KERNEL", "numba").lower()
    if requested == "numba":
        try:
            from numba import njit

            return "numba", njit(cache=True)(_best_split_scalar)
        except ImportError:
            return "numpy", _best_split_numpy
    if requested == "numpy":
        return "numpy", _best_split_numpy
    raise ValueError(f"unknown HIDSS_KERNEL backend '{requested}'")


BACKEND, _best_split = _select_backend()


def best_split(X: np.ndarray, y: np.ndarray, min_leaf: int) -> tuple[int, float, float]:
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    feature, threshold, decrease = _best_split(X, y, int(min_leaf))
    return int(feature), float(threshold), float(decrease)
