"""Additive per-instance feature attribution via the coalition kernel.

Attributions solve the kernel-weighted least squares problem of the
additive explanation model g(z) = phi0 + sum(phi_i * z_i) over feature
coalitions, constrained so that g reproduces the model output on the full
coalition and the background expectation on the empty one. With full
coalition enumeration (feasible for the pruned feature counts this
adapter produces) the solution equals the exact Shapley values of the
masked-prediction value function; larger feature counts fall back to
kernel-distributed coalition sampling.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

MAX_EXACT_FEATURES = 13


def _coalition_rows(n_features, rng, max_exact=MAX_EXACT_FEATURES):
    """Binary coalition matrix plus per-row regression weights."""
    m = n_features
    if m <= max_exact:
        rows = []
        weights = []
        for size in range(1, m):
            size_weight = (m - 1) / (math.comb(m, size) * size * (m - size))
            for subset in itertools.combinations(range(m), size):
                row = np.zeros(m)
                row[list(subset)] = 1.0
                rows.append(row)
                weights.append(size_weight)
        return np.array(rows), np.array(weights)

    # sample sizes with probability proportional to the kernel, subsets
    # uniformly within a size; the sampling distribution carries the
    # kernel so regression weights are uniform
    size_p = np.array([(m - 1) / (k * (m - k)) for k in range(1, m)])
    size_p /= size_p.sum()
    n_samples = 2048 + 2 * m
    rows = np.zeros((n_samples, m))
    for i in range(n_samples):
        size = 1 + rng.choice(m - 1, p=size_p)
        subset = rng.choice(m, size=size, replace=False)
        rows[i, subset] = 1.0
    return rows, np.ones(n_samples)


def kernel_attributions(predict, x, background, rng):
    """Per-feature attributions of ``predict`` at ``x`` against a background.

    ``predict`` maps an (n, m) array to n scalar outputs. Masked-out
    features take values from every background row and the outputs are
    averaged. Returns an array of m attributions summing to
    ``predict(x) - mean(predict(background))``.
    """
    x = np.asarray(x, dtype=float)
    background = np.atleast_2d(np.asarray(background, dtype=float))
    m = x.shape[0]
    base = float(np.mean(predict(background)))
    full = float(predict(x[None, :])[0])
    if m == 1:
        return np.array([full - base])

    coalitions, weights = _coalition_rows(m, rng)
    n_rows = coalitions.shape[0]
    n_bg = background.shape[0]

    # evaluate every (coalition, background row) pair in one model call
    stacked = np.repeat(background[None, :, :], n_rows, axis=0)
    mask = coalitions.astype(bool)
    for i in range(n_rows):
        stacked[i][:, mask[i]] = x[mask[i]]
    outputs = predict(stacked.reshape(n_rows * n_bg, m))
    values = np.asarray(outputs, dtype=float).reshape(n_rows, n_bg).mean(axis=1)

    # eliminate the last coefficient with the efficiency constraint
    # sum(phi) = full - base, then solve the weighted least squares
    design = coalitions[:, :-1] - coalitions[:, -1:]
    target = values - base - coalitions[:, -1] * (full - base)
    weighted = design * weights[:, None]
    gram = design.T @ weighted
    rhs = weighted.T @ target
    head = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    return np.append(head, (full - base) - head.sum())
