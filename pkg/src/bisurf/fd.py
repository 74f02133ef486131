"""Fourth-order finite differences on uniform grids.

Central five-point stencils in the interior, with wrap-around when the grid is
periodic; one-sided six-node stencils near open boundaries, generated by
Fornberg's recurrence, so every output row keeps at least fourth-order
accuracy.  Arrays of any rank are supported; the derivative acts along one
axis and broadcasts over the rest.
"""
from __future__ import annotations

import numpy as np

__all__ = ["finite_difference_weights", "grid_derivative"]

_MIN_POINTS = 6  # one-sided stencil width; also the minimum usable grid size


def finite_difference_weights(nodes: np.ndarray, x0: float, max_order: int) -> np.ndarray:
    """Weights of finite-difference approximations on arbitrary nodes.

    Computes, via Fornberg's recurrence, the coefficients ``w[k, j]`` such that
    ``sum_j w[k, j] * f(nodes[j])`` approximates the ``k``-th derivative of
    ``f`` at ``x0`` to the maximal order permitted by the node set, for every
    ``k`` from 0 to ``max_order``.

    Parameters
    ----------
    nodes : array of float
        Distinct sample locations.
    x0 : float
        Expansion point.
    max_order : int
        Highest derivative order required.

    Returns
    -------
    ndarray of shape (max_order + 1, len(nodes))
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size
    if max_order >= n:
        raise ValueError("need more nodes than the requested derivative order")
    w = np.zeros((max_order + 1, n))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - x0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k, i] = c1 * (k * w[k - 1, i - 1] - c5 * w[k, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for k in range(mn, 0, -1):
                w[k, j] = (c4 * w[k, j] - k * w[k - 1, j]) / c3
            w[0, j] = c4 * w[0, j] / c3
        c1 = c2
    return w


# Central stencil coefficients, offsets (-2, -1, 0, +1, +2).
_CENTRAL_1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_CENTRAL_2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def grid_derivative(
    values: np.ndarray,
    spacing: float,
    order: int,
    axis: int = 0,
    periodic: bool = False,
) -> np.ndarray:
    """Differentiate uniformly sampled data along one axis to fourth order.

    Parameters
    ----------
    values : ndarray
        Samples on a uniform grid along ``axis``.
    spacing : float
        Grid spacing ``h`` along ``axis``.
    order : int
        Derivative order, 1 or 2.
    axis : int
        Axis along which to differentiate.
    periodic : bool
        If True the data is treated as one full period (the sample after the
        last is the first) and central stencils wrap around; if False the two
        rows nearest each boundary use one-sided six-node stencils.

    Returns
    -------
    ndarray of the same shape as ``values``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    a = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = a.shape[0]
    if n < _MIN_POINTS:
        raise ValueError(f"need at least {_MIN_POINTS} samples along the axis, got {n}")
    coef = _CENTRAL_1 if order == 1 else _CENTRAL_2
    h_pow = spacing**order

    out = np.zeros_like(a)
    for c, shift in zip(coef, (-2, -1, 0, 1, 2)):
        if c == 0.0:
            continue
        # np.roll(a, -shift) places a[i + shift] at row i.
        out += c * np.roll(a, -shift, axis=0)
    out /= h_pow

    if not periodic:
        offsets = np.arange(float(_MIN_POINTS))
        for row in (0, 1):
            w = finite_difference_weights(offsets, float(row), order)[order]
            out[row] = np.tensordot(w, a[:_MIN_POINTS], axes=1) / h_pow
            # Mirrored stencil: flipping the axis multiplies the k-th
            # derivative by (-1)^k.
            sign = (-1.0) ** order
            out[n - 1 - row] = (
                sign * np.tensordot(w, a[n - _MIN_POINTS :][::-1], axes=1) / h_pow
            )
    return np.moveaxis(out, 0, axis)
