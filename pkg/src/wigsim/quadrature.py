"""Deterministic tensor-product quadrature over phase space.

Two schemes: Gauss-Hermite with affine node maps (for Gaussian-weighted
integrands over the whole space) and uniform midpoint boxes (for entropy
integrals and truncated-domain states).  Evaluation order is fixed by the
scheme alone, so repeated runs are bit-identical.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .specfun import gauss_hermite

__all__ = [
    "SchemeKind",
    "QuadratureScheme",
    "hermite_scheme",
    "box_scheme",
    "integrate",
    "refine_until",
    "RefineResult",
    "NonFiniteIntegrandError",
]

# grids larger than this are evaluated in slabs along the first axis;
# the threshold depends only on the scheme, so chunking is deterministic
_CHUNK_LIMIT = 2 ** 22

_MAX_HERMITE_ORDER = 256


class NonFiniteIntegrandError(RuntimeError):
    """Integrand returned NaN or inf at a quadrature node."""


class SchemeKind(enum.Enum):
    TENSOR_HERMITE = "tensor_hermite"
    UNIFORM_BOX = "uniform_box"


@dataclass(frozen=True)
class QuadratureScheme:
    """Tensor-product rule description.

    Hermite schemes need per-axis centers and scales (node x -> c + s x,
    weights absorb the Gaussian factor, so plain integrals are computed).
    Box schemes need per-axis (lo, hi) bounds and use midpoint nodes.
    """

    kind: SchemeKind
    orders: tuple
    centers: tuple | None = None
    scales: tuple | None = None
    bounds: tuple | None = None

    def __post_init__(self):
        if len(self.orders) == 0:
            raise ValueError("scheme needs at least one axis")
        if any(int(n) != n or n < 1 for n in self.orders):
            raise ValueError("orders must be positive integers")
        if self.kind is SchemeKind.TENSOR_HERMITE:
            if any(n > _MAX_HERMITE_ORDER for n in self.orders):
                raise ValueError(f"hermite orders above {_MAX_HERMITE_ORDER} are not supported")
            if self.bounds is not None:
                raise ValueError("hermite scheme takes centers/scales, not bounds")
            if self.centers is None or self.scales is None:
                raise ValueError("hermite scheme requires centers and scales")
            if len(self.centers) != len(self.orders) or len(self.scales) != len(self.orders):
                raise ValueError("centers/scales length must match orders")
            if any(not (s > 0 and math.isfinite(s)) for s in self.scales):
                raise ValueError("scales must be positive and finite")
        else:
            if self.centers is not None or self.scales is not None:
                raise ValueError("box scheme takes bounds, not centers/scales")
            if self.bounds is None or len(self.bounds) != len(self.orders):
                raise ValueError("box scheme requires one (lo, hi) pair per axis")
            if any(not (lo < hi) for lo, hi in self.bounds):
                raise ValueError("box bounds require lo < hi")

    @property
    def dims(self) -> int:
        return len(self.orders)


def hermite_scheme(orders: Sequence[int], centers: Sequence[float] | None = None,
                   scales: Sequence[float] | None = None) -> QuadratureScheme:
    """Gauss-Hermite tensor scheme; centers default to 0, scales to 1."""
    orders = tuple(int(n) for n in orders)
    if centers is None:
        centers = (0.0,) * len(orders)
    if scales is None:
        scales = (1.0,) * len(orders)
    return QuadratureScheme(
        kind=SchemeKind.TENSOR_HERMITE,
        orders=orders,
        centers=tuple(float(c) for c in centers),
        scales=tuple(float(s) for s in scales),
    )


def box_scheme(orders: Sequence[int], bounds: Sequence[tuple]) -> QuadratureScheme:
    """Uniform midpoint rule on a product of intervals."""
    return QuadratureScheme(
        kind=SchemeKind.UNIFORM_BOX,
        orders=tuple(int(n) for n in orders),
        bounds=tuple((float(lo), float(hi)) for lo, hi in bounds),
    )


def _axes(scheme: QuadratureScheme):
    """Per-axis (nodes, weights); Hermite weights absorb e^{+x^2}."""
    axes = []
    if scheme.kind is SchemeKind.TENSOR_HERMITE:
        for n, c, s in zip(scheme.orders, scheme.centers, scheme.scales):
            rule = gauss_hermite(n)
            nodes = c + s * rule.nodes
            # exp(log w + x^2) avoids 0 * inf at large orders
            weights = s * np.exp(np.log(rule.weights) + rule.nodes ** 2)
            axes.append((nodes, weights))
    else:
        for n, (lo, hi) in zip(scheme.orders, scheme.bounds):
            h = (hi - lo) / n
            nodes = lo + h * (np.arange(n) + 0.5)
            weights = np.full(n, h)
            axes.append((nodes, weights))
    return axes


def _eval_block(f: Callable, node_axes, shape):
    """Evaluate f on the broadcast grid and verify finiteness."""
    grids = [
        nodes.reshape((1,) * i + (-1,) + (1,) * (len(shape) - i - 1))
        for i, nodes in enumerate(node_axes)
    ]
    vals = np.asarray(f(*grids), dtype=float)
    vals = np.broadcast_to(vals, shape)
    if not np.all(np.isfinite(vals)):
        idx = tuple(int(i) for i in np.argwhere(~np.isfinite(vals))[0])
        coords = tuple(float(nodes[i]) for nodes, i in zip(node_axes, idx))
        raise NonFiniteIntegrandError(f"integrand not finite at node {coords}")
    return vals


def integrate(f: Callable, dims: int, scheme: QuadratureScheme) -> float:
    """Integrate f over dims variables with the given scheme.

    f is called with dims broadcastable coordinate arrays and must return the
    broadcast value array.  Evaluation is chunked along the first axis for
    large grids, with a chunk layout fixed by the scheme.
    """
    if dims != scheme.dims:
        raise ValueError(f"scheme has {scheme.dims} axes, integrand expects {dims}")
    axes = _axes(scheme)
    nodes0, weights0 = axes[0]
    rest = axes[1:]
    total = int(np.prod([len(n) for n, _ in axes]))

    if total <= _CHUNK_LIMIT or not rest:
        shape = tuple(len(n) for n, _ in axes)
        vals = _eval_block(f, [n for n, _ in axes], shape)
        for axis in range(dims - 1, -1, -1):
            vals = np.tensordot(vals, axes[axis][1], axes=([axis], [0]))
        return float(vals)

    # slab over the first axis, one node at a time
    rest_shape = tuple(len(n) for n, _ in rest)
    acc = 0.0
    for i0 in range(len(nodes0)):
        def slab(*coords, _x0=nodes0[i0]):
            return f(np.asarray(_x0), *coords)

        vals = _eval_block(slab, [n for n, _ in rest], rest_shape)
        for axis in range(len(rest) - 1, -1, -1):
            vals = np.tensordot(vals, rest[axis][1], axes=([axis], [0]))
        acc += weights0[i0] * float(vals)
    return acc


@dataclass(frozen=True)
class RefineResult:
    value: float
    achieved_tol: float
    converged: bool
    orders: tuple


def refine_until(f: Callable, scheme: QuadratureScheme, rel_tol: float) -> RefineResult:
    """Double all orders until successive values agree to rel_tol.

    Relative change uses |value| as the denominator, falling back to absolute
    change when |value| <= 1e-12.  Hermite orders cap at 256; hitting the cap
    without convergence returns converged=False rather than raising.
    """
    if not rel_tol >= 1e-14:
        raise ValueError("rel_tol below 1e-14 is not resolvable in double precision")
    current = scheme
    prev = integrate(f, scheme.dims, current)
    achieved = math.inf
    while True:
        new_orders = tuple(min(2 * n, _MAX_HERMITE_ORDER) if current.kind is SchemeKind.TENSOR_HERMITE
                           else 2 * n
                           for n in current.orders)
        if new_orders == current.orders:
            return RefineResult(value=prev, achieved_tol=achieved, converged=False,
                                orders=current.orders)
        current = QuadratureScheme(
            kind=current.kind,
            orders=new_orders,
            centers=current.centers,
            scales=current.scales,
            bounds=current.bounds,
        )
        val = integrate(f, scheme.dims, current)
        denom = abs(val) if abs(val) > 1e-12 else 1.0
        achieved = abs(val - prev) / denom
        prev = val
        if achieved <= rel_tol:
            return RefineResult(value=val, achieved_tol=achieved, converged=True,
                                orders=current.orders)
        if current.kind is SchemeKind.UNIFORM_BOX and max(current.orders) >= 4096:
            return RefineResult(value=val, achieved_tol=achieved, converged=False,
                                orders=current.orders)
