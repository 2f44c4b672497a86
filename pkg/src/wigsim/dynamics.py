"""Closed-form phase-space flows of the four planar systems.

The canonical equations of H = lam^2 r^2 + kap^2 p^2 + omega (px y - py x)
+ m g y are linear, so every flow is exact.  In the complex coordinates
zeta = x + i y, pi = px + i py the field rotates both at omega while the
quadratic part oscillates at big_omega = sqrt(omega^2 + omega0^2):

    zeta(t) = e^{-i omega t} [zeta0 cos(big_omega t) + (pi0 / (m big_omega)) sin(big_omega t)]
    pi(t)   = e^{-i omega t} [pi0 cos(big_omega t) - m big_omega zeta0 sin(big_omega t)]

Gravity adds an affine drift handled by variation of constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PhasePoint, SystemKind, SystemParams

__all__ = [
    "TrajectorySolution",
    "evolve",
    "evolve_ho",
    "evolve_free",
    "evolve_gqw_ballistic",
    "evolve_gqw_field",
    "canonical_rhs",
    "ode_residual",
    "flow_jacobian",
]


@dataclass(frozen=True)
class TrajectorySolution:
    """A system together with the initial condition it evolves."""

    params: SystemParams
    initial: PhasePoint


def _rotating_flow(initial: PhasePoint, t, omega: float, big_omega: float,
                   m_big_omega: float) -> PhasePoint:
    t = np.asarray(t, dtype=float)
    zeta0 = np.asarray(initial.x, dtype=float) + 1j * np.asarray(initial.y, dtype=float)
    pi0 = np.asarray(initial.px, dtype=float) + 1j * np.asarray(initial.py, dtype=float)
    c = np.cos(big_omega * t)
    s = np.sin(big_omega * t)
    rot = np.exp(-1j * omega * t)
    zeta = rot * (zeta0 * c + pi0 * s / m_big_omega)
    pi = rot * (pi0 * c - m_big_omega * zeta0 * s)

    def _r(v):
        return float(v) if v.ndim == 0 else v

    return PhasePoint(_r(zeta.real), _r(zeta.imag), _r(pi.real), _r(pi.imag))


def evolve_ho(sol: TrajectorySolution, t) -> PhasePoint:
    """Trapped charge in a transverse field: rotation at omega times
    oscillation at big_omega.  Requires big_omega > 0."""
    p = sol.params
    if not p.big_omega > 0:
        raise ValueError("evolve_ho needs big_omega > 0 (some trap or field)")
    return _rotating_flow(sol.initial, t, p.omega, p.big_omega, p.mass * p.big_omega)


def evolve_free(sol: TrajectorySolution, t) -> PhasePoint:
    """Free charge in a transverse field; the omega0 -> 0 limit of evolve_ho.

    Rejects omega = 0 (use the straight-line ballistic flow for that limit;
    evolve() dispatches it automatically).
    """
    p = sol.params
    if p.omega0 != 0:
        raise ValueError("evolve_free requires omega0 = 0")
    if not p.omega > 0:
        raise ValueError("evolve_free requires omega > 0; at b0 = 0 motion is ballistic")
    return _rotating_flow(sol.initial, t, p.omega, p.omega, p.mass * p.omega)


def evolve_gqw_ballistic(sol: TrajectorySolution, t) -> PhasePoint:
    """Field-free motion under uniform gravity along -y (g may be 0)."""
    p = sol.params
    if p.b0 != 0:
        raise ValueError("ballistic flow requires b0 = 0")
    t = np.asarray(t, dtype=float)
    x0, y0, px0, py0 = (np.asarray(c, dtype=float) for c in sol.initial)
    m = p.mass
    x = x0 + px0 * t / m
    y = y0 + py0 * t / m - 0.5 * p.g * t * t
    px = px0 * np.ones_like(t)
    py = py0 - m * p.g * t

    def _r(v):
        v = np.asarray(v)
        return float(v) if v.ndim == 0 else v

    return PhasePoint(_r(x), _r(y), _r(px), _r(py))


def evolve_gqw_field(sol: TrajectorySolution, t) -> PhasePoint:
    """Uniform gravity plus transverse field: cyclotron motion around a
    uniformly drifting center.

    The drift is perpendicular to gravity (velocity -g/(2 omega) along x)
    with the secular momentum loss -m g t / 2 in py; the oscillatory parts
    close at 2 omega.  Requires omega > 0.
    """
    p = sol.params
    if p.omega0 != 0:
        raise ValueError("evolve_gqw_field requires omega0 = 0")
    if not p.omega > 0:
        raise ValueError("evolve_gqw_field requires omega > 0; use the ballistic flow at b0 = 0")
    base = _rotating_flow(sol.initial, t, p.omega, p.omega, p.mass * p.omega)
    t = np.asarray(t, dtype=float)
    w = p.omega
    g = p.g
    m = p.mass
    s2 = np.sin(2.0 * w * t)
    c2 = np.cos(2.0 * w * t)
    x = base.x - g * t / (2.0 * w) + g * s2 / (4.0 * w * w)
    y = base.y - g * (1.0 - c2) / (4.0 * w * w)
    px = base.px - m * g * (1.0 - c2) / (4.0 * w)
    py = base.py - m * g * t / 2.0 - m * g * s2 / (4.0 * w)

    def _r(v):
        v = np.asarray(v)
        return float(v) if v.ndim == 0 else v

    return PhasePoint(_r(x), _r(y), _r(px), _r(py))


def evolve(sol: TrajectorySolution, t) -> PhasePoint:
    """Dispatch to the closed-form flow for sol.params.kind.

    Degenerate field-free limits fall back to the ballistic flow: a
    FREE_FIELD system with b0 = 0 moves on a straight line, a GQW_FIELD
    system with b0 = 0 is identical to GQW_BALLISTIC.
    """
    kind = sol.params.kind
    if kind is SystemKind.HO_FIELD:
        return evolve_ho(sol, t)
    if kind is SystemKind.FREE_FIELD:
        if sol.params.omega > 0:
            return evolve_free(sol, t)
        return evolve_gqw_ballistic(sol, t)
    if kind is SystemKind.GQW_BALLISTIC:
        return evolve_gqw_ballistic(sol, t)
    if sol.params.omega > 0:
        return evolve_gqw_field(sol, t)
    ballistic = TrajectorySolution(
        params=SystemParams(
            kind=SystemKind.GQW_BALLISTIC,
            mass=sol.params.mass,
            hbar=sol.params.hbar,
            charge=sol.params.charge,
            g=sol.params.g,
        ),
        initial=sol.initial,
    )
    return evolve_gqw_ballistic(ballistic, t)


def canonical_rhs(params: SystemParams, point: PhasePoint) -> np.ndarray:
    """Right-hand side (dx, dy, dpx, dpy)/dt of the canonical equations."""
    x, y, px, py = (np.asarray(c, dtype=float) for c in point)
    lam2 = params.lam ** 2
    kap2 = params.kappa ** 2
    w = params.omega
    return np.stack(
        np.broadcast_arrays(
            2.0 * kap2 * px + w * y,
            2.0 * kap2 * py - w * x,
            -2.0 * lam2 * x + w * py,
            -2.0 * lam2 * y - w * px - params.mass * params.g,
        ),
        axis=-1,
    )


def ode_residual(sol: TrajectorySolution, t: float, h: float = 1e-5) -> float:
    """Max abs difference between the central-difference derivative of the
    closed-form flow and the canonical right-hand side at time t."""
    up = evolve(sol, t + h).as_array()
    um = evolve(sol, t - h).as_array()
    deriv = (up - um) / (2.0 * h)
    rhs = canonical_rhs(sol.params, evolve(sol, t))
    return float(np.max(np.abs(deriv - rhs)))


def flow_jacobian(sol: TrajectorySolution, t: float, h: float = 1e-6) -> np.ndarray:
    """Jacobian of the time-t flow map with respect to the initial point,
    by central differences.  Exactly symplectic flows give det = 1."""
    base = np.asarray(sol.initial.as_array(), dtype=float)
    jac = np.empty((4, 4))
    for j in range(4):
        up = base.copy()
        um = base.copy()
        up[j] += h
        um[j] -= h
        fp = evolve(TrajectorySolution(sol.params, PhasePoint(*up)), t).as_array()
        fm = evolve(TrajectorySolution(sol.params, PhasePoint(*um)), t).as_array()
        jac[:, j] = (fp - fm) / (2.0 * h)
    return jac
