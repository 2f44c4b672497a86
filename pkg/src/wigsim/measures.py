"""Fidelity and Shannon entropy of Wigner functions.

Fidelity follows the square-root overlap definition
F = [integral sqrt(W1 W2)]^2, evaluated in closed form for Gaussian pairs
and by quadrature in general (nonnegative states only).  Entropy is
S = -integral |W| ln |W| over a declared box, either of the raw state
(RAW_BOX) or after rescaling |W| to unit box mass (NORMALIZED_BOX).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .dynamics import TrajectorySolution, evolve
from .model import PhasePoint, SystemKind, SystemParams
from .wigner import GaussianWigner, LandauState, StationaryHOState

__all__ = [
    "WignerNegativityError",
    "fidelity_gaussian_closed",
    "default_fidelity_scheme",
    "fidelity_quadrature",
    "fidelity_ho_paper",
    "paper_form_point",
    "FidelityCurve",
    "fidelity_curve",
    "EntropyConvention",
    "EntropyResult",
    "shannon_entropy",
    "entropy_vs_field",
]

# dips below this are treated as real negativity, not rounding
_NEGATIVITY_FLOOR = -1e-12


class WignerNegativityError(RuntimeError):
    """A state passed to the overlap quadrature is genuinely negative."""


def fidelity_gaussian_closed(c0: PhasePoint, ct: PhasePoint):
    """F = exp(-|ct - c0|^2 / 2) for two unit-width Gaussians.

    Accepts array-valued components in ct (or c0) and broadcasts.
    """
    d = ct.as_array() - c0.as_array()
    out = np.exp(-0.5 * np.sum(d * d, axis=-1))
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def default_fidelity_scheme(w1, w2, order: int = 32) -> quadrature.QuadratureScheme:
    """Gauss-Hermite scheme centered between the two states.

    With unit scales the sqrt-overlap integrand of two unit Gaussians is a
    polynomial times the scheme's own weight, so the rule is exact for them.
    """
    origin = PhasePoint(0.0, 0.0, 0.0, 0.0)
    c1 = getattr(w1, "center", origin)
    c2 = getattr(w2, "center", origin)
    mid = 0.5 * (np.asarray(c1, dtype=float) + np.asarray(c2, dtype=float))
    return quadrature.hermite_scheme((order,) * 4, centers=tuple(mid), scales=(1.0,) * 4)


def _checked_nonnegative(state, coords, label: str) -> np.ndarray:
    vals = np.asarray(state.value(*coords), dtype=float)
    if np.min(vals) < _NEGATIVITY_FLOOR:
        idx = np.unravel_index(int(np.argmin(vals)), vals.shape)
        grids = [np.broadcast_to(np.asarray(c, dtype=float), vals.shape) for c in coords]
        node = tuple(float(g[idx]) for g in grids)
        raise WignerNegativityError(
            f"{label} ({type(state).__name__}) is negative at node {node}: {vals[idx]:.3e}"
        )
    return np.where(vals > 0.0, vals, 0.0)


def fidelity_quadrature(w1, w2, scheme: quadrature.QuadratureScheme) -> float:
    """F = [integral sqrt(W1 W2)]^2 on the given 4D scheme.

    Both states must be pointwise nonnegative; rounding-level dips (above
    -1e-12) are clamped to zero, anything lower raises
    WignerNegativityError naming the state and node.
    """

    def integrand(*coords):
        v1 = _checked_nonnegative(w1, coords, "first state")
        v2 = _checked_nonnegative(w2, coords, "second state")
        return np.sqrt(v1 * v2)

    amplitude = quadrature.integrate(integrand, 4, scheme)
    return amplitude * amplitude


def paper_form_point(omega, t, c0: PhasePoint) -> PhasePoint:
    """Center trajectory of the printed trapped-system fidelity family.

    Rotation at omega composed with unit-frequency oscillation carrying unit
    position/momentum weights (the omega0 = 1 family with the lam/kap ratio
    replaced by 1).
    """
    t = np.asarray(t, dtype=float)
    zeta0 = complex(c0.x, c0.y)
    pi0 = complex(c0.px, c0.py)
    rot = np.exp(-1j * np.asarray(omega, dtype=float) * t)
    c = np.cos(t)
    s = np.sin(t)
    zeta = rot * (zeta0 * c + pi0 * s)
    pi = rot * (pi0 * c - zeta0 * s)

    def _r(v):
        v = np.asarray(v)
        return float(v) if v.ndim == 0 else v

    return PhasePoint(_r(zeta.real), _r(zeta.imag), _r(pi.real), _r(pi.imag))


def fidelity_ho_paper(omega, t, c0: PhasePoint):
    """Closed-form trapped-system fidelity (omega0 = 1 family):

    F = exp[S (cos(t) cos(omega t) - 1) + 2 J sin(t) sin(omega t)]

    with S = |c0|^2 and J = py0 x0 - px0 y0.  Equals the Gaussian closed
    form along paper_form_point exactly.
    """
    t = np.asarray(t, dtype=float)
    s_tot = c0.x ** 2 + c0.y ** 2 + c0.px ** 2 + c0.py ** 2
    j_tot = c0.py * c0.x - c0.px * c0.y
    out = np.exp(
        s_tot * (np.cos(t) * np.cos(omega * t) - 1.0)
        + 2.0 * j_tot * np.sin(t) * np.sin(omega * t)
    )
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FidelityCurve:
    """Fidelity of an evolving Gaussian against its initial state."""

    times: np.ndarray
    closed: np.ndarray          # Gaussian closed form along the trajectory
    quad: np.ndarray            # quadrature value, same trajectory
    paper: np.ndarray | None    # printed trapped-system formula, if defined
    abs_diff: np.ndarray        # |closed - quad|


def fidelity_curve(params: SystemParams, c0: PhasePoint, times, order: int = 32,
                   form: str = "consistent") -> FidelityCurve:
    """Fidelity F(t) between the initial Gaussian at c0 and the evolved one.

    form="consistent" moves the center with the canonical flow of params;
    form="paper" (trapped system with omega0 = 1 only) uses the printed
    unit-weight rotation family.  The closed and quadrature routes are both
    evaluated at every time so their agreement is part of the output.
    """
    times = np.asarray(times, dtype=float)
    if form not in ("consistent", "paper"):
        raise ValueError("form must be 'consistent' or 'paper'")
    is_ho_unit = params.kind is SystemKind.HO_FIELD and params.omega0 == 1.0
    if form == "paper" and not is_ho_unit:
        raise ValueError("the printed fidelity family assumes the trapped system with omega0 = 1")

    sol = TrajectorySolution(params, c0)
    w0 = GaussianWigner(c0)
    closed = np.empty_like(times)
    quad = np.empty_like(times)
    for i, t in enumerate(times):
        if form == "paper":
            ct = paper_form_point(params.omega, float(t), c0)
        else:
            ct = evolve(sol, float(t))
        closed[i] = fidelity_gaussian_closed(c0, ct)
        wt = GaussianWigner(ct)
        quad[i] = fidelity_quadrature(w0, wt, default_fidelity_scheme(w0, wt, order))
    paper = fidelity_ho_paper(params.omega, times, c0) if is_ho_unit else None
    return FidelityCurve(times=times, closed=closed, quad=quad, paper=paper,
                         abs_diff=np.abs(closed - quad))


class EntropyConvention(enum.Enum):
    RAW_BOX = "raw"
    NORMALIZED_BOX = "normalized"


@dataclass(frozen=True)
class EntropyResult:
    value: float
    convention: EntropyConvention
    scheme: quadrature.QuadratureScheme


def shannon_entropy(state, scheme: quadrature.QuadratureScheme,
                    convention: EntropyConvention = EntropyConvention.RAW_BOX) -> EntropyResult:
    """S = -integral |W| ln |W| over the scheme's box.

    RAW_BOX uses the state as printed; NORMALIZED_BOX rescales |W| by its
    box mass first.  The integrand at |W| = 0 is taken as 0.  The state's
    .value arity must match the scheme dimension (4D states or 2D sectors).
    """
    if scheme.kind is not quadrature.SchemeKind.UNIFORM_BOX:
        raise ValueError("entropy uses a uniform box scheme")
    dims = scheme.dims

    scale = 1.0
    if convention is EntropyConvention.NORMALIZED_BOX:
        mass = quadrature.integrate(
            lambda *c: np.abs(np.asarray(state.value(*c), dtype=float)), dims, scheme
        )
        if not (mass > 0 and math.isfinite(mass)):
            raise ValueError("state has no mass on the box; cannot normalize")
        scale = 1.0 / mass

    def integrand(*coords):
        w = scale * np.abs(np.asarray(state.value(*coords), dtype=float))
        safe = np.where(w > 0.0, w, 1.0)
        return np.where(w > 0.0, -w * np.log(safe), 0.0)

    value = quadrature.integrate(integrand, dims, scheme)
    return EntropyResult(value=value, convention=convention, scheme=scheme)


def entropy_vs_field(kind: SystemKind, b0_values, *, mass: float = 1.0, hbar: float = 1.0,
                     charge: float = 1.0, omega0: float = 1.0, box_half_width: float = 8.0,
                     nodes_per_axis: int = 101,
                     convention: EntropyConvention = EntropyConvention.RAW_BOX):
    """Ground-state entropy as a function of the field strength.

    Trapped system: the ground state factorizes, so the 4D box entropy is
    the sum of the two 2D sector entropies (cheap and exact for a product
    state).  Free system: Landau ground level, full 4D box.  Returns a list
    of (b0, entropy) pairs.
    """
    L = float(box_half_width)
    rows = []
    for b0 in b0_values:
        b0 = float(b0)
        if kind is SystemKind.HO_FIELD:
            params = SystemParams(kind=kind, mass=mass, hbar=hbar, charge=charge,
                                  b0=b0, omega0=omega0)
            state = StationaryHOState(0, 0, params)
            scheme2 = quadrature.box_scheme((nodes_per_axis,) * 2, [(-L, L)] * 2)
            sx = shannon_entropy(state.sector_x(), scheme2, convention).value
            sy = shannon_entropy(state.sector_y(), scheme2, convention).value
            rows.append((b0, sx + sy))
        elif kind is SystemKind.FREE_FIELD:
            params = SystemParams(kind=kind, mass=mass, hbar=hbar, charge=charge, b0=b0)
            state = LandauState(0, params, box_half_width=L)
            scheme4 = quadrature.box_scheme((nodes_per_axis,) * 4, [(-L, L)] * 4)
            rows.append((b0, shannon_entropy(state, scheme4, convention).value))
        else:
            raise ValueError("entropy sweep is defined for the trapped and free systems")
    return rows
