"""Wigner functions of the planar systems: Gaussians, stationary trapped
states, Landau levels, and gravitational (Airy) states.

Conventions: unit-width Gaussians (natural units), the antisymmetric pairing
with eps_12 = +1, and explicit truncation boxes wherever a state is not
integrable over the whole plane (Landau levels are flat along two phase-space
directions, the Airy state along x and px).
"""

from __future__ import annotations

import math

import numpy as np

from . import quadrature
from .model import PhasePoint, SystemKind, SystemParams
from .specfun import airy_ai, airy_zero, laguerre

__all__ = [
    "TruncationError",
    "Gaussian2D",
    "GaussianWigner",
    "StationaryHOState",
    "HOSector",
    "LandauState",
    "GQWState",
    "GQWYSector",
    "ho_energy",
    "landau_energy",
    "gqw_energy",
    "normalize_gqw",
    "stargen_residual",
    "eval_gaussian",
    "eval_ho_stationary",
    "eval_landau",
    "eval_gqw",
]


class TruncationError(RuntimeError):
    """Declared domain too small: the truncated integral has not converged."""


class Gaussian2D:
    """Unit-width Gaussian over one (coordinate, momentum) sector."""

    def __init__(self, center=(0.0, 0.0)):
        self.center = (float(center[0]), float(center[1]))

    def value(self, a, b):
        da = np.asarray(a, dtype=float) - self.center[0]
        db = np.asarray(b, dtype=float) - self.center[1]
        out = np.exp(-da * da - db * db) / math.pi
        return float(out) if out.ndim == 0 else out


class GaussianWigner:
    """Unit-width Gaussian Wigner function centered at a phase point.

    W(z) = exp(-|z - c|^2) / pi^2.  Time evolution of this family is rigid
    translation of the center along the classical flow.
    """

    def __init__(self, center: PhasePoint = PhasePoint(0.0, 0.0, 0.0, 0.0)):
        self.center = PhasePoint(*(float(c) for c in center))

    def value(self, x, y, px, py):
        c = self.center
        dx = np.asarray(x, dtype=float) - c.x
        dy = np.asarray(y, dtype=float) - c.y
        dpx = np.asarray(px, dtype=float) - c.px
        dpy = np.asarray(py, dtype=float) - c.py
        out = np.exp(-(dx * dx + dy * dy + dpx * dpx + dpy * dpy)) / math.pi ** 2
        return float(out) if out.ndim == 0 else out

    def sector_x(self) -> Gaussian2D:
        return Gaussian2D((self.center.x, self.center.px))

    def sector_y(self) -> Gaussian2D:
        return Gaussian2D((self.center.y, self.center.py))


def _quad_forms(params: SystemParams, x, y, px, py):
    """The two invariant quadratic forms Omega_+/- (both nonnegative)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    ratio = params.lam / params.kappa
    quad = ratio * (x * x + y * y) + (px * px + py * py) / ratio
    lz = x * py - y * px
    return quad - 2.0 * lz, quad + 2.0 * lz


class HOSector:
    """One (coordinate, momentum) sector of the trapped ground state."""

    def __init__(self, ratio: float, hbar: float, center=(0.0, 0.0)):
        # ratio = lam/kappa = m * big_omega
        self.ratio = float(ratio)
        self.hbar = float(hbar)
        self.center = (float(center[0]), float(center[1]))

    def value(self, a, b):
        da = np.asarray(a, dtype=float) - self.center[0]
        db = np.asarray(b, dtype=float) - self.center[1]
        arg = (self.ratio * da * da + db * db / self.ratio) / self.hbar
        out = np.exp(-arg) / (math.pi * self.hbar)
        return float(out) if out.ndim == 0 else out


class StationaryHOState:
    """Stationary Wigner function of the trapped charge in a field.

    W_{n1,n2} = (-1)^{n1+n2} / (pi hbar)^2 * exp[-(lam/kap r^2 + kap/lam p^2)/hbar]
                * L_{n1}(Omega_+/hbar) * L_{n2}(Omega_-/hbar)

    with Omega_+- = lam/kap r^2 + kap/lam p^2 -+ 2 L_z.  Requires
    big_omega > 0 so the lam/kap ratio is finite.
    """

    def __init__(self, n1: int, n2: int, params: SystemParams):
        if not isinstance(n1, (int, np.integer)) or n1 < 0:
            raise ValueError("n1 must be a nonnegative integer")
        if not isinstance(n2, (int, np.integer)) or n2 < 0:
            raise ValueError("n2 must be a nonnegative integer")
        if not params.big_omega > 0:
            raise ValueError("stationary trapped state needs big_omega > 0")
        self.n1 = int(n1)
        self.n2 = int(n2)
        self.params = params
        self.center = PhasePoint(0.0, 0.0, 0.0, 0.0)

    def omega_plus(self, x, y, px, py):
        return _quad_forms(self.params, x, y, px, py)[0]

    def omega_minus(self, x, y, px, py):
        return _quad_forms(self.params, x, y, px, py)[1]

    def value(self, x, y, px, py):
        hbar = self.params.hbar
        op, om = _quad_forms(self.params, x, y, px, py)
        out = (
            (-1.0) ** (self.n1 + self.n2)
            / (math.pi * hbar) ** 2
            * np.exp(-(op + om) / (2.0 * hbar))
            * laguerre(self.n1, op / hbar)
            * laguerre(self.n2, om / hbar)
        )
        out = np.asarray(out)
        return float(out) if out.ndim == 0 else out

    @property
    def energy(self) -> float:
        return ho_energy(self.n1, self.n2, self.params)

    def sector_x(self) -> HOSector:
        if self.n1 or self.n2:
            raise ValueError("sector factorization only holds for the ground state")
        return HOSector(self.params.lam / self.params.kappa, self.params.hbar)

    def sector_y(self) -> HOSector:
        if self.n1 or self.n2:
            raise ValueError("sector factorization only holds for the ground state")
        return HOSector(self.params.lam / self.params.kappa, self.params.hbar)


def ho_energy(n1: int, n2: int, params: SystemParams) -> float:
    """E_{n1,n2} = hbar [big_omega (n1 + n2 + 1) + omega (n1 - n2)]."""
    if n1 < 0 or n2 < 0:
        raise ValueError("quantum numbers must be nonnegative")
    return params.hbar * (params.big_omega * (n1 + n2 + 1) + params.omega * (n1 - n2))


class LandauState:
    """Landau-level Wigner function of the free charge in a field.

    W_n = norm * (-1)^n / (pi hbar) * exp(-Omega/hbar) * L_n(Omega/hbar)
    with Omega = m omega r^2 + p^2/(m omega) - 2 L_z, a rank-2 form, so the
    state is flat along two phase-space directions and only box-normalizable.
    The default norm = 1 keeps the printed prefactor; .normalized() rescales
    so the box integral is 1.
    """

    def __init__(self, n: int, params: SystemParams, box_half_width: float = 8.0,
                 norm: float = 1.0):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("Landau index must be a nonnegative integer")
        if params.omega0 != 0:
            raise ValueError("Landau levels require omega0 = 0")
        if not params.omega > 0:
            raise ValueError("Landau levels require omega > 0")
        if not box_half_width > 0:
            raise ValueError("box half-width must be positive")
        self.n = int(n)
        self.params = params
        self.box_half_width = float(box_half_width)
        self.norm = float(norm)
        self.center = PhasePoint(0.0, 0.0, 0.0, 0.0)

    def omega_form(self, x, y, px, py):
        return _quad_forms(self.params, x, y, px, py)[0]

    def value(self, x, y, px, py):
        hbar = self.params.hbar
        om = self.omega_form(x, y, px, py) / hbar
        out = self.norm * (-1.0) ** self.n / (math.pi * hbar) * np.exp(-om) * laguerre(self.n, om)
        out = np.asarray(out)
        return float(out) if out.ndim == 0 else out

    @property
    def energy(self) -> float:
        return landau_energy(self.n, self.params)

    def box_scheme(self, nodes_per_axis: int = 101) -> quadrature.QuadratureScheme:
        L = self.box_half_width
        return quadrature.box_scheme((nodes_per_axis,) * 4, [(-L, L)] * 4)

    def box_integral(self, nodes_per_axis: int = 101) -> float:
        return quadrature.integrate(self.value, 4, self.box_scheme(nodes_per_axis))

    def normalized(self, nodes_per_axis: int = 101) -> "LandauState":
        """Copy with norm chosen so the signed box integral equals 1."""
        total = self.box_integral(nodes_per_axis)
        if not abs(total) > 1e-12:
            raise ValueError("box integral too small to fix a normalization")
        return LandauState(self.n, self.params, self.box_half_width, self.norm / total)


def landau_energy(n: int, params: SystemParams) -> float:
    """E_n = hbar omega (2n + 1)."""
    if n < 0:
        raise ValueError("Landau index must be nonnegative")
    if not params.omega > 0:
        raise ValueError("Landau ladder requires omega > 0")
    return params.hbar * params.omega * (2 * n + 1)


class GQWYSector:
    """Airy-form y-sector of the gravitational stationary state.

    W_y(y, py) = norm * Ai[alpha (xi - E)], xi = py^2/(2m) + m g y, on the
    declared domain y in [0, y_max], |py| <= p_cut.
    """

    def __init__(self, state: "GQWState"):
        self._s = state

    @property
    def norm(self) -> float:
        return self._s.norm

    def value_xi(self, xi):
        s = self._s
        out = s.norm * airy_ai(s.alpha * (np.asarray(xi, dtype=float) - s.energy))
        out = np.asarray(out)
        return float(out) if out.ndim == 0 else out

    def value(self, y, py):
        s = self._s
        y = np.asarray(y, dtype=float)
        py = np.asarray(py, dtype=float)
        if np.any(y < 0) or np.any(y > s.y_max):
            raise ValueError(f"y outside the declared domain [0, {s.y_max}]")
        xi = py * py / (2.0 * s.params.mass) + s.params.mass * s.params.g * y
        return self.value_xi(xi)


class GQWState:
    """Stationary Wigner state of a particle bouncing in uniform gravity.

    The y-sector is the Airy function of the conserved variable
    xi = py^2/(2m) + m g y; the x-sector is a unit Gaussian (transported
    rigidly by the flow).  Levels are indexed from n_y = 1, with
    E_{n_y} = -(m g^2 hbar^2 / 2)^{1/3} lambda_{n_y} built from the Airy
    zeros lambda_{n_y} < 0.

    The y-sector is normalized over the declared truncation domain
    [0, y_max] x [-p_cut, p_cut]; the default y_max = 3 E / (m g) keeps the
    domain several Airy widths past the classical turning point, and p_cut
    covers xi up to where Ai has decayed below 1e-12 of its peak.
    """

    def __init__(self, n_y: int, params: SystemParams, x_center=(0.0, 0.0),
                 y_max: float | None = None, norm: float | None = None):
        if not isinstance(n_y, (int, np.integer)) or n_y < 1:
            raise ValueError("gravitational level index starts at 1")
        if params.kind not in (SystemKind.GQW_BALLISTIC, SystemKind.GQW_FIELD):
            raise ValueError("GQWState requires a gravitational system")
        if not params.g > 0:
            raise ValueError("GQWState requires g > 0")
        self.n_y = int(n_y)
        self.params = params
        m, g, hbar = params.mass, params.g, params.hbar
        self.alpha = (8.0 / (m * g * g * hbar * hbar)) ** (1.0 / 3.0)
        self.energy = gqw_energy(n_y, params)
        turning = self.energy / (m * g)
        width = 1.0 / (self.alpha * m * g)
        self.y_max = 3.0 * self.energy / (m * g) if y_max is None else float(y_max)
        if self.y_max < turning + 5.0 * width:
            raise ValueError("y_max must clear the turning point by at least 5 Airy widths")
        self.xi_max = self.energy + 12.0 / self.alpha
        self.p_cut = math.sqrt(2.0 * m * self.xi_max)
        self._x_center = (float(x_center[0]), float(x_center[1]))
        self.sector_x = Gaussian2D(self._x_center)
        self.sector_y = GQWYSector(self)
        self.norm = 1.0
        self.norm = normalize_gqw(self) if norm is None else float(norm)

    def value(self, x, y, px, py):
        out = np.asarray(self.sector_x.value(x, px)) * np.asarray(self.sector_y.value(y, py))
        return float(out) if out.ndim == 0 else out

    def with_x_center(self, x_center) -> "GQWState":
        """Same level and domain, x-sector recentered (used for transport)."""
        return GQWState(self.n_y, self.params, x_center=x_center,
                        y_max=self.y_max, norm=self.norm)


def gqw_energy(n_y: int, params: SystemParams) -> float:
    """E_{n_y} = -(m g^2 hbar^2 / 2)^{1/3} lambda_{n_y} (positive)."""
    if n_y < 1:
        raise ValueError("gravitational level index starts at 1")
    if not params.g > 0:
        raise ValueError("gravitational spectrum requires g > 0")
    m, g, hbar = params.mass, params.g, params.hbar
    return -((m * g * g * hbar * hbar / 2.0) ** (1.0 / 3.0)) * airy_zero(n_y)


def normalize_gqw(state: GQWState, scheme: quadrature.QuadratureScheme | None = None) -> float:
    """Normalization constant A_n with integral of |W_y| = 1 over the domain.

    Convergence of the truncation is checked by extending the y range to
    twice y_max at the same node spacing; a relative change above 1e-6
    raises TruncationError.
    """
    m = state.params.mass
    g = state.params.g

    def unnormalized(y, py):
        xi = np.asarray(py, dtype=float) ** 2 / (2.0 * m) + m * g * np.asarray(y, dtype=float)
        return np.abs(airy_ai(state.alpha * (xi - state.energy)))

    if scheme is None:
        scheme = quadrature.box_scheme(
            (256, 256), [(0.0, state.y_max), (-state.p_cut, state.p_cut)]
        )
    if scheme.kind is not quadrature.SchemeKind.UNIFORM_BOX or scheme.dims != 2:
        raise ValueError("normalize_gqw expects a 2D box scheme over (y, py)")

    total = quadrature.integrate(unnormalized, 2, scheme)
    (y_lo, y_hi), p_bounds = scheme.bounds
    doubled = quadrature.box_scheme(
        (2 * scheme.orders[0], scheme.orders[1]),
        [(y_lo, y_hi + (y_hi - y_lo)), p_bounds],
    )
    extended = quadrature.integrate(unnormalized, 2, doubled)
    if abs(extended - total) > 1e-6 * abs(total):
        raise TruncationError(
            "y-sector mass has not converged on the declared domain; increase y_max"
        )
    if not total > 0:
        raise ValueError("y-sector has no mass on the declared domain")
    return 1.0 / total


def stargen_residual(state: GQWState, xi: float, h: float = 5e-4,
                     energy: float | None = None) -> float:
    """Residual of [xi - (hbar^2 m g^2 / 8) d^2/dxi^2 - E] W_y at one xi,
    with the second derivative by central differences, relative to the peak
    of |W_y|.  Small h recovers the star-genvalue identity; passing a wrong
    energy breaks it."""
    if not h > 0:
        raise ValueError("step h must be positive")
    p = state.params
    e_val = state.energy if energy is None else float(energy)
    c = p.hbar ** 2 * p.mass * p.g ** 2 / 8.0
    w = state.sector_y.value_xi
    xi = float(xi)
    second = (w(xi + h) - 2.0 * w(xi) + w(xi - h)) / (h * h)
    residual = abs(xi * w(xi) - c * second - e_val * w(xi))
    grid = np.linspace(0.0, state.xi_max, 2001)
    peak = float(np.max(np.abs(state.sector_y.value_xi(grid))))
    return residual / peak


def eval_gaussian(state: GaussianWigner, point: PhasePoint):
    return state.value(*point)


def eval_ho_stationary(state: StationaryHOState, point: PhasePoint):
    return state.value(*point)


def eval_landau(state: LandauState, point: PhasePoint):
    return state.value(*point)


def eval_gqw(state: GQWState, point: PhasePoint):
    return state.value(*point)
