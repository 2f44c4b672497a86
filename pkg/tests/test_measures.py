"""Fidelity and entropy measures."""

import math

import numpy as np
import pytest

from wigsim.measures import (
    EntropyConvention,
    WignerNegativityError,
    default_fidelity_scheme,
    entropy_vs_field,
    fidelity_curve,
    fidelity_gaussian_closed,
    fidelity_ho_paper,
    fidelity_quadrature,
    paper_form_point,
    shannon_entropy,
)
from wigsim.model import PhasePoint, SystemKind, SystemParams
from wigsim.quadrature import box_scheme
from wigsim.wigner import Gaussian2D, GaussianWigner, StationaryHOState

C0 = PhasePoint(1.0, 1.0, 1.0, 1.0)
ORIGIN = PhasePoint(0.0, 0.0, 0.0, 0.0)


class _Offset:
    """Gaussian shifted down by a constant; probes the negativity clamp."""

    def __init__(self, dip):
        self.base = GaussianWigner()
        self.center = self.base.center
        self.dip = dip

    def value(self, x, y, px, py):
        return self.base.value(x, y, px, py) - self.dip


class _Scaled2D:
    """Sector Gaussian times a constant; probes entropy conventions."""

    def __init__(self, factor):
        self.base = Gaussian2D()
        self.factor = factor

    def value(self, a, b):
        return self.factor * self.base.value(a, b)


class TestFidelityClosed:
    def test_displacement_value(self):
        assert fidelity_gaussian_closed(ORIGIN, C0) == pytest.approx(math.exp(-2.0), rel=1e-14)

    def test_identity_at_zero_displacement(self):
        assert fidelity_gaussian_closed(C0, C0) == 1.0

    def test_symmetric(self):
        a = PhasePoint(0.3, -0.7, 1.2, 0.1)
        assert fidelity_gaussian_closed(a, C0) == pytest.approx(
            fidelity_gaussian_closed(C0, a), rel=1e-15)

    def test_broadcasts(self):
        ct = PhasePoint(np.array([0.0, 1.0]), np.array([0.0, 1.0]),
                        np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        out = fidelity_gaussian_closed(ORIGIN, ct)
        assert out.shape == (2,)
        assert out[0] == 1.0
        assert out[1] == pytest.approx(math.exp(-2.0), rel=1e-14)


class TestFidelityQuadrature:
    def test_matches_closed_form(self):
        w0 = GaussianWigner(ORIGIN)
        for ct in (C0, PhasePoint(2.0, -1.0, 0.5, 0.0)):
            wt = GaussianWigner(ct)
            got = fidelity_quadrature(w0, wt, default_fidelity_scheme(w0, wt))
            assert got == pytest.approx(fidelity_gaussian_closed(ORIGIN, ct), rel=1e-13)

    def test_trap_ground_state_matches_gaussian(self):
        p = SystemParams(kind=SystemKind.HO_FIELD, omega0=1.0)
        state = StationaryHOState(0, 0, p)
        w = GaussianWigner()
        got = fidelity_quadrature(state, w, default_fidelity_scheme(state, w))
        assert got == pytest.approx(1.0, abs=1e-12)

    def test_excited_state_rejected(self):
        p = SystemParams(kind=SystemKind.HO_FIELD, omega0=1.0)
        state = StationaryHOState(1, 0, p)
        w = GaussianWigner()
        with pytest.raises(WignerNegativityError) as err:
            fidelity_quadrature(state, w, default_fidelity_scheme(state, w))
        assert "StationaryHOState" in str(err.value)

    def test_rounding_dips_clamped(self):
        w = GaussianWigner()
        soft = _Offset(5e-13)
        sch = default_fidelity_scheme(w, soft)
        val = fidelity_quadrature(w, soft, sch)
        assert val == pytest.approx(1.0, abs=1e-6)

    def test_real_negativity_raises(self):
        w = GaussianWigner()
        bad = _Offset(1e-9)
        sch = default_fidelity_scheme(w, bad)
        with pytest.raises(WignerNegativityError):
            fidelity_quadrature(w, bad, sch)


class TestPaperForm:
    def test_equals_closed_form_on_its_trajectory(self):
        ts = np.linspace(0.0, 12.0, 97)
        for omega in (0.1, 0.5, 1.0):
            want = fidelity_gaussian_closed(
                C0, paper_form_point(omega, ts, C0))
            got = fidelity_ho_paper(omega, ts, C0)
            assert np.allclose(got, want, rtol=1e-12, atol=1e-14)

    def test_unity_at_zero(self):
        assert fidelity_ho_paper(0.5, 0.0, C0) == pytest.approx(1.0, rel=1e-15)

    def test_period_without_field(self):
        # omega = 0: pure oscillation, full revival at t = 2 pi
        assert fidelity_ho_paper(0.0, 2 * math.pi, C0) == pytest.approx(1.0, rel=1e-12)


class TestFidelityCurve:
    def test_consistent_curve_trap(self):
        p = SystemParams(kind=SystemKind.HO_FIELD, b0=1.0, omega0=1.0)
        ts = np.linspace(0.0, 2.0, 5)
        curve = fidelity_curve(p, C0, ts, order=24)
        assert curve.closed[0] == pytest.approx(1.0, rel=1e-13)
        assert np.all(curve.abs_diff <= 1e-10)
        assert curve.paper is not None
        assert curve.paper[0] == pytest.approx(1.0, rel=1e-13)

    def test_paper_form_requires_unit_trap(self):
        free = SystemParams(kind=SystemKind.FREE_FIELD, b0=1.0)
        with pytest.raises(ValueError):
            fidelity_curve(free, C0, [0.0, 1.0], form="paper")
        soft = SystemParams(kind=SystemKind.HO_FIELD, b0=1.0, omega0=0.5)
        with pytest.raises(ValueError):
            fidelity_curve(soft, C0, [0.0, 1.0], form="paper")

    def test_free_curve_has_no_paper_column(self):
        free = SystemParams(kind=SystemKind.FREE_FIELD, b0=1.0)
        curve = fidelity_curve(free, C0, np.linspace(0.0, 1.0, 3), order=16)
        assert curve.paper is None
        assert np.all(curve.abs_diff <= 1e-10)

    def test_unknown_form_rejected(self):
        p = SystemParams(kind=SystemKind.HO_FIELD, omega0=1.0)
        with pytest.raises(ValueError):
            fidelity_curve(p, C0, [0.0], form="exotic")


class TestEntropy:
    def test_unit_gaussian_sector(self):
        # -/int w ln w for w = e^{-a^2-b^2}/pi is ln(pi) + 1
        sch = box_scheme((101, 101), [(-8.0, 8.0)] * 2)
        res = shannon_entropy(Gaussian2D(), sch)
        assert res.value == pytest.approx(math.log(math.pi) + 1.0, abs=1e-8)

    def test_product_state_additivity(self):
        w = GaussianWigner(PhasePoint(0.5, -0.3, 0.2, 0.0))
        sch4 = box_scheme((61,) * 4, [(-8.0, 8.0)] * 4)
        sch2 = box_scheme((61,) * 2, [(-8.0, 8.0)] * 2)
        total = shannon_entropy(w, sch4).value
        sx = shannon_entropy(w.sector_x(), sch2).value
        sy = shannon_entropy(w.sector_y(), sch2).value
        assert total == pytest.approx(sx + sy, abs=1e-8)

    def test_normalized_convention_relation(self):
        # S_norm = S_raw / Z + ln Z for a state of box mass Z
        doubled = _Scaled2D(2.0)
        sch = box_scheme((101, 101), [(-8.0, 8.0)] * 2)
        raw = shannon_entropy(doubled, sch).value
        norm = shannon_entropy(doubled, sch, EntropyConvention.NORMALIZED_BOX).value
        z = 2.0
        assert norm == pytest.approx(raw / z + math.log(z), abs=1e-9)

    def test_normalized_convention_scale_invariant(self):
        sch = box_scheme((81, 81), [(-8.0, 8.0)] * 2)
        a = shannon_entropy(_Scaled2D(1.0), sch, EntropyConvention.NORMALIZED_BOX).value
        b = shannon_entropy(_Scaled2D(7.3), sch, EntropyConvention.NORMALIZED_BOX).value
        assert a == pytest.approx(b, abs=1e-10)

    def test_hermite_scheme_rejected(self):
        from wigsim.quadrature import hermite_scheme
        with pytest.raises(ValueError):
            shannon_entropy(Gaussian2D(), hermite_scheme((16, 16)))


class TestEntropyVsField:
    def test_trap_curve_is_flat(self):
        rows = entropy_vs_field(SystemKind.HO_FIELD, [0.0, 0.5, 1.0], nodes_per_axis=81)
        values = [s for _, s in rows]
        want = 2.0 * (math.log(math.pi) + 1.0)
        for v in values:
            assert v == pytest.approx(want, abs=1e-6)

    def test_free_curve_vanishes_with_field(self):
        rows = entropy_vs_field(SystemKind.FREE_FIELD, [0.05, 0.2, 0.5], nodes_per_axis=41)
        values = [s for _, s in rows]
        assert all(v > 0 for v in values)
        assert values[0] < values[1] < values[2]
        # the raw box entropy of the lowest Landau level is linear in b0
        assert values[0] / values[2] == pytest.approx(0.1, rel=0.02)

    def test_gravitational_kind_rejected(self):
        with pytest.raises(ValueError):
            entropy_vs_field(SystemKind.GQW_BALLISTIC, [0.1])
