import math

import numpy as np
import pytest

from spectral_phase.asymptotics import (
    BACoefficients,
    Variant,
    ba_coefficients,
    characteristic_roots,
    coupling_check,
    descriptor,
    fit_expsqrt,
    fit_power_growth,
)
from spectral_phase.errors import (
    DegenerateParams,
    HalfLineResonance,
    InsufficientData,
    NearDegenerateRoots,
)
from spectral_phase.model import ModulationParams
from spectral_phase.recurrence import ScaledSequence, backward_minimal, forward_solve

LOG_ALPHA = math.log((3 + math.sqrt(5)) / 2)


def test_ba_coefficients_examples():
    co = ba_coefficients(ModulationParams(3, 1), 0.0)
    assert co.a0 == pytest.approx(3) and co.a1 == pytest.approx(-5 / 3)
    co = ba_coefficients(ModulationParams(0.3, 0.7), 0.0)
    assert co.a0 == pytest.approx(-2) and co.a1 == pytest.approx(1 - 0.5 / 0.21)
    co = ba_coefficients(ModulationParams(1.3, -0.2), 0.5)
    assert co.a1 == -co.a0 / 2
    assert (co.b0, co.b1) == (1.0, -1.0)
    with pytest.raises(DegenerateParams):
        ba_coefficients(ModulationParams(0, 1), 0.0)


def test_characteristic_roots_examples():
    ap, am = characteristic_roots(BACoefficients(3.0, 0.0))
    assert ap == pytest.approx((-3 - math.sqrt(5)) / 2)
    assert am == pytest.approx((-3 + math.sqrt(5)) / 2)
    ap, am = characteristic_roots(BACoefficients(1.0, 0.0))
    assert abs(ap) == pytest.approx(1) and abs(am) == pytest.approx(1)
    assert ap.imag > 0 and ap == am.conjugate()
    assert characteristic_roots(BACoefficients(-2.0, 0.0)) == (1, 1)


def test_characteristic_roots_cancellation():
    ap, am = characteristic_roots(BACoefficients(1e9, 0.0))
    assert ap * am == pytest.approx(1.0, rel=1e-15)
    assert am == pytest.approx(-1e-9, rel=1e-12)


def test_descriptor_expsqrt_subordinate():
    d = descriptor(ModulationParams(1.5, 0.5), 1.0)
    assert d.variant is Variant.EXP_SQRT
    assert d.delta_plus.real == pytest.approx(2 * math.sqrt(2 / 3))
    assert d.subordinate_exists
    assert d.coupling_plus == pytest.approx(-1)


def test_descriptor_expsqrt_oscillating():
    d = descriptor(ModulationParams(0.3, 0.7), 1.0)
    assert d.variant is Variant.EXP_SQRT
    assert d.delta_plus.real == 0 and d.delta_plus.imag != 0
    assert not d.subordinate_exists


def test_descriptor_resonance():
    with pytest.raises(HalfLineResonance):
        descriptor(ModulationParams(0.3, 0.7), 0.5)


@pytest.mark.parametrize("lam", [-3.0, 0.0, 0.5, 2.7, 11.0])
def test_descriptor_region_a_beta(lam):
    d = descriptor(ModulationParams(1, 1), lam)
    assert d.variant is Variant.POWER_LAW
    assert d.beta_plus.real == pytest.approx(-0.5, abs=1e-12)
    assert d.beta_minus.real == pytest.approx(-0.5, abs=1e-12)
    assert not d.subordinate_exists


def test_descriptor_product_of_roots():
    d = descriptor(ModulationParams(3, 1), 0.0)
    assert d.alpha_plus * d.alpha_minus == pytest.approx(1)
    assert d.subordinate_exists


def test_near_double_root_warns():
    c2 = 0.7 + 1e-8
    with pytest.warns(NearDegenerateRoots):
        descriptor(ModulationParams(0.3, c2), 0.0)


def test_power_growth_fits():
    p = ModulationParams(3, 1)
    s, _ = fit_power_growth(forward_solve(p, 0.0, 1.0, 1.0, 800))
    assert s == pytest.approx(LOG_ALPHA, rel=0.01)
    s, _ = fit_power_growth(backward_minimal(p, 0.0, 800))
    assert s == pytest.approx(-LOG_ALPHA, rel=0.01)


def test_power_growth_beta():
    # the dominant solution of (3, 1) at lam = 0 has beta_+ from the descriptor
    p = ModulationParams(3, 1)
    _, beta = fit_power_growth(forward_solve(p, 0.0, 1.0, 1.0, 4000))
    assert beta == pytest.approx(descriptor(p, 0.0).beta_plus.real, abs=0.05)


def test_fit_rejects_short_or_zero():
    z = ScaledSequence(np.zeros(200, dtype=np.int8), np.full(200, -np.inf))
    with pytest.raises(InsufficientData):
        fit_power_growth(z)
    with pytest.raises(InsufficientData):
        fit_expsqrt(forward_solve(ModulationParams(3, 1), 0.0, 1.0, 1.0, 100))


@pytest.mark.parametrize("c1,c2,lam", [(0.3, 0.7, 0.0), (1.5, 0.5, 1.0)])
def test_expsqrt_fits(c1, c2, lam):
    p = ModulationParams(c1, c2)
    delta = descriptor(p, lam).delta_plus.real
    assert fit_expsqrt(backward_minimal(p, lam, 4096)) == pytest.approx(-delta, rel=0.05)
    assert fit_expsqrt(forward_solve(p, lam, 1.0, 0.0, 4096)) == pytest.approx(delta, rel=0.05)


@pytest.mark.parametrize("c1,c2,lam,expected", [(3, 1, 0.0, -2.618034), (1.5, 0.5, 1.0, -1.0), (0.3, 0.7, 0.0, -1.0)])
def test_coupling(c1, c2, lam, expected):
    p = ModulationParams(c1, c2)
    d = descriptor(p, lam)
    assert coupling_check(backward_minimal(p, lam, 4096), d) == pytest.approx(expected, rel=0.02)
    assert d.coupling_minus.real == pytest.approx(expected, rel=1e-6)
