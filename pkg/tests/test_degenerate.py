import math

import numpy as np
import pytest

from spectral_phase.degenerate import (
    DegenerateSpec,
    DegenerateVariant,
    block,
    eigenvalue_pair,
    expansion_residual,
    spectrum,
)
from spectral_phase.eigensolve import eigenvalues_in, truncation
from spectral_phase.errors import IndexOutOfRange, WrongRegion
from spectral_phase.model import ModulationParams

C2Z, C1Z = DegenerateVariant.C2_ZERO, DegenerateVariant.C1_ZERO
S5 = math.sqrt(5)


def test_blocks():
    np.testing.assert_array_equal(block(DegenerateSpec(C2Z, 1), 1), [[1, 1], [1, 2]])
    np.testing.assert_array_equal(block(DegenerateSpec(C1Z, 0.5), 1), [[1]])
    np.testing.assert_array_equal(block(DegenerateSpec(C1Z, 0.5), 2), [[2, 1], [1, 3]])


def test_pairs():
    assert eigenvalue_pair(DegenerateSpec(C2Z, 1), 1) == pytest.approx(((3 - S5) / 2, (3 + S5) / 2))
    assert eigenvalue_pair(DegenerateSpec(C1Z, 0.5), 2) == pytest.approx(((5 - S5) / 2, (5 + S5) / 2))
    with pytest.raises(IndexOutOfRange):
        eigenvalue_pair(DegenerateSpec(C1Z, 0.5), 1)


@pytest.mark.parametrize("variant", [C2Z, C1Z])
@pytest.mark.parametrize("c", [0.3, 1.0, 2.5])
def test_pairs_match_blocks(variant, c):
    spec = DegenerateSpec(variant, c)
    for n in range(2, 60):
        ref = np.linalg.eigvalsh(block(spec, n))
        np.testing.assert_allclose(eigenvalue_pair(spec, n), ref, rtol=1e-13, atol=1e-12)


def test_spectrum_examples():
    np.testing.assert_allclose(spectrum(DegenerateSpec(C2Z, 1), 1), [(3 - S5) / 2, (3 + S5) / 2])
    np.testing.assert_allclose(spectrum(DegenerateSpec(C1Z, 0.5), 2), [1, (5 - S5) / 2, (5 + S5) / 2])


@pytest.mark.parametrize("variant,size", [(C2Z, lambda n: 2 * n), (C1Z, lambda n: 2 * n - 1)])
def test_spectrum_matches_truncation(variant, size):
    spec = DegenerateSpec(variant, 0.7)
    n_max = 40
    t = truncation(spec.params(), size(n_max))
    got = eigenvalues_in(t, -1e3, 1e3, 1e-12).values
    np.testing.assert_allclose(got, spectrum(spec, n_max), atol=1e-10)


def test_branch_slopes():
    pairs = np.array([eigenvalue_pair(DegenerateSpec(C2Z, 0.5), n) for n in (1000, 2000)])
    slopes = (pairs[1] - pairs[0]) / 1000
    np.testing.assert_allclose(slopes, [2 * 0.5, 2 * 1.5], rtol=1e-6)


def test_from_params():
    assert DegenerateSpec.from_params(ModulationParams(-2, 0)) == DegenerateSpec(C2Z, 2)
    assert DegenerateSpec.from_params(ModulationParams(0, 0.5)) == DegenerateSpec(C1Z, 0.5)
    with pytest.raises(WrongRegion):
        DegenerateSpec.from_params(ModulationParams(1, 1))


@pytest.mark.parametrize("variant", [C2Z, C1Z])
def test_expansion_remainder_order(variant):
    spec = DegenerateSpec(variant, 1.0)
    scaled = [expansion_residual(spec, n) * n * n for n in (10, 100, 1000, 10000)]
    assert max(scaled) < 10 * scaled[1]
    assert scaled[-1] > 0.5 * scaled[1]  # genuinely O(1/n^2), not smaller


def test_c1_limit_half():
    for variant in (C2Z, C1Z):
        minus, _ = eigenvalue_pair(DegenerateSpec(variant, 1.0), 10**4)
        assert abs(minus - 0.5) < 1e-4


@pytest.mark.parametrize("variant", [C2Z, C1Z])
@pytest.mark.parametrize("c,limit", [(0.5, math.inf), (1.0, 0.5), (2.0, -math.inf)])
def test_branch_limits(variant, c, limit):
    spec = DegenerateSpec(variant, c)
    minus, plus = eigenvalue_pair(spec, 10**5)
    assert plus > 1e5
    if math.isinf(limit):
        assert math.copysign(1, minus) == math.copysign(1, limit) and abs(minus) > 1e4
    else:
        assert minus == pytest.approx(limit, abs=1e-5)


def test_c1_zero_remainder_not_cubic():
    spec = DegenerateSpec(C1Z, 1.0)
    cubed = [expansion_residual(spec, n) * n**3 for n in (100, 1000, 10000)]
    assert cubed[2] > 50 * cubed[0]
