import numpy as np
import pytest
from hypothesis import given, strategies as st

from sispace.analysis import (NotNonnegativeError, a2_scan, classify, factorize, profile,
                              singularity_integrals)
from sispace.bracket import autocorrelation
from sispace.orthonorm import OrthoGenerator, check_onb
from sispace.piecewise import box, bspline, hat, psi1
from sispace.trigpoly import TrigPoly, sin_power

PHI_HAT1 = autocorrelation(hat())
PHI_PSI1 = autocorrelation(psi1())
POSITIVE = TrigPoly.from_dict({0: 2.0, 1: 0.5, -1: 0.5})  # 2 + cos 2 pi t
FIXTURE3 = sin_power(0.25, 4) * POSITIVE


def test_profile_examples():
    p = profile(PHI_PSI1)
    assert p.points == ((0.0, 1),) and p.lambda0 == 1
    assert profile(PHI_HAT1).is_empty
    p3 = profile(FIXTURE3)
    assert len(p3.points) == 1
    assert p3.points[0][0] == pytest.approx(0.25, abs=1e-7) and p3.points[0][1] == 2


def test_profile_rejects_bad_weights():
    with pytest.raises(NotNonnegativeError):
        profile(TrigPoly.from_dict({0: 0.2, 1: 0.5, -1: 0.5}))  # negative values
    with pytest.raises(NotNonnegativeError):
        profile(TrigPoly.from_dict({1: 1j}))
    with pytest.raises(NotNonnegativeError):
        profile(TrigPoly.zero())


def test_factorize_examples():
    f = factorize(PHI_PSI1)
    assert f.P.allclose(TrigPoly.constant(4 / 3), atol=1e-14)
    assert "sin" in f.describe()
    f = factorize(PHI_HAT1)
    assert f.describe() == "1" and f.P.allclose(PHI_HAT1, atol=0)
    f = factorize(FIXTURE3)
    assert f.P.allclose(POSITIVE, atol=1e-9)
    t = np.linspace(0, 1, 101)
    assert np.allclose(f.weight(t), FIXTURE3.real_values(t), atol=1e-12)


def test_classify_examples():
    r = classify(autocorrelation(box()))
    assert r.riesz and r.summary() == "Riesz basis, constants (1,1)"
    r = classify(PHI_HAT1)
    assert r.riesz
    assert r.riesz_bounds[0] == pytest.approx(1 / 3, abs=1e-9)
    assert r.riesz_bounds[1] == pytest.approx(1.0, abs=1e-9)
    r = classify(PHI_PSI1)
    assert not r.riesz and not r.schauder and not r.m_basis_full
    assert r.m_basis_after_removal and r.omega == (0,)
    assert r.cesaro_threshold == 0.5 and r.abel_summable
    r = classify(FIXTURE3)
    assert r.omega == (-1, 0) and r.cesaro_threshold == 1.5
    assert classify(FIXTURE3, omega_start=3).omega == (3, 4)


@given(st.floats(1e-3, 1e3))
def test_classify_scale_invariant(c):
    for phi in (PHI_HAT1, PHI_PSI1, FIXTURE3):
        a, b = classify(phi), classify(phi * c)
        for key in ("riesz", "schauder", "m_basis_full", "omega", "m_basis_after_removal",
                    "cesaro_threshold", "abel_summable"):
            assert getattr(a, key) == getattr(b, key)
        assert b.riesz_bounds[1] == pytest.approx(c * a.riesz_bounds[1], rel=1e-9)


@given(st.floats(1.6, 5.0), st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))  # a > 2|b + ic|
def test_profile_stable_under_positive_factor(a, b, c):
    positive = TrigPoly.from_dict({0: a, 1: b + 1j * c, -1: b - 1j * c})
    for phi in (PHI_PSI1, FIXTURE3):
        p0, p1 = profile(phi), profile(phi * positive)
        assert p0.orders == p1.orders
        assert np.allclose(p0.locations, p1.locations, atol=1e-6)


@pytest.mark.parametrize("phi", [PHI_PSI1, FIXTURE3], ids=["psi1", "sin4"])
def test_singularity_order_definition(phi):
    fact = factorize(phi)
    for j in range(len(fact.profile.points)):
        s = singularity_integrals(fact, j)
        assert s.diverges and s.converges


def test_orthonormalized_generators_are_riesz_one_one():
    for gen in (box(), hat(), bspline(3)):
        g = OrthoGenerator.from_generator(gen)
        # Phi of phi_0 sampled through the bracket; fit its low coefficients
        t = np.arange(32) / 32
        dev, s = check_onb(g, t, 2000)
        coeffs = np.fft.fft(s.value) / t.size
        phi0 = TrigPoly(-4, np.concatenate([coeffs[-4:], coeffs[:5]])).chop(1e-12)
        r = classify(phi0)
        assert r.riesz
        assert r.riesz_bounds == pytest.approx((1.0, 1.0), abs=1e-6)


def test_a2_scan_examples():
    one = a2_scan(lambda t: np.ones_like(t))
    assert one.lower_bound == pytest.approx(1.0) and not one.fails
    assert a2_scan(lambda t: np.sin(np.pi * t) ** 2).fails
    assert not a2_scan(lambda t: np.abs(np.sin(np.pi * t)) ** 0.5).fails


def test_a2_scan_abs_sine_fails():
    # 1/|sin pi t| is not integrable, so |sin pi t| is not an A2 weight and
    # the bounds keep growing (logarithmically)
    s = a2_scan(lambda t: np.abs(np.sin(np.pi * t)))
    assert s.fails
    assert all(b > a for a, b in zip(s.bounds, s.bounds[1:]))
