import math

import pytest

import circq


def test_version():
    assert circq.__version__ == "0.1.0"


def test_family_and_moments():
    fam = circq.CoherentFamily(circq.FiducialSpec(epsilon=1.0, delta=0.3))
    assert fam.c(0) == 1.0
    assert fam.kappa == pytest.approx(fam.c(2) / fam.c(1))
    assert fam.eta(0.5) == 0.0
    assert fam.eta(0.0) > 0.0


def test_angle_spectrum_symmetric():
    ap = circq.angle_operator(circq.CoherentFamily(circq.FiducialSpec()))
    assert ap.spectrum_lo + ap.spectrum_hi == pytest.approx(2 * math.pi, abs=1e-7)
    assert ap.m == pytest.approx(circq.spectrum_halfwidth(1.0, 0.3), abs=1e-6)


def test_fourier_table():
    rows = circq.fourier_table([1.0, 100.0], 0.3)
    assert rows[0][3] == pytest.approx(1.7143, abs=2e-3)
    assert rows[1][3] == pytest.approx(1.8009, abs=2e-3)
    assert round(circq.uniform_angle_dispersion(), 4) == 1.8138


def test_heisenberg_point():
    ctx = circq.AngleContext(circq.CoherentFamily(circq.FiducialSpec(epsilon=2.0)))
    for p, q, da, dp, rhs, prod in ctx.uncertainty_grid([0.0, 2.0], [1.0, 3.0]):
        assert prod >= rhs - 1e-8


def test_cylinder():
    assert circq.overlap(1, 0) == pytest.approx(math.exp(-1 / 8))
    assert circq.d_m(2, 0.3) <= 1.0
    assert abs(circq.lower_symbol_commutator(0.3, math.pi, 50.0) + 1j) < 5e-3


def test_errors():
    with pytest.raises(ValueError):
        circq.FiducialSpec(delta=2.0, kappa_mode="sideways")
    with pytest.raises(ValueError):
        circq.CoherentFamily(circq.FiducialSpec(delta=2.0))
