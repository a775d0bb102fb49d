import math

import numpy as np
import pytest

import mubsim


def test_mub_matrices_are_unbiased_unitaries():
    settings = mubsim.build_mub(3)
    assert len(settings) == 4
    for s in settings:
        u = np.asarray(s.u)
        assert u.shape == (3, 3)
        assert np.allclose(u.conj().T @ u, np.eye(3), atol=1e-12)
    for i in range(4):
        for j in range(i + 1, 4):
            overlap = np.abs(np.asarray(settings[i].u) @ np.asarray(settings[j].u).conj().T) ** 2
            assert np.allclose(overlap, 1.0 / 3.0, atol=1e-12)


def test_prime_guard():
    with pytest.raises(ValueError):
        mubsim.build_mub(4)
    with pytest.raises(ValueError):
        mubsim.BsvSpec(p=6)


def test_thinning_probability():
    assert mubsim.thinning_probability(2, 3, 0.5) == pytest.approx(0.375, abs=1e-14)
    assert mubsim.thinning_probability(0, 5, 0.0) == 1.0
    total = sum(mubsim.thinning_probability(m, 4, 0.3) for m in range(5))
    assert total == pytest.approx(1.0, abs=1e-13)


def test_source_state_and_weights():
    spec = mubsim.BsvSpec(p=3, gamma=1.0, cutoff=6)
    psi = mubsim.build_bsv(spec)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    for occ_a, occ_b, _ in psi.components():
        assert occ_a == occ_b
    weights = mubsim.sector_weights(spec)
    assert sum(w for _, w in weights) == pytest.approx(1.0, abs=1e-12)


def test_witness_matches_frozen_value():
    spec = mubsim.BsvSpec(p=3, gamma=1.0, cutoff=10, renormalized=True)
    report = mubsim.criterion(mubsim.CriterionKind.RATE_D3, spec, eta=0.2)
    assert report.verdict == mubsim.Verdict.ENTANGLED
    assert report.witness == pytest.approx(-0.044971935656026, abs=1e-9)

    dark = mubsim.criterion(mubsim.CriterionKind.RATE_D3, spec, eta=0.0)
    assert dark.verdict == mubsim.Verdict.NOT_EVALUABLE
    assert math.isnan(dark.witness)
    assert dark.reason


def test_critical_eta_intensity_threshold():
    spec = mubsim.BsvSpec(p=3, gamma=1.0, cutoff=10)
    result = mubsim.critical_eta(mubsim.CriterionKind.INTENSITY_D3, spec)
    assert result.eta_critical == pytest.approx(0.25, abs=0.005)


def test_loss_model_round_trip():
    spec = mubsim.BsvSpec(p=3, gamma=0.8, cutoff=6)
    dist = mubsim.ideal_joint_distribution(spec, setting=0)
    assert dist.total() == pytest.approx(1.0, abs=1e-12)
    lossy = mubsim.apply_loss(dist, eta=0.5)
    assert lossy.total() == pytest.approx(1.0, abs=1e-10)
    assert mubsim.epr_deficit_rates(dist, 3) < 1e-13


def test_transform_preserves_norm():
    spec = mubsim.BsvSpec(p=3, gamma=0.7, cutoff=4)
    psi = mubsim.build_bsv(spec)
    u = np.asarray(mubsim.build_mub(3)[1].u)
    rotated = mubsim.joint_transform(psi, u, u.conj())
    assert rotated.norm() == pytest.approx(1.0, abs=1e-11)


def test_enumerate_basis_count():
    assert len(mubsim.enumerate_basis(3, 4)) == 15
    assert mubsim.is_prime(13)
    assert not mubsim.is_prime(9)
