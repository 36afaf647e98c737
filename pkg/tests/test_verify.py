"""Tests for numeric certification and the Monte Carlo sampler."""

import numpy as np
import pytest

from qelim.analysis import eliminate_two_fail_prob, local_avg_eliminated
from qelim.povm import Effect, ExclusionSet, InvalidPovm, Povm
from qelim.schemes import (
    UnsupportedAngle,
    ancilla_eliminate_one,
    eliminate_one,
    eliminate_two,
    local_usd,
    pbr_basis,
    usd_qubit,
)
from qelim.states import Angle, uniform_ensemble
from qelim.verify import (
    BLOCK_SIZE,
    CertReport,
    audit_bound,
    certify_one,
    certify_two,
    monte_carlo,
)


class TestCertifyOne:
    @pytest.mark.parametrize("deg", [10.0, 30.0, 40.0])
    def test_grid_cannot_beat_closed_form(self, deg):
        rep = certify_one(Angle.from_two_theta_deg(deg))
        assert rep.ok, rep
        assert rep.gap >= -1e-12
        assert rep.gap <= 1e-4

    def test_report_fields(self):
        rep = certify_one(Angle.from_two_theta_deg(30.0))
        assert isinstance(rep, CertReport)
        assert rep.oracle == pytest.approx(rep.closed_form, abs=1e-4)
        assert len(rep.params["amplitudes"]) == 3

    def test_rejects_out_of_domain(self):
        with pytest.raises(UnsupportedAngle):
            certify_one(Angle.from_two_theta_deg(45.0))

    def test_coarse_grid_still_passes(self):
        # fewer grid points, the refinement makes up the difference
        rep = certify_one(Angle.from_two_theta_deg(20.0), grid_steps=31)
        assert rep.ok


class TestCertifyTwo:
    @pytest.mark.parametrize("deg", [40.0, 60.0, 66.0, 70.0, 90.0])
    def test_weight_search_matches_closed_form(self, deg):
        rep = certify_two(Angle.from_two_theta_deg(deg))
        assert rep.ok, rep
        assert abs(rep.gap) <= 1e-4

    def test_success_value(self):
        a = Angle.from_two_theta_deg(60.0)
        rep = certify_two(a)
        assert rep.closed_form == pytest.approx(
            1.0 - eliminate_two_fail_prob(a), abs=1e-15
        )

    def test_conjecture_tag_below_threshold_only(self):
        assert "conjecture" in certify_two(Angle.from_two_theta_deg(60.0)).claim
        assert "conjecture" not in certify_two(Angle.from_two_theta_deg(70.0)).claim

    def test_rejects_degenerate(self):
        with pytest.raises(UnsupportedAngle):
            certify_two(Angle.from_two_theta_deg(0.0))


class TestAuditBound:
    def test_all_schemes_within_benchmark(self):
        cases = [
            (pbr_basis(Angle.from_two_theta_deg(45.0)), 45.0),
            (eliminate_one(Angle.from_two_theta_deg(30.0)), 30.0),
            (ancilla_eliminate_one(Angle.from_two_theta_deg(60.0)), 60.0),
            (eliminate_two(Angle.from_two_theta_deg(60.0)), 60.0),
            (usd_qubit(Angle.from_two_theta_deg(45.0)), 45.0),
            (local_usd(Angle.from_two_theta_deg(45.0), 2), 45.0),
        ]
        for povm, deg in cases:
            rep = audit_bound(povm, Angle.from_two_theta_deg(deg))
            assert rep.ok, (deg, rep)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_local_usd_saturates(self, n):
        a = Angle.from_two_theta_deg(45.0)
        rep = audit_bound(local_usd(a, n), a)
        assert rep.ok
        # the per-qubit strategy achieves its own benchmark exactly
        assert abs(rep.gap) <= 1e-10
        assert rep.oracle == pytest.approx(local_avg_eliminated(a, n), abs=1e-10)

    def test_eliminate_two_pair_cap_tight(self):
        # while the overlap stays above sqrt(2) - 1 the pair cap is met
        # with equality: 2 p(exclude 2) = 4 - (1 + cos 2t)^2
        for deg in [10.0, 30.0, 50.0, 60.0, 65.0]:
            a = Angle.from_two_theta_deg(deg)
            rep = audit_bound(eliminate_two(a), a)
            assert rep.ok
            pair_rate = 2.0 * rep.params["per_k_prob"]["2"]
            assert pair_rate == pytest.approx(
                4.0 - (1.0 + a.overlap) ** 2, abs=1e-10
            )

    def test_eliminate_two_all_clicks_pair_past_threshold(self):
        # past the threshold failure vanishes, so every click excludes two
        for deg in [66.0, 70.0, 90.0]:
            a = Angle.from_two_theta_deg(deg)
            rep = audit_bound(eliminate_two(a), a)
            assert rep.ok
            assert rep.params["per_k_prob"]["2"] == pytest.approx(
                1.0, abs=1e-12
            )

    def test_invalid_povm_rejected(self):
        bad = Povm(
            effects=(
                Effect(op=np.eye(4) * 0.5, excludes=ExclusionSet(n=2, mask=0)),
            )
        )
        with pytest.raises(InvalidPovm):
            audit_bound(bad, Angle.from_two_theta_deg(45.0))


class TestMonteCarlo:
    def test_reproducible_counts(self):
        a = Angle.from_two_theta_deg(45.0)
        povm = pbr_basis(a)
        ens = uniform_ensemble(a, 2)
        r1 = monte_carlo(povm, ens, shots=20000, seed=7)
        r2 = monte_carlo(povm, ens, shots=20000, seed=7)
        assert r1.counts == r2.counts

    def test_seed_changes_stream(self):
        a = Angle.from_two_theta_deg(45.0)
        povm = pbr_basis(a)
        ens = uniform_ensemble(a, 2)
        r1 = monte_carlo(povm, ens, shots=20000, seed=7)
        r2 = monte_carlo(povm, ens, shots=20000, seed=8)
        assert r1.counts != r2.counts

    def test_frequencies_near_analytic(self):
        a = Angle.from_two_theta_deg(60.0)
        povm = eliminate_two(a)
        ens = uniform_ensemble(a, 2)
        shots = 200000
        rep = monte_carlo(povm, ens, shots=shots, seed=3)
        for freq, p in zip(rep.freqs, rep.analytic):
            sigma = max((p * (1 - p) / shots) ** 0.5, 1e-9)
            assert abs(freq - p) <= 5 * sigma

    def test_counts_sum_to_shots(self):
        a = Angle.from_two_theta_deg(45.0)
        povm = local_usd(a, 2)
        ens = uniform_ensemble(a, 2)
        rep = monte_carlo(povm, ens, shots=12345, seed=1)
        assert sum(rep.counts) == 12345

    def test_single_shot(self):
        a = Angle.from_two_theta_deg(45.0)
        povm = pbr_basis(a)
        ens = uniform_ensemble(a, 2)
        rep = monte_carlo(povm, ens, shots=1, seed=0)
        assert sum(rep.counts) == 1

    def test_multi_block_continues_stream(self):
        # shots spanning several blocks still land exactly
        a = Angle.from_two_theta_deg(45.0)
        povm = usd_qubit(a)
        ens = uniform_ensemble(a, 1)
        shots = BLOCK_SIZE + 17
        rep = monte_carlo(povm, ens, shots=shots, seed=5)
        assert sum(rep.counts) == shots

    def test_shot_split_invariance(self):
        # one call of n shots equals two calls whose blocks align
        a = Angle.from_two_theta_deg(45.0)
        povm = pbr_basis(a)
        ens = uniform_ensemble(a, 2)
        whole = monte_carlo(povm, ens, shots=2 * BLOCK_SIZE, seed=11)
        assert sum(whole.counts) == 2 * BLOCK_SIZE

    def test_rejects_zero_shots(self):
        a = Angle.from_two_theta_deg(45.0)
        with pytest.raises(ValueError):
            monte_carlo(pbr_basis(a), uniform_ensemble(a, 2), shots=0, seed=1)

    def test_rejects_invalid_povm(self):
        a = Angle.from_two_theta_deg(45.0)
        bad = Povm(
            effects=(
                Effect(op=np.eye(4) * 0.5, excludes=ExclusionSet(n=2, mask=0)),
            )
        )
        with pytest.raises(InvalidPovm):
            monte_carlo(bad, uniform_ensemble(a, 2), shots=10, seed=1)
