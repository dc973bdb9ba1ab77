"""Built-in witnesses: expectations, product-state validity, thresholds."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from symppt import (
    Witness,
    builtin_witness,
    detection_threshold,
    expectation_value,
    ghz_witness_mixture,
    load_witness_file,
    minimize_over_products,
    mix_with_identity,
    product_state_expectation,
    sappt_threshold_qubits,
    witness_from_json,
    witness_to_json,
)

W5_DIAG = (0.0366656, -0.134595, 1.0, 1.0, -0.134595, 0.0366656)
W7_DIAG = (0.00197514, 0.0643064, -0.189017, 1.0, 1.0, -0.189017, 0.0643064, 0.00197514)
W9_DIAG = (
    0.00235791,
    -0.013747,
    0.0621661,
    -0.1636915,
    1.0,
    1.0,
    -0.1636915,
    0.0621661,
    -0.013747,
    0.00235791,
)


class TestBuiltins:
    def test_w5_structure(self):
        w = builtin_witness("W5")
        assert w.diagonal == W5_DIAG
        assert w.corner == -9.31947
        mat = w.matrix()
        assert np.array_equal(np.diag(mat), np.array(W5_DIAG))
        assert mat[0, 5] == mat[5, 0] == -9.31947

    def test_w7_structure(self):
        w = builtin_witness("W7")
        assert w.diagonal == W7_DIAG
        assert w.corner == -31.2405

    def test_w9_structure(self):
        w = builtin_witness("W9")
        assert w.diagonal == W9_DIAG
        assert w.corner == -114.305

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin_witness("W11")

    def test_palindrome_enforced(self):
        with pytest.raises(ValueError):
            Witness("bad", (1.0, 2.0, 3.0), 0.5)


class TestExpectation:
    def test_ghz_mixture_w5(self):
        rho = ghz_witness_mixture(5, float(Fraction(30, 31)))
        assert expectation_value(rho, builtin_witness("W5")) == pytest.approx(-0.0085, abs=5e-4)

    def test_ghz_mixture_w7(self):
        rho = ghz_witness_mixture(7, float(Fraction(140, 141)))
        assert expectation_value(rho, builtin_witness("W7")) == pytest.approx(-0.0038, abs=5e-4)

    def test_ghz_mixture_w9(self):
        rho = ghz_witness_mixture(9, float(Fraction(630, 631)))
        assert expectation_value(rho, builtin_witness("W9")) == pytest.approx(-0.004, abs=1e-3)

    def test_maximally_mixed_closed_form(self):
        from symppt import ghz_state

        rho = mix_with_identity(5, 1.0, ghz_state(5))
        expected = (2 * 0.0366656 + 2 * (-0.134595) + 2) / 6
        got = expectation_value(rho, builtin_witness("W5"))
        assert got == pytest.approx(expected, abs=1e-14)
        assert got == pytest.approx(0.30069, abs=1e-5)

    def test_affine_in_p(self):
        w = builtin_witness("W5")
        samples = {p: expectation_value(ghz_witness_mixture(5, p), w) for p in (0.0, 0.5, 1.0)}
        slope = samples[1.0] - samples[0.0]
        assert samples[0.5] == pytest.approx(samples[0.0] + slope / 2, abs=1e-12)
        for p in (0.2, 0.77):
            got = expectation_value(ghz_witness_mixture(5, p), w)
            assert got == pytest.approx(samples[0.0] + slope * p, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            expectation_value(ghz_witness_mixture(5, 0.9), builtin_witness("W7"))


class TestProductExpectation:
    def test_w5_equator(self):
        got = product_state_expectation(builtin_witness("W5"), math.pi / 2, 0.0)
        a, b, c = 0.0366656, -0.134595, -9.31947
        assert got == pytest.approx((2 * a + 10 * b + 20 + 2 * c) / 32, abs=1e-14)
        assert got == pytest.approx(0.0027638, abs=1e-7)

    def test_w7_north_pole(self):
        assert product_state_expectation(builtin_witness("W7"), 0.0, 0.0) == pytest.approx(
            0.00197514, abs=1e-14
        )

    def test_w5_north_pole(self):
        assert product_state_expectation(builtin_witness("W5"), 0.0, 0.7) == pytest.approx(
            0.0366656, abs=1e-14
        )

    def test_matches_coherent_state_expectation(self):
        from symppt import coherent_state

        rng = np.random.default_rng(67)
        w = builtin_witness("W7")
        for _ in range(20):
            theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
            rho = coherent_state(7, theta, phi).density()
            assert product_state_expectation(w, theta, phi) == pytest.approx(
                expectation_value(rho, w), abs=1e-12
            )

    def test_phi_periodicity(self):
        rng = np.random.default_rng(71)
        for name, n in [("W5", 5), ("W7", 7), ("W9", 9)]:
            w = builtin_witness(name)
            for _ in range(10):
                theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
                assert product_state_expectation(w, theta, phi) == pytest.approx(
                    product_state_expectation(w, theta, phi + 2 * math.pi / n), abs=1e-12
                )


class TestMinimizeOverProducts:
    def test_w5(self):
        val, (theta, phi) = minimize_over_products(builtin_witness("W5"))
        assert val == pytest.approx(0.00276, abs=1e-4)
        assert theta == pytest.approx(math.pi / 2, abs=1e-3)
        assert phi == 0.0

    def test_w7(self):
        val, (theta, phi) = minimize_over_products(builtin_witness("W7"))
        assert val == pytest.approx(0.001975, abs=1e-4)
        assert theta == pytest.approx(0.0, abs=1e-3)
        assert phi == 0.0

    def test_w9(self):
        val, (theta, phi) = minimize_over_products(builtin_witness("W9"))
        assert val == pytest.approx(0.0002234, abs=5e-5)
        assert theta == pytest.approx(0.381, abs=1e-3)
        assert phi == 0.0

    def test_all_builtins_strictly_positive(self):
        for name in ("W5", "W7", "W9"):
            val, _ = minimize_over_products(builtin_witness(name))
            assert val >= 1e-5

    def test_grid_agrees_with_refinement(self):
        # re-derive the 2-D grid minimum independently and compare
        for name in ("W5", "W7", "W9"):
            w = builtin_witness(name)
            val, _ = minimize_over_products(w)
            thetas = np.linspace(0, math.pi, 721)
            phis = np.linspace(0, 2 * math.pi, 360, endpoint=False)
            grid_min = min(
                product_state_expectation(w, th, ph)
                for th in thetas[:: 36]
                for ph in phis[:: 18]
            )
            # coarse subsample only sanity-checks the scale
            assert grid_min >= val - 1e-12
            full = np.array(
                [product_state_expectation(w, th, 0.0) for th in thetas]
            ).min()
            assert abs(full - val) < 1e-6

    def test_positive_corner_moves_phi(self):
        w = Witness("flipped", (1.0, 0.2, 0.2, 1.0), 0.4)
        val, (theta, phi) = minimize_over_products(w)
        assert phi == pytest.approx(math.pi / 3, abs=1e-12)
        brute = min(
            product_state_expectation(w, th, ph)
            for th in np.linspace(0, math.pi, 400)
            for ph in np.linspace(0, 2 * math.pi, 90, endpoint=False)
        )
        assert val <= brute + 1e-9

    def test_threads_do_not_change_result(self, monkeypatch):
        w = builtin_witness("W9")
        base = minimize_over_products(w)
        monkeypatch.setenv("SYMPPT_THREADS", "4")
        assert minimize_over_products(w) == base

    def test_too_coarse_grid_rejected(self):
        with pytest.raises(ValueError):
            minimize_over_products(builtin_witness("W5"), grid=(2, 1))


class TestDetectionThreshold:
    @pytest.mark.parametrize(
        "name,n,expected,tol",
        [("W5", 5, 0.96862, 1e-4), ("W7", 7, 0.99302, 1e-4), ("W9", 9, 0.99845, 1e-4)],
    )
    def test_reference_values(self, name, n, expected, tol):
        assert detection_threshold(builtin_witness(name), n) == pytest.approx(expected, abs=tol)

    def test_closed_form_matches_expectation_zero(self):
        for name, n in [("W5", 5), ("W7", 7), ("W9", 9)]:
            w = builtin_witness(name)
            p_star = detection_threshold(w, n)
            assert expectation_value(ghz_witness_mixture(n, p_star), w) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_interval_above_sappt_threshold(self):
        for name, n in [("W5", 5), ("W7", 7), ("W9", 9)]:
            assert detection_threshold(builtin_witness(name), n) > float(
                sappt_threshold_qubits(n)
            )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            detection_threshold(builtin_witness("W5"), 7)

    def test_degenerate_denominator(self):
        flat = Witness("flat", (1.0, 1.0, 1.0, 1.0), 0.0)
        with pytest.raises(ValueError):
            detection_threshold(flat, 3)


class TestWitnessJson:
    def test_wire_format(self):
        data = json.loads(witness_to_json(builtin_witness("W5")))
        assert set(data) == {"name", "dim", "diagonal", "corner"}
        assert data["name"] == "W5"
        assert data["dim"] == 6
        assert data["diagonal"] == list(W5_DIAG)
        assert data["corner"] == -9.31947

    def test_round_trip(self):
        w = builtin_witness("W7")
        again = witness_from_json(witness_to_json(w))
        assert again == w

    def test_file_loading(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(witness_to_json(builtin_witness("W9")), encoding="utf-8")
        assert load_witness_file(path) == builtin_witness("W9")

    def test_declared_dim_checked(self):
        blob = json.dumps({"name": "x", "dim": 4, "diagonal": [1.0, 1.0], "corner": 0.1})
        with pytest.raises(ValueError):
            witness_from_json(blob)

    def test_custom_witness_through_validity_check(self, tmp_path):
        # a scaled W5 clone stays a valid witness and runs through the same path
        w5 = builtin_witness("W5")
        custom = Witness("half5", tuple(x / 2 for x in w5.diagonal), w5.corner / 2)
        path = tmp_path / "half.json"
        path.write_text(witness_to_json(custom), encoding="utf-8")
        loaded = load_witness_file(path)
        val, (theta, _) = minimize_over_products(loaded)
        ref, (theta_ref, _) = minimize_over_products(w5)
        assert val == pytest.approx(ref / 2, abs=1e-12)
        assert theta == pytest.approx(theta_ref, abs=1e-6)
