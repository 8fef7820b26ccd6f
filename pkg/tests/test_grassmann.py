import json

import numpy as np
import pytest

from kfermion.fockrep import build_rep
from kfermion.grassmann import (
    GrassmannElement,
    berezin_z,
    berezin_zbar,
    d_z,
    d_zbar,
    element_residual,
    realization_matrix,
    reorder_identity_check,
    z_var,
    zbar_var,
)
from kfermion.qcore import DeformationParams, qnum, rel_residual

KS = list(range(2, 9))


def all_monomials(params):
    return [
        GrassmannElement.monomial(params, a, b)
        for a in range(params.k)
        for b in range(params.k)
    ]


def random_element(params, rng):
    coeffs = {
        (a, b): complex(rng.standard_normal(), rng.standard_normal())
        for a in range(params.k)
        for b in range(params.k)
    }
    return GrassmannElement(params, coeffs)


class TestElementBasics:
    def test_zero_coefficients_are_pruned(self):
        p = DeformationParams(3)
        e = GrassmannElement(p, {(0, 0): 0.0, (1, 2): 2j})
        assert e.coeffs == {(1, 2): 2j}

    def test_out_of_range_exponents_rejected(self):
        p = DeformationParams(3)
        with pytest.raises(ValueError):
            GrassmannElement(p, {(3, 0): 1.0})

    def test_monomial_at_order_is_zero(self):
        p = DeformationParams(3)
        assert GrassmannElement.monomial(p, 3, 0).is_zero()

    def test_mixed_orders_rejected(self):
        a = z_var(DeformationParams(3))
        b = z_var(DeformationParams(4))
        with pytest.raises(ValueError):
            a * b

    def test_rendering(self):
        p = DeformationParams(4)
        e = GrassmannElement(p, {(2, 1): 1 + 1j, (0, 0): 3.0})
        text = str(e)
        assert "z^2" in text and "3" in text
        assert str(GrassmannElement.zero(p)) == "0"

    def test_json_terms_round_trip(self):
        p = DeformationParams(4)
        e = GrassmannElement(p, {(1, 3): 0.5 - 2j, (0, 2): 1.0})
        terms = json.loads(json.dumps(e.to_terms()))
        rebuilt = GrassmannElement(
            p, {(a, b): complex(re, im) for (a, b), (re, im) in terms}
        )
        assert rebuilt == e


class TestProduct:
    def test_already_normal(self):
        p = DeformationParams(4)
        prod = z_var(p) * zbar_var(p)
        assert prod == GrassmannElement.monomial(p, 1, 1)

    @pytest.mark.parametrize("k", KS)
    def test_swap_phase(self, k):
        p = DeformationParams(k)
        lhs = zbar_var(p) * z_var(p)
        rhs = p.q_half_pow(-1) * (z_var(p) * zbar_var(p))
        assert element_residual(lhs, rhs) < 1e-15

    @pytest.mark.parametrize("k", KS)
    def test_nilpotency(self, k):
        p = DeformationParams(k)
        assert ((z_var(p) ** (k - 1)) * z_var(p)).is_zero()
        assert ((zbar_var(p) ** (k - 1)) * zbar_var(p)).is_zero()

    def test_monomial_law(self):
        p = DeformationParams(5)
        rng = np.random.default_rng(7)
        for _ in range(20):
            a1, b1, a2, b2 = rng.integers(0, 5, size=4)
            lhs = GrassmannElement.monomial(p, a1, b1) * GrassmannElement.monomial(p, a2, b2)
            rhs = GrassmannElement.monomial(
                p, a1 + a2, b1 + b2, p.q_half_pow(-int(a2) * int(b1))
            )
            assert element_residual(lhs, rhs) < 1e-15

    @pytest.mark.parametrize("k", [2, 3, 4, 6])
    def test_associativity_on_random_triples(self, k):
        p = DeformationParams(k)
        rng = np.random.default_rng(42 + k)
        for _ in range(8):
            x, y, w = (random_element(p, rng) for _ in range(3))
            assert element_residual((x * y) * w, x * (y * w)) < 1e-12

    def test_scalar_multiplication(self):
        p = DeformationParams(3)
        e = z_var(p)
        assert (2j * e).coeff(1, 0) == 2j
        assert (e * 2j).coeff(1, 0) == 2j
        assert (-e).coeff(1, 0) == -1


class TestDerivatives:
    @pytest.mark.parametrize("k", KS)
    def test_power_rules(self, k):
        p = DeformationParams(k)
        for n in range(1, k):
            lhs = d_z(z_var(p) ** n)
            rhs = GrassmannElement.monomial(p, n - 1, 0, qnum(n, p.q))
            assert element_residual(lhs, rhs) < 1e-13
            lhs = d_zbar(zbar_var(p) ** n)
            rhs = GrassmannElement.monomial(p, 0, n - 1, qnum(n, p.q_bar))
            assert element_residual(lhs, rhs) < 1e-13

    @pytest.mark.parametrize("k", KS)
    def test_exchange_on_all_monomials(self, k):
        p = DeformationParams(k)
        for mono in all_monomials(p):
            lhs = d_z(d_zbar(mono))
            rhs = p.q_half_pow(-1) * d_zbar(d_z(mono))
            assert element_residual(lhs, rhs) < 1e-13

    def test_exchange_on_the_pair_product(self):
        p = DeformationParams(5)
        pair = z_var(p) * zbar_var(p)
        assert element_residual(
            d_z(d_zbar(pair)), p.q_half_pow(-1) * d_zbar(d_z(pair))
        ) < 1e-14

    @pytest.mark.parametrize("k", KS)
    def test_derivatives_nilpotent(self, k):
        p = DeformationParams(k)
        for deriv in (d_z, d_zbar):
            for mono in all_monomials(p):
                out = mono
                for _ in range(k):
                    out = deriv(out)
                assert out.is_zero()

    def test_constant_derivative_vanishes(self):
        p = DeformationParams(3)
        assert d_z(GrassmannElement.one(p)).is_zero()
        assert d_zbar(GrassmannElement.one(p)).is_zero()


class TestBerezin:
    @pytest.mark.parametrize("k", KS)
    def test_sub_top_powers_vanish(self, k):
        p = DeformationParams(k)
        for n in range(k - 1):
            assert berezin_z(z_var(p) ** n).is_zero()
            assert berezin_zbar(zbar_var(p) ** n).is_zero()

    @pytest.mark.parametrize("k", KS)
    def test_top_power_is_one(self, k):
        p = DeformationParams(k)
        assert berezin_z(z_var(p) ** (k - 1)) == GrassmannElement.one(p)
        assert berezin_zbar(zbar_var(p) ** (k - 1)) == GrassmannElement.one(p)

    def test_linearity(self):
        p = DeformationParams(4)
        f = 3.0 * GrassmannElement.monomial(p, 3, 1) + z_var(p)
        out = berezin_z(f)
        assert out == GrassmannElement.monomial(p, 0, 1, 3.0)


class TestRealization:
    def test_k2_derivative_is_the_lowering_matrix(self):
        p = DeformationParams(2)
        assert np.allclose(realization_matrix("d_z", p), [[0, 1], [0, 0]])

    @pytest.mark.parametrize("k", KS)
    def test_matches_ladder_matrices(self, k):
        p = DeformationParams(k)
        rep = build_rep(p)
        assert rel_residual(realization_matrix("z", p), rep.a_plus) < 1e-12
        assert rel_residual(realization_matrix("d_z", p), rep.a_minus) < 1e-12
        assert rel_residual(realization_matrix("zbar", p), rep.a_minus_dag) < 1e-12
        assert rel_residual(realization_matrix("d_zbar", p), rep.a_plus_dag) < 1e-12

    @pytest.mark.parametrize("k", KS)
    def test_realization_satisfies_the_algebra(self, k):
        p = DeformationParams(k)
        eye = np.eye(k)
        a_plus = realization_matrix("z", p)
        a_minus = realization_matrix("d_z", p)
        a_minus_dag = realization_matrix("zbar", p)
        a_plus_dag = realization_matrix("d_zbar", p)
        assert rel_residual(a_minus @ a_plus - p.q * (a_plus @ a_minus), eye) < 1e-12
        assert rel_residual(
            a_plus_dag @ a_minus_dag - p.q_bar * (a_minus_dag @ a_plus_dag), eye
        ) < 1e-12
        assert rel_residual(
            a_minus @ a_plus_dag, p.q_half_pow(-1) * (a_plus_dag @ a_minus)
        ) < 1e-12

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            realization_matrix("dz", DeformationParams(3))


class TestReorder:
    @pytest.mark.parametrize("k", KS)
    def test_all_levels(self, k):
        p = DeformationParams(k)
        for n in range(k):
            assert reorder_identity_check(n, p).passed

    def test_frozen_level_two_k5(self):
        p = DeformationParams(5)
        lhs = (zbar_var(p) ** 2) * (z_var(p) ** 2)
        expected = GrassmannElement.monomial(p, 2, 2, p.q_pow(-2))
        assert element_residual(lhs, expected) < 1e-14

    def test_level_one_is_the_swap_rule(self):
        p = DeformationParams(4)
        lhs = zbar_var(p) * z_var(p)
        expected = GrassmannElement.monomial(p, 1, 1, p.q_half_pow(-1))
        assert element_residual(lhs, expected) < 1e-15

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            reorder_identity_check(4, DeformationParams(4))
