"""Volterra detection, canonical form, and the finite certificate."""

from __future__ import annotations

import numpy as np
import pytest

from helpers import canonical_image, rand_simplex, rand_skew, rand_tensor, rand_volterra_tensor
from qso import (
    NotVolterra,
    OpFamilySpec,
    QsoTensor,
    SimplexPoint,
    SkewMatrix,
    apply,
    check_abs_continuity_property,
    from_canonical,
    is_volterra,
    op_family,
    to_canonical,
    validate,
    volterra_certificate,
)
from qso.errors import InvalidSkew


def volterra_like_with_forbidden_mass(value: float) -> QsoTensor:
    """Vertex conditions hold, but slice (1, 2) leaks ``value`` onto k = 3."""
    p = np.zeros((3, 3, 3))
    for k in range(3):
        p[k, k, k] = 1.0
    p[0, 1] = p[1, 0] = [(1 - value) / 2, (1 - value) / 2, value]
    p[0, 2] = p[2, 0] = [0.5, 0.0, 0.5]
    p[1, 2] = p[2, 1] = [0.0, 0.5, 0.5]
    return QsoTensor(3, p)


class TestIsVolterra:
    @pytest.mark.parametrize("params", [(0, 0, 0), (0.2, 0.7, 1.0), (1, 1, 1)])
    def test_family2_is_volterra(self, params):
        assert is_volterra(op_family(OpFamilySpec(2, *params)))

    def test_zero_skew_gives_identity_and_is_volterra(self):
        V = from_canonical(SkewMatrix(3, np.zeros((3, 3))))
        assert is_volterra(V)
        x = SimplexPoint([0.2, 0.3, 0.5])
        assert np.allclose(apply(V, x).coords, x.coords, atol=1e-15)

    def test_family1_is_not_volterra(self):
        V = op_family(OpFamilySpec(1, 0.4, 0.5, 0.6))
        assert V.p[0, 0, 2] == 1.0
        assert not is_volterra(V)


class TestCanonicalForm:
    def test_family2_parameters(self):
        a, b, g = 0.3, 0.6, 0.9
        skew = to_canonical(op_family(OpFamilySpec(2, a, b, g)))
        assert skew.a[0, 1] == pytest.approx(2 * a - 1, abs=1e-15)
        assert skew.a[0, 2] == pytest.approx(2 * g - 1, abs=1e-15)
        assert skew.a[1, 2] == pytest.approx(2 * b - 1, abs=1e-15)
        assert np.allclose(skew.a, -skew.a.T)

    def test_half_coefficients_give_zero_matrix(self):
        V = from_canonical(SkewMatrix(4, np.zeros((4, 4))))
        assert np.array_equal(to_canonical(V).a, np.zeros((4, 4)))

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_round_trip_from_skew(self, m):
        rng = np.random.default_rng(20 + m)
        for _ in range(50):
            a = rand_skew(rng, m)
            back = to_canonical(from_canonical(a))
            assert np.abs(back.a - a.a).max() <= 1e-12

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_round_trip_from_tensor(self, m):
        rng = np.random.default_rng(30 + m)
        for _ in range(50):
            V = rand_volterra_tensor(rng, m)
            back = from_canonical(to_canonical(V))
            assert np.abs(back.p - V.p).max() <= 1e-12

    def test_two_species_closed_form(self):
        # a[1,2] = 1 gives (x + xy, y - xy)
        V = from_canonical(SkewMatrix(2, np.array([[0.0, 1.0], [-1.0, 0.0]])))
        rng = np.random.default_rng(2)
        for _ in range(20):
            pt = rand_simplex(rng, 2)
            x, y = pt.coords
            assert np.allclose(apply(V, pt).coords, [x + x * y, y - x * y], atol=1e-14)

    def test_formula_agreement_on_samples(self):
        rng = np.random.default_rng(8)
        for m in (2, 3, 4):
            for _ in range(20):
                V = rand_volterra_tensor(rng, m)
                a = to_canonical(V)
                x = rand_simplex(rng, m, n_zeros=int(rng.integers(0, m)))
                assert np.allclose(
                    apply(V, x).coords, canonical_image(a.a, x.coords), atol=1e-10
                )

    def test_from_canonical_always_volterra(self):
        rng = np.random.default_rng(9)
        for m in (2, 3, 5):
            assert is_volterra(from_canonical(rand_skew(rng, m)))

    def test_to_canonical_rejects_non_volterra(self):
        with pytest.raises(NotVolterra):
            to_canonical(op_family(OpFamilySpec(1, 0.1, 0.2, 0.3)))

    def test_to_canonical_tolerates_noise_level_forbidden_mass(self):
        V = volterra_like_with_forbidden_mass(1e-10)
        assert is_volterra(V)
        skew = to_canonical(V)
        assert np.allclose(skew.a, -skew.a.T)

    def test_invalid_skew_rejected(self):
        with pytest.raises(InvalidSkew):
            SkewMatrix(2, np.array([[0.0, 0.5], [0.5, 0.0]]))
        with pytest.raises(InvalidSkew):
            SkewMatrix(2, np.array([[0.0, 1.5], [-1.5, 0.0]]))

    def test_fixed_vertices_exactly(self):
        rng = np.random.default_rng(10)
        for m in (2, 3, 4):
            V = rand_volterra_tensor(rng, m)
            for k in range(1, m + 1):
                e = SimplexPoint.vertex(m, k)
                assert np.array_equal(apply(V, e).coords, e.coords)


class TestAbsContinuityProperty:
    def test_volterra_passes_on_random_samples(self):
        rng = np.random.default_rng(12)
        V = rand_volterra_tensor(rng, 3)
        samples = [rand_simplex(rng, 3, n_zeros=int(rng.integers(0, 3))) for _ in range(50)]
        assert check_abs_continuity_property(V, samples)

    def test_family1_fails_at_first_vertex(self):
        V = op_family(OpFamilySpec(1, 0.4, 0.5, 0.6))
        assert not check_abs_continuity_property(V, [SimplexPoint.vertex(3, 1)])

    def test_full_support_samples_never_violate(self):
        rng = np.random.default_rng(13)
        V = rand_tensor(rng, 3)
        samples = [rand_simplex(rng, 3) for _ in range(20)]
        assert check_abs_continuity_property(V, samples)

    def test_empty_samples_rejected(self):
        V = rand_tensor(np.random.default_rng(0), 3)
        with pytest.raises(ValueError):
            check_abs_continuity_property(V, [])


class TestCertificate:
    def test_true_for_volterra(self):
        rng = np.random.default_rng(14)
        for m in (2, 3, 4):
            assert volterra_certificate(rand_volterra_tensor(rng, m))

    def test_detects_forbidden_mass_at_midpoint(self):
        V = volterra_like_with_forbidden_mass(0.1)
        # vertex images are exact vertices, so only the midpoint can tell
        for k in range(1, 4):
            e = SimplexPoint.vertex(3, k)
            assert np.array_equal(apply(V, e).coords, e.coords)
        assert not volterra_certificate(V)
        assert not is_volterra(V)

    def test_uniform_kernel_fails_at_a_vertex(self):
        V = validate(np.full((3, 3, 3), 1.0 / 3.0))
        assert not check_abs_continuity_property(V, [SimplexPoint.vertex(3, 1)], eps_supp=1e-9)
        assert not volterra_certificate(V)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_certificate_equals_is_volterra_on_random_tensors(self, m):
        rng = np.random.default_rng(40 + m)
        for trial in range(100):
            V = rand_volterra_tensor(rng, m) if trial % 2 else rand_tensor(rng, m)
            assert volterra_certificate(V) == is_volterra(V)
