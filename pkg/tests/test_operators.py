"""Operator symbols, finite sections, and defect measurements."""

import numpy as np
import pytest

from conftest import seeded_polys
from wcolab.analytic_core import Const, Moebius, Poly, rotation_map
from wcolab.errors import DegenerateInput, DomainError, ParameterError, SingularMatrix
from wcolab.operators import (
    DEFAULT_SEED,
    FiniteSection,
    SECTION_RADIUS,
    WcoSymbols,
    apply,
    condition_number,
    default_probe_family,
    finite_section,
    isometry_defect,
    monomial,
    random_polynomials,
)
from wcolab.spaces import parse_space

IDENTITY = Poly((0.0, 1.0))


class TestSymbols:
    def test_valid_pair(self):
        w = WcoSymbols(Const(2.0), Poly((0.0, 0.5)))
        assert w.F is not None

    def test_phi_not_self_map(self):
        with pytest.raises(DomainError):
            WcoSymbols(Const(1.0), Poly((0.0, 2.0)))

    def test_phi_escapes_on_part_of_circle(self):
        # 0.3 + 0.8 z leaves the disk only near z = 1
        with pytest.raises(DomainError):
            WcoSymbols(Const(1.0), Poly((0.3, 0.8)))

    def test_constant_phi_rejected(self):
        with pytest.raises(DegenerateInput):
            WcoSymbols(Const(1.0), Const(0.3))

    def test_zero_weight_rejected(self):
        with pytest.raises(DegenerateInput):
            WcoSymbols(Const(0.0), IDENTITY)

    def test_apply_pointwise(self):
        F = Poly((1.0, 0.5j))
        phi = Poly((0.1, 0.0, 0.4))
        w = WcoSymbols(F, phi)
        image = apply(w, Poly((2.0, 0.0, 1.0)))
        z = 0.3 - 0.2j
        expected = F.jet(z).f * (2.0 + phi.jet(z).f ** 2)
        assert image.jet(z).f == pytest.approx(expected, rel=1e-14)


class TestFiniteSection:
    def test_dimension_validation(self, cfg):
        w = WcoSymbols(Const(1.0), IDENTITY)
        with pytest.raises(ParameterError):
            finite_section(w, 1, cfg)
        with pytest.raises(ParameterError):
            finite_section(w, cfg.n_theta // 2 + 1, cfg)

    def test_identity_operator(self, cfg):
        w = WcoSymbols(Const(1.0), IDENTITY)
        s = finite_section(w, 8, cfg)
        assert s.dimension == 8
        assert s.radius == SECTION_RADIUS
        assert np.max(np.abs(s.entries - np.eye(8))) < 1e-12

    def test_rotation_is_diagonal(self, cfg):
        theta = 1.1
        w = WcoSymbols(Const(1.0), Moebius(rotation_map(theta)))
        s = finite_section(w, 8, cfg)
        expected = np.diag(np.exp(1j * theta * np.arange(8)))
        assert np.max(np.abs(s.entries - expected)) < 1e-11

    def test_shift_weight(self, cfg):
        # F = z, phi = z sends z^k to z^(k+1): ones on the subdiagonal
        w = WcoSymbols(IDENTITY, IDENTITY)
        s = finite_section(w, 6, cfg)
        expected = np.eye(6, k=-1)
        assert np.max(np.abs(s.entries - expected)) < 1e-12

    def test_linear_composition_closed_form(self, cfg):
        # phi = c z maps z^k to c^k z^k, so entry (j, k) is c^k F_(j-k)
        F = Poly((1.0, 0.5, 0.25j))
        c = 0.3 + 0.2j
        w = WcoSymbols(F, Poly((0.0, c)))
        N = 8
        s = finite_section(w, N, cfg)
        coeffs = np.zeros(N, dtype=complex)
        coeffs[:3] = (1.0, 0.5, 0.25j)
        expected = np.zeros((N, N), dtype=complex)
        for k in range(N):
            for j in range(k, N):
                expected[j, k] = c ** k * coeffs[j - k]
        assert np.max(np.abs(s.entries - expected)) < 1e-11

    def test_condition_number_identity(self, cfg):
        w = WcoSymbols(Const(1.0), IDENTITY)
        s = finite_section(w, 8, cfg)
        assert condition_number(s) == pytest.approx(1.0, rel=1e-10)

    def test_condition_number_scales(self, cfg):
        w = WcoSymbols(Const(3.0), IDENTITY)
        s = finite_section(w, 8, cfg)
        # scalar multiple of the identity is perfectly conditioned
        assert condition_number(s) == pytest.approx(1.0, rel=1e-10)

    def test_singular_section_raises(self):
        entries = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        s = FiniteSection(2, entries, SECTION_RADIUS)
        with pytest.raises(SingularMatrix):
            condition_number(s)

    def test_condition_number_dimension_guard(self):
        s = FiniteSection(1, np.array([[1.0]], dtype=complex), SECTION_RADIUS)
        with pytest.raises(ParameterError):
            condition_number(s)


class TestIsometryDefect:
    def test_empty_family(self, cfg):
        w = WcoSymbols(Const(1.0), IDENTITY)
        with pytest.raises(ParameterError):
            isometry_defect(w, parse_space("hardy:2"), (), cfg)

    def test_zero_member(self, cfg):
        w = WcoSymbols(Const(1.0), IDENTITY)
        with pytest.raises(DegenerateInput):
            isometry_defect(w, parse_space("hardy:2"), (Const(0.0),), cfg)

    def test_rotation_on_hardy(self, cfg):
        w = WcoSymbols(Const(1.0), Moebius(rotation_map(0.9)))
        d = isometry_defect(w, parse_space("hardy:2"), seeded_polys(5, seed=3), cfg)
        assert d < 1e-10

    def test_scaling_on_hardy(self, cfg):
        w = WcoSymbols(Const(2.0), IDENTITY)
        d = isometry_defect(w, parse_space("hardy:2"), (IDENTITY,), cfg)
        assert d == pytest.approx(1.0, rel=1e-12)

    def test_unimodular_rotation_on_bloch(self, cfg):
        lam = np.exp(0.4j)
        w = WcoSymbols(Const(lam), Moebius(rotation_map(-0.4)))
        d = isometry_defect(w, parse_space("bloch:1"), default_probe_family()[:12], cfg)
        assert d < 1e-9


class TestFamilies:
    def test_monomial(self):
        assert monomial(0).coeffs == (1.0,)
        assert monomial(3).coeffs == (0.0, 0.0, 0.0, 1.0)
        with pytest.raises(ParameterError):
            monomial(-1)

    def test_random_polynomials_deterministic(self):
        a = random_polynomials(6, seed=42)
        b = random_polynomials(6, seed=42)
        assert all(x.coeffs == y.coeffs for x, y in zip(a, b))
        c = random_polynomials(6, seed=43)
        assert any(x.coeffs != y.coeffs for x, y in zip(a, c))

    def test_random_polynomials_shape(self):
        for f in random_polynomials(20, seed=DEFAULT_SEED, max_degree=7):
            assert 3 <= len(f.coeffs) <= 8
            assert max(abs(c) for c in f.coeffs) <= 1.0

    def test_matches_conftest_recipe(self):
        ours = seeded_polys(4, seed=DEFAULT_SEED)
        theirs = random_polynomials(4)
        assert all(x.coeffs == y.coeffs for x, y in zip(ours, theirs))

    def test_default_probe_family(self):
        fam = default_probe_family()
        assert len(fam) == 47
        assert fam[0].coeffs == (1.0,)
        assert fam[8].coeffs == (0.0,) * 8 + (1.0,)
        # the eight trailing probes are 1 + lambda z with unimodular lambda
        for f in fam[-8:]:
            assert len(f.coeffs) == 2
            assert abs(f.coeffs[0] - 1.0) < 1e-15
            assert abs(abs(f.coeffs[1]) - 1.0) < 1e-15
        again = default_probe_family()
        assert all(x.coeffs == y.coeffs for x, y in zip(fam, again))
