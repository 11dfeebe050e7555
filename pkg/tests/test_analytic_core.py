import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcolab import (
    Add,
    Compose,
    Const,
    ContourZero,
    DomainError,
    Moebius,
    MoebiusMap,
    Mul,
    ParameterError,
    Poly,
    Pow,
    R_MAX,
    Recip,
    BranchError,
    compose_moebius,
    eval_jet,
    moebius_inverse,
    rotation_map,
    winding_number,
)

from conftest import seeded_polys


def fd_jet(f, z, h=1e-5):
    """Finite-difference derivative pair; d2f from differences of df.

    Analytic derivatives are direction-independent, so a real step
    suffices and keeps the probes inside the disk.
    """
    df = (f.jet(z + h).f - f.jet(z - h).f) / (2.0 * h)
    d2f = (f.jet(z + h).df - f.jet(z - h).df) / (2.0 * h)
    return df, d2f


def assert_jets_close(f, z, rtol=1e-6):
    jet = f.jet(z)
    df, d2f = fd_jet(f, z)
    scale1 = max(abs(jet.df), 1.0)
    scale2 = max(abs(jet.d2f), 1.0)
    assert abs(jet.df - df) / scale1 < rtol
    assert abs(jet.d2f - d2f) / scale2 < rtol


class TestJetRules:
    def test_poly_jet_closed_form(self):
        f = Poly((1.0, -2.0, 3.0))
        jet = f.jet(0.5 + 0.1j)
        z = 0.5 + 0.1j
        assert jet.f == pytest.approx(1 - 2 * z + 3 * z * z)
        assert jet.df == pytest.approx(-2 + 6 * z)
        assert jet.d2f == pytest.approx(6.0)

    def test_product_rule(self):
        f = Poly((1.0, 1.0))
        g = Poly((0.0, 0.0, 1.0))
        z = 0.3 - 0.4j
        left = Mul(f, g).jet(z)
        jf, jg = f.jet(z), g.jet(z)
        assert left.df == pytest.approx(jf.df * jg.f + jf.f * jg.df)
        assert left.d2f == pytest.approx(jf.d2f * jg.f + 2 * jf.df * jg.df + jf.f * jg.d2f)

    def test_fd_agreement_battery(self):
        rng = np.random.default_rng(7)
        m = Moebius(MoebiusMap(0.4 - 0.2j, 1.0))
        exprs = [
            Poly((0.5, 1.0, -0.25j)),
            m,
            Compose(Poly((0.0, 0.0, 1.0)), m),
            Recip(Poly((2.0, 1.0))),
            Pow(Poly((2.0, 0.5)), 1.5),
            Mul(Poly((1.0, 2.0)), Add(Const(1.0), Poly((0.0, 1.0)))),
        ]
        for f in exprs:
            for _ in range(6):
                z = 0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
                assert_jets_close(f, complex(z))

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False), min_size=1, max_size=8),
        st.complex_numbers(max_magnitude=0.85, allow_nan=False, allow_infinity=False),
    )
    def test_add_mul_consistency(self, coeffs, z):
        f = Poly(tuple(coeffs))
        g = Poly((0.5, -0.25))
        s = Add(f, g).jet(z)
        p = Mul(f, g).jet(z)
        jf, jg = f.jet(z), g.jet(z)
        assert s.f == pytest.approx(jf.f + jg.f)
        assert s.df == pytest.approx(jf.df + jg.df)
        assert p.f == pytest.approx(jf.f * jg.f)

    def test_vectorized_matches_scalar(self):
        f = Compose(Recip(Poly((2.0, 1.0))), Moebius(MoebiusMap(0.3, 1.0)))
        pts = 0.7 * np.exp(2j * np.pi * np.linspace(0, 1, 17, endpoint=False))
        block = f.jet(pts)
        for k, z in enumerate(pts):
            single = f.jet(complex(z))
            assert single.f == pytest.approx(block.f[k])
            assert single.df == pytest.approx(block.df[k])
            assert single.d2f == pytest.approx(block.d2f[k])


class TestMoebius:
    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            MoebiusMap(1.2, 1.0)
        with pytest.raises(ParameterError):
            MoebiusMap(0.5, 2.0)

    def test_lam_normalized(self):
        m = MoebiusMap(0.0, 1.0 + 1e-10j)
        assert abs(abs(m.lam) - 1.0) < 1e-15

    def test_involution(self):
        m = MoebiusMap(0.4 + 0.3j, 1.0)
        z = 0.2 - 0.6j
        assert m(m(z)) == pytest.approx(z)

    def test_inverse(self):
        m = MoebiusMap(0.5 - 0.2j, np.exp(0.8j))
        inv = moebius_inverse(m)
        for z in (0.1, -0.3 + 0.4j, 0.7j):
            assert inv(m(z)) == pytest.approx(z)
            assert m(inv(z)) == pytest.approx(z)

    def test_composition_matches_pointwise(self):
        m1 = MoebiusMap(0.3, np.exp(0.5j))
        m2 = MoebiusMap(-0.2 + 0.4j, np.exp(-1.1j))
        comp = compose_moebius(m1, m2)
        for z in (0.0, 0.5, -0.4 + 0.1j):
            assert comp(z) == pytest.approx(m1(m2(z)))

    def test_rotation_map(self):
        rot = rotation_map(0.7)
        assert rot(0.5) == pytest.approx(0.5 * np.exp(0.7j))
        assert rot.a == 0

    def test_jet_closed_form_vs_fd(self):
        m = Moebius(MoebiusMap(0.35 + 0.2j, np.exp(0.3j)))
        for z in (0.1, 0.4 - 0.5j, -0.8):
            assert_jets_close(m, complex(z))


class TestDomainValidation:
    def test_outside_disk_rejected(self):
        f = Poly((0.0, 1.0))
        with pytest.raises(DomainError):
            f.jet(1.0)
        with pytest.raises(DomainError):
            f.jet(np.array([0.1, 1.3j]))

    def test_nonfinite_rejected(self):
        with pytest.raises(DomainError):
            Poly((1.0,)).jet(np.nan + 0j)

    def test_compose_requires_self_map(self):
        with pytest.raises(DomainError):
            Compose(Poly((1.0,)), Poly((0.0, 2.0)))

    def test_recip_rejects_interior_zero(self):
        with pytest.raises(DomainError):
            Recip(Poly((0.0, 1.0)))
        with pytest.raises(DomainError):
            Recip(Poly((-0.25, 0.0, 1.0)))

    def test_recip_jet_closed_form(self):
        f = Recip(Poly((2.0, 1.0)))
        z = 0.3 + 0.2j
        jet = f.jet(z)
        assert jet.f == pytest.approx(1.0 / (2.0 + z))
        assert jet.df == pytest.approx(-1.0 / (2.0 + z) ** 2)
        assert jet.d2f == pytest.approx(2.0 / (2.0 + z) ** 3)

    def test_pow_branch_cut(self):
        f = Pow(Const(-1.0 + 0.0j), 0.5)
        with pytest.raises(BranchError):
            f.jet(0.1)

    def test_pow_matches_integer_product(self):
        u = Poly((2.0, 0.3, 0.1))
        p2 = Pow(u, 2.0)
        m2 = Mul(u, u)
        z = 0.4 - 0.3j
        assert p2.jet(z).f == pytest.approx(m2.jet(z).f)
        assert p2.jet(z).df == pytest.approx(m2.jet(z).df)
        assert p2.jet(z).d2f == pytest.approx(m2.jet(z).d2f)


class TestWinding:
    def test_counts_constructed_roots(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            n = int(rng.integers(1, 6))
            roots = rng.uniform(0.1, 1.5, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
            # keep roots away from the test contour
            roots = np.array([r * 1.15 if 0.75 < abs(r) < 0.85 else r for r in roots])
            coeffs = np.poly(roots)[::-1]
            f = Poly(tuple(coeffs))
            inside = int(np.sum(np.abs(roots) < 0.8))
            assert winding_number(f, 0.8) == inside

    def test_contour_zero_raises(self):
        f = Poly((-0.5, 1.0))
        with pytest.raises(ContourZero):
            winding_number(f, 0.5)

    def test_radius_validation(self):
        f = Poly((1.0,))
        with pytest.raises(ParameterError):
            winding_number(f, 0.0)
        with pytest.raises(ParameterError):
            winding_number(f, R_MAX * 1.01)

    def test_eval_jet_helper(self):
        jet = eval_jet(Poly((1.0, 1.0)), 0.25)
        assert jet.f == pytest.approx(1.25)


def test_seeded_polys_match_package_recipe():
    from wcolab import random_polynomials

    ours = seeded_polys(5, 0x5EED)
    theirs = random_polynomials(5)
    for a, b in zip(ours, theirs):
        assert a.coeffs == b.coeffs
