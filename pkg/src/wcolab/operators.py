"""Weighted composition operators and their finite-dimensional evidence.

An operator is a pair of symbols (F, phi) acting by f -> F * (f o phi).
Besides exact application as an expression tree, this module builds
truncated coefficient matrices and measures how far an operator is from
being an isometry on a family of test functions.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .analytic_core import AnalyticExpr, Compose, Mul, Poly, R_MAX
from .errors import DegenerateInput, DomainError, ParameterError, SingularMatrix
from .quadrature import GridConfig, taylor_coefficients, unit_circle
from .spaces import SpaceSpec, norm

DEFAULT_SEED = 0x5EED

# Finite sections extract coefficients on this circle; at dimension 32
# the rescaling factor r^-k stays comfortably conditioned.
SECTION_RADIUS = 0.5


@dataclasses.dataclass(frozen=True)
class WcoSymbols:
    """Symbols of a weighted composition operator.

    phi must map the disk into itself on the sampled grid; F must not be
    identically zero and phi must not be constant, which would make the
    operator degenerate.
    """

    F: AnalyticExpr
    phi: AnalyticExpr

    def __post_init__(self):
        circle = R_MAX * unit_circle(256)
        phi_vals = self.phi.jet(circle).f
        if float(np.max(np.abs(phi_vals))) >= 1.0:
            raise DomainError("phi is not a self-map of the disk on the validation circle")
        if float(np.max(np.abs(phi_vals - phi_vals[0]))) < 1e-15:
            raise DegenerateInput("phi is constant on the validation circle")
        f_vals = self.F.jet(circle).f
        if float(np.max(np.abs(f_vals))) < 1e-15:
            raise DegenerateInput("F vanishes identically on the validation circle")


def apply(w: WcoSymbols, f: AnalyticExpr) -> AnalyticExpr:
    """The image F * (f o phi), exact as an expression tree."""
    return Mul(w.F, Compose(f, w.phi))


@dataclasses.dataclass(frozen=True, eq=False)
class FiniteSection:
    """Leading N x N block of the coefficient matrix of an operator.

    Column k holds the first N Taylor coefficients of the image of z^k.
    """

    dimension: int
    entries: np.ndarray
    radius: float


def monomial(k: int) -> Poly:
    """The monomial z^k."""
    if k < 0:
        raise ParameterError(f"monomial degree must be nonnegative, got {k}")
    return Poly((0.0,) * k + (1.0,))


def finite_section(w: WcoSymbols, N: int, cfg: GridConfig) -> FiniteSection:
    if not 2 <= N <= cfg.n_theta // 2:
        raise ParameterError(f"section dimension must lie in [2, n_theta/2], got {N}")
    entries = np.empty((N, N), dtype=complex)
    for k in range(N):
        image = apply(w, monomial(k))
        entries[:, k] = taylor_coefficients(image, N, SECTION_RADIUS, cfg)
    return FiniteSection(N, entries, SECTION_RADIUS)


def condition_number(s: FiniteSection) -> float:
    """Ratio of extreme singular values of the section matrix.

    Heuristic evidence only: growth across dimensions suggests the full
    operator is not boundedly invertible, but no verdict rests on it.
    """
    if s.dimension < 2:
        raise ParameterError("condition number needs dimension at least 2")
    singular = np.linalg.svd(s.entries, compute_uv=False)
    if singular[-1] < 1e-300:
        raise SingularMatrix("smallest singular value below 1e-300")
    return float(singular[0] / singular[-1])


def isometry_defect(w: WcoSymbols, space: SpaceSpec, family, cfg: GridConfig) -> float:
    """max over the family of | ||W f|| / ||f|| - 1 |."""
    family = tuple(family)
    if not family:
        raise ParameterError("isometry defect needs a nonempty family")
    worst = 0.0
    for f in family:
        denom = norm(space, f, cfg).total
        if denom < 1e-14:
            raise DegenerateInput("family member has numerically zero norm")
        ratio = norm(space, apply(w, f), cfg).total / denom
        worst = max(worst, abs(ratio - 1.0))
    return worst


def random_polynomials(count: int, seed: int = DEFAULT_SEED, max_degree: int = 12) -> tuple:
    """Reproducible polynomials with coefficients in the unit polydisk."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        degree = int(rng.integers(2, max_degree + 1))
        radius = np.sqrt(rng.uniform(0.0, 1.0, degree + 1))
        angle = rng.uniform(0.0, 2.0 * np.pi, degree + 1)
        out.append(Poly(tuple(radius * np.exp(1j * angle))))
    return tuple(out)


def default_probe_family(seed: int = DEFAULT_SEED) -> tuple:
    """Monomials, seeded random polynomials, and the 1 + lambda z probes.

    The probes with unimodular lambda are the instrument that separates
    isometric from non-isometric operators on the decomposed spaces, so
    they are always part of the defect family.
    """
    monomials = tuple(monomial(k) for k in range(9))
    randoms = random_polynomials(30, seed)
    lambdas = np.exp(2j * np.pi * np.arange(8) / 8)
    probes = tuple(Poly((1.0, lam)) for lam in lambdas)
    return monomials + randoms + probes
