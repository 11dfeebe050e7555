"""Norm and seminorm evaluators for the disk function space families.

Families: H-infinity, Hardy, weighted Bergman, mixed-norm, growth,
Bloch-type, logarithmic Bloch, BMOA (star norm), weighted Besov, and the
minimal Besov space B1.  Where the norm splits as |f(0)| + p(f) with a
translation-invariant seminorm p, the breakdown is exposed.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import scipy.integrate

from .analytic_core import AnalyticExpr
from .errors import ParameterError, ParseError, UnsupportedSpace
from .quadrature import (
    GridConfig,
    gauss01,
    integral_mean,
    area_integral,
    refined_modulus_sup,
    scan_radii,
    unit_circle,
    weighted_radial_integral,
)

_FAMILY_PARAMS = {
    "hinf": (),
    "hardy": ("p",),
    "bergman": ("p", "alpha"),
    "mixed": ("p", "q", "alpha"),
    "growth": ("gamma",),
    "bloch": ("beta",),
    "logbloch": ("gamma",),
    "bmoa": (),
    "besov": ("p", "alpha"),
    "b1": (),
}

_A6_FAMILIES = frozenset({"bloch", "logbloch", "bmoa", "besov", "b1"})

# BMOA star seminorm scans these moduli of the automorphism parameter a;
# the argument of a is maximized continuously.
_BMOA_A_RADII = (0.0, 0.3, 0.6, 0.8, 0.9, 0.95)


@dataclasses.dataclass(frozen=True)
class SpaceSpec:
    """One space family with its parameters.

    Unused parameters stay None.  p and q live in [1, inf) with q = inf
    admitted for the mixed family; alpha > -1; beta > 0; gamma > 0 for
    growth and any real for logbloch.
    """

    family: str
    p: float | None = None
    q: float | None = None
    alpha: float | None = None
    gamma: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILY_PARAMS:
            raise ParameterError(f"unknown space family {self.family!r}")
        wanted = _FAMILY_PARAMS[self.family]
        for name in ("p", "q", "alpha", "gamma", "beta"):
            val = getattr(self, name)
            if name in wanted:
                if val is None:
                    raise ParameterError(f"{self.family} requires parameter {name}")
                object.__setattr__(self, name, float(val))
            elif val is not None:
                raise ParameterError(f"{self.family} takes no parameter {name}")
        if self.p is not None and not (self.p >= 1.0 and np.isfinite(self.p)):
            raise ParameterError(f"p must lie in [1, inf), got {self.p}")
        if self.q is not None:
            if self.q != np.inf and self.q < 1.0:
                raise ParameterError(f"q must lie in [1, inf], got {self.q}")
        if self.alpha is not None and not (self.alpha > -1.0 and np.isfinite(self.alpha)):
            raise ParameterError(f"alpha must exceed -1, got {self.alpha}")
        if self.beta is not None and not (0.0 < self.beta < np.inf):
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if self.gamma is not None:
            if not np.isfinite(self.gamma):
                raise ParameterError(f"gamma must be finite, got {self.gamma}")
            if self.family == "growth" and self.gamma <= 0.0:
                raise ParameterError(f"growth exponent must be positive, got {self.gamma}")

    @property
    def has_a6_form(self) -> bool:
        return self.family in _A6_FAMILIES

    def __str__(self):
        params = [getattr(self, name) for name in _FAMILY_PARAMS[self.family]]
        if not params:
            return self.family
        return self.family + ":" + ",".join(_fmt_param(v) for v in params)


def _fmt_param(v: float) -> str:
    if v == np.inf:
        return "inf"
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def parse_space(s: str) -> SpaceSpec:
    """Parse a space string like `bloch:1` or `mixed:2,inf,0.5`."""
    text = s.strip()
    family, _, tail = text.partition(":")
    family = family.strip().lower()
    if family not in _FAMILY_PARAMS:
        raise ParseError(f"unknown space family {family!r}")
    wanted = _FAMILY_PARAMS[family]
    if not tail.strip():
        params = []
    else:
        params = [piece.strip() for piece in tail.split(",")]
    if len(params) != len(wanted):
        raise ParseError(
            f"space {family!r} takes {len(wanted)} parameter(s) {wanted}, got {len(params)}"
        )
    values = {}
    for name, piece in zip(wanted, params):
        try:
            values[name] = float(piece)
        except ValueError:
            raise ParseError(f"bad numeric parameter {piece!r} in space {s!r}") from None
    try:
        return SpaceSpec(family, **values)
    except ParameterError as exc:
        raise ParseError(str(exc)) from None


@dataclasses.dataclass(frozen=True)
class NormBreakdown:
    """Total norm with its point and seminorm parts.

    For the five families with the |f(0)| + p(f) decomposition the total
    is exactly point_part + seminorm_part; for the rest the whole value
    sits in seminorm_part and point_part is 0.
    """

    total: float
    point_part: float
    seminorm_part: float
    has_a6_form: bool


def _jet_pair(f: AnalyticExpr, order: int):
    if order == 0:
        def pair(z):
            j = f.jet(z)
            return j.f, j.df
    else:
        def pair(z):
            j = f.jet(z)
            return j.df, j.d2f
    return pair


def _flat_weight():
    return (lambda t: np.ones_like(np.asarray(t, dtype=float))), (lambda t: 0.0 * np.asarray(t, dtype=float))


def _power_weight(beta: float):
    return (lambda t: (1.0 - t) ** beta), (lambda t: -beta / (1.0 - t))


def _logbloch_weight(gamma: float):
    def omega(t):
        return (1.0 - t) * np.log(2.0 / (1.0 - t)) ** gamma

    def dlog(t):
        return -1.0 / (1.0 - t) + gamma / ((1.0 - t) * np.log(2.0 / (1.0 - t)))

    return omega, dlog


def _power_mean_profile(f: AnalyticExpr, p: float, cfg: GridConfig, order: int):
    """Callable radii -> M_p(r)^p for f (order 0) or f' (order 1)."""

    def h(radii):
        z = np.asarray(radii)[:, None] * unit_circle(cfg.n_theta)[None, :]
        jets = f.jet(z)
        vals = jets.f if order == 0 else jets.df
        return np.mean(np.abs(vals) ** p, axis=1)

    return h


def _golden_max_scalar(fun, lo: float, hi: float, iters: int = 60) -> float:
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = fun(c), fun(d)
    best = max(fc, fd)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = fun(d)
        best = max(best, fc, fd)
    return best


def _mixed_sup_norm(f: AnalyticExpr, p: float, alpha: float, cfg: GridConfig) -> float:
    radii = scan_radii(cfg)
    z = radii[:, None] * unit_circle(cfg.n_theta)[None, :]
    means = np.mean(np.abs(f.jet(z).f) ** p, axis=1) ** (1.0 / p)
    vals = (1.0 - radii ** 2) ** alpha * means

    def at(r):
        return float((1.0 - r * r) ** alpha * integral_mean(f, p, r, cfg))

    i = int(np.argmax(vals))
    lo = radii[i - 1] if i > 0 else 0.0
    hi = radii[i + 1] if i + 1 < len(radii) else cfg.r_max
    return max(float(np.max(vals)), _golden_max_scalar(at, lo, hi))


def _bmoa_seminorm(f: AnalyticExpr, cfg: GridConfig) -> float:
    """Star seminorm: sup over a of the weighted area L2 norm of f'.

    The area integral is evaluated spectrally.  Writing the angular
    expansion D(r e^{i t}) = sum_m d_m(r) e^{i m t} of D = |f'|^2 and
    expanding the Poisson-type kernel of 1 - |phi_a|^2 in powers of
    |a| r turns the integral into a Fourier series in arg(a), which is
    maximized continuously; |a| runs over a fixed ladder of moduli.
    """
    t, w = gauss01(cfg.n_radial)
    radii = np.sqrt(t)
    z = radii[:, None] * unit_circle(cfg.n_theta)[None, :]
    D = np.abs(f.jet(z).df) ** 2
    coeffs = np.fft.fft(D, axis=1) / cfg.n_theta
    m_max = cfg.n_theta // 2 - 1
    ms = np.arange(1, m_max + 1)
    best = 0.0
    for mod_a in _BMOA_A_RADII:
        # radial factor of the integrand after the angular average
        pref = w * (1.0 - mod_a ** 2) * (1.0 - t) / (1.0 - (mod_a * radii) ** 2)
        s0 = float(pref @ coeffs[:, 0].real)
        if mod_a == 0.0:
            best = max(best, s0)
            continue
        powers = (mod_a * radii)[:, None] ** ms[None, :]
        s = (pref[:, None] * powers * coeffs[:, 1 : m_max + 1]).sum(axis=0)
        padded = np.zeros(cfg.n_theta, dtype=complex)
        padded[0] = s0
        padded[1 : m_max + 1] = 2.0 * s
        profile = np.fft.ifft(padded).real * cfg.n_theta
        j = int(np.argmax(profile))
        beta0 = 2.0 * np.pi * j / cfg.n_theta
        width = 2.0 * np.pi / cfg.n_theta

        def at(beta):
            return s0 + 2.0 * float((s * np.exp(1j * ms * beta)).sum().real)

        best = max(best, float(np.max(profile)), _golden_max_scalar(at, beta0 - width, beta0 + width))
    return float(np.sqrt(max(best, 0.0)))


def _b1_area_cfg(cfg: GridConfig) -> GridConfig:
    # |f''| is not a trigonometric polynomial, so the angular rule sees
    # soft kinks at zeros of f''; four times the angular nodes keeps the
    # aliasing error well under the isometry tolerances.
    return dataclasses.replace(cfg, n_theta=cfg.n_theta * 4)


def _b1_seminorm_part(f: AnalyticExpr, cfg: GridConfig) -> float:
    return area_integral(lambda z: np.abs(f.jet(z).d2f), _b1_area_cfg(cfg))


def norm(space: SpaceSpec, f: AnalyticExpr, cfg: GridConfig) -> NormBreakdown:
    """Norm of f in the given space, with its decomposition when present."""
    fam = space.family
    if fam in _A6_FAMILIES:
        origin = f.jet(0.0)
        if fam == "b1":
            point = abs(origin.f) + abs(origin.df)
            semi = _b1_seminorm_part(f, cfg)
        else:
            point = abs(origin.f)
            semi = _plain_seminorm(space, f, cfg)
        return NormBreakdown(point + semi, point, semi, True)
    if fam == "hinf":
        total = refined_modulus_sup(_jet_pair(f, 0), *_flat_weight(), cfg)
    elif fam == "hardy":
        total = integral_mean(f, space.p, cfg.sup_radii[-1], cfg)
    elif fam == "bergman":
        h = _power_mean_profile(f, space.p, cfg, 0)
        total = weighted_radial_integral(h, space.alpha, cfg) ** (1.0 / space.p)
    elif fam == "mixed":
        if space.q == np.inf:
            total = _mixed_sup_norm(f, space.p, space.alpha, cfg)
        else:
            hp = _power_mean_profile(f, space.p, cfg, 0)
            hq = lambda radii: hp(radii) ** (space.q / space.p)
            total = weighted_radial_integral(hq, space.alpha * space.q - 1.0, cfg) ** (1.0 / space.q)
    elif fam == "growth":
        total = refined_modulus_sup(_jet_pair(f, 0), *_power_weight(space.gamma), cfg)
    else:
        raise ParameterError(f"unknown space family {fam!r}")
    return NormBreakdown(total, 0.0, total, False)


def _plain_seminorm(space: SpaceSpec, f: AnalyticExpr, cfg: GridConfig) -> float:
    fam = space.family
    if fam == "bloch":
        return refined_modulus_sup(_jet_pair(f, 1), *_power_weight(space.beta), cfg)
    if fam == "logbloch":
        return refined_modulus_sup(_jet_pair(f, 1), *_logbloch_weight(space.gamma), cfg)
    if fam == "bmoa":
        return _bmoa_seminorm(f, cfg)
    if fam == "besov":
        h = _power_mean_profile(f, space.p, cfg, 1)
        return weighted_radial_integral(h, space.alpha, cfg) ** (1.0 / space.p)
    raise UnsupportedSpace(f"{fam} has no plain seminorm")


def seminorm(space: SpaceSpec, f: AnalyticExpr, cfg: GridConfig) -> float:
    """The translation-invariant seminorm p(f) for the decomposed families.

    For B1 this is |f'(0)| plus the area integral of |f''|, which drops
    the |f(0)| term only; p(f + C) = p(f) holds exactly for all five
    families.
    """
    if not space.has_a6_form:
        raise UnsupportedSpace(f"{space.family} has no |f(0)| + p(f) decomposition")
    if space.family == "b1":
        return abs(f.jet(0.0).df) + _b1_seminorm_part(f, cfg)
    return _plain_seminorm(space, f, cfg)


def _increment_integral(rate, r: float) -> float:
    if r <= 0.0:
        return 0.0
    val, _ = scipy.integrate.quad(rate, 0.0, r, limit=200)
    return float(val)


def pointeval_bound(space: SpaceSpec, r: float) -> float:
    """Bound for |f(z) - f(0)| / ||f|| at |z| = r, family by family.

    The point-evaluation estimate used by the first axiom check is then
    1 + this value, since |f(0)| <= ||f|| in every family in scope.
    """
    if not 0.0 <= r < 1.0:
        raise ParameterError(f"radius must lie in [0, 1), got {r}")
    fam = space.family
    if fam == "hinf":
        return 2.0
    if fam == "hardy":
        return (1.0 - r ** 2) ** (-1.0 / space.p)
    if fam == "bergman":
        return (1.0 - r ** 2) ** (-(2.0 + space.alpha) / space.p)
    if fam == "mixed":
        # |f(z)| <= ((rho+r)/(rho-r))^(1/p) M_p(rho) and
        # M_p(rho) <= ||f|| (1-rho^2)^(-alpha); minimize over rho > r.
        rho = r + (1.0 - r) * np.linspace(0.02, 0.98, 400)
        bounds = ((rho + r) / (rho - r)) ** (1.0 / space.p) * (1.0 - rho ** 2) ** (-space.alpha)
        return float(np.min(bounds))
    if fam == "growth":
        return (1.0 - r ** 2) ** (-space.gamma)
    if fam == "bloch":
        if space.beta == 1.0:
            return 0.5 * np.log((1.0 + r) / (1.0 - r))
        return _increment_integral(lambda s: (1.0 - s ** 2) ** (-space.beta), r)
    if fam == "logbloch":
        g = space.gamma
        return _increment_integral(
            lambda s: 1.0 / ((1.0 - s ** 2) * np.log(2.0 / (1.0 - s ** 2)) ** g), r
        )
    if fam == "bmoa":
        # |f'(w)| <= 3 sqrt(2) p(f) / (1 - |w|) via the sub-mean-value
        # property of |f'|^2 on a disk where 1 - |phi_w|^2 >= 8/9
        return 3.0 * np.sqrt(2.0) * np.log(1.0 / (1.0 - r))
    if fam == "besov":
        return _increment_integral(
            lambda s: (1.0 - s ** 2) ** (-(2.0 + space.alpha) / space.p), r
        )
    if fam == "b1":
        # |f''(w)| <= ||f|| / (1 - |w|)^2, integrated twice from 0
        return float(-np.log1p(-r))
    raise ParameterError(f"unknown space family {fam!r}")
