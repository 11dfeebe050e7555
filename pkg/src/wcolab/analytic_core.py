"""Expression trees for analytic functions on the unit disk.

Functions are represented structurally (polynomials, Moebius maps, sums,
products, compositions, reciprocals, real powers) and differentiated by
exact jet arithmetic to second order.  Trees are immutable; evaluation is
vectorized over numpy arrays of points.
"""

from __future__ import annotations

import dataclasses
import functools

import numpy as np

from .errors import BranchError, ContourZero, DomainError, ParameterError

# Closed validation disk: construction checks sample the circle of this
# radius, evaluation only requires |z| < 1 strictly.
R_MAX = 1.0 - 1e-6

# Circle samples used by cheap construction-time checks.
_VALIDATION_SAMPLES = 256

# Moduli below this are treated as zeros of a denominator.
_ZERO_THRESHOLD = 1e-9


@dataclasses.dataclass(frozen=True)
class Jet2:
    """Value and first two derivatives of an analytic function at a point.

    The fields are complex scalars or numpy arrays (one jet per point).
    Addition and multiplication follow the sum and product rules, so jets
    compose like the functions they came from.
    """

    f: complex
    df: complex
    d2f: complex

    def __add__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.f + other.f, self.df + other.df, self.d2f + other.d2f)

    def __mul__(self, other: "Jet2") -> "Jet2":
        return Jet2(
            self.f * other.f,
            self.df * other.f + self.f * other.df,
            self.d2f * other.f + 2.0 * self.df * other.df + self.f * other.d2f,
        )

    def chain(self, inner: "Jet2") -> "Jet2":
        """Jet of outer∘inner where self is the outer jet at inner.f."""
        return Jet2(
            self.f,
            self.df * inner.df,
            self.d2f * inner.df ** 2 + self.df * inner.d2f,
        )


def _require_finite(c: complex, what: str) -> complex:
    c = complex(c)
    if not (np.isfinite(c.real) and np.isfinite(c.imag)):
        raise ParameterError(f"{what} must have finite real and imaginary parts")
    return c


@dataclasses.dataclass(frozen=True)
class MoebiusMap:
    """The disk automorphism z ↦ lam·(a − z)/(1 − conj(a)·z).

    Requires |a| < 1 and |lam| = 1; every automorphism of the disk has
    this shape.  With lam = 1 the map is the standard involution that
    swaps 0 and a.
    """

    a: complex
    lam: complex = 1.0 + 0.0j

    def __post_init__(self):
        a = _require_finite(self.a, "Moebius parameter a")
        lam = _require_finite(self.lam, "Moebius parameter lam")
        if abs(a) >= 1.0:
            raise ParameterError(f"Moebius parameter a must satisfy |a| < 1, got |a| = {abs(a)}")
        if abs(abs(lam) - 1.0) > 1e-9:
            raise ParameterError(f"Moebius parameter lam must be unimodular, got |lam| = {abs(lam)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "lam", lam / abs(lam))

    def __call__(self, z):
        return self.lam * (self.a - z) / (1.0 - np.conj(self.a) * z)

    def jet(self, z) -> Jet2:
        """Closed-form 2-jet of the map at z (scalar or array)."""
        d = 1.0 - np.conj(self.a) * z
        top = self.lam * (abs(self.a) ** 2 - 1.0)
        return Jet2(self(z), top / d ** 2, 2.0 * np.conj(self.a) * top / d ** 3)


def moebius_inverse(m: MoebiusMap) -> MoebiusMap:
    """Inverse automorphism, again in (a, lam) form.

    Solving w = lam·(a − z)/(1 − conj(a)·z) for z gives parameters
    a' = lam·a and lam' = conj(lam).  In particular a map with lam = 1
    is its own inverse.
    """
    return MoebiusMap(m.lam * m.a, np.conj(m.lam))


def compose_moebius(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    """The automorphism m1∘m2 with parameters recovered in closed form.

    Each map corresponds to the matrix [[−lam, lam·a], [−conj(a), 1]]
    acting by fractions; composition is the matrix product.
    """
    mat1 = np.array([[-m1.lam, m1.lam * m1.a], [-np.conj(m1.a), 1.0]])
    mat2 = np.array([[-m2.lam, m2.lam * m2.a], [-np.conj(m2.a), 1.0]])
    prod = mat1 @ mat2
    # Normalize so the bottom-right entry is 1, then read off parameters.
    top_left, _ = prod[0]
    bot_left, bot_right = prod[1]
    lam = -top_left / bot_right
    a = -np.conj(bot_left / bot_right)
    return MoebiusMap(complex(a), complex(lam))


def rotation_map(theta: float) -> MoebiusMap:
    """The rotation z ↦ e^{iθ}·z encoded as a MoebiusMap (a = 0, lam = −e^{iθ})."""
    return MoebiusMap(0.0, -np.exp(1j * theta))


IDENTITY_MAP = MoebiusMap(0.0, -1.0)


class AnalyticExpr:
    """Base class of expression-tree nodes.

    Subclasses implement _jet on numpy arrays of points.  Public
    evaluation goes through jet / __call__, which validate the points
    and convert scalars.
    """

    def _jet(self, z: np.ndarray) -> Jet2:
        raise NotImplementedError

    def jet(self, z) -> Jet2:
        """2-jet (f, f', f'') at z; z a complex scalar or array, |z| < 1."""
        arr = np.asarray(z, dtype=complex)
        if arr.size:
            if not np.all(np.isfinite(arr)):
                raise DomainError("evaluation point is not finite")
            if np.max(np.abs(arr)) >= 1.0:
                raise DomainError("evaluation point lies outside the open unit disk")
        out = self._jet(arr)
        if arr.ndim == 0:
            return Jet2(complex(out.f), complex(out.df), complex(out.d2f))
        return out

    def __call__(self, z):
        return self.jet(z).f

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Const(other)
        return Add(self, other)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Const(other)
        return Mul(self, other)

    __rmul__ = __mul__


@dataclasses.dataclass(frozen=True)
class Const(AnalyticExpr):
    """Constant function."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", _require_finite(self.value, "Const value"))

    def _jet(self, z):
        zero = np.zeros_like(z)
        return Jet2(np.full_like(z, self.value), zero, zero)


@dataclasses.dataclass(frozen=True)
class Poly(AnalyticExpr):
    """Polynomial c0 + c1 z + ... + cN z^N given by its coefficients."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_require_finite(c, "Poly coefficient") for c in self.coeffs)
        if not cs:
            raise ParameterError("Poly requires at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    def _jet(self, z):
        # Horner recurrences for the value and both derivatives at once.
        f = np.zeros_like(z)
        df = np.zeros_like(z)
        d2f = np.zeros_like(z)
        for c in reversed(self.coeffs):
            d2f = d2f * z + 2.0 * df
            df = df * z + f
            f = f * z + c
        return Jet2(f, df, d2f)


@dataclasses.dataclass(frozen=True)
class Moebius(AnalyticExpr):
    """A MoebiusMap wrapped as an expression node."""

    map: MoebiusMap

    def _jet(self, z):
        return self.map.jet(z)


@dataclasses.dataclass(frozen=True)
class Add(AnalyticExpr):
    left: AnalyticExpr
    right: AnalyticExpr

    def _jet(self, z):
        return self.left._jet(z) + self.right._jet(z)


@dataclasses.dataclass(frozen=True)
class Mul(AnalyticExpr):
    left: AnalyticExpr
    right: AnalyticExpr

    def _jet(self, z):
        return self.left._jet(z) * self.right._jet(z)


@dataclasses.dataclass(frozen=True)
class Compose(AnalyticExpr):
    """outer∘inner; the inner function must map the disk into itself."""

    outer: AnalyticExpr
    inner: AnalyticExpr

    def __post_init__(self):
        vals = self.inner._jet(_validation_circle()).f
        worst = float(np.max(np.abs(vals)))
        if worst >= 1.0:
            raise DomainError(
                f"composition inner function is not a disk self-map on the validation circle (max modulus {worst})"
            )

    def _jet(self, z):
        inner_jet = self.inner._jet(z)
        w = np.asarray(inner_jet.f)
        if w.size and np.max(np.abs(w)) >= 1.0:
            raise DomainError("composition inner value left the unit disk")
        return self.outer._jet(w).chain(inner_jet)


@dataclasses.dataclass(frozen=True)
class Recip(AnalyticExpr):
    """1/inner for inner non-vanishing on the closed grid disk.

    Construction samples the circle of radius R_MAX: the winding number
    there must be 0 (no zeros inside, by the argument principle) and the
    minimum modulus must clear the zero threshold.
    """

    inner: AnalyticExpr

    def __post_init__(self):
        _check_nonvanishing(self.inner, "Recip")

    def _jet(self, z):
        inner_jet = self.inner._jet(z)
        u = inner_jet.f
        if np.min(np.abs(u)) < 1e-14:
            raise DomainError("reciprocal evaluated at a zero of the inner function")
        inv = 1.0 / u
        inv2 = inv * inv
        return Jet2(
            inv,
            -inner_jet.df * inv2,
            (2.0 * inner_jet.df ** 2 - u * inner_jet.d2f) * inv2 * inv,
        )


@dataclasses.dataclass(frozen=True)
class Pow(AnalyticExpr):
    """inner^exponent on the principal branch.

    Valid when inner has no zeros on the closed grid disk and winding
    number 0 around the origin, so a continuous logarithm exists.
    """

    inner: AnalyticExpr
    exponent: float

    def __post_init__(self):
        e = float(self.exponent)
        if not np.isfinite(e):
            raise ParameterError("Pow exponent must be finite")
        object.__setattr__(self, "exponent", e)
        _check_nonvanishing(self.inner, "Pow")

    def _jet(self, z):
        inner_jet = self.inner._jet(z)
        u = np.asarray(inner_jet.f)
        if np.any((u.real <= 0.0) & (u.imag == 0.0)):
            raise BranchError("Pow encountered a value on the branch cut (−∞, 0]")
        alpha = self.exponent
        f = np.exp(alpha * np.log(u))
        s1 = f / u
        s2 = s1 / u
        return Jet2(
            f,
            alpha * s1 * inner_jet.df,
            alpha * (alpha - 1.0) * s2 * inner_jet.df ** 2 + alpha * s1 * inner_jet.d2f,
        )


def eval_jet(e: AnalyticExpr, z) -> Jet2:
    """Evaluate the 2-jet of an expression at a point inside the disk."""
    return e.jet(z)


@functools.lru_cache(maxsize=8)
def _validation_circle(n: int = _VALIDATION_SAMPLES) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(n) / n
    return R_MAX * np.exp(1j * theta)


def _winding_from_values(vals: np.ndarray) -> int:
    """Winding number about 0 of a sampled closed curve by phase unwrapping."""
    phases = np.angle(vals)
    jumps = np.diff(np.concatenate([phases, phases[:1]]))
    jumps = (jumps + np.pi) % (2.0 * np.pi) - np.pi
    return int(np.round(jumps.sum() / (2.0 * np.pi)))


def winding_number(f: AnalyticExpr, r: float, n: int = _VALIDATION_SAMPLES) -> int:
    """Winding number of f along |z| = r, sampled at n angles.

    By the argument principle this counts zeros of f inside the circle.
    Raises ContourZero when the sampled modulus dips below the zero
    threshold, since the phase is then unreliable.
    """
    if not 0.0 < r <= R_MAX:
        raise ParameterError(f"contour radius must lie in (0, {R_MAX}]")
    theta = 2.0 * np.pi * np.arange(n) / n
    vals = f.jet(r * np.exp(1j * theta)).f
    if float(np.min(np.abs(vals))) < _ZERO_THRESHOLD:
        raise ContourZero(f"function modulus below {_ZERO_THRESHOLD} on the circle of radius {r}")
    return _winding_from_values(vals)


def _check_nonvanishing(inner: AnalyticExpr, node_name: str) -> None:
    vals = inner._jet(_validation_circle()).f
    low = float(np.min(np.abs(vals)))
    if low < _ZERO_THRESHOLD:
        raise DomainError(
            f"{node_name} inner function nearly vanishes on the validation circle (min modulus {low})"
        )
    w = _winding_from_values(vals)
    if w != 0:
        raise DomainError(
            f"{node_name} inner function has winding number {w} on the validation circle, expected 0"
        )
