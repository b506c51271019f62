"""Truncated Taylor series on the unit disk.

A :class:`TaylorSeries` stores the coefficients ``c_0..c_N`` of
``f(z) = sum c_n z^n``.  Everything here is a pure function of immutable
values; products are truncated to a configurable degree so that chained
operator applications keep a bounded cost.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import QuadratureError, gauss_legendre

#: Global truncation order used when a product is not given an explicit one.
DEFAULT_DEGREE = 64


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Coefficients ``c_0..c_N`` of a polynomial truncation of an analytic function."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def constant(cls, c: complex = 1.0) -> "TaylorSeries":
        return cls(np.array([c]))

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> "TaylorSeries":
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = c
        return cls(coeffs)

    @classmethod
    def geometric(cls, degree: int) -> "TaylorSeries":
        """Truncation of ``1/(1-z)``; also the unit of the Hadamard product."""
        return cls(np.ones(degree + 1))

    def padded(self, degree: int) -> np.ndarray:
        """Coefficients zero-padded (or truncated) to ``degree``."""
        out = np.zeros(degree + 1, dtype=complex)
        n = min(degree, self.degree) + 1
        out[:n] = self.coeffs[:n]
        return out

    def truncate(self, degree: int) -> "TaylorSeries":
        return TaylorSeries(self.padded(degree))

    def is_zero(self, eps: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= eps))

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        return add(self, other)

    def __sub__(self, other: "TaylorSeries") -> "TaylorSeries":
        return add(self, scale(other, -1.0))

    def __neg__(self) -> "TaylorSeries":
        return scale(self, -1.0)

    def __mul__(self, lam) -> "TaylorSeries":
        if isinstance(lam, TaylorSeries):
            return NotImplemented
        return scale(self, lam)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        n = max(self.degree, other.degree)
        return bool(np.array_equal(self.padded(n), other.padded(n)))

    def __hash__(self):
        return hash(np.trim_zeros(self.coeffs, "b").tobytes())

    def __repr__(self) -> str:
        return f"TaylorSeries(degree={self.degree})"

    # JSON: list of [re, im] pairs, ascending powers.
    def to_json(self) -> list:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "TaylorSeries":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        pairs = []
        for item in data:
            if isinstance(item, (int, float)):
                re, im = float(item), 0.0
            else:
                if len(item) != 2:
                    raise ValueError(f"expected [re, im] pair, got {item!r}")
                re, im = float(item[0]), float(item[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ValueError("non-finite coefficient in series file")
            pairs.append(complex(re, im))
        return cls(np.array(pairs, dtype=complex))


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk."""

    value: complex

    def __post_init__(self):
        z = complex(self.value)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) >= 1.0:
            raise ValueError(f"{z} is not in the open unit disk")
        object.__setattr__(self, "value", z)

    def __complex__(self) -> complex:
        return self.value


@dataclass(frozen=True)
class TestFunctionSpec:
    """Parameters of ``f_rho(z) = (1-rho) / (1 - rho z)^((alpha+2)/p + 1)``."""

    __test__ = False  # not a pytest class

    rho: float
    p: float = 2.0
    alpha: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise ValueError("rho must lie in [0, 1)")
        if self.p <= 0 or self.alpha <= -2:
            raise ValueError("need p > 0 and alpha > -2")
        if not (math.isfinite(self.exponent) and self.exponent > 0):
            raise ValueError("exponent (alpha+2)/p + 1 must be finite and positive")

    @property
    def exponent(self) -> float:
        return (self.alpha + 2.0) / self.p + 1.0

    def value(self, z):
        """Closed-form evaluation, principal branch (``Re(1 - rho z) > 0`` on the disk)."""
        z = np.asarray(z, dtype=complex)
        return (1.0 - self.rho) / (1.0 - self.rho * z) ** self.exponent

    def degree_for(self, tol: float = 1e-14, cap: int = 1 << 16) -> int:
        """Smallest truncation whose discarded tail is below ``tol`` on the closed disk."""
        if self.rho == 0.0:
            return 0
        beta = self.exponent
        coeff, n = 1.0 - self.rho, 0
        while n < cap:
            n += 1
            coeff *= self.rho * (n + beta - 1.0) / n
            ratio = self.rho * (n + beta) / (n + 1)
            if ratio < 1.0 and coeff * ratio / (1.0 - ratio) < tol:
                return n
        return cap


def add(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    n = max(f.degree, g.degree)
    return TaylorSeries(f.padded(n) + g.padded(n))


def scale(f: TaylorSeries, lam: complex) -> TaylorSeries:
    return TaylorSeries(f.coeffs * lam)


def cauchy_multiply(f: TaylorSeries, g: TaylorSeries, out_degree: int) -> TaylorSeries:
    """Ordinary product ``f g`` truncated at ``out_degree``."""
    if out_degree < 0:
        raise ValueError("out_degree must be nonnegative")
    prod = np.convolve(f.padded(out_degree), g.padded(out_degree))
    return TaylorSeries(prod[: out_degree + 1])


def evaluate(f: TaylorSeries, z):
    """Horner evaluation of ``f`` at a point (or array of points) of the disk."""
    if isinstance(z, DiskPoint):
        z = z.value
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("evaluation point outside the open unit disk")
    out = np.polynomial.polynomial.polyval(z, f.coeffs)
    return complex(out) if out.ndim == 0 else out


def differentiate(f: TaylorSeries) -> TaylorSeries:
    if f.degree == 0:
        return TaylorSeries.constant(0.0)
    n = np.arange(1, f.degree + 1)
    return TaylorSeries(f.coeffs[1:] * n)


def derivative(f: TaylorSeries, order: int) -> TaylorSeries:
    for _ in range(order):
        f = differentiate(f)
    return f


def dilate(f: TaylorSeries, s: complex) -> TaylorSeries:
    """Coefficients of ``z -> f(s z)``."""
    s = complex(s)
    if abs(s) > 1.0:
        raise ValueError("dilation factor must satisfy |s| <= 1")
    return TaylorSeries(f.coeffs * s ** np.arange(f.degree + 1))


def _cmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # componentwise, so the product is bitwise symmetric in a and b
    # (vectorized complex multiply may fuse operations asymmetrically)
    return (a.real * b.real - a.imag * b.imag) + 1j * (a.real * b.imag + a.imag * b.real)


def hadamard(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    n = min(f.degree, g.degree)
    return TaylorSeries(_cmul(f.coeffs[: n + 1], g.coeffs[: n + 1]))


def modified_hadamard(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    n = min(f.degree, g.degree)
    return TaylorSeries(_cmul(f.coeffs[: n + 1], g.coeffs[: n + 1]) / np.arange(1, n + 2))


#: Rows up to this length are built from exact integer binomials.
EXACT_WEIGHT_ROWS = 170


@lru_cache(maxsize=EXACT_WEIGHT_ROWS + 1)
def _exact_weights(k: int) -> np.ndarray:
    row, c = [], 1
    for m in range(k + 1):
        row.append(1 / c)  # int / int true division is correctly rounded
        c = c * (k - m) // (m + 1)
    w = np.array(row)
    w.setflags(write=False)
    return w


def duhamel_weights(k: int) -> np.ndarray:
    """Row ``m!(k-m)!/k!`` for ``m = 0..k``, by the Pascal-row recurrence.

    Up to :data:`EXACT_WEIGHT_ROWS` the recurrence runs on exact integers, so
    every weight is correctly rounded.  Longer rows use the floating ratio
    recurrence on the first half and mirror it, so entries that underflow in
    the middle never contaminate the ends.
    """
    if k <= EXACT_WEIGHT_ROWS:
        return _exact_weights(k)
    w = np.empty(k + 1)
    half = k // 2
    m = np.arange(half)
    w[0] = 1.0
    if half:
        w[1 : half + 1] = np.cumprod((m + 1.0) / (k - m))
    w[k - half :] = w[half::-1]
    return w


def duhamel(f: TaylorSeries, g: TaylorSeries, max_degree: int | None = None) -> TaylorSeries:
    """Duhamel product ``d/dz int_0^z f(z-s) g(s) ds``.

    Coefficientwise ``e_k = sum_{m+n=k} a_m b_n m! n! / k!``.  The output
    degree is ``deg f + deg g`` capped at ``max_degree`` (default: the larger
    of :data:`DEFAULT_DEGREE` and the input degrees).
    """
    a, b = f.coeffs, g.coeffs
    da, db = f.degree, g.degree
    if max_degree is None:
        max_degree = max(DEFAULT_DEGREE, da, db)
    out_deg = min(da + db, max_degree)
    e = np.zeros(out_deg + 1, dtype=complex)
    for k in range(out_deg + 1):
        lo, hi = max(0, k - db), min(k, da)
        if lo > hi:
            continue
        w = duhamel_weights(k)[lo : hi + 1]
        e[k] = np.dot(a[lo : hi + 1] * w, b[k - hi : k - lo + 1][::-1])
    return TaylorSeries(e)


def _segment_integral(h, z: complex, n: int) -> complex:
    """``int_0^{z/2} h(s) ds`` along the straight segment, Gauss-Legendre in the arc parameter."""
    x, w = gauss_legendre(n, 0.0, 0.5)
    return z * np.dot(w, h(z * x))


def duhamel_split_identity_residual(
    f: TaylorSeries, g: TaylorSeries, z, tol: float = 1e-12
) -> float:
    """``|LHS - RHS|`` for the half-segment form of the Duhamel product.

    RHS is ``int_0^{z/2} f(z-s)g'(s) ds + int_0^{z/2} g(z-s)f'(s) ds
    + f(z)g(0) + g(z)f(0) - f(z/2)g(z/2)``.  The integrals are polynomial in
    the arc parameter and computed with enough nodes to be exact; a node
    doubling that moves them by more than ``tol`` raises
    :class:`QuadratureError`.
    """
    z = DiskPoint(z).value if not isinstance(z, DiskPoint) else z.value
    df, dg = differentiate(f), differentiate(g)

    def integrand(s):
        return evaluate(f, z - s) * evaluate(dg, s) + evaluate(g, z - s) * evaluate(df, s)

    n = (f.degree + g.degree) // 2 + 2
    coarse = _segment_integral(integrand, z, n)
    fine = _segment_integral(integrand, z, 2 * n)
    if abs(fine - coarse) > tol * max(1.0, abs(fine)):
        raise QuadratureError(f"segment quadrature unstable: {abs(fine - coarse):.3e}")
    rhs = (
        fine
        + evaluate(f, z) * g.coeffs[0]
        + evaluate(g, z) * f.coeffs[0]
        - evaluate(f, z / 2) * evaluate(g, z / 2)
    )
    lhs = evaluate(duhamel(f, g, max_degree=f.degree + g.degree), z)
    return float(abs(lhs - rhs))


def make_test_function(spec: TestFunctionSpec, degree: int) -> TaylorSeries:
    """Binomial-series truncation of ``f_rho``.

    ``c_n = (1-rho) rho^n C(n+beta-1, n)`` with the generalized binomial
    coefficient advanced by its ratio ``(n+beta-1)/n``; no Gamma calls.
    """
    beta = spec.exponent
    n = np.arange(1, degree + 1, dtype=float)
    coeffs = np.empty(degree + 1)
    coeffs[0] = 1.0 - spec.rho
    if degree:
        coeffs[1:] = (1.0 - spec.rho) * np.cumprod(spec.rho * (n + beta - 1.0) / n)
    return TaylorSeries(coeffs)


def random_series(rng: np.random.Generator, degree: int, *, vanish_at_zero: bool = False) -> TaylorSeries:
    """Seeded sample ``c_n = xi_n / (n+1)``, ``xi_n`` uniform in the square ``[-1,1]^2``."""
    xi = rng.uniform(-1.0, 1.0, degree + 1) + 1j * rng.uniform(-1.0, 1.0, degree + 1)
    c = xi / np.arange(1, degree + 2)
    if vanish_at_zero:
        c[0] = 0.0
    return TaylorSeries(c)


def sample_circle(f: TaylorSeries, r: float, m: int) -> np.ndarray:
    """Values of ``f`` at ``r e^{2 pi i k/m}``, ``k = 0..m-1``, via one FFT.

    Coefficients beyond ``m`` are folded modulo ``m``; that is exact for
    point samples, so any degree is allowed.
    """
    c = f.coeffs * r ** np.arange(f.degree + 1) if r != 1.0 else f.coeffs
    if c.size > m:
        pad = (-c.size) % m
        c = np.concatenate([c, np.zeros(pad, dtype=complex)]).reshape(-1, m).sum(axis=0)
    return np.fft.ifft(c, n=m) * m


def coefficient_sup_distance(f: TaylorSeries, g: TaylorSeries) -> float:
    n = max(f.degree, g.degree)
    return float(np.max(np.abs(f.padded(n) - g.padded(n))))
