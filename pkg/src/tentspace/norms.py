"""Norm estimators for Hardy, Bergman and analytic tent spaces.

The tent-space norm is computed through its kernel characterization

    ||f||^p = sup_a int_D (1-|a|^2)^t / |1 - conj(a) z|^(t+1) |f(z)|^p (1-|z|^2)^(alpha+1) dA(z),

with the supremum taken over a :class:`~tentspace.quadrature.SupGrid`.
Equivalences between quantities are always reported as ratio bands, never
as equalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .quadrature import (
    PolarRule,
    QuadratureError,
    SupGrid,
    gauss_legendre,
    kernel_sup,
    weighted_disk_integral,
)
from .series import TaylorSeries, derivative, differentiate, dilate, sample_circle


@dataclass(frozen=True)
class TentParams:
    """``(p, alpha, t)`` for the tent norm; ``t`` defaults to ``max(1, 2/p)``."""

    p: float = 2.0
    alpha: float = 0.0
    t: float | None = None

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError("p must be positive")
        if not self.alpha > -2:
            raise ValueError("alpha must exceed -2")
        if self.t is None:
            object.__setattr__(self, "t", max(1.0, 2.0 / self.p))
        if not self.t > 0:
            raise ValueError("t must be positive")

    @property
    def growth_exponent(self) -> float:
        """``(alpha + 2) / p``, the pointwise growth rate of members of the space."""
        return (self.alpha + 2.0) / self.p

    def to_dict(self) -> dict:
        return {"p": self.p, "alpha": self.alpha, "t": self.t}


@dataclass
class NormEstimate:
    value: float
    argmax: complex = 0j
    grid: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "argmax": [self.argmax.real, self.argmax.imag],
            "grid": self.grid,
        }


def modulus_sampler(f: TaylorSeries, p: float) -> Callable[[float, int], np.ndarray]:
    def sample(r: float, m: int) -> np.ndarray:
        return np.abs(sample_circle(f, r, m)) ** p

    return sample


def _circle_count(f: TaylorSeries, minimum: int = 256) -> int:
    n = max(minimum, 8 * (f.degree + 1))
    return 1 << (n - 1).bit_length()


def hardy_norm(f: TaylorSeries, p: float, radii=None) -> float:
    """``sup_r (circle mean of |f|^p)^(1/p)``.

    Circle means of ``|f|^p`` increase with ``r``, so for a polynomial the
    supremum is the limit value at ``r = 1``, which is included in the grid.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if radii is None:
        radii = [1.0 - 2.0**-j for j in range(1, 21)] + [1.0]
    m = _circle_count(f)
    means = [np.mean(np.abs(sample_circle(f, r, m)) ** p) for r in radii]
    return float(max(means) ** (1.0 / p))


def bergman_norm(
    f: TaylorSeries, p: float, rule: PolarRule | None = None, rtol: float | None = None
) -> float:
    """``(int_D |f|^p dA)^(1/p)`` on the graded polar rule."""
    if p <= 0:
        raise ValueError("p must be positive")
    rule = rule or PolarRule()
    value = weighted_disk_integral(modulus_sampler(f, p), 0.0, rule)
    if rtol is not None:
        fine = weighted_disk_integral(modulus_sampler(f, p), 0.0, refined_rule(rule))
        if abs(fine - value) > rtol * max(fine, 1e-300):
            raise QuadratureError(f"Bergman quadrature not converged: {value!r} vs {fine!r}")
    return float(value ** (1.0 / p))


def refined_rule(rule: PolarRule) -> PolarRule:
    return PolarRule(
        depth=rule.depth + 2,
        panel_nodes=rule.panel_nodes + 4,
        angular_scale=2 * rule.angular_scale,
        min_angles=rule.min_angles,
        max_angles=2 * rule.max_angles,
    )


def tent_integral(
    sample: Callable[[float, int], np.ndarray],
    params: TentParams,
    grid: SupGrid | None = None,
    rule: PolarRule | None = None,
):
    """Grid supremum of the tent kernel integral of ``F``, before the ``1/p`` root."""
    grid = grid or SupGrid.dyadic()
    rule = rule or PolarRule()
    return kernel_sup(
        sample, grid, rule, gamma=params.alpha + 1.0, t=params.t, power=params.t + 1.0
    )


def _grid_meta(grid: SupGrid, rule: PolarRule, **extra) -> dict:
    meta = {"sup_grid": grid.describe(), "quadrature": rule.describe()}
    meta.update(extra)
    return meta


def tent_norm(
    f: TaylorSeries,
    params: TentParams | None = None,
    grid: SupGrid | None = None,
    rule: PolarRule | None = None,
    rtol: float | None = None,
) -> NormEstimate:
    """Analytic tent-space norm of ``f`` over the sup grid.

    With ``rtol`` the estimate is repeated on a refined quadrature rule and
    a relative change above ``rtol`` raises :class:`QuadratureError`.
    """
    params = params or TentParams()
    grid = grid or SupGrid.dyadic()
    rule = rule or PolarRule()
    if f.is_zero():
        return NormEstimate(0.0, 0j, _grid_meta(grid, rule, params=params.to_dict()))
    res = tent_integral(modulus_sampler(f, params.p), params, grid, rule)
    if rtol is not None:
        fine = tent_integral(modulus_sampler(f, params.p), params, grid, refined_rule(rule))
        if abs(fine.value - res.value) > rtol * fine.value:
            raise QuadratureError(
                f"tent quadrature not converged: {res.value!r} vs {fine.value!r}"
            )
    return NormEstimate(
        float(max(res.value, 0.0) ** (1.0 / params.p)),
        res.argmax,
        _grid_meta(grid, rule, params=params.to_dict()),
    )


def tent_norm_derivative(
    f: TaylorSeries,
    params: TentParams | None = None,
    grid: SupGrid | None = None,
    rule: PolarRule | None = None,
) -> NormEstimate:
    """Derivative characterization of tent-space membership.

    ``sup_b int_D |f'(w)|^p (1-|w|^2)^(p+alpha) (1-|phi_b(w)|^2) dA(w)`` to
    the power ``1/p``, with ``phi_b`` the disk automorphism swapping 0 and
    ``b``.  Since ``1 - |phi_b(w)|^2 = (1-|b|^2)(1-|w|^2)/|1 - conj(b) w|^2``
    this is a kernel integral with exponent 2 and weight ``p + alpha + 1``.
    The result describes ``f - f(0)``; the constant term is returned in the
    grid metadata.
    """
    params = params or TentParams()
    grid = grid or SupGrid.dyadic()
    rule = rule or PolarRule()
    df = differentiate(f)
    meta = _grid_meta(
        grid,
        rule,
        params=params.to_dict(),
        constant_term=[float(f.coeffs[0].real), float(f.coeffs[0].imag)],
    )
    if df.is_zero():
        return NormEstimate(0.0, 0j, meta)
    res = kernel_sup(
        modulus_sampler(df, params.p),
        grid,
        rule,
        gamma=params.p + params.alpha + 1.0,
        t=1.0,
        power=2.0,
    )
    return NormEstimate(float(res.value ** (1.0 / params.p)), res.argmax, meta)


def growth_check(
    f: TaylorSeries,
    params: TentParams | None = None,
    n: int = 0,
    grid: SupGrid | None = None,
    rule: PolarRule | None = None,
) -> float:
    """``sup_z (1-|z|^2)^((alpha+2)/p + n) |f^(n)(z)|`` divided by the tent norm of ``f``.

    The supremum runs over every node of the polar rule.
    """
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    params = params or TentParams()
    rule = rule or PolarRule()
    norm = tent_norm(f, params, grid, rule).value
    if norm == 0.0:
        return 0.0
    fn = derivative(f, n)
    r, eps, _, m = rule.nodes(0.0)
    expo = params.growth_exponent + n
    best = 0.0
    for rk, ek, mk in zip(r, eps, m):
        best = max(best, float(ek**expo * np.max(np.abs(sample_circle(fn, rk, int(mk))))))
    return best / norm


def dilation_ratio(
    f: TaylorSeries,
    w: complex,
    params: TentParams | None = None,
    grid: SupGrid | None = None,
    rule: PolarRule | None = None,
) -> float:
    """Tent norm of ``z -> f(conj(w) z)`` relative to that of ``f``."""
    base = tent_norm(f, params, grid, rule).value
    if base == 0.0:
        return 0.0
    return tent_norm(dilate(f, np.conj(w)), params, grid, rule).value / base


def half_segment_sampler(f: TaylorSeries, p: float, nodes: int = 12):
    """Sampler of ``(int_0^{z/2} |f(z-s)| |ds|)^p = (int_{r/2}^r |f(rho e^{i theta})| d rho)^p``."""

    def sample(r: float, m: int) -> np.ndarray:
        x, w = gauss_legendre(nodes, 0.5 * r, r)
        acc = np.zeros(m)
        for xi, wi in zip(x, w):
            acc += wi * np.abs(sample_circle(f, xi, m))
        return acc**p

    return sample


def half_segment_ratio(
    f: TaylorSeries,
    params: TentParams | None = None,
    grid: SupGrid | None = None,
    rule: PolarRule | None = None,
) -> float:
    """Tent integral of the half-segment average of ``|f|`` over ``||f||^p``."""
    params = params or TentParams()
    norm = tent_norm(f, params, grid, rule).value
    if norm == 0.0:
        return 0.0
    res = tent_integral(half_segment_sampler(f, params.p), params, grid, rule)
    return res.value / norm**params.p
