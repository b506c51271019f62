"""Quadrature on the unit disk, on [0, 1) and on circles, plus sup grids.

Area integrals use the normalized measure ``dA = dx dy / pi`` so that the
disk has mass one.  In the radial variable ``u = r^2`` this measure is
``du dtheta / (2 pi)``, which is why every radial rule below lives in ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi


class QuadratureError(ArithmeticError):
    """A quadrature failed its node-doubling self check."""


@lru_cache(maxsize=256)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0):
    """Gauss-Legendre nodes and weights mapped to ``[a, b]``."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


@lru_cache(maxsize=64)
def _jacobi_endpoint(n: int, gamma: float):
    # nodes/weights on [0, 1] for int g(v) v^gamma dv
    x, w = roots_jacobi(n, 0.0, gamma)
    return 0.5 * (x + 1.0), w * 2.0 ** (-gamma - 1.0)


def _next_pow2(x: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(x, 1.0))))


@dataclass(frozen=True)
class DiskGrid:
    """Tensor rule: Gauss-Legendre in ``u = r^2`` times uniform angles.

    Polynomials in ``|z|^2`` of degree below ``2 * radial_order`` are
    integrated exactly, as are trigonometric terms of order below
    ``angular_count``.
    """

    radial_order: int = 48
    angular_count: int = 128
    rotation: float = 0.0

    def __post_init__(self):
        if self.radial_order < 1 or self.angular_count < 1:
            raise ValueError("grid sizes must be positive")

    def nodes(self):
        """Return ``(z, weight)`` arrays; weights sum to one."""
        u, wu = gauss_legendre(self.radial_order, 0.0, 1.0)
        theta = self.rotation + 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count
        z = np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]
        w = np.repeat(wu[:, None] / self.angular_count, self.angular_count, axis=1)
        return z.ravel(), w.ravel()

    def doubled(self) -> "DiskGrid":
        return DiskGrid(2 * self.radial_order, 2 * self.angular_count, self.rotation)


def integrate_disk(
    integrand: Callable[[np.ndarray], np.ndarray],
    grid: DiskGrid | None = None,
    rtol: float | None = None,
) -> float:
    """Approximate ``int_D integrand dA`` with the normalized area measure.

    With ``rtol`` set the value is recomputed on the doubled grid and a
    relative change above ``rtol`` raises :class:`QuadratureError`.
    """
    grid = grid or DiskGrid()

    def run(g: DiskGrid) -> float:
        z, w = g.nodes()
        vals = np.asarray(integrand(z), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("integrand not finite at a grid node")
        return float(np.dot(w, vals))

    value = run(grid)
    if rtol is not None:
        fine = run(grid.doubled())
        if abs(fine - value) > rtol * max(abs(fine), 1e-300):
            raise QuadratureError(f"disk quadrature not converged: {value!r} vs {fine!r}")
        value = fine
    return value


def _radial_rule(kappa: int, panels: int, nodes: int):
    # s = 1 - r = u^kappa; u-panels map to s-panels [2^-(i+1), 2^-i], plus [0, 2^-panels]
    edges = [2.0 ** (-i / kappa) for i in range(panels + 1)] + [0.0]
    us, ws = [], []
    for hi, lo in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(nodes, lo, hi)
        us.append(x)
        ws.append(w)
    u = np.concatenate(us)
    w = np.concatenate(ws)
    return u**kappa, w * kappa * u ** (kappa - 1)


def singular_substitution_exponent(delta: float) -> int:
    """Exponent ``kappa`` for ``1 - r = u^kappa`` given ``(1-r)^delta`` endpoint behavior."""
    if delta <= -1:
        raise ValueError("endpoint exponent must exceed -1 for integrability")
    return max(2, math.ceil(2.0 / (1.0 + delta) - 1e-9))


def integrate_radial(
    integrand: Callable[[np.ndarray], np.ndarray],
    singular_exponent_hint: float = 0.0,
    *,
    complement: bool = False,
    panels: int = 48,
    nodes: int = 12,
    rtol: float | None = 1e-9,
) -> float:
    """``int_0^1 integrand dr`` with nodes concentrated at ``r = 1``.

    The hint ``delta`` declares ``(1-r)^delta`` behavior at the endpoint.  If
    ``complement`` is true the integrand receives ``s = 1 - r`` instead of
    ``r``, which keeps full relative precision very close to the endpoint.
    """
    kappa = singular_substitution_exponent(singular_exponent_hint)

    def run(n: int) -> float:
        s, w = _radial_rule(kappa, panels, n)
        vals = np.asarray(integrand(s if complement else 1.0 - s), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("radial integrand not finite at a node")
        return float(np.dot(w, vals))

    value = run(nodes)
    if rtol is not None:
        fine = run(2 * nodes)
        if abs(fine - value) > rtol * max(abs(fine), 1e-300):
            raise QuadratureError(f"radial quadrature not converged: {value!r} vs {fine!r}")
        value = fine
    return value


def integrate_circle(integrand: Callable[[np.ndarray], np.ndarray], M: int) -> float:
    """Trapezoid rule for ``int_0^{2 pi} integrand(theta) dtheta`` with ``M`` nodes."""
    if M < 16:
        raise ValueError("need at least 16 circle nodes")
    theta = 2.0 * np.pi * np.arange(M) / M
    vals = np.asarray(integrand(theta), dtype=float)
    return float(2.0 * np.pi * vals.mean())


@dataclass(frozen=True)
class SupGrid:
    """Points ``a`` of the disk over which suprema are estimated.

    ``radii[j]`` carries ``angle_counts[j]`` uniform angles starting at 0.
    The dyadic grid uses radii ``1 - 2^-j`` (``j = 0`` is the origin) with
    ``base_angles * 2^j`` angles at level ``j``.
    """

    radii: tuple
    angle_counts: tuple
    depth: int | None = None
    base_angles: int | None = None

    def __post_init__(self):
        if len(self.radii) != len(self.angle_counts):
            raise ValueError("one angle count per radius")
        if any(not 0.0 <= r < 1.0 for r in self.radii):
            raise ValueError("sup grid radii must lie in [0, 1)")
        if list(self.radii) != sorted(self.radii):
            raise ValueError("radii must be increasing")

    @classmethod
    def dyadic(cls, depth: int = 10, base_angles: int = 16) -> "SupGrid":
        radii = tuple(1.0 - 2.0**-j for j in range(depth + 1))
        counts = tuple(1 if j == 0 else base_angles << j for j in range(depth + 1))
        return cls(radii, counts, depth, base_angles)

    def refine(self) -> "SupGrid":
        """One level deeper and twice the angles; a superset of ``self``."""
        if self.depth is None:
            radii = sorted(set(self.radii) | {0.5 * (1.0 + self.radii[-1])})
            old = dict(zip(self.radii, self.angle_counts))
            counts = tuple(2 * old.get(r, self.angle_counts[-1]) if r else 1 for r in radii)
            return SupGrid(tuple(radii), counts)
        return SupGrid.dyadic(self.depth + 1, 2 * self.base_angles)

    def levels(self):
        return list(zip(self.radii, self.angle_counts))

    def points(self) -> np.ndarray:
        pts = [
            r * np.exp(2j * np.pi * np.arange(m) / m) if r else np.zeros(1, dtype=complex)
            for r, m in self.levels()
        ]
        return np.concatenate(pts)

    def describe(self) -> dict:
        return {
            "depth": self.depth,
            "base_angles": self.base_angles,
            "max_radius": self.radii[-1],
            "points": int(sum(1 if r == 0 else m for r, m in self.levels())),
        }


def sup_on_grid(value_at: Callable[[np.ndarray], np.ndarray], grid: SupGrid):
    """Maximum of ``value_at`` over the grid and the first point attaining it."""
    pts = grid.points()
    vals = np.asarray(value_at(pts), dtype=float)
    if vals.shape != pts.shape:
        vals = np.array([float(value_at(p)) for p in pts])
    if not np.all(np.isfinite(vals)):
        raise ValueError("value_at returned a non-finite value on the grid")
    i = int(np.argmax(vals))
    return float(vals[i]), complex(pts[i])


@dataclass(frozen=True)
class PolarRule:
    """Graded rule for weighted area integrals ``int_D F (1-|z|^2)^gamma dA``.

    Radially, Gauss-Legendre panels in ``u = r^2`` on ``[1-2^-i, 1-2^-(i+1)]``
    for ``i < depth`` and a Gauss-Jacobi panel absorbing ``(1-u)^gamma`` on
    the last piece ``[1-2^-depth, 1]``.  The circle through a node with
    ``1 - u = eps`` gets about ``angular_scale / eps`` uniform samples (a
    power of two), since analytic data on that circle varies on the scale
    ``1 - r``.
    """

    depth: int = 14
    panel_nodes: int = 10
    angular_scale: float = 32.0
    min_angles: int = 64
    max_angles: int = 1 << 15

    def radial(self, gamma: float):
        if gamma <= -1:
            raise ValueError("weight exponent must exceed -1")
        return _polar_radial(self.depth, self.panel_nodes, float(gamma))

    def angles_for(self, eps: np.ndarray) -> np.ndarray:
        eps = np.asarray(eps, dtype=float)
        target = self.angular_scale / np.maximum(eps, 1e-300)
        m = 2 ** np.ceil(np.log2(np.clip(target, 1.0, self.max_angles))).astype(int)
        return np.clip(m, self.min_angles, self.max_angles)

    def kernel_angles(self, radius: float) -> int:
        if radius == 0.0:
            return 1
        m = _next_pow2(self.angular_scale / (1.0 - radius))
        return int(min(max(m, self.min_angles), self.max_angles))

    def nodes(self, gamma: float):
        """``(r, eps, weight, angle_count)`` per radial node; ``eps = 1 - r^2``."""
        u, eps, w = self.radial(gamma)
        return np.sqrt(u), eps, w, self.angles_for(eps)

    def describe(self) -> dict:
        return {
            "radial_depth": self.depth,
            "panel_nodes": self.panel_nodes,
            "angular_scale": self.angular_scale,
            "max_angles": self.max_angles,
        }


@lru_cache(maxsize=32)
def _polar_radial(depth: int, n: int, gamma: float):
    us, es, ws = [], [], []
    for i in range(depth):
        lo_eps, hi_eps = 2.0 ** -(i + 1), 2.0**-i
        x, w = gauss_legendre(n, lo_eps, hi_eps)  # eps = 1 - u on this panel
        us.append(1.0 - x)
        es.append(x)
        ws.append(w * x**gamma)
    h = 2.0**-depth
    v, wv = _jacobi_endpoint(n, gamma)
    eps = h * v
    us.append(1.0 - eps)
    es.append(eps)
    ws.append(wv * h ** (gamma + 1.0))
    u, eps, w = (np.concatenate(a) for a in (us, es, ws))
    for a in (u, eps, w):
        a.setflags(write=False)
    return u, eps, w


def weighted_disk_integral(
    sample: Callable[[float, int], np.ndarray], gamma: float, rule: PolarRule | None = None
) -> float:
    """``int_D F (1-|z|^2)^gamma dA`` where ``sample(r, m)`` returns ``F`` on a circle."""
    rule = rule or PolarRule()
    r, _, w, m = rule.nodes(gamma)
    means = np.array([np.mean(sample(rk, int(mk))) for rk, mk in zip(r, m)])
    return float(np.dot(w, means))


def _kernel_spectrum(x: float, m: int, power: float) -> np.ndarray:
    psi = 2.0 * np.pi * np.arange(m) / m
    k = (1.0 - 2.0 * x * np.cos(psi) + x * x) ** (-0.5 * power)
    return np.fft.rfft(k).real / m


@lru_cache(maxsize=48)
def _level_kernels(rule: "PolarRule", rho_a: float, gamma: float, power: float) -> tuple:
    """Truncated kernel spectra for every radial node of ``rule`` at ``|a| = rho_a``."""
    r, _, _, m = rule.nodes(gamma)
    ma = rule.kernel_angles(rho_a)
    out = []
    for rk, mk in zip(r, m):
        mm = min(ma, int(mk))
        kh = _kernel_spectrum(rho_a * rk, mm, power)[: mm // 2]
        kh.setflags(write=False)
        out.append(kh)
    return tuple(out)


@dataclass
class KernelSupResult:
    """Grid supremum of a Poisson-type kernel integral."""

    value: float
    argmax: complex
    level_values: list = field(default_factory=list)


def kernel_sup(
    sample: Callable[[float, int], np.ndarray],
    grid: SupGrid,
    rule: PolarRule,
    *,
    gamma: float,
    t: float,
    power: float,
) -> KernelSupResult:
    """``sup_a (1-|a|^2)^t int_D F(z) |1 - conj(a) z|^(-power) (1-|z|^2)^gamma dA(z)``.

    ``sample(r, m)`` must return the nonnegative values of ``F`` at
    ``r e^{2 pi i k/m}``.  For each sup-grid radius the integral against all
    angles of ``a`` is a circular convolution in the angle, evaluated as a
    product of Fourier coefficients summed over the radial nodes.  The value
    at a fixed ``a`` depends only on ``rule``, never on the rest of the grid,
    so refining the grid can only increase the supremum.
    """
    r, _, w, m = rule.nodes(gamma)
    spectra = []
    for rk, mk in zip(r, m):
        vals = np.asarray(sample(float(rk), int(mk)), dtype=float)
        spectra.append(np.fft.rfft(vals) / mk)

    best, best_at = -np.inf, 0j
    level_values = []
    for rho_a, count in grid.levels():
        if rho_a == 0.0:
            vals = np.array([sum(wk * s[0].real for wk, s in zip(w, spectra))])
        else:
            ma = rule.kernel_angles(rho_a)
            acc = np.zeros(ma // 2 + 1, dtype=complex)
            kernels = _level_kernels(rule, float(rho_a), float(gamma), float(power))
            for wk, kh, spec in zip(w, kernels, spectra):
                nh = kh.size
                acc[:nh] += wk * kh * spec[:nh]
            n_out = max(ma, count)
            if n_out % count:
                n_out = count * -(-ma // count)
            full = np.fft.irfft(acc * n_out, n=n_out)
            vals = (1.0 - rho_a * rho_a) ** t * full[:: n_out // count]
        level_values.append(vals)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            best_at = rho_a * np.exp(2j * np.pi * i / count) if rho_a else 0j
    return KernelSupResult(best, complex(best_at), level_values)
