"""Finite positive measures on [0, 1) and their Carleson behavior.

A :class:`MeasureOn01` is a finite sum of point masses and densities
``w (1-t)^beta dt`` with ``beta > -1``.  Tails and moments of that family
have closed forms, which makes every Carleson statement checkable against
an exact answer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from .quadrature import QuadratureError, integrate_radial


@dataclass(frozen=True)
class MeasureOn01:
    atoms: tuple = ()
    densities: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        dens = tuple((float(w), float(b)) for w, b in self.densities)
        for t, w in atoms:
            if not (0.0 <= t < 1.0) or not w > 0:
                raise ValueError(f"bad atom ({t}, {w}): need 0 <= t < 1 and w > 0")
        for w, b in dens:
            if not w > 0 or not b > -1:
                raise ValueError(f"bad density ({w}, {b}): need w > 0 and beta > -1")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "densities", dens)

    @classmethod
    def lebesgue(cls) -> "MeasureOn01":
        return cls(densities=((1.0, 0.0),), name="lebesgue")

    @classmethod
    def atom(cls, t0: float, weight: float = 1.0) -> "MeasureOn01":
        return cls(atoms=((t0, weight),), name=f"atom:{t0:g}")

    @classmethod
    def beta(cls, beta: float, weight: float = 1.0) -> "MeasureOn01":
        """``weight (1-t)^beta dt``."""
        return cls(densities=((weight, beta),), name=f"beta:{beta:g}")

    @classmethod
    def parse(cls, spec: str) -> "MeasureOn01":
        """Built-in names: ``lebesgue``, ``atom:t0``, ``beta:b``; ``+`` joins several."""
        parts = [s.strip() for s in spec.split("+")]
        total = None
        for part in parts:
            kind, _, arg = part.partition(":")
            if kind == "lebesgue" and not arg:
                m = cls.lebesgue()
            elif kind == "atom" and arg:
                m = cls.atom(float(arg))
            elif kind == "beta" and arg:
                m = cls.beta(float(arg))
            else:
                raise ValueError(f"unknown measure {part!r}")
            total = m if total is None else total + m
        return MeasureOn01(total.atoms, total.densities, name=spec)

    def __add__(self, other: "MeasureOn01") -> "MeasureOn01":
        name = f"{self.name}+{other.name}" if self.name and other.name else ""
        return MeasureOn01(self.atoms + other.atoms, self.densities + other.densities, name)

    @property
    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms) + sum(w / (b + 1.0) for w, b in self.densities)

    @property
    def tail_exponent(self) -> float:
        """Exponent ``e`` with ``tail(t) ~ (1-t)^e`` as ``t -> 1`` (``inf`` if the tail vanishes)."""
        if not self.densities:
            return math.inf
        return min(b + 1.0 for _, b in self.densities)

    def moments(self, n_max: int) -> np.ndarray:
        """``mu_n = int t^n dmu`` for ``n = 0..n_max``.

        Densities use ``B(n+1, beta+1)`` advanced by ``mu_n = mu_{n-1} n / (n + beta + 1)``.
        """
        n = np.arange(n_max + 1, dtype=float)
        out = np.zeros(n_max + 1)
        for t0, w in self.atoms:
            out += w * t0**n
        for w, b in self.densities:
            m = np.empty(n_max + 1)
            m[0] = w / (b + 1.0)
            if n_max:
                m[1:] = m[0] * np.cumprod(n[1:] / (n[1:] + b + 1.0))
            out += m
        return out

    def moment(self, n: int) -> float:
        if n < 0:
            raise ValueError("moment order must be nonnegative")
        return float(self.moments(n)[n])

    def tail(self, t):
        """``mu([t, 1))`` in closed form."""
        t_arr = np.asarray(t, dtype=float)
        if np.any((t_arr < 0) | (t_arr >= 1)):
            raise ValueError("tail needs 0 <= t < 1")
        out = np.zeros_like(t_arr)
        for t0, w in self.atoms:
            out = out + w * (t0 >= t_arr)
        for w, b in self.densities:
            out = out + w * (1.0 - t_arr) ** (b + 1.0) / (b + 1.0)
        return float(out) if out.ndim == 0 else out

    def integrate(self, h, nodes: int = 64) -> complex:
        """``int h(t) dmu(t)`` for smooth ``h``: atoms exactly, densities by Gauss-Jacobi."""
        total = sum(w * h(np.array([t0]))[0] for t0, w in self.atoms) if self.atoms else 0.0
        for w, b in self.densities:
            x, wx = roots_jacobi(nodes, b, 0.0)  # weight (1-x)^b on [-1, 1]
            t = 0.5 * (x + 1.0)
            total = total + w * 2.0 ** (-b - 1.0) * np.dot(wx, h(t))
        return total

    def to_json(self) -> dict:
        out = {
            "atoms": [[t, w] for t, w in self.atoms],
            "densities": [{"weight": w, "beta": b} for w, b in self.densities],
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data) -> "MeasureOn01":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        atoms = tuple((a[0], a[1]) for a in data.get("atoms", []))
        dens = tuple((d["weight"], d["beta"]) for d in data.get("densities", []))
        return cls(atoms, dens, name=data.get("name", ""))


def moment(mu: MeasureOn01, n: int) -> float:
    return mu.moment(n)


def tail(mu: MeasureOn01, t):
    return mu.tail(t)


def dyadic_t_grid(depth: int = 24) -> np.ndarray:
    return 1.0 - 2.0 ** -np.arange(depth + 1, dtype=float)


def loglog_slope(one_minus: np.ndarray, values: np.ndarray) -> float:
    """Least-squares exponent ``k`` in ``values ~ (1 - t)^k``."""
    x = np.log(np.asarray(one_minus, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


VANISHING_SLOPE = 0.05
FIT_POINTS = 6


def classify(one_minus: np.ndarray, values: np.ndarray) -> tuple:
    """``(slope, verdict)`` for a nonnegative sequence indexed by ``1 - t -> 0``.

    The fit uses the last :data:`FIT_POINTS` entries.  A slope above
    ``+0.05`` means the sequence decays (``vanishing``), below ``-0.05`` it
    blows up (``neither``), otherwise it stays comparable to a constant.
    Sequences that are exactly zero at the end count as vanishing and
    infinite entries as blow-up.
    """
    tail_x = np.asarray(one_minus)[-FIT_POINTS:]
    tail_y = np.asarray(values)[-FIT_POINTS:]
    if np.any(np.isinf(tail_y)):
        return -math.inf, "neither"
    if np.all(tail_y == 0):
        return math.inf, "vanishing"
    if np.any(tail_y <= 0):
        return math.inf, "vanishing"
    slope = loglog_slope(tail_x, tail_y)
    if slope > VANISHING_SLOPE:
        return slope, "vanishing"
    if slope < -VANISHING_SLOPE:
        return slope, "neither"
    return slope, "carleson"


@dataclass
class CarlesonAnalysis:
    s: float
    constant: float
    vanishing_slope: float
    verdict: str
    grid: list = field(default_factory=list)

    @property
    def is_carleson(self) -> bool:
        return self.verdict in ("carleson", "vanishing")

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "constant": self.constant,
            "vanishing_slope": self.vanishing_slope if math.isfinite(self.vanishing_slope) else str(self.vanishing_slope),
            "verdict": self.verdict,
            "grid_points": len(self.grid),
        }


def carleson_analyze(mu: MeasureOn01, s: float = 1.0, grid=None) -> CarlesonAnalysis:
    """Sup of ``mu([t,1)) / (1-t)^s`` and the limit behavior as ``t -> 1``.

    The tail is piecewise constant between atoms, so the atom locations
    are added to the grid; the reported constant is exact for atoms and
    for densities whose tail ratio peaks on the grid.
    """
    if not s > 0:
        raise ValueError("s must be positive")
    grid = dyadic_t_grid() if grid is None else np.asarray(grid, dtype=float)
    pts = np.unique(np.concatenate([grid, [t for t, _ in mu.atoms]]))
    ratios = mu.tail(pts) / (1.0 - pts) ** s
    g = np.asarray(grid)
    slope, verdict = classify(1.0 - g, mu.tail(g) / (1.0 - g) ** s)
    return CarlesonAnalysis(s, float(np.max(ratios)), slope, verdict, list(map(float, g)))


def kernel_measure_integral(
    mu: MeasureOn01,
    b: complex,
    r: float,
    c: float,
    s: float,
    use_modulus: bool = False,
) -> float:
    """``int_0^1 (1-|b|)^r / ((1-t)^c K(t)^(s+r-c)) dmu(t)``.

    ``K(t) = 1 - |b| t`` by default and ``|1 - b t|`` with ``use_modulus``.
    Returns ``inf`` when a density is not integrable against ``(1-t)^-c``.
    """
    if not r > 0 or not 0 <= c < s:
        raise ValueError("need r > 0 and 0 <= c < s")
    b = complex(b)
    rb = abs(b)
    if rb >= 1:
        raise ValueError("b must lie in the open unit disk")
    q = s + r - c
    lead = (1.0 - rb) ** r

    def kernel_at(one_minus):
        t = 1.0 - one_minus
        k = np.abs(1.0 - b * t) if use_modulus else 1.0 - rb + rb * one_minus
        return 1.0 / k**q

    total = 0.0
    for t0, w in mu.atoms:
        total += w * lead / (1.0 - t0) ** c * float(kernel_at(np.array([1.0 - t0]))[0])
    for w, beta in mu.densities:
        delta = beta - c
        if delta <= -1:
            return math.inf
        try:
            val = integrate_radial(
                lambda sv: sv**delta * kernel_at(sv), delta, complement=True, rtol=1e-8
            )
        except QuadratureError:
            val = integrate_radial(
                lambda sv: sv**delta * kernel_at(sv), delta, complement=True, nodes=32, rtol=None
            )
        total += w * lead * val
    return float(total)


@dataclass
class KernelMeasureSweep:
    r: float
    c: float
    s: float
    use_modulus: bool
    radii: list
    values: list
    slope: float
    verdict: str

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "c": self.c,
            "s": self.s,
            "use_modulus": self.use_modulus,
            "values": [v if math.isfinite(v) else str(v) for v in self.values],
            "slope": self.slope if math.isfinite(self.slope) else str(self.slope),
            "verdict": self.verdict,
        }


def kernel_measure_sweep(
    mu: MeasureOn01,
    r: float,
    c: float,
    s: float,
    use_modulus: bool = False,
    depth: int = 20,
    rotations: int = 8,
) -> KernelMeasureSweep:
    """Values of :func:`kernel_measure_integral` for ``|b| = 1 - 2^-j``, maximized over rotations.

    The verdict (``carleson`` = bounded, ``vanishing`` = tends to zero,
    ``neither`` = unbounded) uses the same slope rule as
    :func:`carleson_analyze`.
    """
    radii = 1.0 - 2.0 ** -np.arange(1, depth + 1, dtype=float)
    angles = np.exp(2j * np.pi * np.arange(rotations) / rotations) if use_modulus else [1.0]
    values = []
    for rb in radii:
        vals = [kernel_measure_integral(mu, rb * e, r, c, s, use_modulus) for e in angles]
        values.append(max(vals))
    values = np.array(values)
    slope, verdict = classify(1.0 - radii, values)
    return KernelMeasureSweep(r, c, s, use_modulus, list(map(float, radii)), list(map(float, values)), slope, verdict)


def measure_catalog() -> list:
    """Measures spanning vanishing, non-vanishing and non-Carleson behavior for ``s = 1``."""
    return [
        MeasureOn01.lebesgue(),
        MeasureOn01.beta(1.0),
        MeasureOn01.beta(2.0),
        MeasureOn01.beta(-0.5),
        MeasureOn01.beta(-0.8),
        MeasureOn01.atom(0.5),
        MeasureOn01.atom(0.9),
        MeasureOn01.parse("lebesgue+atom:0.3"),
        MeasureOn01.parse("beta:1+beta:-0.5"),
        MeasureOn01.parse("beta:0.5+atom:0.99"),
    ]
