"""Scenario runners that put every estimate of the theory to a numerical test.

Each ``check_*`` function returns a :class:`VerificationReport`.  Two kinds
of claims are distinguished:

* two-sided equivalences ``A ~ B`` are reported as a band ``K`` with
  ``A/B`` in ``[1/K, K]`` across the sweep;
* one-sided bounds ``A <~ B`` only report the upper band.

"Bounded across a family" means that the running maximum of the ratio does
not grow by more than a factor of two between the last two levels of the
family parameter.  Unbounded directions are tested through log-log slopes
against the predicted exponent.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .config import Config
from .measures import (
    MeasureOn01,
    carleson_analyze,
    kernel_measure_sweep,
    loglog_slope,
    measure_catalog,
)
from .norms import (
    TentParams,
    bergman_norm,
    growth_check,
    half_segment_sampler,
    hardy_norm,
    refined_rule,
    tent_integral,
    tent_norm,
    tent_norm_derivative,
)
from .operators import (
    atom_image,
    cesaro_like,
    duhamel_operator,
    hadamard_bergman,
    probe_points,
)
from .quadrature import (
    PolarRule,
    SupGrid,
    integrate_circle,
    integrate_radial,
    weighted_disk_integral,
)
from .series import (
    TaylorSeries,
    TestFunctionSpec,
    coefficient_sup_distance,
    dilate,
    duhamel,
    duhamel_split_identity_residual,
    evaluate,
    make_test_function,
    modified_hadamard,
    random_series,
)

PASS, FAIL, REJECTED = "pass", "fail", "rejected"

#: Column order of every CSV export.
CSV_COLUMNS = ("scenario_id", "label", "parameter", "value")

#: Growth factor allowed between the last two levels of a bounded family.
STABILITY_FACTOR = 2.0

#: Parameter grid for families that concentrate at the boundary.
RHO_GRID = (0.9, 0.95, 0.97, 0.98, 0.99)

#: Degree used to represent Cesaro-like images of boundary-concentrated inputs.
CESARO_DEGREE = 1 << 15


@dataclass
class VerificationReport:
    """Outcome of one scenario.

    ``samples`` holds dicts with at least ``label``, ``parameter`` and
    ``value``; ``statistic`` names what ``value`` measures.
    """

    scenario_id: str
    params: dict
    samples: list
    statistic: str
    value: float
    tolerance: float
    verdict: str
    reason: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        data = dict(data)
        for key in ("value", "tolerance"):
            data[key] = float(data[key])  # non-finite values are stored as strings
        return cls(**data)

    def csv_rows(self) -> list:
        return [
            {
                "scenario_id": self.scenario_id,
                "label": s.get("label", ""),
                "parameter": s.get("parameter", ""),
                "value": s.get("value", ""),
            }
            for s in self.samples
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.csv_rows())
        return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _report(sid, params, samples, statistic, value, tol, ok, reason="", **details):
    return VerificationReport(
        sid, params, samples, statistic, float(value), float(tol), PASS if ok else FAIL, reason, details
    )


def rejected(sid: str, params: dict, reason: str) -> VerificationReport:
    return VerificationReport(sid, params, [], "none", math.nan, math.nan, REJECTED, reason)


def band(ratios) -> float:
    """Smallest ``K`` with every ratio in ``[1/K, K]``."""
    r = np.asarray(list(ratios), dtype=float)
    return float(max(r.max(), 1.0 / r.min()))


def family_growth(levels: dict) -> float:
    """Growth of the running maximum between the last two family levels.

    ``levels`` maps a family parameter to the ratios observed at that
    parameter.  The result is ``>= 1``; values up to
    :data:`STABILITY_FACTOR` count as bounded.
    """
    keys = sorted(levels)
    if len(keys) < 2:
        raise ValueError("need at least two family levels")
    running = np.maximum.accumulate([max(levels[k]) for k in keys])
    return float(running[-1] / running[-2])


def _fit_slope(rhos, values) -> float:
    """Exponent ``k`` in ``values ~ (1 - rho)^k``."""
    return loglog_slope(1.0 - np.asarray(rhos), np.asarray(values))


def _rng(config: Config, stream: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, stream])


def _grid(config: Config) -> SupGrid:
    return SupGrid.dyadic(config.grid_depth)


def _rule(config: Config) -> PolarRule:
    return PolarRule(depth=config.radial_depth)


def rho_function(rho: float, p: float, alpha: float) -> TaylorSeries:
    """``f_rho`` truncated where its coefficients drop below ``1e-14``."""
    spec = TestFunctionSpec(rho, p, alpha)
    return make_test_function(spec, spec.degree_for())


def _meta(config: Config, **extra) -> dict:
    d = {"grid_depth": config.grid_depth, "radial_depth": config.radial_depth}
    d.update(extra)
    return d


# ---------------------------------------------------------------- series algebra


def check_duhamel_algebra(config: Config | None = None, triples: int = 50, max_power: int = 12):
    """Monomial law, unit, commutativity and associativity of the Duhamel product."""
    config = config or Config()
    rng = _rng(config, 1)
    samples = []
    mono = 0.0
    for m in range(max_power + 1):
        for n in range(max_power + 1):
            out = duhamel(TaylorSeries.monomial(m), TaylorSeries.monomial(n))
            exact = Fraction(math.factorial(m) * math.factorial(n), math.factorial(m + n))
            expected = np.zeros(m + n + 1, dtype=complex)
            expected[m + n] = float(exact)
            mono = max(mono, float(np.max(np.abs(out.padded(m + n) - expected))))
    samples.append({"label": "monomial_law", "parameter": max_power, "value": mono})
    comm = unit = assoc = 0.0
    for _ in range(triples):
        f, g, h = (random_series(rng, int(rng.integers(0, 9))) for _ in range(3))
        comm = max(comm, coefficient_sup_distance(duhamel(f, g), duhamel(g, f)))
        unit = max(unit, coefficient_sup_distance(duhamel(TaylorSeries.constant(1.0), f), f))
        left = duhamel(duhamel(f, g), h)
        right = duhamel(f, duhamel(g, h))
        assoc = max(assoc, coefficient_sup_distance(left, right))
    samples += [
        {"label": "commutativity", "parameter": triples, "value": comm},
        {"label": "unit", "parameter": triples, "value": unit},
        {"label": "associativity", "parameter": triples, "value": assoc},
    ]
    # exact identities are held to 1e-12, associativity (two roundings) to 1e-10
    worst = max(mono / 1e-12, comm / 1e-12, unit / 1e-12, assoc / 1e-10)
    return _report(
        "duhamel_algebra",
        {"triples": triples, "max_power": max_power},
        samples,
        "residual_over_tolerance",
        worst,
        1.0,
        worst <= 1.0,
        monomial=mono,
        commutativity=comm,
        unit=unit,
        associativity=assoc,
    )


def check_split_identity(config: Config | None = None, probes: int = 30, degree: int = 8):
    """Half-segment representation of the Duhamel product at seeded points."""
    config = config or Config()
    rng = _rng(config, 2)
    samples = []
    worst = 0.0
    for i in range(probes):
        f = random_series(rng, degree)
        g = random_series(rng, degree)
        z = 0.95 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        res = duhamel_split_identity_residual(f, g, z)
        worst = max(worst, res)
        samples.append({"label": f"probe_{i}", "parameter": abs(z), "value": res})
    return _report(
        "split_identity", {"probes": probes, "degree": degree}, samples, "max_residual", worst, 1e-8, worst < 1e-8
    )


# ------------------------------------------------------------------ operators


def function_catalog(config: Config | None = None, count: int = 6) -> list:
    """Seeded inputs at the configured degree plus truncated boundary-concentrated ones."""
    config = config or Config()
    rng = _rng(config, 3)
    n = config.degree
    fam = [(f"random_{i}", random_series(rng, n)) for i in range(count)]
    fam += [
        ("one", TaylorSeries.constant(1.0)),
        (f"z^{n}", TaylorSeries.monomial(n)),
    ]
    for rho in (0.5, 0.9):
        fam.append((f"f_rho={rho}", make_test_function(TestFunctionSpec(rho), n)))
    return fam


def check_cross_forms(config: Config | None = None, measures=None, functions=None):
    """Coefficient form against integral form for the three operators."""
    config = config or Config()
    measures = measure_catalog() if measures is None else measures
    functions = function_catalog(config) if functions is None else functions
    probes = probe_points(config.probe_radii)
    tol = config.cross_check_tol
    samples = []
    worst = {"kg": 0.0, "duhamel": 0.0, "cesaro": 0.0}
    kernels = [(label, f.truncate(min(16, f.degree))) for label, f in functions]
    for (lf, f), (lg, g) in zip(functions, kernels[1:] + kernels[:1]):
        r = hadamard_bergman(g, f, probes, tol).cross_check_residual
        worst["kg"] = max(worst["kg"], r)
        samples.append({"label": f"kg:{lg}:{lf}", "parameter": "", "value": r})
        d = duhamel_operator(g, f.truncate(min(16, f.degree)), probes, tol).cross_check_residual
        worst["duhamel"] = max(worst["duhamel"], d)
        samples.append({"label": f"duhamel:{lg}:{lf}", "parameter": "", "value": d})
    for mu in measures:
        for lf, f in functions:
            r = cesaro_like(mu, f, probes=probes, tol=tol).cross_check_residual
            worst["cesaro"] = max(worst["cesaro"], r)
            samples.append({"label": f"cesaro:{mu.name}:{lf}", "parameter": "", "value": r})
    atom_gap = 0.0
    for t0 in (0.0, 0.5, 0.9):
        for lf, f in functions:
            out = cesaro_like(MeasureOn01.atom(t0), f, cross_check=False).output
            gap = float(np.max(np.abs(evaluate(out, probes) - atom_image(f, t0, probes))))
            atom_gap = max(atom_gap, gap)
    samples.append({"label": "atom_closed_form", "parameter": "", "value": atom_gap})
    value = max(worst.values())
    ok = value <= tol and atom_gap <= 1e-10
    return _report(
        "cross_forms",
        {"degree": config.degree, "probe_radii": list(config.probe_radii), "measures": [m.name for m in measures]},
        samples,
        "max_residual",
        value,
        tol,
        ok,
        atom_residual=atom_gap,
        **worst,
    )


# ------------------------------------------------------------------- measures


def check_carleson_constants(config: Config | None = None, s: float = 1.0):
    """Closed-form tails and Carleson constants of the basic measures."""
    samples = []
    leb = carleson_analyze(MeasureOn01.lebesgue(), s)
    leb_err = abs(leb.constant - 1.0) if s == 1.0 else 0.0
    samples.append({"label": "lebesgue_constant", "parameter": s, "value": leb.constant})
    tail_err = 0.0
    for beta in (-0.8, -0.5, 0.0, 1.0, 2.5):
        mu = MeasureOn01.beta(beta)
        for t in (0.0, 0.3, 0.9, 0.999):
            # independent quadrature of the density over [t, 1)
            ref = integrate_radial(lambda x: x**beta, beta, complement=True) * (1.0 - t) ** (beta + 1.0)
            err = abs(mu.tail(t) - ref) / ref
            tail_err = max(tail_err, err)
            samples.append({"label": f"tail:beta={beta}", "parameter": t, "value": err})
    atom_err = 0.0
    for t0 in (0.0, 0.5, 0.9, 0.99):
        an = carleson_analyze(MeasureOn01.atom(t0), s)
        exact = (1.0 - t0) ** -s
        atom_err = max(atom_err, abs(an.constant - exact) / exact)
        samples.append({"label": "atom_constant", "parameter": t0, "value": an.constant})
    worst = max(leb_err, tail_err, atom_err)
    return _report(
        "carleson_constants",
        {"s": s},
        samples,
        "max_relative_error",
        worst,
        1e-10,
        worst <= 1e-10,
        lebesgue_error=leb_err,
        tail_error=tail_err,
        atom_error=atom_err,
    )


RC_PAIRS = ((1.0, 0.0), (1.0, 0.5), (2.0, 0.0))


def _sweep_agreement(sid: str, measures, s: float, compare: Callable):
    samples = []
    disagreements = []
    for mu in measures:
        tail_verdict = carleson_analyze(mu, s).verdict
        for r, c_frac in RC_PAIRS:
            c = c_frac * s
            for use_modulus in (False, True):
                sw = kernel_measure_sweep(mu, r, c, s, use_modulus)
                ok, note = compare(mu, tail_verdict, sw, r, c)
                label = f"{mu.name}:r={r}:c={c}:{'modulus' if use_modulus else 'radial'}"
                samples.append({"label": label, "parameter": sw.slope, "value": float(ok), "verdicts": [tail_verdict, sw.verdict]})
                if not ok:
                    disagreements.append(f"{label}: {note}")
    return samples, disagreements


def check_carleson_equivalence(config: Config | None = None, measures=None, s: float = 1.0):
    """Tail verdict against boundedness of the parametrized integral sweep."""
    measures = measure_catalog() if measures is None else measures

    def compare(mu, tail_verdict, sw, r, c):
        bounded_tail = tail_verdict != "neither"
        bounded_sweep = sw.verdict != "neither"
        return bounded_tail == bounded_sweep, f"tail {tail_verdict} vs sweep {sw.verdict}"

    samples, bad = _sweep_agreement("carleson_equivalence", measures, s, compare)
    return _report(
        "carleson_equivalence",
        {"s": s, "measures": [m.name for m in measures], "rc_pairs": RC_PAIRS},
        samples,
        "disagreements",
        len(bad),
        0,
        not bad,
        "; ".join(bad),
    )


def check_vanishing_equivalence(config: Config | None = None, measures=None, s: float = 1.0):
    """Vanishing tails against decay of the integral sweep, with the decay rate.

    For purely absolutely continuous measures the fitted slope must match
    the closed-form rate ``min(e - s, r)`` within 0.1, where ``e`` is the
    tail exponent; ties ``e - s = r`` carry a logarithm and are skipped.
    Atoms are excluded from the rate test because a heavy atom close to 1
    dominates the whole depth of the sweep.
    """
    measures = measure_catalog() if measures is None else measures

    def compare(mu, tail_verdict, sw, r, c):
        same = (tail_verdict == "vanishing") == (sw.verdict == "vanishing")
        if not same:
            return False, f"tail {tail_verdict} vs sweep {sw.verdict}"
        if tail_verdict == "vanishing" and not mu.atoms:
            expected = mu.tail_exponent - s
            if abs(expected - r) > 0.25:
                want = min(expected, r)
                if abs(sw.slope - want) > 0.1:
                    return False, f"slope {sw.slope:.3f} vs {want:.3f}"
        return True, ""

    samples, bad = _sweep_agreement("vanishing_equivalence", measures, s, compare)
    return _report(
        "vanishing_equivalence",
        {"s": s, "measures": [m.name for m in measures], "rc_pairs": RC_PAIRS},
        samples,
        "disagreements",
        len(bad),
        0,
        not bad,
        "; ".join(bad),
    )


# ---------------------------------------------------------- Cesaro-like operators


def cesaro_curve(mu: MeasureOn01, params: TentParams, rho_grid, config: Config) -> tuple:
    """``(||C_mu f_rho||, ||f_rho||)`` over the grid."""
    grid, rule = _grid(config), _rule(config)
    images, bases = [], []
    for rho in rho_grid:
        f = rho_function(rho, params.p, params.alpha)
        g = cesaro_like(mu, f, degree=CESARO_DEGREE, cross_check=False).output
        images.append(tent_norm(g, params, grid, rule).value)
        bases.append(tent_norm(f, params, grid, rule).value)
    return np.array(images), np.array(bases)


def check_cesaro_bounded(
    mu: MeasureOn01, params: TentParams | None = None, rho_grid=RHO_GRID, config: Config | None = None
):
    """Ratio curve ``||C_mu f_rho|| / ||f_rho||``.

    For a Carleson measure the curve may not exceed twice its first value.
    Otherwise the measure is taken to be ``w (1-t)^(s-1) dt`` and the
    fitted exponent of the curve against ``1 - rho`` must equal ``s - 1``
    within 0.15.
    """
    config = config or Config()
    params = params or TentParams()
    if params.p < 1:
        return rejected("cesaro_bounded", params.to_dict(), "the boundedness statement needs p >= 1")
    images, bases = cesaro_curve(mu, params, rho_grid, config)
    ratios = images / bases
    samples = [
        {"label": "ratio", "parameter": rho, "value": float(v), "image_norm": float(a), "input_norm": float(b)}
        for rho, v, a, b in zip(rho_grid, ratios, images, bases)
    ]
    verdict = carleson_analyze(mu, 1.0).verdict
    p = {"measure": mu.name, **params.to_dict(), "rho_grid": list(rho_grid), "carleson": verdict}
    slope = _fit_slope(rho_grid, ratios)
    if verdict != "neither":
        growth = float(ratios.max() / ratios[0])
        return _report(
            "cesaro_bounded", p, samples, "max_ratio_growth", growth, STABILITY_FACTOR,
            growth <= STABILITY_FACTOR, slope=slope, meta=_meta(config),
        )
    if len(mu.densities) != 1 or mu.atoms:
        return rejected("cesaro_bounded", p, "blow-up rate is predicted only for a single (1-t)^(s-1) density")
    predicted = mu.tail_exponent - 1.0
    return _report(
        "cesaro_bounded", p, samples, "slope", slope, 0.15, abs(slope - predicted) <= 0.15,
        predicted_slope=predicted, meta=_meta(config),
    )


def check_cesaro_compact(
    mu: MeasureOn01, params: TentParams | None = None, rho_grid=RHO_GRID, config: Config | None = None
):
    """``||C_mu f_rho||`` as ``rho -> 1``, the test-function proxy for compactness.

    Vanishing measures must give a strictly decreasing sequence with
    fitted exponent above 0.05 (so the norms shrink like a positive power
    of ``1 - rho``); other Carleson measures must keep every value above
    half of the first one.
    """
    config = config or Config()
    params = params or TentParams()
    verdict = carleson_analyze(mu, 1.0).verdict
    p = {"measure": mu.name, **params.to_dict(), "rho_grid": list(rho_grid), "carleson": verdict}
    if verdict == "neither":
        return rejected("cesaro_compact", p, "measure is not Carleson, so the operator is unbounded")
    images, _ = cesaro_curve(mu, params, rho_grid, config)
    samples = [{"label": "image_norm", "parameter": rho, "value": float(v)} for rho, v in zip(rho_grid, images)]
    slope = _fit_slope(rho_grid, images)
    if verdict == "vanishing":
        decreasing = bool(np.all(np.diff(images) < 0))
        return _report(
            "cesaro_compact", p, samples, "slope", slope, 0.05, decreasing and slope > 0.05,
            "" if decreasing else "sequence not strictly decreasing", meta=_meta(config),
        )
    floor = float(images.min() / images[0])
    return _report(
        "cesaro_compact", p, samples, "floor_ratio", floor, 0.5, floor >= 0.5, slope=slope, meta=_meta(config),
    )


# -------------------------------------------------------- submultiplicativity


FAMILY_RHOS = (0.5, 0.9, 0.95)


def _random_pairs(config: Config, stream: int, count: int, degree: int = 16):
    rng = _rng(config, stream)
    out = []
    for _ in range(count):
        f = random_series(rng, int(rng.integers(1, degree + 1)))
        g = random_series(rng, int(rng.integers(1, degree + 1)))
        out.append((f, g))
    return out


def check_hadamard_bergman(
    params: TentParams | None = None, config: Config | None = None, random_pairs: int = 20, rhos=FAMILY_RHOS
):
    """``||K_g f|| / (||f|| ||g||_{A^1})`` over seeded pairs and ``f_rho x g_sigma``."""
    config = config or Config()
    params = params or TentParams()
    p = {**params.to_dict(), "random_pairs": random_pairs, "rhos": list(rhos)}
    if params.p < 1 or params.alpha <= -1:
        return rejected("hadamard_bergman", p, "the bound is stated for p >= 1 and alpha > -1")
    grid, rule = _grid(config), _rule(config)
    norm = _norm_cache(params, grid, rule)
    levels: dict = {0.0: []}
    samples = []
    for f, g in _random_pairs(config, 4, random_pairs):
        if f.is_zero() or g.is_zero():
            continue
        ratio = tent_norm(modified_hadamard(g, f), params, grid, rule).value / (norm(f) * bergman_norm(g, 1.0))
        levels[0.0].append(ratio)
        samples.append({"label": "random", "parameter": 0.0, "value": ratio})
    for rho in rhos:
        for sigma in rhos:
            f = rho_function(rho, params.p, params.alpha)
            g = rho_function(sigma, 1.0, 0.0)
            ratio = tent_norm(modified_hadamard(g, f), params, grid, rule).value / (norm(f) * bergman_norm(g, 1.0))
            levels.setdefault(max(rho, sigma), []).append(ratio)
            samples.append({"label": f"rho={rho},sigma={sigma}", "parameter": max(rho, sigma), "value": ratio})
    growth = family_growth(levels)
    return _report(
        "hadamard_bergman", p, samples, "family_growth", growth, STABILITY_FACTOR, growth <= STABILITY_FACTOR,
        max_ratio=max(max(v) for v in levels.values()), meta=_meta(config),
    )


def _norm_cache(params: TentParams, grid: SupGrid, rule: PolarRule):
    cache: dict = {}

    def norm(f: TaylorSeries) -> float:
        key = f.coeffs.tobytes()
        if key not in cache:
            cache[key] = tent_norm(f, params, grid, rule).value
        return cache[key]

    return norm


def check_banach_algebra(
    params: TentParams | None = None, config: Config | None = None, random_pairs: int = 20, rhos=(0.5, 0.9, 0.99)
):
    """``||f (*) g|| / (||f|| ||g||)`` plus the exact unit and commutativity."""
    config = config or Config()
    params = params or TentParams()
    p = {**params.to_dict(), "random_pairs": random_pairs, "rhos": list(rhos)}
    if params.p < 1 or params.alpha <= -2:
        return rejected("banach_algebra", p, "the algebra statement needs p >= 1 and alpha > -2")
    grid, rule = _grid(config), _rule(config)
    norm = _norm_cache(params, grid, rule)
    one = TaylorSeries.constant(1.0)
    levels: dict = {0.0: []}
    samples = []
    exact_gap = 0.0
    for f, g in _random_pairs(config, 5, random_pairs, degree=8):
        prod = duhamel(f, g, f.degree + g.degree)
        exact_gap = max(
            exact_gap,
            coefficient_sup_distance(prod, duhamel(g, f, f.degree + g.degree)),
            coefficient_sup_distance(duhamel(one, f), f),
        )
        ratio = norm(prod) / (norm(f) * norm(g))
        levels[0.0].append(ratio)
        samples.append({"label": "random", "parameter": 0.0, "value": ratio})
    for rho in rhos:
        f = rho_function(rho, params.p, params.alpha)
        ratio = norm(duhamel(f, f, 2 * f.degree)) / norm(f) ** 2
        levels[rho] = [ratio]
        samples.append({"label": "f_rho*f_rho", "parameter": rho, "value": ratio})
    unit_ratio = 1.0 / norm(one)
    growth = family_growth(levels)
    return _report(
        "banach_algebra", p, samples, "family_growth", growth, STABILITY_FACTOR,
        growth <= STABILITY_FACTOR and exact_gap <= 1e-12,
        unit_ratio=unit_ratio, exact_gap=exact_gap, meta=_meta(config),
    )


def young_case(p: float, q: float, alpha: float, beta: float) -> str | None:
    """Which hypothesis of the Young-type bound applies, or ``None``."""
    lead = 1.0 - (beta + 2.0) / q
    if lead >= 0:
        return "ii"
    if p < (alpha + 2.0) / ((beta + 2.0) / q - 1.0):
        return "i"
    return None


def check_young(
    p: float = 2.0,
    q: float = 2.0,
    alpha: float = 0.0,
    beta: float = 0.0,
    config: Config | None = None,
    random_pairs: int = 10,
    rhos=FAMILY_RHOS,
):
    """``||D_f g||_{p,alpha} / (||f||_{q,beta} ||g||_{p,alpha})``."""
    config = config or Config()
    prm = {"p": p, "q": q, "alpha": alpha, "beta": beta, "random_pairs": random_pairs, "rhos": list(rhos)}
    if not (p >= 1 and q >= 1 and alpha > -2 and beta > -2):
        return rejected("young", prm, "need p, q >= 1 and alpha, beta > -2")
    case = young_case(p, q, alpha, beta)
    if case is None:
        bound = (alpha + 2.0) / ((beta + 2.0) / q - 1.0)
        return rejected(
            "young", prm, f"1-(beta+2)/q < 0 requires p < {bound:.4g}, so neither hypothesis holds"
        )
    prm["case"] = case
    grid, rule = _grid(config), _rule(config)
    pa, qb = TentParams(p, alpha), TentParams(q, beta)
    norm_p, norm_q = _norm_cache(pa, grid, rule), _norm_cache(qb, grid, rule)
    levels: dict = {0.0: []}
    samples = []
    for f, g in _random_pairs(config, 6, random_pairs):
        out = duhamel_operator(f, g, max_degree=f.degree + g.degree).output
        ratio = norm_p(out) / (norm_q(f) * norm_p(g))
        levels[0.0].append(ratio)
        samples.append({"label": "random", "parameter": 0.0, "value": ratio})
    for rho in rhos:
        for sigma in rhos:
            f = rho_function(rho, q, beta)
            g = rho_function(sigma, p, alpha)
            out = duhamel(f, g, f.degree + g.degree)
            ratio = norm_p(out) / (norm_q(f) * norm_p(g))
            levels.setdefault(max(rho, sigma), []).append(ratio)
            samples.append({"label": f"rho={rho},sigma={sigma}", "parameter": max(rho, sigma), "value": ratio})
    f1 = TaylorSeries.constant(1.0)
    growth = family_growth(levels)
    return _report(
        "young", prm, samples, "family_growth", growth, STABILITY_FACTOR, growth <= STABILITY_FACTOR,
        unit_ratio=1.0 / norm_q(f1), meta=_meta(config),
    )


# ------------------------------------------------------ integral estimates


def radial_integral(delta: float, c: float, rho: float) -> float:
    """``int_0^1 (1-r)^delta / (1 - rho r)^(delta+c+1) dr``."""
    q = delta + c + 1.0
    return integrate_radial(lambda s: s**delta / (1.0 - rho + rho * s) ** q, delta, complement=True)


def check_radial_integral(
    deltas=(0.0, 1.0, -0.5), cs=(0.5, 1.0, 2.0), rhos=(0.0, 0.5, 0.9, 0.99, 0.999), k_max: float = 10.0
):
    """Band of ``(1-rho)^c int_0^1 (1-r)^delta (1-rho r)^-(delta+c+1) dr`` and the exact case."""
    samples = []
    ratios = []
    for delta in deltas:
        for c in cs:
            for rho in rhos:
                v = radial_integral(delta, c, rho) * (1.0 - rho) ** c
                ratios.append(v)
                samples.append({"label": f"delta={delta},c={c}", "parameter": rho, "value": v})
    exact_err = 0.0
    for rho in rhos:
        v = radial_integral(0.0, 1.0, rho)
        exact_err = max(exact_err, abs(v * (1.0 - rho) - 1.0))
    k = band(ratios)
    return _report(
        "radial_integral",
        {"deltas": list(deltas), "cs": list(cs), "rhos": list(rhos)},
        samples,
        "band",
        k,
        k_max,
        k <= k_max and exact_err <= 1e-8,
        exact_case_error=exact_err,
    )


def _circle_nodes(*points) -> int:
    worst = max(abs(complex(x)) for x in points)
    m = 64.0 / (1.0 - worst)
    return max(256, 1 << math.ceil(math.log2(m)))


def circle_integral(w: complex, a: complex, t: float, r: float) -> float:
    """``int_0^{2 pi} |1 - conj(w) e^{i theta}|^-t |1 - conj(a) e^{i theta}|^-r d theta``."""

    def integrand(theta):
        e = np.exp(1j * theta)
        return np.abs(1.0 - np.conj(w) * e) ** -t * np.abs(1.0 - np.conj(a) * e) ** -r

    return integrate_circle(integrand, _circle_nodes(w, a))


def circle_integral_bound(w: complex, a: complex, t: float, r: float) -> float:
    d = abs(1.0 - w * np.conj(a))
    if r > 1:
        return (1.0 - abs(w) ** 2) ** (1.0 - t) * d**-r + (1.0 - abs(a) ** 2) ** (1.0 - r) * d**-t
    phi = (w - a) / (1.0 - np.conj(w) * a)
    return (1.0 - abs(w) ** 2) ** (1.0 - t) / d + d**-t * math.log(math.e / (1.0 - abs(phi) ** 2))


DISK_PROBES = (0.0, 0.5, 0.5j, 0.9, -0.9, 0.9 * np.exp(0.3j), 0.99, 0.99j, 0.999)


def check_circle_integral(
    cases=((2.0, 2.0), (1.5, 3.0), (3.0, 1.5), (2.0, 1.0), (3.0, 1.0), (1.5, 1.0)),
    points=DISK_PROBES,
    k_max: float = 20.0,
):
    """Two-sided bands of the circle integral, including the logarithmic case ``r = 1``.

    For ``r = 1`` the band of the bound without the logarithm is reported
    as well, to show that the logarithmic factor is needed.
    """
    samples = []
    bands = {}
    naive_bands = {}
    for t, r in cases:
        if not t > 1 or not r >= 1:
            raise ValueError("cases need t > 1 and r >= 1")
        ratios, naive = [], []
        for w in points:
            for a in points:
                val = circle_integral(w, a, t, r)
                ratio = val / circle_integral_bound(w, a, t, r)
                ratios.append(ratio)
                samples.append({"label": f"t={t},r={r},w={w},a={a}", "parameter": abs(w), "value": ratio})
                if r == 1:
                    d = abs(1.0 - np.conj(w) * a)
                    naive.append(val / ((1.0 - abs(w) ** 2) ** (1.0 - t) / d + d**-t))
        bands[f"t={t},r={r}"] = band(ratios)
        if naive:
            naive_bands[f"t={t},r={r}"] = band(naive)
    k = max(bands.values())
    return _report(
        "circle_integral",
        {"cases": [list(c) for c in cases], "points": [complex(p) for p in points]},
        samples,
        "band",
        k,
        k_max,
        k <= k_max,
        bands=bands,
        bands_without_log=naive_bands,
    )


def forelli_rudin_integral(s: float, r: float, t: float, z: complex, w: complex, rule=None) -> float:
    """``int_D (1-|x|^2)^s |1 - conj(x) z|^-r |1 - conj(x) w|^-t dA(x)``."""

    def sample(rad, m):
        x = rad * np.exp(2j * np.pi * np.arange(m) / m)
        return np.abs(1.0 - np.conj(x) * z) ** -r * np.abs(1.0 - np.conj(x) * w) ** -t

    return weighted_disk_integral(sample, s, rule)


def forelli_rudin_regime(s: float, r: float, t: float) -> int:
    a, b = r - s, t - s
    if a == 2 or b == 2:
        raise ValueError("parameters on a regime boundary (r - s = 2 or t - s = 2)")
    if a < 2 and b < 2:
        return 1
    if b < 2 < a:
        return 2
    if a > 2 and b > 2:
        return 3
    raise ValueError("t - s > 2 > r - s is covered by symmetry; swap (r, z) and (t, w)")


def forelli_rudin_bound(s, r, t, z, w) -> float:
    d = abs(1.0 - np.conj(z) * w)
    regime = forelli_rudin_regime(s, r, t)
    if regime == 1:
        return d ** -(r + t - s - 2.0)
    first = (1.0 - abs(z) ** 2) ** -(r - s - 2.0) * d**-t
    if regime == 2:
        return first
    return first + (1.0 - abs(w) ** 2) ** -(t - s - 2.0) * d**-r


FR_PROBES = (0.0, 0.5, 0.9 * np.exp(0.25j * np.pi), 0.99, 0.99j, -0.9)


def check_forelli_rudin(
    params=((0.0, 1.5, 1.5), (1.0, 2.5, 2.5), (0.0, 3.0, 1.0), (1.0, 4.0, 2.0), (0.0, 3.0, 3.0), (1.0, 4.0, 4.0)),
    points=FR_PROBES,
    k_max: float = 20.0,
    rule: PolarRule | None = None,
):
    """Upper bands of the weighted kernel integral, one per regime."""
    samples = []
    per_regime: dict = {}
    for s, r, t in params:
        if not (s > -1 and r >= 0 and t >= 0 and r + t - s > 2):
            raise ValueError(f"invalid parameters {(s, r, t)}")
        regime = forelli_rudin_regime(s, r, t)
        for z in points:
            for w in points:
                ratio = forelli_rudin_integral(s, r, t, z, w, rule) / forelli_rudin_bound(s, r, t, z, w)
                per_regime.setdefault(regime, []).append(ratio)
                samples.append({"label": f"s={s},r={r},t={t},z={z},w={w}", "parameter": regime, "value": ratio})
    upper = {k: float(max(v)) for k, v in per_regime.items()}
    lower = {k: float(min(v)) for k, v in per_regime.items()}
    k = max(upper.values())
    return _report(
        "forelli_rudin",
        {"params": [list(x) for x in params]},
        samples,
        "upper_band",
        k,
        k_max,
        k <= k_max,
        upper_bands=upper,
        lower_ratios=lower,
    )


# ----------------------------------------------------------- norm behavior


def check_norm_sanity(config: Config | None = None, polynomials: int = 20, max_power: int = 30):
    """Bergman monomial norms and Parseval for the Hardy norm."""
    config = config or Config()
    rng = _rng(config, 7)
    samples = []
    berg = 0.0
    for n in range(max_power + 1):
        v = bergman_norm(TaylorSeries.monomial(n), 2.0)
        berg = max(berg, abs(v - 1.0 / math.sqrt(n + 1)))
        samples.append({"label": "bergman_monomial", "parameter": n, "value": v})
    hardy = 0.0
    for i in range(polynomials):
        f = random_series(rng, int(rng.integers(0, 33)))
        exact = float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))
        v = hardy_norm(f, 2.0)
        hardy = max(hardy, abs(v - exact))
        samples.append({"label": "hardy_parseval", "parameter": i, "value": v - exact})
    worst = max(berg, hardy)
    return _report(
        "norm_sanity", {"polynomials": polynomials, "max_power": max_power}, samples, "max_error",
        worst, 1e-8, worst <= 1e-8, bergman_error=berg, hardy_error=hardy,
    )


def check_tent_refinement(
    params: TentParams | None = None, config: Config | None = None, rhos=(0.5, 0.9, 0.99)
):
    """Sup-grid refinement never lowers the norm and moves it by less than ``5e-4`` relative.

    The radial/angular quadrature is refined as well and must agree to the
    same three digits.
    """
    config = config or Config()
    params = params or TentParams()
    grid, rule = _grid(config), _rule(config)
    fine_grid, fine_rule = grid.refine(), refined_rule(rule)
    fam = [("one", TaylorSeries.constant(1.0))]
    fam += [(f"f_rho={rho}", rho_function(rho, params.p, params.alpha)) for rho in rhos]
    samples = []
    monotone = True
    worst = 0.0
    for label, f in fam:
        base = tent_norm(f, params, grid, rule).value
        refined = tent_norm(f, params, fine_grid, rule).value
        requad = tent_norm(f, params, grid, fine_rule).value
        monotone &= refined >= base
        change = max(abs(refined - base), abs(requad - base)) / base
        worst = max(worst, change)
        samples.append({"label": label, "parameter": "", "value": base, "refined_grid": refined, "refined_rule": requad})
    return _report(
        "tent_refinement", params.to_dict(), samples, "max_relative_change", worst, 5e-4,
        monotone and worst < 5e-4, "" if monotone else "refinement decreased the estimate", meta=_meta(config),
    )


def check_kernel_t_equivalence(
    params: TentParams | None = None,
    config: Config | None = None,
    ts=(0.75, 2.0, 3.0),
    count: int = 8,
    rhos=(0.5, 0.9, 0.99),
    k_max: float = 10.0,
):
    """Norms computed with other kernel exponents ``t`` against the default one."""
    config = config or Config()
    params = params or TentParams()
    grid, rule = _grid(config), _rule(config)
    rng = _rng(config, 8)
    fam = [random_series(rng, 16) for _ in range(count)]
    fam += [rho_function(rho, params.p, params.alpha) for rho in rhos]
    samples = []
    ratios = []
    for t in ts:
        other = TentParams(params.p, params.alpha, t)
        for i, f in enumerate(fam):
            ratio = tent_norm(f, other, grid, rule).value / tent_norm(f, params, grid, rule).value
            ratios.append(ratio)
            samples.append({"label": f"t={t}", "parameter": i, "value": ratio})
    k = band(ratios)
    return _report(
        "kernel_t_equivalence", {**params.to_dict(), "ts": list(ts)}, samples, "band", k, k_max, k <= k_max,
        meta=_meta(config),
    )


def check_derivative_norm(
    params: TentParams | None = None, config: Config | None = None, count: int = 20, k_max: float = 10.0
):
    """Derivative characterization against the kernel norm on functions vanishing at 0."""
    config = config or Config()
    params = params or TentParams()
    grid, rule = _grid(config), _rule(config)
    rng = _rng(config, 9)
    fam = [random_series(rng, 16, vanish_at_zero=True) for _ in range(count)]
    samples = []
    ratios = []
    for i, f in enumerate(fam):
        ratio = tent_norm_derivative(f, params, grid, rule).value / tent_norm(f, params, grid, rule).value
        ratios.append(ratio)
        samples.append({"label": "random", "parameter": i, "value": ratio})
    for rho in (0.5, 0.9, 0.99):
        f = rho_function(rho, params.p, params.alpha)
        f = f - TaylorSeries.constant(f.coeffs[0])
        ratio = tent_norm_derivative(f, params, grid, rule).value / tent_norm(f, params, grid, rule).value
        ratios.append(ratio)
        samples.append({"label": "f_rho-f_rho(0)", "parameter": rho, "value": ratio})
    k = band(ratios)
    return _report(
        "derivative_norm", params.to_dict(), samples, "band", k, k_max, k <= k_max, meta=_meta(config),
    )


def check_growth(
    params: TentParams | None = None, config: Config | None = None, orders=(0, 1), rhos=(0.5, 0.9, 0.95, 0.99)
):
    """Pointwise growth ratios across the ``f_rho`` family, per derivative order."""
    config = config or Config()
    params = params or TentParams()
    grid, rule = _grid(config), _rule(config)
    samples = []
    growths = {}
    for n in orders:
        levels = {}
        for rho in rhos:
            ratio = growth_check(rho_function(rho, params.p, params.alpha), params, n, grid, rule)
            levels[rho] = [ratio]
            samples.append({"label": f"n={n}", "parameter": rho, "value": ratio})
        growths[n] = family_growth(levels)
    worst = max(growths.values())
    return _report(
        "growth", {**params.to_dict(), "orders": list(orders), "rhos": list(rhos)}, samples, "family_growth",
        worst, STABILITY_FACTOR, worst <= STABILITY_FACTOR, per_order=growths, meta=_meta(config),
    )


DILATION_POINTS = (0.3, 0.6 + 0.2j, 0.9)


def check_dilation(
    params: TentParams | None = None,
    config: Config | None = None,
    points=DILATION_POINTS,
    random_count: int = 16,
    rhos=(0.5, 0.9, 0.95, 0.99),
):
    """``sup_w ||f(conj(w) .)|| / ||f||`` over a 20-function family."""
    config = config or Config()
    params = params or TentParams()
    prm = {**params.to_dict(), "points": [complex(w) for w in points]}
    if params.alpha <= -1 or params.t <= 1.0 / params.p:
        return rejected("dilation", prm, "the dilation bound needs alpha > -1 and t > 1/p")
    grid, rule = _grid(config), _rule(config)
    rng = _rng(config, 10)
    fam = [(0.0, random_series(rng, 16)) for _ in range(random_count)]
    fam += [(rho, rho_function(rho, params.p, params.alpha)) for rho in rhos]
    levels: dict = {}
    samples = []
    for level, f in fam:
        base = tent_norm(f, params, grid, rule).value
        ratio = max(tent_norm(dilate(f, np.conj(w)), params, grid, rule).value for w in points) / base
        levels.setdefault(level, []).append(ratio)
        samples.append({"label": "dilation", "parameter": level, "value": ratio})
    growth = family_growth(levels)
    return _report(
        "dilation", prm, samples, "family_growth", growth, STABILITY_FACTOR, growth <= STABILITY_FACTOR,
        max_ratio=max(max(v) for v in levels.values()), meta=_meta(config),
    )


def check_half_segment(
    params: TentParams | None = None, config: Config | None = None, random_count: int = 8, rhos=(0.5, 0.9, 0.95, 0.99)
):
    """Tent integral of ``z -> int_0^{z/2} |f(z-s)| |ds|`` over ``||f||^p``."""
    config = config or Config()
    params = params or TentParams()
    grid, rule = _grid(config), _rule(config)
    rng = _rng(config, 11)
    fam = [(0.0, random_series(rng, 16)) for _ in range(random_count)]
    fam += [(rho, rho_function(rho, params.p, params.alpha)) for rho in rhos]
    levels: dict = {}
    samples = []
    for level, f in fam:
        base = tent_norm(f, params, grid, rule).value
        ratio = tent_integral(half_segment_sampler(f, params.p), params, grid, rule).value / base**params.p
        levels.setdefault(level, []).append(ratio)
        samples.append({"label": "half_segment", "parameter": level, "value": ratio})
    growth = family_growth(levels)
    regime = "critical" if abs(1.0 - params.growth_exponent) < 1e-12 else "noncritical"
    return _report(
        "half_segment", {**params.to_dict(), "regime": regime}, samples, "family_growth", growth,
        STABILITY_FACTOR, growth <= STABILITY_FACTOR, meta=_meta(config),
    )


# ------------------------------------------------------------------ registry


def _cesaro_entry(check, measure: str, p: float, alpha: float):
    return lambda config: check(MeasureOn01.parse(measure), TentParams(p, alpha), config=config)


SCENARIOS: dict = {
    "duhamel_algebra": lambda config: check_duhamel_algebra(config),
    "split_identity": lambda config: check_split_identity(config),
    "cross_forms": lambda config: check_cross_forms(config),
    "carleson_constants": lambda config: check_carleson_constants(config),
    "carleson_equivalence": lambda config: check_carleson_equivalence(config),
    "vanishing_equivalence": lambda config: check_vanishing_equivalence(config),
    "cesaro_bounded": _cesaro_entry(check_cesaro_bounded, "lebesgue", 2.0, 0.0),
    "cesaro_compact": _cesaro_entry(check_cesaro_compact, "beta:1", 2.0, 0.0),
    "hadamard_bergman": lambda config: check_hadamard_bergman(TentParams(2.0, 0.0), config),
    "banach_algebra": lambda config: check_banach_algebra(TentParams(2.0, 0.0), config),
    "young": lambda config: check_young(2.0, 2.0, 0.0, 0.0, config),
    "radial_integral": lambda config: check_radial_integral(),
    "circle_integral": lambda config: check_circle_integral(),
    "forelli_rudin": lambda config: check_forelli_rudin(),
    "norm_sanity": lambda config: check_norm_sanity(config),
    "tent_refinement": lambda config: check_tent_refinement(TentParams(2.0, 0.0), config),
    "kernel_t_equivalence": lambda config: check_kernel_t_equivalence(TentParams(2.0, 0.0), config),
    "derivative_norm": lambda config: check_derivative_norm(TentParams(2.0, 0.0), config),
    "growth": lambda config: check_growth(TentParams(2.0, 0.0), config),
    "dilation": lambda config: check_dilation(TentParams(2.0, 0.0), config),
    "half_segment": lambda config: check_half_segment(TentParams(2.0, 0.0), config),
}

#: Statements of the theory and the scenarios that exercise them.
STATEMENTS: dict = {
    "Hardy, Bergman and tent norm definitions": ("norm_sanity", "tent_refinement"),
    "kernel characterization of the tent norm for every t": ("kernel_t_equivalence",),
    "Forelli-Rudin type estimate": ("forelli_rudin",),
    "dilation bound": ("dilation",),
    "Hadamard-Bergman convolution bound": ("hadamard_bergman", "cross_forms"),
    "half-segment Duhamel identity": ("split_identity",),
    "pointwise growth estimate": ("growth",),
    "half-segment integral bound": ("half_segment",),
    "Duhamel Banach algebra": ("duhamel_algebra", "banach_algebra"),
    "Young-type bound for the Duhamel operator": ("young",),
    "Carleson integral characterization": ("carleson_equivalence", "carleson_constants"),
    "vanishing Carleson integral characterization": ("vanishing_equivalence",),
    "circle integral estimate": ("circle_integral",),
    "radial integral estimate": ("radial_integral",),
    "derivative characterization": ("derivative_norm",),
    "compactness through test functions": ("cesaro_compact",),
    "Cesaro-like boundedness iff Carleson": ("cesaro_bounded", "cross_forms"),
    "Cesaro-like compactness iff vanishing Carleson": ("cesaro_compact",),
}


def default_catalog() -> list:
    """Every registered scenario once, plus both directions of the Cesaro-like statements."""
    cat = list(SCENARIOS)
    cat += [
        ("cesaro_bounded", {"measure": "beta:-0.5"}),
        ("cesaro_bounded", {"measure": "atom:0.5"}),
        ("cesaro_compact", {"measure": "lebesgue"}),
        ("cesaro_compact", {"measure": "atom:0.5"}),
        ("young", {"p": 1.0, "q": 1.0, "alpha": 0.0, "beta": 0.0}),
    ]
    return cat


def coverage_gaps(catalog=None) -> list:
    """Statements without any scenario in ``catalog``."""
    ids = {c if isinstance(c, str) else c[0] for c in (default_catalog() if catalog is None else catalog)}
    return [name for name, sids in STATEMENTS.items() if not ids.intersection(sids)]


def _run_entry(sid: str, kwargs: dict, config: Config) -> VerificationReport:
    if sid not in SCENARIOS:
        return rejected(sid, kwargs, f"unknown scenario {sid!r}")
    if not kwargs:
        return SCENARIOS[sid](config)
    if sid in ("cesaro_bounded", "cesaro_compact"):
        check = check_cesaro_bounded if sid == "cesaro_bounded" else check_cesaro_compact
        mu = MeasureOn01.parse(kwargs.get("measure", "lebesgue"))
        params = TentParams(kwargs.get("p", 2.0), kwargs.get("alpha", 0.0), kwargs.get("t"))
        return check(mu, params, kwargs.get("rho_grid", RHO_GRID), config)
    if sid == "young":
        return check_young(config=config, **kwargs)
    raise ValueError(f"scenario {sid!r} takes no parameters")


def run_all(catalog=None, config: Config | None = None) -> list:
    """Run ``catalog`` in order; invalid entries become rejected reports."""
    config = config or Config()
    catalog = default_catalog() if catalog is None else catalog
    reports = []
    for entry in catalog:
        sid, kwargs = (entry, {}) if isinstance(entry, str) else (entry[0], dict(entry[1]))
        try:
            reports.append(_run_entry(sid, kwargs, config))
        except ValueError as exc:
            reports.append(rejected(sid, kwargs, str(exc)))
    return reports


def exit_status(reports) -> int:
    return 0 if all(r.passed for r in reports) else 1
