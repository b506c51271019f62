"""Acceptance criteria at their stated tolerances.

Each test prints one ``PASS``/``FAIL`` line for its criterion and the
lines are repeated in the terminal summary.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from tentspace.config import Config
from tentspace.measures import MeasureOn01, carleson_analyze, measure_catalog
from tentspace.norms import TentParams, bergman_norm, hardy_norm
from tentspace.operators import atom_image, cesaro_like, probe_points
from tentspace.series import TaylorSeries, duhamel, evaluate, random_series
from tentspace.verify import (
    check_banach_algebra,
    check_carleson_constants,
    check_carleson_equivalence,
    check_cesaro_bounded,
    check_cesaro_compact,
    check_circle_integral,
    check_cross_forms,
    check_dilation,
    check_duhamel_algebra,
    check_forelli_rudin,
    check_growth,
    check_hadamard_bergman,
    check_norm_sanity,
    check_radial_integral,
    check_split_identity,
    check_tent_refinement,
    check_vanishing_equivalence,
    check_young,
    radial_integral,
)

pytestmark = pytest.mark.acceptance

CONFIG = Config()
TENT_PARAMS = [TentParams(1.0, 0.0), TentParams(2.0, 0.0), TentParams(2.0, -0.5)]


class Criterion:
    """Collects sub-checks and emits one line for the criterion."""

    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.failures: list = []
        self.notes: list = []

    def check(self, ok: bool, what: str):
        self.notes.append(what)
        if not ok:
            self.failures.append(what)

    def report(self, r, what: str | None = None):
        what = what or f"{r.scenario_id} {r.statistic}={r.value:.4g} (tol {r.tolerance:.3g})"
        self.check(r.passed, what + ("" if r.passed else f" [{r.verdict}: {r.reason}]"))
        return r


@contextmanager
def criterion(number: int, title: str, budget: float):
    c = Criterion(number, title, budget)
    start = time.perf_counter()
    yield c
    elapsed = time.perf_counter() - start
    c.check(elapsed < budget, f"runtime {elapsed:.1f}s (budget {budget:.0f}s)")
    status = "FAIL" if c.failures else "PASS"
    line = f"{status} criterion {number}: {title}: " + "; ".join(c.failures or c.notes)
    print(line)
    ACCEPTANCE_LINES.append(f"{number:02d} {line}")
    assert not c.failures, line


def test_criterion_1_duhamel_algebra():
    with criterion(1, "Duhamel product exact algebra", 1.0) as c:
        r = c.report(check_duhamel_algebra(CONFIG, triples=50, max_power=12))
        d = r.details
        c.check(d["monomial"] <= 1e-12, f"monomial law {d['monomial']:.2g}")
        c.check(d["commutativity"] <= 1e-12, f"commutativity {d['commutativity']:.2g}")
        c.check(d["unit"] <= 1e-12, f"unit {d['unit']:.2g}")
        c.check(d["associativity"] <= 1e-10, f"associativity {d['associativity']:.2g}")
        # independent oracle: exact rational coefficient m! n! / (m+n)!
        worst = 0.0
        for m in range(13):
            for n in range(13):
                coeff = duhamel(TaylorSeries.monomial(m), TaylorSeries.monomial(n)).coeffs[m + n]
                exact = Fraction(math.factorial(m) * math.factorial(n), math.factorial(m + n))
                worst = max(worst, abs(coeff - float(exact)))
        c.check(worst <= 1e-12, f"rational oracle {worst:.2g}")


def test_criterion_2_split_identity():
    with criterion(2, "half-segment Duhamel identity", 5.0) as c:
        r = c.report(check_split_identity(CONFIG, probes=30))
        c.check(len(r.samples) == 30, f"{len(r.samples)} probes")


def test_criterion_3_cross_forms():
    with criterion(3, "coefficient and integral operator forms agree", 30.0) as c:
        r = c.report(check_cross_forms(CONFIG))
        c.check(CONFIG.degree == 64 and max(CONFIG.probe_radii) <= 0.8, "N=64, probe radii <= 0.8")
        c.check(r.value <= 1e-6, f"max residual {r.value:.2g}")
        c.check(r.details["atom_residual"] <= 1e-10, f"atom closed form {r.details['atom_residual']:.2g}")
        # independent oracle for one atom, evaluated through the public API
        z = probe_points(CONFIG.probe_radii)
        f = random_series(np.random.default_rng(3), 64)
        gap = np.max(np.abs(evaluate(cesaro_like(MeasureOn01.atom(0.5), f).output, z) - atom_image(f, 0.5, z)))
        c.check(gap <= 1e-10, f"atom:0.5 direct {gap:.2g}")


def test_criterion_4_carleson_analytics():
    with criterion(4, "Carleson constants and integral characterizations", 10.0) as c:
        c.report(check_carleson_constants(CONFIG))
        lebesgue = carleson_analyze(MeasureOn01.lebesgue()).constant
        c.check(abs(lebesgue - 1.0) <= 1e-10, f"Lebesgue constant {lebesgue!r}")
        atom = carleson_analyze(MeasureOn01.atom(0.75), s=1.5).constant
        c.check(atom == 0.25**-1.5, f"atom constant {atom!r}")
        catalog = measure_catalog()
        c.check(len(catalog) >= 8, f"{len(catalog)} measures")
        c.report(check_carleson_equivalence(CONFIG, catalog))
        c.report(check_vanishing_equivalence(CONFIG, catalog))


def test_criterion_5_cesaro_bounded_iff_carleson():
    with criterion(5, "Cesaro-like boundedness in both directions", 180.0) as c:
        for params in TENT_PARAMS:
            for name in ("lebesgue", "atom:0.5"):
                r = check_cesaro_bounded(MeasureOn01.parse(name), params, config=CONFIG)
                c.report(r, f"{name} p={params.p:g} alpha={params.alpha:g} growth={r.value:.3g}")
            r = check_cesaro_bounded(MeasureOn01.beta(-0.5), params, config=CONFIG)
            c.report(r, f"beta:-0.5 p={params.p:g} alpha={params.alpha:g} slope={r.value:.3f} (want -0.5 +- 0.15)")


def test_criterion_6_cesaro_compact_proxy():
    with criterion(6, "Cesaro-like compactness proxy", 120.0) as c:
        for name in ("beta:1", "atom:0.5"):
            r = check_cesaro_compact(MeasureOn01.parse(name), TentParams(2.0, 0.0), config=CONFIG)
            c.report(r, f"{name} decay exponent {r.value:.3f}")
        r = check_cesaro_compact(MeasureOn01.lebesgue(), TentParams(2.0, 0.0), config=CONFIG)
        c.report(r, f"lebesgue floor {r.value:.3f}")


def test_criterion_7_submultiplicativity():
    with criterion(7, "Hadamard-Bergman, Young-type and Banach algebra bounds", 180.0) as c:
        for params in TENT_PARAMS:
            r = check_hadamard_bergman(params, CONFIG)
            c.report(r, f"K_g p={params.p:g} alpha={params.alpha:g} growth={r.value:.3g}")
            c.check(max(r.params["rhos"]) >= 0.95, "rho up to 0.95")
        for p, q in ((1.0, 1.0), (1.0, 2.0), (2.0, 2.0)):
            r = check_young(p, q, 0.0, 0.0, CONFIG)
            c.report(r, f"Young case {r.params.get('case')} p={p:g} q={q:g} growth={r.value:.3g}")
        r = check_banach_algebra(TentParams(2.0, 0.0), CONFIG)
        c.report(r, f"Banach algebra growth={r.value:.3g}")


def test_criterion_8_integral_bands():
    with criterion(8, "radial, circle and weighted kernel integral bands", 60.0) as c:
        r = c.report(check_radial_integral(rhos=(0.0, 0.5, 0.9, 0.99, 0.999), k_max=10.0))
        c.check(r.details["exact_case_error"] <= 1e-8, f"exact case {r.details['exact_case_error']:.2g}")
        exact = max(abs(radial_integral(0.0, 1.0, rho) - 1.0 / (1.0 - rho)) * (1.0 - rho) for rho in (0.9, 0.999))
        c.check(exact <= 1e-8, f"1/(1-rho) direct {exact:.2g}")
        c.report(check_circle_integral(k_max=20.0))
        r = c.report(check_forelli_rudin(k_max=20.0))
        c.check(set(r.details["upper_bands"]) == {1, 2, 3}, "all three regimes")


def test_criterion_9_norm_sanity():
    with criterion(9, "norm definitions, refinement, growth and dilation", 60.0) as c:
        c.report(check_norm_sanity(CONFIG, polynomials=20))
        berg = max(abs(bergman_norm(TaylorSeries.monomial(n), 2.0) - 1 / math.sqrt(n + 1)) for n in (0, 5, 50))
        c.check(berg <= 1e-8, f"A^2 monomials {berg:.2g}")
        f = random_series(np.random.default_rng(9), 20)
        parseval = abs(hardy_norm(f, 2.0) - np.linalg.norm(f.coeffs))
        c.check(parseval <= 1e-8, f"H^2 Parseval {parseval:.2g}")
        c.report(check_tent_refinement(TentParams(2.0, 0.0), CONFIG))
        c.report(check_growth(TentParams(2.0, 0.0), CONFIG))
        c.report(check_dilation(TentParams(2.0, 0.0), CONFIG))
