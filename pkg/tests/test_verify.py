import csv
import io
import json
import math

import pytest

from tentspace.config import Config
from tentspace.verify import (
    CSV_COLUMNS,
    SCENARIOS,
    STATEMENTS,
    VerificationReport,
    band,
    check_forelli_rudin,
    check_young,
    coverage_gaps,
    default_catalog,
    exit_status,
    family_growth,
    forelli_rudin_regime,
    run_all,
    young_case,
)

FAST = ["duhamel_algebra", "split_identity", "carleson_constants", "radial_integral"]


class TestHelpers:
    def test_band(self):
        assert band([0.5, 1.0, 2.0]) == 2.0
        assert band([0.1, 0.9]) == 10.0
        assert band([1.0]) == 1.0

    def test_family_growth(self):
        assert family_growth({0.5: [1.0], 0.9: [2.0], 0.99: [2.0]}) == 1.0
        assert family_growth({0.5: [1.0], 0.9: [1.5], 0.99: [4.5]}) == 3.0
        # a drop at the last level does not count as growth
        assert family_growth({0.5: [3.0], 0.9: [1.0]}) == 1.0
        with pytest.raises(ValueError):
            family_growth({0.5: [1.0]})

    def test_young_case(self):
        assert young_case(1.0, 1.0, 0.0, 0.0) == "i"
        assert young_case(2.0, 2.0, 0.0, 0.0) == "ii"
        assert young_case(1.0, 2.0, 0.0, 0.0) == "ii"
        assert young_case(3.0, 1.0, 0.0, 0.0) is None

    def test_forelli_rudin_regimes(self):
        assert forelli_rudin_regime(1.0, 1.0, 2.5) == 1
        assert forelli_rudin_regime(0.0, 3.0, 1.0) == 2
        assert forelli_rudin_regime(0.0, 3.0, 3.0) == 3
        with pytest.raises(ValueError, match="boundary"):
            forelli_rudin_regime(1.0, 3.0, 1.0)
        with pytest.raises(ValueError, match="symmetry"):
            forelli_rudin_regime(0.0, 1.0, 3.0)


class TestCoverage:
    def test_no_gaps(self):
        assert coverage_gaps() == []

    def test_gaps_detected(self):
        gaps = coverage_gaps(["duhamel_algebra"])
        assert "Young-type bound for the Duhamel operator" in gaps

    def test_statements_reference_scenarios(self):
        for sids in STATEMENTS.values():
            assert set(sids) <= set(SCENARIOS)

    def test_catalog_ids_known(self):
        for entry in default_catalog():
            sid = entry if isinstance(entry, str) else entry[0]
            assert sid in SCENARIOS


class TestRunAll:
    def test_empty_catalog(self):
        assert run_all([]) == []
        assert exit_status([]) == 0

    def test_unknown_scenario_rejected(self):
        [r] = run_all(["nope"])
        assert r.verdict == "rejected" and "nope" in r.reason
        assert exit_status([r]) == 1

    def test_params_on_fixed_scenario_rejected(self):
        [r] = run_all([("radial_integral", {"p": 3.0})])
        assert r.verdict == "rejected"

    def test_young_outside_hypotheses_rejected(self):
        r = check_young(p=3.0, q=1.0, alpha=0.0, beta=0.0)
        assert r.verdict == "rejected" and "neither hypothesis" in r.reason
        [r2] = run_all([("young", {"p": 3.0, "q": 1.0, "alpha": 0.0, "beta": 0.0})])
        assert r2.verdict == "rejected"

    def test_young_bad_exponent_rejected(self):
        assert check_young(p=0.5).verdict == "rejected"

    def test_bad_measure_rejected(self):
        [r] = run_all([("cesaro_bounded", {"measure": "atom:2"})])
        assert r.verdict == "rejected"

    def test_symmetric_forelli_rudin_rejected(self):
        with pytest.raises(ValueError):
            check_forelli_rudin(params=((0.0, 1.0, 3.0),))
        with pytest.raises(ValueError):
            check_forelli_rudin(params=((0.0, 1.0, 1.0),))

    def test_fast_scenarios_pass(self):
        reports = run_all(FAST)
        assert [r.scenario_id for r in reports] == FAST
        assert all(r.passed for r in reports), [(r.scenario_id, r.reason) for r in reports]
        assert exit_status(reports) == 0

    def test_deterministic(self):
        a = [r.to_dict() for r in run_all(FAST, Config(seed=7))]
        b = [r.to_dict() for r in run_all(FAST, Config(seed=7))]
        assert a == b


class TestSerialization:
    @pytest.fixture(scope="class")
    @classmethod
    def reports(cls):
        return run_all(FAST + ["nope"])

    def test_json_round_trip(self, reports):
        for r in reports:
            text = r.to_json(allow_nan=False)
            back = VerificationReport.from_dict(json.loads(text))
            assert back.to_dict() == r.to_dict()

    def test_rejected_nan_serialized(self, reports):
        d = reports[-1].to_dict()
        assert d["value"] == "nan"
        back = VerificationReport.from_dict(json.loads(json.dumps(d)))
        assert math.isnan(back.value) and math.isnan(back.tolerance)

    def test_csv(self, reports):
        for r in reports:
            rows = list(csv.DictReader(io.StringIO(r.to_csv())))
            assert len(rows) == len(r.samples)
            if rows:
                assert tuple(rows[0]) == CSV_COLUMNS
                assert all(row["scenario_id"] == r.scenario_id for row in rows)
