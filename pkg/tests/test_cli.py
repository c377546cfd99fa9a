"""Command-line interface tests: flags, payloads, exit codes, files."""

import json
import math
from pathlib import Path

import pytest

from counterbound.cli import build_parser, main

DATA = Path(__file__).resolve().parent.parent / "data"

OBS_CASE = {"pxy": 0.108, "pxy_": 0.132, "px_y": 0.084, "px_y_": 0.676}


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def obs_path(tmp_path):
    path = tmp_path / "obs.json"
    path.write_text(json.dumps(OBS_CASE))
    return str(path)


class TestSampleData:
    """The shipped sample inputs stay in sync with the worked examples."""

    def test_observed_case(self):
        doc = json.loads((DATA / "observed_case.json").read_text())
        assert doc == OBS_CASE

    def test_proxy_case_margins(self):
        doc = json.loads((DATA / "proxy_case.json").read_text())
        assert sum(doc.values()) == pytest.approx(1.0, abs=1e-12)
        assert doc["pxyv"] == pytest.approx(0.75 * 0.22 * 0.42, abs=1e-15)

    def test_scm_files_parse(self, capsys):
        for name in ("scm_case.json", "scm_proxy_case.json"):
            doc = json.loads((DATA / name).read_text())
            assert doc["p_u"] == 0.9


class TestBoundsCommand:
    def test_envelope_only(self, obs_path, capsys):
        code, out, _ = run_cli(["bounds", "--obs", obs_path], capsys)
        assert code == 0
        payload = json.loads(out)
        benefit = payload["envelope"]["benefit"]["interval"]
        assert benefit["lo"] == 0.0
        assert benefit["hi"] == pytest.approx(0.784, abs=1e-12)
        assert payload["params"] is None
        assert "sensitivity" not in payload
        assert payload["possible_regions"]["m_x"]["hi"] == pytest.approx(0.45)

    def test_with_params_single_target(self, obs_path, capsys):
        code, out, _ = run_cli(
            ["bounds", "--obs", obs_path, "--params", "0.4,0.6,0.1,0.3",
             "--target", "benefit"], capsys)
        assert code == 0
        payload = json.loads(out)
        interval = payload["sensitivity"]["benefit"]["interval"]
        assert interval["lo"] == pytest.approx(0.256, abs=1e-12)
        assert interval["hi"] == pytest.approx(0.564, abs=1e-12)
        assert "harm" not in payload["sensitivity"]
        assert payload["ate"]["lo"] == pytest.approx(0.256, abs=1e-12)
        assert payload["pn_ps"]["pn"]["hi"] == 1.0

    def test_out_flag_writes_file(self, obs_path, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            ["bounds", "--obs", obs_path, "--out", str(target)], capsys)
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["observed"] == OBS_CASE

    def test_not_normalized_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(dict(OBS_CASE, pxy=0.2)))
        code, _, err = run_cli(["bounds", "--obs", str(bad)], capsys)
        assert code == 2
        assert "NotNormalized" in err

    def test_unknown_field_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(dict(OBS_CASE, extra=0.0)))
        code, _, err = run_cli(["bounds", "--obs", str(bad)], capsys)
        assert code == 2
        assert "SchemaError" in err and "extra" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run_cli(["bounds", "--obs", "/no/such.json"], capsys)
        assert code == 2
        assert "SchemaError" in err and "/no/such.json" in err

    def test_params_outside_region_exit_2(self, obs_path, capsys):
        code, _, err = run_cli(
            ["bounds", "--obs", obs_path, "--params", "0.5,0.6,0.1,0.3"],
            capsys)
        assert code == 2
        assert "ParamsOutsidePossibleRegion" in err and "m_x" in err

    def test_degenerate_margin_exits_3(self, tmp_path, capsys):
        empty_arm = tmp_path / "empty.json"
        empty_arm.write_text(json.dumps(
            {"pxy": 0.0, "pxy_": 0.0, "px_y": 0.3, "px_y_": 0.7}))
        code, _, err = run_cli(["bounds", "--obs", str(empty_arm)], capsys)
        assert code == 3
        assert "DegenerateMargin" in err

    def test_malformed_params_exit_2(self, obs_path, capsys):
        code, _, err = run_cli(
            ["bounds", "--obs", obs_path, "--params", "0.4,0.6"], capsys)
        assert code == 2
        assert "--params" in err


class TestProxyCommand:
    def test_reported_joint_golden(self, capsys):
        code, out, _ = run_cli(
            ["proxy", "--joint", str(DATA / "proxy_case.json")], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["benefit"]["rules_fired"] == [
            "tighter2", "tighter4", "tighter6", "tighter8"]
        assert payload["benefit"]["interval"]["hi"] == pytest.approx(0.4425, abs=1e-12)
        assert payload["harm"]["rules_fired"] == [
            "tighter1", "tighter3", "tighter5", "tighter7"]
        assert payload["collapsed"] is False
        assert payload["effects"]["ate_obs"] == pytest.approx(0.335, abs=1e-12)
        assert payload["condition_free"]["benefit"]["interval"]["hi"] == \
            pytest.approx(0.4425, abs=1e-12)
        assert payload["observed"]["pxy"] == pytest.approx(0.108825, abs=1e-15)

    def test_modified_joint_golden(self, capsys):
        code, out, _ = run_cli(
            ["proxy", "--joint", str(DATA / "proxy_case_modified.json")],
            capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["benefit"]["rules_fired"] == ["tighter6", "tighter7"]
        assert payload["benefit"]["interval"]["lo"] == pytest.approx(0.013375, abs=1e-12)
        assert payload["benefit"]["interval"]["hi"] == pytest.approx(0.4425, abs=1e-12)

    def test_uninformative_proxy_flags_collapse(self, tmp_path, capsys):
        cells = {}
        for xy, mass in (("pxy", 0.108), ("pxy_", 0.132),
                         ("px_y", 0.084), ("px_y_", 0.676)):
            cells[xy + "v"] = mass * 0.5
            cells[xy + "v_"] = mass * 0.5
        joint = tmp_path / "flat.json"
        joint.write_text(json.dumps(cells))
        code, out, _ = run_cli(["proxy", "--joint", str(joint)], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["collapsed"] is True
        assert payload["benefit"]["rules_fired"] == []
        assert payload["benefit"]["interval"]["hi"] == pytest.approx(0.784, abs=1e-12)

    def test_bad_joint_exits_2(self, tmp_path, capsys):
        joint = tmp_path / "bad.json"
        joint.write_text(json.dumps({"pxyv": 1.5}))
        code, _, err = run_cli(["proxy", "--joint", str(joint)], capsys)
        assert code == 2
        assert "SchemaError" in err


class TestSweepCommand:
    def test_csv_spot_cell_and_sidecar(self, obs_path, tmp_path, capsys):
        out_path = tmp_path / "grid.csv"
        code, out, _ = run_cli(
            ["sweep", "--obs", obs_path, "--target", "benefit",
             "--side", "lower", "--axes", "m_x,M_xp", "--res", "101",
             "--out", str(out_path)], capsys)
        assert code == 0
        assert out == ""
        rows = out_path.read_text().splitlines()
        assert rows[0] == "axis1,axis2,value,valid"
        assert len(rows) == 1 + 101 * 101
        hits = [row for row in rows[1:]
                if abs(float(row.split(",")[0]) - 0.4) < 1e-9
                and abs(float(row.split(",")[1]) - 0.3) < 1e-9]
        assert len(hits) == 1
        _, _, value, valid = hits[0].split(",")
        assert float(value) == pytest.approx(0.256, abs=1e-12)
        assert valid == "1"

        sidecar = tmp_path / "grid.thresholds.json"
        lines = json.loads(sidecar.read_text())["lines"]
        assert len(lines) == 4
        assert {line["param"] for line in lines} == {"m_x", "M_xp"}
        assert {line["label"] for line in lines} == {"p(y|x)", "p(y|x')"}

    def test_json_format(self, obs_path, capsys):
        code, out, _ = run_cli(
            ["sweep", "--obs", obs_path, "--target", "ate",
             "--side", "upper", "--axes", "M_x,m_xp", "--res", "11",
             "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["resolution"] == 11
        assert len(payload["values"]) == 11
        assert len(payload["thresholds"]) == 4
        flat = [v for row in payload["values"] for v in row]
        assert any(v is None for v in flat)

    def test_single_axis_exits_2(self, obs_path, capsys):
        code, _, err = run_cli(
            ["sweep", "--obs", obs_path, "--target", "benefit",
             "--side", "lower", "--axes", "m_x"], capsys)
        assert code == 2
        assert "--axes" in err

    def test_axis_also_fixed_exits_2(self, obs_path, capsys):
        code, _, err = run_cli(
            ["sweep", "--obs", obs_path, "--target", "benefit",
             "--side", "lower", "--axes", "m_x,M_xp",
             "--fixed", "m_x=0.2"], capsys)
        assert code == 2
        assert "SchemaError" in err


class TestSimulateCommand:
    def test_summary_and_records(self, tmp_path, capsys):
        records = tmp_path / "records.csv"
        code, out, _ = run_cli(
            ["simulate", "--n", "400", "--seed", "7",
             "--records", str(records)], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 400
        assert payload["seed"] == 7
        assert payload["sampler"] == "uniform-iid"
        assert 0.0 < payload["usefulness_rate"] < 1.0
        assert math.isclose(
            payload["avg_lower_increase"] + payload["avg_upper_decrease"],
            payload["avg_gap_decrease"], abs_tol=1e-12)
        lines = records.read_text().splitlines()
        assert lines[0] == "a,b,c,d,useful"
        assert len(lines) == 401

    def test_deterministic_across_runs(self, capsys):
        code1, out1, _ = run_cli(["simulate", "--n", "250", "--seed", "9"], capsys)
        code2, out2, _ = run_cli(["simulate", "--n", "250", "--seed", "9"], capsys)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_zero_replicates_exit_2(self, capsys):
        code, _, err = run_cli(["simulate", "--n", "0"], capsys)
        assert code == 2
        assert "SchemaError" in err


class TestSocialCommand:
    def test_refined_golden(self, capsys):
        code, out, _ = run_cli(
            ["social", "--benefit", "0.15,0.65", "--harm", "0,0.18",
             "--ate", "0.15,0.55", "--w", "1,1.5"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["naive"]["lo"] == pytest.approx(-0.12, abs=1e-12)
        assert payload["naive"]["hi"] == pytest.approx(0.65, abs=1e-12)
        refined = payload["refined"]
        assert refined["interval"]["lo"] == pytest.approx(0.06, abs=1e-12)
        assert refined["interval"]["hi"] == pytest.approx(0.55, abs=1e-12)
        assert refined["argmin"]["benefit"] == pytest.approx(0.33, abs=1e-12)
        assert refined["argmin"]["harm"] == pytest.approx(0.18, abs=1e-12)
        assert refined["argmax"] == {"benefit": 0.55, "harm": 0.0}
        region = [(p["harm"], p["benefit"]) for p in payload["compliance_region"]]
        assert any(abs(h - 0.18) < 1e-12 and abs(b - 0.33) < 1e-12
                   for h, b in region)

    def test_naive_only_without_ate(self, capsys):
        code, out, _ = run_cli(
            ["social", "--benefit", "0,0.784", "--harm", "0,0.216",
             "--w", "1,1.5"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["refined"] is None
        assert payload["compliance_region"] is None
        assert payload["naive"]["lo"] == pytest.approx(-0.324, abs=1e-12)
        assert payload["naive"]["hi"] == pytest.approx(0.784, abs=1e-12)

    def test_infeasible_band_exits_2(self, capsys):
        code, _, err = run_cli(
            ["social", "--benefit", "0.15,0.65", "--harm", "0,0.18",
             "--ate", "0.9,1.0", "--w", "1,1.5"], capsys)
        assert code == 2
        assert "InfeasibleRegion" in err

    def test_negative_weight_exits_2(self, capsys):
        code, _, err = run_cli(
            ["social", "--benefit", "0,1", "--harm", "0,1", "--w=-1,1"],
            capsys)
        assert code == 2
        assert "SchemaError" in err and "w_benefit" in err


class TestParser:
    def test_all_subcommands_registered(self):
        parser = build_parser()
        actions = [a for a in parser._actions
                   if isinstance(a, type(parser._subparsers._group_actions[0]))]
        names = set(actions[0].choices)
        assert names == {"bounds", "proxy", "sweep", "simulate", "social",
                         "serve"}

    def test_unknown_flag_exits_2(self, obs_path, capsys):
        with pytest.raises(SystemExit) as err:
            main(["bounds", "--obs", obs_path, "--bogus"])
        assert err.value.code == 2
