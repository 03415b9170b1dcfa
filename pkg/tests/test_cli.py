import json
import math

import pytest
from click.testing import CliRunner

from mhpref.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def mh_file(tmp_path):
    path = tmp_path / "mh.json"
    path.write_text(json.dumps({
        "output_space": [0.0, 1.0],
        "oracle_kind": "moral_hazard",
        "utility": {"kind": "linear", "reference": [0.0, 1.0]},
        "cost": {"form": "quadratic1d", "alpha": 1.0, "beta": 0.0},
    }))
    return str(path)


@pytest.fixture
def mal_file(tmp_path):
    path = tmp_path / "mal.json"
    path.write_text(json.dumps({
        "output_space": [0.0, 1.0],
        "oracle_kind": "malevolent",
        "utility": {"kind": "linear", "reference": [0.0, 1.0]},
        "cost": {"form": "quadratic1d", "alpha": 1.0, "beta": 0.5},
    }))
    return str(path)


@pytest.fixture
def contract_file(tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"payoffs": [0.0, 1.0]}))
    return str(path)


class TestEval:
    def test_value_and_ce(self, runner, mh_file, contract_file):
        res = runner.invoke(main, ["eval", "--model", mh_file, "--contract", contract_file])
        assert res.exit_code == 0
        assert "value: 0.25" in res.output
        assert "certainty equivalent: 0.25" in res.output
        assert "[0.5, 0.5]" in res.output

    def test_json_report(self, runner, mh_file, contract_file):
        res = runner.invoke(main, ["eval", "--model", mh_file, "--contract", contract_file,
                                   "--json", "-"])
        report = json.loads(res.output)
        assert report["results"]["value"] == 0.25
        assert report["exit_code"] == 0

    def test_bad_model_rejected_with_path(self, runner, tmp_path, contract_file):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"output_space": [0.0, 1.0],
                                   "utility": {"kind": "nope"},
                                   "cost": {"form": "quadratic1d", "alpha": 1, "beta": 0}}))
        res = runner.invoke(main, ["eval", "--model", str(bad), "--contract", contract_file])
        assert res.exit_code == 2
        assert "model.utility" in res.output

    def test_invalid_json_line_diagnostic(self, runner, tmp_path, contract_file):
        bad = tmp_path / "syntax.json"
        bad.write_text("{\n  broken\n}")
        res = runner.invoke(main, ["eval", "--model", str(bad), "--contract", contract_file])
        assert res.exit_code == 2
        assert "line 2" in res.output


class TestFosd:
    def test_holds(self, runner):
        res = runner.invoke(main, ["fosd", "--p", "0.2,0.8", "--q", "0.5,0.5"])
        assert res.exit_code == 0
        assert "holds" in res.output

    def test_fails(self, runner):
        res = runner.invoke(main, ["fosd", "--p", "0.5,0.5", "--q", "0.2,0.8"])
        assert res.exit_code == 1

    def test_bad_vector(self, runner):
        res = runner.invoke(main, ["fosd", "--p", "0.5,0.9", "--q", "0.2,0.8"])
        assert res.exit_code == 2


class TestFigures:
    def test_alpha_sweep_matches_formula(self, runner):
        res = runner.invoke(main, ["figures", "--alpha-sweep", "1.0:0.1:5", "--beta", "0.45",
                                   "--points", "101"])
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        header = lines[0].split(",")
        assert header[0] == "p" and len(header) == 6
        alphas = [1.0, 1.1, 1.2, 1.3, 1.4]
        for row in lines[1:]:
            vals = [float(x) for x in row.split(",")]
            for a, got in zip(alphas, vals[1:]):
                assert abs(got - a * (vals[0] - 0.45) ** 2) <= 1e-12

    def test_beta_sweep(self, runner):
        res = runner.invoke(main, ["figures", "--beta-sweep", "0.3:0.2:3", "--alpha", "2.0",
                                   "--points", "11"])
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        assert len(lines) == 12

    def test_requires_exactly_one_sweep(self, runner):
        res = runner.invoke(main, ["figures"])
        assert res.exit_code == 2
        res = runner.invoke(main, ["figures", "--alpha-sweep", "1:1:2", "--beta-sweep", "0:0.1:2"])
        assert res.exit_code == 2


class TestCheckAxioms:
    def test_moral_hazard_passes(self, runner, mh_file):
        res = runner.invoke(main, ["check-axioms", "--model", mh_file, "--seed", "5",
                                   "--n-samples", "1500"])
        assert res.exit_code == 0
        assert res.output.count("pass") == 7

    def test_malevolent_fails_and_witness_verifies(self, runner, mal_file, tmp_path):
        report_path = str(tmp_path / "report.json")
        res = runner.invoke(main, ["check-axioms", "--model", mal_file,
                                   "--axiom", "quasiconvexity", "--seed", "7",
                                   "--n-samples", "30000", "--json", report_path])
        assert res.exit_code == 1
        res2 = runner.invoke(main, ["verify-witness", "--report", report_path])
        assert res2.exit_code == 0
        assert "verified" in res2.output

    def test_deterministic_reports(self, runner, mal_file):
        argv = ["check-axioms", "--model", mal_file, "--seed", "11",
                "--n-samples", "20000", "--json", "-"]
        out1 = runner.invoke(main, argv).output
        out2 = runner.invoke(main, argv).output
        assert out1 == out2


class TestCompare:
    def test_confidence_holds(self, runner, tmp_path, mh_file):
        weaker = tmp_path / "weaker.json"
        weaker.write_text(json.dumps({
            "output_space": [0.0, 1.0],
            "oracle_kind": "moral_hazard",
            "utility": {"kind": "linear", "reference": [0.0, 1.0]},
            "cost": {"form": "quadratic1d", "alpha": 2.0, "beta": 0.0},
        }))
        res = runner.invoke(main, ["compare", "confidence", "--model-a", mh_file,
                                   "--model-b", str(weaker), "--seed", "3",
                                   "--n-samples", "3000"])
        assert res.exit_code == 0
        assert "behavioral: holds" in res.output
        assert "parametric: holds" in res.output

    def test_confidence_reversal_witnessed(self, runner, tmp_path, mh_file):
        weaker = tmp_path / "weaker.json"
        weaker.write_text(json.dumps({
            "output_space": [0.0, 1.0],
            "oracle_kind": "moral_hazard",
            "utility": {"kind": "linear", "reference": [0.0, 1.0]},
            "cost": {"form": "quadratic1d", "alpha": 2.0, "beta": 0.0},
        }))
        report_path = str(tmp_path / "rep.json")
        res = runner.invoke(main, ["compare", "confidence", "--model-a", str(weaker),
                                   "--model-b", mh_file, "--seed", "3",
                                   "--n-samples", "30000", "--json", report_path])
        assert res.exit_code == 1
        res2 = runner.invoke(main, ["verify-witness", "--report", report_path])
        assert res2.exit_code == 0

    def test_optimism(self, runner, tmp_path):
        for name, beta in (("hi.json", 0.7), ("lo.json", 0.3)):
            (tmp_path / name).write_text(json.dumps({
                "output_space": [0.0, 1.0],
                "oracle_kind": "moral_hazard",
                "utility": {"kind": "linear", "reference": [0.0, 1.0]},
                "cost": {"form": "quadratic1d", "alpha": 1.0, "beta": beta},
            }))
        res = runner.invoke(main, ["compare", "optimism",
                                   "--model-a", str(tmp_path / "hi.json"),
                                   "--model-b", str(tmp_path / "lo.json"),
                                   "--seed", "4", "--n-samples", "3000"])
        assert res.exit_code == 0
        assert "up-shift:   holds" in res.output

    def test_optimism_reversal_witnesses_verify(self, runner, tmp_path):
        for name, beta in (("hi.json", 0.7), ("lo.json", 0.3)):
            (tmp_path / name).write_text(json.dumps({
                "output_space": [0.0, 1.0],
                "oracle_kind": "moral_hazard",
                "utility": {"kind": "linear", "reference": [0.0, 1.0]},
                "cost": {"form": "quadratic1d", "alpha": 1.0, "beta": beta},
            }))
        report_path = str(tmp_path / "rep.json")
        res = runner.invoke(main, ["compare", "optimism",
                                   "--model-a", str(tmp_path / "lo.json"),
                                   "--model-b", str(tmp_path / "hi.json"),
                                   "--seed", "4", "--n-samples", "30000",
                                   "--json", report_path])
        assert res.exit_code == 1
        report = json.loads((tmp_path / "rep.json").read_text())
        kinds = {w["kind"] for w in report["witnesses"]}
        assert {"optimism", "upshift", "conjugate_order"} <= kinds
        res2 = runner.invoke(main, ["verify-witness", "--report", report_path])
        assert res2.exit_code == 0


class TestCostCommands:
    def test_upshift_holds(self, runner):
        res = runner.invoke(main, ["upshift", "--cost-a", "quad:1.0,0.7",
                                   "--cost-b", "quad:1.0,0.3"])
        assert res.exit_code == 0

    def test_upshift_single_pair(self, runner):
        res = runner.invoke(main, ["upshift", "--cost-a", "quad:1.0,0.7",
                                   "--cost-b", "quad:1.0,0.3",
                                   "--p", "0.3,0.7", "--p-prime", "0.7,0.3"])
        assert res.exit_code == 0
        assert "witness q=" in res.output

    def test_upshift_fails_with_witness(self, runner, tmp_path):
        report_path = str(tmp_path / "up.json")
        res = runner.invoke(main, ["upshift", "--cost-a", "quad:1.0,0.3",
                                   "--cost-b", "quad:1.0,0.7", "--json", report_path])
        assert res.exit_code == 1
        res2 = runner.invoke(main, ["verify-witness", "--report", report_path])
        assert res2.exit_code == 0

    def test_levelsets(self, runner):
        res = runner.invoke(main, ["levelsets", "--cost-a", "quad:1.0,0.7",
                                   "--cost-b", "quad:1.0,0.3", "--k", "0.04"])
        assert res.exit_code == 0

    def test_assess_absolute(self, runner):
        res = runner.invoke(main, ["assess-absolute", "--cost", "quad:1.0,0.7",
                                   "--cost-star", "quad:1.0,0.3", "--json", "-"])
        report = json.loads(res.output)
        assert report["results"] == {"overconfident": False, "optimistic": True}


class TestReduceIdentify:
    def test_reduce_round_trip(self, runner, tmp_path):
        model = tmp_path / "std.json"
        model.write_text(json.dumps({
            "output_space": [0.0, 1.0],
            "efforts": ["lo", "hi"],
            "costs": [0.0, 0.5],
            "beliefs": [[1.0, 0.0], [0.0, 1.0]],
        }))
        out = tmp_path / "cost.json"
        res = runner.invoke(main, ["reduce", "--model", str(model), "--resolution", "4",
                                   "--out", str(out)])
        assert res.exit_code == 0
        cost = json.loads(out.read_text())["cost"]
        mid = [pt for pt in cost["points"] if pt["probs"] == [0.5, 0.5]]
        assert mid and abs(mid[0]["value"] - 0.25) <= 1e-9

    def test_identify(self, runner, mh_file, tmp_path):
        out = tmp_path / "recovered.json"
        res = runner.invoke(main, ["identify", "--model", mh_file,
                                   "--f-reach", "4.0", "--p-resolution", "10",
                                   "--out", str(out)])
        assert res.exit_code == 0
        rec = json.loads(out.read_text())
        assert rec["utility"]["kind"] == "piecewise_linear"
        mid = [pt for pt in rec["cost"]["points"] if pt["probs"] == [0.5, 0.5]]
        assert mid and abs(mid[0]["value"] - 0.25) <= 1e-2


class TestSerializeRoundTrip:
    def test_model_round_trip(self):
        from mhpref import serialize as ser

        raw = {
            "output_space": [0.0, 1.0, 2.0],
            "oracle_kind": "income_effects",
            "lambda": 5.0,
            "utility": {"kind": "cara", "a": 0.8, "reference": [0.0, 1.0]},
            "cost": {"form": "grid", "points": [
                {"probs": [1.0, 0.0, 0.0], "value": 0.0},
                {"probs": [0.0, 0.0, 1.0], "value": "inf"},
                {"probs": [0.0, 1.0, 0.0], "value": 0.25},
            ]},
        }
        oracle = ser.decode_model(raw)
        assert ser.decode_model(ser.encode_model(oracle)) == oracle
        assert oracle.cost.points[1][1] == math.inf

    def test_certify_single_criterion(self, runner):
        res = runner.invoke(main, ["certify", "--criterion", "8"])
        assert res.exit_code == 0
        assert "criterion 8" in res.output and "PASS" in res.output
