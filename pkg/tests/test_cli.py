import io
import json
import xml.etree.ElementTree as ET

import pytest

from laplace_lp.cli import parse_eps_grid, run

SVG_NS = "{http://www.w3.org/2000/svg}"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_example():
    code, out, _ = call("classify", "--p", "3", "--q", "1.5", "--domain", "bounded:0,1")
    assert code == 0
    assert json.loads(out) == {"continuous": False, "reason": "CounterexampleBlowup"}


def test_classify_accepts_inf():
    code, out, _ = call("classify", "--p", "inf", "--q", "1", "--domain", "tail:1")
    assert code == 0 and json.loads(out)["reason"] == "TrivialConstant"


def test_transform_example():
    code, out, _ = call("transform", "--f", "const1", "--x", "2")
    assert code == 0
    assert abs(json.loads(out)["value"] - 0.5) <= 1e-10


def test_fit_example():
    code, out, _ = call("fit", "--variant", "thm1", "--p", "3", "--domain", "bounded:0,1",
                        "--eps-grid", "1e-1:1e-4:6")
    assert code == 0
    res = json.loads(out)
    assert abs(res["slope"] + 1 / 3) <= 0.05
    assert len(res["records"]) == 6


def test_parse_eps_grid():
    assert parse_eps_grid("0.1,0.01") == [0.1, 0.01]
    g = parse_eps_grid("1e-1:1e-4:4")
    assert len(g) == 4 and g[0] == pytest.approx(0.1) and g[-1] == pytest.approx(1e-4)


def test_norm_commands():
    code, out, _ = call("norm", "--f", "thm1", "--p", "3", "--eps", "0.1")
    assert code == 0 and abs(json.loads(out)["norm_f"] / 0.1 ** (-1 / 3) - 1) <= 1e-10
    code, out, _ = call("norm", "--f", "exp1", "--transform", "--q", "1", "--domain", "bounded:0,1")
    assert code == 0 and abs(json.loads(out)["norm_Lf"] - 0.6931471805599453) <= 1e-10


def test_sweep_csv_schema():
    code, out, _ = call("sweep", "--variant", "thm1", "--p", "3", "--domain", "bounded:0,1",
                        "--eps-grid", "0.1,0.01")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "epsilon,norm_f,norm_Lf,ratio"
    assert len(lines) == 3
    assert abs(float(lines[2].split(",")[3]) / 9.9579009 - 1) <= 1e-7


def test_sweep_json_keys():
    code, out, _ = call("sweep", "--variant", "thm2", "--p", "4", "--domain", "tail:1",
                        "--eps-grid", "0.1,0.01", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert [list(r) for r in recs] == [["epsilon", "norm_f", "norm_Lf", "ratio"]] * 2


@pytest.mark.parametrize("argv", [
    ("sweep", "--variant", "thm1", "--p", "3", "--domain", "bounded:0,1", "--eps-grid", "0.1,0.01"),
    ("region", "--domain", "tail:1", "--format", "csv"),
    ("region", "--domain", "full", "--format", "json"),
    ("region", "--domain", "bounded:0,1"),
    ("classify", "--p", "2", "--q", "2", "--domain", "full"),
])
def test_output_is_deterministic(argv):
    first, second = call(*argv), call(*argv)
    assert first == second
    assert first[0] == 0


def test_floats_use_17_digits():
    _, out, _ = call("sweep", "--variant", "thm1", "--p", "3", "--domain", "bounded:0,1",
                     "--eps-grid", "0.1,0.01")
    assert out.splitlines()[1].startswith("0.10000000000000001,")


def test_exit_3_on_divergent_record():
    code, out, err = call("sweep", "--variant", "thm1", "--p", "3", "--q", "3",
                          "--domain", "bounded:0,1", "--eps-grid", "0.1,0.01")
    assert code == 3
    assert "eps=0.10000000000000001" in err and "Divergent" in err
    assert out.startswith("epsilon,norm_f,norm_Lf,ratio")


def test_exit_3_on_divergent_norm():
    code, _, err = call("norm", "--f", "trunc:1e6", "--transform", "--q", "1", "--domain", "tail:1")
    assert code == 3 and "Divergent" in err


@pytest.mark.parametrize("argv, needle", [
    (("classify", "--p", "0.5", "--q", "2", "--domain", "full"), "p"),
    (("classify", "--p", "2", "--q", "2", "--domain", "bounded:2,1"), "a < b"),
    (("norm", "--f", "thm1", "--p", "3", "--eps", "1.5"), "eps"),
    (("opnorm", "--p", "2", "--q", "2", "--domain", "full", "--nodes", "4"), "nodes"),
    (("sweep", "--variant", "thm2", "--p", "4", "--domain", "tail:1", "--eps-grid", "0.3,0.1"), "eps"),
    (("transform", "--f", "const1", "--x", "-1"), ""),
])
def test_exit_2_on_precondition(argv, needle):
    code, _, err = call(*argv)
    assert code == 2
    assert err.strip() and needle in err


def test_unknown_subcommand_is_usage_error():
    code, _, _ = call("frobnicate")
    assert code == 2


def test_region_csv_and_json():
    code, out, _ = call("region", "--domain", "bounded:0,1", "--step", "1/2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "inv_p,inv_q,continuous,reason" and len(lines) == 10
    code, out, _ = call("region", "--domain", "tail:1", "--step", "0.25", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 25
    cont = {(r["inv_p"], r["inv_q"]) for r in rows if r["continuous"]}
    assert (0.5, 0.5) in cont and (0.75, 0.5) not in cont


def _svg(domain):
    code, out, _ = call("region", "--domain", domain)
    assert code == 0
    return ET.fromstring(out)


@pytest.mark.parametrize("domain", ["bounded:0,1", "tail:1", "full"])
def test_region_svg_is_valid(domain):
    root = _svg(domain)
    assert root.tag == SVG_NS + "svg" and root.get("version") == "1.1"
    circles = root.findall(f".//{SVG_NS}circle")
    hollow = [c for c in circles if c.get("fill") in ("none", "white", "#ffffff")]
    assert len(hollow) == 1
    assert len(circles) - len(hollow) == 2


def test_region_svg_shading_per_domain():
    assert _svg("bounded:0,1").findall(f".//{SVG_NS}polygon")
    assert _svg("tail:1").findall(f".//{SVG_NS}polygon")
    assert not _svg("full").findall(f".//{SVG_NS}polygon")


def test_region_writes_file(tmp_path):
    path = tmp_path / "region.svg"
    code, out, _ = call("region", "--domain", "tail:1", "-o", str(path))
    assert code == 0 and out == ""
    ET.parse(path)


def test_opnorm_command():
    code, out, _ = call("opnorm", "--p", "2", "--q", "2", "--domain", "full", "--nodes", "64")
    assert code == 0
    assert abs(json.loads(out)["lower_bound"] - 1.7273483079283563) <= 1e-7


def test_scaling_check_command():
    code, out, _ = call("scaling-check", "--f", "chi01", "--p", "2", "--lambda", "2")
    assert code == 0
    res = json.loads(out)
    assert res["max_identity_error"] <= 1e-8 and res["lq_lower_bound_satisfied"] is True


def test_verify_all_single_criterion():
    code, out, _ = call("verify-all", "--only", "1")
    assert code == 0
    assert "PASS" in out and out.strip().endswith("1/1 criteria passed")
    code, _, err = call("verify-all", "--only", "99")
    assert code == 2 and "99" in err
