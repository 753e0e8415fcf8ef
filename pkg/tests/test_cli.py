import json
import time

import pytest

from mpade.cli import main
from mpade.errors import ConfigError
from mpade.scenario import list_presets, load_scenario, run_pipeline, scenario_from_dict

BASE = {
    "name": "t",
    "function": "1/((z-2)*(z-3))",
    "sigma": {"kind": "points", "points": [0]},
    "table": {"kind": "all_at_point", "point": 0},
    "measure": {"kind": "dirac", "point": 0},
    "m": 1,
    "n_range": [1, 20],
    "K": {"kind": "circle", "radius": 1, "samples": 128},
    "epsilon": 0.01,
    "window": [5, 20],
}


def cfg(**kw):
    d = json.loads(json.dumps(BASE))
    d.update(kw)
    return d


def write(tmp_path, d, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(d, indent=2))
    return p


def test_presets_listed(capsys):
    names = [n for n, _ in list_presets()]
    for required in ("classical-two-poles", "chebyshev-segment-pole", "branch-point-barrier", "exact-rational"):
        assert required in names
    assert main(["presets"]) == 0
    assert "classical-two-poles" in capsys.readouterr().out


def test_run_classical_preset(tmp_path):
    assert main(["run", "classical-two-poles", "--out", str(tmp_path)]) == 0
    rates = json.loads((tmp_path / "rates.json").read_text())
    assert 2.85 <= rates["r_hat"] <= 3.15
    assert rates["r_star"] == pytest.approx(3.0, abs=0.1)
    assert rates["sigma_bound_below_epsilon"]
    header = (tmp_path / "errors.csv").read_text().splitlines()[0]
    assert header == "n,error,excluded_count"
    row = (tmp_path / "errors.csv").read_text().splitlines()[1].split(",")
    assert len(row[1].split("e")[0].replace("-", "").replace(".", "")) == 17
    poles = json.loads((tmp_path / "poles.json").read_text())
    assert any(c["converged"] and abs(c["center"][0] - 2) < 1e-4 for c in poles["clusters"])
    assert (tmp_path / "region.csv").read_text().startswith("x,y,inside,boundary\n")


def test_run_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "roots-of-unity-descent", "--out", str(a), "--seed", "3"]) == 0
    assert main(["run", "roots-of-unity-descent", "--out", str(b), "--seed", "3"]) == 0
    for name in ("errors.csv", "rates.json", "poles.json", "region.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_exact_rational_infinite(tmp_path):
    assert main(["run", "exact-rational", "--out", str(tmp_path)]) == 0
    rates = json.loads((tmp_path / "rates.json").read_text())
    assert rates["r_hat"] == "infinite"
    assert rates["lsq_slope"]["status"] == "all_zero_errors"


def test_malformed_expression(tmp_path, capsys):
    p = write(tmp_path, cfg(function="1/((z-2)"))
    assert main(["run", str(p), "--out", str(tmp_path / "o")]) == 2
    err = capsys.readouterr().err
    assert "function" in err and "line" in err


def test_json_syntax_error_line(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "name": "x",\n  "m": 1,,\n}')
    assert main(["run", str(p)]) == 2
    assert "line 3" in capsys.readouterr().err


@pytest.mark.parametrize(
    "override, field",
    [
        ({"window": [0, 30]}, "window"),
        ({"n_range": [0, 20]}, "n_range"),
        ({"table": {"kind": "all_at_point", "point": 0.5}}, "table"),
        ({"table": {"kind": "spiral"}}, "table.kind"),
        ({"epsilon": 2}, "epsilon"),
        ({"flags": {"K_regular": "yes"}}, "flags.K_regular"),
        ({"probes": ["z+1"]}, "probes[0]"),
        ({"colour": 1}, "colour"),
    ],
)
def test_config_validation(override, field):
    with pytest.raises(ConfigError) as exc:
        scenario_from_dict(cfg(**override))
    assert exc.value.field == field


def test_missing_field_reported():
    d = cfg()
    del d["measure"]
    with pytest.raises(ConfigError) as exc:
        scenario_from_dict(d)
    assert exc.value.field == "measure"


def test_complex_literal_forms():
    sc = scenario_from_dict(cfg(probes=[0.5, [1, 2], "2i", "1/2 + 3*i"]))
    assert sc.probes == (0.5, 1 + 2j, 2j, 0.5 + 3j)


def test_max_n_caps_range():
    sc = scenario_from_dict(cfg(n_range=[1, 60], window=[10, 60]), max_n=30)
    assert sc.n_range == (1, 30) and sc.window == (10, 30)


def test_pipeline_failure_exit_code(tmp_path, capsys):
    p = write(tmp_path, cfg(function="1/z"))
    assert main(["run", str(p), "--out", str(tmp_path / "o")]) == 3
    assert "n=1" in capsys.readouterr().err


def test_approximate(capsys):
    assert main(["approximate", "two-poles-m2", "--n", "6"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["n"] == 6 and rec["m"] == 2
    assert sorted(round(r[0], 8) for r in rec["den_roots"]) == [2.0, 3.0]
    assert main(["approximate", "two-poles-m2", "--n", "1"]) == 2


def test_every_preset_under_a_minute():
    for name, _ in list_presets():
        t0 = time.perf_counter()
        run_pipeline(load_scenario(name))
        assert time.perf_counter() - t0 < 60.0, name


def test_verify_subset(capsys):
    assert main(["verify", "--only", "AC-8"]) == 0
    assert "AC-8" in capsys.readouterr().out
