import json
import math
import os
from pathlib import Path

import pytest

from subheat import (
    Interval,
    Kind,
    RandomStream,
    RunawaySamplerError,
    Stable,
)
from subheat.cli import (
    _SUITE_ALIASES,
    _SUITES,
    RunConfig,
    adaptive_spectral,
    cmd_estimate,
    cmd_predict,
    cmd_verify,
    main,
    run_suite,
)

GOLDEN = Path(__file__).parent / "golden"


# ----------------------------------------------------------------- output


def test_predict_csv_matches_golden():
    got = cmd_predict(RunConfig(exponent="stable:0.5", domain="interval:0,1", time_change="sub"))
    assert got == (GOLDEN / "predict_critical.csv").read_text()


def test_estimate_csv_matches_golden():
    cfg = RunConfig(
        exponent="stable:0.75",
        domain="interval:0,1",
        time_change="sub",
        t_ladder=(1e-2, 1e-3),
        paths=4096,
        seed=12,
    )
    assert cmd_estimate(cfg) == (GOLDEN / "estimate_highindex.csv").read_text()


def test_estimate_inverse_csv_matches_golden():
    cfg = RunConfig(
        exponent="stable:0.5",
        domain="interval:0,1",
        time_change="inv",
        t_ladder=(1e-4,),
        paths=4096,
        seed=7,
    )
    assert cmd_estimate(cfg) == (GOLDEN / "estimate_inverse.csv").read_text()


def test_estimate_csv_header_is_frozen():
    cfg = RunConfig(t=1e-3, paths=64, seed=0)
    out = cmd_estimate(cfg)
    assert out.splitlines()[0] == "t,quantity,value,stderr,rate_value,ratio,n_paths,seed"


def test_estimate_json_schema():
    cfg = RunConfig(
        exponent="stable:0.75", t_ladder=(1e-2,), paths=1024, seed=3, fmt="json"
    )
    rows = json.loads(cmd_estimate(cfg))
    assert [r["quantity"] for r in rows] == ["spectral", "regular"]
    for row in rows:
        assert set(row) == {
            "t", "quantity", "value", "stderr", "rate_value", "ratio", "n_paths", "seed",
        }
        assert row["seed"] == 3
        assert row["n_paths"] == 1024
    # the CSV run of the same config carries the same numbers
    csv_rows = cmd_estimate(RunConfig(
        exponent="stable:0.75", t_ladder=(1e-2,), paths=1024, seed=3
    )).splitlines()[1:]
    assert float(csv_rows[0].split(",")[2]) == rows[0]["value"]


def test_predict_json_schema():
    cfg = RunConfig(exponent="stable:0.5", time_change="inv", fmt="json")
    rows = json.loads(cmd_predict(cfg))
    assert [r["quantity"] for r in rows] == ["spectral", "regular"]
    assert rows[0]["constant"] == pytest.approx(2.2065253026416745, rel=1e-12)
    assert rows[0]["rate"] == "t^(0.25)"
    assert rows[1]["constant"] == pytest.approx(rows[0]["constant"] / 2.0, rel=1e-14)


def test_seventeen_digit_rendering_roundtrips():
    out = cmd_estimate(RunConfig(exponent="stable:0.75", t=1e-3, paths=2048, seed=5))
    line = out.splitlines()[1].split(",")
    value = float(line[2])
    assert ("%.17g" % value) == line[2]


def test_csv_deterministic_across_runs_and_workers():
    cfg = RunConfig(exponent="stable:0.75", t_ladder=(1e-3,), paths=65_536, seed=1)
    one = cmd_estimate(cfg)
    two = cmd_estimate(cfg)
    many = cmd_estimate(RunConfig(
        exponent="stable:0.75", t_ladder=(1e-3,), paths=65_536, seed=1, workers=2
    ))
    assert one == two == many


# ----------------------------------------------------------- config rules


def _run_main(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_text() if out.exists() else None


def _seed_column(text):
    return {line.rsplit(",", 1)[1] for line in text.splitlines()[1:]}


def test_env_seed_is_default(monkeypatch, tmp_path):
    monkeypatch.setenv("SUBHEAT_SEED", "33")
    code, text = _run_main(
        ["estimate", "--exponent", "stable:0.75", "--t", "1e-3", "--paths", "64"],
        tmp_path,
    )
    assert code == 0
    assert _seed_column(text) == {"33"}


def test_config_file_overrides_env(monkeypatch, tmp_path):
    monkeypatch.setenv("SUBHEAT_SEED", "33")
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("seed = 44\npaths = 64\nt = 1e-3\nexponent = stable:0.75\n")
    code, text = _run_main(["estimate", "--config", str(cfgfile)], tmp_path)
    assert code == 0
    assert _seed_column(text) == {"44"}


def test_flags_override_config_file(monkeypatch, tmp_path):
    monkeypatch.setenv("SUBHEAT_SEED", "33")
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("seed = 44\npaths = 64\nt = 1e-3\nexponent = stable:0.75\n")
    code, text = _run_main(
        ["estimate", "--config", str(cfgfile), "--seed", "55"], tmp_path
    )
    assert code == 0
    assert _seed_column(text) == {"55"}


def test_default_seed_zero(tmp_path, monkeypatch):
    monkeypatch.delenv("SUBHEAT_SEED", raising=False)
    code, text = _run_main(
        ["estimate", "--exponent", "stable:0.75", "--t", "1e-3", "--paths", "64"],
        tmp_path,
    )
    assert code == 0
    assert _seed_column(text) == {"0"}


def test_config_file_comments_and_ladder(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text(
        "# manifest\nexponent = stable:0.75\nt-ladder = 1e-2,1e-3\npaths = 64\n"
    )
    code, text = _run_main(["estimate", "--config", str(cfgfile)], tmp_path)
    assert code == 0
    ts = [line.split(",", 1)[0] for line in text.splitlines()[1:]]
    assert ts == ["0.01", "0.01", "0.001", "0.001"]


def test_config_file_unknown_key(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("pathz = 64\n")
    assert main(["estimate", "--config", str(cfgfile), "--t", "1e-3"]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_out_flag_writes_file_and_keeps_stdout_quiet(tmp_path, capsys):
    out = tmp_path / "pred.csv"
    assert main(["predict", "--exponent", "stable:0.5", "--out", str(out)]) == 0
    assert out.read_text().startswith("quantity,theorem_tag,rate,constant")
    assert capsys.readouterr().out == ""


# ------------------------------------------------------------- exit codes


def test_exit_2_on_malformed_exponent(capsys):
    assert main(["predict", "--exponent", "stable:1.5"]) == 2
    assert main(["predict", "--exponent", "sideways:0.5"]) == 2
    capsys.readouterr()


def test_exit_2_on_missing_t(capsys):
    assert main(["estimate", "--exponent", "stable:0.5"]) == 2
    capsys.readouterr()


def test_exit_2_on_unknown_suite(capsys):
    assert main(["verify", "--suite", "nope"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_exit_2_on_bad_ladder_flag():
    with pytest.raises(SystemExit) as exc:
        main(["estimate", "--t-ladder", "1e-8,1e-6"])
    assert exc.value.code == 2


def test_exit_3_on_unsupported_configuration(capsys):
    code = main(["predict", "--exponent", "stable:0.25", "--domain", "disk:1"])
    assert code == 3
    assert "unsupported configuration" in capsys.readouterr().err


def test_exit_4_on_runaway_sampler(monkeypatch, capsys):
    def boom(cfg, quick):
        raise RunawaySamplerError("stub crossing took too long")

    monkeypatch.setitem(_SUITES, "boom", boom)
    assert main(["verify", "--suite", "boom"]) == 4
    assert "runaway sampler" in capsys.readouterr().err


def test_exit_1_on_failing_suite(monkeypatch, tmp_path):
    from subheat.cli import CheckResult

    def failing(cfg, quick):
        return [CheckResult("stub", 1.0, 2.0, 0.1, False)]

    monkeypatch.setitem(_SUITES, "stub-fail", failing)
    code, text = _run_main(["verify", "--suite", "stub-fail"], tmp_path, "v.json")
    assert code == 1
    payload = json.loads(text)
    assert payload["passed"] is False
    assert payload["suites"][0]["checks"][0]["passed"] is False


# ----------------------------------------------------------------- suites


def test_suite_alias_table():
    assert _SUITE_ALIASES == {
        "thm-3.6": "highindex-limit",
        "prop-3.8": "critical-limit",
        "thm-3.13": "lowindex-limit",
        "thm-3.10": "mixed-critical-limit",
        "thm-4.3": "inverse-limit",
        "thm-4.4": "expansion-identity",
        "eq-3.6": "moment-suite",
        "prop-4.2": "moment-suite",
        "prop-3.12": "levy-convergence",
    }
    assert set(_SUITE_ALIASES.values()) <= set(_SUITES)


def test_run_suite_accepts_alias():
    checks = run_suite("thm-4.4", RunConfig(quick=True))
    assert len(checks) == 1
    assert checks[0].name == "expansion-identity"
    assert checks[0].passed


def test_run_suite_unknown_name():
    with pytest.raises(ValueError):
        run_suite("thm-9.9", RunConfig())


def test_verify_alias_runs_inverse_suite(tmp_path):
    code, text = _run_main(
        ["verify", "--suite", "thm-4.3", "--quick", "--seed", "7"], tmp_path, "v.json"
    )
    assert code == 0
    payload = json.loads(text)
    assert payload["passed"] is True
    assert payload["quick"] is True
    assert payload["seed"] == 7
    assert payload["suites"][0]["suite"] == "inverse-limit"
    names = [c["name"] for c in payload["suites"][0]["checks"]]
    assert names == [
        "inverse-spectral-b0.25",
        "inverse-regular-b0.25",
        "inverse-spectral-b0.5",
        "inverse-regular-b0.5",
        "inverse-spectral-b0.75",
        "inverse-regular-b0.75",
    ]


def test_verify_json_shape_on_pure_identity_suite(tmp_path):
    code, text = _run_main(["verify", "--suite", "expansion-identity"], tmp_path, "v.json")
    assert code == 0
    payload = json.loads(text)
    assert set(payload) == {"passed", "seed", "quick", "suites"}
    entry = payload["suites"][0]
    assert set(entry) == {
        "suite", "passed", "runtime_s", "target", "achieved", "tolerance", "checks",
    }
    assert entry["achieved"] <= 1e-12


def test_suite_registry_is_complete():
    assert list(_SUITES) == [
        "highindex-limit",
        "critical-limit",
        "lowindex-limit",
        "mixed-critical-limit",
        "inverse-limit",
        "inverse-universality",
        "expansion-identity",
        "moment-suite",
        "levy-convergence",
        "small-ball",
        "oracle-integrity",
        "determinism",
    ]


# ------------------------------------------------------------- adaptivity


def test_adaptive_spectral_doubles_until_precise():
    est = adaptive_spectral(
        Stable(0.75), Interval(0.0, 1.0), 1e-3, RandomStream(2), Kind.SUBORDINATOR,
        rel_target=0.007, n0=4096, n_max=65_536,
    )
    deficit = 1.0 - est.value
    assert est.stderr <= 0.007 * deficit
    assert est.n_paths > 4096


def test_adaptive_spectral_respects_cap():
    est = adaptive_spectral(
        Stable(0.75), Interval(0.0, 1.0), 1e-3, RandomStream(2), Kind.SUBORDINATOR,
        rel_target=1e-9, n0=4096, n_max=8192,
    )
    assert est.n_paths == 8192
