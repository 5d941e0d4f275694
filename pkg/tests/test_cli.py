import json

import pytest

from dilastab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


SMALL = ("--t-min", "0.5", "--t-max", "2.0", "--points", "3", "--n-paths", "4")


def test_simulate_csv_shape(capsys):
    code, out, err = run_cli(capsys, "simulate", *SMALL, "--seed", "1")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "path_id,t,value"
    assert len(lines) == 1 + 4 * 3
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[1]) == 0.5
    # rows are grouped by path, each in time order
    ids = [int(l.split(",")[0]) for l in lines[1:]]
    assert ids == sorted(ids)


def test_simulate_reproducible(capsys):
    _, a, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "7")
    _, b, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "7")
    _, c, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "8")
    assert a == b
    assert a != c


def test_simulate_threads_do_not_change_bytes(capsys):
    _, a, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "7", "--threads", "1")
    _, b, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "7", "--threads", "4")
    assert a == b


def test_seed_resolution_order(capsys, monkeypatch):
    monkeypatch.setenv("DILASTAB_SEED", "7")
    _, from_env, _ = run_cli(capsys, "simulate", *SMALL)
    _, explicit, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "7")
    assert from_env == explicit
    # the flag beats the environment
    _, flag_wins, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "9")
    _, plain_nine, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "9")
    assert flag_wins == plain_nine
    monkeypatch.delenv("DILASTAB_SEED")
    _, fallback, _ = run_cli(capsys, "simulate", *SMALL)
    _, zero, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "0")
    assert fallback == zero


def test_config_file_and_overrides(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(
        json.dumps(
            {
                "grid": {"t_min": 0.5, "t_max": 2.0, "points": 3},
                "n_paths": 5,
                "master_seed": 11,
            }
        )
    )
    code, out, _ = run_cli(capsys, "simulate", "--config", str(cfg))
    assert code == 0
    assert len(out.strip().split("\n")) == 1 + 5 * 3
    # a flag overrides the file
    code, out, _ = run_cli(capsys, "simulate", "--config", str(cfg), "--n-paths", "2")
    assert len(out.strip().split("\n")) == 1 + 2 * 3
    # config master_seed equals the flag spelling of the same seed
    _, by_flag, _ = run_cli(
        capsys, "simulate", *SMALL, "--n-paths", "5", "--seed", "11"
    )
    _, by_file, _ = run_cli(capsys, "simulate", "--config", str(cfg))
    assert by_file == by_flag


def test_simulate_include_origin(capsys):
    code, out, _ = run_cli(capsys, "simulate", *SMALL, "--seed", "1", "--include-origin")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 1 + 4 * 4
    assert lines[1] == "0,0.0,0.0"
    code, _, err = run_cli(
        capsys, "simulate", *SMALL, "--include-origin", "--transform", "lamperti"
    )
    assert code == 2
    assert "include-origin" in err


def test_simulate_output_file(capsys, tmp_path):
    target = tmp_path / "paths.csv"
    code, out, _ = run_cli(
        capsys, "simulate", *SMALL, "--seed", "1", "--output", str(target)
    )
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("path_id,t,value\n")


def test_oracle_golden_values(capsys):
    code, out, _ = run_cli(
        capsys, "oracle", "--times", "1.0", "--thetas", "0.0,1.0"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,theta,re,im"
    zero = lines[1].split(",")
    assert float(zero[2]) == 0.0 and float(zero[3]) == 0.0
    unit = lines[2].split(",")
    assert float(unit[2]) == pytest.approx(-0.14549417671733159, rel=1e-14)
    assert float(unit[3]) == 0.0


def test_oracle_stable_golden(capsys):
    code, out, _ = run_cli(
        capsys,
        "oracle",
        "--driver",
        '{"kind": "symmetric_stable", "index": 1.0, "scale": 1.0}',
        "--times",
        "2.0",
        "--thetas",
        "1.0",
    )
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    assert float(row[2]) == pytest.approx(-1.09738580245311, rel=1e-12)


def test_oracle_unsupported_driver(capsys):
    code, _, err = run_cli(
        capsys,
        "oracle",
        "--driver",
        '{"kind": "gamma", "shape": 1.0, "rate": 1.0}',
        "--times",
        "1.0",
        "--thetas",
        "1.0",
    )
    assert code == 2
    assert err


def test_verify_passes_correct_law(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, _, _ = run_cli(
        capsys,
        "verify",
        "--law",
        "dilative",
        "--T",
        "2",
        "--times",
        "0.5,1",
        "--thetas",
        "0.5,1",
        "--n-paths",
        "600",
        "--seed",
        "3",
        "--output",
        str(target),
    )
    assert code == 0
    report = json.loads(target.read_text())
    assert report["pass_fraction"] == 1.0
    assert report["law"] == {"kind": "dilative", "alpha": 1.0, "delta": 1.0, "T": 2.0}
    assert len(report["rows"]) == 4
    row = report["rows"][0]
    for key in ("times", "thetas", "lhs", "rhs", "z", "oracle"):
        assert key in row


def test_verify_pair_points(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--law",
        "dilative",
        "--T",
        "2",
        "--times",
        "1",
        "--thetas",
        "1",
        "--pair",
        "0.5,1.0,1.0,-0.5",
        "--n-paths",
        "600",
        "--seed",
        "3",
    )
    assert code == 0
    report = json.loads(out)
    assert len(report["rows"]) == 2
    assert report["rows"][1]["times"] == [0.5, 1.0]


def test_verify_flags_misspecified_delta(capsys):
    # shifting only the assumed delta moves the law multiplier; the check
    # must reject it even though the theta scaling still matches
    code, out, err = run_cli(
        capsys,
        "verify",
        "--law",
        "dilative",
        "--T",
        "2",
        "--law-delta",
        "0.5",
        "--times",
        "1.0",
        "--thetas",
        "1.0,1.5",
        "--n-paths",
        "4000",
        "--seed",
        "4",
    )
    assert code == 3
    assert "pass fraction" in err
    report = json.loads(out)
    assert report["pass_fraction"] == 0.0
    # the implied alpha keeps the simulated weight exponent: 0.5 + 0.5 / 2
    assert report["law"]["alpha"] == 0.75
    assert report["law"]["delta"] == 0.5


def test_verify_flags_wrong_family(capsys):
    # the log-clock transform of the process is stationary, so a dilative
    # law cannot hold for it
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--law",
        "dilative",
        "--T",
        "2",
        "--transform",
        "lamperti",
        "--times",
        "0.25",
        "--thetas",
        "1.0",
        "--n-paths",
        "1000",
        "--seed",
        "5",
    )
    assert code == 3
    report = json.loads(out)
    assert report["pass_fraction"] == 0.0
    # transformed runs carry no closed-form oracle
    assert "oracle" not in report["rows"][0]


def test_verify_zero_variance_degenerates_cleanly(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--law",
        "dilative",
        "--T",
        "2",
        "--driver",
        '{"kind": "gaussian", "variance": 0.0}',
        "--times",
        "0.5,1",
        "--thetas",
        "1.0",
        "--n-paths",
        "50",
        "--seed",
        "6",
    )
    assert code == 0
    assert json.loads(out)["pass_fraction"] == 1.0


def test_verify_other_laws_run(capsys):
    for law, extra in [
        ("translative", ("--T", "0.6931471805599453")),
        ("time_stable", ("--n", "2")),
        ("idt", ("--n", "2")),
    ]:
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--law",
            law,
            *extra,
            "--times",
            "0.0" if law == "translative" else "1.0",
            "--thetas",
            "0.5",
            "--n-paths",
            "400",
            "--seed",
            "3",
        )
        assert code == 0, law
        assert json.loads(out)["law"]["kind"] == law


def test_inadmissible_parameters_exit_2(capsys):
    code, _, err = run_cli(
        capsys, "simulate", *SMALL, "--alpha", "0.2", "--delta", "1.0"
    )
    assert code == 2
    assert "error" in err


def test_moment_rejection_names_orders(capsys):
    code, _, err = run_cli(
        capsys,
        "simulate",
        *SMALL,
        "--driver",
        '{"kind": "symmetric_stable", "index": 1.5, "scale": 1.0}',
        "--alpha",
        "1.0",
        "--delta",
        "-1.0",
    )
    assert code == 2
    assert "2" in err and "1.5" in err


def test_unknown_driver_kind_exit_2(capsys):
    code, _, err = run_cli(
        capsys, "simulate", *SMALL, "--driver", '{"kind": "brown"}'
    )
    assert code == 2


def test_missing_config_exit_1(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "simulate", "--config", str(tmp_path / "absent.json")
    )
    assert code == 1
    assert "I/O" in err


def test_bad_config_json_exit_2(capsys, tmp_path):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json")
    code, _, _ = run_cli(capsys, "simulate", "--config", str(cfg))
    assert code == 2


def test_lamperti_needs_geometric_spacing(capsys):
    code, _, err = run_cli(
        capsys,
        "simulate",
        *SMALL,
        "--spacing",
        "linear",
        "--transform",
        "lamperti",
    )
    assert code == 2
    assert "geometric" in err
