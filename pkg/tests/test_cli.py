import pytest

from overlayselect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sweep_insufficient(tmp_path, capsys):
    csv_path = tmp_path / "low_battery.csv"
    code, out, _ = run(capsys, "sweep", "--mode", "insufficient", "--output", str(csv_path))
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("weight crossover"))
    assert abs(float(line.split()[2]) - 600) <= 50
    assert csv_path.read_text().startswith("distance_m,")
    assert (tmp_path / "low_battery.png").stat().st_size > 0


def test_sweep_sufficient_summary(tmp_path, capsys):
    code, out, _ = run(capsys, "sweep", "--mode", "sufficient", "--no-figure",
                       "--output", str(tmp_path / "s.csv"))
    assert code == 0
    assert "chosen: WLAN at all 191 grid points" in out.splitlines()
    assert not (tmp_path / "s.png").exists()


def test_sweep_to_stdout(capsys):
    code, out, err = run(capsys, "sweep", "--d-min", "100", "--d-max", "200")
    assert code == 0
    assert out.splitlines()[0].startswith("distance_m,")
    assert "consumption crossover" in err


def test_sweep_pretty(capsys):
    code, out, _ = run(capsys, "--format", "pretty", "sweep", "--d-min", "100", "--d-max", "120")
    assert code == 0 and "distance_m" in out.splitlines()[0] and "," not in out.splitlines()[0]


def test_sweep_inverted_range(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--d-min", "500", "--d-max", "400"])
    assert exc.value.code == 2


def test_bad_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--mode", "sleepy"])
    assert exc.value.code == 2


@pytest.mark.parametrize("battery, expected", [("0.1", "UMTS"), ("0.9", "WLAN")])
def test_decide(capsys, battery, expected):
    code, out, err = run(capsys, "decide", "--distance", "300", "--battery", battery)
    assert code == 0
    assert f"selection: {expected}" in err
    rows = out.splitlines()
    assert rows[0].startswith("rank,interface,weight,lp")
    assert rows[1].split(",")[1] == expected and rows[1].endswith(",1")


def test_decide_pretty(capsys):
    code, out, _ = run(capsys, "--format", "pretty", "decide", "--distance", "300", "--battery", "0.1")
    assert code == 0
    assert "per-parameter contribution" in out
    assert "selection: UMTS" in out


def test_decide_rejected_best(capsys):
    code, out, err = run(capsys, "decide", "--distance", "300", "--battery", "0.9", "--reject", "WLAN")
    assert code == 0 and "selection: none" in err


def test_decide_zero_distance():
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--distance", "0", "--battery", "0.5"])
    assert exc.value.code == 2


def _outward_file(path):
    rows = ["time,distance,battery,wlan_available"]
    rows += [f"{i * 5},{100 + 50 * i},0.1,1" for i in range(29)]
    path.write_text("\n".join(rows) + "\n")
    return path


def test_trace(tmp_path, capsys):
    tr = _outward_file(tmp_path / "walk.csv")
    code, out, _ = run(capsys, "trace", str(tr), "--output", str(tmp_path / "o.csv"))
    assert code == 0 and "handovers: 1" in out


def test_trace_constant(tmp_path, capsys):
    tr = tmp_path / "c.csv"
    tr.write_text("".join(f"{t},500,0.9,1\n" for t in range(10)))
    code, _, err = run(capsys, "trace", str(tr))
    assert code == 0
    assert int(err.strip().split()[-1]) <= 1


def test_trace_errors(tmp_path, capsys):
    empty = tmp_path / "e.csv"
    empty.write_text("")
    assert run(capsys, "trace", str(empty))[0] == 1
    bad = tmp_path / "b.csv"
    bad.write_text("0,100,0.5,1\n1,100,zz,1\n")
    code, _, err = run(capsys, "trace", str(bad))
    assert code == 1 and "line 2" in err
    assert run(capsys, "trace", str(tmp_path / "nope.csv"))[0] == 1


def test_calibrate(tmp_path, capsys):
    import yaml

    from overlayselect import config

    code, out, _ = run(capsys, "calibrate", "--target", "920")
    assert code == 0
    block = yaml.safe_load(out)["calibration"]
    base = config.load()
    assert block["tx_power_ref_mw"] == pytest.approx(base.calibration.tx_power_ref, rel=1e-9)


def test_calibrate_errors(capsys):
    assert run(capsys, "calibrate", "--target", "1e9")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["calibrate", "--target", "-5"])
    assert exc.value.code == 2


def test_bad_config_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.yaml"
    from overlayselect import config

    p.write_text(config.default_text().replace("cost: 0.4", "cost: 0.45"))
    code, _, err = run(capsys, "--config", str(p), "sweep")
    assert code == 1 and "sum" in err


def test_config_flag_after_subcommand(tmp_path, capsys):
    from overlayselect import config

    p = tmp_path / "c.yaml"
    p.write_text(config.default_text().replace("battery: 0.2", "battery: 0.05"))
    code, _, err = run(capsys, "decide", "--config", str(p), "--distance", "300", "--battery", "0.1")
    assert code == 0 and "selection: WLAN" in err
