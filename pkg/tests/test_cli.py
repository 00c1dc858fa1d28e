import json
import subprocess
import sys

import pytest

from hyperdyn.cli import main
from hyperdyn.metric import FiniteCompactSet, dump_family
from hyperdyn.symbolic.points import SymbolicPoint, shift_space
from hyperdyn.torus import eigen_data


def _json(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


def test_hitset_example(capsys):
    assert main(["hitset", "--shift", "full:2", "--u", "0", "--v", "1", "--horizon", "5"]) == 0
    rep = _json(capsys)
    assert rep["ok"] and rep["cases"][0]["measured"] == [1, 2, 3, 4, 5]


def test_hitset_golden_mean(capsys):
    main(["hitset", "--shift", "forbid:11", "--u", "1", "--v", "1", "--horizon", "5"])
    assert _json(capsys)["cases"][0]["measured"] == [2, 3, 4, 5]


def test_torus_decay_example(capsys):
    assert main(["torus", "decay", "--trials", "1", "--jmax", "1", "--seed", "7"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "j,measured,predicted,bound"
    assert len(lines) == 2
    j, measured, predicted, bound = lines[1].split(",")
    measured, predicted, bound = float(measured), float(predicted), float(bound)
    assert j == "1"
    assert measured == pytest.approx(predicted, rel=1e-9)
    s = 2 * bound
    assert measured == pytest.approx(s * eigen_data().lambda_minus, rel=1e-9)


def test_torus_collapse_csv(tmp_path, capsys):
    csv = tmp_path / "c.csv"
    out = tmp_path / "r.json"
    assert main(["torus", "collapse", "--jmax", "5", "--bases", "3", "--samples", "9",
                 "--csv", str(csv), "--out", str(out)]) == 0
    rows = csv.read_text().strip().splitlines()
    assert rows[0].startswith("j,") and "cdiam" in rows[0]
    assert [r.split(",")[0] for r in rows[1:]] == [str(j) for j in range(6)]
    assert json.loads(out.read_text())["ok"]


def test_hausdorff_files(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("real\n0\n2\n")
    b.write_text("real\n1\n")
    main(["hausdorff", "--a", str(a), "--b", str(b)])
    assert _json(capsys)["cases"][0]["measured"] == 1.0


def test_verify_metric_passes(capsys):
    assert main(["verify", "metric"]) == 0
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert rep["ok"] and all(c["status"] == "pass" for c in rep["cases"])
    assert "PASS" in captured.err


def test_petersen_gap_shift_inconclusive(capsys):
    code = main(["petersen", "--shift", "thm52", "--u1", "001", "--v1", "1", "--u2", "010", "--v2", "1",
                 "--horizon", "30"])
    rep = _json(capsys)
    assert code == 0
    assert rep["cases"][0]["status"] == "inconclusive"


def test_classify_full_shift(capsys):
    main(["classify", "--shift", "full:2", "--depth", "2", "--horizon", "16"])
    rep = _json(capsys)
    assert rep["ok"] and all(c["status"] == "pass" for c in rep["cases"])


def test_construct_writes_windows(tmp_path, capsys):
    out = tmp_path / "c4.txt"
    assert main(["construct", "c4", "--depth", "4", "--max-n", "1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#")
    assert sorted(lines[1:]) == ["0101", "0110", "1001", "1010"]
    assert _json(capsys)["ok"]


def test_odometer_and_disc(capsys):
    assert main(["odometer", "--levels", "6", "--eps-exp", "2", "--samples", "10"]) == 0
    assert _json(capsys)["ok"]
    assert main(["disc", "--terms", "8", "--horizon", "20000"]) == 0
    assert _json(capsys)["ok"]


def test_tower_family_file(tmp_path, capsys):
    X = shift_space(4)
    fam = [FiniteCompactSet.of([SymbolicPoint("01101"), SymbolicPoint("11100")], X),
           FiniteCompactSet.of([SymbolicPoint("00000")], X)]
    path = tmp_path / "fam.txt"
    path.write_text(dump_family(X, fam))
    assert main(["tower", "--family", str(path)]) == 0
    assert _json(capsys)["ok"]


@pytest.mark.parametrize("argv, flag", [
    (["hitset", "--shift", "full:2", "--u", "0", "--v", "1", "--horizon", "0"], "--horizon"),
    (["hitset", "--shift", "sofic:3", "--u", "0", "--v", "1", "--horizon", "4"], "sofic:3"),
    (["odometer", "--eps-exp", "-1"], "--eps-exp"),
])
def test_usage_errors_exit_two(argv, flag, capsys):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2
    assert flag in capsys.readouterr().err


def _strip_runtime(text):
    rep = json.loads(text)
    rep.pop("runtime_ms")
    return rep


def test_reruns_are_identical(capsys):
    argv = ["odometer", "--samples", "20", "--seed", "4"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert _strip_runtime(first) == _strip_runtime(second)
    # byte-identical apart from the runtime line
    drop = [ln for ln in first.splitlines() if '"runtime_ms"' not in ln]
    assert drop == [ln for ln in second.splitlines() if '"runtime_ms"' not in ln]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperdyn", "hitset", "--shift", "full:2",
                           "--u", "0", "--v", "1", "--horizon", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cases"][0]["measured"] == [1, 2, 3]
