import json
import subprocess
import sys

from skein.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mul_text(capsys):
    code, out, _ = run(capsys, "mul", "1/0", "0/1")
    assert code == 0
    assert out.strip() == "A^-2·(1,1) + A^2·(1,-1) + R11"


def test_mul_json_and_latex(capsys):
    code, out, _ = run(capsys, "mul", "0/1", "1/0", "--format", "json")
    assert code == 0
    assert json.loads(out)["algebra"] == "f04"
    code, out, _ = run(capsys, "mul", "T[0/2]", "1/0", "--format", "latex")
    assert out.strip() == "A^{4} (2,1) + A^{-4} (2,-1) + R_{1,1} (1,0) + A^{-2} R_{0,1} + A^{2} R_{0,1}"


def test_mul_torus(capsys):
    code, out, _ = run(capsys, "mul", "--surface", "torus", "0/1", "1/0", "--basis", "T")
    assert code == 0
    assert out.strip() == "A·T[(1,1)] + A^-1·T[(1,-1)]"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "mul", "0/0", "1/0")
    assert code == 2
    assert "position 0" in err


def test_cache_option(capsys, tmp_path):
    path = tmp_path / "cache.jsonl"
    assert run(capsys, "mul", "1/5", "1/0", "--cache", str(path))[0] == 0
    records = path.read_text().splitlines()
    assert json.loads(records[0])["format"] == "skein-cache"
    assert len(records) > 1
    assert run(capsys, "mul", "1/5", "1/0", "--cache", str(path))[0] == 0
    path.write_text('{"format":"skein-cache","version":9,"algebra":"f04"}\n')
    code, _, err = run(capsys, "mul", "1/5", "1/0", "--cache", str(path))
    assert code == 2 and "version" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "long")
    assert code == 0
    assert json.loads(out)[0]["notes"]["vanishing"] == ["unweighted"]
    code, out, _ = run(capsys, "verify", "--suite", "relations")
    assert code == 0


def test_closed_check(capsys):
    code, out, _ = run(capsys, "closed", "--family", "n1", "--param", "4", "--check")
    assert code == 0
    assert "agrees" in out
    code, out, _ = run(capsys, "closed", "--family", "m0", "--param", "1")
    assert out.strip() == "A^2·(1,1) + A^-2·(1,-1) + R11"


def test_scan_and_bench_write_files(capsys, tmp_path):
    scan = tmp_path / "scan.json"
    assert run(capsys, "scan", "--max-det", "5", "--out", str(scan))[0] == 0
    assert json.loads(scan.read_text())["ok"]
    bench = tmp_path / "bench.csv"
    assert run(capsys, "bench", "--max-d", "6", "--out", str(bench))[0] == 0
    assert bench.read_text().splitlines()[0] == "det,calls,cache_hits,terms,micros"


def test_contract_violation_exit_code(capsys, monkeypatch):
    from skein import engine as engine_mod
    from skein.coeffs import K0ClosureError

    def boom(*args, **kwargs):
        raise K0ClosureError("R index (0,0)")

    monkeypatch.setattr(engine_mod.Engine, "mul", boom)
    code, _, err = run(capsys, "mul", "1/3", "1/0")
    assert code == 3
    assert "contract violation" in err


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "skein.cli", "mul", "1/0", "0/1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "A^-2·(1,1) + A^2·(1,-1) + R11"
