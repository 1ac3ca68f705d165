import subprocess
import sys
from pathlib import Path

import pytest

from gatedpcc.cli import main
from gatedpcc.grid import read_grid

FIXTURES = Path(__file__).parent / "fixtures"


def test_scan_to_stdout(capsys):
    assert main(["scan", str(FIXTURES / "valid" / "two_by_two.toml")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# grid_format=pcc-grid/1")


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_scan_to_file(fmt, tmp_path):
    out = tmp_path / f"grid.{fmt}"
    rc = main(["scan", str(FIXTURES / "valid" / "two_by_two.toml"), "--format", fmt, "--out", str(out), "--threads", "2"])
    assert rc == 0
    assert read_grid(out).values.shape == (2, 2)


@pytest.mark.parametrize("path", sorted((FIXTURES / "invalid").glob("*.toml")), ids=lambda p: p.stem)
def test_validation_exit_code(path, capsys):
    assert main(["scan", str(path)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_is_a_validation_error(tmp_path, capsys):
    assert main(["scan", str(tmp_path / "nope.toml")]) == 2


def test_convergence_exit_code(capsys):
    assert main(["scan", str(FIXTURES / "valid" / "s1_oracle_unconverged.toml")]) == 3
    assert "did not converge" in capsys.readouterr().err


def test_unwritable_output_is_reported(tmp_path, capsys):
    rc = main(["scan", str(FIXTURES / "valid" / "two_by_two.toml"), "--out", str(tmp_path / "no" / "x.csv")])
    assert rc == 1
    assert "no" in capsys.readouterr().err


def test_check_subcommand_via_module():
    proc = subprocess.run([sys.executable, "-m", "gatedpcc", "check"], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert proc.stdout.count("[PASS]") == 3
