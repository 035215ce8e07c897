from __future__ import annotations

import pytest
from click.testing import CliRunner

from mmirp_cli import manage_cli
from mmirp_core.io import read_instance


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def instance_file(runner, tmp_path):
    target = tmp_path / "inst.txt"
    result = runner.invoke(manage_cli, ["--config", "testing", "gen", "-I", "4", "-T", "3", "-V", "2", "-P", "2", "--seed", "5", "--demand-range", "5", "20", "--out", str(target)])
    assert result.exit_code == 0, result.output
    return target


def _run(runner: CliRunner, *args: str):
    return runner.invoke(manage_cli, ["--config", "testing", *args])


def test_gen_writes_readable_instance(instance_file):
    inst = read_instance(instance_file)
    assert inst.shape == (4, 3)
    assert inst.name == "I4-T3-V2-P2-s5"


def test_solve_writes_solution_and_log(runner, instance_file, tmp_path):
    out, log = tmp_path / "sol.txt", tmp_path / "gens.csv"
    result = _run(runner, "solve", str(instance_file), "--psize", "6", "--max-gens", "2", "--out", str(out), "--log", str(log))
    assert result.exit_code == 0, result.output
    assert "total:" in result.output
    assert "generations: 2" in result.output or "(k_max)" in result.output
    assert out.read_text().rstrip().splitlines()[-1].startswith("total: ")
    assert log.read_text().startswith("gen,best,mean,cr,mr")


def test_baseline_holds_no_stock(runner, instance_file):
    result = _run(runner, "baseline", str(instance_file))
    assert result.exit_code == 0, result.output
    assert "inventory: 0.000000" in result.output


def test_oracle_show_prints_routes(runner, instance_file):
    result = _run(runner, "oracle", str(instance_file), "--show")
    assert result.exit_code == 0, result.output
    assert "schedule:" in result.output
    assert "t=1: v" in result.output


def test_export_lp_reports_families(runner, instance_file, tmp_path):
    target = tmp_path / "model.lp"
    result = _run(runner, "export-lp", str(instance_file), "--out", str(target), "--flow-sec")
    assert result.exit_code == 0, result.output
    assert "C2=" in result.output and "secflow_bal=" in result.output
    assert target.read_text().endswith("End\n")


def test_infeasible_instance_exits_with_code_three(runner, tmp_path):
    # Default demand puts more than the two vehicles can carry into period 1.
    target = tmp_path / "heavy.txt"
    assert _run(runner, "gen", "-I", "3", "-T", "3", "-V", "2", "-P", "2", "--seed", "1", "--out", str(target)).exit_code == 0
    assert _run(runner, "baseline", str(target)).exit_code == 3
    assert _run(runner, "solve", str(target), "--psize", "4", "--max-gens", "1").exit_code == 3


def test_ttest_command(runner, tmp_path):
    csv = tmp_path / "report.csv"
    csv.write_text("HBV_maga,HBV_baseline\n1,2\n2,2\n3,5\n4,3\n")
    result = _run(runner, "ttest", "--csv", str(csv), "--a", "HBV_maga", "--b", "HBV_baseline")
    assert result.exit_code == 0, result.output
    assert result.output.startswith("t = -0.77")

    missing = _run(runner, "ttest", "--csv", str(csv), "--a", "HBV_maga", "--b", "oracle")
    assert missing.exit_code == 2


def test_error_exit_codes(runner, instance_file, tmp_path):
    broken = tmp_path / "broken.txt"
    broken.write_text("nonsense\n")
    assert _run(runner, "solve", str(broken)).exit_code == 2
    assert _run(runner, "solve", str(instance_file), "--cr", "0.99").exit_code == 2

    large = tmp_path / "large.txt"
    assert _run(runner, "gen", "-I", "5", "-T", "5", "--out", str(large)).exit_code == 0
    result = _run(runner, "oracle", str(large))
    assert result.exit_code == 4
    assert "at most" in result.output


def test_bench_rejects_missing_bounds_file(runner, tmp_path):
    result = _run(runner, "bench", "--customers", "5", "--bounds", str(tmp_path / "nope.csv"))
    assert result.exit_code == 2
