import json
import subprocess
import sys


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "subconj.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def test_analyze_by_name():
    result = run_cli("analyze", "Dihedral(5)")
    assert result.returncode == 0
    assert "order   10" in result.stdout
    assert "B=member" in result.stdout


def test_analyze_pi_only_skips_plain_classes():
    result = run_cli("analyze", "GeneralizedQuaternion(8)", "--classes", "pi")
    assert result.returncode == 0
    assert "A_pi=non-member" in result.stdout
    assert "B=undecided" in result.stdout


def test_analyze_writes_json(tmp_path):
    out = tmp_path / "report.json"
    result = run_cli("analyze", "Cyclic(6)", "--json", str(out))
    assert result.returncode == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["groups"][0]["id"] == "Cyclic(6)"
    assert doc["groups"][0]["order"] == 6
    assert doc["checks"] == []


def test_analyze_group_file(tmp_path):
    path = tmp_path / "c2.grp"
    path.write_text("degree 2\n(1,2)\n", encoding="utf-8")
    result = run_cli("analyze", str(path))
    assert result.returncode == 0
    assert "order   2" in result.stdout


def test_parse_error_exits_2(tmp_path):
    path = tmp_path / "broken.grp"
    path.write_text("degree 4\n(1,2\n", encoding="utf-8")
    result = run_cli("analyze", str(path))
    assert result.returncode == 2
    assert "line 2" in result.stderr


def test_unknown_name_exits_2():
    result = run_cli("analyze", "Monster()")
    assert result.returncode == 2
    assert "unknown group id" in result.stderr


def test_construct_round_trips(tmp_path):
    out = tmp_path / "a4.grp"
    result = run_cli("construct", "Alternating(4)", "--emit", str(out))
    assert result.returncode == 0
    result = run_cli("analyze", str(out))
    assert result.returncode == 0
    assert "order   12" in result.stdout


def test_construct_prints_without_emit():
    result = run_cli("construct", "Cyclic(4)")
    assert result.returncode == 0
    assert result.stdout.startswith("# Cyclic(4)\ndegree 4\norder 4\n")


def test_witness_rejects_unknown_class():
    result = run_cli("witness", "A_pi", "Z_pi")
    assert result.returncode == 2
    assert "unknown class id" in result.stderr


def test_usage_error_exits_2():
    result = run_cli("corpus")
    assert result.returncode == 2
