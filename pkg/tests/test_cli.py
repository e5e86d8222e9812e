import json
import subprocess
import sys


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "deflap", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0, cp.stderr
    for name in ("rho", "locate", "recurrence", "shearer", "tau0", "sstar",
                 "limits-table", "verify", "reproduce"):
        assert name in cp.stdout


def test_rho_caterpillar():
    cp = run_cli("rho", "--caterpillar", "[31,23,9,17,23]",
                 "--s", "0.3359489", "--lo", "1", "--hi", "5.4")
    assert cp.returncode == 0, cp.stderr
    assert cp.stdout.strip() == "5.39999873155"


def test_rho_default_bracket_and_json():
    cp = run_cli("rho", "--caterpillar", "2 0 3", "--s", "0.7", "--json")
    assert cp.returncode == 0, cp.stderr
    payload = json.loads(cp.stdout)
    assert set(payload) == {"rho", "low", "high", "iterations"}
    # rho prints at --target-digits, the bracket at --print-digits
    assert abs(float(payload["rho"]) - float(payload["low"])) < 1e-9
    assert float(payload["high"]) - float(payload["low"]) < 1e-9
    assert payload["iterations"] > 0


def test_rho_rejects_bad_literal():
    cp = run_cli("rho", "--caterpillar", "[31,23,9,17,23", "--s", "0.3")
    assert cp.returncode == 2
    assert "caterpillar" in cp.stderr


def test_locate_tree_file(tmp_path):
    tree = tmp_path / "star.txt"
    tree.write_text("edge 0 1\nedge 0 2\nedge 0 3\n")
    cp = run_cli("locate", "--tree", str(tree), "--s", "0.9", "--point", "1.0")
    assert cp.returncode == 0, cp.stderr
    pos, neg, zero = map(int, cp.stdout.split())
    assert (pos, neg, zero) == (1, 1, 2)


def test_locate_missing_file():
    cp = run_cli("locate", "--tree", "/nonexistent/tree.txt", "--s", "0.9", "--point", "1")
    assert cp.returncode == 2


def test_recurrence_params_output():
    cp = run_cli("recurrence", "--s", "0.17", "--lambda", "1.5")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.splitlines()
    assert lines[0] == "adapted: yes"
    assert any(line.startswith("theta: ") for line in lines)
    cp = run_cli("recurrence", "--s", "0.3", "--lambda", "1.5")
    assert cp.stdout.splitlines()[0] == "adapted: no"
    assert not any(line.startswith("theta:") for line in cp.stdout.splitlines())


def test_recurrence_orbit_table():
    cp = run_cli("recurrence", "--s", "0.17", "--lambda", "1.5",
                 "--orbit", "-0.5", "--steps", "8")
    assert cp.returncode == 0, cp.stderr
    assert "behavior: increases-to-theta" in cp.stdout
    assert "j,x_j" in cp.stdout


def test_shearer_generate():
    cp = run_cli("shearer", "--lambda", "5.4", "--s", "auto", "--k", "5")
    assert cp.returncode == 0, cp.stderr
    assert "counts: [31 23 9 17 23]" in cp.stdout
    assert "vertices: 108" in cp.stdout


def test_shearer_report_csv():
    cp = run_cli("shearer", "--lambda", "1.5", "--s", "auto", "--report", "5,10")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.splitlines()
    assert lines[0] == "k,counts,rho,error"
    assert lines[1].startswith("5,[20 4 0 2 9],1.49999982716896,")


def test_tau0_and_print_digits():
    cp = run_cli("tau0", "--s", "0.5")
    assert cp.stdout.strip() == "2.34108180580856"
    cp = run_cli("tau0", "--s", "0.5", "--print-digits", "6")
    assert cp.stdout.strip() == "2.34108"


def test_sstar():
    cp = run_cli("sstar", "--lambda", "2025", "--digits", "60")
    assert cp.returncode == 0, cp.stderr
    assert cp.stdout.strip().startswith("0.9990125897")
    cp = run_cli("sstar", "--lambda", "1.5", "--json")
    payload = json.loads(cp.stdout)
    assert payload["sstar"].startswith("0.17869088")


def test_digits_env_var_equivalence(tmp_path):
    import os

    env = dict(os.environ, DEFLAP_DIGITS="64")
    a = run_cli("tau0", "--s", "0.9", env=env)
    b = run_cli("tau0", "--s", "0.9", "--digits", "64")
    assert a.stdout == b.stdout


def test_limits_table_golden_and_deterministic():
    a = run_cli("limits-table", "--s-list", "0.001,0.5,1.0")
    assert a.returncode == 0, a.stderr
    assert a.stdout == (
        "s,tau0\n"
        "0.001,1.00205934199661\n"
        "0.5,2.34108180580856\n"
        "1.0,4.38297576790624\n"
    )
    b = run_cli("limits-table", "--s-list", "0.001,0.5,1.0")
    assert a.stdout == b.stdout


def test_verify_small_sweep(tmp_path):
    out = tmp_path / "checks.csv"
    cp = run_cli("verify", "--props", "zero-eig-iff-unit-s,radius-above-one",
                 "--max-n", "4", "--s-grid", "0.9,1", "--csv", str(out))
    assert cp.returncode == 0, cp.stderr
    assert cp.stdout.startswith("checked=")
    assert "failed=0" in cp.stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "property,tree,s,result"
    assert len(lines) == 1 + 5 * 2 * 2  # five trees of n <= 4, two s, two props


def test_verify_rejects_unknown_property():
    cp = run_cli("verify", "--props", "bogus-check", "--max-n", "3")
    assert cp.returncode == 2


def test_reproduce_tau0(tmp_path):
    out = tmp_path / "t.csv"
    cp = run_cli("reproduce", "tau0_table", "--csv", str(out))
    assert cp.returncode == 0, cp.stderr
    assert out.read_text().startswith("s,tau0\n0.001,1.00205934199661\n")


def test_reproduce_failing_table_exits_one():
    cp = run_cli("reproduce", "lam1_5_half")
    assert cp.returncode == 1
    assert cp.stdout.startswith("k,counts,rho,error")
    assert "row 30: FAIL" in cp.stderr
    assert "row 50: FAIL" in cp.stderr


def test_reproduce_flagship_needs_digits():
    cp = run_cli("reproduce", "lam2025")
    assert cp.returncode == 3
    assert "250" in cp.stderr


def test_unknown_table_is_usage_error():
    cp = run_cli("reproduce", "lam9_9")
    assert cp.returncode == 2
