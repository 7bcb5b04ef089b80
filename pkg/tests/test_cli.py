"""Command-line surface: subcommands, exit codes, determinism, caching."""

import json
import subprocess
import sys


from gmlab.cli import main


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "gmlab.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env, timeout=240)


class TestExitCodes:
    def test_lattice_verify_passes(self):
        r = run_cli("lattice", "verify")
        assert r.returncode == 0
        assert json.loads(r.stdout)["verdict"] == "PASS"

    def test_ck_verify_passes(self):
        for variety in ("gm4", "gm6"):
            r = run_cli("ck", "verify", "--variety", variety)
            assert r.returncode == 0

    def test_usage_error_is_2(self):
        assert main(["bott", "table", "--bundle", "omega9", "--p", "5"]) == 2

    def test_nilpotent_gap_exits_1_at_5(self):
        r = run_cli("vf", "nilpotent", "--p", "5")
        assert r.returncode == 1
        payload = json.loads(r.stdout)
        assert payload["verdict"] == "FAIL"
        assert "1111" in json.dumps(payload["analysis"])

    def test_nilpotent_passes_at_7(self):
        r = run_cli("vf", "nilpotent", "--p", "7")
        assert r.returncode == 0


class TestBottCommands:
    def test_table_markdown_has_12_rows(self):
        r = run_cli("bott", "table", "--bundle", "omega2", "--twist", "-3", "--p", "5",
                    "--emit", "markdown")
        assert r.returncode == 0
        assert len(r.stdout.strip().splitlines()) == 14  # header + rule + 12

    def test_cohomology_json(self):
        r = run_cli("bott", "cohomology", "--bundle", "omega2", "--twist", "-3", "--p", "5")
        payload = json.loads(r.stdout)
        nonzero = [e for e in payload["entries"] if e["dim"]]
        assert nonzero == [{"degree": 5, "status": "exact", "dim": 5}]


class TestHodgeCommands:
    def test_diamond_x(self):
        r = run_cli("hodge", "diamond", "--variety", "X", "--p", "5")
        payload = json.loads(r.stdout)
        assert payload["h"][3][3] == 22
        assert payload["euler"] == 32

    def test_tangent(self):
        r = run_cli("hodge", "tangent", "--p", "5")
        assert r.returncode == 0
        assert json.loads(r.stdout)["report"]["h1(X,T_X)"] == 25


class TestGmCommands:
    def test_random_roundtrip_lift_scan(self, tmp_path):
        data = tmp_path / "datum.json"
        r = run_cli("gm", "random", "--ring", "F5", "--n", "4", "--seed", "7",
                    "--out", str(data))
        assert r.returncode == 0
        r = run_cli("gm", "roundtrip", "--data", str(data))
        assert r.returncode == 0 and json.loads(r.stdout)["verdict"] == "PASS"
        out = tmp_path / "lifted.json"
        r = run_cli("gm", "lift", "--data", str(data), "--k", "3", "--out", str(out))
        assert r.returncode == 0
        lifted = json.loads(out.read_text())
        assert lifted["ring"] == {"kind": "mod-prime-power", "p": 5, "k": 3}
        r = run_cli("gm", "convert", "--data", str(data))
        assert r.returncode == 0 and len(json.loads(r.stdout)["W"]) == 9
        r = run_cli("gm", "scan", "--data", str(data), "--budget", "5000")
        assert r.returncode == 0
        r = run_cli("gm", "find-v5p", "--data", str(data), "--max-degree", "1")
        assert r.returncode == 0

    def test_seeded_output_is_byte_identical(self):
        a = run_cli("gm", "random", "--ring", "F5", "--n", "3", "--seed", "11")
        b = run_cli("gm", "random", "--ring", "F5", "--n", "3", "--seed", "11")
        assert a.stdout == b.stdout


class TestSearchCommand:
    def test_filtered_search_and_cache(self, tmp_path):
        cache = tmp_path / "hits.json"
        r = run_cli("vf", "search", "--p", "7", "--cache", str(cache))
        assert r.returncode == 0, r.stdout
        payload = json.loads(r.stdout)
        assert payload["verdict"] == "PASS"
        assert [f["p"] for f in payload["families"]] == [7]
        assert cache.exists()
        # second run reads the cache and agrees byte for byte
        r2 = run_cli("vf", "search", "--p", "7", "--cache", str(cache))
        assert r2.returncode == 0
        assert r2.stdout == r.stdout

    def test_search_range_11_to_200_is_empty(self):
        r = run_cli("vf", "search", "--p", "11..200")
        assert r.returncode == 0, r.stdout
        payload = json.loads(r.stdout)
        assert payload["families"] == []
        assert payload["verdict"] == "PASS"

    def test_certify_single_family(self):
        r = run_cli("vf", "certify", "--family", "1", "--samples", "20")
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["certificates"][0]["checks"]["vanishing_4x4_minors"] == 3150
