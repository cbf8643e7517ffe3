import csv
import io
import json
import shutil
import subprocess

import pytest

from zext.cli import main
from zext.enumeration import double_star


@pytest.fixture
def p7_file(tmp_path):
    f = tmp_path / "p7.txt"
    f.write_text("\n".join(f"{i} {i + 1}" for i in range(6)) + "\n")
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEnumerate:
    def test_n7(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "7")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "# n=7 count=11"
        assert len(lines) == 12

    def test_n1(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "1")
        assert code == 0
        assert out.strip().splitlines() == ["# n=1 count=1", "0"]

    def test_n99_is_config_error(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", "99")
        assert code == 2
        assert "99" in err

    def test_write_cache(self, capsys, tmp_path):
        code, out, _ = run(capsys, "enumerate", "--n", "8", "--write-cache",
                           "--cache-dir", str(tmp_path))
        assert code == 0
        assert "count=23" in out
        assert (tmp_path / "trees_n8.txt").exists()


class TestVerify:
    def test_range(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "5..9")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 5
        assert all("ok" in line for line in lines)

    def test_n4_coincidence_note(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "4..4")
        assert code == 0
        assert "coincidence" in out

    def test_below_range(self, capsys):
        code, _, err = run(capsys, "verify", "--n", "3..3")
        assert code == 2


class TestTreeFileCommands:
    def test_spectrum_text(self, capsys, p7_file):
        code, out, _ = run(capsys, "spectrum", p7_file)
        assert code == 0
        assert out.strip().splitlines() == ["1 2 2", "2 2 4"]

    def test_spectrum_json(self, capsys, p7_file):
        code, out, _ = run(capsys, "spectrum", p7_file, "--format", "json")
        data = json.loads(out)
        assert data == {"n": 7, "entries": {"1,2": 2, "2,2": 4}}

    def test_index_plain(self, capsys, p7_file):
        code, out, _ = run(capsys, "index", p7_file, "--index", "M2")
        assert code == 0
        assert out.strip().endswith("= 20")

    def test_index_exp_json(self, capsys, p7_file):
        code, out, _ = run(capsys, "index", p7_file, "--index", "M2", "--exp",
                           "--format", "json")
        data = json.loads(out)
        assert data["kind"] == "exact"
        assert data["terms"] == {"2": 2, "4": 4}

    def test_level_sequence_input(self, capsys, tmp_path):
        f = tmp_path / "ds.txt"
        f.write_text(double_star(2, 3).canonical_key + "\n")
        code, out, _ = run(capsys, "index", f.as_posix(), "--index", "M2")
        assert code == 0
        # spectrum {(1,3): 2, (1,4): 3, (3,4): 1} -> 6 + 12 + 12
        assert out.strip().endswith("= 30")

    def test_hillclimb(self, capsys, p7_file):
        code, out, _ = run(capsys, "hillclimb", p7_file)
        assert code == 0
        assert out.strip().splitlines()[-1].startswith(
            f"final: {double_star(2, 3).canonical_key}"
        )

    def test_bad_tree_file(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("0 1\n0 1\n")
        code, _, err = run(capsys, "spectrum", f.as_posix())
        assert code == 2


class TestExtremalCommand:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "extremal", "--n", "8", "--index", "M2",
                           "--direction", "max", "--format", "csv", "--workers", "1")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "index", "direction", "log_value", "witness_count",
                           "witness_shapes", "matches_paper", "elapsed_ms"]
        assert rows[1][:3] == ["8", "M2", "max"]
        assert rows[1][4] == "1" and rows[1][5] == "DOUBLE_STAR" and rows[1][6] == "true"

    def test_json_carries_exact_terms(self, capsys):
        code, out, _ = run(capsys, "extremal", "--n", "6", "--index", "M2",
                           "--direction", "max", "--format", "json", "--workers", "1")
        data = json.loads(out)
        assert data[0]["value"] == {"kind": "exact", "terms": {"3": 4, "9": 1}}

    def test_unknown_index(self, capsys):
        code, _, err = run(capsys, "extremal", "--n", "7", "--index", "FOO",
                           "--direction", "max")
        assert code == 2
        assert "FOO" in err

    def test_missing_direction(self, capsys):
        code, _, err = run(capsys, "extremal", "--n", "7", "--index", "M2")
        assert code == 2


class TestTable1Command:
    def test_csv_grid(self, capsys):
        code, out, _ = run(capsys, "table1", "--n", "6..6", "--format", "csv",
                           "--workers", "1")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 17
        open_cells = {(r[1], r[2]) for r in rows[1:] if r[6] == "open"}
        assert open_cells == {("ABC", "min"), ("AZ", "max")}
        assert all(r[6] == "true" for r in rows[1:] if r[6] != "open")

    def test_index_filter(self, capsys):
        code, out, _ = run(capsys, "table1", "--n", "6..7", "--index", "M2",
                           "--format", "csv", "--workers", "1")
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 5  # header + 2 n * 2 directions


class TestConfigAndCache:
    def test_toml_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            'n = "8"\nindex = "M2"\ndirection = "max"\nworkers = 1\nformat = "csv"\n'
        )
        code, out, _ = run(capsys, "extremal", "--config", str(cfg))
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[1][:3] == ["8", "M2", "max"]

    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text('n = "8"\nindex = "M2"\ndirection = "max"\nworkers = 1\n')
        code, out, _ = run(capsys, "extremal", "--config", str(cfg),
                           "--n", "6", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[1][0] == "6"

    def test_invalid_precision_config(self, capsys):
        code, _, err = run(capsys, "extremal", "--n", "6", "--index", "M2",
                           "--direction", "max",
                           "--precision-start", "1024", "--precision-cap", "128")
        assert code == 2

    def test_cache_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("ZEXT_CACHE_DIR", str(tmp_path))
        code, _, _ = run(capsys, "enumerate", "--n", "7", "--write-cache")
        assert code == 0
        assert (tmp_path / "trees_n7.txt").exists()

    def test_cache_hit_byte_identical(self, capsys, tmp_path):
        args = ("extremal", "--n", "7", "--index", "M2", "--direction", "max",
                "--format", "json", "--workers", "1")
        _, cold, _ = run(capsys, *args)
        main(["enumerate", "--n", "7", "--write-cache", "--cache-dir", str(tmp_path)])
        capsys.readouterr()
        _, warm, _ = run(capsys, *args, "--cache-dir", str(tmp_path))
        scrub = lambda s: [
            {k: v for k, v in row.items() if k != "elapsed_ms"}
            for row in json.loads(s)
        ]
        assert scrub(cold) == scrub(warm)


class TestConsoleScript:
    def test_installed_entry_point(self):
        exe = shutil.which("zext")
        if exe is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run([exe, "enumerate", "--n", "5"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "# n=5 count=3"
