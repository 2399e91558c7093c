"""End-to-end CLI tests through main(argv): exit codes, formats, determinism."""

import csv
import io
import json

import pytest

from srswor.cli import BENCH_HEADER, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- sample: indices mode ---

def test_sample_inorder_full_range(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "5", "--k", "5",
                           "--algo", "inorder", "--indices-only")
    assert code == 0
    assert out == "1\n2\n3\n4\n5\n"


def test_sample_k_zero_prints_nothing(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "5", "--k", "0", "--indices-only")
    assert code == 0
    assert out == ""


def test_sample_deterministic_per_seed(capsys):
    args = ("sample", "--n", "100", "--k", "10", "--seed", "7",
            "--algo", "inorder", "--indices-only")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    _, other, _ = run_cli(capsys, "sample", "--n", "100", "--k", "10", "--seed", "8",
                          "--algo", "inorder", "--indices-only")
    assert other != out1


@pytest.mark.parametrize("algo", ["fy", "sparse", "member", "preinit",
                                  "select", "inorder", "reservoir"])
def test_sample_every_algorithm_yields_valid_subset(capsys, algo):
    code, out, _ = run_cli(capsys, "sample", "--n", "30", "--k", "12",
                           "--seed", "3", "--algo", algo, "--indices-only")
    assert code == 0
    values = [int(line) for line in out.splitlines()]
    assert len(values) == 12
    assert len(set(values)) == 12
    assert all(1 <= v <= 30 for v in values)


def test_sample_sorted_algorithms_print_ascending(capsys):
    for algo in ("select", "inorder"):
        _, out, _ = run_cli(capsys, "sample", "--n", "50", "--k", "9",
                            "--seed", "11", "--algo", algo, "--indices-only")
        values = [int(line) for line in out.splitlines()]
        assert values == sorted(values)


def test_sample_k_exceeds_n(capsys):
    code, _, err = run_cli(capsys, "sample", "--n", "3", "--k", "5", "--indices-only")
    assert code == 2
    assert "exceeds" in err


def test_sample_indices_need_n(capsys):
    code, _, err = run_cli(capsys, "sample", "--k", "2", "--indices-only")
    assert code == 2
    assert "--n" in err


def test_sample_negative_k(capsys):
    code, _, _ = run_cli(capsys, "sample", "--n", "5", "--k", "-1", "--indices-only")
    assert code == 2


# --- sample: line mode ---

@pytest.fixture
def lines_file(tmp_path):
    path = tmp_path / "lines.txt"
    path.write_text("".join(f"line-{i}\n" for i in range(1, 21)))
    return str(path)


def test_sample_lines_known_n(capsys, lines_file):
    code, out, _ = run_cli(capsys, "sample", "--n", "20", "--k", "5",
                           "--seed", "2", lines_file)
    assert code == 0
    picked = out.splitlines()
    assert len(picked) == 5
    # single in-order pass: output preserves input order without repeats
    numbers = [int(s.split("-")[1]) for s in picked]
    assert numbers == sorted(numbers)
    assert len(set(numbers)) == 5


def test_sample_lines_inferred_n(capsys, lines_file):
    code, out, _ = run_cli(capsys, "sample", "--k", "4", "--seed", "5", lines_file)
    assert code == 0
    assert len(out.splitlines()) == 4


def test_sample_lines_k_exceeds_inferred_n(capsys, lines_file):
    code, _, err = run_cli(capsys, "sample", "--k", "25", lines_file)
    assert code == 2
    assert "inferred" in err


def test_sample_lines_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "sample", "--k", "2", str(tmp_path / "nope.txt"))
    assert code == 1
    assert "cannot read" in err


def test_sample_lines_short_input_with_declared_n(capsys, lines_file):
    # file has 20 lines; claiming 100 can strand a position past the end
    code, _, err = run_cli(capsys, "sample", "--n", "100", "--k", "90",
                           "--seed", "1", lines_file)
    assert code == 1
    assert "ended before" in err


def test_sample_lines_from_stdin_reservoir(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("a\nb\nc\nd\ne\n"))
    code, out, _ = run_cli(capsys, "sample", "--k", "3", "--seed", "6")
    assert code == 0
    picked = out.splitlines()
    assert len(picked) == 3
    assert set(picked) <= {"a", "b", "c", "d", "e"}
    # reservoir output is re-emitted in input order
    order = {"a": 1, "b": 2, "c": 3, "d": 4, "e": 5}
    assert [order[p] for p in picked] == sorted(order[p] for p in picked)


def test_sample_lines_stdin_with_known_n(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("a\nb\nc\nd\n"))
    code, out, _ = run_cli(capsys, "sample", "--n", "4", "--k", "2", "--seed", "9")
    assert code == 0
    assert len(out.splitlines()) == 2


def test_sample_lines_k_zero_reads_nothing(capsys, tmp_path):
    # no input needed at all when k=0
    code, out, _ = run_cli(capsys, "sample", "--k", "0", str(tmp_path / "absent.txt"))
    assert code == 0
    assert out == ""


# --- bench ---

def test_bench_header_and_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "bench", "--grid", "100:10,200:20",
                           "--algos", "fy,sparse", "--reps", "2", "--seed", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == BENCH_HEADER
    assert BENCH_HEADER == ("algorithm", "n", "k", "rep", "wall_time_ns",
                            "logical_draws", "peak_aux_entries", "seed")
    body = rows[1:]
    assert len(body) == 2 * 2 * 2  # algos x cells x reps
    for row in body:
        algo, n, k, rep, wall, draws, peak, seed = row
        assert algo in ("fy", "sparse")
        assert int(n) in (100, 200)
        assert int(wall) > 0
        assert int(draws) == int(k)  # one logical draw per selection
        assert int(seed) == 1 + int(rep)


def test_bench_deterministic_except_wall_time(capsys):
    args = ("bench", "--grid", "50:5", "--algos", "member,inorder",
            "--reps", "3", "--seed", "4")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)

    def strip_wall(text):
        rows = list(csv.reader(io.StringIO(text)))
        return [row[:4] + row[5:] for row in rows]

    assert strip_wall(out1) == strip_wall(out2)


def test_bench_peak_entries_by_algorithm(capsys):
    code, out, _ = run_cli(capsys, "bench", "--grid", "1000:100",
                           "--algos", "fy,sparse,member", "--reps", "1")
    assert code == 0
    peaks = {row[0]: int(row[6]) for row in list(csv.reader(io.StringIO(out)))[1:]}
    assert peaks["fy"] == 0  # dense array, no auxiliary hash
    assert 0 < peaks["sparse"] <= 100
    assert peaks["member"] == 100


def test_bench_unknown_algorithm(capsys):
    code, _, err = run_cli(capsys, "bench", "--grid", "10:2", "--algos", "quantum")
    assert code == 2
    assert "unknown algorithm" in err


def test_bench_bad_grid(capsys):
    for bad in ("10", "10:2:3", "ten:2", ""):
        code, _, err = run_cli(capsys, "bench", "--grid", bad)
        assert code == 2, bad
        assert "grid" in err


def test_bench_invalid_cell(capsys):
    code, _, _ = run_cli(capsys, "bench", "--grid", "10:20")
    assert code == 2
    code, _, _ = run_cli(capsys, "bench", "--grid", "0:0")
    assert code == 2


def test_bench_bad_reps(capsys):
    code, _, _ = run_cli(capsys, "bench", "--grid", "10:2", "--reps", "0")
    assert code == 2


# --- verify ---

def test_verify_quick_seed1_passes(capsys):
    code, out, err = run_cli(capsys, "verify", "--suite", "quick", "--seed", "1")
    assert code == 0
    assert err == ""
    lines = out.splitlines()
    assert lines
    assert all(line.endswith("PASS") for line in lines)


def test_verify_json_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "verify", "--suite", "quick", "--seed", "1",
                           "--json", str(path))
    assert code == 0
    payload = json.loads(path.read_text())
    assert len(payload) == len(out.splitlines())
    for record in payload:
        assert set(record) == {"name", "statistic", "p_value", "pass"}
        assert record["pass"] is True


def test_verify_alpha_one_fails_stochastic_checks(capsys):
    # alpha=1.0 makes every check with p < 1 fail by construction
    code, _, err = run_cli(capsys, "verify", "--suite", "quick", "--seed", "1",
                           "--alpha", "1.0")
    assert code == 3
    assert "failed" in err


# --- merge ---

def write_manifest(tmp_path, text):
    path = tmp_path / "manifest.tsv"
    path.write_text(text)
    return str(path)


def test_merge_full_shards_union(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "3\t3\ta,b,c\n2\t2\td,e\n")
    code, out, _ = run_cli(capsys, "merge", "--manifest", manifest, "--seed", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "# effective_size=5"
    assert sorted(lines[:-1]) == ["a", "b", "c", "d", "e"]


def test_merge_empty_shard_contributes_nothing(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "4\t0\t\n3\t3\tx,y,z\n")
    code, out, _ = run_cli(capsys, "merge", "--manifest", manifest, "--seed", "2")
    assert code == 0
    lines = out.splitlines()
    merged = lines[:-1]
    assert set(merged) <= {"x", "y", "z"}
    assert lines[-1] == f"# effective_size={len(merged)}"


def test_merge_deterministic(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "9\t4\ta,b,c,d\n7\t3\tp,q,r\n")
    _, out1, _ = run_cli(capsys, "merge", "--manifest", manifest, "--seed", "5")
    _, out2, _ = run_cli(capsys, "merge", "--manifest", manifest, "--seed", "5")
    assert out1 == out2


def test_merge_target_downsamples(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "4\t4\ta,b,c,d\n4\t4\te,f,g,h\n")
    code, out, _ = run_cli(capsys, "merge", "--manifest", manifest,
                           "--seed", "3", "--target", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "# effective_size=3"
    assert len(set(lines[:-1])) == 3


def test_merge_target_out_of_range(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "2\t2\ta,b\n2\t2\tc,d\n")
    code, _, err = run_cli(capsys, "merge", "--manifest", manifest, "--target", "9")
    assert code == 2
    assert "--target" in err


def test_merge_missing_manifest(capsys, tmp_path):
    code, _, err = run_cli(capsys, "merge", "--manifest", str(tmp_path / "no.tsv"))
    assert code == 1
    assert "cannot read" in err


@pytest.mark.parametrize("bad_line,phrase", [
    ("3\t2\n", "field"),                      # missing ids column
    ("x\t2\ta,b\n", "non-integer"),           # population not a number
    ("3\t2\ta\n", "declared size"),           # id count mismatch
    ("2\t3\ta,b,c\n", "invalid sizes"),       # k > n
    ("0\t0\t\n", "invalid sizes"),            # empty population
    ("3\t2\ta,a\n", "duplicate"),             # repeated identifier
])
def test_merge_malformed_manifest_lines(capsys, tmp_path, bad_line, phrase):
    manifest = write_manifest(tmp_path, "5\t2\tu,v\n" + bad_line)
    code, _, err = run_cli(capsys, "merge", "--manifest", manifest)
    assert code == 1
    assert "line 2" in err
    assert phrase in err


def test_merge_blank_lines_skipped(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "\n2\t2\ta,b\n\n2\t2\tc,d\n\n")
    code, out, _ = run_cli(capsys, "merge", "--manifest", manifest)
    assert code == 0
    assert out.splitlines()[-1] == "# effective_size=4"


def test_merge_empty_manifest(capsys, tmp_path):
    manifest = write_manifest(tmp_path, "\n\n")
    code, _, err = run_cli(capsys, "merge", "--manifest", manifest)
    assert code == 1
    assert "no shards" in err
