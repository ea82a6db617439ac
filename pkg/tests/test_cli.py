import io
from pathlib import Path

import pytest

from imlcs import cli, fixtures, harness

DATA = Path(cli.__file__).with_name("data")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bench_two_algorithms_agree(capsys):
    code, out, _ = run(capsys, "bench", "--gen", "1", "-S", "4", "-k", "3", "-m", "8",
                       "--ops", "300", "--algs", "imlcs,quickdp", "--seed", "7")
    assert code == 0
    records = harness.read_csv(out)
    assert [r.algorithm for r in records] == ["imlcs", "quick-dp"]
    assert len({r.final_mlcs_len for r in records}) == 1
    assert all(r.ops == 300 and r.seed == 7 for r in records)


def test_zero_ops_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bench", "--ops", "0"])
    assert exc.value.code == 1


def test_k_below_two_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "-k", "1"])
    assert exc.value.code == 1


def test_unknown_algorithm(capsys):
    code, _, err = run(capsys, "bench", "--algs", "magic", "--ops", "10")
    assert code == 1 and "magic" in err


def test_sweep_rows_ascend_in_m(capsys):
    code, out, _ = run(capsys, "bench", "-m", "16,4,8", "--ops", "100", "--algs", "imlcs,naive-dp", "--seed", "1")
    assert code == 0
    records = harness.read_csv(out)
    for alg in ("imlcs", "naive-dp"):
        assert [r.m for r in records if r.algorithm == alg] == [4, 8, 16]


def test_seed_falls_back_to_environment(capsys, monkeypatch):
    monkeypatch.setenv("IMLCS_SEED", "11")
    _, out, _ = run(capsys, "bench", "-m", "4", "--ops", "50", "--algs", "imlcs")
    assert harness.read_csv(out)[0].seed == 11
    monkeypatch.setenv("IMLCS_SEED", "eleven")
    code, _, err = run(capsys, "bench", "-m", "4", "--ops", "50", "--algs", "imlcs")
    assert code == 1 and "IMLCS_SEED" in err
    monkeypatch.delenv("IMLCS_SEED")
    _, out, _ = run(capsys, "bench", "-m", "4", "--ops", "50", "--algs", "imlcs")
    assert harness.read_csv(out)[0].seed == 0


def test_resource_cap_marks_row_skipped(capsys):
    code, out, err = run(capsys, "bench", "-m", "16", "--ops", "200", "--algs", "imlcs,naive-dp",
                         "--dp-cap", "10", "--seed", "3")
    assert code == 3
    rows = {r.algorithm: r for r in harness.read_csv(out)}
    assert rows["naive-dp"].skipped == "resource"
    assert rows["imlcs"].skipped == ""
    assert "skipped" in err


def test_sliding_bench_uses_bundled_proteins(capsys):
    code, out, _ = run(capsys, "bench", "--gen", "sliding", "-k", "2", "-m", "12", "--ops", "200",
                       "--algs", "imlcs,naive-dp,quick-dp")
    assert code == 0
    records = harness.read_csv(out)
    assert len({r.final_mlcs_len for r in records}) == 1
    assert all(r.generator == "sliding" and r.S <= 21 for r in records)


def test_csv_round_trip():
    records = [
        harness.BenchRecord("gen1", 4, 3, 8, 100, "imlcs", 1234.5, 0, 3, 1),
        harness.BenchRecord("gen2", 2, 2, 16, 10, "naive-dp", 0.0, 0, 0, 9, "resource"),
    ]
    buf = io.StringIO()
    harness.write_csv(records, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == harness.CSV_HEADER
    back = harness.read_csv(text)
    assert back == records
    again = io.StringIO()
    harness.write_csv(back, again)
    assert again.getvalue() == text


def test_verify_random_passes(capsys):
    code, out, _ = run(capsys, "verify", "-S", "2", "-k", "3", "-m", "8", "--ops", "2000", "--seed", "1")
    assert code == 0 and out.startswith("PASS")


def test_verify_unary_alphabet(capsys):
    code, out, _ = run(capsys, "verify", "-S", "1", "-k", "3", "-m", "6", "--ops", "500", "--deep")
    assert code == 0 and "deep" in out


def test_verify_fixtures_deep(capsys):
    code, out, _ = run(capsys, "verify", "--deep", "--fixtures")
    assert code == 0
    assert out.strip() == "PASS fixtures"


def test_verify_reports_counterexample(capsys, monkeypatch):
    # a broken oracle must surface as exit code 2 with a seed and op index
    monkeypatch.setattr(harness.baselines, "naive_dp", lambda store, cap=None: -1)
    code, out, _ = run(capsys, "verify", "-m", "4", "--ops", "20", "--seed", "5")
    assert code == 2
    assert "seed=5" in out and "op#" in out


def test_trace_reproduces_both_tables(capsys, tmp_path):
    script = tmp_path / "fig.script"
    script.write_text(fixtures.FIGURE_SCRIPT)
    code, out, err = run(capsys, "trace", "--script", str(script))
    assert code == 0
    assert out == (DATA / "table1.txt").read_text()
    assert err.startswith("alphabet:")
    code, out, _ = run(capsys, "trace", "--script", str(DATA / "figure.script"))
    assert code == 0
    assert out == (DATA / "table2.txt").read_text()
    assert "10: (19,18,21,15)" in out


def test_trace_empty_script_prints_nothing(capsys, tmp_path):
    script = tmp_path / "empty.script"
    script.write_text("# nothing here\n\n")
    code, out, _ = run(capsys, "trace", "--script", str(script))
    assert code == 0 and out == ""


def test_trace_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("string 1 ab; string 2 ba\n"))
    code, out, _ = run(capsys, "trace", "--script", "-")
    assert code == 0
    # total order: last coordinate most significant
    assert out == "1: (2,1); (1,2)\n"


@pytest.mark.parametrize("text", ["jump 1", "pop", "pop 0", "append 1 xy", "string x ab"])
def test_trace_rejects_bad_scripts(capsys, tmp_path, text):
    script = tmp_path / "bad.script"
    script.write_text(text)
    code, _, err = run(capsys, "trace", "--script", str(script))
    assert code == 1 and "line 1" in err


def test_trace_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "trace", "--script", str(tmp_path / "nope"))
    assert code == 1 and "cannot read" in err


def test_plot_single_point(capsys, tmp_path):
    csv_path = tmp_path / "one.csv"
    buf = io.StringIO()
    harness.write_csv([harness.BenchRecord("gen1", 4, 3, 8, 100, "imlcs", 50.0, 0, 3, 1)], buf)
    csv_path.write_text(buf.getvalue())
    code, out, _ = run(capsys, "plot", str(csv_path))
    assert code == 0
    gp = (tmp_path / "one.gp").read_text()
    assert "set logscale xy" in gp and "one_imlcs.dat" in gp
    assert (tmp_path / "one_imlcs.dat").read_text().splitlines()[1:] == ["8 50.0"]
    assert str(tmp_path / "one.gp") in out


def test_plot_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "plot", str(tmp_path / "missing.csv"))
    assert code == 1 and "cannot read" in err


def test_plot_sweep_series_sorted(capsys, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    rows = [
        harness.BenchRecord("gen1", 4, 3, m, 100, alg, float(m * t), 0, 3, seed)
        for m in (64, 8, 32, 16)
        for alg, t in (("imlcs", 1), ("quick-dp", 5))
        for seed in (1, 2, 3)
    ]
    buf = io.StringIO()
    harness.write_csv(rows, buf)
    csv_path.write_text(buf.getvalue())
    out_dir = tmp_path / "plots"
    code, _, _ = run(capsys, "plot", str(csv_path), "-o", str(out_dir))
    assert code == 0
    for alg in ("imlcs", "quick-dp"):
        lines = (out_dir / f"sweep_{alg}.dat").read_text().splitlines()[1:]
        xs = [int(line.split()[0]) for line in lines]
        assert xs == sorted(xs) == [8, 16, 32, 64]


def test_gen2_counting_is_flagged(capsys):
    code, out, err = run(capsys, "bench", "--gen", "2", "-m", "4", "--ops", "60", "--algs", "imlcs", "--seed", "2")
    assert code == 0 and "k operations" in err
    assert harness.read_csv(out)[0].ops == 60
