"""Command line contract: flags, exit codes, file formats, determinism."""

import csv

import pytest

from stitchsampler.cli import main
from stitchsampler.geometry import PointSet, count_close_pairs


def _read_points(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return PointSet.from_points([(float(r["x"]), float(r["y"])) for r in rows])


def test_sample_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["sample", "--method", "stitch", "--lambda", "20", "--gamma",
            "0.5", "--r", "0.1", "--seed", "9"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().startswith(b"x,y\n")


def test_sample_lambda_zero_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    code = main(["sample", "--method", "ar", "--lambda", "0", "--gamma",
                 "0.5", "--r", "0.1", "--seed", "1", "--out", str(out)])
    assert code == 0
    assert out.read_text() == "x,y\n"


def test_sample_hardcore_output_valid(tmp_path):
    out = tmp_path / "hc.csv"
    code = main(["sample", "--method", "stitch", "--lambda", "30", "--gamma",
                 "0", "--r", "0.1", "--seed", "3", "--out", str(out)])
    assert code == 0
    ps = _read_points(out)
    assert count_close_pairs(ps, 0.1) == 0
    for x, y in ps:
        assert 0.0 <= x <= 1.0 and 0.0 <= y <= 1.0


def test_sample_rejects_bad_gamma(tmp_path, capsys):
    code = main(["sample", "--method", "ar", "--lambda", "5", "--gamma",
                 "1.5", "--r", "0.1", "--seed", "1",
                 "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_sample_prs_mid_gamma_warns(tmp_path, capsys):
    out = tmp_path / "prs.csv"
    code = main(["sample", "--method", "prs", "--lambda", "5", "--gamma",
                 "0.5", "--r", "0.1", "--seed", "2", "--out", str(out)])
    assert code == 0
    assert "experimental" in capsys.readouterr().err


def test_sample_stats_on_stderr(tmp_path, capsys):
    out = tmp_path / "s.csv"
    main(["sample", "--method", "stitch", "--lambda", "20", "--gamma", "1",
          "--r", "0.15", "--seed", "5", "--out", str(out)])
    err = capsys.readouterr().err
    for key in ("method=stitch", "backend=", "proposals=", "accept_checks=",
                "base_case_calls=", "max_recursion_depth=", "wall_time=",
                "points="):
        assert key in err


def test_sample_timeout_exit_code(tmp_path, capsys):
    code = main(["sample", "--method", "ar", "--lambda", "50", "--gamma",
                 "0", "--r", "0.1", "--seed", "1", "--timeout-secs", "0.05",
                 "--out", str(tmp_path / "t.csv")])
    assert code == 3
    assert "timed out" in capsys.readouterr().err


def test_sample_rect_flags(tmp_path):
    out = tmp_path / "rect.csv"
    code = main(["sample", "--method", "ar", "--lambda", "10", "--gamma",
                 "1", "--r", "0.1", "--width", "2", "--height", "0.5",
                 "--seed", "4", "--out", str(out)])
    assert code == 0
    for x, y in _read_points(out):
        assert 0.0 <= x <= 2.0 and 0.0 <= y <= 0.5


def test_bench_cli_writes_grid(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code = main(["bench", "--methods", "ar,stitch", "--lambda-grid", "5:7:1",
                 "--gamma", "1", "--r", "0.15", "--reps", "2",
                 "--seed", "11", "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 2 * 3 * 2
    assert {r["method"] for r in rows} == {"ar", "stitch"}


def test_bench_cli_unknown_method(tmp_path, capsys):
    out = tmp_path / "no.csv"
    code = main(["bench", "--methods", "ar,warp", "--out", str(out)])
    assert code == 2
    assert not out.exists()
    assert "unknown method" in capsys.readouterr().err


def test_ising_cli_roundtrip(tmp_path):
    graph = tmp_path / "graph.csv"
    graph.write_text("u,v\n0,1\n1,2\n2,3\n")
    out = tmp_path / "coloring.csv"
    code = main(["ising", "--beta", "0.5", "--graph", str(graph),
                 "--seed", "6", "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(open(out)))
    assert [r["vertex"] for r in rows] == ["0", "1", "2", "3"]
    assert all(r["color"] in ("0", "1") for r in rows)
    # Same seed reruns byte-identically.
    out2 = tmp_path / "coloring2.csv"
    main(["ising", "--beta", "0.5", "--graph", str(graph),
          "--seed", "6", "--out", str(out2)])
    assert out.read_bytes() == out2.read_bytes()


def test_ising_cli_bad_graph_header(tmp_path, capsys):
    graph = tmp_path / "bad.csv"
    graph.write_text("a,b\n0,1\n")
    code = main(["ising", "--beta", "0.5", "--graph", str(graph),
                 "--seed", "1", "--out", str(tmp_path / "o.csv")])
    assert code == 2
    assert "header" in capsys.readouterr().err


def test_verify_cli_gamma_one(capsys):
    code = main(["verify", "--suite", "gamma-one"])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0] == "n,prob_oracle,prob_empirical,stderr"
    assert lines[-1].startswith("PASS suite=gamma-one p=")


def test_verify_cli_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nonsense"])


def test_cli_requires_subcommand():
    with pytest.raises(SystemExit):
        main([])
