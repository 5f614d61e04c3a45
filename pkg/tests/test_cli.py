import io
import json
import math
from pathlib import Path

import pytest

from orthozeros import __version__
from orthozeros.cli import RunConfig, main, run

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = [
    ("zeros_jacobi_n4_n3_50.csv",
     ["zeros", "--family", "jacobi", "--alpha", "1*n^4+0", "--beta", "1*n^3+0", "--n", "50"]),
    ("compare_laguerre_a0.csv",
     ["compare", "--family", "laguerre", "--alpha", "0*n^0+0", "--n-list", "100,400"]),
    ("bound_n10_a50_b1.csv",
     ["bound", "--n", "10", "--alpha", "50", "--beta", "1"]),
]


def table(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return header, [dict(zip(header, l.split(","))) for l in lines[1:]]


@pytest.mark.parametrize("name, argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(tmp_path, name, argv):
    out = tmp_path / name
    assert main(argv + ["--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_zeros_row_count(capsys):
    assert main(GOLDEN_CASES[0][1]) == 0
    header, rows = table(capsys.readouterr().out)
    assert header == ["index", "raw", "scaled"]
    assert len(rows) == 50
    raws = [float(r["raw"]) for r in rows]
    assert raws == sorted(raws)


def test_compare_decreasing(capsys):
    assert main(GOLDEN_CASES[1][1]) == 0
    _, rows = table(capsys.readouterr().out)
    assert len(rows) == 2
    assert float(rows[1]["ks"]) < float(rows[0]["ks"])


def test_bound_rows(capsys):
    assert main(GOLDEN_CASES[2][1]) == 0
    text = capsys.readouterr().out
    _, rows = table(text)
    assert [r["k"] for r in rows] == [str(k) for k in range(1, 10)] + ["max"]
    assert float(rows[-1]["value"]) == max(float(r["value"]) for r in rows[:-1])
    assert "# s1: " in text and "# s2: " in text


def test_metadata_header(capsys):
    main(GOLDEN_CASES[1][1])
    head = [l for l in capsys.readouterr().out.splitlines() if l.startswith("#")]
    assert head[0] == f"# tool: orthozeros {__version__}"
    assert "# alpha: 0*n^0+0" in head


def test_json_mirrors_csv(capsys):
    argv = GOLDEN_CASES[1][1]
    main(argv)
    _, rows = table(capsys.readouterr().out)
    main(argv + ["--format", "json"])
    doc = json.loads("".join(l for l in capsys.readouterr().out.splitlines(True) if not l.startswith("#")))
    assert doc["columns"][0] == "n"
    assert [r["ks"] for r in doc["rows"]] == [float(r["ks"]) for r in rows]


def test_deterministic(capsys):
    main(GOLDEN_CASES[0][1])
    first = capsys.readouterr().out
    main(GOLDEN_CASES[0][1])
    assert capsys.readouterr().out == first


def test_density_and_cdf(capsys):
    assert main(["density", "--alpha", "1*n^2", "--beta", "1*n^2", "--grid-points", "5"]) == 0
    _, rows = table(capsys.readouterr().out)
    assert float(rows[2]["x"]) == 0.0
    assert float(rows[2]["density"]) == pytest.approx(math.sqrt(2) / math.pi)
    assert main(["cdf", "--general", "0,0,0.5,0.5", "--grid-points", "3"]) == 0
    _, rows = table(capsys.readouterr().out)
    assert [float(r["cdf"]) for r in rows] == pytest.approx([0.0, 0.5, 1.0], abs=1e-10)


def test_cdf_flags_sub_unit_mass(capsys):
    assert main(["cdf", "--general", "5,0,1,1", "--grid-points", "3"]) == 0
    assert "sub-unit mass" in capsys.readouterr().out


def test_extremes(capsys):
    argv = ["extremes", "--family", "laguerre", "--alpha", "1*n^3", "--n-list", "25,50,100,200"]
    assert main(argv) == 0
    _, rows = table(capsys.readouterr().out)
    errs = [float(r["err_max"]) for r in rows]
    assert errs == sorted(errs, reverse=True)
    assert rows[0]["bound"] == "nan"


def test_extremes_jacobi_has_bound(capsys):
    assert main(["extremes", "--alpha", "1*n^2", "--beta", "1*n^2", "--n", "30"]) == 0
    _, rows = table(capsys.readouterr().out)
    assert float(rows[0]["bound"]) >= float(rows[0]["max_zero"])


@pytest.mark.parametrize("argv, flag", [
    (["zeros", "--family", "jacobi", "--alpha", "1", "--beta", "1"], "--n"),
    (["zeros", "--alpha", "1", "--n", "3"], "--beta"),
    (["compare", "--family", "laguerre", "--alpha", "0", "--n-list", "4,2"], "--n-list"),
    (["compare", "--family", "laguerre", "--alpha", "0", "--n-list", "4,x"], "--n-list"),
    (["zeros", "--alpha", "n^^2", "--beta", "1", "--n", "3"], "--alpha"),
    (["cdf", "--general", "1,2", "--grid-points", "3"], "--general"),
    (["cdf", "--general", "0,0,1,1", "--tol", "0.1"], "--tol"),
    (["bound", "--family", "laguerre", "--alpha", "1", "--n", "4"], "--family"),
    (["zeros", "--family", "legendre"], "--family"),
    ([], "subcommand"),
])
def test_usage_errors(capsys, argv, flag):
    assert main(argv) == 1
    assert flag in capsys.readouterr().err


def test_domain_error_exit(capsys):
    assert main(["zeros", "--alpha", "-3", "--beta", "0", "--n", "4"]) == 2
    assert "DomainError" in capsys.readouterr().err


def test_numerical_error_exit(capsys, monkeypatch):
    from orthozeros import cli
    from orthozeros.errors import ConvergenceError

    def boom(cfg):
        raise ConvergenceError("no convergence")

    monkeypatch.setitem(cli.COMMANDS, "zeros", boom)
    assert main(["zeros", "--alpha", "1", "--beta", "1", "--n", "4"]) == 3


def test_row_errors_reported(capsys):
    assert main(["compare", "--family", "hermite", "--gamma", "1*n^1-3", "--n-list", "1,10"]) == 2
    out = capsys.readouterr().out
    assert "# error at n=1" in out
    _, rows = table(out)
    assert rows[0]["ks"] == "nan" and rows[1]["ks"] != "nan"


def test_config_round_trip(tmp_path, capsys):
    cfg = RunConfig("compare", family="laguerre", alpha="1*n^3+0", n_list=(10, 20), tol=1e-9)
    assert RunConfig.from_json(cfg.to_json()) == cfg
    path = tmp_path / "run.json"
    path.write_text(cfg.to_json())
    assert main(["compare", "--config", str(path), "--print-config"]) == 0
    assert RunConfig.from_json(capsys.readouterr().out) == cfg


def test_config_flag_overrides(tmp_path, capsys):
    cfg = RunConfig("zeros", alpha="1", beta="1", n=3)
    path = tmp_path / "run.json"
    path.write_text(cfg.to_json())
    assert main(["zeros", "--config", str(path), "--n", "4"]) == 0
    _, rows = table(capsys.readouterr().out)
    assert len(rows) == 4
    assert main(["bound", "--config", str(path)]) == 1


def test_threads_env(monkeypatch, capsys):
    argv = ["compare", "--family", "hermite", "--gamma", "1*n^1", "--n-list", "10,20,40"]
    main(argv)
    serial = capsys.readouterr().out
    monkeypatch.setenv("OZ_THREADS", "3")
    main(argv)
    assert capsys.readouterr().out == serial
    monkeypatch.setenv("OZ_THREADS", "many")
    assert main(argv) == 1


def test_run_writes_to_stream():
    buf = io.StringIO()
    assert run(RunConfig("bound", alpha="0", beta="0", n=2), stdout=buf) == 0
    assert buf.getvalue().splitlines()[-1].startswith("max,")
