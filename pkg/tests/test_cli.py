"""Command-line interface: output shapes and exit codes."""

import io
import json

import pytest

from hypfield.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "--genus", "1")
    assert code == EXIT_OK
    assert "la_4 = -3*b1_1^2 + 1/2*b3_1" in out
    assert "la_6 = 2*b1_1^3 - 1/2*b1_1*b3_1 + 1/4*b2_1^2" in out


def test_table_tree_is_json(capsys):
    code, out, _ = run(capsys, "table", "--genus", "2", "--format", "tree")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["genus"] == 2
    assert data["provenance"]["w_3_3"] == "BEL1[3]"


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--genus", "2")
    assert code == EXIT_OK
    assert "5/5 equations ZERO" in out


def test_verify_corruption_hook_fails(capsys):
    code, out, err = run(capsys, "verify", "--genus", "1", "--corrupt-lambda4")
    assert code == EXIT_VERIFY
    assert "NONZERO" in out
    assert "FAILED" in err


def test_reduce_single_expression(capsys):
    code, out, _ = run(capsys, "reduce", "--genus", "1", "la4 + 3*p[1,1]^2")
    assert code == EXIT_OK
    assert out.strip() == "1/2*b3_1"


def test_reduce_fraction_output(capsys):
    code, out, _ = run(capsys, "reduce", "--genus", "1", "1/p[1,1]")
    assert code == EXIT_OK
    assert out.strip() == "(1) / (b1_1)"


def test_reduce_cubic_combination_is_zero(capsys):
    expr = "p[1,1,1]^2 - 4*p[1,1]^3 - 4*la4*p[1,1] - 4*la6"
    code, out, _ = run(capsys, "reduce", "--genus", "1", expr)
    assert code == EXIT_OK
    assert out.strip() == "0"


def test_reduce_stdin_batch(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("la4\n\np[1,1]\n"))
    code, out, _ = run(capsys, "reduce", "--genus", "1")
    assert code == EXIT_OK
    assert out.splitlines() == ["-3*b1_1^2 + 1/2*b3_1", "b1_1"]


def test_reduce_syntax_error(capsys):
    code, _, err = run(capsys, "reduce", "--genus", "1", "p[1,1")
    assert code == EXIT_USAGE
    assert "error" in err


def test_reduce_unsupported_symbol(capsys):
    code, _, err = run(capsys, "reduce", "--genus", "2", "p[3,3,3]")
    assert code == EXIT_USAGE
    assert "closure" in err


def test_reduce_division_by_zero(capsys):
    code, _, err = run(capsys, "reduce", "--genus", "1", "1/(p[1,1] - p[1,1])")
    assert code == EXIT_NUMERIC
    assert "zero" in err


def test_rank_sampling(capsys):
    code, out, _ = run(capsys, "rank", "--genus", "1", "--samples", "5", "--seed", "0")
    assert code == EXIT_OK
    assert "rank 2 at 5/5 points; rank 1 at origin" in out


def test_rank_explicit_point(capsys):
    code, out, _ = run(capsys, "rank", "--genus", "1", "--point", "1,1,1")
    assert code == EXIT_OK
    assert "lambda = -5/2,7/4" in out
    assert "rank 2" in out


def test_rank_point_length_checked(capsys):
    code, _, err = run(capsys, "rank", "--genus", "2", "--point", "1,0")
    assert code == EXIT_USAGE
    assert "coordinates" in err


def test_disc_membership(capsys):
    code, out, _ = run(capsys, "disc", "--genus", "1", "--lambda=-3,2")
    assert code == EXIT_OK
    assert "disc = 0; lambda IN Sigma_g" in out
    code, out, _ = run(capsys, "disc", "--genus", "1", "--lambda=-3,1")
    assert "disc = 81; lambda NOT IN Sigma_g" in out


def test_disc_wrong_arity(capsys):
    code, _, err = run(capsys, "disc", "--genus", "2", "--lambda", "1,2")
    assert code == EXIT_USAGE


def test_numeric_small_run(capsys):
    code, out, _ = run(capsys, "numeric", "--samples", "3", "--seed", "1")
    assert code == EXIT_OK
    assert "PASS" in out


def test_numeric_fixed_lattice(capsys):
    code, out, _ = run(
        capsys, "numeric", "--samples", "2", "--lattice", "1,0,0.25,1.15"
    )
    assert code == EXIT_OK


def test_numeric_genus_restriction(capsys):
    code, _, err = run(capsys, "numeric", "--genus", "2")
    assert code == EXIT_USAGE


def test_independence_with_control(capsys):
    code, out, _ = run(
        capsys,
        "independence",
        "--lattices", "3", "--samples", "30", "--weight-bound", "6",
    )
    assert code == EXIT_OK
    assert "multi-lattice" in out
    assert "single-lattice control:" in out
    assert "DEFICIENCY 1" in out
    assert "kernel:" in out


def test_usage_errors_from_argparse():
    with pytest.raises(SystemExit) as err:
        main(["table", "--genus", "0"])
    assert err.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as err:
        main(["bogus"])
    assert err.value.code == EXIT_USAGE


def test_version_flag():
    with pytest.raises(SystemExit) as err:
        main(["--version"])
    assert err.value.code == 0
