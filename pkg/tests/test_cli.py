"""Command-line interface: subcommands, report format, exit codes."""

import json

import pytest

from venlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def json_lines(stdout):
    return [json.loads(line) for line in stdout.splitlines() if line.strip()]


# ---------------------------------------------------------------------------
# poly

def test_poly_print_canonical(capsys):
    code, out, _ = run(capsys, "--json", "poly", "print",
                       "--vars", "x,y", "x*y + 1/2 + y*x")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["schema"] == 1
    assert rec["verdict"] == "pass"
    assert rec["witnesses"]["canonical"] == "2*x*y + 1/2"


def test_poly_diff(capsys):
    code, out, _ = run(capsys, "--json", "poly", "diff",
                       "--vars", "x,z", "--wrt", "z", "z^2 + x z")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["derivative"] == "x + 2*z"


def test_poly_eval(capsys):
    code, out, _ = run(capsys, "--json", "poly", "eval",
                       "--vars", "x,y", "--at", "x=2,y=1/2", "x^2 y")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["value"] == "2"


def test_poly_compose(capsys):
    code, out, _ = run(capsys, "--json", "poly", "compose",
                       "--vars", "x,y", "--map", "y=y + x", "y^2")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["image"] == "x^2 + 2*x*y + y^2"


# ---------------------------------------------------------------------------
# groebner / member

def test_groebner_basis_emit(capsys):
    code, out, _ = run(capsys, "--json", "groebner", "basis",
                       "--vars", "x,y", "--order", "lex", "--emit-basis",
                       "x y - 1", "y^2 - 1")
    assert code == 0
    (rec,) = json_lines(out)
    assert sorted(rec["witnesses"]["basis"]["basis"]) == ["x - y", "y^2 - 1"]


def test_member_ideal_pass_and_fail(capsys):
    code, out, _ = run(capsys, "--json", "member", "ideal",
                       "--vars", "x", "--f", "x^2 - 1", "--gens", "x - 1")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["member"] is True

    code, out, _ = run(capsys, "--json", "member", "ideal",
                       "--vars", "x,y", "--f", "1", "--gens", "x,y")
    assert code == 1
    (rec,) = json_lines(out)
    assert rec["witnesses"]["member"] is False
    assert rec["witnesses"]["normal_form"] == "1"


def test_member_subalgebra_with_inversion(capsys):
    code, out, _ = run(capsys, "--json", "member", "subalgebra",
                       "--vars", "x,z", "--coeff-vars", "x",
                       "--invert", "x", "--f", "z", "--gens", "x z")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["member"] is True
    assert rec["witnesses"]["validated"] is True


def test_member_subalgebra_nonmember(capsys):
    code, out, _ = run(capsys, "--json", "member", "subalgebra",
                       "--vars", "z", "--f", "z", "--gens", "z^2,z^3")
    assert code == 1


# ---------------------------------------------------------------------------
# lnd (derivation file based)

DERIVATION = "# constants: a\nD(x) = 0\nD(y) = a x\nD(z) = 1\n"


@pytest.fixture
def dfile(tmp_path):
    path = tmp_path / "D.txt"
    path.write_text(DERIVATION)
    return str(path)


def test_lnd_apply(capsys, dfile):
    code, out, _ = run(capsys, "--json", "lnd", "apply",
                       "--derivation", dfile, "--f", "y z")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["image"] == "a*x*z + y"


def test_lnd_nilpotent(capsys, dfile):
    code, out, _ = run(capsys, "--json", "lnd", "nilpotent", "--derivation", dfile)
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["indices"] == {"x": 1, "y": 2, "z": 2}


def test_lnd_nilpotent_undetermined_exit_2(capsys, tmp_path):
    path = tmp_path / "euler.txt"
    path.write_text("D(z) = z\n")
    code, out, _ = run(capsys, "--json", "lnd", "nilpotent",
                       "--derivation", str(path), "--cap", "5")
    assert code == 2
    (rec,) = json_lines(out)
    assert rec["verdict"] == "undetermined"


def test_lnd_dixmier(capsys, dfile):
    code, out, _ = run(capsys, "--json", "lnd", "dixmier",
                       "--derivation", dfile, "--slice", "z", "--f", "y")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["projection"] == "-a*x*z + y"


def test_lnd_kernel_full_pipeline(capsys, dfile):
    code, out, _ = run(capsys, "--json", "lnd", "kernel",
                       "--derivation", dfile, "--slice", "z")
    assert code == 0
    (rec,) = json_lines(out)
    payload = rec["witnesses"]
    assert payload["generation"]["verdict"] == "pass"
    assert payload["polynomial_ring_pair"]["verdict"] == "pass"
    assert payload["stably_free_shadow"]["verdict"] == "pass"


def test_lnd_bad_slice_is_usage_error(capsys, dfile):
    code, _, err = run(capsys, "lnd", "dixmier",
                       "--derivation", dfile, "--slice", "z^2", "--f", "y")
    assert code == 3
    assert "error" in err


# ---------------------------------------------------------------------------
# venereau

def test_venereau_family_build(capsys):
    code, out, _ = run(capsys, "--json", "venereau", "family",
                       "--family", "venereau", "--n", "1")
    assert code == 0
    (rec,) = json_lines(out)
    assert rec["witnesses"]["label"] == "v1"
    assert rec["witnesses"]["lambda"] == "z^2"


def test_venereau_verify_all_pass(capsys):
    code, out, _ = run(capsys, "--json", "venereau", "verify",
                       "--family", "venereau", "--n", "1",
                       "--checks", "residual,jacobian")
    assert code == 0
    recs = json_lines(out)
    assert [r["check"] for r in recs] == ["residual", "jacobian"]
    assert all(r["verdict"] == "pass" for r in recs)


def test_venereau_verify_custom_spec(capsys):
    code, out, _ = run(capsys, "--json", "venereau", "verify",
                       "--r", "x", "--s", "1", "--Q", "V + W",
                       "--checks", "residual,localized,jacobian")
    assert code == 0
    recs = json_lines(out)
    assert all(r["verdict"] == "pass" for r in recs)


def test_venereau_missing_q_usage_error(capsys):
    code, _, err = run(capsys, "venereau", "build")
    assert code == 3
    assert "either --family or --Q" in err


# ---------------------------------------------------------------------------
# exit codes, determinism, text mode

def test_unknown_subcommand_exit_3(capsys):
    assert run(capsys, "frobnicate")[0] == 3


def test_parse_error_exit_3(capsys):
    code, _, err = run(capsys, "poly", "print", "--vars", "x", "x + + 1")
    assert code == 3
    assert "error" in err


def test_reports_are_byte_identical(capsys):
    argv = ["--json", "venereau", "verify", "--family", "venereau",
            "--n", "1", "--checks", "residual,localized,jacobian"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_text_mode_one_line_per_check(capsys):
    code, out, _ = run(capsys, "venereau", "verify",
                       "--family", "venereau", "--n", "1",
                       "--checks", "residual,jacobian")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("residual: pass")
    assert lines[1].startswith("jacobian: pass")
