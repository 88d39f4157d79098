"""Tests for the command line interface.

Shape resolution, the JSON envelope, determinism, exit codes, and every
verification suite at small rank.
"""
import argparse
import json

import mpmath as mp
import pytest

from glcoeff.cli import _resolve_shape, main
from glcoeff.numeric import working


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_envelope_and_gl2_example(capsys):
    code, out, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "2",
                           "--S", "", "--prec", "128")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"config", "query", "results", "diagnostics"}
    assert doc["config"] == {
        "precision_bits": 128,
        "jet_guard_order": 4,
        "seed": 0,
        "field": "Q",
        "tolerance_exponent": 64,
    }
    assert doc["query"] == {"command": "coeff", "d": 1, "r": 2, "S": ""}
    assert len(doc["results"]) == 2
    full = doc["results"][-1]
    assert full["levi"] == [2]
    assert full["a_tilde"].startswith("-0.6907756487602923947")
    assert doc["results"][0]["a"] == "1.0"


def test_single_row_for_gl1(capsys):
    code, out, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "1",
                           "--prec", "96")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["results"]) == 1
    row = doc["results"][0]
    assert row["weyl_weight"] == "1"
    with working(96):
        assert abs(mp.mpf(row["a_tilde"]) - 1) < mp.mpf(2) ** -80


def test_rows_follow_the_enumeration(capsys):
    code, out, _ = run_cli(capsys, "coeff", "--d", "2", "--r", "2",
                           "--S", "2,3", "--prec", "128")
    assert code == 0
    doc = json.loads(out)
    assert [row["levi"] for row in doc["results"]] == [[2, 2], [4]]
    assert [row["class_size"] for row in doc["results"]] == [3, 1]


def test_shape_resolution():
    def ns(**kw):
        base = {"d": None, "r": None, "n": None}
        base.update(kw)
        return argparse.Namespace(**base)

    assert _resolve_shape(ns(d=2, r=3)) == (2, 3)
    assert _resolve_shape(ns(n=6, d=2)) == (2, 3)
    assert _resolve_shape(ns(n=6, r=3)) == (2, 3)
    assert _resolve_shape(ns(n=5)) == (1, 5)
    with pytest.raises(ValueError):
        _resolve_shape(ns(n=5, d=2))
    with pytest.raises(ValueError):
        _resolve_shape(ns(n=5, r=2))
    with pytest.raises(ValueError):
        _resolve_shape(ns(d=2, r=3, n=5))
    with pytest.raises(ValueError):
        _resolve_shape(ns())


def test_zeta_xi_at_two(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--eval", "xi", "--at", "2",
                           "--prec", "192")
    assert code == 0
    doc = json.loads(out)
    with working(192):
        value = mp.mpf(doc["results"][0]["coefficient"])
        assert abs(value - mp.pi / 6) < mp.mpf("1e-50")


def test_zeta_pole_reported_as_laurent(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--eval", "xi", "--at", "1",
                           "--prec", "128")
    assert code == 0
    doc = json.loads(out)
    assert doc["diagnostics"]["low_order"] == -1
    assert doc["results"][0]["order"] == -1


def test_zeta_tower_value_at_center(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--eval", "ztilde", "--at", "1",
                           "--d", "1", "--prec", "128")
    assert code == 0
    doc = json.loads(out)
    with working(128):
        assert abs(mp.mpf(doc["results"][0]["coefficient"]) - 1) \
            < mp.mpf("1e-35")


def test_repeated_runs_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "2")
    _, second, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "2")
    assert first == second


def test_doubling_precision_moves_values_little(capsys):
    _, low, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "2",
                        "--prec", "128")
    _, high, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "2",
                         "--prec", "256")
    row_low = json.loads(low)["results"][-1]
    row_high = json.loads(high)["results"][-1]
    with working(320):
        a, b = mp.mpf(row_low["a"]), mp.mpf(row_high["a"])
        assert abs(a - b) / abs(b) < mp.mpf(2) ** -120


def test_env_var_sets_default_precision(capsys, monkeypatch):
    monkeypatch.setenv("ARTHUR_COEFF_PREC", "96")
    code, out, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "1")
    assert code == 0
    assert json.loads(out)["config"]["precision_bits"] == 96


def test_table_format(capsys):
    code, out, _ = run_cli(capsys, "coeff", "--d", "1", "--r", "2",
                           "--prec", "128", "--format", "table")
    assert code == 0
    assert "{" not in out
    assert "a_tilde" in out
    assert "max_route_disagreement" in out


def test_orbit_enumeration(capsys):
    code, out, _ = run_cli(capsys, "orbits", "--d", "2", "--r", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["diagnostics"]["classes"] == 2
    assert doc["diagnostics"]["target_orbit"] == [2, 2]
    assert doc["results"][0]["weyl_weight"] == "1/6"


def test_volume_table(capsys):
    code, out, _ = run_cli(capsys, "volumes", "--d", "1", "--r", "2",
                           "--prec", "128")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["results"]) == 2
    assert set(doc["results"][0]) == {"parts", "gl_ambient", "block_levi",
                                      "minimal_levi", "group_block"}


@pytest.mark.parametrize("suite,n", [
    ("covolumes", "4"),
    ("cp-identity", "3"),
    ("prolongement4", "3"),
    ("induction-oracle", "3"),
    ("routes", "2"),
])
def test_verification_suites_pass_at_small_rank(capsys, suite, n):
    code, out, _ = run_cli(capsys, "verify", suite, "--n", n,
                           "--prec", "128")
    assert code == 0
    doc = json.loads(out)
    assert doc["diagnostics"]["passed"] is True


def test_unknown_suite_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuch"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_contradictory_shape_exits_nonzero(capsys):
    code, _, err = run_cli(capsys, "coeff", "--n", "5", "--d", "2")
    assert code == 2
    assert "multiple" in err


def test_parallel_expansion_matches_serial(capsys):
    _, serial, _ = run_cli(capsys, "expansion", "--d", "2", "--r", "2",
                           "--S", "2", "--prec", "128", "--jobs", "1")
    _, parallel, _ = run_cli(capsys, "expansion", "--d", "2", "--r", "2",
                             "--S", "2", "--prec", "128", "--jobs", "2")
    assert json.loads(serial)["results"] == json.loads(parallel)["results"]


def test_field_file_failure_exits_cleanly(capsys, gaussian_field_file):
    code, _, err = run_cli(capsys, "coeff", "--d", "1", "--r", "2",
                           "--field", gaussian_field_file, "--prec", "64")
    assert code == 2
    assert err.startswith("error:")


def test_field_file_zeta_works_where_it_converges(capsys, gaussian_field_file):
    code, out, _ = run_cli(capsys, "zeta", "--eval", "xi", "--at", "10",
                           "--field", gaussian_field_file, "--prec", "32",
                           "--order", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["field"] == gaussian_field_file
    assert doc["results"]
    assert doc["diagnostics"]["coefficients"] == len(doc["results"])


def test_field_file_budget_failure_exits_cleanly(capsys, gaussian_field_file):
    code, _, err = run_cli(capsys, "zeta", "--eval", "xi", "--at", "6",
                           "--field", gaussian_field_file, "--prec", "64")
    assert code == 2
    assert "error:" in err and "bits" in err
