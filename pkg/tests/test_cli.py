import json

from planecurves.cli import main
from planecurves.catalog import exceptional_quartic

from conftest import field_for


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_exceptional_quartic(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--field", "p=2,k=2", "--catalog", "exceptional_quartic",
        "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["N"] == 14 and payload["q"] == 4


def test_count_missing_file(capsys):
    code, out, err = run_cli(capsys, "count", "--curve", "does-not-exist.curve")
    assert code == 1 and "error:" in err and out == ""


def test_unknown_flag_rejected(capsys):
    code, _, err = run_cli(capsys, "count", "--field", "p=2,k=1", "--bogus", "x")
    assert code == 1 and "error:" in err


def test_two_sources_rejected(capsys):
    code, _, err = run_cli(
        capsys, "count", "--field", "p=2,k=1",
        "--inline", "0 0 1 1", "--catalog", "smooth_conic",
    )
    assert code == 1 and "exactly one" in err


def test_field_info(capsys):
    code, out, _ = run_cli(capsys, "field-info", "--field", "p=3,k=2", "--no-timestamp")
    assert code == 0
    payload = json.loads(out)
    assert payload["q"] == 9 and payload["modulus"] == [1, 0, 1]


def test_field_flag_with_modulus(capsys):
    code, out, _ = run_cli(
        capsys, "field-info", "--field", "p=2,k=2,mod=1,1,1", "--no-timestamp"
    )
    assert code == 0
    assert json.loads(out)["q"] == 4


def test_bounds_exit_code_signals_violation(capsys):
    code, out, _ = run_cli(
        capsys, "bounds", "--field", "p=2,k=2", "--catalog", "exceptional_quartic",
        "--no-timestamp", "--m-budget", "9",
    )
    assert code == 2  # sziklai is applicable and violated: an anomaly find
    payload = json.loads(out)
    assert payload["exceptional"] is True
    code, _, _ = run_cli(
        capsys, "bounds", "--field", "p=5,k=1", "--catalog", "deg_q",
        "--no-timestamp",
    )
    assert code == 0


def test_spectrum_csv(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--field", "p=2,k=1", "--inline", "0 0 1 1",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines() == ["i,a_i", "1,6", "3,1"]


def test_singular_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "singular", "--field", "p=5,k=1",
        "--inline", "0 2 1 1; 3 0 0 4", "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["singular_rational"] == ["0:0:1"]
    assert payload["geometric"]["status"] == "singular"


def test_frobenius_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "frobenius", "--field", "p=3,k=2", "--catalog", "hermitian",
        "--no-timestamp",
    )
    assert code == 0
    assert json.loads(out)["frobenius_nonclassical"] is True


def test_equiv_subcommand(capsys, tmp_path):
    quartic = exceptional_quartic(field_for(4))
    moved = quartic.transform(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    path = tmp_path / "moved.curve"
    path.write_text(moved.to_text())
    code, out, _ = run_cli(
        capsys, "equiv", "--field", "p=2,k=2", "--catalog", "exceptional_quartic",
        "--other-curve", str(path), "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True and payload["witness"] is not None


def test_catalog_list_and_emit_round_trip(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--no-timestamp")
    assert code == 0
    assert "deg_q" in json.loads(out)["entries"]
    code, out, _ = run_cli(capsys, "catalog", "--emit", "deg_q", "--field", "p=5,k=1")
    assert code == 0
    from planecurves.curve import PlaneCurve

    cur = PlaneCurve.from_text(out)
    assert cur.degree == 5


def test_verify_catalog_exit_zero(capsys):
    code, out, _ = run_cli(
        capsys, "verify-catalog", "--q", "2,3", "--skip-nonsingular",
        "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["failures"] == 0


def test_search_subcommand_json_and_csv(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--field", "p=2,k=1", "--degree", "2",
        "--mode", "exhaustive", "--require-no-linear-component", "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["best_N"] == 3
    code, out, _ = run_cli(
        capsys, "search", "--field", "p=2,k=1", "--degree", "2",
        "--mode", "exhaustive", "--require-no-linear-component",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "N,count"


def test_search_random_missing_seed(capsys):
    code, _, err = run_cli(
        capsys, "search", "--field", "p=2,k=1", "--degree", "2", "--mode", "random",
    )
    assert code == 1 and "seed" in err


def test_lemma_check_pass_and_gate(capsys):
    code, out, _ = run_cli(
        capsys, "lemma-check", "--field", "p=5,k=1", "--catalog", "deg_q",
        "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert all(c.get("pass") for c in payload["checks"].values())
    # a line has a linear component: the tangency identity is gated off
    code, out, _ = run_cli(
        capsys, "lemma-check", "--field", "p=2,k=1", "--inline", "0 0 1 1",
        "--no-timestamp",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"]["tangency_bound"]["applicable"] is False
    assert "linear component" in payload["checks"]["tangency_bound"]["reason"]


def test_json_byte_stable_with_no_timestamp(capsys):
    args = ("count", "--field", "p=2,k=2", "--catalog", "exceptional_quartic",
            "--no-timestamp")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_timestamp_present_by_default(capsys):
    code, out, _ = run_cli(capsys, "field-info", "--field", "p=2,k=1")
    assert code == 0
    assert "generated_at" in json.loads(out)
