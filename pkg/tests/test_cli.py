import importlib.resources
import json

import jsonschema

from sgident.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_schema():
    ref = importlib.resources.files("sgident") / "schemas" / "check_report.schema.json"
    return json.loads(ref.read_text())


def test_check_holds_exit_zero(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--monoid", "u", "--n", "3", "--semiring", "bool", "abab=abba"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["outcome"] == "holds"


def test_check_fails_exit_one(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--monoid", "u", "--n", "3", "--semiring", "nat", "abab=abba"
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"]["outcome"] == "fails"
    assert payload["verdict"]["distinguishing_u"] == "ab"


def test_reports_validate_against_the_schema(capsys):
    schema = load_schema()
    for argv in (
        ("check", "--monoid", "u", "--n", "3", "--semiring", "bool", "--stable-output", "abab=abba"),
        ("check", "--monoid", "ut", "--n", "2", "--semiring", "nat:2,3", "xy=yx"),
        ("check", "--monoid", "r", "--n", "4", "--semiring", "interval01", "abab=abba"),
    ):
        _, out, _ = run_cli(capsys, *argv)
        jsonschema.validate(json.loads(out), schema)


def test_stable_output_is_byte_identical(capsys):
    argv = (
        "check", "--monoid", "r", "--n", "3", "--semiring", "minplus01inf",
        "--seed", "7", "--stable-output", "abab=abba",
    )
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_usage_errors_exit_two(capsys):
    assert run_cli(capsys, "check", "--monoid", "u", "--n", "3", "--semiring", "nope", "x=x")[0] == 2
    assert run_cli(capsys, "check", "--monoid", "u", "--n", "3", "--semiring", "bool", "x==")[0] == 2
    assert run_cli(capsys, "nonsense")[0] == 2
    code, _, err = run_cli(
        capsys, "closure", "--family", "gossip", "--n", "4", "--element-cap", "10"
    )
    assert code == 2 and "cap" in err


def test_witness_output(capsys):
    code, out, _ = run_cli(
        capsys, "witness", "--monoid", "u", "--n", "3", "--semiring", "nat", "abab=abba"
    )
    assert code == 1
    assert "distinguishing u: ab" in out
    assert "entry: 1 3" in out
    assert "a = " in out and "b = " in out
    code, out, _ = run_cli(
        capsys, "witness", "--monoid", "u", "--n", "3", "--semiring", "bool", "abab=abba"
    )
    assert code == 0
    assert "no witness" in out


def test_closure_dump(capsys):
    code, out, _ = run_cli(capsys, "closure", "--family", "catalanU", "--n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family=catalanU n=4 semiring=bool count=14"
    assert len(lines) == 15
    assert lines[1].endswith("\t-")  # the identity carries the empty witness word
    # dumps are stable across runs
    _, again, _ = run_cli(capsys, "closure", "--family", "catalanU", "--n", "4")
    assert out == again


def test_closure_weighted_family(capsys):
    code, out, _ = run_cli(
        capsys, "closure", "--family", "gossip_S", "--n", "2",
        "--semiring", "minplus01inf", "--s-sample", "0,1",
    )
    assert code == 0
    header = out.splitlines()[0]
    assert "s_sample=0,1" in header and "semiring=minplus01inf" in header


def test_poly_output(capsys):
    code, out, _ = run_cli(capsys, "poly", "--u", "ab", "--w", "abab")
    assert code == 0
    assert out.strip() == "x(a,1)*x(b,1) + x(a,2)*x(b,2) + x(a,3)*x(b,3)"
    code, out, _ = run_cli(capsys, "poly", "--u", "", "--w", "aab")
    assert out.strip() == "x(a,1)^2*x(b,1)"
    code, out, _ = run_cli(
        capsys, "poly", "--u", "a", "--w", "aa", "--rho", "2,4", "--n", "4"
    )
    assert out.strip() == "x(a,2) + x(a,4)"


def test_seed_environment_variable(capsys, monkeypatch):
    monkeypatch.setenv("SGIDENT_SEED", "99")
    _, out, _ = run_cli(
        capsys, "check", "--monoid", "u", "--n", "3", "--semiring", "bool",
        "--stable-output", "abab=abba",
    )
    assert json.loads(out)["seed"] == 99
    monkeypatch.delenv("SGIDENT_SEED")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "check", "--monoid", "u", "--n", "3", "--semiring", "bool",
        "--output", str(target), "abab=abba",
    )
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"]["outcome"] == "holds"


def test_verify_subcommand(capsys):
    code, out, _ = run_cli(capsys, "verify", "semiring-axioms")
    assert code == 0
    assert "PASS semiring-axioms/axioms[bool]" in out
    assert out.strip().endswith("PASS overall")
    code, out, _ = run_cli(capsys, "verify", "word-oracles", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] and all(r["ok"] for r in payload["results"])
