"""The ``fano`` command and the identity registry."""

import json

import jsonschema
import pytest

from fano_calculus import cli
from fano_calculus.registry import (
    IdentityRecord, RegistryError, UnknownIdentity, load_registry, report_schema, run_suite, select,
)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_names_are_unique_and_sorted():
    recs = load_registry()
    names = [r.name for r in recs]
    assert names == sorted(names)
    assert len(set(names)) == len(names)


def test_minpoly_filter_selects_four_records():
    assert len(select(load_registry(), "minpoly-*")) == 4


def test_unknown_filter_is_an_error():
    with pytest.raises(UnknownIdentity):
        select(load_registry(), "no-such-identity")


def test_bad_records_are_rejected(tmp_path):
    with pytest.raises(RegistryError):
        IdentityRecord.from_dict({"name": "Bad_Name", "paper_ref": "x", "lhs": "g", "rhs": "g"})
    with pytest.raises(RegistryError):
        IdentityRecord.from_dict({"name": "no-op", "paper_ref": "x", "op": "nope"})
    with pytest.raises(RegistryError):
        IdentityRecord.from_dict({"name": "both", "paper_ref": "x", "lhs": "g", "rhs": "g", "op": "proj.pi_tr"})
    dup = tmp_path / "dup.json"
    dup.write_text(json.dumps({"identities": [{"name": "taut-g4", "paper_ref": "", "lhs": "g", "rhs": "g"}]}))
    with pytest.raises(RegistryError):
        load_registry(dup)


def test_user_registry_file(tmp_path):
    extra = tmp_path / "mine.json"
    extra.write_text(json.dumps({"identities": [
        {"name": "user-g3-c", "paper_ref": "user", "lhs": "g^3*c", "rhs": "0"},
        {"name": "user-wrong", "paper_ref": "user", "lhs": "g^4", "rhs": "100*o", "expect": "fail"},
    ]}))
    code, report = run_suite("user-*", extra=extra)
    assert code == 0
    assert [r["name"] for r in report["results"]] == ["user-g3-c", "user-wrong"]


def test_failing_record_gives_exit_one(tmp_path):
    extra = tmp_path / "mine.json"
    extra.write_text(json.dumps([{"name": "user-wrong", "paper_ref": "user", "lhs": "g^4", "rhs": "100*o"}]))
    code, report = run_suite("user-*", extra=extra)
    assert code == 1
    assert report["results"][0]["status"] == "fail"
    assert report["results"][0]["witness"]["lhs value"] == "108*o"


def test_report_validates_against_schema(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--only", "taut-*", "--json", str(path), "--seed", "3")
    assert code == 0
    report = json.loads(path.read_text())
    jsonschema.validate(report, report_schema())
    assert report["seed"] == 3
    assert all(r["status"] == "pass" for r in report["results"])


def test_names_are_stable_across_runs():
    _, a = run_suite("cylinder-*")
    _, b = run_suite("cylinder-*")
    assert [r["name"] for r in a["results"]] == [r["name"] for r in b["results"]]
    assert len(a["results"]) == 16


def test_verify_only_minpoly(capsys):
    code, out, _ = run(capsys, "verify", "--only", "minpoly-*")
    assert code == 0
    assert out.strip().splitlines()[-1] == "4/4 identities pass"


def test_verify_unknown_filter_exits_two(capsys):
    code, _, err = run(capsys, "verify", "--only", "zzz*")
    assert code == 2
    assert "zzz" in err


@pytest.mark.parametrize("expr, shown", [
    ("g^2 * g^2", "108*o"),
    ("push(D, pt[l])", "pt[l]"),
    ("((1/3)*(g^2 - c))^2", "5*o"),
])
def test_eval_worked_examples(capsys, expr, shown):
    code, out, _ = run(capsys, "eval", expr)
    assert code == 0
    assert out.strip() == shown


def test_eval_exit_codes(capsys):
    code, _, err = run(capsys, "eval", "g + c")
    assert code == 2 and err.startswith("fano eval: 1:3:")
    code, _, err = run(capsys, "eval", "g $")
    assert code == 2
    code, _, err = run(capsys, "eval", "g * S[l]")
    assert code == 1


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["minpoly", "7"])
    assert info.value.code == 2


def test_surface_partition(capsys):
    code, out, _ = run(capsys, "surface", "--partition")
    tris = json.loads(out)
    assert code == 0 and len(tris) == 9
    lines = [d["line"] for d in json.loads(run(capsys, "surface", "--lines")[1])]
    assert sorted(l for t in tris for l in t) == sorted(lines)


def test_surface_lines_and_triangles(capsys):
    lines = json.loads(run(capsys, "surface", "--lines")[1])
    assert len(lines) == 27 and all(len(d["meets"]) == 10 for d in lines)
    assert len(json.loads(run(capsys, "surface", "--triangles")[1])) == 45


def test_surface_pair(capsys):
    code, out, _ = run(capsys, "surface", "--pair", "1", "2")
    cert = json.loads(out)
    assert code == 0 and cert["valid"]
    assert sorted(cert["secants"]) == ["C3", "C4", "C5", "C6", "L12"]
    code, _, _ = run(capsys, "surface", "--pair", "E1", "L12")
    assert code == 2


def test_tables(capsys):
    code, out, _ = run(capsys, "tables")
    rows = json.loads(out)["cylinder"]
    assert code == 0 and len(rows) == 16
    assert all(r["expected"] == r["computed"] for r in rows)


def test_minpoly_command(capsys):
    code, out, _ = run(capsys, "minpoly", "0", "--ranks", "1", "1", "1", "1")
    data = json.loads(out)
    assert code == 0
    assert data["eigenvalues"] == ["-8", "4", "16"]
    code, out, _ = run(capsys, "minpoly", "2", "--ranks", "2", "0", "0", "0", "--seed", "4")
    assert json.loads(out)["minimal_polynomial"] == "x + 2"
