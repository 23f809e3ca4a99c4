import io
import json
from pathlib import Path

import pytest

from grpscheme.cli import main
from grpscheme.expr import parse_terms
from grpscheme.scalars import GF
from grpscheme.workspace import WorkspaceError, parse_workspace

CATALOG = str(Path(__file__).resolve().parents[1] / "workspaces" / "catalog.toml")

ALPHA2 = """
[field]
p = 2
[schemes.a]
basis = ["1", "x"]
mult = [["1", "1", "1", 1], ["1", "x", "x", 1], ["x", "1", "x", 1]]
unit = { "1" = 1 }
comult = [["1", "1", "1", 1], ["x", "x", "1", 1], ["x", "1", "x", 1]]
counit = { "1" = 1 }
antipode = [["1", "1", 1], ["x", "x", ANTI]]
"""


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def _write(tmp_path, text, name="ws.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_catalog_validates():
    code, text = run("validate", CATALOG)
    assert code == 0
    assert "0 failed" in text.splitlines()[-1]


def test_broken_antipode_exit_1(tmp_path):
    good = _write(tmp_path, ALPHA2.replace("ANTI", "1"), "good.toml")
    assert run("validate", good)[0] == 0
    # S(x) = x + 1
    bad = _write(tmp_path, ALPHA2.replace("ANTI", "1").replace('["x", "x", 1]]', '["x", "x", 1], ["x", "1", 1]]'))
    code, text = run("validate", bad)
    assert code == 1
    fails = [ln for ln in text.splitlines() if ln.startswith("[FAIL]")]
    assert fails and all("antipode" in ln for ln in fails)


def test_missing_file_exit_2(tmp_path):
    assert run("validate", str(tmp_path / "nope.toml"))[0] == 2


def test_parse_error_exit_2(tmp_path):
    assert run("validate", _write(tmp_path, "[field\np = 2"))[0] == 2


def test_dangling_reference_exit_2(tmp_path):
    text = "[field]\np = 2\n[embeddings.H]\nscheme = \"G\"\nideal = [\"x\"]\n"
    assert run("validate", _write(tmp_path, text))[0] == 2
    with pytest.raises(WorkspaceError):
        parse_workspace(_write(tmp_path, text, "b.toml"))


def test_bad_usage_exit_2():
    assert run("run", CATALOG, "--suite", "nope")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("norm", CATALOG, "--algebra", "missing", "--element", "v")[0] == 2
    assert run("norm", CATALOG, "--algebra", "alpha2_translation", "--element", "w")[0] == 2
    # not invariant under the subgroup
    assert run("norm", CATALOG, "--algebra", "S3_permutation", "--element", "x1", "--subgroup", "A3_in_S3")[0] == 2


def test_run_is_deterministic(tmp_path):
    j1, j2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    c1, t1 = run("run", CATALOG, "--suite", "mackey-example", "--json", str(j1))
    c2, t2 = run("run", CATALOG, "--suite", "mackey-example", "--json", str(j2), "--seed", "0")
    assert c1 == c2 == 0
    assert t1 == t2
    assert j1.read_bytes() == j2.read_bytes()
    rows = [json.loads(x) for x in j1.read_text().splitlines()]
    assert all(set(r) == {"name", "expected", "got", "pass"} for r in rows)
    dims = {r["name"]: r["got"] for r in rows}
    assert dims["heis2: dim V = dim ^H k[G]"] == 4
    assert dims["heis2: dim V^K"] == 2


def test_run_lambda_with_workers():
    a = run("run", CATALOG, "--suite", "fieldnorm", "--seed", "7")
    b = run("run", CATALOG, "--suite", "fieldnorm", "--seed", "7", "--jobs", "2")
    assert a == b and a[0] == 0


def test_norm_command():
    code, text = run("norm", CATALOG, "--algebra", "alpha2_translation", "--element", "v")
    assert code == 0
    assert "Nm_1^G(v) = v^2" in text
    assert "Mumford norm = v^2" in text
    code, text = run("norm", CATALOG, "--algebra", "F4_frobenius", "--element", "w")
    assert code == 0 and "Nm_1^G(w) = e" in text
    code, text = run("norm", CATALOG, "--algebra", "S3_permutation", "--element", "x1 + x2 + x3",
                     "--subgroup", "A3_in_S3")
    assert code == 0 and "= x1^2 + x2^2 + x3^2" in text


def test_ext_command():
    code, text = run("ext", CATALOG, "--degree", "3", "--pair", "k_C2,k_C2", "--subgroup", "one_in_C2")
    assert code == 0
    assert [ln.split()[-1] for ln in text.splitlines() if ln.startswith("dim Ext^") and "_C2(" in ln] == ["1"] * 4


def test_other_commands():
    assert "= 2" in run("doublecoset", CATALOG, "--right", "H2", "--left", "K2")[1]
    code, text = run("higman", CATALOG, "--module", "k_S3", "--subgroups", "C2_in_S3")
    assert code == 0 and ": projective" in text
    code, text = run("lambda", CATALOG, "--subgroup", "mu_in_armu3")
    assert "zero (omega nontrivial)" in text
    code, text = run("invariants", CATALOG, "--algebra", "alpha2_translation", "--degree", "3")
    assert "v^2" in text
    code, _ = run("transfer", CATALOG, "--subgroup", "H2", "--pair", "coind_k_H2,coind_k_H2", "--expect-surjective")
    assert code == 0


def test_expressions():
    F = GF(3)
    assert parse_terms("a*c - b", ["a", "b", "c"], F) == {(1, 0, 1): 1, (0, 1, 0): 2}
    assert parse_terms("1/2 * a", ["a"], F) == {(1,): 2}
    F4 = GF(2, 2)
    assert parse_terms("t*v + t^2", ["v"], F4) == {(1,): F4.elem([0, 1]), (0,): F4.elem([1, 1])}
    with pytest.raises(ValueError):
        parse_terms("z + 1", ["a"], F)
    with pytest.raises(ValueError):
        parse_terms("a/3", ["a"], F)
