"""CLI surface: subcommands, exit codes, and report stability."""

import json

import pytest

from orthokit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_then_verify_phi(tmp_path, capsys):
    out = str(tmp_path / "b.json")
    code, _, _ = run(capsys, "construct", "phi-family", "--q", "2", "--r", "5",
                     "--w", "3", "--n", "5", "--out", out)
    assert code == 0
    code, stdout, _ = run(capsys, "verify", out)
    assert code == 0
    rep = json.loads(stdout)
    assert rep["verdicts"]["holds"] is True
    assert rep["inputs"]["spaces"] == 6


def test_construct_catalog_and_char_p(tmp_path, capsys):
    out = str(tmp_path / "c.json")
    assert run(capsys, "construct", "catalog", "--name", "PG3_F3_X2",
               "--out", out)[0] == 0
    assert run(capsys, "verify", out)[0] == 0
    out2 = str(tmp_path / "p.json")
    assert run(capsys, "construct", "char-p", "--p", "2", "--n", "3",
               "--k", "3", "--out", out2)[0] == 0
    assert run(capsys, "verify", out2)[0] == 0


def test_verify_askew_property(tmp_path, capsys):
    out = str(tmp_path / "a.json")
    assert run(capsys, "construct", "askew", "--k", "4", "--q", "2",
               "--out", out)[0] == 0
    assert run(capsys, "verify", out, "--property", "askew")[0] == 0


def test_verify_duplicate_space_fails_with_witness(tmp_path, capsys):
    from orthokit import bundle, geom
    from orthokit.check import standard, from_map
    g = geom.affine(2, 3)
    path = str(tmp_path / "dup.json")
    bundle.write_bundle(path, [standard(g), from_map(g, list(range(9)))])
    code, stdout, _ = run(capsys, "verify", path)
    assert code == 1
    rep = json.loads(stdout)
    assert rep["verdicts"]["holds"] is False
    assert "triple" in rep["witnesses"]["witness"]


def test_verify_malformed_bundle(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"format_version": 1}')
    assert run(capsys, "verify", str(path))[0] == 3
    path2 = tmp_path / "worse.json"
    path2.write_text("not json")
    assert run(capsys, "verify", str(path2))[0] == 3
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 3


def test_construct_invalid_params_exit_2(tmp_path, capsys):
    out = str(tmp_path / "x.json")
    code, _, err = run(capsys, "construct", "askew", "--k", "3", "--q", "2",
                       "--out", out)
    assert code == 2
    assert "prime" in err.lower() or "K_PLUS_1" in err


def test_bound_command(tmp_path, capsys):
    code, stdout, _ = run(capsys, "bound", "--kind", "affine",
                          "--dim", "2", "--q", "3")
    assert code == 0
    rep = json.loads(stdout)
    assert rep["verdicts"]["triple_bound"] == 7
    assert rep["verdicts"]["johnson_bound"] == 7
    # affine q=2 is refused as a usage error
    assert run(capsys, "bound", "--kind", "affine", "--dim", "2", "--q", "2")[0] == 2


def test_bound_with_certificate(tmp_path, capsys):
    out = str(tmp_path / "c.json")
    run(capsys, "construct", "catalog", "--name", "AG2_F3_X7", "--out", out)
    code, stdout, _ = run(capsys, "bound", "--kind", "affine",
                          "--dim", "2", "--q", "3", out)
    rep = json.loads(stdout)
    assert code == 0
    assert rep["verdicts"]["achieved"] == 7
    assert rep["verdicts"]["slack"] == 0


def test_search_commands(capsys):
    code, stdout, _ = run(capsys, "search", "exponent-scan", "--q", "5",
                          "--r", "5", "--w-max", "6")
    assert code == 0
    assert 3 in json.loads(stdout)["verdicts"]["orthomorphisms"]
    code, stdout, _ = run(capsys, "search", "power-chain", "--q", "2",
                          "--r", "5", "--w", "3")
    assert json.loads(stdout)["verdicts"]["chain_length"] == 5
    code, stdout, _ = run(capsys, "search", "clique", "--q", "2", "--r", "5",
                          "--w-list", "3,5,11,13")
    assert code == 0


def test_search_half_dim_budget_exit_4(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ORTHOKIT_CHECKPOINT_DIR", str(tmp_path))
    code, stdout, _ = run(capsys, "search", "half-dim", "--dim", "4",
                          "--q", "2", "--budget", "1000")
    assert code == 4
    rep = json.loads(stdout)
    assert rep["verdicts"]["exhaustive"] is False
    assert rep["verdicts"]["nodes"] == 1000


def test_search_half_dim_writes_certificates(capsys, tmp_path):
    out = str(tmp_path / "found.json")
    code, _, _ = run(capsys, "search", "half-dim", "--dim", "2", "--q", "3",
                     "--out", out)
    assert code == 0
    from orthokit import bundle
    spaces, prov = bundle.read_bundle(out)
    assert len(spaces) == 1
    assert prov["construction"] == "half-dim-search"


def test_reproduce_askew_and_catalog(capsys):
    code, stdout, _ = run(capsys, "reproduce", "askew")
    assert code == 0
    assert json.loads(stdout)["verdicts"]["pass"] is True
    code, stdout, _ = run(capsys, "reproduce", "catalog")
    assert code == 0
    rows = json.loads(stdout)["verdicts"]["rows"]
    assert {r["name"] for r in rows} == {"AG2_F3_X7", "AG3_F3_X8",
                                         "PG3_F2_X7", "PG3_F3_X2"}


def test_reproduce_bounds_grid(capsys):
    code, stdout, _ = run(capsys, "reproduce", "bounds")
    assert code == 0
    rows = json.loads(stdout)["verdicts"]["rows"]
    assert len(rows) == 4 * 5 * 2
    undef = [r for r in rows if r.get("note")]
    assert all(r["kind"] == "affine" and r["q"] == 2 for r in undef)


def test_reproduce_big_sets_single_row(capsys):
    code, stdout, _ = run(capsys, "reproduce", "big-sets",
                          "--rows", "2,5,3", "2,5,11")
    assert code == 0
    rows = json.loads(stdout)["verdicts"]["rows"]
    assert [(r["q"], r["r"], r["w"]) for r in rows] == [(2, 5, 3), (2, 5, 11)]
    assert all(r["pass"] for r in rows)


def test_reproduce_half_dim_budget(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ORTHOKIT_CHECKPOINT_DIR", str(tmp_path))
    code, stdout, _ = run(capsys, "reproduce", "half-dim-nonexistence",
                          "--budget", "500")
    assert code == 4


def test_usage_error_exit_2(capsys):
    assert run(capsys, "bogus-command")[0] == 2


def test_table_format(capsys):
    code, stdout, _ = run(capsys, "bound", "--kind", "projective",
                          "--dim", "4", "--q", "2", "--format", "table")
    assert code == 0
    assert "triple bound : 29" in stdout


def test_report_is_canonical_json(capsys):
    _, out1, _ = run(capsys, "search", "exponent-scan", "--q", "2", "--r", "5",
                     "--w-max", "8")
    _, out2, _ = run(capsys, "search", "exponent-scan", "--q", "2", "--r", "5",
                     "--w-max", "8", "--workers", "4")
    assert out1 == out2
    assert out1.endswith("\n")
    assert json.loads(out1)["tool_version"]
