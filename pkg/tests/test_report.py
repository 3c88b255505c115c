import json

import pytest

from cokahler import cli
from cokahler.errors import CorpusMismatchError, ParseError, UnknownCorpusError, ValidationError
from cokahler.report import (
    CHECKS,
    InputSpec,
    Report,
    compare_expected,
    corpus,
    corpus_entries,
    parse_input,
    render,
    run_pipeline,
)

CDM_DOC = '{"n": 1, "matrix": [[0, 1], [-1, 0]]}'


def test_parse_input_examples():
    spec = parse_input(CDM_DOC)
    assert spec == InputSpec(1, ((0, 1), (-1, 0)))
    spec = parse_input('{"n":1,"matrix":[[1,0],[0,1]]}')
    assert spec.matrix == ((1, 0), (0, 1))
    with pytest.raises(ParseError):
        parse_input('{"n":1,"matrix":[[0,1],[-1,0],[0,0]]}')


@pytest.mark.parametrize("doc, rule", [
    ('{"n": 2, "matrix": [[0, 1], [-1, 0]]}', "square of size 4"),
    ('{"n": 0, "matrix": []}', "positive"),
    ('{"n": 1, "matrix": [[0, 1], [-1, 0]], "colour": 1}', "unknown field"),
    ('{"n": 1, "matrix": [[0, 1], [-1, 0]], "omega": [[0, 1], [1, 0]]}', "skew"),
    ('{"n": 1, "matrix": [[0, 1], [-1, 0]], "omega": [[0, 0], [0, 0]]}', "nonzero determinant"),
    ('{"n": 1, "matrix": [[0, 1], [-1, 0]], "checks": ["nope"]}', "unknown check"),
])
def test_validation_errors_name_the_rule(doc, rule):
    with pytest.raises(ValidationError, match=rule):
        parse_input(doc)


@pytest.mark.parametrize("doc, where", [
    ('{"n": 1, "matrix": [[0, 1], [-1, 0]]', "line 1"),
    ('{"n": 1,\n "matrix": [[0, 1.5], [-1, 0]]}', "matrix"),
    ('{"matrix": [[1]]}', "'n'"),
    ('[1, 2]', "top level"),
    ('{"n": true, "matrix": [[1]]}', "'n'"),
])
def test_parse_errors_have_context(doc, where):
    with pytest.raises(ParseError, match=where):
        parse_input(doc)


def test_pipeline_cdm():
    r = run_pipeline(parse_input(CDM_DOC))
    assert r.order == 4
    assert r.invariant_betti == [1, 0, 1]
    assert r.betti == [1, 1, 1, 1]
    assert r.first_homology == {"rank": 1, "torsion": [2]}
    assert r.certificate["kind"] == "NotAProduct"
    assert list(r.checks) == list(CHECKS)
    assert not r.failed_checks


def test_pipeline_catmap_partial():
    r = run_pipeline(parse_input('{"n": 1, "matrix": [[2, 1], [1, 1]]}'))
    assert r.order == "infinite"
    assert r.wang_betti == [1, 1, 1, 1]
    assert r.betti is None and r.cover is None and r.certificate is None
    assert r.checks["monotonicity"]["status"] == "not_applicable"
    assert r.checks["poincare_duality"]["status"] == "pass"
    assert r.presentation["relations"][0] == "[v1,v2]"


def test_pipeline_identity():
    r = run_pipeline(parse_input('{"n": 1, "matrix": [[1, 0], [0, 1]]}'))
    assert r.betti == [1, 3, 3, 1]
    assert r.certificate["kind"] == "TrivialProduct"


def test_pipeline_checks_subset():
    spec = parse_input('{"n": 1, "matrix": [[0, 1], [-1, 0]], "checks": ["b1_parity", "monotonicity"]}')
    r = run_pipeline(spec)
    assert list(r.checks) == ["monotonicity", "b1_parity"]


def test_pipeline_with_omega_override():
    doc = {"n": 2, "matrix": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
           "omega": [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]}
    r = run_pipeline(parse_input(json.dumps(doc)))
    assert r.omega_bar[0][1] == "3/2"
    assert not r.failed_checks


def test_render_text_cdm():
    text = render(run_pipeline(parse_input(CDM_DOC)), "text")
    assert "b = 1 1 1 1" in text
    assert "order m = 4" in text
    assert "NOT a global product (dim-3 rule)" in text
    for name in CHECKS:
        assert f"] {name}: {CHECKS[name]}" in text


def test_render_deterministic_and_roundtrip():
    for entry in corpus_entries("all"):
        a = render(run_pipeline(entry.spec()), "json")
        b = render(run_pipeline(entry.spec()), "json")
        assert a == b
        rep = run_pipeline(entry.spec())
        assert Report.from_dict(json.loads(a)) == rep
        assert render(rep, "text") == render(rep, "text")


def test_render_unknown_format():
    with pytest.raises(ValueError):
        render(run_pipeline(parse_input(CDM_DOC)), "yaml")


def test_corpus_all_matches():
    names = [e.name for e, _ in corpus("all")]
    assert names == ["cdm", "mp(1)", "mp(2)", "mp(3)", "mp(4)",
                     "identity(1)", "identity(2)", "identity(3)", "catmap"]


def test_corpus_single():
    [(entry, rep)] = corpus("identity(2)")
    assert rep.betti == [1, 5, 10, 10, 5, 1]
    [(entry, rep)] = corpus("mp(1)")
    assert rep.order == 6 and rep.betti[1] == 1


@pytest.mark.parametrize("name", ["foo", "mp", "mp(0)", "cdm(2)", "identity(x)"])
def test_corpus_unknown(name):
    with pytest.raises(UnknownCorpusError):
        corpus(name)


def test_corpus_mismatch_is_reported(monkeypatch):
    entry = corpus_entries("cdm")[0]
    rep = run_pipeline(entry.spec())
    rep.betti = [1, 2, 2, 1]
    diffs = compare_expected(entry, rep)
    assert diffs == ["cdm: betti: expected [1, 1, 1, 1], got [1, 2, 2, 1]"]

    from cokahler import report as report_mod
    real = report_mod.run_pipeline

    def broken(spec):
        r = real(spec)
        r.order = 99
        return r

    monkeypatch.setattr(report_mod, "run_pipeline", broken)
    with pytest.raises(CorpusMismatchError, match="order"):
        corpus("cdm")


# --- CLI -------------------------------------------------------------------

def test_cli_analyze_json(tmp_path, capsys):
    f = tmp_path / "cdm.json"
    f.write_text(CDM_DOC)
    assert cli.main(["analyze", "--input", str(f)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["betti"] == [1, 1, 1, 1]
    assert out["order"] == 4


def test_cli_analyze_text_and_checks(tmp_path, capsys):
    f = tmp_path / "cdm.json"
    f.write_text(CDM_DOC)
    assert cli.main(["analyze", "--input", str(f), "--format", "text",
                     "--checks", "b1_parity"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] b1_parity" in out and "monotonicity:" not in out


def test_cli_omega_file(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"n": 2, "matrix": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]}))
    om = tmp_path / "omega.json"
    om.write_text(json.dumps({"omega": [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]}))
    # omega averages to zero under this swap
    assert cli.main(["analyze", "--input", str(f), "--omega", str(om)]) == 1
    assert "NoInvariantKahlerError" in capsys.readouterr().err


def test_cli_validation_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"n":1,"matrix":[[0,1],[-1,0],[0,0]]}')
    assert cli.main(["analyze", "--input", str(f)]) == 1
    assert "ValidationError" in capsys.readouterr().err
    assert cli.main(["analyze", "--input", str(tmp_path / "missing.json")]) == 1


def test_cli_not_unimodular(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text('{"n":1,"matrix":[[2,0],[0,1]]}')
    assert cli.main(["analyze", "--input", str(f)]) == 1
    assert "NotUnimodularError" in capsys.readouterr().err


def test_cli_failed_check_exit_code(tmp_path, monkeypatch, capsys):
    from cokahler import report as report_mod
    monkeypatch.setattr(report_mod, "b1_parity_check", lambda b: False)
    f = tmp_path / "cdm.json"
    f.write_text(CDM_DOC)
    assert cli.main(["analyze", "--input", str(f)]) == 2
    assert json.loads(capsys.readouterr().out)["checks"]["b1_parity"]["status"] == "fail"


def test_cli_corpus(capsys):
    assert cli.main(["corpus", "--name", "cdm"]) == 0
    assert "NOT a global product (dim-3 rule)" in capsys.readouterr().out
    assert cli.main(["corpus", "--name", "catmap", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["catmap"]["order"] == "infinite"
    assert cli.main(["corpus", "--name", "bogus"]) == 1
