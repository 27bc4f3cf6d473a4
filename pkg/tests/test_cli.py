import json

import pytest

from treelat import matio
from treelat.cli import main

import _complexes


@pytest.fixture()
def runner(capsys):
    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture()
def torus_file(tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(_complexes.torus_doc())
    return str(path)


@pytest.fixture(scope="module")
def g513_file(tmp_path_factory):
    from treelat.mozes import generate_mozes_complex

    path = tmp_path_factory.mktemp("cli") / "g513.json"
    path.write_text(generate_mozes_complex(5, 13))
    return str(path)


def test_validate_ok_with_warnings(runner, torus_file):
    code, out, err = runner("validate", torus_file)
    assert code == 0
    assert "warning" in out and "degree 2 < 3" in out


def test_validate_parse_error_exit_1(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, out, err = runner("validate", str(path))
    assert code == 1
    assert "not valid JSON" in err


def test_validate_missing_file_exit_1(runner, tmp_path):
    code, out, err = runner("validate", str(tmp_path / "absent.json"))
    assert code == 1


def test_validate_duplicate_square_exit_2(runner, tmp_path):
    doc = json.loads(_complexes.f2xf2_doc())
    doc["squares"][1] = doc["squares"][0]
    path = tmp_path / "dup.json"
    path.write_text(json.dumps(doc))
    code, out, err = runner("validate", str(path))
    assert code == 2
    assert "covered 2 times" in out


def test_validate_json_report(runner, torus_file):
    code, out, err = runner("validate", torus_file, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["counts"]["squares"] == 1
    assert report["validation"]["errors"] == []
    assert len(report["validation"]["warnings"]) == 2


def test_analyze_mozes_fields(runner, g513_file):
    code, out, err = runner("analyze", g513_file, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["counts"] == {
        "vertices": 1,
        "h_edges": 3,
        "v_edges": 7,
        "squares": 21,
        "directed_squares": 84,
    }
    assert report["homology"]["h2_rank"] == 11
    assert report["homology"]["euler_characteristic"] == 12
    assert report["tiling"]["k0_rank"] == 22
    assert report["tiling"]["column_sum_range"] == {"m1": [5, 5], "m2": [13, 13]}
    assert report["connectivity"]["gh_strong"] and report["connectivity"]["gv_strong"]
    assert report["theorem"]["holds"] and report["theorem"]["within_hypotheses"]
    assert report["provenance"]["tool_version"]


def test_analyze_byte_deterministic(runner, g513_file):
    code1, out1, _ = runner("analyze", g513_file, "--json")
    code2, out2, _ = runner("analyze", g513_file, "--json")
    assert code1 == code2 == 0
    assert out1 == out2


def test_analyze_torus_human(runner, torus_file):
    code, out, err = runner("analyze", torus_file)
    assert code == 0
    assert "H2 rank = 1" in out
    assert "within_hypotheses=False" in out


def test_analyze_validation_error_exit_2(runner, tmp_path):
    path = tmp_path / "disc.json"
    path.write_text(_complexes.two_torus_components_doc())
    code, out, err = runner("analyze", str(path), "--json")
    assert code == 2
    report = json.loads(out)
    assert any(e["kind"] == "disconnected" for e in report["validation"]["errors"])
    assert "homology" not in report


def test_verify_reports_verdict_only(runner, g513_file):
    code, out, err = runner("verify", g513_file, "--json")
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"theorem", "provenance"}
    assert report["theorem"]["rank_ker_stacked"] == 11


def test_generate_round_trip(runner, tmp_path):
    out_path = tmp_path / "g513.json"
    code, out, err = runner("generate", "-p", "5", "-l", "13", "-o", str(out_path))
    assert code == 0
    code, out, err = runner("validate", str(out_path))
    assert code == 0


def test_generate_rejects_bad_primes(runner):
    assert runner("generate", "-p", "3", "-l", "5")[0] == 2
    assert runner("generate", "-p", "5", "-l", "5")[0] == 2


def test_export_stacked_header(runner, g513_file):
    code, out, err = runner("export", g513_file, "--what", "stacked")
    assert code == 0
    assert out.splitlines()[0] == "168 84"


def test_export_d1_zero_for_one_vertex(runner, g513_file):
    code, out, err = runner("export", g513_file, "--what", "d1")
    assert code == 0
    assert out == "1 10\n"


def test_export_round_trip_equals_pipeline_matrix(runner, g513_file):
    code, out, err = runner("export", g513_file, "--what", "m1")
    assert code == 0
    matrix = matio.read_triplets(out)
    from treelat.cli import analyze_document

    _, analysis = analyze_document(open(g513_file).read())
    assert matrix == analysis.tiling.m1


def test_export_dense_json(runner, torus_file):
    code, out, err = runner("export", torus_file, "--what", "m2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == doc["cols"] == 4


def test_export_unknown_matrix_exit_2(g513_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["export", g513_file, "--what", "m3"])
    assert exc.value.code == 2


def test_thread_env_rejected_when_invalid(runner, torus_file, monkeypatch):
    monkeypatch.setenv("TREELAT_THREADS", "zero")
    code, out, err = runner("validate", torus_file)
    assert code == 2
    assert "TREELAT_THREADS" in err


def test_thread_env_accepted(runner, monkeypatch, tmp_path):
    monkeypatch.setenv("TREELAT_THREADS", "2")
    out_path = tmp_path / "g.json"
    code, _, _ = runner("generate", "-p", "5", "-l", "13", "-o", str(out_path))
    assert code == 0
    monkeypatch.delenv("TREELAT_THREADS")
    from treelat.mozes import generate_mozes_complex

    assert out_path.read_text() == generate_mozes_complex(5, 13)
