import json

import pytest

from annular_khovanov.cli import default_corpus_dir, read_diagram, run
from annular_khovanov.corpus import named
from annular_khovanov.diagram import serialize
from annular_khovanov.homology import GradedGroup

CORPUS = default_corpus_dir()


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_akh_core_json(capsys):
    code, out, _ = call(capsys, "akh", str(CORPUS / "core.knot"), "--coeff", "Z", "--json")
    assert code == 0
    entries = {(e["h"], e["q"], e["k"]): e["free"] for e in json.loads(out)["entries"]}
    assert entries == {(0, 1, 1): 1, (0, -1, -1): 1}


def test_braid_check_passes(capsys):
    code, out, _ = call(capsys, "braid-check", "--braid", "2: 1", "--json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_ss_sigma1(capsys):
    code, out, _ = call(capsys, "ss", str(CORPUS / "sigma1.knot"))
    assert code == 0 and "collapse_at=2" in out
    code, out, _ = call(capsys, "ss", str(CORPUS / "sigma1.knot"), "--json")
    assert json.loads(out)["collapse_at"] == 2


@pytest.mark.parametrize("filtration", ["cube", "cube-eta"])
def test_ss_cube(capsys, filtration):
    code, out, _ = call(capsys, "ss", str(CORPUS / "trefoil.knot"), "--filtration", filtration,
                        "--json")
    assert code == 0
    assert sum(d["dim"] for d in json.loads(out)["pages"][-1]["dims"]) == 4


def test_strict_certificate_failure(capsys):
    path = str(CORPUS / "core.knot")
    assert call(capsys, "unlink-check", path)[0] == 0
    assert call(capsys, "unlink-check", path, "--strict")[0] == 2
    assert call(capsys, "braid-check", str(CORPUS / "turnback.knot"), "--strict")[0] == 2
    code, out, _ = call(capsys, "unlink-check", str(CORPUS / "split_unlink2.knot"), "--strict")
    assert code == 0 and "passed" in out


def test_unlink_component_mismatch(capsys):
    code, _, err = call(capsys, "unlink-check", str(CORPUS / "unknot.knot"), "--components", "3")
    assert code == 1 and "components" in err


def test_colored(capsys):
    code, out, _ = call(capsys, "colored", str(CORPUS / "trefoil_tangle.knot"), "-n", "1",
                        "--json")
    assert code == 0
    assert sum(e["free"] for e in json.loads(out)["entries"]) == 3
    code, _, err = call(capsys, "colored", str(CORPUS / "sigma1.knot"))
    assert code == 1 and "seam_width 1" in err


@pytest.mark.parametrize("cmd", ["akh", "kh", "tkh"])
@pytest.mark.parametrize("coeff", ["Z", "Q", "F2", "Fp:3"])
def test_json_deterministic_and_matches_table(capsys, cmd, coeff):
    path = str(CORPUS / "trefoil_tangle.knot")
    _, a, _ = call(capsys, cmd, path, "--coeff", coeff, "--json")
    _, b, _ = call(capsys, cmd, path, "--coeff", coeff, "--json")
    assert a == b
    _, table, _ = call(capsys, cmd, path, "--coeff", coeff)
    assert GradedGroup.from_table(table) == GradedGroup.from_json(a)


def test_mode_flag(capsys):
    path = str(CORPUS / "sigma1.knot")
    _, a, _ = call(capsys, "akh", path, "--mode", "plain", "--json")
    _, b, _ = call(capsys, "kh", path, "--json")
    assert a == b


def test_threads_flag_gives_same_answer(capsys):
    path = str(CORPUS / "figure8.knot")
    _, a, _ = call(capsys, "akh", path, "--json", "--threads", "1")
    _, b, _ = call(capsys, "akh", path, "--json", "--threads", "3")
    assert a == b
    assert call(capsys, "akh", path, "--threads", "0")[0] == 1


def test_debug_dump(capsys):
    code, _, err = call(capsys, "akh", "--braid", "2: 1", "--debug-dump")
    assert code == 0 and "q=1 k=0 h=0 dim=2" in err


def test_braid_shortcut_file(tmp_path, capsys):
    f = tmp_path / "b.knot"
    f.write_text("# closure of sigma1 sigma2^-1\nbraid 3 1 -2\n")
    _, a, _ = call(capsys, "akh", str(f), "--json")
    _, b, _ = call(capsys, "akh", "--braid", "3: 1 -2", "--json")
    assert a == b


@pytest.mark.parametrize("argv, needle", [
    (["akh", "/no/such/file.knot"], "cannot read"),
    (["akh"], "no input"),
    (["akh", "--coeff", "F4", "--braid", "2: 1"], "not prime"),
    (["akh", "--braid", "2: 3"], "out of range"),
    (["ss", "--braid", "2: 1", "--coeff", "Z"], "field"),
    (["frobnicate"], ""),
    (["akh", "--bogus"], ""),
])
def test_input_errors_exit_one(capsys, argv, needle):
    code, out, err = call(capsys, *argv)
    assert code == 1
    assert needle in err


def test_parse_error_location(tmp_path, capsys):
    f = tmp_path / "bad.knot"
    f.write_text("strands 2\nP 1\nZ 1\n")
    code, _, err = call(capsys, "akh", str(f))
    assert code == 1 and "line 3, column 1" in err and "bad.knot" in err
    f.write_text("strands 2\nP 2\n")
    code, _, err = call(capsys, "akh", str(f))
    assert code == 1 and "slice 0" in err


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("strands 1\n"))
    code, out, _ = call(capsys, "akh", "-", "--json")
    assert code == 0 and len(json.loads(out)["entries"]) == 2


def test_bundled_corpus_matches_named_words():
    files = sorted(p.stem for p in CORPUS.glob("*.knot"))
    assert files == sorted(named())
    for name, w in named().items():
        assert read_diagram((CORPUS / f"{name}.knot").read_text()) == w
        assert serialize(w) in (CORPUS / f"{name}.knot").read_text()


def test_selftest_empty_corpus(tmp_path, capsys):
    code, _, err = call(capsys, "selftest", "--corpus", str(tmp_path))
    assert code == 1 and "corpus missing" in err


def test_selftest_corrupted_signs(capsys):
    code, out, _ = call(capsys, "selftest", "--only", "2", "--corrupt-signs")
    assert code == 2
    assert "[FAIL]  2." in out and "D^2 != 0" in out


def test_selftest_subset_passes(capsys):
    code, out, _ = call(capsys, "selftest", "--only", "1,5,8")
    assert code == 0 and "3/3 criteria passed" in out
