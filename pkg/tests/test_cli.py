import re

import pytest

from dendro.cli import main

SUMMARY = re.compile(r"^check=[\w-]+ instances=\d+ failures=\d+ time=[\d.]+s$")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "sieve", "--max-vertices", "2")
    assert code == 0
    assert SUMMARY.match(out.strip().splitlines()[-1])


def test_check_failure_exit_code(capsys):
    code, out, _ = run(capsys, "check", "prop-ii", "--max-vertices", "1",
                       "--max-arity", "2", "--allow-stumps", "true")
    assert code == 1
    lines = out.strip().splitlines()
    assert lines[0].startswith("FAIL ")
    assert SUMMARY.match(lines[-1])


def test_max_failures_truncates(capsys):
    code, out, _ = run(capsys, "check", "prop-ii", "--max-vertices", "2", "--max-arity", "2",
                       "--allow-stumps", "yes", "--max-failures", "1")
    assert code == 1
    assert sum(line.startswith("FAIL ") for line in out.splitlines()) == 1
    assert "more failures" in out


def test_usage_errors(capsys):
    assert run(capsys, "check", "nope")[0] == 2
    assert run(capsys, "faces", "--t", "a(b,")[0] == 2
    assert run(capsys, "encode", "--t", "a(b)", "--n", "3", "--h", "a:2;b:1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["check", "sieve", "--allow-stumps", "maybe"])
    assert info.value.code == 2


def test_limit_error_exit_code(capsys):
    code, _, err = run(capsys, "check", "lemma1-roundtrip", "--max-n", "2",
                       "--max-vertices", "4", "--max-arity", "3", "--ceiling", "1000")
    assert code == 2 and "error:" in err


def test_counterexamples(capsys):
    code, out, _ = run(capsys, "counterexamples")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("check=counterexamples instances=9 failures=0")


def test_reports_never_fail(capsys):
    code, out, _ = run(capsys, "report", "closed", "--max-n", "1")
    assert code == 0 and "holds" in out


def test_shuffles_text(capsys):
    code, out, _ = run(capsys, "shuffles", "--s", "0(1)", "--t", "x(y,z)")
    assert code == 0
    assert "0|x[S:0;T:](1|x[S:;T:x](1|y,1|z))" in out.splitlines()


def test_shuffles_dot_export(capsys, tmp_path):
    code, out, _ = run(capsys, "shuffles", "--s", "0(1)", "--t", "x(y,z)",
                       "--format", "dot", "--out", str(tmp_path))
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["shuffles_000.dot", "shuffles_001.dot"]
    assert (tmp_path / files[0]).read_text().startswith("digraph")


def test_faces_and_dendrices_export(capsys, tmp_path):
    assert run(capsys, "faces", "--t", "x(y,z)", "--out", str(tmp_path / "f"))[0] == 0
    assert len(list((tmp_path / "f").iterdir())) == 4
    assert run(capsys, "dendrices", "--s", "0", "--t", "x", "--out", str(tmp_path / "d"))[0] == 0
    assert len(list((tmp_path / "d").iterdir())) == 1


def test_encode_decode(capsys):
    code, out, _ = run(capsys, "encode", "--t", "a(b,c(d(*),e))", "--n", "5",
                       "--h", "a:1;b:2;c:1,3;d:3,4;e:4,5")
    assert code == 0
    r = out.strip()
    code, out, _ = run(capsys, "decode", "--t", "a(b,c(d(*),e))", "--n", "5", "--r", r)
    assert code == 0
    assert "h: a:1;b:2;c:1,3;d:3,4;e:4,5" in out


def test_encode_with_face_descriptor(capsys):
    code, out, _ = run(capsys, "encode", "--t", "x(y(u,v),z)", "--face", "top:y",
                       "--n", "1", "--h", "x:0;y:1;z:0,1")
    assert code == 0 and out.strip().startswith("0|x(")


def test_decode_valence_decrease_exits_one(capsys):
    code, _, err = run(capsys, "decode", "--t", "a(b,c)", "--n", "1",
                       "--r", "0|a(1|b(*))", "--closed")
    assert code == 1 and "valence decreased" in err
