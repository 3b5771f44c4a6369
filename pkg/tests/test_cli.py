import json

import pytest

from pgakit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize_canonical(capsys):
    code, out, _ = run(capsys, "normalize", "f.a; (f.b; f.a)*")
    assert code == 0
    assert out.strip() == "(f.a; f.b)*"


def test_normalize_shifts(capsys):
    code, out, _ = run(capsys, "normalize", "--shifts", "~; #2; !")
    assert code == 0
    assert out.strip() == "#3; !; #0"


def test_normalize_reads_file(tmp_path, capsys):
    f = tmp_path / "prog.pga"
    f.write_text("f.a; !\n")
    code, out, _ = run(capsys, "normalize", str(f))
    assert code == 0
    assert out.strip() == "f.a; !"


def test_extract_prints_thread(capsys):
    code, out, _ = run(capsys, "extract", "f.a; !")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].endswith("f.a <X1>") or "f.a" in lines[0]
    assert any(line.endswith("= S") for line in lines)


def test_extract_dot(capsys):
    code, out, _ = run(capsys, "extract", "--dot", "f.a; !")
    assert code == 0
    assert out.startswith("digraph")


def test_extract_via_counter(capsys):
    code, out, _ = run(capsys, "extract", "--via-counter", "~; #0; !")
    assert code == 0
    assert out.strip().endswith("= S")


def test_bisim_programs(capsys):
    code, out, _ = run(capsys, "bisim", "--programs", "f.a; ~", "f.a; #1; #0")
    assert code == 0
    assert out.strip() == "bisimilar"


def test_bisim_detects_difference(capsys):
    code, out, _ = run(capsys, "bisim", "--programs", "f.a; !", "f.b; !")
    assert code == 1
    assert out.strip() == "not-bisimilar"


def test_bisim_threads(capsys):
    code, out, _ = run(capsys, "bisim", "x = S", "y = S")
    assert code == 0


def test_compile(capsys):
    code, out, _ = run(capsys, "compile", "x = <x> f.a <x>")
    assert code == 0
    assert out.strip() == "(+f.a; #2; #1)*"


def test_compile_pgajs0(capsys):
    code, out, _ = run(capsys, "compile", "--pgajs0", "x = <x> f.a <x>")
    assert code == 0
    assert out.strip() == "(+f.a; ~; ~; #0; ~; #0)*"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "f.a;;")
    assert code == 2
    assert "error" in err


def test_overflow_exit_code(capsys):
    code, _, err = run(capsys, "normalize", f"#{2**63}")
    assert code == 3


def test_precondition_exit_code(capsys):
    # extraction refuses raw shifts only through the plain path; the verify
    # single-case path rejects non-#0 jumps
    code, _, err = run(capsys, "verify", "--theorem", "2", "--in", "#2; !")
    assert code == 4


def test_compile_error_exit_code(capsys):
    code, _, err = run(capsys, "compile", "x = tau <y>\ny = S")
    assert code == 6


def test_missing_input_is_config_error(capsys):
    code, _, err = run(capsys, "normalize")
    assert code == 2


def test_verify_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "1", "--count", "25", "--seed", "7")
    assert code == 0
    assert out.strip() == "25/25 pass"


def test_verify_corpus_exec(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "exec", "--count", "10", "--seed", "3")
    assert code == 0
    assert out.strip() == "10/10 pass"


def test_verify_roundtrip(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "roundtrip", "--count", "10", "--seed", "3")
    assert code == 0


def test_verify_single_case(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "2", "--in", "(+f.a; ~; #0; !)*")
    assert code == 0
    assert out.strip() == "pass"


def test_verify_json(capsys):
    code, out, _ = run(
        capsys, "verify", "--theorem", "2", "--count", "5", "--seed", "1", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["total"] == 5 and doc["passed"] == 5
    assert len(doc["cases"]) == 5
    assert all(c["verdict"] == "pass" for c in doc["cases"])


def test_verify_json_single(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "1", "--in", "#3; !", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] == 1
