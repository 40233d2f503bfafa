import subprocess
import sys
from pathlib import Path

import pytest

from icat.cli import REPORT_HEADER, main
from icat.corpus import HERE, corpus_paths, mutant_paths

GOLDEN = Path(__file__).parent / "golden"
C = str(HERE)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.stem)
def test_corpus_checks_exit_zero(capsys, path):
    code, out, _ = run(capsys, "check", str(path), "--format", "machine")
    assert code == 0
    assert out.startswith(REPORT_HEADER + "\n") and out.endswith("status pass\n")


@pytest.mark.parametrize("path", mutant_paths(), ids=lambda p: p.stem)
def test_mutants_exit_one(capsys, path):
    code, out, _ = run(capsys, "check", str(path), "--format", "machine")
    assert code == 1
    assert out.endswith("status fail\n")
    assert sum(1 for line in out.splitlines() if line == "result fail") == 1


@pytest.mark.parametrize("golden,argv", [
    ("check_enriched_assoc.txt", ["check", f"{C}/mutants/enriched_assoc.icat"]),
    ("check_monoidal_coherence.txt", ["check", f"{C}/mutants/monoidal_coherence.icat"]),
    ("check_chain3.txt", ["check", f"{C}/vbool.icat", "--target", "Chain3"]),
    ("externalize_twist.txt", ["externalize", f"{C}/z2.icat", "--target", "TwistZ2", "--index", "1"]),
    ("roundtrip_twist.txt", ["roundtrip", f"{C}/z2.icat", "--target", "TwistZ2", "--bound", "2"]),
])
def test_machine_reports_match_golden(capsys, golden, argv):
    _, out, _ = run(capsys, *argv, "--format", "machine")
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_machine_report_grammar(capsys):
    _, out, _ = run(capsys, "check", f"{C}/mutants/enriched_unit.icat", "--format", "machine",
                    "--witness-limit", "all")
    lines = out.splitlines()
    assert lines[0] == REPORT_HEADER
    for line in lines[1:]:
        head = line.split(" ", 1)[0]
        assert head in {"subject", "axiom", "witness", "note", "result", "status"}
        if head == "axiom":
            _, _, verdict, count = line.split(" ")
            assert verdict in {"pass", "fail"} and int(count) >= 0
    assert lines[-1] == "status fail"


def test_witness_limit(capsys):
    _, out, _ = run(capsys, "check", f"{C}/mutants/enriched_unit.icat", "--format", "machine",
                    "--witness-limit", "1")
    assert out.count("witness enriched/left_unit") == 1
    assert "axiom enriched/left_unit fail 2" in out


@pytest.mark.parametrize("golden,argv", [
    ("chain3.dot", [f"{C}/vbool.icat", "--target", "Chain3"]),
    ("z2c.dot", [f"{C}/z2.icat", "--target", "Z2C"]),
])
def test_dot_is_stable(capsys, tmp_path, golden, argv):
    _, out, _ = run(capsys, "export-dot", *argv, "-o", "-")
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")
    target = tmp_path / "g.dot"
    assert run(capsys, "export-dot", *argv, "-o", str(target))[0] == 0
    assert target.read_text(encoding="utf-8") == out


def test_dot_for_fibers_totals_and_multicats(capsys):
    for argv in (["--target", "Chain3", "--index", "Two"], ["--target", "Bool", "--family", "Empty,One,Two"]):
        code, out, _ = run(capsys, "export-dot", f"{C}/vbool.icat", *argv, "-o", "-")
        assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "export-dot", f"{C}/multicat_z2.icat", "--target", "MZ2", "-o", "-")
    assert code == 0 and "->" in out


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent.icat"],
    ["check", f"{C}/z2.icat", "--target", "Nope"],
    ["externalize", f"{C}/z2.icat", "--target", "Z2C", "--index", "Nope"],
    ["multicat", f"{C}/z2.icat", "--target", "Z2C"],
    ["check", f"{C}/z2.icat", "--witness-limit", "-3"],
    ["bogus"],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_malformed_file_reports_location(capsys, tmp_path):
    bad = tmp_path / "bad.icat"
    bad.write_text("set S = a\nmonoidal V on S\n  unit a\nend\n", encoding="utf-8")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "line 2" in err


def test_other_subcommands(capsys):
    for argv in (["underlying", f"{C}/omega.icat", "--target", "GradedOmega"],
                 ["multicat", f"{C}/z2.icat", "--target", "TwistZ2", "--bound", "2"],
                 ["grothendieck", f"{C}/vbool.icat", "--target", "Bool", "--family", "Empty,One,Two"],
                 ["externalize", f"{C}/vbool.icat", "--target", "Vbool", "--index", "Two"],
                 ["externalize", f"{C}/omega.icat", "--target", "Omega", "--index", "1"]):
        code, out, _ = run(capsys, *argv, "--format", "machine")
        assert (code, out.splitlines()[-1]) == (0, "status pass"), argv


def test_bound_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ICAT_BOUND", "2")
    code, out, _ = run(capsys, "multicat", f"{C}/z2.icat", "--target", "IndZ2", "--format", "machine")
    assert code == 0
    monkeypatch.setenv("ICAT_BOUND", "1")
    code, _, _ = run(capsys, "roundtrip", f"{C}/z2.icat", "--target", "IndZ2")
    assert code == 1


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "icat.cli", "check", f"{C}/z2.icat", "--target", "IndZ2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "IndZ2: PASS" in proc.stdout
