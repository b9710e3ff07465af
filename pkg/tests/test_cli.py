import os

import pytest

from folint.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decide_fig2(capsys):
    code, out, _ = run(capsys, "decide", "--machine",
                       fx("fig2.fol"), fx("fig2.cfg"))
    assert code == 0
    lines = dict(l.split("=", 1) for l in out.strip().splitlines())
    assert lines["verdict"] == "integral"
    # the printed pencil re-verifies under check-integral
    code2, out2, _ = run(capsys, "check-integral", "--machine",
                         lines["F"], lines["G"], fx("fig2.fol"))
    assert code2 == 0
    assert "first_integral=true" in out2


def test_decide_degree_example1(capsys):
    code, out, _ = run(capsys, "decide-degree", "4",
                       fx("example1.fol"), fx("example1.cfg"))
    assert code == 0
    assert "rational first integral" in out
    code, out, _ = run(capsys, "decide-degree", "3", "--machine",
                       fx("example1.fol"), fx("example1.cfg"))
    assert code == 1
    assert "verdict=no_integral" in out


def test_decide_family_members(capsys):
    code, out, _ = run(capsys, "decide", fx("family_a59.fol"),
                       fx("family_a59.cfg"))
    assert code == 1
    code, out, _ = run(capsys, "decide", fx("family_a0.fol"),
                       fx("family_a0.cfg"))
    assert code == 0


def test_resolve_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "resolve", fx("fig2.fol"))
    assert code == 0
    emitted = tmp_path / "fig2.cfg"
    emitted.write_text(out)
    code, out2, _ = run(capsys, "decide", "--machine", fx("fig2.fol"),
                        str(emitted))
    assert code == 0
    assert "verdict=integral" in out2


def test_psufficient(capsys):
    code, out, _ = run(capsys, "psufficient", fx("fig3.cfg"))
    assert code == 0
    assert "True" in out


def test_h0(capsys):
    code, out, _ = run(capsys, "h0", "--machine", fx("example1.cfg"), "4",
                       "2", "2", "1", "1", "1", "1", "1", "1", "1", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "h0=2"
    assert len([l for l in lines if l.startswith("basis=")]) == 2


def test_h0_wrong_multiplicity_count(capsys):
    code, _, err = run(capsys, "h0", fx("example1.cfg"), "4", "1")
    assert code == 3
    assert "expected 10 multiplicities" in err


def test_invariant(capsys):
    code, out, _ = run(capsys, "invariant", "Y", fx("fig2.fol"))
    assert code == 0
    code, out, _ = run(capsys, "invariant", "X", fx("fig2.fol"))
    assert code == 1


def test_bad_foliation_file(tmp_path, capsys):
    bad = tmp_path / "bad.fol"
    bad.write_text("A = X\nB = Y\n")
    code, _, err = run(capsys, "decide", str(bad))
    assert code == 3
    assert "missing component" in err


def test_euler_violation_rejected(tmp_path, capsys):
    bad = tmp_path / "bad.fol"
    bad.write_text("A = Y\nB = X\nC = 0\n")
    code, _, err = run(capsys, "decide", str(bad))
    assert code == 3
    assert "Euler" in err


def test_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "decide", "--trace", "--machine",
                         fx("family_a59.fol"), fx("family_a59.cfg"))
    assert code == 1
    assert "V+" in err
    assert "V+" not in out


def test_machine_output_is_stable(capsys):
    first = run(capsys, "decide", "--machine", fx("penultimate.fol"),
                fx("penultimate.cfg"))
    second = run(capsys, "decide", "--machine", fx("penultimate.fol"),
                 fx("penultimate.cfg"))
    assert first == second
    assert first[0] == 0
