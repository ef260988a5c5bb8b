import pytest

from ui.main_cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize(
    "family, n, expected",
    [("m24", "6", "Z3 + Z9 + Z18"), ("m25", "6", "Z8 + Z72"), ("m24", "4", "Z3 + Z12"), ("m25", "2", "Z3")],
)
def test_h1(capsys, family, n, expected):
    assert run(capsys, "h1", "--family", family, "--n", n) == (0, expected + "\n", "")


def test_h1_other_routes(capsys):
    assert run(capsys, "h1", "-f", "m25", "-n", "4", "--mode", "cw", "--tree", "first")[1] == "Z3 + Z3 + Z6\n"
    assert run(capsys, "h1", "-f", "m24", "-n", "3", "--simplify")[1] == "Z9\n"
    assert run(capsys, "h1", "--preset", "seifert")[1] == "Z3 + Z6\n"


def test_pi1_documents(capsys):
    status, out, _ = run(capsys, "pi1", "--preset", "seifert")
    assert status == 0
    assert out.startswith("pgv1 presentation\ngens: x y z h\n")
    status, out, _ = run(capsys, "pi1", "-f", "m24", "-n", "2", "--simplify")
    assert out.splitlines()[1] == "gens: c1 c2"
    assert len(out.splitlines()) == 4


def test_verbose_simplify_lists_steps(capsys):
    status, out, _ = run(capsys, "-v", "pi1", "-f", "m24", "-n", "2", "--simplify")
    assert status == 0
    assert out.startswith("# eliminated b1: 6 generators\n")


def test_analyze(capsys):
    status, out, _ = run(capsys, "analyze", "-f", "m24", "-n", "3")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "complex M24(3)"
    assert "cells: sigma0=1 sigma1=10 sigma2=10 sigma3=1" in lines
    assert "euler characteristic: 0" in lines
    assert "manifold: yes" in lines


def test_gen_then_analyze_file(capsys, tmp_path):
    path = tmp_path / "m25_4.txt"
    assert run(capsys, "gen", "-f", "m25", "-n", "4", "--out", str(path))[0] == 0
    assert path.read_text().startswith("pgv1 complex\nname M25(4)\n")
    status, out, _ = run(capsys, "-v", "analyze", "--file", str(path))
    assert status == 0
    assert "manifold: yes" in out
    assert "  vertex class 2: " in out


def test_symmetry(capsys):
    status, out, _ = run(capsys, "symmetry", "-f", "m25", "-n", "6", "--step", "2")
    assert status == 0
    lines = out.splitlines()
    assert lines[:5] == ["base: M25(2)", "base H_1: Z3", "covering degree: 3", "strongly cyclic: yes", "components: 3"]
    assert lines[-1].startswith("note: rotation-axis components")


def test_table(capsys):
    status, out, _ = run(capsys, "table", "-f", "m24", "--from", "3", "--to", "4")
    assert status == 0
    assert out.splitlines() == [
        "n | H_1 | singular components | volume",
        "3 | Z9 | 2 (index 3, 3) | external",
        "4 | Z3 + Z12 | 2 (index 4, 4) | external",
        "note: volume external, volumes require hyperbolic-geometry software and are not computed",
    ]


def test_table_with_workers(capsys):
    status, out, _ = run(capsys, "table", "-f", "m25", "--from", "3", "--to", "4", "--jobs", "2")
    assert status == 0
    assert out.splitlines()[1:3] == ["3 | Z2 + Z18 | 2 (index 3, 3) | external", "4 | Z3 + Z3 + Z6 | 3 (index 2, 2, 2) | external"]


def test_crosscheck(capsys):
    status, out, _ = run(capsys, "crosscheck", "-f", "m25", "-n", "4")
    assert status == 0
    assert "h25: Z3 + Z3 + Z6" in out.splitlines()
    assert len(out.splitlines()) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ("h1", "-f", "m24", "-n", "0"),
        ("h1", "--preset", "h25", "-n", "3"),
        ("symmetry", "-f", "m24", "-n", "5", "--step", "2"),
    ],
)
def test_domain_errors_exit_1(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 1
    assert out == ""
    assert err.startswith("error: ")


def test_missing_file_exits_1(capsys, tmp_path):
    status, out, err = run(capsys, "analyze", "--file", str(tmp_path / "absent.txt"))
    assert status == 1
    assert out == ""
    assert err.startswith("error: ")


def test_unwritable_output_exits_1(capsys, tmp_path):
    status, _, err = run(capsys, "gen", "-f", "m24", "-n", "2", "--out", str(tmp_path / "no" / "such" / "dir.txt"))
    assert status == 1
    assert err.startswith("error: ")


@pytest.mark.parametrize(
    "argv",
    [
        ("h1", "-f", "m99", "-n", "3"),
        ("frobnicate",),
        ("h1", "-f", "m24", "-n", "x"),
        ("h1", "-f", "m24"),
        ("pi1", "-f", "m24"),
        ("analyze", "-f", "m25"),
        ("analyze",),
        ("h1",),
        ("h1", "-n", "3"),
        ("pi1", "--preset", "g25"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as error:
        main(list(argv))
    assert error.value.code == 2
    assert capsys.readouterr().err


def test_seifert_preset_needs_no_n(capsys):
    status, out, _ = run(capsys, "h1", "--preset", "seifert")
    assert status == 0
    assert out.strip()
