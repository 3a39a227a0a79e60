"""End-to-end CLI behaviour: output formats, determinism, exit codes, and
the b-file comparison tooling."""

import json

import pytest

from chordlab.cli import main
from chordlab.oeis import SEQUENCE_MAP, compare_bfile, parse_bfile, write_bfile


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_series_table(capsys):
    code, out = run_cli(capsys, "series", "C", "--order", "6")
    assert code == 0
    assert out.strip() == "0,1,1,4,27,248,2830"


def test_series_bfile(capsys):
    code, out = run_cli(capsys, "series", "C2", "--order", "6", "--format", "bfile")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("#")
    assert lines[1:] == ["2 1", "3 1", "4 7", "5 63", "6 729"]


def test_series_json_roundtrip(capsys):
    code, out = run_cli(capsys, "series", "D", "--order", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["payload"] == ["1", "1", "3", "15"]
    assert data["parameters"]["name"] == "D"
    assert json.loads(json.dumps(data)) == data


def test_series_order_cap(capsys):
    with pytest.raises(SystemExit):
        run_cli(capsys, "series", "C", "--order", "65")


def test_enumerate_diagrams(capsys):
    code, out = run_cli(
        capsys, "enumerate", "--n", "4", "--filter", "connected", "--count-only"
    )
    assert code == 0
    assert out.strip() == "count 27"


def test_enumerate_tadpoles(capsys):
    code, out = run_cli(
        capsys, "enumerate", "--kind", "tadpoles", "--n", "3", "--count-only"
    )
    assert code == 0
    assert out.strip() == "count 4"


def test_bijection_phi_commands(capsys):
    code, out = run_cli(capsys, "bijection", "phi", "--input", "2: 3 4 1 2")
    assert code == 0
    assert out.strip() == "2: 4 3 2 1"
    code, out = run_cli(
        capsys, "bijection", "phi", "--input", "2: 4 3 2 1", "--inverse"
    )
    assert out.strip() == "2: 3 4 1 2"


def test_bijection_nabla_roundtrip(capsys):
    _, out = run_cli(capsys, "bijection", "nabla", "--input", "2: 3 4 1 2")
    assert out.strip() == "1: 2 1 | 1: 2 1 | 1"
    _, back = run_cli(
        capsys, "bijection", "nabla", "--input", out.strip(), "--inverse"
    )
    assert back.strip() == "2: 3 4 1 2"


def test_bijection_theta_roundtrip(capsys):
    _, out = run_cli(capsys, "bijection", "theta", "--input", "1: 2 1 | -")
    assert out.strip() == "(0.1;-;)"
    _, back = run_cli(
        capsys, "bijection", "theta", "--input", out.strip(), "--inverse"
    )
    assert back.strip() == "1: 2 1 | 0:"


def test_bijection_lambda(capsys):
    _, out = run_cli(
        capsys, "bijection", "lambda", "--input",
        "loops: (0) ; bosons:  ; leg: 0",
    )
    assert out.strip() == "1: 2 1"
    _, back = run_cli(
        capsys, "bijection", "lambda", "--input", "1: 2 1", "--inverse"
    )
    assert back.strip() == "loops: (0) ; bosons:  ; leg: 0"


def test_bell_command(capsys):
    code, out = run_cli(capsys, "bell", "--n", "4", "--k", "2", "--xs", "1,1,1")
    assert code == 0
    assert out.strip() == "B(4,2) = 7"


def test_asym_command(capsys):
    code, out = run_cli(capsys, "asym", "C", "--n", "20", "--terms", "1")
    assert code == 0
    assert "tracking_ratio" in out


def test_diffeo_command_deterministic(capsys):
    args = ("diffeo", "--a", "1,1/2,1/3", "--n", "4", "--kinematics", "seed=5")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second
    assert "closed_form_agrees True" in first
    assert "amplitude_matches True" in first


def test_verify_suite_passes(capsys):
    code, out = run_cli(capsys, "verify", "bell", "--order", "6")
    assert code == 0
    assert "all pass" in out
    assert "seed" in out


def test_verify_all_is_deterministic(capsys):
    code, out = run_cli(capsys, "verify", "all", "--order", "6", "--seed", "99")
    assert code == 0
    _, again = run_cli(capsys, "verify", "all", "--order", "6", "--seed", "99")
    assert out == again


def test_verify_exits_nonzero_on_failure(capsys, monkeypatch):
    import chordlab.cli as cli_module

    monkeypatch.setitem(
        cli_module.SUITES, "bell", lambda order, rng: [("forced", False, "")]
    )
    code, out = run_cli(capsys, "verify", "bell", "--order", "4")
    assert code == 1
    assert "FAIL forced" in out
    assert "FAILURES PRESENT" in out


def test_oeis_compare_roundtrip(tmp_path, capsys):
    for name in SEQUENCE_MAP:
        path = tmp_path / f"b_{name}.txt"
        write_bfile(name, str(path), order=10)
        assert parse_bfile(str(path))
        comparison = compare_bfile(name, str(path), order=10)
        assert comparison.ok, comparison
        code, out = run_cli(
            capsys, "oeis-compare", name, str(path), "--order", "10"
        )
        assert code == 0
        assert "MISMATCH" not in out


def test_oeis_compare_detects_mismatch(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    write_bfile("C", str(path), order=8)
    lines = path.read_text().splitlines()
    lines[3] = lines[3].split()[0] + " 999"
    path.write_text("\n".join(lines) + "\n")
    code, out = run_cli(capsys, "oeis-compare", "C", str(path), "--order", "8")
    assert code == 1
    assert "MISMATCH" in out
    assert "999" in out


def test_oeis_parse_rejects_malformed(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2 3\n")
    with pytest.raises(ValueError):
        parse_bfile(str(path))


def test_paper_prefixes_in_bfile_convention(tmp_path):
    # the declared offsets put the catalogued prefixes at these b-indices
    path = tmp_path / "b.txt"
    write_bfile("A", str(path), order=7)
    entries = dict(parse_bfile(str(path)))
    assert [entries[i] for i in range(8)] == [1, 2, 3, 10, 63, 558, 6226, 82836]
    write_bfile("C2", str(path), order=8)
    entries = dict(parse_bfile(str(path)))
    assert [entries[i] for i in range(5)] == [1, 1, 7, 63, 729]
