import json
import subprocess
import sys

import pytest

from lnd_lab import RingDesc
from lnd_lab.cli import main
from lnd_lab.poly import LEX

DAN = "danielewski(n=1,p=y^2+1)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_nf_example(capsys):
    assert run(capsys, "nf", "--vars", "x,y,z", "--order", "lex", "--ideal", "x*z-y^2-1", "--poly", "x*z") == (0, "y^2 + 1", "")


def test_derive_deg_example(capsys):
    code, out, _ = run(capsys, "derive", "deg", "--catalog", DAN, "--derivation", "D1", "--elem", "z", "--bound", "16")
    assert (code, out) == (0, "2")


def test_lattice_example(capsys):
    code, out, _ = run(capsys, "grade", "lattice", "--vectors", "(2,-6,0);(0,-3,0);(0,-2,0);(0,0,-1)", "--proper-in", "Z3")
    assert (code, out) == (0, "true")


def test_gb_repeated_ideal(capsys):
    code, out, _ = run(capsys, "gb", "--vars", "x,y", "--ideal", "x^2-y", "--ideal", "y^2-x")
    assert out.splitlines() == ["x - y^2", "y^4 - y"]


def test_derive_check_printed_table_fails(capsys):
    code, out, _ = run(
        capsys, "derive", "check", "--vars", "x,y,z,w", "--ideal", "x*z-y*w-1", "--images", "x=0;y=z;z=0;w=x"
    )
    assert code == 1
    assert "-x*y - z*w" in out


def test_derive_lnd_certifies(capsys):
    code, out, _ = run(capsys, "derive", "lnd", "--catalog", DAN, "--derivation", "D1")
    assert code == 0
    assert out.splitlines()[0] == "certified"
    assert "z: z -> 2*y -> 2*x -> 0" in out


def test_derive_lnd_search(capsys):
    code, out, _ = run(capsys, "derive", "lnd", "--search", "--catalog", "quadric(2)", "--degree", "1", "--coeffs=-1,0,1")
    assert (code, out) == (0, "no LND in the declared grid")


def test_kernel_and_ml(capsys):
    assert run(capsys, "kernel", "--catalog", DAN, "--derivation", "D1", "--degree", "2")[1] == "{1, x, x^2}"
    assert run(capsys, "ml", "--catalog", DAN, "--derivation", "D1,D2", "--degree", "4")[1] == "{1}"


def test_grade_commands(capsys):
    code, out, _ = run(capsys, "grade", "top", "--preset", "kr(2,2,3)", "--poly=-x^-2*(x+z^2+w^3)")
    assert out == "-x^-2*z^2 - x^-2*w^3"
    code, out, _ = run(capsys, "grade", "deg", "--preset", "kr(2,2,3)", "--poly", "x")
    assert out == "(-1,0,0)"
    code, out, _ = run(capsys, "grade", "lattice", "--conditions", "--vectors", "(-1,0,0);(2,-6,0);(0,-3,0);(0,-2,0);(0,0,-1)")
    assert out == "[0, 2, 3, 4]"


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog", "sl2")
    assert code == 0
    assert "D1c: x -> 0; y -> x; z -> w; w -> 0" in out
    assert "D1 (printed, not well defined)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["nf", "--vars", "x", "--poly", "x +"],
        ["nf", "--vars", "x", "--poly", "q"],
        ["nf", "--poly", "x"],
        ["derive", "apply", "--catalog", DAN, "--derivation", "D9", "--elem", "z"],
        ["catalog", "kr(2,2,4)"],
        ["corpus", "--corpus", "/nonexistent/file.yaml"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_corpus_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.yaml"
    good.write_text("name: g\nalgebra: {catalog: \"danielewski(n=1,p=y^2+1)\"}\nchecks:\n  - {op: deg, derivation: D1, elem: z, expect: 2}\n")
    bad = tmp_path / "bad.yaml"
    bad.write_text("name: b\nalgebra: {catalog: \"danielewski(n=1,p=y^2+1)\"}\nchecks:\n  - {op: deg, derivation: D1, elem: z, expect: 3}\n")
    broken = tmp_path / "broken.yaml"
    broken.write_text("name: b\nchecks:\n  - {op: deg}\n")
    assert run(capsys, "corpus", "--corpus", str(good))[0] == 0
    assert run(capsys, "corpus", "--corpus", str(bad))[0] == 1
    assert run(capsys, "corpus", "--corpus", str(broken))[0] == 2


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "derive", "lnd", "--json", "--catalog", DAN, "--derivation", "D2")
    doc = json.loads(out)
    ring = RingDesc(("x", "y", "z"), order=LEX)
    for var, chain in doc["chains"].items():
        for s in chain:
            assert str(ring.parse(s)) == s
    code, out, _ = run(capsys, "gb", "--json", "--vars", "x,y", "--ideal", "x^2-y;y^2-x")
    basis = json.loads(out)["basis"]
    assert [str(RingDesc(("x", "y"), order=LEX).parse(s)) for s in basis] == basis


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lnd_lab", "nf", "--vars", "x,y,z", "--ideal", "x*z-y^2-1", "--poly", "x*z"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "y^2 + 1"
