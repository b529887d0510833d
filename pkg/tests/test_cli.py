import json
import subprocess
import sys
from pathlib import Path

import pytest

from sagalg import (IndecPoly, band_complex, classify, cyclic_arrows_Qc, cyclic_arrows_Qc_star,
                    cyclic_paths_Pac, fixture, global_dimension, resolve, string_complex)
from sagalg.cli import main, run
from sagalg.walks import enumerate_generalized_strings, format_walk, parse_walk

QUIVERS = Path(__file__).resolve().parent.parent / "quivers"


def result(*argv):
    status, out = run(list(argv))
    assert status == 0, out
    data = json.loads(out)
    assert data["schema"] == "1"
    return data["result"]


def arrows(paths):
    return {"".join(p) for p in paths}


def test_classify_a1():
    r = result("--quiver", "A1", "classify")
    assert r["sag"] is True and r["gentle"] is False


def test_cyclic_sets_a3():
    r = result("--quiver", "A3", "cyclic-sets")
    assert arrows(r["Qc"]) == {"x"}
    assert arrows(r["Qc_star"]) == arrows(r["Pac"]) == {"x", "d", "c", "b"}


def test_gldim_a6():
    r = result("--quiver", "A6", "gldim")
    assert r["infinite"] is False and r["value"] == 2


def test_options_after_the_command():
    assert result("classify", "--quiver", "A1") == result("--quiver", "A1", "classify")


def test_quiver_file_path():
    assert result("--quiver", str(QUIVERS / "A2.json"), "maximal") == \
        result("--quiver", "A2", "maximal")


@pytest.mark.parametrize("argv, status", [
    (["--quiver", "A5", "bondarenko", "--window", "0", "1"], 2),
    (["--quiver", "A8", "--field", "2", "endo", "--band", "a.b^-1", "--poly", "1,1,1"], 3),
    (["--quiver", "A1", "complex", "--string", "b.a"], 1),
    (["--quiver", "A1", "--field", "8", "classify"], 1),
    (["--quiver", "/nonexistent.json", "classify"], 1),
    (["--quiver", "A8", "complex", "--band", "a.b^-1", "--poly", "1,0,2"], 1),
])
def test_exit_codes(argv, status, capsys):
    assert main(argv) == status
    assert capsys.readouterr().err.startswith("error:")


def test_parse_errors_exit_one():
    with pytest.raises(SystemExit) as e:
        run(["--quiver", "A1", "paths", "--bogus"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        run(["classify"])
    assert e.value.code == 1


def test_text_format():
    status, out = run(["--quiver", "A6", "--format", "text", "gldim"])
    assert status == 0
    assert "result.value: 2" in out.splitlines()


def test_output_is_deterministic_across_processes():
    argv = [sys.executable, "-m", "sagalg.cli", "--quiver", "A3", "resolve",
            "--string", "a.b^-1.c"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


# ------------------------------------------------------- library equivalence
@pytest.mark.parametrize("name", ["A1", "A3", "A4", "A6"])
def test_cli_matches_library(name):
    A = fixture(name)
    assert result("--quiver", name, "classify") == classify(A).as_dict()
    r = result("--quiver", name, "cyclic-sets")
    assert arrows(r["Qc"]) == {"".join(p.arrows) for p in cyclic_arrows_Qc(A)}
    assert arrows(r["Qc_star"]) == {"".join(p.arrows) for p in cyclic_arrows_Qc_star(A)}
    assert arrows(r["Pac"]) == {"".join(p.arrows) for p in cyclic_paths_Pac(A)}
    assert result("--quiver", name, "gldim") == global_dimension(A).as_dict()
    for w in enumerate_generalized_strings(A, 2):
        text = format_walk(w)
        C = string_complex(A, w)
        assert result("--quiver", name, "complex", "--string", text) == \
            json.loads(C.to_json(A))
        assert result("--quiver", name, "resolve", "--string", text) == \
            resolve(A, C).as_dict()


def test_band_complex_matches_library():
    A = fixture("A8")
    C = band_complex(A, parse_walk(A, "a.b^-1"), IndecPoly.parse("1,0,1"))
    assert result("--quiver", "A8", "complex", "--band", "a.b^-1", "--poly", "1,0,1") == \
        json.loads(C.to_json(A))


def test_strings_and_bands_listing():
    assert result("--quiver", "A8", "bands", "--max-letters", "2") == \
        {"count": 1, "bands": ["a.b^-1"]}
    assert result("--quiver", "A1", "strings", "--max-letters", "0") == \
        {"count": 3, "strings": ["e(1)", "e(2)", "e(3)"]}


def test_iso_and_endo():
    r = result("--quiver", "A3", "iso", "--string", "a", "--string", "b")
    assert r["isomorphic"] is False
    r = result("--quiver", "A3", "endo", "--string", "a.b^-1.c")
    assert r == {"dimension": 1, "radical_dimension": 0, "indecomposable": True}


def test_bondarenko_command():
    r = result("--quiver", "A3", "bondarenko", "--window", "0", "1", "--of-string", "a.b^-1.c")
    assert r["matrix"]["entries"] and r["violations"] == []
