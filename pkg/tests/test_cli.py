import shutil
import subprocess
from importlib.resources import files

import pytest

from qha.cli import run

DATA = files("qha") / "data"


def qha(*argv):
    lines = []
    code = run(list(argv), out=lines.append)
    return code, "\n".join(lines)


def result(text):
    """Merge all RESULT lines into one dict of strings."""
    out = {}
    for line in text.splitlines():
        if line.startswith("RESULT:"):
            out.update(kv.split("=", 1) for kv in line[len("RESULT:"):].split())
    return out


def test_algebra_info():
    code, text = qha("algebra", "info", str(DATA / "gamma2.alg"))
    r = result(text)
    assert code == 0 and r["dim"] == "5" and r["gl_dim"] == "2" and r["auslander"] == "true"


def test_module_report():
    code, text = qha("module", "report", str(DATA / "layered_g4.mod"))
    r = result(text)
    assert code == 0 and (r["pd"], r["id"], r["agreement"], r["tau_rigid"]) == ("1", "2", "true", "true")


def test_resolve():
    code, text = qha("resolve", str(DATA / "grade0_ausa3.mod"))
    r = result(text)
    assert code == 0 and r["length"] == "2" and r["exact"] == "true" and r["minimal"] == "true"


def test_tau_writes_module(tmp_path):
    out = tmp_path / "t.mod"
    code, text = qha("tau", str(DATA / "layered_g4.mod"), "-o", str(out))
    assert code == 0 and out.read_text().startswith("module")
    code, text = qha("module", "report", str(out))
    assert code == 0


def test_transpose_lives_on_opposite():
    code, text = qha("transpose", str(DATA / "layered_g4.mod"))
    assert code == 0 and "op" in result(text)["algebra"]


def test_knit(tmp_path):
    dot = tmp_path / "ar.dot"
    code, text = qha("knit", "builtin:gamma_3", "--dot", str(dot))
    r = result(text)
    assert code == 0 and r["count"] == "21" and r["mesh_ok"] == "true"
    assert dot.read_text().startswith("digraph")


def test_knit_cap_reports_incomplete():
    code, text = qha("knit", "builtin:gamma_4", "--cap", "10")
    assert code == 1 and result(text)["complete"] == "false"


def test_auslander_construction():
    code, text = qha("auslander", "builtin:a3_path")
    r = result(text)
    assert code == 0 and r["vertices"] == "6" and r["auslander"] == "true"


@pytest.mark.parametrize("method", ["clique", "mutation"])
def test_enumerate_stt(method):
    code, text = qha("enumerate", "stt", str(DATA / "gamma2.alg"), "--method", method)
    assert code == 0 and result(text)["count"] == "6"


@pytest.mark.parametrize("extra", [[], ["--op"]])
def test_enumerate_tilting(extra):
    code, text = qha("enumerate", "tilting", str(DATA / "gamma3.alg"), *extra)
    assert code == 0 and result(text)["count"] == "6"


def test_probe():
    code, text = qha("probe-2-11", "builtin:gamma_2")
    r = result(text)
    assert code == 0 and r["status"] == "verified" and r["stt"] == "6"
    code, text = qha("probe-2-11", str(DATA / "ausa3.alg"))
    assert result(text)["status"] == "hypotheses_not_satisfied"


def test_classify():
    code, text = qha("classify-2-7", "builtin:gamma_2")
    assert code == 0 and result(text)["source"] == "kx2"
    code, text = qha("classify-2-7", "builtin:a3_path")
    assert code == 1 and result(text)["auslander"] == "false"


def test_verify_grade_zero_case():
    code, text = qha("verify", "paper", "--case", "3.10")
    assert code == 0 and "FAIL" not in text and result(text)["ok"] == "true"


def test_verify_layered_case_small_n():
    code, text = qha("verify", "paper", "--case", "3.9", "--n", "2")
    assert code == 0 and "FAIL" not in text


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["algebra", "info", "/nonexistent.alg"],
    ["algebra", "info", "builtin:nonsense"],
    ["verify", "paper", "--case", "3.9", "--n", "7"],
    ["enumerate", "stt", "builtin:gamma_2", "--method", "magic"],
])
def test_usage_errors(argv):
    assert qha(*argv)[0] == 2


def test_output_is_deterministic():
    first = qha("enumerate", "stt", "builtin:gamma_3", "--method", "mutation")
    second = qha("enumerate", "stt", "builtin:gamma_3", "--method", "mutation")
    assert first == second


@pytest.mark.skipif(shutil.which("qha") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["qha", "enumerate", "stt", "builtin:gamma_2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "RESULT: count=6" in proc.stdout
