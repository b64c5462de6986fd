from __future__ import annotations

import io
import json
import shutil
import subprocess

import pytest
from conftest import oscillator

from nlie import cli
from nlie.catalog import NAMES, builtin, scramble
from nlie.exact_linalg import scalar


def run(*argv) -> tuple[int, str]:
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def catalog_text(name, form=0) -> str:
    return run("catalog", name, "--form", str(form))[1]


@pytest.fixture
def write(tmp_path):
    def _write(text, name="alg.json"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def a4_doc() -> dict:
    return json.loads(catalog_text("a4"))


# --- file format -------------------------------------------------------------------

@pytest.mark.parametrize("name", NAMES)
def test_catalog_round_trip(name):
    text = catalog_text(name)
    f = cli.parse(text)
    assert cli.emit(f) == text
    A = f.algebra()
    assert A == builtin(name).algebra
    assert f.bilinear_form(A) == builtin(name).form


def test_emit_canonicalises_order_and_zeros():
    doc = a4_doc()
    doc["brackets"].reverse()
    doc["brackets"][0]["value"] = {"e1": "0", **doc["brackets"][0]["value"]}
    text = cli.emit(cli.parse(json.dumps(doc, indent=7)))
    assert text == catalog_text("a4")


def test_scrambled_file_round_trip():
    s = scramble(builtin("a4_dual"), 2)
    text = cli.emit(cli.to_file(s.algebra, s.form, s.levi, "x"))
    assert cli.emit(cli.parse(text)) == text
    assert cli.parse(text).algebra() == s.algebra


def test_rationals_are_never_decimals():
    s = scramble(builtin("a4"), 1)
    text = cli.emit(cli.to_file(s.algebra, s.form))
    assert "." not in text


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d["brackets"][0].update(args=["e1", "e1", "e2"]), "non-increasing tuple"),
    (lambda d: d["brackets"][0].update(args=["e2", "e1", "e3"]), "non-increasing tuple"),
    (lambda d: d["brackets"].append(dict(d["brackets"][0])), "duplicate tuple"),
    (lambda d: d["brackets"][0].update(value={"e9": "1"}), "unknown basis name"),
    (lambda d: d["brackets"][0].update(value={"e1": 0.5}), "expected a rational string"),
    (lambda d: d["brackets"][0].update(value={"e1": "1/0"}), "brackets[0].value[e1]"),
    (lambda d: d.update(basis=["e1", "e1", "e3", "e4"]), "distinct"),
    (lambda d: d.update(n=1), "n must be"),
    (lambda d: d.pop("dim"), "missing key"),
    (lambda d: d["form"][0].__setitem__(1, "1"), "symmetric"),
    (lambda d: d.update(form=[["1"]]), "4x4"),
])
def test_parse_errors(mutate, message):
    doc = a4_doc()
    mutate(doc)
    with pytest.raises(cli.ParseError, match=message.replace("[", r"\[").replace("]", r"\]")):
        cli.parse(json.dumps(doc))


def test_invalid_json():
    with pytest.raises(cli.ParseError, match="invalid JSON"):
        cli.parse("{")


def test_format_vector():
    v = [scalar(1), scalar(0), scalar(0), scalar("-1/2")]
    assert cli.format_vector(v, ["e1", "e2", "e3", "f4"]) == "e1 - 1/2*f4"


# --- commands ---------------------------------------------------------------------

def test_metricdim_prints_value(write):
    code, out = run("metricdim", write(catalog_text("a4_dual")))
    assert code == 0 and out == "2\n"


def test_audit_a4(write):
    code, out = run("audit", write(catalog_text("a4")))
    assert code == 0
    rows = out.split("\n\n", 1)[1].splitlines()[1:]
    assert rows and all(r.split()[1] in ("pass", "not-applicable") for r in rows)


def test_audit_json(write):
    code, out = run("audit", "--json", write(catalog_text("a4_dual")))
    data = json.loads(out)
    assert code == 0 and data["invariants"]["m_count"] == 1
    assert len(data["audit"]) == 35


def test_analyze_abelian_2(write):
    code, out = run("analyze", "--json", write(catalog_text("abelian_2")))
    data = json.loads(out)
    assert code == 0
    assert (data["radical_dim"], data["socle_dim"], data["m_count"], data["metric_dim"]) == \
        (2, 2, 2, 3)
    code, table = run("analyze", write(catalog_text("abelian_2")))
    rows = dict(line.split(None, 1) for line in table.splitlines())
    assert rows["radical_dim"] == "2" and rows["metric_dim"] == "3"


def test_decompose_a4_plus_a4(write):
    code, out = run("decompose", write(catalog_text("a4_plus_a4", form=1)))
    assert code == 0
    assert out.count("component ") == 2 and out.count("dim 4") == 2


def test_radical_and_socle(write):
    path = write(catalog_text("a4_dual"))
    code, out = run("radical", path)
    assert code == 0 and out.startswith("radical: dim 4\n")
    assert "f1" in out and "e1" not in out
    code, out = run("socle", path)
    assert code == 0 and "1 minimal ideals" in out and "abelian" in out


def test_validate(write):
    code, out = run("validate", write(catalog_text("a4")))
    assert code == 0 and out.startswith("ok:") and "form: invariant" in out


def test_seed_before_and_after_command(write, monkeypatch):
    path = write(catalog_text("a4_plus_a4"))
    a = run("--seed", "7", "decompose", path)
    b = run("decompose", "--seed", "7", path)
    monkeypatch.setenv("NLIE_SEED", "7")
    c = run("decompose", path)
    assert a == b == c and a[0] == 0


def test_output_is_byte_identical(write):
    path = write(catalog_text("a4_plus_abelian1"))
    assert run("audit", path) == run("audit", path)
    assert run("analyze", "--json", path) == run("analyze", "--json", path)


def test_form_required(write):
    doc = a4_doc()
    del doc["form"]
    code, _ = run("metricdim", write(json.dumps(doc)))
    assert code == cli.EXIT_PARSE


# --- exit codes -------------------------------------------------------------------

def test_parse_error_exit_code(write, capsys):
    doc = a4_doc()
    doc["brackets"][0]["args"] = ["e1", "e1", "e2"]
    code, _ = run("validate", write(json.dumps(doc)))
    assert code == cli.EXIT_PARSE
    assert "non-increasing tuple" in capsys.readouterr().err


def test_perturbed_constant_exit_code(write, capsys):
    doc = a4_doc()
    doc["brackets"][0]["value"] = {"e3": "1"}
    code, _ = run("validate", write(json.dumps(doc)))
    assert code == cli.EXIT_INVALID
    assert "Jacobi fails for x=(" in capsys.readouterr().err


def test_skip_validate(write):
    doc = a4_doc()
    doc["brackets"][0]["value"] = {"e3": "1"}
    code, _ = run("validate", "--skip-validate", write(json.dumps(doc)))
    assert code == 0


def test_non_invariant_form_exit_code(write, capsys):
    doc = a4_doc()
    doc["form"][0][0] = "2"
    code, _ = run("validate", write(json.dumps(doc)))
    assert code == cli.EXIT_INVALID
    assert "not invariant" in capsys.readouterr().err


def test_degenerate_form_exit_code(write, capsys):
    doc = json.loads(catalog_text("abelian_2"))
    doc["form"] = [["1", "0"], ["0", "0"]]
    code, _ = run("validate", write(json.dumps(doc)))
    assert code == cli.EXIT_INVALID
    assert "degenerate" in capsys.readouterr().err


@pytest.mark.parametrize("command", ["radical", "analyze", "audit"])
def test_not_split_exit_code(write, command):
    A, B = oscillator()
    path = write(cli.emit(cli.to_file(A, B)))
    code, out = run(command, path)
    if command == "audit":
        # the report is still printed, with the undecided rows marked
        assert code == cli.EXIT_NOT_SPLIT and "not-split" in out
    else:
        assert code == cli.EXIT_NOT_SPLIT and out == ""


def test_unknown_catalog_name():
    assert run("catalog", "nope")[0] == cli.EXIT_PARSE


@pytest.mark.skipif(shutil.which("nlie") is None, reason="console script not installed")
def test_console_script_reads_stdin():
    text = catalog_text("a4_dual")
    proc = subprocess.run(["nlie", "metricdim", "-"], input=text, capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2\n"
