import inspect
import io
import json
import subprocess
import sys

import mpmath
import pytest

from conftest import delta_form, field, random_quadratic_datum
import hmfarith.errors as errors
from hmfarith import cli
from hmfarith.cli import RunReport, emit_report, fmt_num, main, run_command
from hmfarith.dictionary import validate_newform_data
from hmfarith.errors import HMFError, InvariantViolation, ParseError
from hmfarith.hmf1 import document_from_form, load_hmf1, parse_hmf1, serialize_hmf1

MINIMAL = """HMF1
FIELD
poly 0,1
CHAR
modulus 1
index 1
FORM
weight 12
level 1
coefffield 0,1
bound 1
COEFFS
norm 1 ideal 1 value 1
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_bytes(text.encode())
    return str(p)


def run(argv):
    rep = run_command(argv)
    return rep, rep.record()


# -- parsing ------------------------------------------------------------------------------


def test_minimal_document():
    doc = parse_hmf1(MINIMAL)
    f = doc.form
    assert f.weight == (12,) and f.k0 == 12
    assert f.level.is_unit()
    assert list(f.coeffs) == [()]
    assert doc.character.residue.is_trivial()
    assert validate_newform_data(f).ok
    assert serialize_hmf1(doc) == MINIMAL


def test_wrong_value_length_is_a_parse_error():
    text = MINIMAL.replace("coefffield 0,1", "coefffield -5,0,1")
    with pytest.raises(ParseError) as e:
        parse_hmf1(text)
    assert e.value.line == 13
    assert e.value.exit_code == 2


def test_comments_and_blank_lines_are_ignored():
    text = "# a comment\n" + MINIMAL.replace("FORM\n", "FORM\n\n# weight next\n")
    assert parse_hmf1(text).form.weight == (12,)


@pytest.mark.parametrize("mutate,err", [
    (lambda t: t.replace("HMF1\n", "HMF2\n"), ParseError),
    (lambda t: t.replace("\n", "\r\n"), ParseError),
    (lambda t: t.replace("CHAR\nmodulus 1\nindex 1\n", "") + "CHAR\nmodulus 1\n", ParseError),
    (lambda t: t.replace("weight 12", "weight x"), ParseError),
    (lambda t: t.replace("norm 1 ideal 1 value 1", "norm 1 ideal 1 value"), ParseError),
    (lambda t: t.replace("norm 1 ideal 1 value 1", "norm 2 ideal 2 value 1"), InvariantViolation),
    (lambda t: t.replace("modulus 1", "modulus 3"), InvariantViolation),
    (lambda t: t + "norm 2 ideal 3 value 5\n", InvariantViolation),
    (lambda t: t + "norm 1 ideal 1 value 1\n", InvariantViolation),
    (lambda t: t + "norm 2 ideal 2 value 5\n", InvariantViolation),        # above the bound
])
def test_malformed_documents(mutate, err):
    with pytest.raises(err):
        parse_hmf1(mutate(MINIMAL))


def test_non_integral_ideal_is_rejected():
    doc = serialize_hmf1(document_from_form(random_quadratic_datum(0, B=12)[0]))
    bad = doc.replace("norm 4 ideal 2,0 0,2", "norm 4 ideal 1/2,0 0,2")
    with pytest.raises((InvariantViolation, ParseError)):
        parse_hmf1(bad)


def test_golden_field_document_with_twenty_lines():
    f, _ = random_quadratic_datum(21, B=60)
    doc = document_from_form(f)
    text = serialize_hmf1(doc)
    lines = text.splitlines()
    coeff_lines = lines[lines.index("COEFFS") + 1:]
    # keep the first twenty ideals and bound the document at the largest norm kept
    keep = coeff_lines[:20]
    B = int(keep[-1].split()[1])
    head = [ln if not ln.startswith("bound ") else f"bound {B}" for ln in lines[:lines.index("COEFFS") + 1]]
    text20 = "\n".join(head + keep) + "\n"
    d = parse_hmf1(text20)
    assert len(d.form.coeffs) == 20
    assert d.form.bound == B
    assert validate_newform_data(d.form).ok
    assert serialize_hmf1(d) == text20


def _corpus():
    docs = [MINIMAL, serialize_hmf1(document_from_form(delta_form(30)))]
    for seed in range(10):
        docs.append(serialize_hmf1(document_from_form(random_quadratic_datum(seed, B=30)[0])))
    for seed in range(4):
        docs.append(serialize_hmf1(document_from_form(
            random_quadratic_datum(seed, B=30, weight=(2, 4), d=2)[0])))
    for seed in range(4):
        docs.append(serialize_hmf1(document_from_form(
            random_quadratic_datum(seed, B=30, weight=(3, 5), d=3, coeff_poly=(-1, -2, 1, 1))[0])))
    for seed in range(2):
        docs.append(serialize_hmf1(document_from_form(
            random_quadratic_datum(seed, B=40, weight=(6,), d=1, rational=True,
                                   coeff_poly=(0, 1))[0])))
    return docs


def test_round_trip_corpus():
    docs = _corpus()
    assert len(docs) >= 20
    for text in docs:
        doc = parse_hmf1(text)
        assert serialize_hmf1(doc) == text
        assert validate_newform_data(doc.form).ok


def test_serialization_canonicalizes():
    text = MINIMAL.replace("poly 0,1", "poly 0, 1").replace("# x", "")
    with pytest.raises(ParseError):
        parse_hmf1(text)                 # vectors carry no spaces
    text = MINIMAL.replace("bound 1\n", "bound 1\nlabel  x\n")
    assert serialize_hmf1(parse_hmf1(text)).count("label x") == 1


def test_load_from_disk(tmp_path):
    p = write(tmp_path, "m.hmf1", MINIMAL)
    assert load_hmf1(p).form.k0 == 12
    with pytest.raises(HMFError):
        load_hmf1(str(tmp_path / "missing.hmf1"))
    q = tmp_path / "bad.hmf1"
    q.write_bytes(b"\xff\xfe")
    with pytest.raises(ParseError):
        load_hmf1(str(q))


# -- exit codes -----------------------------------------------------------------------


def _error_classes():
    return [c for _, c in inspect.getmembers(errors, inspect.isclass)
            if issubclass(c, HMFError)]


@pytest.mark.parametrize("cls", _error_classes(), ids=lambda c: c.__name__)
def test_every_error_class_maps_to_its_code(cls, monkeypatch):
    expected = 2 if cls.__name__ in ("ParseError", "UnknownCommand") else 1
    assert cls.exit_code == expected

    def boom(args, rep):
        raise cls("boom")
    monkeypatch.setitem(cli.HANDLERS, "classify", boom)
    rep = run_command(["classify", "--weight", "2,2"])
    assert rep.status == expected
    assert rep.error["type"] == cls.__name__


@pytest.mark.parametrize("argv,code,etype", [
    (["frobnicate"], 2, "UnknownCommand"),
    (["classify", "--nope"], 2, "ParseError"),
    ([], 2, "ParseError"),
    (["classify", "--weight", "2,x"], 2, "ParseError"),
    (["classify", "--prec", "8", "--weight", "2"], 2, "ParseError"),
    (["field-info", "--poly", "1,0,1"], 1, "NotTotallyReal"),
    (["field-info", "--poly=-1,0,2"], 1, "NotMonic"),
    (["field-info", "--poly", "-1,0,2"], 2, "ParseError"),     # argparse reads -1,0,2 as a flag
    (["coh-constants", "--weight", "2,4", "--twisted"], 1, "NegativeFactorial"),
    (["critical-points", "--weight", "2,3"], 1, "ParityViolation"),
    (["coh-constants", "--weight", "3,3"], 1, "OddWeightUntwisted"),
    (["zeta-check", "--type", "other", "--q", "5", "--conductor", "1"], 1, "InvariantViolation"),
    (["zeta-check", "--type", "weird", "--q", "5"], 2, "ParseError"),
])
def test_exit_codes_through_real_commands(argv, code, etype):
    rep, rec = run(argv)
    assert rep.status == code
    assert rec["error"]["type"] == etype


def test_lvalue_out_of_region_is_a_domain_error(tmp_path):
    p = write(tmp_path, "d.hmf1", serialize_hmf1(document_from_form(delta_form(50))))
    rep, rec = run(["lvalue", "--in", p, "--s", "6"])
    assert rep.status == 1 and rec["error"]["type"] == "OutOfConvergenceRegion"
    rep, rec = run(["lvalue", "--in", p, "--critical", "9"])
    assert rep.status == 1 and rec["error"]["type"] == "NotCritical"


def test_parse_error_from_file(tmp_path):
    p = write(tmp_path, "bad.hmf1", MINIMAL.replace("coefffield 0,1", "coefffield -5,0,1"))
    rep, rec = run(["attach", "--in", p])
    assert rep.status == 2
    assert "line 13" in rec["error"]["message"]


# -- report emission --------------------------------------------------------------------


def test_empty_report_is_a_valid_record():
    buf = io.StringIO()
    emit_report(RunReport(command=["noop"]), "structured", buf)
    out = buf.getvalue()
    assert out.count("\n") == 1
    rec = json.loads(out)
    assert rec == {"command": ["noop"], "status": 0, "results": {}, "warnings": []}


def test_report_with_one_warning():
    rep = RunReport(command=["x"], warnings=["caveat"])
    buf = io.StringIO()
    emit_report(rep, "structured", buf)
    assert json.loads(buf.getvalue())["warnings"] == ["caveat"]
    buf = io.StringIO()
    emit_report(rep, "text", buf)
    assert buf.getvalue().splitlines()[-1] == "warning: caveat"


def test_gauss_sum_report_mod_5():
    rep, rec = run(["gauss-sum", "--modulus", "5", "--gen", "2", "--angle", "1/2"])
    assert rep.status == 0
    g = rec["results"]["gauss_sum"]
    assert g["value"].startswith("2.23606797")
    assert float(g["radius"]) < 1e-30
    re, sign, im = g["value"].split()
    assert abs(mpmath.mpf(re) - mpmath.sqrt(5)) < 1e-30 and im == "0.0*i"
    assert rec["results"]["conductor_norm"] == 5 and rec["results"]["primitive"]


def test_text_and_structured_carry_the_same_content():
    rep = run_command(["gauss-sum", "--modulus", "5", "--gen", "2", "--angle", "1/2"])
    t, s = io.StringIO(), io.StringIO()
    emit_report(rep, "text", t)
    emit_report(rep, "structured", s)
    rec = json.loads(s.getvalue())
    text = t.getvalue()
    assert rec["results"]["gauss_sum"]["value"] in text
    assert rec["results"]["gauss_sum"]["radius"] in text
    assert "signature: [1]" in text


def test_fmt_num_complex_and_radius():
    out = fmt_num(mpmath.mpc(1, -2), mpmath.mpf("1e-40"), 64)
    assert out["value"].endswith("*i") and " - " in out["value"]
    assert out["radius"].startswith("1.0e-40")
    assert fmt_num(3)["radius"] == "0"


def test_structured_output_is_deterministic(tmp_path):
    p = write(tmp_path, "d.hmf1", serialize_hmf1(document_from_form(delta_form(200))))
    outs = set()
    for _ in range(3):
        buf = io.StringIO()
        emit_report(run_command(["lvalue", "--in", p, "--s", "9", "--prec", "96"]), "structured", buf)
        outs.add(buf.getvalue())
    assert len(outs) == 1


def test_prec_from_environment(monkeypatch):
    monkeypatch.setenv("HMF_PREC", "64")
    a = run_command(["gauss-sum", "--modulus", "5", "--gen", "2", "--angle", "1/2"]).record()
    monkeypatch.delenv("HMF_PREC")
    b = run_command(["gauss-sum", "--modulus", "5", "--gen", "2", "--angle", "1/2"]).record()
    assert len(a["results"]["gauss_sum"]["value"]) < len(b["results"]["gauss_sum"]["value"])


# -- subcommands --------------------------------------------------------------------------


def _doc_with_weight(weight, d):
    f, _ = random_quadratic_datum(0, B=12, weight=weight, d=d)
    return serialize_hmf1(document_from_form(f))


def test_classify_mixed_parity(tmp_path):
    F = field(5)
    text = MINIMAL.replace("poly 0,1", "poly -1,-1,1").replace("modulus 1", "modulus 1,0 0,1") \
        .replace("weight 12", "weight 2,3").replace("level 1", "level 1,0 0,1") \
        .replace("ideal 1 value", "ideal 1,0 0,1 value")
    p = write(tmp_path, "k23.hmf1", text)
    rep, rec = run(["classify", "--in", p])
    assert rep.status == 0
    assert rec["results"]["classification"] == "not algebraic under any twist"
    assert F.degree == 2


def test_critical_points_for_delta(tmp_path):
    p = write(tmp_path, "delta.hmf1", serialize_hmf1(document_from_form(delta_form(20))))
    rep, rec = run(["critical-points", "--in", p])
    assert rep.status == 0
    assert rec["results"]["classical"] == list(range(1, 12))
    assert rec["results"]["shift"] == "6"


def test_zeta_check_message():
    rep, rec = run(["zeta-check", "--type", "unramified", "--alpha", "1", "--beta", "1",
                    "--q", "3", "--order", "30"])
    assert rep.status == 0
    assert rec["results"]["message"] == "identity holds to order 30"


def test_every_subcommand_runs(tmp_path):
    d = write(tmp_path, "delta.hmf1", serialize_hmf1(document_from_form(delta_form(100))))
    g = write(tmp_path, "g.hmf1", _doc_with_weight((2, 2), 5))
    cases = [
        ["field-info", "--d", "5"],
        ["narrow-class", "--d", "3"],
        ["gauss-sum", "--modulus", "4", "--gen", "3", "--angle", "1/2"],
        ["classify", "--weight", "3,3"],
        ["critical-points", "--weight", "2,4"],
        ["attach", "--in", d],
        ["galois-check", "--in", g, "--sigma", "0,-1"],
        ["lvalue", "--in", d, "--s", "8"],
        ["lvalue", "--in", d, "--critical", "5"],
        ["euler-check", "--in", d],
        ["zeta-check", "--type", "steinberg", "--chi", "2", "--q", "5"],
        ["coh-constants", "--weight", "2,4"],
    ]
    seen = set()
    for argv in cases:
        rep, rec = run(argv)
        assert rep.status == 0, (argv, rec)
        seen.add(argv[0])
    assert seen == set(cli.COMMANDS)


def test_subcommand_results():
    _, rec = run(["field-info", "--d", "5"])
    assert rec["results"]["discriminant"] == 5
    _, rec = run(["narrow-class", "--d", "3"])
    r = rec["results"]
    assert r["h_plus"] == r["h_plus_exact_sequence"] == r["h_plus_brute_force"] == 2
    _, rec = run(["coh-constants", "--weight", "12"])
    assert rec["results"] == {"mu": [[5, -5]], "w": 0, "d_inf": 6, "c": -4 * 30240}


def test_lvalue_critical_out_of_reach_warns(tmp_path):
    d = write(tmp_path, "delta.hmf1", serialize_hmf1(document_from_form(delta_form(100))))
    rep, rec = run(["lvalue", "--in", d, "--critical", "0"])
    assert rep.status == 0
    assert rec["results"]["out_of_reach"] is True
    assert len(rec["warnings"]) == 1 and rec["warnings"][0].startswith("OutOfReach")


def test_euler_check_flags_a_bad_table(tmp_path):
    text = serialize_hmf1(document_from_form(delta_form(10)))
    text = text.replace("norm 6 ideal 6 value -6048", "norm 6 ideal 6 value -6047")
    d = write(tmp_path, "bad.hmf1", text)
    rep, rec = run(["euler-check", "--in", d])
    assert rep.status == 1
    assert rec["results"]["mismatches"] == ["(6)"]


def test_console_entry_point(capsys):
    assert main(["classify", "--weight", "2,2", "--format", "structured"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["results"]["classification"] == "algebraic"
    assert main(["nope"]) == 2


def test_module_invocation():
    out = subprocess.run([sys.executable, "-m", "hmfarith.cli", "critical-points", "--weight", "12",
                          "--format", "structured"], capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"]["classical"] == list(range(1, 12))
