import json
from pathlib import Path

import pytest

from iwasawa import cli
from iwasawa.errors import ParseError

GOLDEN = Path(__file__).parent / "golden"

EXAMPLES = [
    (["prep", "--p", "3", "--M", "6", "--N", "8", "--poly", "[3,6,4,1]"], "prep_example.json"),
    (["twist", "--p", "3", "--kappa", "4", "--i", "0", "--charpoly", "[0,1]"], "twist_trivial.json"),
    (["finiteness", "--p", "3", "--n", "1", "--charpoly", "[-3,1]"], "finiteness_exact.json"),
    (["exceptional", "--p", "3", "--kappa", "4", "--charpoly", "[0,-3,1]"], "exceptional_example.json"),
    (["ledger", "--input", str(GOLDEN / "ledger_input.json")], "ledger_report.json"),
]


@pytest.mark.parametrize("argv,golden", EXAMPLES, ids=[g for _, g in EXAMPLES])
def test_golden_reports(argv, golden, capsys):
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == (GOLDEN / golden).read_text()


def test_documented_values(capsys):
    code, rep = cli.run(["prep", "--p", "3", "--M", "6", "--N", "8", "--poly", "[3,6,4,1]"])
    r = rep["result"]
    assert code == 0 and (r["mu"], r["lambda"], r["P"], r["u"]) == (0, 2, [3, 3, 1], [1, 1])
    code, rep = cli.run(["twist", "--p", "3", "--kappa", "4", "--i", "0", "--charpoly", "[0,1]"])
    assert code == 0 and rep["result"]["charpoly"] == [0, 1]
    code, rep = cli.run(["finiteness", "--p", "3", "--n", "1", "--charpoly", "[-3,1]"])
    assert rep["result"]["verdict"] == "finite" and rep["result"]["resultant"] == 63
    assert rep["result"]["length"] == 2


def test_selftest_passes(capsys):
    code, rep = cli.run(["selftest"])
    assert code == 0 and rep["result"]["all_pass"]
    assert len(rep["result"]["checks"]) == 9


FAULTS = [
    ("iwasawa.padic.PadicInt.invert", lambda self: self),
    ("iwasawa.selftest.weierstrass_prep", lambda f: (_ for _ in ()).throw(AssertionError("boom"))),
    ("iwasawa.selftest.resultant", lambda f, g: 1),
    ("iwasawa.selftest.det_lambda", lambda A, method="auto": A[0][0]),
    ("iwasawa.selftest.twist_char_poly", lambda F, k, i: F),
    ("iwasawa.selftest.coinvariant_length", lambda F, n: 0),
    ("iwasawa.groupring.cor", lambda x: x),
    ("iwasawa.groupring.groupring_from_series", lambda f, n, m: None),
    ("iwasawa.ledger.local_lambda_sum", lambda f, s: 1),
]


@pytest.mark.parametrize("target,fake", FAULTS, ids=[t for t, _ in FAULTS])
def test_selftest_fault_injection(target, fake, monkeypatch, capsys):
    monkeypatch.setattr(target, fake)
    code, rep = cli.run(["selftest"])
    assert code == cli.EXIT_FAILED
    assert not rep["result"]["all_pass"]


def test_exit_invalid_prime(capsys):
    code, rep = cli.run(["prep", "--p", "4", "--poly", "[1]"])
    assert code == 2 and "prime" in rep["error"]["message"]


def test_exit_domain_error(capsys):
    code, rep = cli.run(["twist", "--p", "3", "--kappa", "2", "--i", "1", "--charpoly", "[0,1]"])
    assert code == 2 and "not congruent to 1 mod 3" in rep["error"]["message"]


def test_exit_inconclusive(capsys):
    code, rep = cli.run(["finiteness", "--p", "3", "--mode", "precision", "--charpoly", "[0,1]"])
    assert code == 3 and rep["result"]["verdict"] == "inconclusive"


def test_exit_codes_stable_across_subcommands(capsys):
    bad = [["prep", "--p", "1", "--poly", "[1]"], ["invariants", "--p", "6", "--matrix", "[[[1]]]"],
           ["twist", "--p", "9", "--kappa", "1", "--i", "0", "--charpoly", "[1]"],
           ["finiteness", "--p", "0", "--charpoly", "[1]"],
           ["exceptional", "--p", "3", "--kappa", "1", "--charpoly", "[0,1]"],
           ["duality-check", "--primes", "[4]"], ["growth", "--p", "3", "--n-max", "12"],
           ["ledger"], ["selftest", "--seed", "-1"]]
    for argv in bad:
        code, _ = cli.run(argv)
        assert code == 2, argv


def test_parse_error_line_column(tmp_path, capsys):
    doc = tmp_path / "bad.json"
    doc.write_text('{\n  "p": 3,\n  "poly": [1, 2,, 3]\n}\n')
    code, rep = cli.run(["prep", "--input", str(doc)])
    assert code == 2
    assert (rep["error"]["line"], rep["error"]["column"]) == (3, 17)


def test_unknown_field_rejected():
    with pytest.raises(ParseError) as exc:
        cli.parse_document('{"p": 3, "poly": [1], "polly": [2]}', "prep")
    assert exc.value.path == "$.polly"


def test_wrong_type_names_field():
    with pytest.raises(ParseError) as exc:
        cli.parse_document('{"tasks": [{"command": "prep", "p": 3, "poly": [1, "x"]}]}')
    assert exc.value.path == "$.tasks[0].poly[1]"


def test_negative_coefficients_normalized():
    [(cmd, cfg)] = cli.parse_document('{"p": 3, "M": 2, "poly": [-1, -9, 10]}', "prep")
    assert cfg["poly"] == [8, 0, 1]


def test_minimal_ledger_document_and_degree_mismatch(capsys):
    [(cmd, cfg)] = cli.parse_document(
        '{"field": {"r1": 1, "r2": 0}, "primes": [{"id": "p", "kind": "above_p", "local_degree": 1}]}', "ledger")
    led = cli.build_ledger(cfg)
    assert led.field.degree == 1 and led.primes[0].local_degree == 1
    bad = dict(cfg, field={"r1": 2, "r2": 0})
    rep, code = cli.execute("ledger", bad)
    assert code == 2 and rep["error"]["type"] == "DegreeMismatch"


DOCS = [
    '{"p": 5, "poly": [-1, 7, 2]}',
    '{"tasks": [{"command": "twist", "p": 3, "kappa": 4, "i": -2, "charpoly": [1, -3, 1]},'
    ' {"command": "growth", "p": 2, "torsion": [1, 2]}]}',
    '{"field": {"r1": 0, "r2": 1}, "primes": [{"id": "a", "kind": "above_p", "local_degree": 2}],'
    ' "forms": [{"label": "g", "lambda_f": 1, "split": {"s": {}}}], "sigma0": ["s"]}',
]


@pytest.mark.parametrize("text,command", list(zip(DOCS, ["prep", None, "ledger"])))
def test_round_trip_idempotent(text, command):
    once = cli.emit_document(cli.parse_document(text, command))
    assert cli.emit_document(cli.parse_document(once)) == once


def test_batch_order_and_stdin(monkeypatch, capsys):
    import io
    doc = {"tasks": [{"command": "growth", "p": 3, "torsion": [2], "n_max": 1},
                     {"command": "finiteness", "p": 3, "charpoly": [0, 1], "n": 0}]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
    code, rep = cli.run(["growth", "--input", "-"])
    assert [r["command"] for r in rep["reports"]] == ["growth", "finiteness"]
    assert rep["reports"][0]["result"]["levels"][1]["torsion_log_p_size"] == 6
    assert rep["reports"][1]["result"]["verdict"] == "infinite" and code == 0


def test_duality_check_report(capsys):
    code, rep = cli.run(["duality-check", "--primes", "[2,3]", "--n-max", "1", "--m-max", "2", "--samples", "3"])
    assert code == 0 and rep["result"]["all_pass"] and len(rep["result"]["cells"]) == 2 * 2 * 2 * 3


def test_invariants_both_forms(capsys):
    code, rep = cli.run(["invariants", "--p", "3", "--matrix", "[[[3],[0]],[[0],[0,1]]]"])
    assert code == 0 and (rep["result"]["mu"], rep["result"]["lambda"]) == (1, 1)
    mod = '{"mu_exponents": [1, 1], "factors": [{"poly": [3, 1], "e": 2}]}'
    code, rep = cli.run(["invariants", "--p", "3", "--module", mod])
    assert rep["result"]["lambda"] == 2 and rep["result"]["char_poly"]["monic"] == [9, 6, 1]
    code, _ = cli.run(["invariants", "--p", "3"])
    assert code == 2


def test_exact_twist_fractions(capsys):
    code, rep = cli.run(["twist", "--p", "3", "--kappa", "4", "--i", "-1", "--charpoly", "[0,1]", "--mode", "exact"])
    assert rep["result"]["charpoly"] == ["3/4", 1]


def test_table_format_and_output_file(tmp_path, capsys):
    out = tmp_path / "r.txt"
    code, _ = cli.run(["growth", "--p", "2", "--torsion", "[1]", "--format", "table", "--output", str(out)])
    text = out.read_text()
    assert code == 0 and "levels:" in text and "torsion_log_p_size=2" in text
