"""Command-line front end.

Every subcommand reads its parameters from flags, from a JSON document
(``--input``, ``-`` for stdin), or both (flags win). Parameters are validated
against a strict per-command schema before dispatch; the report echoes the
canonical inputs next to the results.

Exit codes: 0 success, 1 a check failed (duality-check, selftest),
2 invalid input or a domain error, 3 an inconclusive verdict.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import IwasawaError, ParseError
from .padic import Character, check_prime, q_of

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3

COMMANDS = ("prep", "invariants", "twist", "finiteness", "exceptional",
            "duality-check", "growth", "ledger", "selftest")


# ---------------------------------------------------------------------------
# schema validation
# ---------------------------------------------------------------------------

def _int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", path=path)
    if minimum is not None and value < minimum:
        raise ParseError(f"must be >= {minimum}, got {value}", path=path)
    return value


def _int_list(value, path, minimum=None):
    if not isinstance(value, list):
        raise ParseError(f"expected a list of integers, got {value!r}", path=path)
    return [_int(v, f"{path}[{k}]", minimum) for k, v in enumerate(value)]


def _poly(value, path):
    out = _int_list(value, path)
    if not out:
        raise ParseError("polynomial needs at least one coefficient", path=path)
    return out


def _monic(value, path):
    out = _poly(value, path)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    if out[-1] != 1:
        raise ParseError(f"characteristic polynomial must be monic, leading coefficient is {out[-1]}", path=path)
    return out


def _str(value, path, choices=None):
    if not isinstance(value, str):
        raise ParseError(f"expected a string, got {value!r}", path=path)
    if choices is not None and value not in choices:
        raise ParseError(f"expected one of {list(choices)}, got {value!r}", path=path)
    return value


def _bool(value, path):
    if not isinstance(value, bool):
        raise ParseError(f"expected true/false, got {value!r}", path=path)
    return value


def _obj(value, path, schema):
    """Validate a dict against ``schema``: name -> (validator, default or REQUIRED)."""
    if not isinstance(value, dict):
        raise ParseError(f"expected an object, got {type(value).__name__}", path=path)
    unknown = sorted(set(value) - set(schema))
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", path=f"{path}.{unknown[0]}")
    out = {}
    for name, (check, default) in schema.items():
        sub = f"{path}.{name}"
        if name in value:
            out[name] = check(value[name], sub)
        elif default is REQUIRED:
            raise ParseError(f"missing required field {name!r}", path=sub)
        else:
            out[name] = default() if callable(default) else default
    return out


REQUIRED = object()


def _prime(value, path):
    _int(value, path)
    try:
        check_prime(value)
    except IwasawaError as exc:
        raise ParseError(str(exc), path=path) from None
    return value


def _list_of(check):
    def run(value, path):
        if not isinstance(value, list):
            raise ParseError(f"expected a list, got {value!r}", path=path)
        return [check(v, f"{path}[{k}]") for k, v in enumerate(value)]
    return run


def _pos(value, path):
    return _int(value, path, 1)


def _nat(value, path):
    return _int(value, path, 0)


_FACTOR = {"poly": (_monic, REQUIRED), "e": (_pos, 1)}
_MODULE = {
    "rank": (_nat, 0),
    "mu_exponents": (lambda v, pth: _int_list(v, pth, 1), list),
    "factors": (_list_of(lambda v, pth: _obj(v, pth, _FACTOR)), list),
}
_PRIME_DATUM = {
    "id": (_str, REQUIRED),
    "kind": (lambda v, pth: _str(v, pth, ("above_p", "finitely_decomposed", "split")), REQUIRED),
    "local_degree": (_nat, 0),
    "lambda_v": (_nat, 0),
    "h0_rank": (_nat, 0),
    "torsion": (lambda v, pth: _int_list(v, pth, 1), list),
    "divides_tame_level": (_bool, False),
}
_SPLIT = {"h0_rank": (_nat, 0), "torsion": (lambda v, pth: _int_list(v, pth, 1), list)}


def _dict_of(check):
    def run(value, path):
        if not isinstance(value, dict):
            raise ParseError(f"expected an object, got {value!r}", path=path)
        return {str(k): check(v, f"{path}.{k}") for k, v in sorted(value.items())}
    return run


_FORM = {
    "label": (_str, REQUIRED),
    "lambda_f": (_nat, REQUIRED),
    "mu_f": (_nat, 0),
    "local_lambdas": (_dict_of(_nat), dict),
    "split": (_dict_of(lambda v, pth: _obj(v, pth, _SPLIT)), dict),
}

_COMMON = {"command": (lambda v, pth: _str(v, pth, COMMANDS), None)}

SCHEMAS = {
    "prep": {"p": (_prime, REQUIRED), "M": (_pos, 8), "N": (_pos, 16), "poly": (_poly, REQUIRED)},
    "invariants": {
        "p": (_prime, REQUIRED), "M": (_pos, 8), "N": (_pos, 16),
        "matrix": (_list_of(_list_of(_poly)), None),
        "module": (lambda v, pth: _obj(v, pth, _MODULE), None),
    },
    "twist": {
        "p": (_prime, REQUIRED), "M": (_pos, 8), "kappa": (_int, REQUIRED), "i": (_int, REQUIRED),
        "charpoly": (_monic, REQUIRED),
        "mode": (lambda v, pth: _str(v, pth, ("precision", "exact")), "precision"),
    },
    "finiteness": {
        "p": (_prime, REQUIRED), "M": (_pos, 8), "charpoly": (_monic, REQUIRED), "mu": (_nat, 0),
        "n": (_nat, 0), "mode": (lambda v, pth: _str(v, pth, ("exact", "precision")), "exact"),
    },
    "exceptional": {
        "p": (_prime, REQUIRED), "kappa": (_int, REQUIRED), "charpoly": (_monic, REQUIRED),
        "i_min": (_int, -5), "i_max": (_int, 5), "n_max": (_nat, 3),
    },
    "duality-check": {
        "primes": (_list_of(_prime), lambda: [2, 3, 5]), "n_max": (_nat, 2), "m_max": (_pos, 3),
        "samples": (_nat, 100), "seed": (_nat, 0),
        "diagrams": (_list_of(lambda v, pth: _str(v, pth, ("A1-res-cor", "A1-cor-res", "A3-pi-theta"))),
                     lambda: ["A1-res-cor", "A1-cor-res", "A3-pi-theta"]),
    },
    "growth": {
        "p": (_prime, REQUIRED), "r": (_nat, 0),
        "torsion": (lambda v, pth: _int_list(v, pth, 1), list), "n_max": (_nat, 2),
    },
    "ledger": {
        "field": (lambda v, pth: _obj(v, pth, {"r1": (_nat, REQUIRED), "r2": (_nat, REQUIRED)}), REQUIRED),
        "primes": (_list_of(lambda v, pth: _obj(v, pth, _PRIME_DATUM)), list),
        "forms": (_list_of(lambda v, pth: _obj(v, pth, _FORM)), list),
        "sigma0": (_list_of(_str), list),
    },
    "selftest": {"seed": (_nat, 0)},
}


def _normalize(command, cfg):
    """Canonical residues for inputs that are read mod p^M."""
    if command in ("prep",):
        mod = cfg["p"] ** cfg["M"]
        cfg["poly"] = [c % mod for c in cfg["poly"]]
    elif command == "twist" and cfg["mode"] == "precision":
        mod = cfg["p"] ** cfg["M"]
        cfg["charpoly"] = [c % mod for c in cfg["charpoly"]]
        cfg["kappa"] %= mod
    elif command == "finiteness" and cfg["mode"] == "precision":
        mod = cfg["p"] ** cfg["M"]
        cfg["charpoly"] = [c % mod for c in cfg["charpoly"]]
    elif command == "invariants":
        if (cfg["matrix"] is None) == (cfg["module"] is None):
            raise ParseError("give exactly one of 'matrix' and 'module'", path="$")
        if cfg["matrix"] is not None:
            mod = cfg["p"] ** cfg["M"]
            rows = cfg["matrix"]
            if not rows or any(len(r) != len(rows) for r in rows):
                raise ParseError("matrix must be square and non-empty", path="$.matrix")
            cfg["matrix"] = [[[c % mod for c in e] for e in row] for row in rows]
    return cfg


def validate_task(command, doc, path="$"):
    schema = dict(_COMMON)
    schema.update(SCHEMAS[command])
    cfg = _obj(doc, path, schema)
    if cfg.pop("command") not in (None, command):
        raise ParseError(f"document is for command {doc['command']!r}, not {command!r}", path=f"{path}.command")
    return _normalize(command, cfg)


def parse_document(text, command=None):
    """Parse a JSON document into validated task configurations.

    Returns a list of ``(command, config)``. A document is either one task
    object or ``{"tasks": [...]}``; each task may name its ``command``, which
    otherwise defaults to ``command``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if isinstance(doc, dict) and "tasks" in doc:
        extra = sorted(set(doc) - {"tasks"})
        if extra:
            raise ParseError(f"unknown field {extra[0]!r}", path=f"$.{extra[0]}")
        if not isinstance(doc["tasks"], list):
            raise ParseError("'tasks' must be a list", path="$.tasks")
        items = [(f"$.tasks[{k}]", t) for k, t in enumerate(doc["tasks"])]
    else:
        items = [("$", doc)]
    out = []
    for path, task in items:
        cmd = task.get("command", command) if isinstance(task, dict) else command
        if cmd not in SCHEMAS:
            raise ParseError(f"unknown or missing command {cmd!r}", path=f"{path}.command")
        out.append((cmd, validate_task(cmd, task, path)))
    return out


def emit_document(tasks):
    """Canonical JSON text for validated tasks (inverse of :func:`parse_document`)."""
    docs = [dict(command=cmd, **cfg) for cmd, cfg in tasks]
    doc = docs[0] if len(docs) == 1 else {"tasks": docs}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _trim_list(c):
    c = [int(x) for x in c]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


class Inconclusive(Exception):
    pass


def run_prep(cfg):
    from .series import LambdaElem, weierstrass_prep

    f = LambdaElem(cfg["p"], cfg["M"], cfg["N"], cfg["poly"])
    w = weierstrass_prep(f)
    return {"mu": w.mu, "lambda": w.lam, "P": w.P.coefficients(), "u": _trim_list(w.u.to_list()),
            "factor_precision": w.u.prec, "reconstructs": w.reconstruct() == f}


def run_invariants(cfg):
    from .series import DistinguishedPoly, LambdaElem
    from .structure import ElementaryModule, char_poly, invariants, invariants_from_matrix

    p = cfg["p"]
    if cfg["matrix"] is not None:
        A = [[LambdaElem(p, cfg["M"], cfg["N"], e) for e in row] for row in cfg["matrix"]]
        mu, lam, cp = invariants_from_matrix(A)
        return {"mu": mu, "lambda": lam, "char_poly": {"mu": cp.mu, "monic": list(cp.monic), "precision": cp.prec}}
    mod = cfg["module"]
    factors = tuple((DistinguishedPoly(p, f["poly"][:-1]), f["e"]) for f in mod["factors"])
    E = ElementaryModule(p, mod["rank"], tuple(mod["mu_exponents"]), factors)
    r, mu, lam = invariants(E)
    out = {"rank": r, "mu": mu, "lambda": lam}
    if r == 0:
        cp = char_poly(E)
        out["char_poly"] = {"mu": cp.mu, "monic": list(cp.monic), "precision": cp.prec}
    else:
        out["char_poly"] = None
    return out


def run_twist(cfg):
    from .structure import CharPoly, twist_char_poly

    p = cfg["p"]
    exact = cfg["mode"] == "exact"
    F = CharPoly(p, 0, tuple(cfg["charpoly"]), None if exact else cfg["M"])
    kappa = Character(p, cfg["M"], cfg["kappa"])
    G = twist_char_poly(F, kappa, cfg["i"])
    return {"charpoly": [_num(c) for c in G.monic], "degree": G.lam, "precision": G.prec}


def run_finiteness(cfg):
    from .structure import CharPoly, Verdict, coinvariant_length, coinvariant_resultant, coinvariants_finite

    exact = cfg["mode"] == "exact"
    F = CharPoly(cfg["p"], cfg["mu"], tuple(cfg["charpoly"]), None if exact else cfg["M"])
    verdict = coinvariants_finite(F, cfg["n"])
    r = coinvariant_resultant(F, cfg["n"])
    out = {"verdict": verdict.value, "resultant": _num(r) if exact else int(r),
           "length": coinvariant_length(F, cfg["n"]) if verdict is Verdict.FINITE else None}
    if verdict is Verdict.INCONCLUSIVE:
        raise Inconclusive(out)
    return out


def run_exceptional(cfg):
    from .structure import CharPoly, exceptional_twists

    p = cfg["p"]
    if (cfg["kappa"] - 1) % q_of(p):
        raise IwasawaError(f"kappa must be congruent to 1 mod {q_of(p)}")
    F = CharPoly(p, 0, tuple(cfg["charpoly"]), None)
    kappa = Character(p, 1, cfg["kappa"])
    found = exceptional_twists(F, kappa, (cfg["i_min"], cfg["i_max"]), cfg["n_max"])
    return {"exceptional": sorted(found), "searched_i": [cfg["i_min"], cfg["i_max"]], "searched_n_max": cfg["n_max"],
            "complete": False}


def run_duality(cfg):
    import numpy as np

    from .groupring import check_diagram

    rng = np.random.default_rng(cfg["seed"])
    cells = []
    for p in cfg["primes"]:
        for n in range(cfg["n_max"] + 1):
            for m in range(1, cfg["m_max"] + 1):
                for name in cfg["diagrams"]:
                    cells.append(check_diagram(name, p, n, m, cfg["samples"], rng).as_dict())
    return {"cells": cells, "all_pass": all(c["pass"] for c in cells)}


def run_growth(cfg):
    from .groupring import limit_growth_table, tensor_limit_invariants

    corank, mu, lam = tensor_limit_invariants(cfg["r"], cfg["torsion"])
    return {"corank": corank, "mu": mu, "lambda": lam,
            "levels": limit_growth_table(cfg["r"], cfg["torsion"], cfg["p"], cfg["n_max"])}


def build_ledger(cfg):
    from .ledger import FieldDatum, FormDatum, Ledger, PrimeDatum

    field_ = FieldDatum(cfg["field"]["r1"], cfg["field"]["r2"])
    primes = tuple(PrimeDatum(**{**v, "torsion": tuple(v["torsion"])}) for v in cfg["primes"])
    forms = tuple(FormDatum(**f) for f in cfg["forms"])
    return Ledger(field_, primes, forms, tuple(cfg["sigma0"]))


def run_ledger(cfg):
    return build_ledger(cfg).evaluate()


def run_selftest(cfg):
    from .selftest import run_all

    results = run_all(seed=cfg["seed"])
    return {"checks": results, "all_pass": all(r["pass"] for r in results)}


RUNNERS = {
    "prep": run_prep, "invariants": run_invariants, "twist": run_twist, "finiteness": run_finiteness,
    "exceptional": run_exceptional, "duality-check": run_duality, "growth": run_growth,
    "ledger": run_ledger, "selftest": run_selftest,
}


def execute(command, cfg):
    """Run one validated task; returns (report, exit code)."""
    report = {"command": command, "inputs": cfg,
              "provenance": {"library": "iwasawa", "version": __version__}}
    try:
        report["result"] = RUNNERS[command](cfg)
        code = EXIT_OK
        if report["result"].get("all_pass") is False:
            code = EXIT_FAILED
    except Inconclusive as exc:
        report["result"] = exc.args[0]
        code = EXIT_INCONCLUSIVE
    except IwasawaError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INVALID
    return report, code


# ---------------------------------------------------------------------------
# argv
# ---------------------------------------------------------------------------

def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc.msg} at column {exc.colno}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--M", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--input", help="JSON document, '-' for stdin")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="iwasawa", description="Finite-precision Iwasawa algebra toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("prep", parents=[common], help="Weierstrass preparation of a series")
    sp.add_argument("--poly", type=_json_arg)

    sp = sub.add_parser("invariants", parents=[common], help="mu/lambda of a matrix or elementary module")
    sp.add_argument("--matrix", type=_json_arg)
    sp.add_argument("--module", type=_json_arg)

    sp = sub.add_parser("twist", parents=[common], help="twist a characteristic polynomial by kappa^i")
    sp.add_argument("--kappa", type=int)
    sp.add_argument("--i", type=int)
    sp.add_argument("--charpoly", type=_json_arg)
    sp.add_argument("--mode", choices=("precision", "exact"))

    sp = sub.add_parser("finiteness", parents=[common], help="finiteness of Gamma_n-coinvariants")
    sp.add_argument("--charpoly", type=_json_arg)
    sp.add_argument("--mu", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--mode", choices=("exact", "precision"))

    sp = sub.add_parser("exceptional", parents=[common], help="twists with infinite coinvariants")
    sp.add_argument("--kappa", type=int)
    sp.add_argument("--charpoly", type=_json_arg)
    sp.add_argument("--i-min", dest="i_min", type=int)
    sp.add_argument("--i-max", dest="i_max", type=int)
    sp.add_argument("--n-max", dest="n_max", type=int)

    sp = sub.add_parser("duality-check", parents=[common], help="self-duality diagrams at finite level")
    sp.add_argument("--primes", type=_json_arg)
    sp.add_argument("--n-max", dest="n_max", type=int)
    sp.add_argument("--m-max", dest="m_max", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)

    sp = sub.add_parser("growth", parents=[common], help="level sizes of M (x) O[G_n]")
    sp.add_argument("--r", type=int)
    sp.add_argument("--torsion", type=_json_arg)
    sp.add_argument("--n-max", dest="n_max", type=int)

    sub.add_parser("ledger", parents=[common], help="Selmer invariant ledger from a document")

    sp = sub.add_parser("selftest", parents=[common], help="run every module's invariant checks")
    sp.add_argument("--seed", type=int)
    return parser


_NON_TASK = {"command", "input", "output", "format"}


def _table(report, indent=""):
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_table(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{indent}{key:<20} {json.dumps(value)}")
    return lines


def render(report, fmt):
    if fmt == "table":
        return "\n".join(_table(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(argv=None):
    """Entry point returning (exit code, report)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INVALID if exc.code else EXIT_OK), None
    flags = {k: v for k, v in vars(args).items() if k not in _NON_TASK and v is not None}
    try:
        if args.input:
            text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
            raw = json.loads(text) if text.strip() else {}
            if isinstance(raw, dict) and "tasks" in raw:
                for t in raw["tasks"]:
                    if isinstance(t, dict):
                        t.update(flags)
            elif isinstance(raw, dict):
                raw.update(flags)
            tasks = parse_document(json.dumps(raw), args.command) if raw else \
                parse_document(json.dumps(flags), args.command)
        else:
            tasks = parse_document(json.dumps(flags), args.command)
    except json.JSONDecodeError as exc:
        err = ParseError(exc.msg, line=exc.lineno, column=exc.colno)
        return _fail(err, args)
    except (ParseError, OSError) as exc:
        return _fail(exc, args)

    reports, codes = [], []
    for cmd, cfg in tasks:
        rep, code = execute(cmd, cfg)
        reports.append(rep)
        codes.append(code)
    report = reports[0] if len(reports) == 1 else {"reports": reports}
    _write(render(report, args.format), args.output)
    for rep in reports:
        if "error" in rep:
            print(f"iwasawa: {rep['error']['type']}: {rep['error']['message']}", file=sys.stderr)
    code = max(codes, key=lambda c: {EXIT_OK: 0, EXIT_INCONCLUSIVE: 1, EXIT_FAILED: 2, EXIT_INVALID: 3}[c])
    return code, report


def _fail(exc, args):
    report = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc),
                                                 "line": getattr(exc, "line", None),
                                                 "column": getattr(exc, "column", None),
                                                 "path": getattr(exc, "path", None)}}
    print(f"iwasawa: {exc}", file=sys.stderr)
    _write(render(report, args.format), args.output)
    return EXIT_INVALID, report


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
