"""Command-line front end.

Exit codes: 0 success / PASS / true, 1 semantic failure / counterexample /
false, 2 input error (unreadable file, bad JSON, bad formula, unknown
element or proposition).
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import ModelError, ValidationError, load_model, model_to_dict
from .emit import FORMATS, emit
from .fol import parse_fol
from .formula import FormulaSyntaxError, parse_formula
from .hm import WitnessSynthesizer
from .report import _jsonable, failed
from .semantics import satisfies
from .simulation import _sort_key, check_preservation, largest
from .translation import check_fsl, standard_translate, to_structure

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path, close=False):
    try:
        return load_model(path, close_valuations=close)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise InputError(f"{path}: {exc}") from None


def _print_json(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


def cmd_validate(args) -> int:
    try:
        m = _load(args.model, close=args.close_valuations)
    except ValidationError as exc:
        report = failed(exc.axiom or "structure", exc.witness, str(exc))
        if args.json:
            _print_json(report.to_dict())
        else:
            print(f"invalid: {exc}")
        return EXIT_FAIL
    fsl = check_fsl(to_structure(m))
    if args.json:
        _print_json({"verdict": bool(fsl), "clause": fsl.clause, "witness": _jsonable(fsl.witness),
                     "repairs": list(m.repairs), "model": model_to_dict(m)})
    else:
        print(f"valid: {m.n} elements, top {m.elements[m.top]}, props {list(m.props)}")
        for r in m.repairs:
            print(f"repaired V({r['prop']}): {r['before']} -> {r['after']}")
        if args.hasse:
            for a, b in m.poset.covers():
                print(f"  {m.elements[a]} < {m.elements[b]}")
    return EXIT_OK if fsl else EXIT_FAIL


def cmd_check(args) -> int:
    m = _load(args.model)
    verdict = satisfies(m, args.state, parse_formula(args.formula))
    if args.json:
        _print_json({"verdict": verdict, "state": args.state, "formula": args.formula})
    else:
        print("true" if verdict else "false")
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_translate(args) -> int:
    alpha = standard_translate(parse_formula(args.formula), x=args.var,
                               equality=not args.no_equality)
    text = emit(alpha, args.fmt, axioms=args.axioms)
    if args.json:
        _print_json({"format": args.fmt, "text": text})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _relation_json(kind, fp, m, m2):
    out = []
    for t in sorted(fp.relation, key=lambda t: _sort_key(kind, t, m, m2)):
        if kind == "meet_omega":
            out.append([sorted(t[0], key=m.idx), t[1]])
        else:
            out.append(list(t))
    return out


def cmd_sim(args) -> int:
    m, m2 = _load(args.model), _load(args.model2)
    kind = args.kind.replace("-", "_")
    if args.distinguish:
        if kind != "sim":
            raise InputError("--distinguish is only available for --kind sim")
        w, w2 = args.distinguish
        syn = WitnessSynthesizer(m, m2)
        wit = syn.witness(w, w2)
        _print_json({"similar": wit is None, "witness": wit.to_dict() if wit else None})
        return EXIT_OK
    fp = largest(kind, m, m2)
    _print_json({"kind": kind, "rounds": fp.rounds, "relation": _relation_json(kind, fp, m, m2)})
    return EXIT_OK


def cmd_preserve(args) -> int:
    if args.st:
        alpha = standard_translate(parse_formula(args.formula))
    else:
        alpha = parse_fol(args.formula)
    models = [_load(p) for p in args.models]
    pairs = [(a, b) for a in models for b in models]
    report = check_preservation(alpha, pairs, args.kind)
    if args.json:
        _print_json(report.to_dict())
    elif report:
        print(f"PASS ({report.extra['tuples']} related tuples over {len(pairs)} model pairs)")
    else:
        print(f"FAIL counterexample {json.dumps(_jsonable(report.witness))} "
              f"(model pair {report.extra['pair']})")
    return EXIT_OK if report else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meetsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("model")
    p.add_argument("--close-valuations", action="store_true",
                   help="replace non-filter valuations by the filter they generate")
    p.add_argument("--hasse", action="store_true", help="print the cover relation")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="model-check a formula at a state")
    p.add_argument("model")
    p.add_argument("state")
    p.add_argument("formula")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", help="standard translation of a formula")
    p.add_argument("formula")
    p.add_argument("--fmt", choices=FORMATS, default="plain")
    p.add_argument("--no-equality", action="store_true",
                   help="translate top without equality")
    p.add_argument("--axioms", action="store_true", help="prepend the FSL axioms")
    p.add_argument("--var", default="x", help="free variable name")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("sim", help="largest relation between two models")
    p.add_argument("model")
    p.add_argument("model2")
    p.add_argument("--kind", choices=["sim", "meet", "meet-omega"], default="sim")
    p.add_argument("--distinguish", nargs=2, metavar=("W", "W2"))
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("preserve", help="test preservation of a FOL formula")
    p.add_argument("formula")
    p.add_argument("models", nargs="+")
    p.add_argument("--kind", choices=["sim", "meet", "meet-omega"], default="meet")
    p.add_argument("--st", action="store_true",
                   help="FORMULA is a positive formula; use its standard translation")
    p.set_defaults(func=cmd_preserve)

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormulaSyntaxError, ModelError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, InputError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
