"""Command-line surface: evaluate, construct, check, classify, fixture, sample.

Exit codes are a stable contract: 0 success, 2 input error (parse failure
or inconsistent flags), 3 automaton invariant violation (the validation
report goes to stderr), 4 problem not decidable / not supported.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .construct import (
    AcceptanceKind,
    BooleanAutomaton,
    cobuchi_to_buchi_positive,
    initial_choice,
    limsup_sum,
    synchronized_product,
    threshold_boolean,
    uniformized_support,
    weight_accepting_states,
)
from .core import (
    LassoWord,
    ONE,
    Semantics,
    ValueFunction,
    ValueKind,
    WeightedAutomaton,
    negate_weights,
    rat,
    validate,
)
from .decide import (
    DecisionUnsupported,
    Problem,
    classify,
    decide_disc,
    explain_sup,
)
from .docfmt import (
    DocumentError,
    automaton_to_document,
    document_to_automaton,
    parse_document,
    parse_word_part,
    serialize_document,
)
from .oracle import fixture, monte_carlo
from .semantics import evaluate

OK, INPUT_ERROR, INVALID_AUTOMATON, UNSUPPORTED = 0, 2, 3, 4

_SEMANTICS = {s.value: s for s in Semantics}
_PROBLEMS = {p.value: p for p in Problem}
_AS_SUP_CAVEAT = (
    "note: almost-sure sup decisions use the universal-run reduction; on some "
    "automata the measure-theoretic almost-sure value is higher (see README)"
)


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_automaton(path: str) -> WeightedAutomaton:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(INPUT_ERROR, f"cannot read {path}: {exc}")
    try:
        automaton = document_to_automaton(parse_document(text))
    except DocumentError as exc:
        raise _CliError(INPUT_ERROR, f"{path}: {exc}")
    report = validate(automaton)
    if report:
        lines = "\n".join(f"  {line}" for line in report)
        raise _CliError(INVALID_AUTOMATON, f"{path} violates invariants:\n{lines}")
    return automaton


def _value_function(args) -> ValueFunction:
    kind = ValueKind(args.value)
    discount = getattr(args, "discount", None)
    if kind is ValueKind.DISC:
        if discount is None:
            raise _CliError(INPUT_ERROR, "--value disc requires --lambda p/q")
        try:
            return ValueFunction.disc(rat(discount))
        except ValueError as exc:
            raise _CliError(INPUT_ERROR, str(exc))
    if discount is not None:
        raise _CliError(INPUT_ERROR, "--lambda is only meaningful with --value disc")
    return ValueFunction(kind)


def _word(args, automaton: WeightedAutomaton) -> LassoWord:
    try:
        prefix = parse_word_part(args.prefix or "", automaton.alphabet)
        loop = parse_word_part(args.loop or "", automaton.alphabet)
        return LassoWord(prefix, loop)
    except (DocumentError, ValueError) as exc:
        raise _CliError(INPUT_ERROR, str(exc))


def _rational(text: str, what: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _CliError(INPUT_ERROR, f"bad {what}: {exc}")


def _write_result(automaton: WeightedAutomaton, path: str) -> None:
    doc = automaton_to_document(automaton)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_document(doc))


def _cmd_eval(args) -> int:
    automaton = _load_automaton(args.automaton)
    valfn = _value_function(args)
    word = _word(args, automaton)
    print(evaluate(automaton, valfn, _SEMANTICS[args.semantics], word))
    return OK


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind in ("complement", "sum-liminf"):
        raise _CliError(
            UNSUPPORTED,
            f"{kind}: not constructible here; the closure table marks complement "
            "closed only for positive limsup / almost-sure liminf, and those "
            "constructions (like the liminf sum) need machinery out of scope",
        )
    operands = [_load_automaton(path) for path in args.operands]

    def one() -> WeightedAutomaton:
        if len(operands) != 1:
            raise _CliError(INPUT_ERROR, f"{kind} takes exactly one operand")
        return operands[0]

    def two() -> tuple[WeightedAutomaton, WeightedAutomaton]:
        if len(operands) != 2:
            raise _CliError(INPUT_ERROR, f"{kind} takes exactly two operands")
        return operands[0], operands[1]

    try:
        if kind in ("max-initial", "min-initial"):
            result = initial_choice(*two())
        elif kind == "product-max":
            result = synchronized_product(*two(), "max")
        elif kind == "product-min":
            result = synchronized_product(*two(), "min")
        elif kind == "sum-limsup":
            result = limsup_sum(*two())
        elif kind == "threshold":
            if args.threshold is None or args.acceptance is None:
                raise _CliError(
                    INPUT_ERROR, "threshold needs --threshold p/q and --kind buchi|cobuchi"
                )
            boolean = threshold_boolean(
                one(), _rational(args.threshold, "threshold"), AcceptanceKind(args.acceptance)
            )
            result = boolean.automaton
        elif kind == "cobuchi-to-buchi":
            base = one()
            cobuchi = BooleanAutomaton(
                base, AcceptanceKind.COBUCHI, weight_accepting_states(base, ONE)
            )
            result = cobuchi_to_buchi_positive(cobuchi).automaton
        elif kind == "uniformize":
            result = uniformized_support(one())
        elif kind == "negate":
            result = negate_weights(one())
        else:  # pragma: no cover - argparse restricts choices
            raise _CliError(INPUT_ERROR, f"unknown construction {kind!r}")
    except ValueError as exc:
        raise _CliError(INPUT_ERROR, str(exc))

    _write_result(result, args.output)
    print(len(result.states))
    return OK


def _cmd_check(args) -> int:
    automaton = _load_automaton(args.automaton)
    valfn = _value_function(args)
    semantics = _SEMANTICS[args.semantics]
    problem = _PROBLEMS[args.problem]
    threshold = _rational(args.threshold, "threshold")

    if valfn.kind is ValueKind.SUP:
        if semantics is Semantics.ALMOST_SURE:
            print(_AS_SUP_CAVEAT, file=sys.stderr)
        holds, witness = explain_sup(automaton, semantics, problem, threshold)
        print("SAT" if holds else "UNSAT")
        if witness is not None:
            print(f"witness: {witness}")
        return OK

    if valfn.kind is ValueKind.DISC:
        try:
            holds = decide_disc(automaton, valfn, semantics, problem, threshold)
        except DecisionUnsupported as exc:
            raise _CliError(UNSUPPORTED, str(exc))
        print("SAT" if holds else "UNSAT")
        return OK

    if semantics in (Semantics.POSITIVE, Semantics.ALMOST_SURE):
        entry = classify(valfn.kind, semantics, problem)
        extra = (
            "; decidable, but the known procedure is out of scope here"
            if entry.status.value == "Decidable"
            else ""
        )
        raise _CliError(UNSUPPORTED, f"{entry.status.value}{extra}")
    raise _CliError(
        UNSUPPORTED,
        "no decision procedure for limit value functions under run-graph semantics",
    )


def _cmd_classify(args) -> int:
    semantics = _SEMANTICS[args.semantics]
    try:
        entry = classify(ValueKind(args.value), semantics, _PROBLEMS[args.problem])
    except ValueError as exc:
        raise _CliError(INPUT_ERROR, str(exc))
    line = entry.status.value
    if entry.note:
        line += f" ({entry.note})"
    print(line)
    return OK


def _cmd_fixture(args) -> int:
    try:
        machine = fixture(args.name)
    except KeyError as exc:
        raise _CliError(INPUT_ERROR, str(exc.args[0]))
    _write_result(machine.automaton, args.output)
    print(len(machine.automaton.states))
    return OK


def _cmd_sample(args) -> int:
    automaton = _load_automaton(args.automaton)
    valfn = _value_function(args)
    word = _word(args, automaton)
    thresholds = None
    if args.at_or_above:
        thresholds = [_rational(t, "threshold") for t in args.at_or_above]
    try:
        report = monte_carlo(
            automaton, valfn, word, args.horizon, args.samples, args.seed, thresholds
        )
    except ValueError as exc:
        raise _CliError(INPUT_ERROR, str(exc))
    print(report.as_block())
    return OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwa",
        description="probabilistic weighted automata: exact values, constructions, decisions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_value_flags(p, with_semantics=True):
        p.add_argument("--value", required=True, choices=[k.value for k in ValueKind])
        p.add_argument("--lambda", dest="discount", default=None, metavar="P/Q")
        if with_semantics:
            p.add_argument("--semantics", required=True, choices=list(_SEMANTICS))

    def add_word_flags(p):
        p.add_argument("--prefix", default="", metavar="W", help="'.'-separated letters")
        p.add_argument("--loop", required=True, metavar="W", help="'.'-separated letters")

    p = sub.add_parser("eval", help="value of a lasso word")
    p.add_argument("--automaton", required=True)
    add_value_flags(p)
    add_word_flags(p)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("construct", help="build a new automaton document")
    p.add_argument(
        "kind",
        choices=[
            "max-initial",
            "min-initial",
            "product-max",
            "product-min",
            "sum-limsup",
            "threshold",
            "cobuchi-to-buchi",
            "uniformize",
            "negate",
            "complement",
            "sum-liminf",
        ],
    )
    p.add_argument("operands", nargs="*")
    p.add_argument("--threshold", default=None, metavar="P/Q")
    p.add_argument("--kind", dest="acceptance", choices=["buchi", "cobuchi"], default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("check", help="decide threshold emptiness or universality")
    p.add_argument("problem", choices=list(_PROBLEMS))
    p.add_argument("--automaton", required=True)
    add_value_flags(p)
    p.add_argument("--threshold", required=True, metavar="P/Q")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("classify", help="decidability status of a problem cell")
    p.add_argument("--value", required=True, choices=[k.value for k in ValueKind])
    p.add_argument("--semantics", required=True, choices=["pos", "as"])
    p.add_argument("--problem", required=True, choices=list(_PROBLEMS))
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("fixture", help="write a bundled example automaton")
    p.add_argument("name")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_fixture)

    p = sub.add_parser("sample", help="Monte-Carlo report for a lasso word")
    p.add_argument("--automaton", required=True)
    add_value_flags(p, with_semantics=False)
    add_word_flags(p)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--at-or-above",
        action="append",
        default=None,
        metavar="P/Q",
        help="threshold for a reported tail frequency (repeatable)",
    )
    p.set_defaults(handler=_cmd_sample)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"qwa: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
