"""Line-oriented text format for automata (.qwa documents).

A document has the sections below, in any order, one per line except for
the transition records which follow their header:

    # comments and blank lines are ignored
    alphabet: send ack
    states: q0 q1 q2
    initial: q0=1
    state_weights: q0=0 q1=1          # optional
    transitions:
    q0 send q1 9/10 1
    q0 send q2 1/10 1

Probabilities and weights are exact rational strings ("p/q" or an
integer); decimals are rejected.  A transition may omit its weight iff
`state_weights` covers its source state, in which case that weight is
expanded onto the edge when the automaton is built.  parse and serialize
are exact inverses on the structured document.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Alphabet, WeightedAutomaton, rat


class DocumentError(ValueError):
    """Malformed document text or records."""


@dataclass(frozen=True)
class TransitionRecord:
    source: str
    letter: str
    target: str
    probability: Fraction
    weight: Fraction | None


@dataclass(frozen=True)
class AutomatonDocument:
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: tuple[tuple[str, Fraction], ...]
    state_weights: tuple[tuple[str, Fraction], ...] | None
    transitions: tuple[TransitionRecord, ...]


def _parse_rational(text: str, where: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad rational {text!r} ({exc})") from None


def _parse_assignments(parts: list[str], where: str) -> tuple[tuple[str, Fraction], ...]:
    out = []
    for part in parts:
        if "=" not in part:
            raise DocumentError(f"{where}: expected name=value, got {part!r}")
        name, _, value = part.partition("=")
        out.append((name, _parse_rational(value, where)))
    return tuple(out)


def parse_document(text: str) -> AutomatonDocument:
    """Parse document text; raises DocumentError with a line reference."""
    alphabet: tuple[str, ...] | None = None
    states: tuple[str, ...] | None = None
    initial: tuple[tuple[str, Fraction], ...] | None = None
    state_weights: tuple[tuple[str, Fraction], ...] | None = None
    transitions: list[TransitionRecord] = []
    in_transitions = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if in_transitions and ":" not in line.split()[0]:
            parts = line.split()
            if len(parts) not in (4, 5):
                raise DocumentError(
                    f"{where}: transition needs 'from letter to prob [weight]'"
                )
            weight = _parse_rational(parts[4], where) if len(parts) == 5 else None
            transitions.append(
                TransitionRecord(
                    parts[0], parts[1], parts[2], _parse_rational(parts[3], where), weight
                )
            )
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise DocumentError(f"{where}: expected a 'section:' header, got {line!r}")
        key = key.strip()
        parts = rest.split()
        if key == "alphabet":
            alphabet = tuple(parts)
        elif key == "states":
            states = tuple(parts)
        elif key == "initial":
            initial = _parse_assignments(parts, where)
        elif key == "state_weights":
            state_weights = _parse_assignments(parts, where)
        elif key == "transitions":
            if parts:
                raise DocumentError(f"{where}: transition records start on the next line")
            in_transitions = True
        else:
            raise DocumentError(f"{where}: unknown section {key!r}")

    if alphabet is None:
        raise DocumentError("missing 'alphabet:' section")
    if states is None:
        raise DocumentError("missing 'states:' section")
    if initial is None:
        raise DocumentError("missing 'initial:' section")
    return AutomatonDocument(alphabet, states, initial, state_weights, tuple(transitions))


def serialize_document(doc: AutomatonDocument) -> str:
    """Render a document; parse(serialize(doc)) == doc for valid documents."""
    lines = [
        "alphabet: " + " ".join(doc.alphabet),
        "states: " + " ".join(doc.states),
        "initial: " + " ".join(f"{q}={p}" for q, p in doc.initial),
    ]
    if doc.state_weights is not None:
        lines.append("state_weights: " + " ".join(f"{q}={w}" for q, w in doc.state_weights))
    lines.append("transitions:")
    for r in doc.transitions:
        tail = f" {r.weight}" if r.weight is not None else ""
        lines.append(f"{r.source} {r.letter} {r.target} {r.probability}{tail}")
    return "\n".join(lines) + "\n"


def document_to_automaton(doc: AutomatonDocument) -> WeightedAutomaton:
    """Build the automaton, expanding state weights onto weightless edges."""
    weights = dict(doc.state_weights or ())
    transitions: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
    for r in doc.transitions:
        weight = r.weight
        if weight is None:
            if r.source not in weights:
                raise DocumentError(
                    f"transition {r.source} {r.letter} {r.target} omits its weight "
                    f"but state_weights does not cover {r.source!r}"
                )
            weight = weights[r.source]
        row = transitions.setdefault((r.source, r.letter), {})
        if r.target in row:
            raise DocumentError(
                f"duplicate transition {r.source} {r.letter} {r.target}"
            )
        row[r.target] = (r.probability, weight)
    return WeightedAutomaton(
        doc.states, Alphabet(doc.alphabet), dict(doc.initial), transitions
    )


def automaton_to_document(automaton: WeightedAutomaton) -> AutomatonDocument:
    """Document with explicit per-edge weights (no state_weights shorthand)."""
    records = [
        TransitionRecord(q, a, q2, p, w)
        for (q, a), row in sorted(automaton.transitions.items())
        for q2, (p, w) in sorted(row.items())
    ]
    initial = tuple(
        (q, automaton.initial[q]) for q in automaton.states if q in automaton.initial
    )
    return AutomatonDocument(
        tuple(automaton.alphabet.letters),
        automaton.states,
        initial,
        None,
        tuple(records),
    )


def parse_word_part(text: str, alphabet: Iterable[str]) -> tuple[str, ...]:
    """Split a '.'-separated word ('send.ack'); empty text means no letters."""
    if not text:
        return ()
    letters = tuple(text.split("."))
    known = set(alphabet)
    for a in letters:
        if a not in known:
            raise DocumentError(f"letter {a!r} is not in the alphabet")
    return letters
