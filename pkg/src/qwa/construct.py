"""Closure constructions: each one builds a new weighted automaton.

Initial choice realizes pointwise max under the positive semantics (min
under almost-sure); the synchronized product realizes max/min through a
weight combiner; the pair-tagged product realizes the pointwise sum of two
limsup languages; thresholding extracts 0/1 acceptance automata; and the
doubling construction turns positive coBuchi acceptance into positive
Buchi acceptance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Alphabet,
    ONE,
    ZERO,
    WeightedAutomaton,
    support_automaton,
    uniformize,
)

support_of = support_automaton


def uniformized_support(automaton: WeightedAutomaton) -> WeightedAutomaton:
    """Forget the probabilities, then put uniform ones back.

    For the discounted sum under positive/nondeterministic semantics the
    language only depends on which transitions exist, so this round-trip
    preserves every word's value.
    """
    return uniformize(support_automaton(automaton))


def _require_same_alphabet(a1: WeightedAutomaton, a2: WeightedAutomaton) -> Alphabet:
    if a1.alphabet != a2.alphabet:
        raise ValueError("operands must share an alphabet")
    return a1.alphabet


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def normalize_initial(automaton: WeightedAutomaton) -> WeightedAutomaton:
    """Ensure a single initial state, adding a fresh one if needed.

    The fresh state replays the one-step behaviour of the original initial
    distribution: its sigma-row mixes the operand rows by the initial
    probabilities.  Its outgoing weights are taken from the first
    contributing edge in state order; they occupy a single step, which the
    limit value functions ignore.
    """
    support = automaton.initial_support()
    if len(support) == 1:
        return automaton
    fresh = _fresh_name("init", set(automaton.states))
    transitions = {k: dict(row) for k, row in automaton.transitions.items()}
    for letter in automaton.alphabet:
        mixed: dict[str, Fraction] = {}
        weight_of: dict[str, Fraction] = {}
        for q in automaton.states:
            p0 = automaton.initial.get(q, ZERO)
            if p0 <= ZERO:
                continue
            for q2, (p, w) in automaton.successors(q, letter).items():
                mixed[q2] = mixed.get(q2, ZERO) + p0 * p
                weight_of.setdefault(q2, w)
        transitions[(fresh, letter)] = {
            q2: (p, weight_of[q2]) for q2, p in mixed.items()
        }
    return WeightedAutomaton(
        (fresh,) + automaton.states, automaton.alphabet, {fresh: ONE}, transitions
    )


def _renamed(automaton: WeightedAutomaton, prefix: str) -> WeightedAutomaton:
    rename = {q: f"{prefix}{q}" for q in automaton.states}
    transitions = {
        (rename[q], a): {rename[q2]: pw for q2, pw in row.items()}
        for (q, a), row in automaton.transitions.items()
    }
    initial = {rename[q]: p for q, p in automaton.initial.items()}
    return WeightedAutomaton(
        tuple(rename[q] for q in automaton.states), automaton.alphabet, initial, transitions
    )


def initial_choice(a1: WeightedAutomaton, a2: WeightedAutomaton) -> WeightedAutomaton:
    """Branch uniformly between the two machines on the first letter.

    A fresh initial state moves, on each letter, uniformly into the union
    of the operands' one-step successors (operand state spaces are kept
    disjoint by renaming).  Under the positive semantics the result's
    language is the pointwise max of the operands', under the almost-sure
    semantics the pointwise min, for every limit value function.
    """
    _require_same_alphabet(a1, a2)
    left = _renamed(normalize_initial(a1), "A.")
    right = _renamed(normalize_initial(a2), "B.")
    (init1,) = left.initial_support()
    (init2,) = right.initial_support()

    taken = set(left.states) | set(right.states)
    fresh = _fresh_name("choice", taken)
    transitions: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
    transitions.update(left.transitions)
    transitions.update(right.transitions)
    for letter in a1.alphabet:
        union: dict[str, Fraction] = {}
        for part, init in ((left, init1), (right, init2)):
            for q2, (_p, w) in part.successors(init, letter).items():
                union[q2] = w
        share = Fraction(1, len(union))
        transitions[(fresh, letter)] = {q2: (share, w) for q2, w in union.items()}
    return WeightedAutomaton(
        (fresh,) + left.states + right.states,
        a1.alphabet,
        {fresh: ONE},
        transitions,
    )


def _pair_joiner(*automata: WeightedAutomaton) -> str:
    joiner = "~"
    names = [q for a in automata for q in a.states]
    while any(joiner in q for q in names):
        joiner += "~"
    return joiner


def synchronized_product(
    a1: WeightedAutomaton, a2: WeightedAutomaton, combiner: str
) -> WeightedAutomaton:
    """Run both machines in lockstep; combine edge weights with max/min/sum.

    Transition probabilities multiply (the two machines randomize
    independently).  With max the result's almost-sure limsup language is
    the pointwise max of the operands'; with min its positive liminf
    language is the pointwise min.
    """
    _require_same_alphabet(a1, a2)
    combine = {"max": max, "min": min, "sum": lambda x, y: x + y}.get(combiner)
    if combine is None:
        raise ValueError(f"unknown combiner {combiner!r}")
    joiner = _pair_joiner(a1, a2)

    def name(q1: str, q2: str) -> str:
        return f"{q1}{joiner}{q2}"

    states = tuple(name(q1, q2) for q1 in a1.states for q2 in a2.states)
    initial = {
        name(q1, q2): p1 * p2
        for q1, p1 in a1.initial.items()
        for q2, p2 in a2.initial.items()
        if p1 * p2 > ZERO
    }
    transitions: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
    for q1 in a1.states:
        for q2 in a2.states:
            for letter in a1.alphabet:
                row: dict[str, tuple[Fraction, Fraction]] = {}
                for s1, (p1, w1) in a1.successors(q1, letter).items():
                    for s2, (p2, w2) in a2.successors(q2, letter).items():
                        row[name(s1, s2)] = (p1 * p2, combine(w1, w2))
                transitions[(name(q1, q2), letter)] = row
    return WeightedAutomaton(states, a1.alphabet, initial, transitions)


def limsup_sum(a1: WeightedAutomaton, a2: WeightedAutomaton) -> WeightedAutomaton:
    """Pointwise sum of two limsup languages (positive and almost-sure).

    For every pair of operand weights (v1, v2) the product run carries an
    alternating expectation bit: it waits for the first machine to traverse
    a v1-edge, then for the second to traverse a v2-edge, and so on.  A step
    on which some pair's expected weight is seen scores that pair's sum
    v1+v2; all other steps score the minimum pair sum.  A pair's bit flips
    infinitely often exactly when v1 and v2 are both visited infinitely
    often, so each run's limsup equals the sum of the component limsups,
    which gives the sum law under both semantics at once.
    """
    _require_same_alphabet(a1, a2)
    pairs = [
        (v1, v2) for v1 in a1.weight_values() for v2 in a2.weight_values()
    ]
    floor = min(v1 + v2 for v1, v2 in pairs)
    joiner = _pair_joiner(a1, a2)

    State = tuple[str, str, tuple[int, ...]]

    def name(state: State) -> str:
        q1, q2, bits = state
        return f"{q1}{joiner}{q2}{joiner}{''.join(map(str, bits))}"

    start_bits = tuple(1 for _ in pairs)
    initial_states = {
        (q1, q2, start_bits): p1 * p2
        for q1, p1 in a1.initial.items()
        for q2, p2 in a2.initial.items()
        if p1 * p2 > ZERO
    }

    def step(state: State, letter: str):
        q1, q2, bits = state
        for s1, (p1, w1) in a1.successors(q1, letter).items():
            for s2, (p2, w2) in a2.successors(q2, letter).items():
                new_bits = []
                score = floor
                for (v1, v2), bit in zip(pairs, bits):
                    seen = w1 == v1 if bit == 1 else w2 == v2
                    if seen:
                        new_bits.append(3 - bit)
                        tally = v1 + v2
                        if tally > score:
                            score = tally
                    else:
                        new_bits.append(bit)
                yield (s1, s2, tuple(new_bits)), p1 * p2, score

    seen = set(initial_states)
    transitions: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
    frontier = sorted(initial_states)
    while frontier:
        state = frontier.pop()
        for letter in a1.alphabet:
            row: dict[str, tuple[Fraction, Fraction]] = {}
            for nxt, p, w in step(state, letter):
                row[name(nxt)] = (p, w)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
            transitions[(name(state), letter)] = row
    return WeightedAutomaton(
        tuple(name(s) for s in sorted(seen)),
        a1.alphabet,
        {name(s): p for s, p in initial_states.items()},
        transitions,
    )


class AcceptanceKind(enum.Enum):
    BUCHI = "buchi"
    COBUCHI = "cobuchi"


@dataclass(frozen=True)
class BooleanAutomaton:
    """Weight-0/1 automaton with an acceptance mode and its accepting states.

    Buchi acceptance (visit accepting states infinitely often) is limsup of
    the 0/1 weights; coBuchi acceptance (eventually always accepting) is
    their liminf.
    """

    automaton: WeightedAutomaton
    acceptance: AcceptanceKind
    accepting_states: tuple[str, ...]

    def __post_init__(self) -> None:
        weights = set(self.automaton.weight_values())
        if not weights <= {ZERO, ONE}:
            raise ValueError("boolean automata carry 0/1 weights only")


def weight_accepting_states(automaton: WeightedAutomaton, threshold: Fraction) -> tuple[str, ...]:
    """States all of whose outgoing support edges weigh at least `threshold`.

    For automata whose weights came from states this recovers exactly the
    states of weight >= threshold; under both probabilistic semantics a run
    eventually-always on high edges eventually-always sits in these states
    (up to a null event).
    """
    out = []
    for q in automaton.states:
        rows = [automaton.successors(q, a) for a in automaton.alphabet]
        if all(w >= threshold for row in rows for _p, w in row.values()):
            out.append(q)
    return tuple(out)


def threshold_boolean(
    automaton: WeightedAutomaton, threshold: Fraction, kind: AcceptanceKind
) -> BooleanAutomaton:
    """Keep the structure; weigh 1 exactly where the original weight >= threshold.

    Interpreted as limsup (Buchi): the result has positive value 1 on a word
    iff the original's positive limsup value reaches the threshold; the
    liminf/coBuchi reading is analogous.
    """
    transitions = {
        key: {q2: (p, ONE if w >= threshold else ZERO) for q2, (p, w) in row.items()}
        for key, row in automaton.transitions.items()
    }
    boolean = WeightedAutomaton(
        automaton.states, automaton.alphabet, dict(automaton.initial), transitions
    )
    return BooleanAutomaton(boolean, kind, weight_accepting_states(automaton, threshold))


def cobuchi_to_buchi_positive(cobuchi: BooleanAutomaton) -> BooleanAutomaton:
    """Positive-semantics coBuchi acceptance as Buchi acceptance, via a copy.

    Every step in the original part also moves, with half its probability,
    into a shadow copy; shadow states of non-accepting origin absorb, shadow
    states of accepting origin follow the original moves.  A run certifying
    "eventually always accepting" with positive probability transfers into
    an accepting shadow cycle with positive probability, and conversely.
    Accepts only a single (Dirac) initial state.
    """
    if cobuchi.acceptance is not AcceptanceKind.COBUCHI:
        raise ValueError("input must be a coBuchi automaton")
    base = cobuchi.automaton
    support = base.initial_support()
    if len(support) != 1 or base.initial[support[0]] != ONE:
        raise ValueError("the doubling construction needs a Dirac initial state")
    accepting = set(cobuchi.accepting_states)

    taken = set(base.states)
    shadow = {}
    for q in base.states:
        shadow[q] = _fresh_name(q + "'", taken)
        taken.add(shadow[q])

    half = Fraction(1, 2)
    transitions: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
    for q in base.states:
        for letter in base.alphabet:
            row: dict[str, tuple[Fraction, Fraction]] = {}
            for q2, (p, _w) in base.successors(q, letter).items():
                row[q2] = (p * half, ZERO)
                row[shadow[q2]] = (p * half, ZERO)
            transitions[(q, letter)] = row
    for q in base.states:
        for letter in base.alphabet:
            if q in accepting:
                row = {
                    shadow[q2]: (p, ONE)
                    for q2, (p, _w) in base.successors(q, letter).items()
                }
            else:
                row = {shadow[q]: (ONE, ZERO)}
            transitions[(shadow[q], letter)] = row

    result = WeightedAutomaton(
        base.states + tuple(shadow[q] for q in base.states),
        base.alphabet,
        {support[0]: ONE},
        transitions,
    )
    return BooleanAutomaton(
        result, AcceptanceKind.BUCHI, tuple(shadow[q] for q in base.states if q in accepting)
    )
