"""Data model for probabilistic weighted automata over infinite words.

States and letters are plain strings.  Every probability and weight is an
exact `fractions.Fraction`; nothing in this module touches floating point.
Infinite words are restricted to the ultimately periodic ones (a finite
prefix followed by a repeated non-empty loop), which is enough to give
every value function a closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce an int, a 'p/q' string, or a Fraction to an exact Fraction.

    Floats and decimal literals are rejected: probabilities and weights
    must stay exact end to end.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct letter names."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if any(not a for a in self.letters):
            raise ValueError("letter names must be non-empty strings")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("duplicate letters in alphabet")

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters

    def __len__(self) -> int:
        return len(self.letters)


class ValueKind(enum.Enum):
    SUP = "sup"
    LIMSUP = "limsup"
    LIMINF = "liminf"
    LIMAVG = "limavg"
    DISC = "disc"


LIMIT_KINDS = (ValueKind.LIMSUP, ValueKind.LIMINF, ValueKind.LIMAVG)


@dataclass(frozen=True)
class ValueFunction:
    """One of the five run value functions; discounted sum carries its factor."""

    kind: ValueKind
    discount: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind is ValueKind.DISC:
            if self.discount is None:
                raise ValueError("discounted sum needs a discount factor")
            if not (ZERO < self.discount < ONE):
                raise ValueError("discount factor must satisfy 0 < lambda < 1")
        elif self.discount is not None:
            raise ValueError(f"{self.kind.value} takes no discount factor")

    @classmethod
    def sup(cls) -> "ValueFunction":
        return cls(ValueKind.SUP)

    @classmethod
    def limsup(cls) -> "ValueFunction":
        return cls(ValueKind.LIMSUP)

    @classmethod
    def liminf(cls) -> "ValueFunction":
        return cls(ValueKind.LIMINF)

    @classmethod
    def limavg(cls) -> "ValueFunction":
        return cls(ValueKind.LIMAVG)

    @classmethod
    def disc(cls, discount: int | str | Fraction) -> "ValueFunction":
        return cls(ValueKind.DISC, rat(discount))


class Semantics(enum.Enum):
    """How the values of the individual runs over a word are aggregated."""

    POSITIVE = "pos"
    ALMOST_SURE = "as"
    NONDETERMINISTIC = "nd"
    UNIVERSAL = "univ"


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word: finite prefix, then a non-empty loop forever."""

    prefix: tuple[str, ...]
    loop: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.loop:
            raise ValueError("lasso loop must be non-empty")

    @classmethod
    def make(cls, prefix: Sequence[str], loop: Sequence[str]) -> "LassoWord":
        return cls(tuple(prefix), tuple(loop))

    def letter(self, index: int) -> str:
        """Letter at 0-based position `index` of the infinite word."""
        if index < len(self.prefix):
            return self.prefix[index]
        return self.loop[(index - len(self.prefix)) % len(self.loop)]

    def rotated(self) -> "LassoWord":
        """Same infinite word with the first loop letter moved into the prefix."""
        return LassoWord(self.prefix + self.loop[:1], self.loop[1:] + self.loop[:1])

    def unrolled(self) -> "LassoWord":
        """Same infinite word with the loop doubled."""
        return LassoWord(self.prefix, self.loop + self.loop)

    def pushed(self) -> "LassoWord":
        """Same infinite word with one whole loop copy moved into the prefix."""
        return LassoWord(self.prefix + self.loop, self.loop)

    def __str__(self) -> str:
        head = ".".join(self.prefix)
        body = ".".join(self.loop)
        return f"{head}({body})^w" if head else f"({body})^w"


@dataclass(frozen=True)
class RunSegmentWeights:
    """Weight sequence of a lasso-shaped run: prefix weights, then looped weights."""

    prefix_weights: tuple[Fraction, ...]
    loop_weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.loop_weights:
            raise ValueError("loop weights must be non-empty")

    @classmethod
    def make(cls, prefix: Iterable[int | str | Fraction], loop: Iterable[int | str | Fraction]) -> "RunSegmentWeights":
        return cls(tuple(rat(w) for w in prefix), tuple(rat(w) for w in loop))


def periodic_value(valfn: ValueFunction, weights: RunSegmentWeights) -> Fraction:
    """Value of the infinite weight sequence prefix · loop^w under `valfn`.

    Closed forms: sup is the max over prefix and loop; limsup/liminf are the
    max/min over the loop (the prefix is eventually irrelevant); the running
    averages of a periodic tail converge, so the limit average is the loop
    mean; the discounted sum splits into the prefix part plus a geometric
    factor for the repeated loop.
    """
    u, v = weights.prefix_weights, weights.loop_weights
    kind = valfn.kind
    if kind is ValueKind.SUP:
        return max(u + v)
    if kind is ValueKind.LIMSUP:
        return max(v)
    if kind is ValueKind.LIMINF:
        return min(v)
    if kind is ValueKind.LIMAVG:
        return Fraction(sum(v), len(v))
    lam = valfn.discount
    assert lam is not None
    head = sum((lam**i) * w for i, w in enumerate(u))
    loop_sum = sum((lam**j) * w for j, w in enumerate(v))
    return head + (lam ** len(u)) * loop_sum / (ONE - lam ** len(v))


@dataclass(frozen=True)
class WeightedAutomaton:
    """Finite-state machine with rational transition probabilities and weights.

    `transitions[(q, a)]` maps each successor with positive probability to a
    `(probability, weight)` pair; rows must sum to exactly 1 (the transition
    function is total).  `initial` holds the positive entries of the initial
    distribution.  Instances are treated as immutable.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    initial: Mapping[str, Fraction]
    transitions: Mapping[tuple[str, str], Mapping[str, tuple[Fraction, Fraction]]]

    @classmethod
    def make(
        cls,
        states: Sequence[str],
        letters: Sequence[str],
        initial: Mapping[str, int | str | Fraction],
        transitions: Mapping[tuple[str, str], Mapping[str, tuple]],
    ) -> "WeightedAutomaton":
        """Build an automaton, coercing all numeric entries to Fractions."""
        init = {q: rat(p) for q, p in initial.items()}
        trans: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
        for key, row in transitions.items():
            trans[key] = {q2: (rat(p), rat(w)) for q2, (p, w) in row.items()}
        return cls(tuple(states), Alphabet(tuple(letters)), init, trans)

    @classmethod
    def from_state_weights(
        cls,
        states: Sequence[str],
        letters: Sequence[str],
        initial: Mapping[str, int | str | Fraction],
        moves: Mapping[tuple[str, str], Mapping[str, int | str | Fraction]],
        state_weights: Mapping[str, int | str | Fraction],
    ) -> "WeightedAutomaton":
        """Build from state-level weights, expanded onto all outgoing edges."""
        weights = {q: rat(w) for q, w in state_weights.items()}
        trans = {
            (q, a): {q2: (p, weights[q]) for q2, p in row.items()}
            for (q, a), row in moves.items()
        }
        return cls.make(states, letters, initial, trans)

    def successors(self, state: str, letter: str) -> Mapping[str, tuple[Fraction, Fraction]]:
        return self.transitions.get((state, letter), {})

    def edges(self) -> Iterator[tuple[str, str, str, Fraction, Fraction]]:
        """Yield every support edge as (state, letter, successor, prob, weight)."""
        for (q, a), row in self.transitions.items():
            for q2, (p, w) in row.items():
                yield q, a, q2, p, w

    def weight_values(self) -> tuple[Fraction, ...]:
        """Sorted distinct weights appearing on support edges."""
        return tuple(sorted({w for *_rest, w in self.edges()}))

    def initial_support(self) -> tuple[str, ...]:
        return tuple(q for q in self.states if self.initial.get(q, ZERO) > ZERO)

    def is_deterministic(self) -> bool:
        if len(self.initial_support()) != 1:
            return False
        return all(len(self.successors(q, a)) == 1 for q in self.states for a in self.alphabet)


def validate(automaton: WeightedAutomaton) -> list[str]:
    """Check every structural invariant; return one message per violation.

    A valid automaton yields an empty list.  Diagnostics are the return
    value, not exceptions, so partially built machines can be inspected.
    """
    report: list[str] = []
    a = automaton
    declared = set(a.states)
    if not a.states:
        report.append("no states declared")
    if any(not q for q in a.states):
        report.append("state names must be non-empty strings")
    if len(declared) != len(a.states):
        report.append("duplicate state names")

    total = sum(a.initial.values(), ZERO)
    if total != ONE:
        report.append(f"initial distribution sums to {total}, not 1")
    for q, p in a.initial.items():
        if q not in declared:
            report.append(f"initial distribution mentions undeclared state {q!r}")
        if p <= ZERO:
            report.append(f"initial probability of {q!r} is {p}, not positive")

    for q in a.states:
        for letter in a.alphabet:
            row = a.transitions.get((q, letter))
            if not row:
                report.append(f"missing transition row at ({q!r}, {letter!r})")
                continue
            row_sum = sum((p for p, _w in row.values()), ZERO)
            if row_sum != ONE:
                report.append(f"row sum != 1 at ({q!r}, {letter!r}): {row_sum}")
            for q2, (p, _w) in row.items():
                if q2 not in declared:
                    report.append(f"undeclared successor {q2!r} at ({q!r}, {letter!r})")
                if p <= ZERO:
                    report.append(
                        f"non-positive probability {p} on edge ({q!r}, {letter!r}, {q2!r}); "
                        "weights live on support edges only"
                    )
    for (q, letter), _row in a.transitions.items():
        if q not in declared:
            report.append(f"transition row from undeclared state {q!r}")
        if letter not in a.alphabet:
            report.append(f"transition row on unknown letter {letter!r}")
    return report


@dataclass(frozen=True)
class SupportGraph:
    """The non-probabilistic automaton left after dropping probability values.

    Keeps exactly the positive-probability transitions, with their weights,
    and the set of states the initial distribution can start in.
    """

    states: tuple[str, ...]
    letters: tuple[str, ...]
    edges: tuple[tuple[str, str, str, Fraction], ...]
    initial: frozenset[str]

    def successors(self, state: str, letter: str) -> list[tuple[str, Fraction]]:
        return [(q2, w) for q, a, q2, w in self.edges if q == state and a == letter]


def support_automaton(automaton: WeightedAutomaton) -> SupportGraph:
    """Keep the support edges (probability > 0) and forget the probabilities."""
    edges = tuple((q, a, q2, w) for q, a, q2, _p, w in automaton.edges())
    return SupportGraph(
        states=automaton.states,
        letters=tuple(automaton.alphabet.letters),
        edges=edges,
        initial=frozenset(automaton.initial_support()),
    )


def uniformize(graph: SupportGraph) -> WeightedAutomaton:
    """Put the uniform distribution on every successor set of the graph.

    Each (state, letter) row becomes uniform over its successors, and the
    initial distribution becomes uniform over the initial states.  Weights
    are preserved.  Raises if some row has no successor ("not total") or no
    initial state exists.
    """
    by_row: dict[tuple[str, str], list[tuple[str, Fraction]]] = {}
    for q, a, q2, w in graph.edges:
        by_row.setdefault((q, a), []).append((q2, w))
    transitions: dict[tuple[str, str], dict[str, tuple[Fraction, Fraction]]] = {}
    for q in graph.states:
        for a in graph.letters:
            succ = by_row.get((q, a))
            if not succ:
                raise ValueError(f"not total: no successor for ({q!r}, {a!r})")
            share = Fraction(1, len(succ))
            transitions[(q, a)] = {q2: (share, w) for q2, w in succ}
    if not graph.initial:
        raise ValueError("no initial state")
    share = Fraction(1, len(graph.initial))
    initial = {q: share for q in sorted(graph.initial)}
    return WeightedAutomaton(graph.states, Alphabet(graph.letters), initial, transitions)


def negate_weights(automaton: WeightedAutomaton) -> WeightedAutomaton:
    """Flip the sign of every weight; structure and probabilities unchanged."""
    transitions = {
        key: {q2: (p, -w) for q2, (p, w) in row.items()}
        for key, row in automaton.transitions.items()
    }
    return WeightedAutomaton(
        automaton.states, automaton.alphabet, dict(automaton.initial), transitions
    )
