"""Decision procedures for threshold emptiness and universality.

Emptiness asks whether some infinite word reaches value >= nu, universality
whether every word does.  The sup value function admits direct subset-graph
procedures for all four semantics; the discounted sum admits exact policy
iteration for positive emptiness and almost-sure universality.  Every other
combination is only classified (decidable / undecidable / open), not
solved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .core import (
    ONE,
    ZERO,
    LassoWord,
    Semantics,
    SupportGraph,
    ValueFunction,
    ValueKind,
    WeightedAutomaton,
    support_automaton,
)

SubsetNode = frozenset  # subset-construction nodes are frozensets of states


class Problem(enum.Enum):
    EMPTINESS = "emptiness"
    UNIVERSALITY = "universality"


class Status(enum.Enum):
    DECIDABLE = "Decidable"
    UNDECIDABLE = "Undecidable"
    OPEN = "Open"


@dataclass(frozen=True)
class ClassificationEntry:
    value_kind: ValueKind
    semantics: Semantics
    problem: Problem
    status: Status
    note: str | None = None


_DISC_FOOTNOTE = "The universality problem for NDisc can be reduced to (1)"

# (value kind, semantics) -> (emptiness status, universality status, footnoted problem)
_DECIDABILITY: dict[tuple[ValueKind, Semantics], tuple[Status, Status, Problem | None]] = {
    (ValueKind.SUP, Semantics.POSITIVE): (Status.DECIDABLE, Status.DECIDABLE, None),
    (ValueKind.LIMSUP, Semantics.POSITIVE): (Status.UNDECIDABLE, Status.UNDECIDABLE, None),
    (ValueKind.LIMINF, Semantics.POSITIVE): (Status.DECIDABLE, Status.DECIDABLE, None),
    (ValueKind.LIMAVG, Semantics.POSITIVE): (Status.OPEN, Status.OPEN, None),
    (ValueKind.DISC, Semantics.POSITIVE): (Status.DECIDABLE, Status.OPEN, Problem.UNIVERSALITY),
    (ValueKind.SUP, Semantics.ALMOST_SURE): (Status.DECIDABLE, Status.DECIDABLE, None),
    (ValueKind.LIMSUP, Semantics.ALMOST_SURE): (Status.DECIDABLE, Status.DECIDABLE, None),
    (ValueKind.LIMINF, Semantics.ALMOST_SURE): (Status.UNDECIDABLE, Status.UNDECIDABLE, None),
    (ValueKind.LIMAVG, Semantics.ALMOST_SURE): (Status.OPEN, Status.OPEN, None),
    (ValueKind.DISC, Semantics.ALMOST_SURE): (Status.OPEN, Status.DECIDABLE, Problem.EMPTINESS),
}

# (value kind, semantics) -> closed under (max, min, complement, sum); None = open
_CLOSURE: dict[tuple[ValueKind, Semantics], tuple[bool | None, ...]] = {
    (ValueKind.SUP, Semantics.POSITIVE): (True, True, False, True),
    (ValueKind.LIMSUP, Semantics.POSITIVE): (True, True, True, True),
    (ValueKind.LIMINF, Semantics.POSITIVE): (True, True, False, True),
    (ValueKind.LIMAVG, Semantics.POSITIVE): (True, False, False, None),
    (ValueKind.DISC, Semantics.POSITIVE): (True, False, False, True),
    (ValueKind.SUP, Semantics.ALMOST_SURE): (True, True, False, True),
    (ValueKind.LIMSUP, Semantics.ALMOST_SURE): (True, True, False, True),
    (ValueKind.LIMINF, Semantics.ALMOST_SURE): (True, True, True, True),
    (ValueKind.LIMAVG, Semantics.ALMOST_SURE): (False, True, False, False),
    (ValueKind.DISC, Semantics.ALMOST_SURE): (False, True, False, True),
}

CLOSURE_OPERATIONS = ("max", "min", "complement", "sum")


class DecisionUnsupported(Exception):
    """Raised when a requested decision problem has no implemented procedure."""

    def __init__(self, message: str, entry: ClassificationEntry | None = None):
        super().__init__(message)
        self.entry = entry


def classify(value_kind: ValueKind, semantics: Semantics, problem: Problem) -> ClassificationEntry:
    """Decidability status of the (value function, semantics, problem) cell.

    Only the positive and almost-sure rows are classified; the classification
    covers all ten class/problem combinations.
    """
    key = (value_kind, semantics)
    if key not in _DECIDABILITY:
        raise ValueError(
            "classification covers the positive and almost-sure semantics only"
        )
    empt, univ, footnoted = _DECIDABILITY[key]
    status = empt if problem is Problem.EMPTINESS else univ
    note = _DISC_FOOTNOTE if footnoted is problem else None
    return ClassificationEntry(value_kind, semantics, problem, status, note)


def classification_table() -> list[ClassificationEntry]:
    """All twenty decidability cells, in a fixed row order."""
    return [
        classify(kind, sem, problem)
        for sem in (Semantics.POSITIVE, Semantics.ALMOST_SURE)
        for kind in (ValueKind.SUP, ValueKind.LIMSUP, ValueKind.LIMINF, ValueKind.LIMAVG, ValueKind.DISC)
        for problem in (Problem.EMPTINESS, Problem.UNIVERSALITY)
    ]


def closure_table() -> dict[tuple[ValueKind, Semantics], dict[str, bool | None]]:
    """Closure of each class under max, min, complement and sum (None = open)."""
    return {
        key: dict(zip(CLOSURE_OPERATIONS, flags)) for key, flags in _CLOSURE.items()
    }


# --- sup decision procedures (subset constructions) ---


def _letter_successors(graph: SupportGraph) -> dict[tuple[str, str], list[tuple[str, Fraction]]]:
    table: dict[tuple[str, str], list[tuple[str, Fraction]]] = {}
    for q, a, q2, w in graph.edges:
        table.setdefault((q, a), []).append((q2, w))
    return table


def _bfs_to_target(
    start: Hashable,
    moves: Callable[[Hashable], Iterable[tuple[str, Hashable]]],
    target: Callable[[Hashable], bool],
) -> tuple[list[str], Hashable] | None:
    """Letters of a shortest path from `start` to a target node, plus that node."""
    parent: dict[Hashable, tuple[Hashable, str] | None] = {start: None}
    queue = [start]
    while queue:
        node = queue.pop(0)
        if target(node):
            letters: list[str] = []
            at = node
            while parent[at] is not None:
                at, letter = parent[at]
                letters.append(letter)
            return letters[::-1], node
        for letter, node2 in moves(node):
            if node2 not in parent:
                parent[node2] = (node, letter)
                queue.append(node2)
    return None


def _dfs_find_cycle(
    start: Hashable,
    moves: Callable[[Hashable], Iterable[tuple[str, Hashable]]],
) -> tuple[list[str], list[str]] | None:
    """Letters to a reachable cycle and around it, or None if none exists.

    Iterative DFS; a back edge into the active path closes the lasso.
    """
    path: list[Hashable] = [start]
    path_letters: list[str] = []
    on_path: dict[Hashable, int] = {start: 0}
    done: set[Hashable] = set()
    work: list[tuple[Hashable, Iterable]] = [(start, iter(moves(start)))]
    while work:
        node, it = work[-1]
        step = next(it, None)
        if step is None:
            work.pop()
            done.add(node)
            del on_path[node]
            path.pop()
            if path_letters:
                path_letters.pop()
            continue
        letter, node2 = step
        if node2 in on_path:
            entry = on_path[node2]
            return path_letters[:entry], path_letters[entry:] + [letter]
        if node2 in done:
            continue
        path_letters.append(letter)
        path.append(node2)
        on_path[node2] = len(path) - 1
        work.append((node2, iter(moves(node2))))
    return None


def explain_sup(
    automaton: WeightedAutomaton,
    semantics: Semantics,
    problem: Problem,
    threshold: Fraction,
) -> tuple[bool, LassoWord | None]:
    """Decide the sup problem; also return a witness word when one exists.

    Emptiness witnesses are words of value >= nu; universality counter-
    witnesses are words of value < nu.  The nondeterministic and positive
    semantics coincide here, as do the universal and almost-sure ones (the
    latter via the universal-run reduction, which can differ from the
    measure-theoretic almost-sure value; see the package docs).
    """
    graph = support_automaton(automaton)
    table = _letter_successors(graph)
    letters = graph.letters
    nu = threshold

    def low_successors(states: frozenset, letter: str) -> frozenset:
        out = set()
        for q in states:
            for q2, w in table.get((q, letter), ()):
                if w < nu:
                    out.add(q2)
        return frozenset(out)

    def all_successors(states: frozenset, letter: str) -> frozenset:
        out = set()
        for q in states:
            for q2, _w in table.get((q, letter), ()):
                out.add(q2)
        return frozenset(out)

    def has_high_edge(states: frozenset, letter: str) -> bool:
        return any(
            w >= nu for q in states for _q2, w in table.get((q, letter), ())
        )

    start = frozenset(graph.initial)
    angelic = semantics in (Semantics.POSITIVE, Semantics.NONDETERMINISTIC)

    if problem is Problem.EMPTINESS:
        if angelic:
            # some word steers some run onto a high edge: state-level reachability
            def state_moves(q: str):
                for a in letters:
                    for q2, _w in table.get((q, a), ()):
                        yield a, q2

            def has_high_from(q: str) -> bool:
                return any(
                    w >= nu for a in letters for _q2, w in table.get((q, a), ())
                )

            for q0 in sorted(graph.initial):
                found = _bfs_to_target(q0, state_moves, has_high_from)
                if found is not None:
                    prefix, at = found
                    extra = next(
                        a
                        for a in letters
                        for _q2, w in table.get((at, a), ())
                        if w >= nu
                    )
                    return True, LassoWord(tuple(prefix) + (extra,), (letters[0],))
            return False, None
        # every run must hit a high edge: drive the low-only survivors to empty
        found = _bfs_to_target(
            start,
            lambda s: ((a, low_successors(s, a)) for a in letters),
            lambda s: not s,
        )
        if found is None:
            return False, None
        prefix, _node = found
        return True, LassoWord(tuple(prefix), (letters[0],))

    if angelic:
        # universality fails iff some word lets no run ever touch a high edge:
        # cycle in the full subset graph restricted to letters with no high edge
        def safe_moves(states: frozenset):
            for a in letters:
                if not has_high_edge(states, a):
                    yield a, all_successors(states, a)

        lasso = _dfs_find_cycle(start, safe_moves)
        if lasso is None:
            return True, None
        prefix, loop = lasso
        return False, LassoWord(tuple(prefix), tuple(loop))

    # universal/almost-sure universality fails iff some word keeps a low-only
    # run alive forever: cycle among non-empty low survivor sets
    def live_moves(states: frozenset):
        for a in letters:
            nxt = low_successors(states, a)
            if nxt:
                yield a, nxt

    lasso = _dfs_find_cycle(start, live_moves)
    if lasso is None:
        return True, None
    prefix, loop = lasso
    return False, LassoWord(tuple(prefix), tuple(loop))


def decide_sup(
    automaton: WeightedAutomaton,
    semantics: Semantics,
    problem: Problem,
    threshold: Fraction,
) -> bool:
    """Does some (emptiness) / every (universality) word reach sup value >= nu?"""
    holds, _witness = explain_sup(automaton, semantics, problem, threshold)
    return holds


# --- exact discounted-sum optimization ---


def optimal_discounted_value(
    choices: Mapping[Hashable, Sequence[tuple[Hashable, Fraction]]],
    discount: Fraction,
    mode: str,
) -> dict[Hashable, Fraction]:
    """Optimal discounted value of a finite choice graph, by policy iteration.

    `choices[n]` lists the available moves (successor, weight) of node n in
    a fixed order; `mode` is "max" or "min".  A positional policy induces a
    functional graph, whose values have a closed form (geometric sum on the
    cycle, back-substitution on the tail), so each evaluation is exact and
    linear-time.  Strictly improving switches are applied until none exists;
    ties go to the earliest listed choice.  The unique fixpoint of
    V(n) = mode over moves of [weight + discount * V(successor)] is returned
    and asserted.
    """
    if not (ZERO < discount < ONE):
        raise ValueError("discount factor must satisfy 0 < lambda < 1")
    if mode not in ("max", "min"):
        raise ValueError("mode must be 'max' or 'min'")
    better = (lambda x, y: x > y) if mode == "max" else (lambda x, y: x < y)
    nodes = list(choices)
    for n in nodes:
        if not choices[n]:
            raise ValueError(f"dead-end node {n!r}: every node needs a choice")

    policy = {n: 0 for n in nodes}

    def eval_policy() -> dict[Hashable, Fraction]:
        values: dict[Hashable, Fraction] = {}
        for root in nodes:
            if root in values:
                continue
            path: list[Hashable] = []
            seen_at: dict[Hashable, int] = {}
            at = root
            while at not in values and at not in seen_at:
                seen_at[at] = len(path)
                path.append(at)
                at = choices[at][policy[at]][0]
            if at in seen_at:
                # closed-form value of the cycle starting at `at`
                j = seen_at[at]
                cycle = path[j:]
                acc = ZERO
                factor = ONE
                for n in cycle:
                    acc += factor * choices[n][policy[n]][1]
                    factor *= discount
                values[at] = acc / (ONE - factor)
            for n in reversed(path):
                succ, w = choices[n][policy[n]]
                if n not in values:
                    values[n] = w + discount * values[succ]
        return values

    total_choices = sum(len(c) for c in choices.values())
    for _round in range(100 + 20 * len(nodes) * total_choices):
        values = eval_policy()
        switched = False
        for n in nodes:
            current = values[n]
            best_i, best_v = policy[n], current
            for i, (succ, w) in enumerate(choices[n]):
                v = w + discount * values[succ]
                if better(v, best_v):
                    best_i, best_v = i, v
            if best_i != policy[n]:
                policy[n] = best_i
                switched = True
        if not switched:
            break
    else:
        raise AssertionError("policy iteration failed to converge")

    pick = max if mode == "max" else min
    for n in nodes:
        fix = pick(w + discount * values[succ] for succ, w in choices[n])
        if values[n] != fix:
            raise AssertionError("discounted values do not satisfy the fixpoint equation")
    return values


def decide_disc(
    automaton: WeightedAutomaton,
    valfn: ValueFunction,
    semantics: Semantics,
    problem: Problem,
    threshold: Fraction,
) -> bool:
    """Discounted-sum decisions on the two cells with a known procedure.

    Positive emptiness and almost-sure universality reduce to optimizing the
    discounted sum over the support graph (the value ignores the actual
    probabilities); the nondeterministic and universal semantics are
    accepted as the equivalent aliases.  Anything else raises with its
    classification status.
    """
    if valfn.kind is not ValueKind.DISC:
        raise ValueError("decide_disc needs a discounted value function")
    alias = {
        Semantics.NONDETERMINISTIC: Semantics.POSITIVE,
        Semantics.UNIVERSAL: Semantics.ALMOST_SURE,
    }.get(semantics, semantics)
    supported = {
        (Semantics.POSITIVE, Problem.EMPTINESS): "max",
        (Semantics.ALMOST_SURE, Problem.UNIVERSALITY): "min",
    }
    mode = supported.get((alias, problem))
    if mode is None:
        entry = classify(ValueKind.DISC, alias, problem)
        raise DecisionUnsupported(
            f"{entry.status.value} per the classification table: "
            f"disc/{alias.value}/{problem.value} has no implemented procedure",
            entry,
        )
    graph = support_automaton(automaton)
    table = _letter_successors(graph)
    choices = {
        q: [
            (q2, w)
            for a in graph.letters
            for q2, w in sorted(table.get((q, a), ()))
        ]
        for q in graph.states
    }
    values = optimal_discounted_value(choices, valfn.discount, mode)
    pick = max if mode == "max" else min
    return pick(values[q] for q in graph.initial) >= threshold
