"""Finite Markov chain of an automaton running on a lasso word.

Synchronizing an automaton with an ultimately periodic word gives a finite
chain over (state, position) nodes.  Runs end up, with probability 1, in a
bottom strongly connected component; the long-run behaviour of a run is
determined by which component absorbs it.  Everything here is solved
exactly over Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .core import (
    LIMIT_KINDS,
    ONE,
    ZERO,
    LassoWord,
    ValueFunction,
    ValueKind,
    WeightedAutomaton,
)
from .linalg import solve_unique

Node = tuple[str, int]


@dataclass(frozen=True)
class ProductChain:
    """Markov chain over (state, position) pairs, restricted to reachable nodes.

    Positions 0..prefix_len-1 are read once; positions >= prefix_len advance
    cyclically through the loop (p -> p+1, wrapping back to prefix_len).
    Outgoing probabilities of every node sum to exactly 1.
    """

    nodes: tuple[Node, ...]
    edges: Mapping[Node, tuple[tuple[Node, Fraction, Fraction], ...]]
    initial: Mapping[Node, Fraction]
    prefix_len: int
    period: int

    def edge_list(self) -> list[tuple[Node, Node, Fraction, Fraction]]:
        return [(n, n2, p, w) for n, row in self.edges.items() for n2, p, w in row]


def build_product(automaton: WeightedAutomaton, word: LassoWord) -> ProductChain:
    """Synchronize `automaton` with `word`; keep only reachable nodes."""
    for letter in word.prefix + word.loop:
        if letter not in automaton.alphabet:
            raise ValueError(f"letter {letter!r} not in the automaton's alphabet")
    total = len(word.prefix) + len(word.loop)
    prefix_len = len(word.prefix)

    def next_position(p: int) -> int:
        return p + 1 if p + 1 < total else prefix_len

    initial = {(q, 0): p for q, p in automaton.initial.items() if p > ZERO}
    edges: dict[Node, tuple[tuple[Node, Fraction, Fraction], ...]] = {}
    frontier = list(initial)
    seen = set(frontier)
    while frontier:
        node = frontier.pop()
        q, pos = node
        letter = word.letter(pos)
        pos2 = next_position(pos)
        row = []
        for q2, (p, w) in sorted(automaton.successors(q, letter).items()):
            node2 = (q2, pos2)
            row.append((node2, p, w))
            if node2 not in seen:
                seen.add(node2)
                frontier.append(node2)
        edges[node] = tuple(row)
    nodes = tuple(sorted(seen))
    return ProductChain(nodes, edges, initial, prefix_len, len(word.loop))


@dataclass(frozen=True)
class RecurrentClass:
    """Bottom strongly connected component: strongly connected, no edge leaves."""

    nodes: frozenset[Node]
    internal_edges: tuple[tuple[Node, Node, Fraction, Fraction], ...]


def _tarjan_sccs(
    nodes: Iterable[Hashable],
    successors: Mapping[Hashable, Sequence[Hashable]],
) -> list[list[Hashable]]:
    """Iterative Tarjan; components come out with successors before predecessors."""
    index: dict[Hashable, int] = {}
    low: dict[Hashable, int] = {}
    on_stack: set[Hashable] = set()
    stack: list[Hashable] = []
    sccs: list[list[Hashable]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_at = work[-1]
            if child_at == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            succ = successors.get(node, ())
            for i in range(child_at, len(succ)):
                nxt = succ[i]
                if nxt not in index:
                    work[-1] = (node, i + 1)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                sccs.append(component)
    return sccs


def _chain_sccs(chain: ProductChain) -> list[list[Node]]:
    succ = {n: [n2 for n2, _p, _w in row] for n, row in chain.edges.items()}
    return _tarjan_sccs(chain.nodes, succ)


def bottom_sccs(chain: ProductChain) -> list[RecurrentClass]:
    """The strongly connected components with no outgoing edge.

    The chain already holds only nodes reachable from the initial
    distribution, so these are exactly the sets a run can get trapped in.
    Returned in a deterministic (sorted) order.
    """
    classes = []
    for component in _chain_sccs(chain):
        members = set(component)
        internal = []
        bottom = True
        for n in component:
            for n2, p, w in chain.edges.get(n, ()):
                if n2 in members:
                    internal.append((n, n2, p, w))
                else:
                    bottom = False
                    break
            if not bottom:
                break
        if bottom:
            classes.append(RecurrentClass(frozenset(members), tuple(sorted(internal))))
    classes.sort(key=lambda c: sorted(c.nodes))
    return classes


def absorption_probabilities(
    chain: ProductChain, classes: Sequence[RecurrentClass]
) -> dict[RecurrentClass, Fraction]:
    """Exact probability of ending up in each recurrent class.

    For transient nodes this is the usual linear system p(n) = sum of
    edge-probability times p(successor); the system is solved per strongly
    connected block of the transient part, in dependency order, so each
    exact solve stays small.  The probabilities sum to exactly 1.
    """
    k = len(classes)
    member_of: dict[Node, int] = {}
    for i, cls in enumerate(classes):
        for n in cls.nodes:
            member_of[n] = i

    # values[n] = vector of absorption probabilities into each class
    values: dict[Node, list[Fraction]] = {}
    for n, i in member_of.items():
        values[n] = [ONE if j == i else ZERO for j in range(k)]

    for component in _chain_sccs(chain):
        if component[0] in member_of:
            continue
        block = sorted(set(component))
        position = {n: i for i, n in enumerate(block)}
        size = len(block)
        matrix = [[ONE if r == c else ZERO for c in range(size)] for r in range(size)]
        rhs = [[ZERO] * size for _ in range(k)]
        for n in block:
            r = position[n]
            for n2, p, _w in chain.edges.get(n, ()):
                if n2 in position:
                    matrix[r][position[n2]] -= p
                else:
                    outside = values[n2]  # Tarjan order: successors already solved
                    for j in range(k):
                        rhs[j][r] += p * outside[j]
        solved = solve_unique(matrix, rhs)
        for n in block:
            values[n] = [solved[j][position[n]] for j in range(k)]

    result = {cls: ZERO for cls in classes}
    for n, p in chain.initial.items():
        vec = values[n]
        for i, cls in enumerate(classes):
            result[cls] += p * vec[i]
    total = sum(result.values(), ZERO)
    if total != ONE:
        raise AssertionError(f"absorption probabilities sum to {total}, not 1")
    return result


def stationary_distribution(cls: RecurrentClass) -> dict[Node, Fraction]:
    """The unique pi with pi = pi P on a recurrent class, solved exactly.

    Irreducibility comes with the bottom-SCC precondition, so the solution
    exists, is unique, and has strictly positive entries.
    """
    order = sorted(cls.nodes)
    position = {n: i for i, n in enumerate(order)}
    size = len(order)
    # rows: (P^T - I) pi = 0, plus the normalization sum(pi) = 1
    rows = [[ZERO] * size for _ in range(size + 1)]
    for i in range(size):
        rows[i][i] = -ONE
    for n, n2, p, _w in cls.internal_edges:
        rows[position[n2]][position[n]] += p
    rows[size] = [ONE] * size
    rhs = [ZERO] * size + [ONE]
    (solution,) = solve_unique(rows, [rhs])
    return {n: solution[position[n]] for n in order}


def class_value(
    valfn: ValueFunction,
    cls: RecurrentClass,
    stationary: Mapping[Node, Fraction],
) -> Fraction:
    """Value that almost every run trapped in `cls` attains.

    Once inside a recurrent class a run traverses every internal edge
    infinitely often with probability 1, so limsup (liminf) is the largest
    (smallest) internal weight, and the limit average is the stationary
    per-step expected weight (ergodic theorem for irreducible finite
    chains).
    """
    if valfn.kind not in LIMIT_KINDS:
        raise ValueError(f"{valfn.kind.value} has no per-class value; handled elsewhere")
    weights = [w for *_e, w in cls.internal_edges]
    if valfn.kind is ValueKind.LIMSUP:
        return max(weights)
    if valfn.kind is ValueKind.LIMINF:
        return min(weights)
    per_node: dict[Node, Fraction] = {n: ZERO for n in cls.nodes}
    for n, _n2, p, w in cls.internal_edges:
        per_node[n] += p * w
    return sum((stationary[n] * per_node[n] for n in cls.nodes), ZERO)


@dataclass(frozen=True)
class ValueDistribution:
    """Finite law of the run value over a word: value -> probability."""

    atoms: Mapping[Fraction, Fraction]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("a value distribution needs at least one atom")
        if any(p <= ZERO for p in self.atoms.values()):
            raise ValueError("atom probabilities must be strictly positive")
        if sum(self.atoms.values(), ZERO) != ONE:
            raise ValueError("atom probabilities must sum to exactly 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Fraction, Fraction]]) -> "ValueDistribution":
        merged: dict[Fraction, Fraction] = {}
        for value, p in pairs:
            if p > ZERO:
                merged[value] = merged.get(value, ZERO) + p
        return cls(merged)

    def max_value(self) -> Fraction:
        return max(self.atoms)

    def min_value(self) -> Fraction:
        return min(self.atoms)

    def tail_probability(self, threshold: Fraction) -> Fraction:
        """Probability that the run value is >= threshold."""
        return sum((p for v, p in self.atoms.items() if v >= threshold), ZERO)
