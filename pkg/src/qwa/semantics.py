"""Value of a lasso word under the four run-aggregation semantics.

For the limit value functions (limsup, liminf, limit average) the law of
the run value over a fixed lasso word is a finite atomic distribution: each
run is absorbed in some recurrent class of the word's product chain, and
almost every run absorbed in a class attains that class's value.  The
positive semantics reads off the largest atom, the almost-sure semantics
the smallest.  The nondeterministic / universal semantics ignore the
probabilities and optimize over the infinite paths of the support product.
Sup and the discounted sum get their own exact procedures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    LIMIT_KINDS,
    ZERO,
    LassoWord,
    Semantics,
    ValueFunction,
    ValueKind,
    WeightedAutomaton,
)
from .decide import optimal_discounted_value
from .markov import (
    Node,
    ProductChain,
    ValueDistribution,
    _tarjan_sccs,
    absorption_probabilities,
    bottom_sccs,
    build_product,
    class_value,
    stationary_distribution,
)


@dataclass(frozen=True)
class EvaluationRequest:
    """Bundle of automaton, value function, semantics and word."""

    automaton: WeightedAutomaton
    valfn: ValueFunction
    semantics: Semantics
    word: LassoWord

    def run(self) -> Fraction:
        return evaluate(self.automaton, self.valfn, self.semantics, self.word)


def value_distribution(
    automaton: WeightedAutomaton, valfn: ValueFunction, word: LassoWord
) -> ValueDistribution:
    """Exact law of the run value over `word` (limit value functions only)."""
    if valfn.kind not in LIMIT_KINDS:
        raise ValueError(
            f"the run-value law is finite only for limit value functions, not {valfn.kind.value}"
        )
    chain = build_product(automaton, word)
    return _limit_distribution(chain, valfn)


def _limit_distribution(chain: ProductChain, valfn: ValueFunction) -> ValueDistribution:
    classes = bottom_sccs(chain)
    absorbed = absorption_probabilities(chain, classes)
    pairs = []
    for cls in classes:
        stationary = stationary_distribution(cls) if valfn.kind is ValueKind.LIMAVG else {}
        pairs.append((class_value(valfn, cls, stationary), absorbed[cls]))
    return ValueDistribution.from_pairs(pairs)


def evaluate(
    automaton: WeightedAutomaton,
    valfn: ValueFunction,
    semantics: Semantics,
    word: LassoWord,
) -> Fraction:
    """The word's value under the chosen value function and semantics."""
    chain = build_product(automaton, word)
    kind = valfn.kind
    angelic = semantics in (Semantics.POSITIVE, Semantics.NONDETERMINISTIC)

    if kind in LIMIT_KINDS:
        if semantics is Semantics.POSITIVE:
            return _limit_distribution(chain, valfn).max_value()
        if semantics is Semantics.ALMOST_SURE:
            return _limit_distribution(chain, valfn).min_value()
        return _best_cycle_value(chain, kind, maximize=angelic)

    if kind is ValueKind.SUP:
        if angelic:
            # a positive-probability finite prefix witnesses any reachable weight
            return max(w for _n, _n2, _p, w in chain.edge_list())
        if semantics is Semantics.UNIVERSAL:
            return _universal_sup(chain)
        return _almost_sure_sup(chain)

    # discounted sum: the essential sup/inf over runs is the optimal value of
    # the support product with free choice of successors
    choices = {
        n: [(n2, w) for n2, _p, w in row] for n, row in chain.edges.items()
    }
    mode = "max" if angelic else "min"
    values = optimal_discounted_value(choices, valfn.discount, mode)
    pick = max if mode == "max" else min
    return pick(values[n] for n in chain.initial)


# --- optimization over the infinite paths of the support product ---


def _scc_components(chain: ProductChain) -> list[tuple[list[Node], list[tuple[Node, Node, Fraction]]]]:
    """SCCs of the support product with their internal weighted edges."""
    succ = {n: [n2 for n2, _p, _w in row] for n, row in chain.edges.items()}
    out = []
    for component in _tarjan_sccs(chain.nodes, succ):
        members = set(component)
        internal = [
            (n, n2, w)
            for n in component
            for n2, _p, w in chain.edges.get(n, ())
            if n2 in members
        ]
        out.append((component, internal))
    return out


def _subgraph_has_cycle(nodes: tuple[Node, ...], edges: list[tuple[Node, Node]]) -> bool:
    succ: dict[Node, list[Node]] = {}
    for n, n2 in edges:
        succ.setdefault(n, []).append(n2)
    for component in _tarjan_sccs(nodes, succ):
        members = set(component)
        for n in component:
            if any(n2 in members for n2 in succ.get(n, ())):
                return True
    return False


def _max_mean_cycle(component: list[Node], internal: list[tuple[Node, Node, Fraction]]) -> Fraction:
    """Largest cycle mean inside one strongly connected component (Karp)."""
    n = len(component)
    source = component[0]
    best_by_len: list[dict[Node, Fraction]] = [dict() for _ in range(n + 1)]
    best_by_len[0][source] = ZERO
    for k in range(1, n + 1):
        row = best_by_len[k]
        prev = best_by_len[k - 1]
        for u, v, w in internal:
            if u in prev:
                candidate = prev[u] + w
                if v not in row or candidate > row[v]:
                    row[v] = candidate
    best: Fraction | None = None
    for v, d_n in best_by_len[n].items():
        worst: Fraction | None = None
        for k in range(n):
            if v in best_by_len[k]:
                ratio = (d_n - best_by_len[k][v]) / (n - k)
                if worst is None or ratio < worst:
                    worst = ratio
        if worst is not None and (best is None or worst > best):
            best = worst
    assert best is not None, "strongly connected component without a cycle"
    return best


def _best_cycle_value(chain: ProductChain, kind: ValueKind, maximize: bool) -> Fraction:
    """Optimal run value over all infinite paths of the support product.

    An infinite path eventually traverses exactly the edges of some
    strongly connected edge set, so the optimum ranges over the reachable
    cycles: limsup picks the best max-edge cycle, liminf the best
    bottleneck cycle, the limit average the best mean cycle.
    """
    components = [(c, e) for c, e in _scc_components(chain) if e]
    assert components, "total transitions guarantee a reachable cycle"

    if kind is ValueKind.LIMAVG:
        means = [_max_mean_cycle(c, e) for c, e in components]
        if maximize:
            return max(means)
        neg = [
            _max_mean_cycle(c, [(u, v, -w) for u, v, w in e]) for c, e in components
        ]
        return min(-m for m in neg)

    internal_weights = [w for _c, edges in components for *_e, w in edges]
    if kind is ValueKind.LIMSUP and maximize:
        return max(internal_weights)
    if kind is ValueKind.LIMINF and not maximize:
        return min(internal_weights)

    # bottleneck cases: best threshold whose one-sided subgraph still has a cycle
    all_edges = [(n, n2, w) for n, n2, _p, w in chain.edge_list()]
    thresholds = sorted(set(internal_weights), reverse=kind is ValueKind.LIMINF)
    for theta in thresholds:
        if kind is ValueKind.LIMINF:
            kept = [(n, n2) for n, n2, w in all_edges if w >= theta]
        else:
            kept = [(n, n2) for n, n2, w in all_edges if w <= theta]
        if _subgraph_has_cycle(chain.nodes, kept):
            return theta
    raise AssertionError("no threshold admits a cycle; chain cannot be total")


def _universal_sup(chain: ProductChain) -> Fraction:
    """Min over infinite paths from the initial nodes of their largest weight.

    Ascending sweep: the answer is the least weight theta such that some
    initial node starts an infinite path using only edges of weight <= theta
    (peel nodes without low successors until a fixpoint).
    """
    edges = chain.edge_list()
    for theta in sorted({w for *_e, w in edges}):
        succ: dict[Node, set[Node]] = {n: set() for n in chain.nodes}
        pred: dict[Node, set[Node]] = {n: set() for n in chain.nodes}
        for n, n2, _p, w in edges:
            if w <= theta:
                succ[n].add(n2)
                pred[n2].add(n)
        alive = set(chain.nodes)
        queue = [n for n in chain.nodes if not succ[n]]
        while queue:
            dead = queue.pop()
            if dead not in alive:
                continue
            alive.discard(dead)
            for p in pred[dead]:
                if p in alive:
                    succ[p].discard(dead)
                    if not succ[p]:
                        queue.append(p)
        if any(n in alive for n in chain.initial):
            return theta
    raise AssertionError("total transitions guarantee an infinite path")


def _almost_sure_sup(chain: ProductChain) -> Fraction:
    """Largest weight eta hit with probability 1: sup of the run-sup law's support.

    A run avoids all edges of weight >= eta forever exactly when it can
    reach, through low edges only, a recurrent class whose every edge is
    low; whether that happens with positive probability is a pure support
    question, so one reachability check per candidate threshold suffices.
    """
    classes = bottom_sccs(chain)
    for eta in sorted({w for *_e, w in chain.edge_list()}, reverse=True):
        safe_targets = {
            n
            for cls in classes
            if all(w < eta for *_e, w in cls.internal_edges)
            for n in cls.nodes
        }
        frontier = [n for n in chain.initial]
        seen = set(frontier)
        escapes = False
        while frontier:
            n = frontier.pop()
            if n in safe_targets:
                escapes = True
                break
            for n2, _p, w in chain.edges.get(n, ()):
                if w < eta and n2 not in seen:
                    seen.add(n2)
                    frontier.append(n2)
        if not escapes:
            return eta
    raise AssertionError("the smallest reachable weight is hit almost surely")
