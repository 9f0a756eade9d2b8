"""Bundled example machines and two independent verification oracles.

The fixtures are small machines exercising every corner of the library:
two channel specifications with costs, a finitely-many-a's recognizer, an
infinitely-many-a's recognizer, a vanishing-survival machine, and two
single-letter counters.  The Monte-Carlo sampler checks the exact engine
statistically; the lasso enumerator supports brute-force word searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .core import (
    LassoWord,
    ONE,
    Semantics,
    ValueFunction,
    ValueKind,
    WeightedAutomaton,
    ZERO,
    rat,
)
from .markov import build_product

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Fixture:
    name: str
    automaton: WeightedAutomaton
    value_function: ValueFunction
    semantics: Semantics
    description: str


def _channel(send_cost, ok_prob, ok_cost, fail_cost) -> WeightedAutomaton:
    ok, fail = rat(ok_prob), ONE - rat(ok_prob)
    return WeightedAutomaton.make(
        ["q0", "q1", "q2"],
        ["send", "ack"],
        {"q0": 1},
        {
            ("q0", "send"): {"q1": (ok, send_cost), "q2": (fail, send_cost)},
            ("q0", "ack"): {"q0": (1, 0)},
            ("q1", "ack"): {"q0": (1, ok_cost)},
            ("q1", "send"): {"q1": (1, 0)},
            ("q2", "ack"): {"q0": (1, fail_cost)},
            ("q2", "send"): {"q2": (1, 0)},
        },
    )


def _finitely_many_a() -> WeightedAutomaton:
    return WeightedAutomaton.from_state_weights(
        ["q0", "q1", "sink"],
        ["a", "b"],
        {"q0": 1},
        {
            ("q0", "a"): {"q0": HALF, "q1": HALF},
            ("q0", "b"): {"q0": HALF, "q1": HALF},
            ("q1", "a"): {"sink": 1},
            ("q1", "b"): {"q1": 1},
            ("sink", "a"): {"sink": 1},
            ("sink", "b"): {"sink": 1},
        },
        {"q0": 0, "q1": 1, "sink": 0},
    )


def _infinitely_many_a() -> WeightedAutomaton:
    return WeightedAutomaton.from_state_weights(
        ["q0", "sink"],
        ["a", "b"],
        {"q0": 1},
        {
            ("q0", "a"): {"q0": HALF, "sink": HALF},
            ("q0", "b"): {"q0": 1},
            ("sink", "a"): {"sink": 1},
            ("sink", "b"): {"sink": 1},
        },
        {"q0": 0, "sink": 1},
    )


def _vanishing_survival() -> WeightedAutomaton:
    return WeightedAutomaton.from_state_weights(
        ["q0", "q1", "sink"],
        ["a", "b"],
        {"q0": 1},
        {
            ("q0", "a"): {"q0": HALF, "q1": HALF},
            ("q0", "b"): {"sink": 1},
            ("q1", "a"): {"q1": 1},
            ("q1", "b"): {"q0": 1},
            ("sink", "a"): {"sink": 1},
            ("sink", "b"): {"sink": 1},
        },
        {"q0": 1, "q1": 1, "sink": 0},
    )


def _letter_counter(counted: str) -> WeightedAutomaton:
    weights = {a: (1 if a == counted else 0) for a in ("a", "b")}
    return WeightedAutomaton.make(
        ["q"],
        ["a", "b"],
        {"q": 1},
        {("q", a): {"q": (1, weights[a])} for a in ("a", "b")},
    )


def _build_fixtures() -> dict[str, Fixture]:
    entries = [
        Fixture(
            "fig1_low",
            _channel(1, "9/10", 2, 5),
            ValueFunction.limavg(),
            Semantics.POSITIVE,
            "cheap channel: send costs 1, failures (1/10) cost 5 to recover",
        ),
        Fixture(
            "fig1_high",
            _channel(5, "99/100", 1, 20),
            ValueFunction.limavg(),
            Semantics.POSITIVE,
            "reliable channel: send costs 5, failures (1/100) cost 20 to recover",
        ),
        Fixture(
            "fig2_LF",
            _finitely_many_a(),
            ValueFunction.limavg(),
            Semantics.POSITIVE,
            "positive limavg 1 exactly on words with finitely many a's",
        ),
        Fixture(
            "fig3_LI",
            _infinitely_many_a(),
            ValueFunction.limavg(),
            Semantics.ALMOST_SURE,
            "almost-sure limavg 1 exactly on words with infinitely many a's",
        ),
        Fixture(
            "fig4_Lz",
            _vanishing_survival(),
            ValueFunction.limavg(),
            Semantics.POSITIVE,
            "survival probability vanishes unless the a-blocks grow; works for "
            "positive limavg, limsup and liminf alike",
        ),
        Fixture(
            "da_counter",
            _letter_counter("a"),
            ValueFunction.limavg(),
            Semantics.ALMOST_SURE,
            "deterministic long-run density of the letter a",
        ),
        Fixture(
            "db_counter",
            _letter_counter("b"),
            ValueFunction.limavg(),
            Semantics.ALMOST_SURE,
            "deterministic long-run density of the letter b",
        ),
    ]
    return {f.name: f for f in entries}


_FIXTURES = _build_fixtures()
FIXTURE_NAMES = tuple(_FIXTURES)


def fixture(name: str) -> Fixture:
    """Look up a bundled machine by name; KeyError lists the known names."""
    try:
        return _FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None


# --- Monte-Carlo sampling ---
#
# The generator is SplitMix64, fixed here so reports reproduce bit-for-bit
# on any platform: stream i draws its k-th value as
#     mix64(base(i) + (k+1) * GOLDEN)   with   base(i) = mix64(seed + (i+1) * GOLDEN)
# where GOLDEN = 0x9E3779B97F4A7C15 and mix64 is the SplitMix64 finalizer.
# Successors are selected by comparing the draw against floor(cum * 2^64).

GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class SampleReport:
    """Reproducible summary of sampled runs at a finite horizon."""

    samples: int
    horizon: int
    seed: int
    empirical_mean: float
    at_or_above: dict[Fraction, float]

    def as_block(self) -> str:
        lines = [
            f"samples={self.samples}",
            f"horizon={self.horizon}",
            f"seed={self.seed}",
            f"empirical_mean={self.empirical_mean!r}",
        ]
        for threshold in sorted(self.at_or_above):
            lines.append(f"at_or_above[{threshold}]={self.at_or_above[threshold]!r}")
        return "\n".join(lines)


def monte_carlo(
    automaton: WeightedAutomaton,
    valfn: ValueFunction,
    word: LassoWord,
    horizon: int,
    samples: int,
    seed: int,
    thresholds: Sequence[Fraction] | None = None,
) -> SampleReport:
    """Sample runs over `word` and summarize a horizon-truncated statistic.

    The statistic approximates the run value: the mean over the second half
    of the horizon for the limit average, the max/min over the second half
    for limsup/liminf (the first half is burn-in for the transient), the max
    over the whole horizon for sup, and the discounted partial sum for disc.
    Statistics are exact fractions; `thresholds` selects which exact tail
    frequencies the report carries (defaults to the automaton's weights).
    """
    if horizon < len(word.prefix) + len(word.loop):
        raise ValueError("horizon must cover at least one full loop")
    if samples < 1:
        raise ValueError("need at least one sample")
    chain = build_product(automaton, word)
    if thresholds is None:
        thresholds = automaton.weight_values()

    nodes = list(chain.nodes)
    node_id = {n: i for i, n in enumerate(nodes)}
    weights = sorted({w for *_e, w in chain.edge_list()})
    weight_id = {w: i for i, w in enumerate(weights)}

    # per node: successor ids, per-edge weight ids, and u64 selection cuts
    succ_ids, succ_w, cuts = [], [], []
    for n in nodes:
        row = chain.edges[n]
        succ_ids.append(np.array([node_id[n2] for n2, _p, _w in row], dtype=np.int64))
        succ_w.append(np.array([weight_id[w] for _n2, _p, w in row], dtype=np.int64))
        acc = ZERO
        cut = []
        for _n2, p, _w in row[:-1]:
            acc += p
            cut.append((acc.numerator << 64) // acc.denominator)
        cuts.append(np.array(cut, dtype=np.uint64))
    init_row = sorted(chain.initial.items())
    init_ids = np.array([node_id[n] for n, _p in init_row], dtype=np.int64)
    acc = ZERO
    init_cut = []
    for _n, p in init_row[:-1]:
        acc += p
        init_cut.append((acc.numerator << 64) // acc.denominator)
    init_cuts = np.array(init_cut, dtype=np.uint64)

    golden = np.uint64(GOLDEN)
    offsets = np.arange(1, samples + 1, dtype=np.uint64) * golden
    base = _mix64_np(np.uint64(seed & _MASK) + offsets)

    def draw(step: int) -> np.ndarray:
        return _mix64_np(base + np.uint64(((step + 1) * GOLDEN) & _MASK))

    current = init_ids[np.searchsorted(init_cuts, draw(0), side="right")]
    burn_in = horizon // 2
    head_counts = np.zeros((samples, len(weights)), dtype=np.int64)
    tail_counts = np.zeros((samples, len(weights)), dtype=np.int64)
    disc_rows = []  # per-step weight ids, only kept for the discounted sum
    rows = np.arange(samples)

    for step in range(horizon):
        u = draw(step + 1)
        step_w = np.zeros(samples, dtype=np.int64)
        nxt = np.empty(samples, dtype=np.int64)
        for i in np.unique(current):
            mask = current == i
            pick = np.searchsorted(cuts[i], u[mask], side="right")
            nxt[mask] = succ_ids[i][pick]
            step_w[mask] = succ_w[i][pick]
        current = nxt
        if valfn.kind is ValueKind.DISC:
            disc_rows.append(step_w)
        target = tail_counts if step >= burn_in else head_counts
        target[rows, step_w] += 1

    stats = _statistics(valfn, weights, head_counts, tail_counts, disc_rows, horizon, burn_in)
    mean = sum(stats, ZERO) / samples
    report_freq = {
        rat(t): sum(1 for s in stats if s >= t) / samples for t in thresholds
    }
    return SampleReport(samples, horizon, seed, float(mean), report_freq)


def _statistics(valfn, weights, head_counts, tail_counts, disc_rows, horizon, burn_in):
    samples = tail_counts.shape[0]
    kind = valfn.kind
    stats: list[Fraction] = []
    if kind is ValueKind.DISC:
        lam = valfn.discount
        powers = [lam**t for t in range(horizon)]
        matrix = np.stack(disc_rows, axis=1)  # samples x horizon of weight ids
        for s in range(samples):
            stats.append(sum(powers[t] * weights[matrix[s, t]] for t in range(horizon)))
        return stats
    window = horizon - burn_in
    for s in range(samples):
        tail = tail_counts[s]
        if kind is ValueKind.LIMAVG:
            total = sum((weights[i] * int(c) for i, c in enumerate(tail)), ZERO)
            stats.append(total / window)
        elif kind is ValueKind.LIMSUP:
            stats.append(max(weights[i] for i in range(len(weights)) if tail[i]))
        elif kind is ValueKind.LIMINF:
            stats.append(min(weights[i] for i in range(len(weights)) if tail[i]))
        elif kind is ValueKind.SUP:
            head = head_counts[s]
            stats.append(
                max(weights[i] for i in range(len(weights)) if tail[i] or head[i])
            )
        else:
            raise ValueError(f"unsupported value function {kind.value}")
    return stats


def enumerate_lassos(
    letters: Sequence[str], max_prefix: int, max_loop: int
) -> Iterator[LassoWord]:
    """Every lasso with |prefix| <= max_prefix and 1 <= |loop| <= max_loop.

    Produced exactly once each, ordered by prefix length, then loop length,
    then letter indices.
    """
    if max_loop < 1:
        raise ValueError("need max_loop >= 1")
    if max_prefix < 0:
        raise ValueError("need max_prefix >= 0")

    def words(length: int) -> Iterator[tuple[str, ...]]:
        if length == 0:
            yield ()
            return
        for shorter in words(length - 1):
            for a in letters:
                yield shorter + (a,)

    for plen in range(max_prefix + 1):
        for prefix in words(plen):
            for llen in range(1, max_loop + 1):
                for loop in words(llen):
                    yield LassoWord(prefix, loop)
