"""Shared random generators for differential and property tests."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qwa import LassoWord, WeightedAutomaton


def random_probs(rng: random.Random, k: int, max_den: int = 8) -> list[Fraction]:
    """k strictly positive rationals with common denominator <= max_den, summing to 1."""
    assert 1 <= k <= max_den
    den = rng.randint(k, max_den)
    cuts = sorted(rng.sample(range(1, den), k - 1)) if k > 1 else []
    parts, prev = [], 0
    for cut in cuts + [den]:
        parts.append(cut - prev)
        prev = cut
    return [Fraction(p, den) for p in parts]


def random_automaton(
    rng: random.Random,
    max_states: int = 4,
    letters: tuple[str, ...] = ("a", "b"),
    weight_pool: tuple = (0, 1, 2),
    dirac: bool | None = None,
    state_weights: bool = False,
) -> WeightedAutomaton:
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    per_state = {q: Fraction(rng.choice(weight_pool)) for q in states}
    transitions = {}
    for q in states:
        for a in letters:
            k = rng.randint(1, n)
            succ = rng.sample(states, k)
            probs = random_probs(rng, k)
            transitions[(q, a)] = {
                q2: (p, per_state[q] if state_weights else Fraction(rng.choice(weight_pool)))
                for q2, p in zip(succ, probs)
            }
    if dirac is None:
        dirac = rng.random() < 0.5
    if dirac:
        initial = {rng.choice(states): Fraction(1)}
    else:
        k = rng.randint(1, n)
        initial = dict(zip(rng.sample(states, k), random_probs(rng, k)))
    return WeightedAutomaton.make(states, letters, initial, transitions)


def random_lasso(
    rng: random.Random,
    letters: tuple[str, ...] = ("a", "b"),
    max_prefix: int = 4,
    max_loop: int = 4,
) -> LassoWord:
    plen = rng.randint(0, max_prefix)
    llen = rng.randint(1, max_loop)
    return LassoWord(
        tuple(rng.choice(letters) for _ in range(plen)),
        tuple(rng.choice(letters) for _ in range(llen)),
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
