#!/usr/bin/env python3
"""Monte-Carlo sampling against the exact run-value law."""

from fractions import Fraction

from qwa import LassoWord, ValueFunction, fixture, monte_carlo, value_distribution

li = fixture("fig3_LI").automaton
margin = Fraction(1, 100)

for word in (LassoWord((), ("a", "b")), LassoWord(("a",), ("b",))):
    dist = value_distribution(li, ValueFunction.limavg(), word)
    atoms = ", ".join(f"{v} w.p. {p}" for v, p in sorted(dist.atoms.items()))
    print(f"word {word}:  exact law: {atoms}")
    report = monte_carlo(
        li,
        ValueFunction.limavg(),
        word,
        horizon=1000,
        samples=10_000,
        seed=7,
        thresholds=[eta - margin for eta in dist.atoms],
    )
    for eta in sorted(dist.atoms):
        print(
            f"  sampled P(average >= {eta} - 1/100) = {report.at_or_above[eta - margin]:.4f}"
            f"   (exact tail {float(dist.tail_probability(eta)):.4f})"
        )
    print(f"  sampled mean {report.empirical_mean:.4f}")
    twin = monte_carlo(
        li, ValueFunction.limavg(), word, 1000, 10_000, 7,
        thresholds=[eta - margin for eta in dist.atoms],
    )
    print(f"  re-run with the same seed is bit-identical: {twin == report}")
    print()
