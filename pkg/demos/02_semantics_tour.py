#!/usr/bin/env python3
"""The four semantics on one word, and the run-value law behind them.

A machine's runs over a fixed word form a probability space; positive and
almost-sure semantics read the top and bottom of the run-value law, while
the nondeterministic/universal semantics ignore probability and optimize
over the support runs.
"""

from qwa import (
    LassoWord,
    Semantics,
    ValueFunction,
    WeightedAutomaton,
    evaluate,
    fixture,
    value_distribution,
)

li = fixture("fig3_LI").automaton  # almost-surely sees value 1 iff infinitely many a's
for loop in (("a",), ("b",), ("a", "b")):
    word = LassoWord((), loop)
    dist = value_distribution(li, ValueFunction.limavg(), word)
    values = {
        s.value: evaluate(li, ValueFunction.limavg(), s, word) for s in Semantics
    }
    atoms = {str(v): str(p) for v, p in sorted(dist.atoms.items())}
    print(f"word {word}:  law {atoms}")
    print(f"  pos={values['pos']}  as={values['as']}  nd={values['nd']}  univ={values['univ']}")

print()
print("a word where the run law has two atoms (the first letter decides):")
word = LassoWord(("a",), ("b",))
dist = value_distribution(li, ValueFunction.limavg(), word)
print(f"  word {word}:  law {{ {', '.join(f'{v}: {p}' for v, p in sorted(dist.atoms.items()))} }}")

print()
print("almost-sure sup can exceed the worst support run:")
leaky = WeightedAutomaton.make(
    ["stay", "done"],
    ["b"],
    {"stay": 1},
    {
        ("stay", "b"): {"stay": ("1/2", 0), "done": ("1/2", 1)},
        ("done", "b"): {"done": (1, 0)},
    },
)
word = LassoWord((), ("b",))
print("  P(eventually cross the weight-1 edge) = 1, but one run loops low forever:")
for s in (Semantics.ALMOST_SURE, Semantics.UNIVERSAL):
    print(f"  {s.value:>5} sup = {evaluate(leaky, ValueFunction.sup(), s, word)}")
