#!/usr/bin/env python3
"""Building new quantitative languages: max, min, sum, and acceptance changes."""

from fractions import Fraction

from qwa import (
    AcceptanceKind,
    LassoWord,
    Semantics,
    ValueFunction,
    cobuchi_to_buchi_positive,
    evaluate,
    fixture,
    initial_choice,
    limsup_sum,
    synchronized_product,
    threshold_boolean,
)

POS, AS = Semantics.POSITIVE, Semantics.ALMOST_SURE
lf = fixture("fig2_LF").automaton  # positive limavg: 1 iff finitely many a's
lz = fixture("fig4_Lz").automaton  # positive limsup: 1 iff survival doesn't vanish

word = LassoWord((), ("b",))
both = initial_choice(lf, lz)
print("initial choice takes the pointwise max under the positive semantics:")
print(
    f"  on {word}: operands {evaluate(lf, ValueFunction.limavg(), POS, word)}, "
    f"{evaluate(lz, ValueFunction.limavg(), POS, word)} -> combined "
    f"{evaluate(both, ValueFunction.limavg(), POS, word)} "
    f"({len(both.states)} states)"
)

prod = synchronized_product(lf, lz, "max")
print(
    f"synchronized max product, almost-sure limsup on {word}: "
    f"{evaluate(prod, ValueFunction.limsup(), AS, word)} ({len(prod.states)} states)"
)

doubled = limsup_sum(lz, lz)
for loop in (("a",), ("a", "b")):
    w = LassoWord((), loop)
    print(
        f"limsup sum of the survival machine with itself on {w}: "
        f"{evaluate(doubled, ValueFunction.limsup(), POS, w)}"
    )

print()
boolean = threshold_boolean(lf, Fraction(1), AcceptanceKind.COBUCHI)
print(f"thresholding at 1 gives a coBuchi automaton accepting in {boolean.accepting_states}")
buchi = cobuchi_to_buchi_positive(boolean)
w = LassoWord((), ("b",))
print(
    f"the doubling construction turns it into a Buchi automaton "
    f"({len(buchi.automaton.states)} states) with the same positive language:"
)
print(
    f"  on {w}: coBuchi accepts = "
    f"{evaluate(boolean.automaton, ValueFunction.liminf(), POS, w) == 1}, "
    f"Buchi accepts = {evaluate(buchi.automaton, ValueFunction.limsup(), POS, w) == 1}"
)
