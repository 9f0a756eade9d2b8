#!/usr/bin/env python3
"""Threshold emptiness and universality: what is decidable, and deciding it."""

from fractions import Fraction

from qwa import (
    Problem,
    Semantics,
    ValueFunction,
    ValueKind,
    classification_table,
    closure_table,
    decide_disc,
    explain_sup,
    fixture,
    optimal_discounted_value,
)

print("decidability of 'some/every word reaches value >= nu':")
print(f"{'class':>12}  {'emptiness':>12}  {'universality':>12}")
table = {(e.value_kind, e.semantics, e.problem): e for e in classification_table()}
for sem in (Semantics.POSITIVE, Semantics.ALMOST_SURE):
    for kind in ValueKind:
        empt = table[(kind, sem, Problem.EMPTINESS)]
        univ = table[(kind, sem, Problem.UNIVERSALITY)]
        tag = lambda e: e.status.value + ("*" if e.note else "")
        print(f"{sem.value + kind.value:>12}  {tag(empt):>12}  {tag(univ):>12}")
print("(* the universality problem for nondeterministic discounted sum reduces here)")

print()
low = fixture("fig1_low").automaton
for nu in (Fraction(5), Fraction(6)):
    holds, witness = explain_sup(low, Semantics.POSITIVE, Problem.EMPTINESS, nu)
    text = f"witness {witness}" if witness else "no witness"
    print(f"cheap channel, sup >= {nu} on some word: {'SAT' if holds else 'UNSAT'} ({text})")

print()
print("discounted optimization on the cheap channel's support graph (lambda=1/2):")
values = optimal_discounted_value(
    {
        q: [
            (q2, w)
            for a in low.alphabet
            for q2, (_p, w) in sorted(low.successors(q, a).items())
        ]
        for q in low.states
    },
    Fraction(1, 2),
    "max",
)
for q in low.states:
    print(f"  best discounted value from {q}: {values[q]}")
best = values["q0"]
disc = ValueFunction.disc("1/2")
print(
    f"emptiness at the optimum ({best}) is "
    f"{'SAT' if decide_disc(low, disc, Semantics.POSITIVE, Problem.EMPTINESS, best) else 'UNSAT'}, "
    f"just above it "
    f"{'SAT' if decide_disc(low, disc, Semantics.POSITIVE, Problem.EMPTINESS, best + Fraction(1, 1000)) else 'UNSAT'}"
)

print()
print("closure of each class under pointwise operations (None = open):")
for (kind, sem), row in closure_table().items():
    flags = "  ".join(f"{op}={str(v)[0]}" for op, v in row.items())
    print(f"  {sem.value + kind.value:>12}: {flags}")
