"""The autocorrelation of a small-doubling set has a gap above zero.

f(x) = |A ∩ xA| / |A| is supported on A A^-1 and, whenever
|A^-1 A| <= (2-e)|A|, never takes values in (0, e).  Averaging f by a
set S (twice) preserves its mass while flattening it; thresholding the
smoothed function recovers coset-like level sets.
"""

from fractions import Fraction

from smalldoubling import (
    autocorrelation,
    cyclic,
    gap_check,
    level_set,
    rational_str,
    smoothed,
    symmetric,
)


def show(f):
    return "[" + ", ".join(rational_str(v) for v in f.values) + "]"


Z8 = cyclic(8)
A = Z8.subset([0, 1])
f = autocorrelation(Z8, A)
print(f"Z8, A = {A.elements()}: f = {show(f)} (mass {f.mass})")

rep = gap_check(Z8, A)
print(
    f"  epsilon* = {rep.epsilon_star}, min of f on support {rep.support.elements()} "
    f"is {rep.min_on_support}: gap holds = {rep.gap_holds}"
)

print("\nGap survey over a few sets:")
for G, elems in ((Z8, [0, 1, 2]), (cyclic(12), [0, 4, 8]), (symmetric(3), [0, 2, 3])):
    rep = gap_check(G, G.subset(elems))
    status = "vacuous" if rep.hypothesis_vacuous else f"gap >= {rep.epsilon_star}"
    print(f"  {G.name} A={tuple(elems)}: |A^-1 A|/|A| = {2 - rep.epsilon_star}, {status}")

print("\nSmoothing spreads f out but keeps its mass:")
F = smoothed(Z8, A, f)
print(f"  F = (1/|S|)1_S * (1/|S|)1_S * f with S = {A.elements()}: {show(F)} (mass {F.mass})")
for threshold in (Fraction(1, 8), Fraction(1, 3), Fraction(2, 3)):
    print(f"  level set F > {threshold}: {level_set(Z8, F, threshold).elements()}")
