"""Hidden-variable values: the factor table, closed forms, and searches.

A local-realistic model assigns each observable a cube root of unity; the
magnitude of the operator value depends only on the per-site ratios, and
factorizes through the three per-site sums whose magnitudes are always a
permutation of A ~ 2.532, B ~ 1.347, C ~ 0.879.
"""

from qudit_mermin import (
    exhaustive_search,
    factor_table,
    ghz_contradiction_count,
    max_equals_uniform,
    permutation_class_max,
    uniform_value,
    violation_ratio,
)

# ---- the per-site factor table ----------------------------------------------

print("Factor table (A, B, C columns; phases in degrees):")
print(f"{'R':>4} {'S':>4} {'A':>8} {'B':>8} {'C':>8}")
symbols = ("1", "w", "w^2")
for row in factor_table():
    texts = [entry.text for entry in row.entries]
    print(
        f"{symbols[row.r_exp]:>4} {symbols[row.s_exp]:>4} "
        f"{texts[0]:>8} {texts[1]:>8} {texts[2]:>8}"
    )

# ---- the integer closed form -------------------------------------------------

print("\nClassical maxima from the exact integer recurrence:")
print("  N : M_C  (quantum value, violation ratio)")
for n in range(3, 11):
    print(
        f"  {n:2d}: {uniform_value(n):5d}  "
        f"({3 ** (n - 1)}, ratio {violation_ratio(n):.3g})"
    )

# ---- exhaustive confirmation --------------------------------------------------

print("\nExhaustive ratio-space searches (exact maxima and tie counts):")
for n in (2, 3, 4, 5):
    result = exhaustive_search(n)
    print(
        f"  N={n}: max |v| = {result.max_magnitude:g} over "
        f"{result.assignments_scanned} assignments, "
        f"{result.num_maximizers} maximizers, "
        f"all-ones optimal: {max_equals_uniform(result)}"
    )

full = exhaustive_search(3, mode="full")
print(
    f"\nFull 27**3 search agrees: max {full.max_magnitude:g}, worst deviation "
    f"from the ratio reduction {full.details['ratio_agreement_max_abs_dev']:.2e}"
)

# ---- why nothing beats the all-ones point -------------------------------------

report = permutation_class_max(3)
print(
    f"\nPure-permutation assignments on a proper subset of sites: even if their "
    f"three products aligned perfectly they could reach only "
    f"{report.bound:.4g} < 6; the best actually attained is {report.attained:g}."
)
print(
    f"Shifting every site identically just reproduces the maximum: "
    f"{report.full_shift_value:g}"
)

# ---- GHZ contradictions --------------------------------------------------------

print("\nGHZ contradictions (words at points 3 and 6):")
for n in (3, 4, 5, 6, 7):
    print(f"  N={n}: {ghz_contradiction_count(n)}")
