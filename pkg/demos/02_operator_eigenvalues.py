"""The operator itself: term lists, exact eigenvalues, and the identity check.

The three-setting operator on N qutrits collects the 3**(N-1) words whose
circle position is divisible by 3, weighting positions 3 and 6 by omega**2
and omega. Every term then acts on the GHZ state with eigenvalue +1, so the
operator eigenvalue is the term count.
"""

from qudit_mermin import (
    build_mermin,
    counts_by_position,
    expand_identity,
    verify_eigenvalue,
)

# ---- construction at N = 3 -------------------------------------------------

op = build_mermin(3, 3, 0)
print(f"N=3 operator: {op.term_count} terms")
for word, weight in op.terms:
    print(f"  {word}  (position {word.position}, weight {weight})")

# ---- exact eigenvalues -----------------------------------------------------

print("\nExact eigenvalues (should be 3**(N-1)):")
for n in range(1, 9):
    value = verify_eigenvalue(build_mermin(3, n, 0))
    print(f"  N={n}: {value}")

print("\nThe shifted variants have the same eigenvalue:")
for c in range(3):
    print(f"  variant {c}, N=4: {verify_eigenvalue(build_mermin(3, 4, c))}")

# ---- position counts -------------------------------------------------------

print("\nWord counts per circle position:")
for n in (3, 4, 5):
    counts = counts_by_position(3, n).counts
    print(f"  N={n}: k=0 -> {counts[0]}, k=3 -> {counts[3]}, k=6 -> {counts[6]}")

# ---- the product-form identity ---------------------------------------------

print("\nProduct-form identity, expanded symbolically and compared term-for-term:")
for n in (3, 4, 5, 6):
    report = expand_identity(n)
    print(
        f"  N={n}: {report.n_surviving} of {report.n_words} words survive, "
        f"match={report.matches}"
    )
