"""Mermin operators: construction, exact eigenvalues, term combinatorics.

The operator for variant c is the weighted sum of all d**(N-1) setting
words whose circle position k satisfies k == c (mod d); the word at
position k carries weight alpha**(c - k) = omega**(-(k-c)/d), so every
term acts on the matching GHZ state with eigenvalue +1 and the total
eigenvalue is the term count d**(N-1).

Operators are stored as term lists, never as dense matrices; applying a
term to a GHZ state touches only its d nonzero amplitudes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .cyclotomic import CycInt, root_of_unity
from .qudit_ops import (
    EigenstateError,
    SettingWord,
    apply_word,
    ghz_state,
    rotation_alphabet,
)

__all__ = [
    "MerminOperator",
    "PositionCounts",
    "IdentityReport",
    "build_mermin",
    "verify_eigenvalue",
    "counts_by_position",
    "expand_identity",
]


@dataclass(frozen=True)
class MerminOperator:
    """Weighted word list for one variant; weights are roots of unity."""

    d: int
    n_sites: int
    variant: int
    terms: tuple[tuple[SettingWord, CycInt], ...]

    @property
    def term_count(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class PositionCounts:
    """Number of setting words at each circle position k in [0, d**2)."""

    d: int
    n_sites: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class IdentityReport:
    """Term-for-term comparison of the product-form expansion."""

    d: int
    n_sites: int
    n_words: int
    n_surviving: int
    n_vanishing: int
    matches: bool
    mismatches: tuple[str, ...]


def build_mermin(d: int, n_sites: int, variant: int = 0) -> MerminOperator:
    """Collect the d**(N-1) words at positions k == variant (mod d).

    The same position rule is applied at every N for every variant; the
    shifted variants follow the c = 0 pattern by rotational covariance.
    """
    if n_sites < 1:
        raise ValueError("need at least one site")
    if not 0 <= variant < d:
        raise ValueError(f"variant must lie in [0, {d}), got {variant}")
    m = d * d
    alphabet = rotation_alphabet(d)
    terms = []
    for letters in itertools.product(alphabet, repeat=n_sites):
        k = sum(letters) % m
        if (k - variant) % d == 0:
            word = SettingWord(d, letters)
            terms.append((word, root_of_unity(variant - k, m)))
    op = MerminOperator(d, n_sites, variant, tuple(terms))
    assert op.term_count == d ** (n_sites - 1)
    return op


def verify_eigenvalue(op: MerminOperator) -> int:
    """Apply the operator to its GHZ state exactly and return the eigenvalue.

    Raises EigenstateError if the result is not an integer multiple of the
    state (which would indicate a construction bug), as distinct from the
    ValueError raised on malformed input.
    """
    m = op.d * op.d
    psi = ghz_state(op.variant, op.d, op.n_sites)
    totals = {label: CycInt.zero(m) for label in psi.amplitudes}
    for word, weight in op.terms:
        mapped = apply_word(word, psi)
        for label, amp in mapped.amplitudes.items():
            if label not in totals:
                raise EigenstateError("a term left the GHZ support")
            totals[label] = totals[label] + weight * amp
    lam: CycInt | None = None
    for label, amp in psi.amplitudes.items():
        ratio = totals[label] * amp.conjugate()
        if lam is None:
            lam = ratio
        elif lam != ratio:
            raise EigenstateError(
                f"variant {op.variant} operator is not proportional to its GHZ state"
            )
    assert lam is not None
    if not lam.is_integer():
        raise EigenstateError(f"eigenvalue {lam} is not a rational integer")
    return lam.as_integer()


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def counts_by_position(d: int, n_sites: int) -> PositionCounts:
    """Closed-form multinomial count of words at each circle position."""
    if n_sites < 1:
        raise ValueError("need at least one site")
    m = d * d
    alphabet = rotation_alphabet(d)
    fact_n = math.factorial(n_sites)
    counts = [0] * m
    for comp in _compositions(n_sites, d):
        k = sum(j * c for j, c in zip(alphabet, comp)) % m
        weight = fact_n
        for c in comp:
            weight //= math.factorial(c)
        counts[k] += weight
    result = PositionCounts(d, n_sites, tuple(counts))
    assert result.total == d**n_sites
    return result


def expand_identity(n_sites: int, d: int = 3) -> IdentityReport:
    """Symbolically expand the product-form sum and compare term for term.

    Expands sum_p tensor_i (sum_j alpha**(j*(d*p + d - 1)) W_j) by exact
    exponent bookkeeping over all d**N words.  Words that appear in the
    variant-0 operator must come out with d times their weight; every other
    word must come out exactly zero.
    """
    if d**n_sites > 20000:
        raise ValueError(
            f"symbolic expansion covers {d}**{n_sites} words; "
            "reduce N (the cap is d**N <= 20000)"
        )
    m = d * d
    alphabet = rotation_alphabet(d)
    mixer = {
        (p, j): (j * (d * p + d - 1)) % m for p in range(d) for j in alphabet
    }
    reference = {
        word.letters: weight for word, weight in build_mermin(d, n_sites, 0).terms
    }
    mismatches = []
    n_surviving = 0
    n_vanishing = 0
    n_words = 0
    for letters in itertools.product(alphabet, repeat=n_sites):
        n_words += 1
        raw = [0] * m
        for p in range(d):
            raw[sum(mixer[p, j] for j in letters) % m] += 1
        coeff = CycInt.from_coeffs(m, raw)
        expected = reference.get(letters)
        if expected is None:
            if coeff.is_zero():
                n_vanishing += 1
            else:
                mismatches.append(
                    f"{SettingWord(d, letters)}: expected 0, got {coeff}"
                )
        else:
            if coeff == expected * d:
                n_surviving += 1
            else:
                mismatches.append(
                    f"{SettingWord(d, letters)}: expected {expected * d}, got {coeff}"
                )
    return IdentityReport(
        d=d,
        n_sites=n_sites,
        n_words=n_words,
        n_surviving=n_surviving,
        n_vanishing=n_vanishing,
        matches=not mismatches,
        mismatches=tuple(mismatches),
    )
