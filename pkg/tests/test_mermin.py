"""Operator construction, exact eigenvalues, and term combinatorics.

Two independent oracles are used throughout: brute-force enumeration of
all 3**N words for the position counts, and dense float matrices (built
by kron products from the matrix definitions) for small-N eigenvalue
checks.
"""

import itertools
from collections import Counter

import numpy as np
import pytest

from qudit_mermin.cyclotomic import root_of_unity
from qudit_mermin.hidden_variables import uniform_value
from qudit_mermin.mermin import (
    MerminOperator,
    build_mermin,
    counts_by_position,
    expand_identity,
    verify_eigenvalue,
)
from qudit_mermin.qudit_ops import EigenstateError, apply_word, ghz_state

from test_qudit_ops import dense_ghz, dense_word


def brute_force_counts(d, n_sites):
    """Enumeration oracle: tally circle positions over every word."""
    half = (d - 1) // 2
    alphabet = range(-half, half + 1)
    tally = Counter(
        sum(letters) % (d * d)
        for letters in itertools.product(alphabet, repeat=n_sites)
    )
    return tuple(tally.get(k, 0) for k in range(d * d))


def test_build_n3_term_structure():
    op = build_mermin(3, 3, 0)
    assert op.term_count == 9
    by_word = {str(word): weight for word, weight in op.terms}
    assert len(by_word) == 9
    # seven words at k=0 with weight one: XXX and the permutations of XYV
    weight_one = {w for w, wt in by_word.items() if wt.is_one()}
    assert weight_one == {"XXX", "XYV", "XVY", "YXV", "YVX", "VXY", "VYX"}
    assert by_word["YYY"] == root_of_unity(6, 9)  # omega**2 at k=3
    assert by_word["VVV"] == root_of_unity(3, 9)  # omega at k=6


def test_build_small_n():
    op2 = build_mermin(3, 2, 0)
    assert {str(w) for w, _ in op2.terms} == {"XX", "YV", "VY"}
    assert all(wt.is_one() for _, wt in op2.terms)
    op1 = build_mermin(3, 1, 0)
    assert [str(w) for w, _ in op1.terms] == ["X"]


def test_variants_partition_all_words():
    for n in range(1, 6):
        seen = set()
        for c in range(3):
            op = build_mermin(3, n, c)
            assert op.term_count == 3 ** (n - 1)
            words = {w.letters for w, _ in op.terms}
            assert not words & seen
            seen |= words
        assert len(seen) == 3**n


def test_eigenvalues_exact_small_n():
    for n in range(1, 7):
        for c in range(3):
            assert verify_eigenvalue(build_mermin(3, n, c)) == 3 ** (n - 1)


def test_eigenvalue_examples():
    assert verify_eigenvalue(build_mermin(3, 3, 0)) == 9
    assert verify_eigenvalue(build_mermin(3, 5, 0)) == 81
    assert verify_eigenvalue(build_mermin(3, 4, 1)) == 27


def test_per_term_eigenphase():
    psi = ghz_state(0, 3, 4)
    for word, weight in build_mermin(3, 4, 0).terms:
        assert apply_word(word, psi).scaled(weight) == psi


def test_dense_matrix_oracle_n3():
    op = build_mermin(3, 3, 0)
    dense = np.zeros((27, 27), dtype=complex)
    for word, weight in op.terms:
        dense += weight.to_complex() * dense_word(word)
    psi = dense_ghz(0, 3, 3)
    assert np.allclose(dense @ psi, 9 * psi, atol=1e-9)


def test_dense_matrix_oracle_variants_n2():
    for c in range(3):
        op = build_mermin(3, 2, c)
        dense = np.zeros((9, 9), dtype=complex)
        for word, weight in op.terms:
            dense += weight.to_complex() * dense_word(word)
        psi = dense_ghz(c, 3, 2)
        assert np.allclose(dense @ psi, 3 * psi, atol=1e-9)


def test_counts_against_enumeration():
    for n in range(1, 8):
        assert counts_by_position(3, n).counts == brute_force_counts(3, n)
    for n in (1, 2, 3):
        assert counts_by_position(5, n).counts == brute_force_counts(5, n)


def test_counts_examples():
    counts3 = counts_by_position(3, 3).counts
    assert (counts3[0], counts3[3], counts3[6]) == (7, 1, 1)
    counts4 = counts_by_position(3, 4).counts
    assert (counts4[0], counts4[3], counts4[6]) == (19, 4, 4)
    counts1 = counts_by_position(3, 1).counts
    assert counts1 == (1, 1, 0, 0, 0, 0, 0, 0, 1)


def test_counts_symmetry_and_totals():
    for n in range(1, 13):
        pc = counts_by_position(3, n)
        assert pc.total == 3**n
        assert pc.counts[3] == pc.counts[6]


def test_counts_difference_equals_uniform_value():
    for n in range(1, 13):
        counts = counts_by_position(3, n).counts
        assert counts[0] - counts[3] == uniform_value(n)


def test_expand_identity_matches_build():
    for n in range(1, 7):
        report = expand_identity(n)
        assert report.matches, report.mismatches[:3]
        assert report.n_words == 3**n
        assert report.n_surviving == 3 ** (n - 1)
        assert report.n_vanishing == 3**n - 3 ** (n - 1)


def test_expand_identity_n1_survivors():
    # only X survives at a single site; Y and V cancel
    report = expand_identity(1)
    assert report.n_surviving == 1 and report.n_vanishing == 2


def test_expand_identity_cap():
    with pytest.raises(ValueError):
        expand_identity(10)


def test_bad_build_arguments():
    with pytest.raises(ValueError):
        build_mermin(3, 0, 0)
    with pytest.raises(ValueError):
        build_mermin(3, 3, 3)


def test_tampered_weight_raises_eigenstate_error():
    op = build_mermin(3, 3, 0)
    tampered = []
    for word, weight in op.terms:
        if str(word) == "YYY":
            tampered.append((word, root_of_unity(1, 9)))
        else:
            tampered.append((word, weight))
    bad = MerminOperator(3, 3, 0, tuple(tampered))
    with pytest.raises(EigenstateError):
        verify_eigenvalue(bad)
