"""Classical (local hidden variable) values of the qutrit Mermin operator.

Every local observable is assigned a definite cube root of unity; only the
two per-site ratios R = v(Y)/v(X) and S = v(V)/v(X) affect the magnitude
of the operator value, which factorizes into three products of per-site
sums.  At R = S = 1 those sums are the three real constants

    A = 1 + 2*cos(2*pi/9) ~ 2.532
    B = 1 + 2*cos(4*pi/9) ~ 1.347
   -C = 1 + 2*cos(8*pi/9) ~ -0.879,

the roots of x**3 - 3*x**2 + 3, and the classical maximum for N sites is
(A**N + B**N +- C**N)/3, an exact integer computed here by the recurrence
p_N = 3*p_{N-1} - 3*p_{N-3} on the power sums.

The exhaustive searches are exact: ratio mode scans all 9**N ratio
assignments, full mode scans all 27**N value assignments termwise and
cross-checks each magnitude against its ratio reduction.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._enumeration import (
    ProductSpace,
    _partition,
    _pool_context,
    decode_index,
    full_space_scores,
    resolve_workers,
    run_search,
)
from .cyclotomic import CycInt, root_of_unity
from .mermin import MerminOperator, build_mermin, counts_by_position
from .qudit_ops import SettingWord, eigenphase

__all__ = [
    "A_VALUE",
    "B_VALUE",
    "C_VALUE",
    "FactorTriple",
    "FactorTableRow",
    "FactorEntry",
    "HVAssignment",
    "SearchResult",
    "PermutationClassReport",
    "WitnessRecord",
    "factor_value",
    "factor_triple",
    "factor_table",
    "hv_value_direct",
    "hv_value_product",
    "hv_value_product_exact",
    "power_sum",
    "uniform_value",
    "exhaustive_search",
    "permutation_class_max",
    "ghz_contradiction_count",
    "contradiction_witness",
    "iter_contradiction_witnesses",
    "violation_ratio",
]

A_VALUE = 1.0 + 2.0 * math.cos(2.0 * math.pi / 9.0)
B_VALUE = 1.0 + 2.0 * math.cos(4.0 * math.pi / 9.0)
C_VALUE = -(1.0 + 2.0 * math.cos(8.0 * math.pi / 9.0))

SYMBOLS = ("1", "w", "w^2")

# Product index p -> factor letter: the three products of the identity
# expansion are the B, C, A products in that order.
_SLOT_LETTERS = ("B", "C", "A")
_LETTER_SLOT = {"B": 0, "C": 1, "A": 2}

# Rotation index of a qutrit letter -> column in the (X, Y, V) value triple.
_J_TO_COLUMN = {0: 0, 1: 1, -1: 2}

RATIO_SEARCH_CAP = 10**9
FULL_SEARCH_CAP = 10**8


def _factor_by_slot(p: int, r_exp: int, s_exp: int) -> CycInt:
    base = 3 * p + 2
    return (
        root_of_unity(0, 9)
        + root_of_unity(base + 3 * r_exp, 9)
        + root_of_unity(-base + 3 * s_exp, 9)
    )


def factor_value(letter: str, r_exp: int, s_exp: int) -> CycInt:
    """Exact per-site factor 1 + (.)R + (.)S for the given product letter."""
    return _factor_by_slot(_LETTER_SLOT[letter], r_exp, s_exp)


@dataclass(frozen=True)
class FactorTriple:
    """The three per-site sums at one ratio choice (exact values)."""

    a_value: CycInt
    b_value: CycInt
    c_value: CycInt

    @classmethod
    def at(cls, r_exp: int, s_exp: int) -> FactorTriple:
        return cls(
            a_value=factor_value("A", r_exp, s_exp),
            b_value=factor_value("B", r_exp, s_exp),
            c_value=factor_value("C", r_exp, s_exp),
        )

    def magnitudes(self) -> tuple[float, float, float]:
        return (
            self.a_value.magnitude(),
            self.b_value.magnitude(),
            self.c_value.magnitude(),
        )


@dataclass(frozen=True)
class FactorEntry:
    letter: str
    phase_deg: float
    magnitude: float
    text: str


@dataclass(frozen=True)
class FactorTableRow:
    r_exp: int
    s_exp: int
    triple: FactorTriple
    entries: tuple[FactorEntry, FactorEntry, FactorEntry]  # A, B, C columns


def _classify(value: CycInt) -> FactorEntry:
    z = value.to_complex()
    mag = abs(z)
    for letter, ref in (("A", A_VALUE), ("B", B_VALUE), ("C", C_VALUE)):
        if abs(mag - ref) < 1e-9:
            break
    else:
        raise ArithmeticError(f"factor magnitude {mag} matches none of A, B, C")
    phase = math.degrees(math.atan2(z.imag, z.real))
    # every factor is a real constant times a root of unity, so the true
    # phase is a multiple of 20 degrees; snap away the float noise
    snapped = 20.0 * round(phase / 20.0)
    if abs(phase - snapped) >= 1e-9:
        raise ArithmeticError(f"factor phase {phase} is off the 20-degree grid")
    phase = 180.0 if snapped == -180.0 else snapped
    if phase == 0.0:
        text = letter
    elif phase == 180.0:
        text = f"-{letter}"
    else:
        text = f"{letter}({phase:+.0f})"
    return FactorEntry(letter=letter, phase_deg=phase, magnitude=mag, text=text)


def factor_table() -> tuple[FactorTableRow, ...]:
    """All nine ratio choices with their classified A, B, C factors."""
    rows = []
    for r_exp in range(3):
        for s_exp in range(3):
            triple = FactorTriple.at(r_exp, s_exp)
            entries = (
                _classify(triple.a_value),
                _classify(triple.b_value),
                _classify(triple.c_value),
            )
            rows.append(FactorTableRow(r_exp, s_exp, triple, entries))
    return tuple(rows)


@dataclass(frozen=True)
class HVAssignment:
    """Hidden-variable assignment for N qutrit sites.

    ``values[i] = (x, y, v)`` gives v(X_i) = omega**x and so on; ratio form
    R_i = omega**((y - x) % 3), S_i = omega**((v - x) % 3).  Assignments
    built from ratios are lifted with v(X_i) = 1.
    """

    values: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        for triple in self.values:
            if len(triple) != 3 or any(not 0 <= e < 3 for e in triple):
                raise ValueError(f"bad value exponents {triple}")

    @classmethod
    def uniform(cls, n_sites: int) -> HVAssignment:
        return cls(((0, 0, 0),) * n_sites)

    @classmethod
    def from_ratios(cls, pairs) -> HVAssignment:
        return cls(tuple((0, r % 3, s % 3) for r, s in pairs))

    @classmethod
    def from_ratio_index(cls, n_sites: int, index: int) -> HVAssignment:
        digits = decode_index(index, 9, n_sites)
        return cls.from_ratios((digit // 3, digit % 3) for digit in digits)

    @classmethod
    def from_full_index(cls, n_sites: int, index: int) -> HVAssignment:
        digits = decode_index(index, 27, n_sites)
        return cls(tuple((d // 9, (d // 3) % 3, d % 3) for d in digits))

    @property
    def n_sites(self) -> int:
        return len(self.values)

    @property
    def ratios(self) -> tuple[tuple[int, int], ...]:
        return tuple(((y - x) % 3, (v - x) % 3) for x, y, v in self.values)

    def ratio_index(self) -> int:
        index = 0
        for r, s in self.ratios:
            index = index * 9 + 3 * r + s
        return index

    def full_index(self) -> int:
        index = 0
        for x, y, v in self.values:
            index = index * 27 + 9 * x + 3 * y + v
        return index

    def ratio_symbols(self) -> tuple[tuple[str, str], ...]:
        return tuple((SYMBOLS[r], SYMBOLS[s]) for r, s in self.ratios)

    def value_symbols(self) -> tuple[tuple[str, str, str], ...]:
        return tuple(
            (SYMBOLS[x], SYMBOLS[y], SYMBOLS[v]) for x, y, v in self.values
        )


def hv_value_direct(assignment: HVAssignment, op: MerminOperator) -> CycInt:
    """Exact classical operator value: sum of weight * product of values."""
    if op.d != 3:
        raise ValueError("direct hidden-variable evaluation is defined for d=3")
    if assignment.n_sites != op.n_sites:
        raise ValueError("assignment and operator have different site counts")
    total = CycInt.zero(9)
    for word, weight in op.terms:
        e = 0
        for i, j in enumerate(word.letters):
            e += assignment.values[i][_J_TO_COLUMN[j]]
        total = total + weight.times_root(3 * e)
    return total


def hv_value_product_exact(r_exps, s_exps) -> CycInt:
    """Exact 3*v from the per-site factor products (sum over B, C, A)."""
    r_exps = tuple(r_exps)
    s_exps = tuple(s_exps)
    if len(r_exps) != len(s_exps):
        raise ValueError("ratio vectors must have equal length")
    total = CycInt.zero(9)
    for p in range(3):
        prod = CycInt.one(9)
        for r, s in zip(r_exps, s_exps):
            prod = prod * _factor_by_slot(p, r % 3, s % 3)
        total = total + prod
    return total


def hv_value_product(r_exps, s_exps) -> float:
    """|v| from the factor products: exact intermediate, float magnitude."""
    return hv_value_product_exact(r_exps, s_exps).magnitude() / 3.0


def power_sum(n: int) -> int:
    """p_n = A**n + B**n + (-C)**n exactly, via p = 3*p' - 3*p'''."""
    if n < 0:
        raise ValueError("power sums are defined for n >= 0")
    p = [3, 3, 9]
    while len(p) <= n:
        p.append(3 * p[-1] - 3 * p[-3])
    return p[n]


def uniform_value(n_sites: int) -> int:
    """Classical value at the all-ones point: (A**N + B**N +- C**N)/3."""
    if n_sites < 1:
        raise ValueError("need at least one site")
    q, r = divmod(power_sum(n_sites), 3)
    assert r == 0
    return q


@dataclass(frozen=True, eq=True)
class SearchResult:
    """Outcome of an exhaustive scan, exact and partition-invariant."""

    mode: str
    n_sites: int
    max_magnitude: float
    max_sq_coeffs: tuple[int, ...]
    argmax: HVAssignment
    argmax_index: int
    argmax_factor_labels: dict[str, tuple[str, ...]] | None
    num_maximizers: int
    assignments_scanned: int
    details: dict = field(default_factory=dict)


def _ratio_space(n_sites: int) -> ProductSpace:
    rows = []
    for r_exp in range(3):
        for s_exp in range(3):
            rows.append(tuple(_factor_by_slot(p, r_exp, s_exp) for p in range(3)))
    return ProductSpace(order=9, n_sites=n_sites, factors=tuple(rows))


def _argmax_labels(assignment: HVAssignment) -> dict[str, tuple[str, ...]]:
    labels: dict[str, tuple[str, ...]] = {}
    for letter in ("A", "B", "C"):
        labels[letter] = tuple(
            _classify(factor_value(letter, r, s)).letter
            for r, s in assignment.ratios
        )
    return labels


def max_equals_uniform(result: SearchResult) -> bool:
    """Exact check that the search maximum equals the all-ones value."""
    u = uniform_value(result.n_sites)
    if result.mode == "ratio":
        target = CycInt.integer((3 * u) ** 2, 9)
    else:
        target = CycInt.integer(u * u, 9)
    return result.max_sq_coeffs == target.coeffs


def exhaustive_search(
    n_sites: int, mode: str = "ratio", workers: int | None = None
) -> SearchResult:
    """Scan every assignment and return the exact classical maximum.

    Ratio mode covers the 9**N ratio assignments through the factor-product
    form; full mode covers the 27**N value assignments termwise and also
    verifies, for every one of them, that its magnitude agrees with the
    ratio reduction.  Ties are counted exactly and the arg-max reported is
    the lexicographically smallest maximizer (encoding R1,S1,...,RN,SN for
    ratio mode and X1,Y1,V1,... for full mode, with 1 < w < w^2).
    """
    if n_sites < 1:
        raise ValueError("need at least one site")
    if mode == "ratio":
        if 9**n_sites > RATIO_SEARCH_CAP:
            raise ValueError(
                f"ratio search space 9**{n_sites} exceeds the cap of {RATIO_SEARCH_CAP}"
            )
        raw = run_search(_ratio_space(n_sites), workers)
        assignment = HVAssignment.from_ratio_index(n_sites, raw.argmax_index)
        return SearchResult(
            mode="ratio",
            n_sites=n_sites,
            max_magnitude=math.sqrt(raw.best_sq_value) / 3.0,
            max_sq_coeffs=raw.best_sq_coeffs,
            argmax=assignment,
            argmax_index=raw.argmax_index,
            argmax_factor_labels=_argmax_labels(assignment),
            num_maximizers=raw.num_maximizers,
            assignments_scanned=raw.assignments_scanned,
            details={},
        )
    if mode == "full":
        return _full_search(n_sites, workers)
    raise ValueError(f"unknown search mode {mode!r} (expected 'ratio' or 'full')")


def _encode_terms(n_sites: int):
    terms = build_mermin(3, n_sites, 0).terms
    weights = np.empty(len(terms), dtype=np.int16)
    letters = np.empty((len(terms), n_sites), dtype=np.int8)
    for t, (word, weight) in enumerate(terms):
        exp = weight.as_root_exponent()
        assert exp is not None and exp % 3 == 0
        weights[t] = exp // 3
        letters[t] = [_J_TO_COLUMN[j] for j in word.letters]
    return weights, letters


def _scan_full_range(args):
    n_sites, weights, letters, ratio_mag, lo, hi = args
    chunk = 3**11
    best = -1
    count = 0
    lexmin = -1
    max_dev = 0.0
    n_terms = len(weights)
    for c_lo in range(lo, hi, chunk):
        c_hi = min(c_lo + chunk, hi)
        idx = np.arange(c_lo, c_hi, dtype=np.int64)
        columns = []
        ridx = np.zeros(idx.shape, dtype=np.int64)
        for i in range(n_sites):
            digit = (idx // 27 ** (n_sites - 1 - i)) % 27
            e_x = digit // 9
            e_y = (digit // 3) % 3
            e_v = digit % 3
            columns.append(
                np.stack([e_x, e_y, e_v]).astype(np.int16)
            )
            ridx = ridx * 9 + 3 * ((e_y - e_x) % 3) + ((e_v - e_x) % 3)
        n_counts = [
            np.zeros(idx.shape, dtype=np.int64) for _ in range(3)
        ]
        for t in range(n_terms):
            acc = np.full(idx.shape, weights[t], dtype=np.int16)
            for i in range(n_sites):
                acc += columns[i][letters[t, i]]
            acc %= 3
            for j in range(3):
                n_counts[j] += acc == j
        n0, n1, n2 = n_counts
        score = ((n0 - n1) ** 2 + (n1 - n2) ** 2 + (n2 - n0) ** 2) // 2
        dev = np.abs(np.sqrt(score.astype(np.float64)) - ratio_mag[ridx])
        max_dev = max(max_dev, float(dev.max()))
        cmax = int(score.max())
        if cmax > best:
            best = cmax
            count = 0
            lexmin = -1
        if cmax == best:
            mask = score == best
            count += int(mask.sum())
            first = int(idx[mask].min())
            lexmin = first if lexmin < 0 else min(lexmin, first)
    return best, count, lexmin, hi - lo, max_dev


def _full_search(n_sites: int, workers: int | None) -> SearchResult:
    if 27**n_sites > FULL_SEARCH_CAP:
        raise ValueError(
            f"full search space 27**{n_sites} exceeds the cap of {FULL_SEARCH_CAP}"
        )
    weights, letters = _encode_terms(n_sites)
    ratio_mag = np.sqrt(full_space_scores(_ratio_space(n_sites))) / 3.0
    total = 27**n_sites
    n_workers = resolve_workers(workers)
    ranges = _partition(total, n_workers)
    args = [(n_sites, weights, letters, ratio_mag, lo, hi) for lo, hi in ranges]
    if len(args) == 1 or n_workers == 1:
        partials = [_scan_full_range(a) for a in args]
    else:
        with ProcessPoolExecutor(
            max_workers=n_workers, mp_context=_pool_context()
        ) as pool:
            partials = list(pool.map(_scan_full_range, args))
    best, count, lexmin, scanned, max_dev = partials[0]
    for b, c, a, s, dv in partials[1:]:
        scanned += s
        max_dev = max(max_dev, dv)
        if b > best:
            best, count, lexmin = b, c, a
        elif b == best:
            count += c
            lexmin = min(lexmin, a)
    assignment = HVAssignment.from_full_index(n_sites, lexmin)
    return SearchResult(
        mode="full",
        n_sites=n_sites,
        max_magnitude=math.sqrt(best),
        max_sq_coeffs=CycInt.integer(best, 9).coeffs,
        argmax=assignment,
        argmax_index=lexmin,
        argmax_factor_labels=None,
        num_maximizers=count,
        assignments_scanned=scanned,
        details={
            "max_sq_int": best,
            "ratio_agreement_max_abs_dev": max_dev,
        },
    )


@dataclass(frozen=True)
class PermutationClassReport:
    """Aligned bounds and attained values for pure-permutation assignments.

    Sites in a nonempty proper subset use the ratio rows (w, w^2) or
    (w^2, w), which cyclically permute the per-site factors; the remaining
    sites stay at (1, 1).  ``bound`` is the largest value such an
    assignment could reach if its three products were phase-aligned (the
    triangle-inequality ceiling, (A**2*B + B**2*C + C**2*A)/3 for N = 3);
    ``attained`` is the largest magnitude actually reached, which is
    strictly smaller.  Shifting every site identically is not a proper
    subset; that value is reported separately and reproduces the maximum.
    """

    n_sites: int
    bound: float
    bound_pattern: tuple[int, ...]
    attained: float
    attained_pattern: tuple[int, ...]
    full_shift_value: float


_SHIFT_RATIOS = {0: (0, 0), 1: (1, 2), 2: (2, 1)}


def permutation_class_max(n_sites: int = 3) -> PermutationClassReport:
    if n_sites < 2:
        raise ValueError("need at least two sites for a proper nonempty subset")
    slot_mags = {
        sigma: tuple(
            _factor_by_slot(p, *_SHIFT_RATIOS[sigma]).magnitude() for p in range(3)
        )
        for sigma in range(3)
    }
    best_bound = -1.0
    best_bound_pattern: tuple[int, ...] = ()
    best_attained = -1.0
    best_attained_pattern: tuple[int, ...] = ()
    for pattern in itertools.product(range(3), repeat=n_sites):
        n_shifted = sum(1 for sigma in pattern if sigma)
        if not 0 < n_shifted < n_sites:
            continue
        bound = 0.0
        for p in range(3):
            prod = 1.0
            for sigma in pattern:
                prod *= slot_mags[sigma][p]
            bound += prod
        bound /= 3.0
        ratios = [_SHIFT_RATIOS[sigma] for sigma in pattern]
        attained = hv_value_product(
            [r for r, _ in ratios], [s for _, s in ratios]
        )
        if bound > best_bound:
            best_bound = bound
            best_bound_pattern = pattern
        if attained > best_attained:
            best_attained = attained
            best_attained_pattern = pattern
    full_shift = hv_value_product((1,) * n_sites, (2,) * n_sites)
    return PermutationClassReport(
        n_sites=n_sites,
        bound=best_bound,
        bound_pattern=best_bound_pattern,
        attained=best_attained,
        attained_pattern=best_attained_pattern,
        full_shift_value=full_shift,
    )


def ghz_contradiction_count(n_sites: int) -> int:
    """Words at circle points 3 and 6; equals (2/3)(M_Q - M_C) exactly."""
    counts = counts_by_position(3, n_sites).counts
    assert counts[3] == counts[6]
    n_ghz = counts[3] + counts[6]
    m_q = 3 ** (n_sites - 1)
    m_c = uniform_value(n_sites)
    assert 3 * n_ghz == 2 * (m_q - m_c)
    return n_ghz


@dataclass(frozen=True)
class WitnessRecord:
    """One GHZ contradiction: quantum eigenphase vs uniform prediction."""

    word: SettingWord
    position: int
    quantum_omega_exponent: int
    quantum_value: complex
    hv_value: int
    contradicts: bool


def contradiction_witness(word: SettingWord) -> WitnessRecord:
    """Compute both sides of the contradiction for a word at point 3 or 6."""
    if word.d != 3:
        raise ValueError("witnesses are defined for d=3")
    k = word.position
    if k not in (3, 6):
        raise ValueError(
            f"word {word} sits at position {k}; witnesses exist at points 3 and 6"
        )
    phase = eigenphase(word, 0)
    assert phase.exponent % 3 == 0
    omega_exp = phase.exponent // 3
    # Uniform prediction: the product of the assigned values, all omega**0.
    uniform = HVAssignment.uniform(word.n_sites)
    hv_exp = sum(
        uniform.values[i][_J_TO_COLUMN[j]] for i, j in enumerate(word.letters)
    ) % 3
    contradicts = not (phase.cyc() == root_of_unity(3 * hv_exp, 9))
    return WitnessRecord(
        word=word,
        position=k,
        quantum_omega_exponent=omega_exp,
        quantum_value=phase.to_complex(),
        hv_value=1,
        contradicts=contradicts,
    )


def iter_contradiction_witnesses(n_sites: int):
    """All witnesses at points 3 and 6, in lexicographic word order."""
    for letters in itertools.product((-1, 0, 1), repeat=n_sites):
        word = SettingWord(3, letters)
        if word.position in (3, 6):
            yield contradiction_witness(word)


def violation_ratio(n_sites: int) -> float:
    """Quantum over classical value, 3**(N-1) / uniform_value(N)."""
    return 3 ** (n_sites - 1) / uniform_value(n_sites)
