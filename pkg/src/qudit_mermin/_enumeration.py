"""Vectorized exhaustive maximization over per-site factor alphabets.

An assignment is a length-N tuple (a_1, ..., a_N) of letters from an
alphabet of size A; its value is

    score(a) = | sum_slots  prod_sites  F[a_i, slot] |**2,

where every F[a, slot] is a cyclotomic integer.  Products are carried as
exact int64 coefficient vectors (multiplication by a fixed factor is a
linear map on coefficients); a float shadow ranks candidates, and every
near-tie is settled with exact coefficient arithmetic.  The reported
maximum, tie count, and lexicographic arg-min are therefore identical for
any worker count and any partition of the index range.

Assignment indices are base-A integers with site 1 as the most significant
digit, so the flat index order is the lexicographic order of assignments.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycInt, compare_real_coeffs, _alpha_powers, order_params

__all__ = [
    "ProductSpace",
    "RawSearchResult",
    "run_search",
    "full_space_scores",
    "exact_sum",
    "resolve_workers",
]

_BAND_REL = 1e-6
_COEFF_LIMIT = 2**52
_TARGET_CHUNK_ELEMS = 12_000_000

WORKERS_ENV_VAR = "QUDIT_MERMIN_WORKERS"


@dataclass(frozen=True)
class ProductSpace:
    """Search-space description: per-letter slot factors over one ring."""

    order: int
    n_sites: int
    factors: tuple[tuple[CycInt, ...], ...]  # (alphabet, slots)

    @property
    def alphabet(self) -> int:
        return len(self.factors)

    @property
    def slots(self) -> int:
        return len(self.factors[0])

    @property
    def size(self) -> int:
        return self.alphabet**self.n_sites


@dataclass(frozen=True)
class RawSearchResult:
    best_sq_coeffs: tuple[int, ...]  # canonical coeffs of |sum of products|**2
    best_sq_value: float
    num_maximizers: int
    argmax_index: int
    assignments_scanned: int


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit value, else env override, else CPU count."""
    if workers is not None:
        workers = int(workers)
        if workers < 1:
            raise ValueError("worker count must be at least 1")
        return workers
    env = os.environ.get(WORKERS_ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _mult_matrix(factor: CycInt, phi: int) -> np.ndarray:
    cols = [factor.times_root(j).coeffs for j in range(phi)]
    return np.array(cols, dtype=np.int64).T


def _tables(space: ProductSpace):
    _, phi = order_params(space.order)
    a_size, slots = space.alphabet, space.slots
    vecs = np.zeros((a_size, slots, phi), dtype=np.int64)
    mats = np.zeros((a_size, slots, phi, phi), dtype=np.int64)
    for a in range(a_size):
        for s in range(slots):
            f = space.factors[a][s]
            vecs[a, s] = f.coeffs
            mats[a, s] = _mult_matrix(f, phi)
    powers = np.array(_alpha_powers(space.order), dtype=np.complex128)
    return vecs, mats, powers


def _apply_site(p: np.ndarray, digits: np.ndarray, mats: np.ndarray) -> np.ndarray:
    a_size = mats.shape[0]
    if a_size <= 32:
        for a in range(a_size):
            sel = np.nonzero(digits == a)[0]
            if sel.size:
                p[sel] = np.einsum("sij,ksj->ksi", mats[a], p[sel])
        return p
    order = np.argsort(digits, kind="stable")
    p_sorted = p[order]
    d_sorted = digits[order]
    bounds = np.searchsorted(d_sorted, np.arange(a_size + 1))
    for a in range(a_size):
        lo, hi = bounds[a], bounds[a + 1]
        if lo < hi:
            p_sorted[lo:hi] = np.einsum("sij,ksj->ksi", mats[a], p_sorted[lo:hi])
    out = np.empty_like(p_sorted)
    out[order] = p_sorted
    return out


def _chunk_products(
    idx: np.ndarray, n_sites: int, a_size: int, vecs: np.ndarray, mats: np.ndarray
) -> np.ndarray:
    digit0 = (idx // a_size ** (n_sites - 1)) % a_size
    p = vecs[digit0].copy()
    for t in range(1, n_sites):
        digits = (idx // a_size ** (n_sites - 1 - t)) % a_size
        p = _apply_site(p, digits, mats)
    if p.size and np.abs(p).max() >= _COEFF_LIMIT:
        raise OverflowError("product coefficients exceeded the exact int64 range")
    return p


def _scan_range(args):
    order, n_sites, a_size, vecs, mats, powers, lo, hi = args
    chunk = max(1024, _TARGET_CHUNK_ELEMS // (vecs.shape[1] * vecs.shape[2]))
    best = -np.inf
    cand_idx: list[np.ndarray] = []
    cand_vec: list[np.ndarray] = []
    for c_lo in range(lo, hi, chunk):
        c_hi = min(c_lo + chunk, hi)
        idx = np.arange(c_lo, c_hi, dtype=np.int64)
        p = _chunk_products(idx, n_sites, a_size, vecs, mats)
        v = p.sum(axis=1)
        vals = v.astype(np.float64) @ powers
        scores = vals.real * vals.real + vals.imag * vals.imag
        cmax = float(scores.max())
        if cmax > best:
            best = cmax
        band = _BAND_REL * max(1.0, best)
        keep = scores >= best - band
        if keep.any():
            cand_idx.append(idx[keep])
            cand_vec.append(v[keep])
    all_idx = np.concatenate(cand_idx)
    all_vec = np.concatenate(cand_vec)
    vals = all_vec.astype(np.float64) @ powers
    scores = vals.real * vals.real + vals.imag * vals.imag
    keep = scores >= best - _BAND_REL * max(1.0, best)
    all_idx, all_vec = all_idx[keep], all_vec[keep]
    # Exact resolution of the candidate band.
    groups: dict[tuple[int, ...], list[int]] = {}
    for flat, row in zip(all_idx.tolist(), all_vec):
        value = CycInt(order, tuple(row.tolist()))
        sq = (value * value.conjugate()).coeffs
        entry = groups.get(sq)
        if entry is None:
            groups[sq] = [1, flat]
        else:
            entry[0] += 1
            if flat < entry[1]:
                entry[1] = flat
    best_sq = None
    for sq in groups:
        if best_sq is None or compare_real_coeffs(order, sq, best_sq) > 0:
            best_sq = sq
    count, argmin = groups[best_sq]
    return best_sq, count, argmin, hi - lo


def _partition(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    base, rem = divmod(total, parts)
    ranges = []
    lo = 0
    for i in range(parts):
        hi = lo + base + (1 if i < rem else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def _pool_context():
    try:
        return multiprocessing.get_context("fork")
    except ValueError:  # pragma: no cover - non-fork platforms
        return multiprocessing.get_context()


def run_search(space: ProductSpace, workers: int | None = None) -> RawSearchResult:
    """Scan the whole space; exact merge makes the result partition-invariant."""
    vecs, mats, powers = _tables(space)
    total = space.size
    n_workers = resolve_workers(workers)
    ranges = _partition(total, n_workers)
    args = [
        (space.order, space.n_sites, space.alphabet, vecs, mats, powers, lo, hi)
        for lo, hi in ranges
    ]
    if len(args) == 1 or n_workers == 1:
        partials = [_scan_range(a) for a in args]
    else:
        with ProcessPoolExecutor(
            max_workers=n_workers, mp_context=_pool_context()
        ) as pool:
            partials = list(pool.map(_scan_range, args))
    best_sq, count, argmin, scanned = partials[0]
    for sq, c, a, s in partials[1:]:
        scanned += s
        rel = compare_real_coeffs(space.order, sq, best_sq)
        if rel > 0:
            best_sq, count, argmin = sq, c, a
        elif rel == 0:
            count += c
            argmin = min(argmin, a)
    powers_list = _alpha_powers(space.order)
    best_value = sum(
        c * powers_list[j].real for j, c in enumerate(best_sq) if c
    )
    return RawSearchResult(
        best_sq_coeffs=best_sq,
        best_sq_value=float(best_value),
        num_maximizers=count,
        argmax_index=argmin,
        assignments_scanned=scanned,
    )


def full_space_scores(space: ProductSpace) -> np.ndarray:
    """Float |sum of products|**2 for every index (small spaces only)."""
    if space.size > 1_000_000:
        raise ValueError("full score table is limited to 1e6 assignments")
    vecs, mats, powers = _tables(space)
    idx = np.arange(space.size, dtype=np.int64)
    p = _chunk_products(idx, space.n_sites, space.alphabet, vecs, mats)
    vals = p.sum(axis=1).astype(np.float64) @ powers
    return vals.real * vals.real + vals.imag * vals.imag


def exact_sum(space: ProductSpace, index: int) -> CycInt:
    """Pure-Python evaluation of the slot-product sum at one flat index."""
    digits = []
    rem = index
    for _ in range(space.n_sites):
        digits.append(rem % space.alphabet)
        rem //= space.alphabet
    digits.reverse()  # site 1 is the most significant digit
    total = CycInt.zero(space.order)
    for s in range(space.slots):
        prod = CycInt.one(space.order)
        for a in digits:
            prod = prod * space.factors[a][s]
        total = total + prod
    return total


def decode_index(index: int, alphabet: int, n_sites: int) -> tuple[int, ...]:
    """Digits of a flat assignment index, site 1 first."""
    digits = []
    rem = index
    for _ in range(n_sites):
        digits.append(rem % alphabet)
        rem //= alphabet
    digits.reverse()
    return tuple(digits)
