"""Brute-force verification of representation densities.

Counts solutions of S[x] == T over column matrices with entries in the
truncated extension ring, either by staged full enumeration (general
matrices, hard state-space guard) or by an exact norm-distribution
convolution (rank-1 targets against unit forms, the fast path).  All
counts are exact integers; normalization follows the density definition
p^(-k*n*(2m-n)) for an m-row, n-column solution space at precision k.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import TooLarge
from .padic import HermMatrix, RingParams

STATE_BOUND = 2**38
COLUMN_BOUND = 2**22
NORM_TABLE_BOUND = 2**40


@dataclass(frozen=True)
class CountResult:
    """Exact solution count and its density normalization."""

    raw_count: int
    k: int
    normalized: Fraction

    def to_json_obj(self) -> dict:
        return {
            "raw_count": str(self.raw_count),
            "k": self.k,
            "normalized": f"{self.normalized.numerator}/{self.normalized.denominator}",
        }


@dataclass(frozen=True)
class NormTable:
    """counts[c] = number of ring elements of norm c mod p^k."""

    p: int
    k: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts) != self.p ** (2 * self.k):
            raise AssertionError("norm table does not cover the whole ring")


def norm_distribution(p: int, k: int, delta: int | None = None) -> NormTable:
    """Exact norm-value distribution on the truncated extension ring,
    by direct enumeration of all (a, b) pairs."""
    params = RingParams(p, k, delta)
    m = params.modulus
    if m * m > NORM_TABLE_BOUND:
        raise TooLarge(f"norm table would enumerate {m * m} elements")
    a = np.arange(m, dtype=np.int64)
    sq = (a * a) % m
    dsq = (params.delta * a * a) % m
    counts = np.zeros(m, dtype=np.int64)
    for b in range(m):
        vals = (sq - dsq[b]) % m
        counts += np.bincount(vals, minlength=m)
    return NormTable(p, k, tuple(int(c) for c in counts))


def _pack(vec: list[int], width_bytes: int) -> int:
    buf = bytearray(len(vec) * width_bytes)
    for i, c in enumerate(vec):
        buf[i * width_bytes : (i + 1) * width_bytes] = c.to_bytes(width_bytes, "little")
    return int.from_bytes(buf, "little")


def _unpack(n: int, count: int, width_bytes: int) -> list[int]:
    buf = n.to_bytes(count * width_bytes, "little")
    return [
        int.from_bytes(buf[i * width_bytes : (i + 1) * width_bytes], "little")
        for i in range(count)
    ]


def _cyclic_convolve(u: list[int], v: list[int], width_bytes: int) -> list[int]:
    """Exact cyclic convolution of integer sequences of equal length,
    via Kronecker substitution (single big-integer product)."""
    m = len(u)
    prod = _pack(u, width_bytes) * _pack(v, width_bytes)
    coeffs = _unpack(prod, 2 * m, width_bytes)
    return [coeffs[i] + coeffs[i + m] for i in range(m)]


def _rank1_raw_counts(p: int, k: int, s: int, delta: int | None = None) -> list[int]:
    """counts[c] = number of s-tuples over the ring whose norms sum to c mod p^k."""
    table = list(norm_distribution(p, k, delta).counts)
    m = p**k
    # Coefficient bound over all folds: (p^(2k))^s * m^(s-1).
    bound_bits = s * (2 * k * p.bit_length() + 1) + s * m.bit_length() + 8
    wb = (bound_bits + 7) // 8
    acc = table
    for _ in range(s - 1):
        acc = _cyclic_convolve(acc, table, wb)
    return acc


def alpha_hat_rank1(
    p: int, k: int, s: int, a: int, delta: int | None = None
) -> CountResult:
    """Density count for the rank-1 target p^a against the rank-s unit form,
    via s-fold convolution of the norm distribution over Z/p^k."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if k < a + 2:
        raise ValueError(f"need k >= a+2 for a stable count (k={k}, a={a})")
    counts = _rank1_raw_counts(p, k, s, delta)
    raw = counts[pow(p, a, p**k)]
    return CountResult(raw, k, Fraction(raw, p ** (k * (2 * s - 1))))


def beta_hat_rank1(
    p: int, k: int, s: int, a: int, delta: int | None = None
) -> CountResult:
    """Like alpha_hat_rank1 but counting only primitive solutions (columns
    that are nonzero mod p)."""
    full = alpha_hat_rank1(p, k, s, a, delta)
    if a < 2:
        return full
    # Imprimitive solutions are p * y with the norm condition pushed down
    # two precision levels; each such y has p^(2s) lifts.
    deeper = _rank1_raw_counts(p, k - 2, s, delta)
    imprimitive = p ** (2 * s) * deeper[pow(p, a - 2, p ** (k - 2))]
    raw = full.raw_count - imprimitive
    return CountResult(raw, k, Fraction(raw, p ** (k * (2 * s - 1))))


def _columns(p: int, k: int, m: int):
    """All column vectors of length m over the ring, as (a, b) digit arrays
    of shape (m, V)."""
    mod = p**k
    v = mod ** (2 * m)
    if v > COLUMN_BOUND:
        raise TooLarge(f"column space of size {v} exceeds the materialization bound")
    idx = np.arange(v, dtype=np.int64)
    a = np.empty((m, v), dtype=np.int64)
    b = np.empty((m, v), dtype=np.int64)
    for c in range(m):
        a[c] = (idx // mod ** (2 * c)) % mod
        b[c] = (idx // mod ** (2 * c + 1)) % mod
    return a, b


def _herm_products(s_entries, ua, ub, wa, wb, mod, delta):
    """h(u, w) = t(u) * S * conj(w) for a single u against all columns w."""
    m = len(ua)
    # r = t(u) * S, a length-m vector of scalars.
    ra = [0] * m
    rb = [0] * m
    for t in range(m):
        acc_a = acc_b = 0
        for s in range(m):
            ea, eb = s_entries[s][t]
            acc_a += ua[s] * ea + delta * ub[s] * eb
            acc_b += ua[s] * eb + ub[s] * ea
        ra[t] = acc_a % mod
        rb[t] = acc_b % mod
    ha = np.zeros(wa.shape[1], dtype=np.int64)
    hb = np.zeros(wa.shape[1], dtype=np.int64)
    for t in range(m):
        # r_t * conj(w_t) with conj(w) = (wa, -wb)
        ha += ra[t] * wa[t] - delta * rb[t] * wb[t]
        hb += rb[t] * wa[t] - ra[t] * wb[t]
        ha %= mod
        hb %= mod
    return ha % mod, hb % mod


def _staged_count(p, k, delta, s_pairs, t_pairs, first_slice):
    """Count solution matrices whose first column index lies in first_slice."""
    m = len(s_pairs)
    n = len(t_pairs)
    mod = p**k
    wa, wb = _columns(p, k, m)
    v = wa.shape[1]
    # Diagonal products h(w, w) for all candidates.
    diag_a = np.zeros(v, dtype=np.int64)
    diag_b = np.zeros(v, dtype=np.int64)
    for s in range(m):
        for t in range(m):
            ea, eb = s_pairs[s][t]
            xa = (wa[s] * ea + delta * wb[s] * eb) % mod
            xb = (wa[s] * eb + wb[s] * ea) % mod
            diag_a += xa * wa[t] - delta * xb * wb[t]
            diag_b += xb * wa[t] - xa * wb[t]
            diag_a %= mod
            diag_b %= mod

    def column_mask(j):
        ta, tb = t_pairs[j][j]
        return (diag_a == ta) & (diag_b == (tb % mod))

    lo, hi = first_slice
    base = np.nonzero(column_mask(0))[0]
    base = base[(base >= lo) & (base < hi)]
    if n == 1:
        return int(base.size)
    survivors = base.reshape(-1, 1)
    for j in range(1, n):
        mask_j = column_mask(j)
        new_rows = []
        count = 0
        for row in survivors:
            mask = mask_j.copy()
            for i in range(j):
                u_idx = int(row[i])
                ha, hb = _herm_products(
                    s_pairs,
                    [int(wa[c, u_idx]) for c in range(m)],
                    [int(wb[c, u_idx]) for c in range(m)],
                    wa,
                    wb,
                    mod,
                    delta,
                )
                ta, tb = t_pairs[i][j]
                mask &= (ha == ta) & (hb == (tb % mod))
            if j == n - 1:
                count += int(mask.sum())
            else:
                idx = np.nonzero(mask)[0]
                if idx.size:
                    new_rows.append(
                        np.concatenate(
                            [np.repeat(row.reshape(1, -1), idx.size, axis=0), idx.reshape(-1, 1)],
                            axis=1,
                        )
                    )
        if j == n - 1:
            return count
        if not new_rows:
            return 0
        survivors = np.concatenate(new_rows, axis=0)
    return int(survivors.shape[0])


def count_representations(
    p: int, k: int, s: HermMatrix, t: HermMatrix, jobs: int = 1
) -> CountResult:
    """Exact count of x in M_{m,n}(O/p^k) with S[x] == T mod p^k.

    Full enumeration of the solution set, organized column by column with
    early filtering (every solution is visited; non-solutions are pruned
    as soon as a leading block fails).  The total state space p^(2kmn)
    is hard-guarded; partition over the first column makes the count
    embarrassingly parallel with an exact integer reduction.
    """
    if s.params.p != t.params.p:
        raise ValueError("S and T must share the prime")
    s = s.reduce_to(k) if s.params.k != k else s
    t = t.reduce_to(k) if t.params.k != k else t
    if s.params.delta != t.params.delta:
        raise ValueError("S and T must share delta")
    m, n = s.n, t.n
    if n > m:
        raise ValueError("target rank exceeds source rank")
    states = (p ** (2 * k)) ** (m * n)
    if states > STATE_BOUND:
        raise TooLarge(
            f"state space {states} exceeds {STATE_BOUND}; use the rank-1 path "
            "or smaller parameters"
        )
    delta = s.params.delta
    s_pairs = tuple(tuple((e.a, e.b) for e in row) for row in s.entries)
    t_pairs = tuple(tuple((e.a, e.b) for e in row) for row in t.entries)
    v = (p**k) ** (2 * m)
    if jobs <= 1:
        raw = _staged_count(p, k, delta, s_pairs, t_pairs, (0, v))
    else:
        step = (v + jobs - 1) // jobs
        slices = [(i, min(i + step, v)) for i in range(0, v, step)]
        args = [(p, k, delta, s_pairs, t_pairs, sl) for sl in slices]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = sum(pool.map(_staged_count_star, args))
    return CountResult(raw, k, Fraction(raw, p ** (k * n * (2 * m - n))))


def _staged_count_star(args):
    return _staged_count(*args)


def stabilization_check(
    p: int, s: HermMatrix, t: HermMatrix, k_lo: int, k_hi: int, jobs: int = 1
) -> bool:
    """True iff the normalized counts agree for every k in [k_lo, k_hi].

    S and T must carry enough precision to be reduced to k_hi.  Running
    below v_p(det T) + 1 is allowed and is expected to break agreement;
    that is what the margin policy is about.
    """
    if k_lo < 1 or k_hi < k_lo:
        raise ValueError("need 1 <= k_lo <= k_hi")
    if s.params.k < k_hi or t.params.k < k_hi:
        raise ValueError("S and T must be given at precision >= k_hi")
    values = [
        count_representations(p, k, s, t, jobs=jobs).normalized
        for k in range(k_lo, k_hi + 1)
    ]
    return all(v == values[0] for v in values)


def unitary_group_order(n: int, q: int) -> int:
    """Order of the unitary group U_n(F_q): q^(n(n-1)/2) * prod (q^i - (-1)^i).

    Independent closed form used to cross-check the full-matrix count of
    unit-form self-representations at precision 1.
    """
    order = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        order *= q**i - (-1) ** i
    return order
