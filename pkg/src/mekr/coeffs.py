"""Coefficients C(k, l) of x^k in (x + x^2 + ... + x^m)^l.

C(k, l) counts compositions of k into l parts, each part in [1, m]; it is also
the number of k-multisets of [n]_m whose support is one fixed l-set.  Three
independent routes are provided:

* `build_coeff_table` -- the row recurrence C(k, l) = sum_{i=1..m} C(k-i, l-1)
* `coeff_oracle_poly_power` -- dense truncated polynomial powers
* `coeff_oracle_closed_form` -- inclusion-exclusion over parts exceeding m

All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

from .errors import UsageError

INF = math.inf


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def binom(a: int, b: int) -> int:
    """Binomial coefficient with (a choose b) = 0 whenever a < max(0, b) or b < 0."""
    if b < 0 or a < max(0, b):
        return 0
    return math.comb(a, b)


def normalize_m(m, k: int) -> int:
    """Map an unbounded multiplicity (None, inf, "inf") to m = k."""
    if m is None or m == INF or (isinstance(m, str) and m.lower() in ("inf", "infinity")):
        return k
    m = int(m)
    if m < 1:
        raise UsageError(f"multiplicity bound m must be >= 1, got {m}")
    return m


def _check_km(k: int, m: int) -> None:
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if m < 1:
        raise UsageError(f"m must be >= 1, got {m}")


@dataclass(frozen=True)
class Params:
    k: int
    m: int
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "m", normalize_m(self.m, self.k))
        _check_km(self.k, self.m)
        if self.n is not None and self.n < 2:
            raise UsageError(f"n must be >= 2, got {self.n}")

    @property
    def q(self) -> int:
        return ceil_div(self.k, self.m)


# Per-m recurrence tables: _rows[m][k][l] == C(k, l) for 0 <= l <= k.
# Rows are only ever appended, under the lock; readers see complete rows.
_rows: dict[int, list[list[int]]] = {}
_rows_lock = threading.Lock()


def _ensure_rows(m: int, kmax: int) -> list[list[int]]:
    rows = _rows.get(m)
    if rows is not None and len(rows) > kmax:
        return rows
    with _rows_lock:
        rows = _rows.setdefault(m, [[1]])  # row 0 is unused by callers
        for k in range(len(rows), kmax + 1):
            row = [0] * (k + 1)
            if k <= m:
                row[1] = 1
            for l in range(2, k + 1):
                total = 0
                for i in range(1, min(m, k - l + 1) + 1):
                    total += rows[k - i][l - 1]
                row[l] = total
            rows.append(row)
        return rows


def coeff(k: int, l: int, m: int) -> int:
    """C(k, l) from the cached recurrence table; 0 outside 1 <= l <= k."""
    if k < 1 or l <= 0 or l > k:
        return 0
    return _ensure_rows(m, k)[k][l]


@dataclass(frozen=True)
class CoeffTable:
    """One row C(k, 0..k) for fixed (k, m)."""

    k: int
    m: int
    values: tuple[int, ...]

    @property
    def q(self) -> int:
        return ceil_div(self.k, self.m)

    def __getitem__(self, l: int) -> int:
        if l <= 0 or l > self.k:
            return 0
        return self.values[l]

    def support(self) -> range:
        return range(self.q, self.k + 1)

    def nonzero_items(self) -> list[tuple[int, int]]:
        return [(l, self.values[l]) for l in self.support()]


def build_coeff_table(k: int, m) -> CoeffTable:
    m = normalize_m(m, k)
    _check_km(k, m)
    return CoeffTable(k=k, m=m, values=tuple(_ensure_rows(m, k)[k]))


def _poly_mul_truncated(a: tuple[int, ...], b: tuple[int, ...], deg: int) -> tuple[int, ...]:
    out = [0] * (deg + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), deg - i + 1)):
            out[i + j] += ai * b[j]
    return tuple(out)


@lru_cache(maxsize=None)
def _base_power(m: int, l: int, deg: int) -> tuple[int, ...]:
    """(x + ... + x^m)^l truncated at degree `deg`, as a dense coefficient tuple."""
    if l == 0:
        return (1,) + (0,) * deg
    base = tuple(1 if 1 <= i <= m else 0 for i in range(min(m, deg) + 1))
    return _poly_mul_truncated(_base_power(m, l - 1, deg), base, deg)


def coeff_oracle_poly_power(k: int, m, l: int) -> int:
    m = normalize_m(m, k)
    _check_km(k, m)
    if l < 1:
        raise UsageError(f"l must be >= 1, got {l}")
    return _base_power(m, l, k)[k]


def coeff_oracle_closed_form(k: int, m, l: int) -> int:
    """Inclusion-exclusion on the number of parts forced above m."""
    m = normalize_m(m, k)
    _check_km(k, m)
    if l < 1:
        raise UsageError(f"l must be >= 1, got {l}")
    total = 0
    for j in range(l + 1):
        term = binom(l, j) * binom(k - j * m - 1, l - 1)
        total += -term if j % 2 else term
    return total


def total_multiset_count(n: int, m, k: int) -> int:
    """Number of k-multisets of [n]_m: coefficient of x^k in (1 + x + ... + x^m)^n."""
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    if k < 0:
        raise UsageError(f"k must be >= 0, got {k}")
    m = normalize_m(m, max(k, 1))
    poly = [1]
    for _ in range(n):
        nxt = [0] * min(len(poly) + m, k + 1)
        for i, c in enumerate(poly):
            if c:
                for j in range(i, min(i + m, k) + 1):
                    nxt[j] += c
        poly = nxt
    return poly[k] if k < len(poly) else 0


def star_size_by_levels(n: int, k: int, m: int) -> int:
    """sum_l C(k, l) * (n-1 choose l-1): k-multisets whose support contains a fixed point."""
    q = ceil_div(k, m)
    return sum(coeff(k, l, m) * binom(n - 1, l - 1) for l in range(q, min(k, n) + 1))


def star_size_direct(n: int, k: int, m: int) -> int:
    """Degree-k coefficient of (x + ... + x^m)(1 + x + ... + x^m)^(n-1)."""
    if n == 1:
        return 1 if k <= m else 0
    return sum(total_multiset_count(n - 1, m, k - a) for a in range(1, min(m, k) + 1))
