"""Families of nonempty proper subsets of [n], encoded as n-bit masks.

Symbol i (1-based) is bit i-1.  The central objects are maximal intersecting
families: they pick exactly one set from every complement pair {B, [n] - B}
and are closed upwards.  The support map `phi` sends a multiset to its
support, and `phi_inverse_*` pull a subset family back to multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .coeffs import binom, ceil_div, coeff, normalize_m
from .errors import ResourceError, UsageError
from .multiset import DEFAULT_CAP, MultisetFamily, exact_support_multisets, support

MAX_ENUM_N = 7


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_to_set(b: int) -> list[int]:
    return [i + 1 for i in range(b.bit_length()) if b >> i & 1]


def set_to_mask(symbols) -> int:
    b = 0
    for i in symbols:
        b |= 1 << (i - 1)
    return b


@dataclass(frozen=True)
class SubsetFamily:
    n: int
    members: tuple

    def __post_init__(self):
        full = full_mask(self.n)
        members = tuple(sorted(set(int(b) for b in self.members)))
        for b in members:
            if not 0 < b < full:
                raise UsageError(f"{b} is not a nonempty proper subset of [{self.n}]")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_bit_table(cls, n: int, table: int) -> "SubsetFamily":
        return cls(n, tuple(b for b in range(1, full_mask(n)) if table >> b & 1))

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def bit_table(self) -> int:
        t = 0
        for b in self.members:
            t |= 1 << b
        return t

    @cached_property
    def level_counts(self) -> dict[int, int]:
        counts = {l: 0 for l in range(1, self.n)}
        for b in self.members:
            counts[b.bit_count()] += 1
        return counts

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, b):
        return b in self.member_set

    def level(self, l: int) -> list[int]:
        return [b for b in self.members if b.bit_count() == l]

    def restricted(self, lo: int, hi: int) -> "SubsetFamily":
        return SubsetFamily(self.n, tuple(b for b in self.members if lo <= b.bit_count() <= hi))

    def to_json(self) -> list[int]:
        return list(self.members)


@dataclass(frozen=True)
class LevelProfile:
    n: int
    counts: dict

    def __post_init__(self):
        for l in self.counts:
            if not 1 <= l <= self.n - 1:
                raise UsageError(f"level {l} outside [1, {self.n - 1}]")

    def __getitem__(self, l: int) -> int:
        return self.counts.get(l, 0)

    def nonzero(self) -> dict[int, int]:
        return {l: c for l, c in sorted(self.counts.items()) if c}


def star_lattice(n: int, x: int = 1) -> SubsetFamily:
    """U: every nonempty proper subset of [n] containing x."""
    bit = 1 << (x - 1)
    return SubsetFamily(n, tuple(b for b in range(1, full_mask(n)) if b & bit))


def is_intersecting_sets(members) -> bool:
    members = list(members)
    for i, a in enumerate(members):
        for b in members[i:]:
            if a & b == 0:
                return False
    return True


def complement_pairs(n: int) -> list[tuple[int, int]]:
    """Complement pairs (small, large), ordered by the size of the small side, then by mask."""
    full = full_mask(n)
    pairs = []
    for b in range(1, full):
        c = full ^ b
        if (b.bit_count(), b) < (c.bit_count(), c):
            pairs.append((b, c))
    pairs.sort(key=lambda p: (p[0].bit_count(), p[0]))
    return pairs


@lru_cache(maxsize=None)
def _proper_supersets(n: int) -> tuple:
    full = full_mask(n)
    sups = [()] * (full + 1)
    for b in range(1, full):
        rest = full ^ b
        out = []
        sub = rest
        # walk every subset of the complement, skipping the one that fills [n]
        while True:
            s = b | sub
            if s != full:
                out.append(s)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        sups[b] = tuple(out)
    return tuple(sups)


def iter_maximal_bit_tables(n: int):
    """Yield the membership bit-table of each maximal intersecting family of P([n]).

    Backtracks over complement pairs, smallest side first.  Choosing B puts
    every proper superset of B in and every subset of its complement out,
    which is exactly the closure the family must have anyway.
    """
    if n < 2:
        raise UsageError(f"need n >= 2, got {n}")
    if n > MAX_ENUM_N:
        raise ResourceError(f"maximal-family enumeration limited to n <= {MAX_ENUM_N}")
    full = full_mask(n)
    pairs = complement_pairs(n)
    sups = _proper_supersets(n)
    status = [0] * (full + 1)  # 1 in, -1 out, 0 undecided
    table = 0

    def assign(b):
        nonlocal table
        changed = []
        for s in sups[b]:
            st = status[s]
            if st == 1:
                continue
            if st == -1:
                undo(changed)
                return None
            status[s] = 1
            status[full ^ s] = -1
            table |= 1 << s
            changed.append(s)
        return changed

    def undo(changed):
        nonlocal table
        for s in changed:
            status[s] = 0
            status[full ^ s] = 0
            table ^= 1 << s

    def rec(idx):
        while idx < len(pairs) and status[pairs[idx][0]] != 0:
            idx += 1
        if idx == len(pairs):
            yield table
            return
        for side in pairs[idx]:
            changed = assign(side)
            if changed is None:
                continue
            yield from rec(idx + 1)
            undo(changed)

    yield from rec(0)


@lru_cache(maxsize=8)
def _maximal_tables(n: int) -> tuple:
    return tuple(sorted(iter_maximal_bit_tables(n)))


def enumerate_maximal_intersecting(n: int) -> list[SubsetFamily]:
    """All maximal intersecting families of P([n]), ordered by bit-table."""
    return [SubsetFamily.from_bit_table(n, t) for t in _maximal_tables(n)]


def count_maximal_intersecting(n: int) -> int:
    return sum(1 for _ in iter_maximal_bit_tables(n))


def is_up_closed(family: SubsetFamily) -> bool:
    full = full_mask(family.n)
    for b in family.members:
        for i in range(family.n):
            s = b | (1 << i)
            if s != b and s != full and s not in family:
                return False
    return True


def is_maximal_intersecting(family: SubsetFamily) -> bool:
    """One member from each complement pair, and intersecting.

    Given one-per-pair, intersecting is equivalent to being up-closed (a
    disjoint pair B1, B2 would force both B2 and its complement in), which is
    the check used here: it is linear in the family size rather than quadratic.
    """
    full = full_mask(family.n)
    for b in range(1, full):
        if (b in family) == ((full ^ b) in family):
            return False
    return is_up_closed(family)


def addable_sets(family: SubsetFamily) -> list[int]:
    """Sets outside the family that could join it without breaking intersection."""
    return [b for b in range(1, full_mask(family.n))
            if b not in family and all(b & x for x in family.members)]


def phi(a, n: int | None = None) -> int:
    """Support of a multiset as a mask; must be a nonempty proper subset of [n]."""
    n = len(a) if n is None else n
    if len(a) != n:
        raise UsageError(f"multiset has {len(a)} coordinates, expected {n}")
    b = support(a)
    if not 0 < b < full_mask(n):
        raise UsageError(f"support of {list(a)} is not a nonempty proper subset of [{n}]")
    return b


def _require_range(n: int, k: int, m: int) -> int:
    q = ceil_div(k, m)
    if n < k + q:
        raise UsageError(f"need n >= k + q = {k + q}, got n={n}")
    return q


def phi_inverse_size(family: SubsetFamily, k: int, m) -> int:
    """sum_l C(k, l) * |B(l)|: the number of k-multisets with support in the family."""
    m = normalize_m(m, k)
    q = _require_range(family.n, k, m)
    counts = family.level_counts
    return sum(coeff(k, l, m) * counts.get(l, 0) for l in range(q, min(k, family.n - 1) + 1))


def phi_inverse_family(family: SubsetFamily, n: int, m, k: int, cap: int = DEFAULT_CAP) -> MultisetFamily:
    m = normalize_m(m, k)
    if family.n != n:
        raise UsageError(f"family lives on [{family.n}], not [{n}]")
    _require_range(n, k, m)
    size = phi_inverse_size(family, k, m)
    if size > cap:
        raise ResourceError(f"{size} multisets exceeds the enumeration cap {cap}")
    members = []
    for b in family.members:
        if b.bit_count() <= k:
            members.extend(exact_support_multisets(b, n, m, k))
    return MultisetFamily(n, m, k, tuple(members))


def support_family(family: MultisetFamily) -> SubsetFamily:
    return SubsetFamily(family.n, tuple(phi(a, family.n) for a in family.members))


def complete_to_maximal(n: int, members) -> SubsetFamily:
    """Greedy maximal extension of an intersecting subset family.

    Pairs are scanned in ascending order of their smaller mask; for an
    undecided pair the first side that keeps the family intersecting is kept
    (at least one always does).
    """
    chosen = set(members)
    if not is_intersecting_sets(chosen):
        raise UsageError("cannot complete a family that is not intersecting")
    full = full_mask(n)
    for b in range(1, full):
        c = full ^ b
        if b > c or b in chosen or c in chosen:
            continue
        if all(b & x for x in chosen):
            chosen.add(b)
        else:
            chosen.add(c)
    return SubsetFamily(n, tuple(chosen))


def deficiency_profile(family: SubsetFamily) -> LevelProfile:
    """Level counts of D = U - B, where U is the star at symbol 1."""
    if not is_maximal_intersecting(family):
        raise UsageError("deficiency profile needs a maximal intersecting family")
    counts = {l: 0 for l in range(1, family.n)}
    for b in range(1, full_mask(family.n)):
        if b & 1 and b not in family:
            counts[b.bit_count()] += 1
    return LevelProfile(family.n, counts)


def star_level_count(n: int, l: int) -> int:
    """|U(l)| = (n-1 choose l-1)."""
    return binom(n - 1, l - 1)


def remark_lattice_family(n: int, q: int) -> SubsetFamily:
    """N = (U - D) ∪ {complements of D}, with D the subsets of [q] that contain 1."""
    if not 1 <= q < n:
        raise UsageError(f"need 1 <= q < n, got q={q}, n={n}")
    full = full_mask(n)
    low = full_mask(q)
    deficient = [b for b in range(1, low + 1) if b & 1]
    u = star_lattice(n)
    kept = [b for b in u.members if not (b & 1 and b & ~low == 0)]
    return SubsetFamily(n, tuple(kept) + tuple(full ^ d for d in deficient))
