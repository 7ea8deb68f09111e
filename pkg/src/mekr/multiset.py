"""k-multisets of [n]_m as multiplicity vectors, and families of them.

A multiset is a plain tuple ``(m_1, ..., m_n)`` with ``0 <= m_i <= m``; e.g.
``(2, 0, 1)`` is {1, 1, 3}.  Families are immutable and keep their members in
ascending lexicographic order so equality and serialization are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .coeffs import ceil_div, normalize_m, star_size_by_levels, star_size_direct, total_multiset_count
from .errors import PropertyViolation, ResourceError, UsageError

DEFAULT_CAP = 10**7
MAX_ISO_N = 8

Multiset = tuple


@dataclass(frozen=True)
class MultisetFamily:
    n: int
    m: int
    k: int
    members: tuple

    def __post_init__(self):
        members = tuple(sorted(set(tuple(a) for a in self.members)))
        for a in members:
            if len(a) != self.n or sum(a) != self.k or min(a, default=0) < 0 or max(a, default=0) > self.m:
                raise UsageError(f"{list(a)} is not a {self.k}-multiset of [{self.n}]_{self.m}")
        object.__setattr__(self, "members", members)

    @property
    def q(self) -> int:
        return ceil_div(self.k, self.m)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, a):
        return tuple(a) in self.member_set

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in self.members]

    def with_members(self, members) -> "MultisetFamily":
        return MultisetFamily(self.n, self.m, self.k, tuple(members))


def iter_multisets(n: int, m: int, k: int):
    """Yield k-multisets of [n]_m in ascending lexicographic order."""
    if n == 0:
        if k == 0:
            yield ()
        return
    for first in range(max(0, k - m * (n - 1)), min(m, k) + 1):
        for rest in iter_multisets(n - 1, m, k - first):
            yield (first,) + rest


def enumerate_multisets(n: int, m, k: int, cap: int = DEFAULT_CAP) -> MultisetFamily:
    if n < 1 or k < 0:
        raise UsageError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    m = normalize_m(m, max(k, 1))
    count = total_multiset_count(n, m, k)
    if count > cap:
        raise ResourceError(f"{count} multisets exceeds the enumeration cap {cap}")
    return MultisetFamily(n, m, k, tuple(iter_multisets(n, m, k)))


def intersection_size(a, b) -> int:
    """|A ∩ B| as the sum of coordinate-wise minimum multiplicities."""
    if len(a) != len(b):
        raise UsageError(f"multisets over different ground sets ({len(a)} vs {len(b)})")
    return sum(min(x, y) for x, y in zip(a, b))


def is_intersecting(family, t: int = 1) -> bool:
    members = list(family)
    for i, a in enumerate(members):
        for b in members[i:]:
            if intersection_size(a, b) < t:
                return False
    return True


def fst_family(n: int, m, k: int, s: int, t: int, convention: str = "multiplicity",
               cap: int = DEFAULT_CAP) -> MultisetFamily:
    """All k-multisets with at least s + t elements in [2s + t].

    ``convention="multiplicity"`` counts repeated symbols (sum of m_i over
    i <= 2s+t); ``"support"`` counts distinct symbols.  The two agree on the
    star s=0, t=1.  Only the support count guarantees a t-intersecting family
    when m >= 2 and (s, t) != (0, 1).
    """
    m = normalize_m(m, k)
    if t < 1 or s < 0 or s > k - t or 2 * s + t > n:
        raise UsageError(f"invalid (s, t) = ({s}, {t}) for n={n}, k={k}")
    width = 2 * s + t
    if convention == "multiplicity":
        def inside(a):
            return sum(a[:width])
    elif convention == "support":
        def inside(a):
            return sum(1 for x in a[:width] if x)
    else:
        raise UsageError(f"unknown convention {convention!r}")
    universe = enumerate_multisets(n, m, k, cap=cap)
    return universe.with_members(a for a in universe if inside(a) >= s + t)


def star_family(n: int, m, k: int, x: int = 1, cap: int = DEFAULT_CAP) -> MultisetFamily:
    """All k-multisets containing the symbol x (1-based)."""
    m = normalize_m(m, k)
    if not 1 <= x <= n:
        raise UsageError(f"star centre {x} outside [1, {n}]")
    universe = enumerate_multisets(n, m, k, cap=cap)
    return universe.with_members(a for a in universe if a[x - 1] >= 1)


def star_size(n: int, m, k: int) -> int:
    """|F_{0,1}| two ways: by support levels, and from the generating function."""
    m = normalize_m(m, k)
    if n < 1 or k < 1:
        raise UsageError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    by_levels = star_size_by_levels(n, k, m)
    direct = star_size_direct(n, k, m)
    if by_levels != direct:
        raise PropertyViolation("star size paths disagree",
                                {"n": n, "m": m, "k": k, "by_levels": str(by_levels), "direct": str(direct)})
    return by_levels


def is_trivial(family) -> bool:
    """Whether some symbol appears in every member (the empty family counts as trivial)."""
    members = list(family)
    if not members:
        return True
    n = len(members[0])
    return any(all(a[i] >= 1 for a in members) for i in range(n))


def permute(a, perm) -> tuple:
    """Image of a multiplicity vector under i -> perm[i] (0-based positions)."""
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[perm[i]] = x
    return tuple(out)


def _column_signature(members, i):
    return tuple(sorted(a[i] for a in members))


def _signature_preserving_perms(src, dst, n):
    """Permutations sending each position of src to a position of dst with the same column profile."""
    sig_src = [_column_signature(src, i) for i in range(n)]
    sig_dst = [_column_signature(dst, i) for i in range(n)]
    if sorted(sig_src) != sorted(sig_dst):
        return
    perm = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield tuple(perm)
            return
        for j in range(n):
            if not used[j] and sig_dst[j] == sig_src[i]:
                used[j] = True
                perm[i] = j
                yield from extend(i + 1)
                used[j] = False

    yield from extend(0)


def are_isomorphic(f1: MultisetFamily, f2: MultisetFamily) -> bool:
    if (f1.n, f1.m, f1.k) != (f2.n, f2.m, f2.k):
        raise UsageError("families over different (n, m, k)")
    if f1.n > MAX_ISO_N:
        raise ResourceError(f"isomorphism search limited to n <= {MAX_ISO_N}")
    if len(f1) != len(f2):
        return False
    target = set(f2.members)
    for perm in _signature_preserving_perms(f1.members, f2.members, f1.n):
        if all(permute(a, perm) in target for a in f1.members):
            return True
    return False


def canonical_form(family: MultisetFamily) -> MultisetFamily:
    """Lexicographically least image of the family over all permutations of [n]."""
    if family.n > MAX_ISO_N:
        raise ResourceError(f"canonical form limited to n <= {MAX_ISO_N}")
    best = None
    for perm in permutations(range(family.n)):
        image = tuple(sorted(permute(a, perm) for a in family.members))
        if best is None or image < best:
            best = image
    return family.with_members(best or ())


def support(a) -> int:
    """Bitmask of symbols present in a (bit i-1 for symbol i)."""
    mask = 0
    for i, x in enumerate(a):
        if x:
            mask |= 1 << i
    return mask


def compositions(k: int, parts: int, m: int):
    """Ordered tuples of `parts` integers in [1, m] summing to k, in lexicographic order."""
    if parts == 0:
        if k == 0:
            yield ()
        return
    for first in range(max(1, k - m * (parts - 1)), min(m, k - (parts - 1)) + 1):
        for rest in compositions(k - first, parts - 1, m):
            yield (first,) + rest


def exact_support_multisets(mask: int, n: int, m: int, k: int) -> list[tuple]:
    """All k-multisets of [n]_m whose support is exactly `mask`."""
    positions = [i for i in range(n) if mask >> i & 1]
    out = []
    for parts in compositions(k, len(positions), m):
        a = [0] * n
        for i, x in zip(positions, parts):
            a[i] = x
        out.append(tuple(a))
    return out
