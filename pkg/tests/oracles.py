"""Slow, obviously-correct reference computations used only by the tests."""

from itertools import combinations, product


def compositions_count(k, m, l):
    return sum(1 for parts in product(range(1, m + 1), repeat=l) if sum(parts) == k)


def multisets_by_product(n, m, k):
    return sorted(v for v in product(range(m + 1), repeat=n) if sum(v) == k)


def maximal_families_by_filter(n):
    """Every choice of one side per complement pair, kept if intersecting."""
    full = (1 << n) - 1
    pairs = [(b, full ^ b) for b in range(1, full) if b < full ^ b]
    out = []
    for choice in product((0, 1), repeat=len(pairs)):
        fam = [p[c] for p, c in zip(pairs, choice)]
        if all(a & b for a, b in combinations(fam, 2)):
            out.append(frozenset(fam))
    return out


def max_intersecting_by_subsets(members):
    """Largest pairwise-intersecting subfamily, scanning every subfamily (<= ~16 members)."""
    members = list(members)
    best = 0
    best_fams = []
    for size in range(len(members), 0, -1):
        for combo in combinations(members, size):
            if all(any(x and y for x, y in zip(a, b)) for a, b in combinations(combo, 2)):
                best_fams.append(combo)
        if best_fams:
            return size, best_fams
    return best, best_fams
