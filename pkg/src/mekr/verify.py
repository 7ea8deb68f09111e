"""End-to-end verification of the bounded-multiset EKR bound and its equality cases.

Two independent routes compute the largest intersecting family of
k-multisets of [n]_m:

* reduction -- every maximal intersecting multiset family is the preimage,
  under the support map, of a maximal intersecting family of P([n]); so the
  maximum is taken over the enumerated lattice families.
* brute -- all maximum cliques of the "shares a symbol" graph on the
  multisets themselves (only for at most 22 multisets).

Extremal families are classified up to permutations of [n]; the star is the
family of all multisets containing symbol 1.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .coeffs import ceil_div, coeff, normalize_m, total_multiset_count
from .errors import PropertyViolation, ResourceError, UsageError
from .lattice import (
    MAX_ENUM_N,
    _maximal_tables,
    full_mask,
    phi_inverse_family,
    remark_lattice_family,
    star_lattice,
    SubsetFamily,
)
from .multiset import (
    MultisetFamily,
    enumerate_multisets,
    is_intersecting,
    is_trivial,
    permute,
    star_family,
    star_size,
)

BRUTE_CAP = 22
CASES = ("a", "b", "exceptional", "out_of_range")


def theorem_case(n: int, m: int, k: int) -> str:
    q = ceil_div(k, m)
    if n < k + q:
        return "out_of_range"
    if n > k + q:
        return "a"
    if k > m and k % m:
        return "b"
    return "exceptional"


@dataclass
class VerificationReport:
    n: int
    m: int
    k: int
    q: int
    star_size: int
    max_size: int | None
    method: str
    theorem_case: str
    num_maximal_lattice_families: int | None
    extremal_unique_up_to_iso: bool | None
    nontrivial_extremal_witness: MultisetFamily | None
    extremal_iso_classes: int | None
    duration_ms: int

    def to_record(self) -> dict:
        """One ledger line, with counts as decimal strings."""
        w = self.nontrivial_extremal_witness
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "q": self.q,
            "star_size": str(self.star_size),
            "max_size": None if self.max_size is None else str(self.max_size),
            "method": self.method,
            "theorem_case": self.theorem_case,
            "num_maximal_lattice_families": self.num_maximal_lattice_families,
            "extremal_unique": self.extremal_unique_up_to_iso,
            "witness": None if w is None else w.to_json(),
            "duration_ms": self.duration_ms,
        }

    def to_dict(self) -> dict:
        out = self.to_record()
        out["extremal_iso_classes"] = self.extremal_iso_classes
        return out


@dataclass
class ExtremalSearch:
    max_size: int
    classes: int
    star_is_extremal: bool
    witness: MultisetFamily | None  # least canonical non-star extremal family
    num_lattice_families: int | None = None


class IndexedUniverse:
    """All k-multisets of [n]_m with the action of every permutation precomputed on indices.

    Indices follow lexicographic order of the vectors, so comparing sorted
    index tuples is the same as comparing sorted vector tuples.
    """

    def __init__(self, n: int, m: int, k: int):
        self.family = enumerate_multisets(n, m, k)
        self.verts = list(self.family.members)
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.images = [[self.index[permute(v, perm)] for v in self.verts]
                       for perm in permutations(range(n))]

    def canonical_indices(self, idx) -> tuple:
        return min(tuple(sorted(img[i] for i in idx)) for img in self.images)

    def canonical(self, family) -> MultisetFamily:
        idx = [self.index[v] for v in family]
        return self.family.with_members(self.verts[i] for i in self.canonical_indices(idx))


@lru_cache(maxsize=16)
def indexed_universe(n: int, m: int, k: int) -> IndexedUniverse:
    return IndexedUniverse(n, m, k)


# -- reduction through maximal lattice families -------------------------------


@lru_cache(maxsize=None)
def _mask_perm_tables(n: int) -> tuple:
    full = full_mask(n)
    tables = []
    for perm in permutations(range(n)):
        row = [0] * (full + 1)
        for b in range(full + 1):
            img = 0
            for i in range(n):
                if b >> i & 1:
                    img |= 1 << perm[i]
            row[b] = img
        tables.append(tuple(row))
    return tuple(tables)


def lattice_orbit(n: int, table: int) -> set[int]:
    """Bit-tables of every image of a subset family under permutations of [n]."""
    members = [b for b in range(1, full_mask(n)) if table >> b & 1]
    orbit = set()
    for t in _mask_perm_tables(n):
        img = 0
        for b in members:
            img |= 1 << t[b]
        orbit.add(img)
    return orbit


@lru_cache(maxsize=8)
def _family_levels(n: int) -> tuple:
    """(bit_table, level counts indexed 0..n) for every maximal lattice family."""
    out = []
    for table in _maximal_tables(n):
        counts = [0] * (n + 1)
        b = 1
        t = table >> 1
        while t:
            if t & 1:
                counts[b.bit_count()] += 1
            t >>= 1
            b += 1
        out.append((table, tuple(counts)))
    return tuple(out)


def reduction_search(n: int, m: int, k: int) -> ExtremalSearch:
    q = ceil_div(k, m)
    if n < k + q:
        raise UsageError(f"reduction needs n >= k + q = {k + q}, got n={n}")
    if n > MAX_ENUM_N:
        raise ResourceError(f"reduction limited to n <= {MAX_ENUM_N}")
    hi = min(k, n - 1)
    weights = [coeff(k, l, m) if q <= l <= hi else 0 for l in range(n + 1)]
    families = _family_levels(n)
    sizes = [sum(w * c for w, c in zip(weights, counts)) for _, counts in families]
    best = max(sizes)

    # phi^{-1}(B) only sees the levels q..k, and is injective there
    level_mask = 0
    for b in range(1, full_mask(n)):
        if q <= b.bit_count() <= hi:
            level_mask |= 1 << b
    restricted = sorted({table & level_mask for (table, _), size in zip(families, sizes) if size == best})
    class_of = {}
    reps = []
    for r in restricted:
        if r in class_of:
            continue
        for img in lattice_orbit(n, r):
            class_of[img] = len(reps)
        reps.append(r)
    star_class = class_of.get(star_lattice(n).bit_table & level_mask)

    witness = None
    others = [r for i, r in enumerate(reps) if i != star_class]
    if others:
        universe = indexed_universe(n, m, k)
        for r in others:
            fam = universe.canonical(phi_inverse_family(SubsetFamily.from_bit_table(n, r), n, m, k))
            if witness is None or fam.members < witness.members:
                witness = fam
    return ExtremalSearch(best, len(reps), star_class is not None, witness, len(families))


# -- brute force over the multisets themselves ----------------------------------


def _maximal_cliques(adj: list[int]):
    """Bron-Kerbosch with pivoting over bitmask adjacency; yields vertex bitmasks."""

    def bk(r, p, x):
        if p == 0 and x == 0:
            yield r
            return
        pu = p | x
        pivot = max((v for v in range(len(adj)) if pu >> v & 1), key=lambda v: (p & adj[v]).bit_count())
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            yield from bk(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            cand &= ~low

    yield from bk(0, (1 << len(adj)) - 1, 0)


def brute_force_search(n: int, m: int, k: int, cap: int = BRUTE_CAP) -> tuple[int, list[MultisetFamily], MultisetFamily | None]:
    """(maximum size, canonical representatives of the maximum classes, canonical star or None)."""
    count = total_multiset_count(n, m, k)
    if count > cap:
        raise ResourceError(f"{count} multisets exceeds the brute-force cap {cap}")
    universe = indexed_universe(n, m, k)
    verts = universe.verts
    if not verts:
        return 0, [], None
    adj = [0] * len(verts)
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if i != j and any(x and y for x, y in zip(a, b)):
                adj[i] |= 1 << j
    best = 0
    cliques = []
    for c in _maximal_cliques(adj):
        size = c.bit_count()
        if size > best:
            best, cliques = size, [c]
        elif size == best:
            cliques.append(c)
    classes = {universe.canonical_indices([i for i in range(len(verts)) if c >> i & 1]) for c in cliques}
    reps = [universe.family.with_members(verts[i] for i in cls) for cls in sorted(classes)]
    return best, reps, universe.canonical(star_family(n, m, k))


def brute_force_max(n: int, m, k: int, cap: int = BRUTE_CAP) -> tuple[int, list[MultisetFamily]]:
    """Exact maximum intersecting family size and one canonical family per maximum class."""
    m = normalize_m(m, k)
    best, reps, _ = brute_force_search(n, m, k, cap)
    return best, reps


def _brute_extremal(n: int, m: int, k: int) -> ExtremalSearch:
    best, reps, star_rep = brute_force_search(n, m, k)
    others = [r for r in reps if star_rep is None or r.members != star_rep.members]
    return ExtremalSearch(best, len(reps), len(others) < len(reps), others[0] if others else None)


# -- the exceptional construction ---------------------------------------------------


def construct_remark_N(n: int, m, k: int) -> MultisetFamily:
    """A non-trivial intersecting family as large as the star, at n = k + q with k <= m or m | k."""
    m = normalize_m(m, k)
    q = ceil_div(k, m)
    if m < 2 or k < 2 or n != k + q or not (k <= m or k % m == 0):
        raise UsageError(f"construction needs m >= 2, k >= 2, n = k + q and (k <= m or m | k); "
                         f"got n={n}, m={m}, k={k}")
    return phi_inverse_family(remark_lattice_family(n, q), n, m, k)


# -- single instance ------------------------------------------------------------------


def choose_method(n: int, m: int, k: int, method: str = "auto") -> str:
    brute_ok = total_multiset_count(n, m, k) <= BRUTE_CAP
    reduction_ok = n <= MAX_ENUM_N
    if method == "auto":
        if brute_ok and reduction_ok:
            return "both"
        if reduction_ok:
            return "reduction"
        if brute_ok:
            return "brute"
        raise ResourceError(f"(n={n}, m={m}, k={k}) is too large for either exhaustive path")
    if method not in ("reduction", "brute", "both"):
        raise UsageError(f"unknown method {method!r}")
    if method in ("brute", "both") and not brute_ok:
        raise ResourceError(f"brute force needs at most {BRUTE_CAP} multisets")
    if method in ("reduction", "both") and not reduction_ok:
        raise ResourceError(f"reduction needs n <= {MAX_ENUM_N}")
    return method


def verify_instance(n: int, m, k: int, method: str = "auto") -> VerificationReport:
    start = time.perf_counter()
    m = normalize_m(m, k)
    if k < 2:
        raise UsageError(f"need k >= 2, got {k}")
    q = ceil_div(k, m)
    if n < k + q:
        raise UsageError(f"need n >= k + q = {k + q}, got n={n}")
    method = choose_method(n, m, k, method)
    case = theorem_case(n, m, k)
    star = star_size(n, m, k)
    context = {"n": n, "m": m, "k": k, "q": q, "case": case, "star_size": str(star)}

    result = None
    if method in ("reduction", "both"):
        result = reduction_search(n, m, k)
    if method in ("brute", "both"):
        brute = _brute_extremal(n, m, k)
        if result is not None:
            same = (result.max_size, result.classes, result.witness) == (brute.max_size, brute.classes, brute.witness)
            if not same:
                raise PropertyViolation("reduction and brute force disagree", {
                    **context,
                    "reduction": [str(result.max_size), result.classes],
                    "brute": [str(brute.max_size), brute.classes],
                })
            brute.num_lattice_families = result.num_lattice_families
        result = brute

    if result.max_size != star:
        raise PropertyViolation(f"maximum intersecting family has size {result.max_size}, star has {star}",
                                {**context, "max_size": str(result.max_size),
                                 "witness": result.witness.to_json() if result.witness else None})
    if not result.star_is_extremal:
        raise PropertyViolation("star missing from the extremal classes", context)
    unique = result.classes == 1
    if unique != (case in ("a", "b")):
        raise PropertyViolation(
            "uniqueness contradicts the predicted case",
            {**context, "extremal_unique": unique, "classes": result.classes,
             "witness": result.witness.to_json() if result.witness else None})
    if result.witness is not None and (is_trivial(result.witness) or not is_intersecting(result.witness)):
        raise PropertyViolation("extremal witness is trivial or not intersecting",
                                {**context, "witness": result.witness.to_json()})

    return VerificationReport(
        n=n, m=m, k=k, q=q,
        star_size=star,
        max_size=result.max_size,
        method=method,
        theorem_case=case,
        num_maximal_lattice_families=result.num_lattice_families,
        extremal_unique_up_to_iso=unique,
        nontrivial_extremal_witness=result.witness,
        extremal_iso_classes=result.classes,
        duration_ms=round((time.perf_counter() - start) * 1000),
    )


def out_of_range_report(n: int, m: int, k: int) -> VerificationReport:
    """Record for n < k + q: brute-force figures when small enough, no assertion."""
    start = time.perf_counter()
    q = ceil_div(k, m)
    best = unique = classes = witness = None
    method = "none"
    if total_multiset_count(n, m, k) <= BRUTE_CAP:
        method = "brute"
        found = _brute_extremal(n, m, k)
        best, classes, witness = found.max_size, found.classes, found.witness
        unique = classes == 1 and found.star_is_extremal
    return VerificationReport(
        n=n, m=m, k=k, q=q,
        star_size=star_size(n, m, k),
        max_size=best,
        method=method,
        theorem_case="out_of_range",
        num_maximal_lattice_families=None,
        extremal_unique_up_to_iso=unique,
        nontrivial_extremal_witness=witness,
        extremal_iso_classes=classes,
        duration_ms=round((time.perf_counter() - start) * 1000),
    )


# -- sweeps -----------------------------------------------------------------------------


def sweep_instances(n_max: int, m_max: int, k_max: int, k_min: int = 2):
    for m in range(1, m_max + 1):
        for k in range(k_min, k_max + 1):
            for n in range(2, n_max + 1):
                yield n, m, k


def _run_one(args) -> VerificationReport:
    n, m, k, method = args
    if n < k + ceil_div(k, m):
        return out_of_range_report(n, m, k)
    return verify_instance(n, m, k, method)


def record_line(record: dict) -> str:
    return json.dumps(record)


def sweep(n_max: int, m_max: int, k_max: int, ledger_path=None, *, k_min: int = 2,
          threads: int = 1, method: str = "auto") -> dict:
    """Verify every instance in range, appending one ledger line per instance.

    A property violation propagates after the records before it are written.
    """
    jobs = [(n, m, k, method) for n, m, k in sweep_instances(n_max, m_max, k_max, k_min)]
    summary = {"instances": 0, "violations": 0, "by_case": {c: 0 for c in CASES},
               "unique": 0, "non_unique": 0, "both_methods": 0}
    ledger = open(ledger_path, "a", encoding="utf-8") if ledger_path else None
    try:
        if threads > 1:
            pool = ProcessPoolExecutor(max_workers=threads)
            results = pool.map(_run_one, jobs)
        else:
            pool = None
            results = map(_run_one, jobs)
        try:
            for report in results:
                summary["instances"] += 1
                summary["by_case"][report.theorem_case] += 1
                if report.theorem_case != "out_of_range":
                    summary["unique" if report.extremal_unique_up_to_iso else "non_unique"] += 1
                if report.method == "both":
                    summary["both_methods"] += 1
                if ledger:
                    ledger.write(record_line(report.to_record()) + "\n")
                    ledger.flush()
        except PropertyViolation:
            summary["violations"] += 1
            raise
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
    finally:
        if ledger:
            ledger.close()
    summary["pass"] = summary["violations"] == 0
    return summary


def default_threads() -> int:
    env = os.environ.get("MEKR_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
