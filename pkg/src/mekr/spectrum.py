"""Shape of a coefficient row C(k, q..k): first peak, unimodality, window sets,
and exhaustive checkers for the inequalities and identities built on them.

Every checker returns a `CheckReport`.  With ``strict=True`` (the default) a
failing check raises `PropertyViolation` carrying the first witness instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import _ensure_rows, binom, ceil_div, coeff, normalize_m
from .errors import PropertyViolation, UsageError


@dataclass
class CheckReport:
    property: str
    range: dict
    passed: bool = True
    checked: int = 0
    witness: dict | None = None
    witnesses: list = field(default_factory=list)

    def fail(self, witness: dict, collect: bool = False) -> bool:
        """Record a violation; return True when the caller should stop scanning."""
        if self.witness is None:
            self.witness = witness
        self.passed = False
        if collect:
            self.witnesses.append(witness)
            return False
        return True

    def to_dict(self) -> dict:
        out = {"property": self.property, "range": self.range, "pass": self.passed,
               "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out

    def require(self) -> "CheckReport":
        if not self.passed:
            raise PropertyViolation(f"{self.property} failed", self.to_dict())
        return self


def _finish(report: CheckReport, strict: bool) -> CheckReport:
    return report.require() if strict else report


def _row(k: int, m: int) -> list[int]:
    return _ensure_rows(m, k)[k]


# -- first peak and unimodality ---------------------------------------------


@dataclass(frozen=True)
class SpectrumProfile:
    k: int
    m: int
    alpha: int
    peak_value: int
    unimodal: bool
    alpha_step: int | None = None  # alpha(k) - alpha(k-1), when k >= 2

    @property
    def q(self) -> int:
        return ceil_div(self.k, self.m)

    def to_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "q": self.q, "alpha": self.alpha,
                "peak_value": str(self.peak_value), "unimodal": self.unimodal,
                "alpha_step": self.alpha_step}


def alpha(k: int, m: int) -> int:
    """Smallest l in [q, k] with C(k, l) maximal.  For m = 1 this is k."""
    row = _row(k, m)
    q = ceil_div(k, m)
    best = q
    for l in range(q + 1, k + 1):
        if row[l] > row[best]:
            best = l
    return best


def unimodality_violation(row, lo: int, hi: int, peak: int) -> int | None:
    """First index i where row[lo..hi] breaks "rise to `peak`, then fall"; None if unimodal."""
    for i in range(lo, peak):
        if row[i] > row[i + 1]:
            return i
    for i in range(peak, hi):
        if row[i] < row[i + 1]:
            return i
    return None


def spectrum_profile(k: int, m) -> SpectrumProfile:
    m = normalize_m(m, k)
    if k < 1 or m < 1:
        raise UsageError(f"need k >= 1 and m >= 1, got k={k}, m={m}")
    row = _row(k, m)
    q = ceil_div(k, m)
    a = alpha(k, m)
    bad = unimodality_violation(row, q, k, a)
    if bad is not None:
        raise PropertyViolation(
            f"row C({k}, {q}..{k}) with m={m} is not unimodal at l={bad}",
            {"k": k, "m": m, "alpha": a, "index": bad,
             "row": [str(row[l]) for l in range(q, k + 1)]},
        )
    step = a - alpha(k - 1, m) if k >= 2 else None
    return SpectrumProfile(k=k, m=m, alpha=a, peak_value=row[a], unimodal=True, alpha_step=step)


def check_unimodality(k_max: int, m_values, strict: bool = True, collect: bool = False) -> CheckReport:
    """First-peak unimodality of every row and 0 <= alpha(k) - alpha(k-1) <= 1."""
    m_values = list(m_values)
    report = CheckReport("unimodality", {"k": [1, k_max], "m": m_values})
    for m in m_values:
        prev = None
        for k in range(1, k_max + 1):
            report.checked += 1
            try:
                prof = spectrum_profile(k, m)
            except PropertyViolation as exc:
                if report.fail(exc.witness, collect):
                    return _finish(report, strict)
                prev = None
                continue
            if prev is not None and not 0 <= prof.alpha - prev <= 1:
                if report.fail({"k": k, "m": m, "alpha": prof.alpha, "alpha_prev": prev}, collect):
                    return _finish(report, strict)
            prev = prof.alpha
    return _finish(report, strict)


# -- window sets --------------------------------------------------------------


def window_profile(j: int, r: int) -> list[int]:
    """f(i) = (r-1 choose i) - (r-j-1 choose i) for i = 0..r-1.

    Defined for any j >= 1; when j >= r the second binomial vanishes.
    """
    return [binom(r - 1, i) - binom(r - j - 1, i) for i in range(r)]


@dataclass(frozen=True)
class WindowSet:
    j: int
    l: int
    r: int
    lo: int | None
    hi: int | None

    @property
    def empty(self) -> bool:
        return self.lo is None

    def indices(self) -> range:
        return range(0) if self.empty else range(self.lo, self.hi + 1)

    def __len__(self) -> int:
        return len(self.indices())

    def to_dict(self) -> dict:
        return {"j": self.j, "l": self.l, "r": self.r, "empty": self.empty,
                "lo": self.lo, "hi": self.hi}


def _window(j: int, l: int, r: int) -> WindowSet:
    f = window_profile(j, r)
    hits = [i for i, v in enumerate(f) if v >= l]
    if not hits:
        return WindowSet(j, l, r, None, None)
    lo, hi = hits[0], hits[-1]
    if len(hits) != hi - lo + 1:
        raise PropertyViolation(
            f"window set S(j={j}, l={l}, r={r}) is not an interval",
            {"j": j, "l": l, "r": r, "members": hits, "f": f},
        )
    return WindowSet(j, l, r, lo, hi)


def window_set(j: int, l: int, r: int) -> WindowSet:
    """{i in [0, r-1] : f(i) >= l} as an inclusive interval (or empty)."""
    if not 1 <= j < r:
        raise UsageError(f"window set needs 1 <= j < r, got j={j}, r={r}")
    if l < 1:
        raise UsageError(f"window set needs l >= 1, got l={l}")
    return _window(j, l, r)


def check_windows(m_max: int, strict: bool = True, collect: bool = False) -> CheckReport:
    report = CheckReport("window_sets_consecutive", {"m": [2, m_max]})
    for r in range(2, m_max + 1):
        for j in range(1, r):
            top = max(window_profile(j, r))
            for l in range(1, top + 1):
                report.checked += 1
                try:
                    w = window_set(j, l, r)
                except PropertyViolation as exc:
                    if report.fail(exc.witness, collect):
                        return _finish(report, strict)
                    continue
                if w.empty:
                    if report.fail({"j": j, "l": l, "r": r, "reason": "empty below max f"}, collect):
                        return _finish(report, strict)
    return _finish(report, strict)


# -- the transform identity ---------------------------------------------------


def transform_sides(q: int, m: int, r: int, s: int) -> tuple[int, int, int]:
    """(C((q-1)m+r, s), weighted-binomial form, window-sum form)."""
    lhs = coeff((q - 1) * m + r, s, m)
    weighted = 0
    windowed = 0
    for j in range(1, m + 1):
        kj = (q - 2) * m + j
        f = window_profile(j, r)
        for i in range(r):
            weighted += f[i] * coeff(kj, s - i - 1, m)
        for l in range(1, max(f) + 1):
            for i in _window(j, l, r).indices():
                windowed += coeff(kj, s - i - 1, m)
    return lhs, weighted, windowed


def transform_identity_check(q: int, m: int, r: int, s: int, strict: bool = True) -> CheckReport:
    if q < 2 or not 1 <= r <= m or s < 2:
        raise UsageError(f"need q >= 2, 1 <= r <= m, s >= 2; got q={q}, m={m}, r={r}, s={s}")
    report = CheckReport("transform_identity", {"q": q, "m": m, "r": r, "s": s}, checked=1)
    lhs, weighted, windowed = transform_sides(q, m, r, s)
    if not lhs == weighted == windowed:
        report.fail({"q": q, "m": m, "r": r, "s": s, "lhs": str(lhs),
                     "weighted": str(weighted), "windowed": str(windowed)})
    return _finish(report, strict)


def check_transform(m_max: int, q_max: int, strict: bool = True, collect: bool = False) -> CheckReport:
    report = CheckReport("transform_identity", {"m": [1, m_max], "q": [2, q_max]})
    for m in range(1, m_max + 1):
        for q in range(2, q_max + 1):
            for r in range(1, m + 1):
                for s in range(2, (q - 1) * m + r + 1):
                    sub = transform_identity_check(q, m, r, s, strict=False)
                    report.checked += 1
                    if not sub.passed and report.fail(sub.witness, collect):
                        return _finish(report, strict)
    return _finish(report, strict)


# -- weak spirality, the alpha bound, and the reflected comparison --------------


def spirality_and_bounds_check(k: int, m: int, n_max: int, strict: bool = True,
                               collect: bool = False) -> CheckReport:
    """C(k, q+d) >= C(k, k-d) for 2d <= k-q; 2*alpha <= k+q; and
    C(k, l) >= C(k, n-l) for k+q <= n <= n_max, q <= l <= (n-1)//2."""
    if k < 2 or m < 2:
        raise UsageError(f"need k >= 2 and m >= 2, got k={k}, m={m}")
    q = ceil_div(k, m)
    if n_max < k + q:
        raise UsageError(f"need n_max >= k + q = {k + q}, got {n_max}")
    row = _row(k, m)
    report = CheckReport("spirality_and_bounds", {"k": k, "m": m, "n_max": n_max})

    def c(l):
        return row[l] if 0 < l <= k else 0

    d = 0
    while 2 * d <= k - q:
        report.checked += 1
        if c(q + d) < c(k - d):
            if report.fail({"check": "spirality", "k": k, "m": m, "d": d,
                            "low": str(c(q + d)), "high": str(c(k - d))}, collect):
                return _finish(report, strict)
        d += 1
    a = alpha(k, m)
    report.checked += 1
    if 2 * a > k + q:
        if report.fail({"check": "alpha_bound", "k": k, "m": m, "alpha": a}, collect):
            return _finish(report, strict)
    for n in range(k + q, n_max + 1):
        for l in range(q, (n - 1) // 2 + 1):
            report.checked += 1
            if c(l) < c(n - l):
                if report.fail({"check": "reflection", "k": k, "m": m, "n": n, "l": l,
                                "low": str(c(l)), "high": str(c(n - l))}, collect):
                    return _finish(report, strict)
    return _finish(report, strict)


def check_inequalities(k_max: int, m_max: int, n_extra: int, strict: bool = True,
                       collect: bool = False) -> CheckReport:
    report = CheckReport("spirality_and_bounds",
                         {"k": [2, k_max], "m": [2, m_max], "n": "k+q .. k+q+%d" % n_extra})
    for m in range(2, m_max + 1):
        for k in range(2, k_max + 1):
            sub = spirality_and_bounds_check(k, m, k + ceil_div(k, m) + n_extra,
                                             strict=False, collect=collect)
            report.checked += sub.checked
            if not sub.passed:
                for w in (sub.witnesses or [sub.witness]):
                    if report.fail(w, collect):
                        return _finish(report, strict)
    return _finish(report, strict)


# -- window dominance ---------------------------------------------------------


def _interval(S) -> tuple[int, int]:
    if isinstance(S, range):
        if len(S) == 0 or S.step != 1:
            raise UsageError(f"window must be a nonempty consecutive range, got {S!r}")
        return S.start, S.stop - 1
    lo, hi = S
    if lo > hi:
        raise UsageError(f"window must be nonempty, got [{lo}, {hi}]")
    return lo, hi


def window_dominance(k: int, m: int, S1, S2) -> bool:
    """Whether sum_{S1} C(k, i) >= sum_{S2} C(k, i).

    S1 and S2 are inclusive (lo, hi) pairs or unit-step ranges of positive
    integers with equal length, min S1 <= min S2 and min S1 + max S2 >= k + q.
    """
    lo1, hi1 = _interval(S1)
    lo2, hi2 = _interval(S2)
    q = ceil_div(k, m)
    if lo1 < 1 or lo2 < 1:
        raise UsageError("windows must consist of positive integers")
    if hi1 - lo1 != hi2 - lo2:
        raise UsageError("windows must have equal length")
    if lo1 > lo2:
        raise UsageError("need min S1 <= min S2")
    if lo1 + hi2 < k + q:
        raise UsageError(f"need min S1 + max S2 >= k + q = {k + q}")
    row = _row(k, m)
    return sum(row[max(lo1, 0):min(hi1, k) + 1]) >= sum(row[max(lo2, 0):min(hi2, k) + 1])


def check_window_dominance(k_max: int, m_max: int, strict: bool = True,
                           collect: bool = False) -> CheckReport:
    """Every admissible pair of equal-length windows inside [q, k]."""
    report = CheckReport("window_dominance", {"k": [2, k_max], "m": [2, m_max]})
    for m in range(2, m_max + 1):
        for k in range(2, k_max + 1):
            q = ceil_div(k, m)
            for length in range(1, k - q + 2):
                for lo1 in range(q, k - length + 2):
                    for lo2 in range(max(lo1, k + q - lo1 - length + 1), k - length + 2):
                        report.checked += 1
                        S1 = (lo1, lo1 + length - 1)
                        S2 = (lo2, lo2 + length - 1)
                        if not window_dominance(k, m, S1, S2):
                            if report.fail({"k": k, "m": m, "S1": list(S1), "S2": list(S2)}, collect):
                                return _finish(report, strict)
    return _finish(report, strict)
