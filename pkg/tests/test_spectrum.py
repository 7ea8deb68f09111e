import pytest

from mekr.coeffs import coeff
from mekr.errors import PropertyViolation, UsageError
from mekr.spectrum import (
    alpha,
    check_transform,
    check_windows,
    spectrum_profile,
    spirality_and_bounds_check,
    transform_identity_check,
    transform_sides,
    unimodality_violation,
    window_dominance,
    window_profile,
    window_set,
)


def test_alpha_small():
    assert alpha(1, 2) == 1
    assert alpha(2, 2) == 1
    prof = spectrum_profile(4, 2)
    assert (prof.alpha, prof.peak_value, prof.unimodal) == (3, 3, True)
    assert spectrum_profile(5, 9).alpha == 3


def test_alpha_step_reported():
    assert spectrum_profile(1, 2).alpha_step is None
    assert spectrum_profile(4, 2).alpha_step == alpha(4, 2) - alpha(3, 2)


def test_m_equal_one_convention():
    prof = spectrum_profile(6, 1)
    assert prof.alpha == 6 and prof.peak_value == 1


def test_alpha_is_first_maximum():
    for m in range(2, 6):
        for k in range(1, 40):
            row = [coeff(k, l, m) for l in range(k + 1)]
            a = alpha(k, m)
            assert row[a] == max(row)
            assert all(row[l] < row[a] for l in range(a))


def test_unimodality_detector():
    assert unimodality_violation([0, 1, 3, 2, 1], 1, 4, 2) is None
    assert unimodality_violation([0, 1, 3, 1, 2], 1, 4, 2) == 3
    assert unimodality_violation([0, 2, 1, 3, 1], 1, 4, 3) == 1


@pytest.mark.parametrize("j, l, r, bounds", [(1, 1, 4, (1, 3)), (2, 1, 3, (1, 2)), (1, 100, 4, None)])
def test_window_set_examples(j, l, r, bounds):
    w = window_set(j, l, r)
    if bounds is None:
        assert w.empty and len(w) == 0
    else:
        assert (w.lo, w.hi) == bounds


def test_window_profile_values():
    assert window_profile(1, 4) == [0, 1, 2, 1]
    assert window_profile(2, 3) == [0, 2, 1]


def test_window_set_requires_j_below_r():
    with pytest.raises(UsageError):
        window_set(3, 1, 3)


def test_windows_are_intervals():
    assert check_windows(12).passed


@pytest.mark.parametrize("q, m, r, s, value", [(2, 2, 1, 2, 2), (2, 2, 2, 3, 3), (2, 1, 1, 2, 1)])
def test_transform_examples(q, m, r, s, value):
    assert transform_sides(q, m, r, s) == (value, value, value)
    assert coeff((q - 1) * m + r, s, m) == value
    assert transform_identity_check(q, m, r, s).passed


def test_transform_triple_sum_by_hand():
    # q=2, m=2, r=2, s=3: windows S(1,1,2) = {1}, S(2,1,2) = {0, 1} (j >= r keeps binomial row)
    total = coeff(1, 3 - 1 - 1, 2) + coeff(2, 3 - 0 - 1, 2) + coeff(2, 3 - 1 - 1, 2)
    assert total == 3


def test_transform_range():
    assert check_transform(4, 4).passed


def test_transform_rejects_bad_args():
    with pytest.raises(UsageError):
        transform_identity_check(1, 2, 1, 2)


def test_spirality_examples():
    assert coeff(5, 4, 2) == 4
    assert spirality_and_bounds_check(5, 2, 12).passed
    assert coeff(4, 2, 2) == coeff(4, 4, 2) == 1
    assert spirality_and_bounds_check(4, 2, 6).passed
    for k in range(2, 9):
        # k <= m: the row is binomial, spirality holds with equality
        assert all(coeff(k, 1 + d, 9) == coeff(k, k - d, 9) for d in range(0, (k - 1) // 2 + 1))


def test_spirality_detects_forged_row(monkeypatch):
    import mekr.spectrum as sp

    real = sp._row

    def forged(k, m):
        row = list(real(k, m))
        if (k, m) == (6, 2):
            row[6] = 100
        return row

    monkeypatch.setattr(sp, "_row", forged)
    report = spirality_and_bounds_check(6, 2, 10, strict=False)
    assert not report.passed
    assert report.witness["check"] == "spirality"
    with pytest.raises(PropertyViolation):
        spirality_and_bounds_check(6, 2, 10)


def test_window_dominance_examples():
    assert window_dominance(5, 2, (3, 4), (4, 5))
    assert sum(coeff(5, i, 2) for i in (3, 4)) == 7
    assert sum(coeff(5, i, 2) for i in (4, 5)) == 5
    assert window_dominance(5, 2, (3, 3), (5, 5))
    assert window_dominance(7, 3, range(4, 7), range(4, 7))


@pytest.mark.parametrize("S1, S2", [((3, 4), (4, 6)), ((4, 4), (3, 3)), ((1, 1), (2, 2)), ((4, 3), (4, 3))])
def test_window_dominance_preconditions(S1, S2):
    with pytest.raises(UsageError):
        window_dominance(5, 2, S1, S2)
