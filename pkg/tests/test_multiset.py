import math
import random

import pytest
from hypothesis import given, strategies as st

from mekr.coeffs import total_multiset_count
from mekr.errors import ResourceError, UsageError
from mekr.multiset import (
    MultisetFamily,
    are_isomorphic,
    canonical_form,
    enumerate_multisets,
    fst_family,
    intersection_size,
    is_intersecting,
    is_trivial,
    permute,
    star_family,
    star_size,
)

from oracles import multisets_by_product

TRIANGLE = MultisetFamily(3, 2, 2, ((1, 1, 0), (1, 0, 1), (0, 1, 1)))


def test_enumeration_examples():
    fam = enumerate_multisets(3, 2, 2)
    assert fam.members == ((0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0))
    assert len(enumerate_multisets(4, 2, 3)) == 16
    assert enumerate_multisets(2, 1, 2).members == ((1, 1),)


def test_enumeration_matches_product_and_count():
    for n in range(1, 9):
        for m in range(1, 4):
            for k in range(0, 9):
                if n <= 5:
                    assert list(enumerate_multisets(n, m, k).members) == multisets_by_product(n, m, k)
                else:
                    assert len(enumerate_multisets(n, m, k)) == total_multiset_count(n, m, k)


def test_enumeration_cap():
    with pytest.raises(ResourceError):
        enumerate_multisets(10, 3, 10, cap=1000)


def test_family_rejects_foreign_members():
    with pytest.raises(UsageError):
        MultisetFamily(3, 2, 2, ((3, 0, 0),))
    with pytest.raises(UsageError):
        MultisetFamily(3, 2, 2, ((1, 0, 0),))


def test_intersection_examples():
    assert intersection_size((2, 0), (0, 2)) == 0
    assert intersection_size((2, 1), (1, 2)) == 2
    with pytest.raises(UsageError):
        intersection_size((1, 1), (1, 1, 0))


vectors = st.integers(1, 5).flatmap(
    lambda n: st.tuples(*[st.integers(0, 3)] * n).flatmap(
        lambda a: st.tuples(st.just(a), st.tuples(*[st.integers(0, 3)] * len(a)))))


@given(vectors)
def test_intersection_symmetric_and_bounded(pair):
    a, b = pair
    assert intersection_size(a, b) == intersection_size(b, a)
    assert intersection_size(a, b) <= min(sum(a), sum(b))
    assert intersection_size(a, a) == sum(a)


def test_fst_examples():
    assert fst_family(4, 2, 2, 0, 1).members == ((1, 0, 0, 1), (1, 0, 1, 0), (1, 1, 0, 0), (2, 0, 0, 0))
    assert len(fst_family(4, 2, 2, 1, 1)) == 6
    assert len(fst_family(3, 2, 2, 0, 1)) == 3


def test_fst_preconditions():
    with pytest.raises(UsageError):
        fst_family(4, 2, 2, 2, 1)  # 2s + t > n
    with pytest.raises(UsageError):
        fst_family(6, 2, 2, 2, 1)  # s > k - t
    with pytest.raises(UsageError):
        fst_family(4, 2, 2, 0, 0)


def test_fst_multiplicity_convention_is_not_intersecting():
    fam = fst_family(4, 2, 2, 1, 1)
    assert (2, 0, 0, 0) in fam and (0, 2, 0, 0) in fam
    assert not is_intersecting(fam)


def test_fst_support_convention_is_t_intersecting():
    for n in range(2, 7):
        for m in range(1, 4):
            for k in range(1, 5):
                for t in range(1, k + 1):
                    for s in range(0, k - t + 1):
                        if 2 * s + t > n:
                            continue
                        fam = fst_family(n, m, k, s, t, convention="support")
                        assert is_intersecting(fam, t), (n, m, k, s, t)
                        if m == 1:
                            assert fam == fst_family(n, m, k, s, t)


def test_star_family_is_intersecting_multiplicity_convention():
    for n in range(2, 6):
        for m in range(1, 4):
            for k in range(1, 5):
                assert is_intersecting(fst_family(n, m, k, 0, 1))


def test_star_size_examples():
    assert star_size(4, 2, 2) == 4
    assert star_size(6, 2, 4) == 1 * 5 + 3 * 10 + 1 * 10 == 45
    for n in range(2, 10):
        for k in range(1, n + 1):
            assert star_size(n, 1, k) == math.comb(n - 1, k - 1)


def test_star_size_matches_family():
    for n in range(2, 8):
        for m in range(1, 4):
            for k in range(1, 6):
                assert star_size(n, m, k) == len(fst_family(n, m, k, 0, 1)) == len(star_family(n, m, k))


def test_triviality():
    assert is_trivial(star_family(4, 2, 3))
    assert not is_trivial(TRIANGLE)
    assert is_trivial(MultisetFamily(3, 2, 2, ()))


def test_isomorphism_examples():
    s1, s2 = star_family(3, 2, 2, 1), star_family(3, 2, 2, 2)
    assert are_isomorphic(s1, s2)
    assert not are_isomorphic(s1, TRIANGLE)
    assert are_isomorphic(TRIANGLE, TRIANGLE)


def test_isomorphism_against_all_permutations():
    from itertools import permutations

    s1 = star_family(3, 2, 2, 1)
    images = {tuple(sorted(permute(a, p) for a in s1)) for p in permutations(range(3))}
    assert TRIANGLE.members not in images


def test_isomorphism_limit():
    fam = star_family(9, 1, 1)
    with pytest.raises(ResourceError):
        are_isomorphic(fam, fam)


def test_isomorphism_is_an_equivalence_on_samples():
    rng = random.Random(7)
    universe = enumerate_multisets(4, 2, 3).members
    fams = []
    for _ in range(12):
        base = MultisetFamily(4, 2, 3, tuple(rng.sample(universe, 5)))
        perm = list(range(4))
        rng.shuffle(perm)
        fams.append(base)
        fams.append(base.with_members(permute(a, perm) for a in base))
    for a in fams:
        assert are_isomorphic(a, a)
    for a in fams:
        for b in fams:
            assert are_isomorphic(a, b) == are_isomorphic(b, a)
            assert are_isomorphic(a, b) == (canonical_form(a) == canonical_form(b))
    for a, b, c in zip(fams, fams[1:], fams[2:]):
        if are_isomorphic(a, b) and are_isomorphic(b, c):
            assert are_isomorphic(a, c)


def test_canonical_form_is_least_image():
    canon = canonical_form(star_family(3, 2, 2, 2))
    assert canon.members == ((0, 0, 2), (0, 1, 1), (1, 0, 1))
