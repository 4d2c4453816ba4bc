import pytest
from hypothesis import given, strategies as st

from dormant.errors import NotInXi, NotUnit
from dormant.radii import (
    ExponentMultiset,
    GeneralRadius,
    Radius,
    ResidueClass,
    digits,
    edge_numbers_for_radius,
    enum_Xi2,
    is_in_Xi,
    lift_fiber,
    radius_from_edge_number,
    radius_from_exponent,
    reduce_level,
)

PRIMES = [3, 5, 7, 11, 13]


def test_digits_examples():
    d = ResidueClass(3, 3, 17)
    ds, prefixes = digits(d)
    assert ds == [2, 2, 1]
    assert prefixes == [2, 8, 17]
    assert digits(ResidueClass(3, 3, 0))[0] == [0, 0, 0]
    assert digits(ResidueClass(3, 3, 26))[0] == [2, 2, 2]


def test_enum_xi2_examples():
    assert [r.rep for r in enum_Xi2(5, 1)] == [1, 2]
    assert [r.rep for r in enum_Xi2(3, 2)] == [1, 2, 4]
    assert [r.rep for r in enum_Xi2(3, 1)] == [1]


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("N", [1, 2, 3])
def test_enum_xi2_cardinality(p, N):
    assert len(enum_Xi2(p, N)) == p ** (N - 1) * (p - 1) // 2


def test_radius_canonical_rep():
    assert Radius(5, 1, 3).rep == 2  # class {3, 2}
    assert Radius(3, 2, 7).rep == 2  # class {7, 2}
    with pytest.raises(NotUnit):
        Radius(3, 2, 3)


def test_radius_from_exponent_examples():
    assert radius_from_exponent(ExponentMultiset(5, 1, (3, 1))).rep == 1
    assert radius_from_exponent(ExponentMultiset(3, 2, (3, 7))).rep == 2
    with pytest.raises(NotInXi):
        radius_from_exponent(ExponentMultiset(5, 1, (1, 1)))


@given(st.sampled_from([3, 5, 7]), st.integers(1, 2), st.integers(0, 48), st.integers(0, 48))
def test_radius_from_exponent_invariances(p, N, d1, d2):
    if (d1 - d2) % p == 0:
        return
    base = radius_from_exponent(ExponentMultiset(p, N, (d1, d2)))
    swapped = radius_from_exponent(ExponentMultiset(p, N, (d2, d1)))
    shifted = radius_from_exponent(ExponentMultiset(p, N, (d1 + 11, d2 + 11)))
    assert base == swapped == shifted


def test_reduce_level_examples():
    rho = Radius(3, 3, 8)
    assert reduce_level(rho, 2).rep == 1  # 8 mod 9, class {8,1}
    assert reduce_level(rho, 1).rep == 1
    assert reduce_level(rho, 3) == rho


def test_lift_fiber_examples():
    lifts = lift_fiber(Radius(5, 1, 1))
    assert sorted(r.rep for r in lifts) == [1, 4, 6, 9, 11]
    lifts3 = lift_fiber(Radius(3, 1, 1))
    assert sorted(r.rep for r in lifts3) == [1, 2, 4]


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("N", [1, 2])
def test_fibers_partition_next_level(p, N):
    all_lifts = []
    for rho in enum_Xi2(p, N):
        lifts = lift_fiber(rho)
        assert len(lifts) == p
        for lam in lifts:
            assert reduce_level(lam, N) == rho
        all_lifts.extend(lifts)
    assert sorted(all_lifts) == enum_Xi2(p, N + 1)


def test_radius_from_edge_number_examples():
    assert radius_from_edge_number(0, 5, 1).rep == 2  # 1/2 = 3, class {3,2}
    assert radius_from_edge_number(1, 5, 1).rep == 1  # 3/2 = 4, class {4,1}
    with pytest.raises(NotUnit):
        radius_from_edge_number(2, 5, 1)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("N", [1, 2])
def test_edge_numbers_two_to_one(p, N):
    hits = {}
    for a in range(p**N):
        if (2 * a + 1) % p == 0:
            continue
        rho = radius_from_edge_number(a, p, N)
        hits.setdefault(rho, []).append(a)
    assert set(hits) == set(enum_Xi2(p, N))
    for rho, nums in hits.items():
        assert len(nums) == 2
        assert nums == edge_numbers_for_radius(rho)


def test_general_radius_canonical_and_xi():
    g = GeneralRadius(3, 2, (0, 1))
    assert is_in_Xi(g)
    assert not is_in_Xi(GeneralRadius(3, 2, (0, 3)))
    assert is_in_Xi(GeneralRadius(5, 1, (0, 1, 2)))
    # Delta-invariance of the canonical form
    assert GeneralRadius(3, 2, (2, 5)) == GeneralRadius(3, 2, (0, 3))
    assert GeneralRadius(3, 2, (5, 2)) == GeneralRadius(3, 2, (0, 3))


def test_radius_json_roundtrip():
    rho = Radius(7, 2, 45)
    assert Radius.from_json(rho.to_json()) == rho
