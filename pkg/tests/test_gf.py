import pytest
from hypothesis import given, strategies as st

from dormant.gf import GF, find_irreducible, gf


def test_prime_field_basics():
    F = gf(7)
    assert F.add(3, 5) == 1
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.neg(0) == 0
    assert F.frobenius(4) == 4  # identity on F_p


def test_rejects_composite():
    with pytest.raises(ValueError):
        GF(9)


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (3, 3)])
def test_extension_field_axioms(p, e):
    F = gf(p, e)
    els = list(F.elements())
    assert len(els) == p**e
    for a in els[: p**e]:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # a few associativity / distributivity spot checks
    import random

    rng = random.Random(0)
    for _ in range(50):
        a, b, c = (rng.randrange(p**e) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_frobenius_is_automorphism_fixing_prime_field():
    F = gf(3, 2)
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert sorted(fixed) == [0, 1, 2]
    for a in F.elements():
        for b in F.elements():
            assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@given(st.sampled_from([(3, 2), (3, 3), (5, 2), (7, 2)]))
def test_irreducible_has_no_roots(pe):
    p, e = pe
    f = find_irreducible(p, e)
    assert len(f) == e + 1 and f[-1] == 1
    for x in range(p):
        val = sum(c * x**i for i, c in enumerate(f)) % p
        assert val != 0
