import pytest

from dormant.errors import NonCommuting, NonDiagonalizable
from dormant.gf import gf
from dormant.matrix import (
    kernel,
    mat_mul_gf,
    rank,
    rref,
    simultaneous_eigendecomp,
    solve,
)
from dormant.poly import FracField, PolyRing


def test_kernel_spec_examples():
    F3, F5 = gf(3), gf(5)
    assert kernel(F3, [[1, 0], [0, 1]]) == []
    assert len(kernel(F3, [[0, 0], [0, 0]])) == 2
    assert kernel(F5, [[1, 2], [2, 4]]) == [[3, 1]]  # (-2, 1)


def test_kernel_then_reapply_is_zero():
    F = gf(7)
    rows = [[1, 2, 3, 4], [2, 4, 6, 1], [3, 6, 2, 5]]
    for v in kernel(F, rows):
        assert all(sum(r[i] * v[i] for i in range(4)) % 7 == 0 for r in rows)


def test_solve_and_rank():
    F = gf(5)
    rows = [[1, 2], [3, 4]]
    x = solve(F, rows, [1, 0])
    assert x is not None
    assert [sum(r[i] * x[i] for i in range(2)) % 5 for r in rows] == [1, 0]
    assert rank(F, rows) == 2
    assert solve(F, [[1, 2], [2, 4]], [0, 1]) is None


def test_simultaneous_eigendecomp_examples():
    F3 = gf(3)
    d = [[0, 0], [0, 2]]
    assert simultaneous_eigendecomp(F3, [d]) == [((0,), 1), ((2,), 1)]
    a = [[1, 0], [0, 1]]
    b = [[0, 0], [0, 2]]
    assert simultaneous_eigendecomp(F3, [a, b]) == [((1, 0), 1), ((1, 2), 1)]
    with pytest.raises(NonDiagonalizable):
        simultaneous_eigendecomp(F3, [[[0, 1], [0, 0]]])
    with pytest.raises(NonCommuting):
        simultaneous_eigendecomp(F3, [[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


def test_eigendecomp_multiplicity_and_extension_field():
    F9 = gf(3, 2)
    w = 3  # generator, not in F_3
    m = [[w, 0, 0], [0, w, 0], [0, 0, 1]]
    spec = simultaneous_eigendecomp(F9, [m])
    assert ((w,), 2) in spec and ((1,), 1) in spec


def test_rref_over_fraction_field():
    # generic elimination over F_5(t)
    F = gf(5)
    P = PolyRing(F, "t")
    K = FracField(P)
    t = K.of_poly(P.x())
    one = K.one
    rows = [[t, one], [K.mul(t, t), t]]  # rank 1
    red, piv = rref(K, rows)
    assert len(red) == 1 and piv == [0]
    assert len(kernel(K, rows, 2)) == 1
