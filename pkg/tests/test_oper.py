import pytest

from dormant.errors import CapExceeded, EmptyExtension, IncompatibleExponents, NotDormantStage
from dormant.gf import gf
from dormant.oper import (
    AdmissibilityTable,
    _companion,
    _sign_choices,
    build_level1,
    cartier_descend,
    extend_stage,
    gauss_dormant,
    gauss_solution_count,
    hm_char_coeff,
    hm_descent_check,
    is_dormant,
    is_dormant_level1_params,
    p_curvature_rational,
    solution_count_scalar,
    stage0_solutions,
    stage_is_dormant,
    vertex_table,
    _digit_targets,
    _extension_candidates,
    _solution_locval,
    _wronskian_monomial,
)
from dormant.poly import LocRing, PolyRing
from dormant.radii import Radius, enum_Xi2, reduce_level


def test_p_curvature_zero_matrix():
    L = LocRing(gf(5))
    A = [[L.zero, L.zero], [L.zero, L.zero]]
    psi = p_curvature_rational(L, A, 5)
    assert all(L.is_zero(e) for row in psi for e in row)


def test_p_curvature_rank1_fermat():
    L = LocRing(gf(5))
    for c in range(5):
        A = [[L.make((c,), 1, 0), L.zero], [L.zero, L.zero]]
        psi = p_curvature_rational(L, A, 5)
        assert all(L.is_zero(e) for row in psi for e in row)
    # an irregular (order-2) pole spoils dormancy
    A = [[L.make((1,), 2, 0), L.zero], [L.zero, L.zero]]
    psi = p_curvature_rational(L, A, 5)
    assert not all(L.is_zero(e) for row in psi for e in row)


def test_build_level1_matches_gauss():
    p, (a, b, c) = 5, (1, 2, 1)
    stage = build_level1(p, (((1 - c) % p, 0), ((c - a - b) % p, 0), (a, b)))
    direct = _companion(p, (1 - c) % p, (c - a - b) % p, a, b)
    assert stage.A == direct.A
    assert stage.exps == direct.exps


def test_build_level1_fuchs_violation():
    with pytest.raises(IncompatibleExponents):
        build_level1(5, ((1, 0), (1, 0), (1, 1)))  # sum = 4 != 1


def test_build_level1_swap_invariance():
    # swapping the exponent pair at a point gives a twist-equivalent
    # connection with the same dormancy verdict
    p = 5
    for a in range(p):
        for b in range(p):
            for c in range(p):
                pairs = (((1 - c) % p, 0), ((c - a - b) % p, 0), (a, b))
                swapped = ((0, (1 - c) % p), ((c - a - b) % p, 0), (a, b))
                s1 = build_level1(p, pairs)
                s2 = build_level1(p, swapped)
                assert stage_is_dormant(s1) == stage_is_dormant(s2), (a, b, c)


@pytest.mark.parametrize("p", [3, 5])
def test_oracle_agreement_small(p):
    for a in range(p):
        for b in range(p):
            for c in range(p):
                v1 = gauss_dormant(p, a, b, c)
                v2 = gauss_solution_count(p, a, b, c)
                assert v1 == (v2 == 2), (p, a, b, c)


def test_sign_choice_verdicts_agree_level1():
    for p in (3, 5):
        for reps in [(1, 1, 1)] + ([(1, 1, 2), (1, 2, 2), (2, 2, 2)] if p == 5 else []):
            verdicts = set()
            for d0, d1, dinf in _sign_choices(reps):
                pN = p
                deltas = ((2 * d0) % pN, (2 * d1) % pN, (2 * dinf) % pN)
                inv2 = (p + 1) // 2
                alpha = (1 - deltas[0] - deltas[1] + deltas[2]) * inv2 % p
                beta = (alpha - deltas[2]) % p
                verdicts.add(
                    is_dormant_level1_params(p, deltas[0], deltas[1], alpha, beta)
                )
            assert len(verdicts) == 1, (p, reps)


def test_solutions_solve_and_wronskian():
    # dormant example: a=1,b=2,c=1 at p=5 is not guaranteed dormant; scan
    # for dormant parameter triples and validate the solution basis
    p = 5
    F = gf(p)
    L = LocRing(F)
    P = PolyRing(F)
    checked = 0
    for a in range(p):
        for b in range(p):
            for c in range(p):
                eps0, eps1 = (1 - c) % p, (c - a - b) % p
                if not is_dormant_level1_params(p, eps0, eps1, a, b):
                    continue
                z1, z2 = stage0_solutions(p, eps0, eps1, a % p, b % p)
                stage = _companion(p, eps0, eps1, a % p, b % p)
                for z in (z1, z2):
                    zz = _solution_locval(p, z)
                    # scalar check: z'' + P z' + Q z = 0 via the companion:
                    # columns (z, z') must satisfy s' = A s
                    s = [zz, L.derivative(zz)]
                    sp = [L.derivative(s[0]), L.derivative(s[1])]
                    for i in range(2):
                        acc = L.zero
                        for k in range(2):
                            acc = L.add(acc, L.mul(stage.A[i][k], s[k]))
                        assert L.eq(acc, sp[i])
                assert _wronskian_monomial(p, z1, z2) is not None
                checked += 1
    assert checked > 5


def test_descent_valuation_identities():
    """Wronskian valuations tie the adapted data together:
    at 0:  val_0(W) = e_l + e_h - 1 + p (k_l + k_h)
    at 1:  val_1(W) = e_l + e_h - 1 + p (k_l + k_h)
    at oo: p (d_l + d_h) = (s0 + s1) + f_l + f_h + 1, W = c x^{s0}(x-1)^{s1}."""
    p = 5
    for a in range(p):
        for b in range(p):
            for c in range(p):
                eps0, eps1 = (1 - c) % p, (c - a - b) % p
                if not is_dormant_level1_params(p, eps0, eps1, a, b):
                    continue
                stage = _companion(p, eps0, eps1, a % p, b % p)
                descent = cartier_descend(stage, eps0, eps1, a % p, b % p)
                z1, z2 = descent.solutions
                w = _wronskian_monomial(p, z1, z2)
                assert w is not None
                s0, s1 = w
                fr0 = descent.frames[0]
                fr1 = descent.frames[1]
                fri = descent.frames["inf"]
                assert s0 == fr0.exps[0] + fr0.exps[1] - 1 + p * (
                    fr0.shifts[0] + fr0.shifts[1]
                )
                assert s1 == fr1.exps[0] + fr1.exps[1] - 1 + p * (
                    fr1.shifts[0] + fr1.shifts[1]
                )
                d_l, d_h = descent.degrees
                assert p * (d_l + d_h) == (s0 + s1) + fri.exps[0] + fri.exps[1] + 1


def test_descend_requires_dormant():
    stage = _companion(5, 1, 1, 1, 1)
    if not stage_is_dormant(stage):
        with pytest.raises(NotDormantStage):
            cartier_descend(stage, 1, 1, 1, 1)


def test_vertex_tables_level1():
    assert sorted(vertex_table(3, 1, use_cache=False).triples) == [(1, 1, 1)]
    t5 = vertex_table(5, 1, use_cache=False)
    assert sorted(t5.triples) == [(1, 1, 1), (1, 1, 2), (2, 2, 2)]
    t7 = vertex_table(7, 1, use_cache=False)
    assert (1, 1, 2) in t7.triples and (1, 1, 1) not in t7.triples


def test_vertex_table_cache_roundtrip(tmp_path):
    t = vertex_table(5, 1, cache_dir=str(tmp_path))
    t2 = vertex_table(5, 1, cache_dir=str(tmp_path))
    assert t == t2
    as_json = AdmissibilityTable.from_json(t.to_json())
    assert as_json == t


def test_vertex_table_threads_deterministic(tmp_path):
    t1 = vertex_table(5, 1, use_cache=False, threads=1)
    t2 = vertex_table(5, 1, use_cache=False, threads=2)
    assert t1 == t2


def test_oracle_cap():
    with pytest.raises(CapExceeded):
        is_dormant((1, 1, 1), 11, 1)
    with pytest.raises(CapExceeded):
        vertex_table(3, 3)


def test_level2_table_consistency_p3():
    t2 = vertex_table(3, 2, use_cache=False)
    assert sorted(t2.triples) == [
        (1, 1, 4),
        (1, 2, 2),
        (2, 2, 2),
        (2, 2, 4),
        (4, 4, 4),
    ]
    # reduction of any admissible level-2 triple is admissible at level 1
    t1 = vertex_table(3, 1, use_cache=False)
    for tr in t2.triples:
        red = tuple(sorted(reduce_level(Radius(3, 2, r), 1).rep for r in tr))
        assert red in t1.triples


def test_level2_chain_stages_are_dormant():
    found, chain = is_dormant((1, 1, 4), 3, 2, collect=True)
    assert found
    assert len(chain.stages) == 2
    for stage in chain.stages:
        assert stage_is_dormant(stage)
    # the recorded exponent lift reproduces the radii
    pN = 9
    for point, rho in zip((0, 1, "inf"), chain.radii):
        d1, d2 = chain.exponents[point]
        half = (pN + 1) // 2
        assert Radius(3, 2, (d1 - d2) * half % pN) == rho


def test_extend_stage_empty_for_inadmissible():
    # (1, 1, 2) reduces to (1,1,1) with dormant stage 0 but admits no
    # dormant extension at level 2
    p = 3
    found = is_dormant((1, 1, 2), p, 2)
    assert not found


def test_extension_family_nilpotent_on_xi_radii():
    """Every member of the residue-constrained extension family over (0,3)
    with radii in Xi has vanishing characteristic coefficient (nilpotent
    top curvature), whether or not it is dormant; dormancy itself varies."""
    from dormant.oper import StageConnection, _extension_family

    p = 3
    pN = 9
    L = LocRing(gf(p), "y")
    checked = dormant_members = 0
    for reps in [(1, 1, 2), (1, 1, 4), (2, 2, 2)]:
        for d0, d1, dinf in _sign_choices(reps):
            deltas = ((2 * d0) % pN, (2 * d1) % pN, (2 * dinf) % pN)
            eps0, eps1 = deltas[0] % p, deltas[1] % p
            a_bar = (1 - deltas[0] - deltas[1] + deltas[2]) * ((p + 1) // 2) % p
            b_bar = (a_bar - deltas[2]) % p
            stage0 = _companion(p, eps0, eps1, a_bar, b_bar)
            if not stage_is_dormant(stage0):
                continue
            descent = cartier_descend(stage0, eps0, eps1, a_bar, b_bar)
            for k in range(p):
                alpha = (a_bar + p * k) % pN
                beta = (alpha - deltas[2]) % pN
                targets = _digit_targets(p, descent, deltas[0], deltas[1], alpha, beta)
                if targets is None:
                    continue
                for B in _extension_family(descent, targets, p):
                    cand = StageConnection(
                        stage=1, p=p, varname="y", A=B, exps=dict(targets)
                    )
                    a2 = hm_char_coeff(cand)
                    assert L.is_zero(a2)
                    checked += 1
                    if stage_is_dormant(cand):
                        dormant_members += 1
    assert checked > 0
    assert 0 < dormant_members < checked


def test_hm_char_dormant_zero_and_nondormant_descends():
    for p in (3, 5):
        L = LocRing(gf(p))
        n_nondormant = 0
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    stage = _companion(p, (1 - c) % p, (c - a - b) % p, a, b)
                    a2 = hm_char_coeff(stage)
                    if stage_is_dormant(stage):
                        assert L.is_zero(a2)
                    else:
                        u = hm_descent_check(a2, p, 1)
                        assert u is not None and len(u) <= 3
                        n_nondormant += 1
        assert n_nondormant > 10


def test_extend_stage_raises_empty():
    p = 3
    pN = 9
    reps = (1, 1, 2)
    hit_empty = False
    for d0, d1, dinf in _sign_choices(reps):
        deltas = ((2 * d0) % pN, (2 * d1) % pN, (2 * dinf) % pN)
        eps0, eps1 = deltas[0] % p, deltas[1] % p
        a_bar = (1 - deltas[0] - deltas[1] + deltas[2]) * 2 % p
        b_bar = (a_bar - deltas[2]) % p
        stage0 = _companion(p, eps0, eps1, a_bar, b_bar)
        if not stage_is_dormant(stage0):
            continue
        descent = cartier_descend(stage0, eps0, eps1, a_bar, b_bar)
        targets = _digit_targets(
            p, descent, deltas[0], deltas[1], (a_bar) % pN, (a_bar - deltas[2]) % pN
        )
        if targets is None:
            continue
        try:
            extend_stage(descent, targets, p)
        except EmptyExtension:
            hit_empty = True
    assert hit_empty
