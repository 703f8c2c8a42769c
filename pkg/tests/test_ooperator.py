import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ratcybe.algebra import (
    LieAlgebra,
    adjoint_rep,
    coadjoint_rep,
    dual_rep,
    killing_form,
    semidirect_sum,
)
from ratcybe.constructors import heisenberg_algebra, heisenberg_family, r_coadjoint, r_representation
from ratcybe.errors import BudgetExceeded, DimensionMismatch, InputError
from ratcybe.linalg import inverse
from ratcybe.loop import LoopVector
from ratcybe.ooperator import (
    OOperator,
    bracket_star,
    check_adjoint_ooperator,
    check_coadjoint_ooperator,
    check_generalized_ooperator,
    check_operator_unitarity,
    check_rep_ooperator,
    check_stolin_lagrangian,
    coadjoint_star,
    default_window,
    rep_t_compatibility,
    search_ooperators,
    zero_extended_rep,
)
from ratcybe.rmatrix import is_cybe_solution
from ratcybe.scalars import div

from conftest import jordanian_mu, make_sl2

SL2 = make_sl2()
H = heisenberg_algebra()
T3 = ((0, 0, 0), (0, 0, 0), (0, 0, 1))
E1E1 = ((1, 0, 0), (0, 0, 0), (0, 0, 0))
HEIS_PATTERN = [(2, 1, 0, 0), (2, 1, 1, 0), (0, 0, 2, 1), (1, 0, 2, 1)]


def test_operator_rules():
    mu = jordanian_mu()
    assert mu.image(2, -1) == LoopVector.monomial(3, 0, 0, 8)
    assert mu.image(2, -2).is_zero()
    assert mu.image(0, 3) == LoopVector.monomial(3, 0, 3, -1)
    f = LoopVector.monomial(3, 2, -1) + LoopVector.monomial(3, 1, 2)
    assert mu.apply(f) == LoopVector.monomial(3, 0, 0, 8) - LoopVector.monomial(3, 1, 2)


def test_operator_validation():
    with pytest.raises(InputError):
        OOperator("bogus", 3, 3, 0, 0)
    with pytest.raises(InputError):
        OOperator("coadjoint", 3, 3, 0, 0)
    with pytest.raises(InputError):
        OOperator.from_entries("adjoint", 3, 3, [(0, 0, 0, 2, 1)], degree_bound=1)
    with pytest.raises(DimensionMismatch):
        OOperator("adjoint", 3, 2, 0, 0)
    # rep-kind negative images live in g only
    with pytest.raises(InputError):
        OOperator.from_entries("rep", 3, 6, [(0, 0, 4, 0, 1)], t=E1E1)


def test_entries_roundtrip():
    _, _, T, _ = heisenberg_family(2, -3)
    assert OOperator.from_entries("coadjoint", 3, 3, T.entries(), t=T3, n_max=1, degree_bound=1) == T


@pytest.mark.parametrize("l1,l2", [(1, 1), (0, 0), (2, -3), (-1, 0)])
def test_heisenberg_family_passes(l1, l2):
    _, t, T, r = heisenberg_family(l1, l2)
    rep = check_coadjoint_ooperator(H, t, T)
    assert rep.passed
    assert rep.find("main-identity").passed and rep.find("t-antisymmetry").passed
    assert check_operator_unitarity(T).passed


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=5),
       st.fractions(min_value=-9, max_value=9, max_denominator=5))
def test_heisenberg_family_passes_for_rational_parameters(l1, l2):
    _, t, T, r = heisenberg_family(l1, l2)
    assert check_coadjoint_ooperator(H, t, T, first_only=True).passed
    assert is_cybe_solution(r)


def test_mutation_gives_witness():
    _, t, T, _ = heisenberg_family(1, 1)
    bad = T.with_entry(0, 0, 2, 1, -1).with_entry(0, 0, 2, 2, 1)
    rep = check_coadjoint_ooperator(H, t, bad)
    main = rep.find("main-identity")
    assert not main.passed
    w = main.witnesses[0]
    assert {"m", "n", "i", "j", "f", "g", "residual"} <= set(w)
    assert w["residual"] != "0"


def test_coadjoint_checker_rejects_bad_t():
    with pytest.raises(InputError):
        check_coadjoint_ooperator(H, E1E1, OOperator.zero("coadjoint", 3, t=E1E1))


def test_drop_t_term_variant():
    _, t, T, _ = heisenberg_family(1, 1)
    rep = check_coadjoint_ooperator(H, t, T, drop_t_term=True)
    assert rep.find("main-identity-without-t-term").passed
    assert rep.find("t-vanishing").passed
    casimir = inverse(killing_form(SL2))
    rep = check_coadjoint_ooperator(SL2, casimir, OOperator.zero("coadjoint", 3, t=casimir),
                                    drop_t_term=True)
    assert not rep.find("t-vanishing").passed


def test_window_default_and_sufficiency():
    _, t, T, _ = heisenberg_family(1, 1)
    assert default_window(T) == 8
    bad = T.with_entry(2, 1, 0, 0, 1)
    small = T.n_max + 1 + T.degree_bound + 1
    for op in (T, bad):
        verdicts = {check_coadjoint_ooperator(H, t, op, W=w).passed for w in (small, 8, 10, 12)}
        assert len(verdicts) == 1


def test_adjoint_examples():
    assert check_adjoint_ooperator(SL2, OOperator.zero("adjoint", 3)).passed
    mu = jordanian_mu()
    assert check_adjoint_ooperator(SL2, mu).passed
    P = inverse(killing_form(SL2))
    assert check_operator_unitarity(mu, P).passed
    assert not check_adjoint_ooperator(SL2, mu.with_entry(0, 0, 0, 0, 1)).passed


def test_adjoint_unitarity_needs_pairing():
    with pytest.raises(InputError):
        check_operator_unitarity(jordanian_mu())


def test_stolin_check():
    B = killing_form(SL2)
    assert check_stolin_lagrangian(SL2, B, OOperator.zero("adjoint", 3)).passed
    assert check_stolin_lagrangian(SL2, B, jordanian_mu()).passed
    bad = OOperator.from_entries("adjoint", 3, 3, [(0, 0, 0, 1, 1)])
    rep = check_stolin_lagrangian(SL2, B, bad)
    assert not rep.passed and {"f", "g", "h"} <= set(rep.witnesses[0])


def test_coadjoint_passing_implies_cybe():
    # every operator on the grid that passes both checks yields a solution
    _, t, T, _ = heisenberg_family(1, 1)
    for vals in itertools.product((-1, 0, 1), repeat=4):
        ents = [(i, n, j, l, c) for (i, n, j, l), c in zip(HEIS_PATTERN, vals) if c]
        op = OOperator.from_entries("coadjoint", 3, 3, ents, t=T3, n_max=1, degree_bound=1)
        ok = check_coadjoint_ooperator(H, T3, op).passed and check_operator_unitarity(op).passed
        if ok:
            assert is_cybe_solution(r_coadjoint(H, T3, op, force=True))


def test_search_heisenberg_recovers_family():
    found = search_ooperators(H, "coadjoint", HEIS_PATTERN, [-1, 0, 1], t=T3)
    family = []
    for l1, l2 in itertools.product((-1, 0, 1), repeat=2):
        _, _, T, _ = heisenberg_family(l1, l2)
        family.append(T.with_images(n_max=1, degree_bound=1))
    assert len(found) == 9
    for T in family:
        assert T in found


def test_search_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        search_ooperators(H, "coadjoint", HEIS_PATTERN, [-1, 0, 1], t=T3, budget=80)
    monkeypatch.setenv("CYBE_MAX_CANDIDATES", "10")
    with pytest.raises(BudgetExceeded):
        search_ooperators(H, "coadjoint", HEIS_PATTERN, [-1, 0, 1], t=T3)


def test_search_rejects_duplicate_positions():
    with pytest.raises(InputError):
        search_ooperators(H, "coadjoint", HEIS_PATTERN[:1] * 2, [0, 1], t=T3)


# -- representation kind -----------------------------------------------------

REP_PATTERN = [(i, 0, j, 0) for i in range(2) for j in range(3)]


def _rep_ops(step=9):
    out = []
    for vals in itertools.islice(itertools.product((-1, 0, 1), repeat=6), 0, None, step):
        ents = [(i, n, j, l, c) for (i, n, j, l), c in zip(REP_PATTERN, vals) if c]
        out.append(OOperator.from_entries("rep", 3, 6, ents, t=E1E1, n_max=0, degree_bound=0))
    return out


def test_rep_t_compatibility():
    rho = adjoint_rep(H)
    assert rep_t_compatibility(rho, E1E1).passed
    assert not rep_t_compatibility(rho, T3).passed


def test_rep_checker_agrees_with_verifier():
    rho = adjoint_rep(H)
    seen = set()
    for T in _rep_ops():
        ok = check_rep_ooperator(H, rho, E1E1, T).passed
        seen.add(ok)
        assert ok == is_cybe_solution(r_representation(H, rho, E1E1, T, force=True))
    assert seen == {True, False}


# -- generalized kind --------------------------------------------------------

def _adjoint_ops():
    out = [OOperator.zero("adjoint", 3), jordanian_mu()]
    for i, j, l in itertools.product(range(3), range(3), range(2)):
        out.append(OOperator.from_entries("adjoint", 3, 3, [(i, 0, j, l, 1)]))
    return out


def test_generalized_reproduces_adjoint():
    rho = adjoint_rep(SL2)
    star = bracket_star(SL2)
    seen = set()
    for mu in _adjoint_ops():
        a = check_adjoint_ooperator(SL2, mu).passed
        seen.add(a)
        assert check_generalized_ooperator(SL2, rho, star, mu).passed == a
    assert seen == {True, False}


def test_generalized_reproduces_coadjoint():
    star = coadjoint_star(H, T3)
    rho = coadjoint_rep(H)
    seen = set()
    for vals in itertools.islice(itertools.product((-1, 0, 1), repeat=4), 0, None, 5):
        ents = [(i, n, j, l, c) for (i, n, j, l), c in zip(HEIS_PATTERN, vals) if c]
        op = OOperator.from_entries("coadjoint", 3, 3, ents, t=T3, n_max=1, degree_bound=1)
        c = check_coadjoint_ooperator(H, T3, op).passed
        seen.add(c)
        assert check_generalized_ooperator(H, rho, star, op).passed == c
    assert seen == {True, False}


def test_generalized_reproduces_rep():
    rho = adjoint_rep(H)
    G = semidirect_sum(H, dual_rep(rho))
    ext = zero_extended_rep(G, rho)
    zero = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for T in _rep_ops(step=23):
        assert check_generalized_ooperator(G, ext, zero, T).passed == check_rep_ooperator(H, rho, E1E1, T).passed


def test_generalized_requires_antisymmetric_star():
    star = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    star[0][0][0] = 1
    with pytest.raises(InputError):
        check_generalized_ooperator(SL2, adjoint_rep(SL2), star, OOperator.zero("adjoint", 3))
