import itertools

import pytest
import sympy

from ratcybe.algebra import adjoint_rep, casimir_of_form, coadjoint_rep, validate_algebra
from ratcybe.constant_ops import (
    check_coadjoint_constant,
    check_constant_o_operator,
    check_modified_cybe_operator,
    check_rota_baxter_minus_one,
    check_rota_baxter_zero,
    compare_operator_forms,
    constant_cybe_and_mcybe,
    derived_bracket,
    derived_bracket_checks,
    minus_one_from_modified,
    modified_from_minus_one,
)
from ratcybe.constructors import heisenberg_algebra
from ratcybe.errors import InputError
from ratcybe.rmatrix import RMatrix

import oracles
from conftest import make_sl2

SL2 = make_sl2()
ZERO3 = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
ID3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
MINUS_ID = ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
# minus the projection onto span(e, h) along f
MINUS_P = ((-1, 0, 0), (0, 0, 0), (0, 0, -1))


def test_rota_baxter_zero_examples():
    assert check_rota_baxter_zero(SL2, ZERO3).passed
    # R(f) = e: image in an abelian subalgebra
    assert check_rota_baxter_zero(SL2, ((0, 1, 0), (0, 0, 0), (0, 0, 0))).passed
    # R(h) = e fails at (h, f): R([e, f]) = R(h) = e
    rep = check_rota_baxter_zero(SL2, ((0, 0, 1), (0, 0, 0), (0, 0, 0)))
    assert not rep.passed
    assert any(w["x"] == "h" and w["y"] == "f" for w in rep.witnesses)
    assert not check_rota_baxter_zero(SL2, ID3).passed


def test_coadjoint_constant_examples():
    assert check_coadjoint_constant(SL2, ZERO3).passed
    # r(e*) = h passes, r(h*) = f does not
    assert check_coadjoint_constant(SL2, ((0, 0, 0), (0, 0, 0), (1, 0, 0))).passed
    assert not check_coadjoint_constant(SL2, ((0, 0, 0), (0, 0, 1), (0, 0, 0))).passed


def test_coadjoint_constant_matches_o_operator_route():
    for A in (SL2, heisenberg_algebra()):
        co = coadjoint_rep(A)
        for bits in itertools.islice(itertools.product((0, 1), repeat=9), 0, None, 3):
            M = tuple(tuple(bits[3 * i:3 * i + 3]) for i in range(3))
            assert check_coadjoint_constant(A, M).passed == check_constant_o_operator(A, co, M).passed


def test_constant_o_operator_adjoint_rep():
    # with rho = ad the identity is the weight-zero relation
    ad = adjoint_rep(SL2)
    for M in (ZERO3, ID3, ((0, 1, 0), (0, 0, 0), (0, 0, 0)), ((0, 0, 1), (0, 0, 0), (0, 0, 0))):
        assert check_constant_o_operator(SL2, ad, M).passed == check_rota_baxter_zero(SL2, M).passed


def test_weight_minus_one():
    for M in (MINUS_P, MINUS_ID, ZERO3):
        assert check_rota_baxter_minus_one(SL2, M).passed
    assert not check_rota_baxter_minus_one(SL2, ID3).passed


def test_operator_form_substitutions():
    assert modified_from_minus_one(ZERO3) == tuple(tuple(x / 2 for x in r) for r in ID3)
    for M in (MINUS_P, ZERO3, ID3):
        assert minus_one_from_modified(modified_from_minus_one(M)) == M
    for M in (MINUS_P, ZERO3):
        v = compare_operator_forms(SL2, M)
        assert v == {"weight_minus_one": True, "modified_half": False, "modified_one_plus_two": True}


def test_modified_cybe_examples():
    assert check_modified_cybe_operator(SL2, ID3).passed
    assert check_modified_cybe_operator(SL2, MINUS_ID).passed
    assert not check_modified_cybe_operator(SL2, ZERO3).passed


def _q3_oracle(A, r):
    # constant r as the degree-(0,0) part of an r-matrix: D*[[r,r]] = D*Q3
    ref = oracles.cybe_times_D(RMatrix(A, ZERO3, {(0, 0): r}))
    D = (oracles.u1 - oracles.u2) * (oracles.u1 - oracles.u3) * (oracles.u2 - oracles.u3)
    return {k: sympy.cancel(v / D) for k, v in ref.items()}


def test_constant_cybe_against_oracle():
    t = casimir_of_form(SL2, "killing")
    for r in (t, ((1, 0, 0), (0, 0, 0), (0, 0, 0)), ((0, 1, 0), (-1, 0, 0), (0, 0, 1))):
        res = constant_cybe_and_mcybe(SL2, r)
        ref = _q3_oracle(SL2, r)
        Q3 = res["Q3"]
        for i, j, k in itertools.product(range(3), repeat=3):
            assert oracles.Q(Q3[i][j][k]) == ref.get((i, j, k), 0)


def test_casimir_mcybe():
    res = constant_cybe_and_mcybe(SL2, casimir_of_form(SL2, "killing"))
    assert res["cybe"] is False and res["mcybe"] is True
    res = constant_cybe_and_mcybe(SL2, ((1, 0, 0), (0, 0, 0), (0, 0, 0)))
    assert res["cybe"] is True and res["mcybe"] is True
    res = constant_cybe_and_mcybe(SL2, ((0, 1, 0), (0, 0, 0), (0, 0, 0)))
    assert res["mcybe"] is False and res["mcybe_witness"] in SL2.basis


@pytest.mark.parametrize("M", [MINUS_P, MINUS_ID, ZERO3])
def test_derived_bracket(M):
    rep = derived_bracket_checks(SL2, M)
    assert rep.passed
    assert [c.name for c in rep.children] == ["derived-lie-algebra", "homomorphism", "admissible-product"]
    assert validate_algebra(derived_bracket(SL2, M)).passed


def test_derived_bracket_requires_weight_minus_one():
    with pytest.raises(InputError):
        derived_bracket_checks(SL2, ID3)
