"""Constant (parameter-free) operator identities on finite-dimensional algebras.

Operators are matrices acting on column vectors: ``R e_b = sum_a R[a][b] e_a``.
A map g* -> g is stored the same way, column ``a`` being ``r(e*_a)``.
All checks run over basis pairs, which is complete by bilinearity.
"""
from __future__ import annotations

from typing import Dict

from .algebra import (
    LieAlgebra,
    Representation,
    ad_matrix,
    bracket,
    coadjoint_rep,
    format_combination,
    validate_algebra,
    validate_representation,
)
from .errors import InputError
from .linalg import as_matrix, identity, mat_add, mat_scale, mat_sub, matvec, unit
from .reports import Report
from .scalars import ZERO, div, to_scalar

__all__ = [
    "check_rota_baxter_zero",
    "check_coadjoint_constant",
    "check_constant_o_operator",
    "check_rota_baxter_minus_one",
    "check_modified_cybe_operator",
    "modified_from_minus_one",
    "minus_one_from_modified",
    "compare_operator_forms",
    "constant_cybe_and_mcybe",
    "derived_bracket",
    "derived_bracket_checks",
]


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vadd(*vs):
    return tuple(sum(xs, ZERO) for xs in zip(*vs))


def _pairs(report, n, names, residual):
    for a in range(n):
        for b in range(n):
            res = residual(a, b)
            if any(res):
                report.fail(x=names[a], y=names[b], residual=res)


def _fmt_fail(report, basis):
    for w in report.witnesses:
        w["residual"] = format_combination(w["residual"], basis)
    return report


def check_rota_baxter_zero(A: LieAlgebra, R) -> Report:
    """[Rx, Ry] = R([Rx, y] + [x, Ry])."""
    K = A.dim
    R = as_matrix(R, K, K)
    cols = [matvec(R, unit(K, b)) for b in range(K)]
    rep = Report("rota-baxter-weight-zero")

    def residual(a, b):
        x, y = unit(K, a), unit(K, b)
        Rx, Ry = cols[a], cols[b]
        return _vsub(bracket(A, Rx, Ry), matvec(R, _vadd(bracket(A, Rx, y), bracket(A, x, Ry))))

    _pairs(rep, K, A.basis, residual)
    return _fmt_fail(rep, A.basis)


def check_constant_o_operator(A: LieAlgebra, rho: Representation, T) -> Report:
    """[T u, T v] = T(rho(T u) v - rho(T v) u) for T: V -> g (K x N matrix)."""
    hom = validate_representation(rho)
    if not hom.passed:
        raise InputError(f"invalid representation: {hom.first_witness}")
    K, N = A.dim, rho.module_dim
    T = as_matrix(T, K, N)
    cols = [matvec(T, unit(N, b)) for b in range(N)]
    rep = Report("constant-o-operator")

    def residual(a, b):
        u, v = unit(N, a), unit(N, b)
        Tu, Tv = cols[a], cols[b]
        inner = _vsub(rho.apply(Tu, v), rho.apply(Tv, u))
        return _vsub(bracket(A, Tu, Tv), matvec(T, inner))

    _pairs(rep, N, rho.names, residual)
    return _fmt_fail(rep, A.basis)


def check_coadjoint_constant(A: LieAlgebra, r_map) -> Report:
    """[r a*, r b*] = r(ad*(r a*) b* - ad*(r b*) a*) for r: g* -> g.

    Written out independently of :func:`check_constant_o_operator`.
    """
    K = A.dim
    r = as_matrix(r_map, K, K)
    C = A.C
    cols = [tuple(r[j][a] for j in range(K)) for a in range(K)]
    rep = Report("coadjoint-constant")
    names = [f"{b}*" for b in A.basis]

    def coad(x, a):
        # <ad*(x) e*_a, e_k> = -<e*_a, [x, e_k]> = -sum_i x_i C^a_{ik}
        return tuple(-sum((x[i] * C[i][k][a] for i in range(K) if x[i]), ZERO) for k in range(K))

    def residual(a, b):
        ra, rb = cols[a], cols[b]
        inner = _vsub(coad(ra, b), coad(rb, a))
        return _vsub(bracket(A, ra, rb), matvec(r, inner))

    _pairs(rep, K, names, residual)
    return _fmt_fail(rep, A.basis)


def check_rota_baxter_minus_one(A: LieAlgebra, Rp) -> Report:
    """[R'x, R'y] = R'([R'x, y] + [x, R'y]) + R'[x, y]."""
    K = A.dim
    Rp = as_matrix(Rp, K, K)
    cols = [matvec(Rp, unit(K, b)) for b in range(K)]
    rep = Report("rota-baxter-weight-minus-one")

    def residual(a, b):
        x, y = unit(K, a), unit(K, b)
        Rx, Ry = cols[a], cols[b]
        rhs = matvec(Rp, _vadd(bracket(A, Rx, y), bracket(A, x, Ry), bracket(A, x, y)))
        return _vsub(bracket(A, Rx, Ry), rhs)

    _pairs(rep, K, A.basis, residual)
    return _fmt_fail(rep, A.basis)


def check_modified_cybe_operator(A: LieAlgebra, R) -> Report:
    """[Rx, Ry] = R([Rx, y] + [x, Ry]) - [x, y]."""
    K = A.dim
    R = as_matrix(R, K, K)
    cols = [matvec(R, unit(K, b)) for b in range(K)]
    rep = Report("modified-cybe-operator")

    def residual(a, b):
        x, y = unit(K, a), unit(K, b)
        Rx, Ry = cols[a], cols[b]
        rhs = _vsub(matvec(R, _vadd(bracket(A, Rx, y), bracket(A, x, Ry))), bracket(A, x, y))
        return _vsub(bracket(A, Rx, Ry), rhs)

    _pairs(rep, K, A.basis, residual)
    return _fmt_fail(rep, A.basis)


def modified_from_minus_one(Rp):
    """R = (1 - R')/2."""
    Rp = as_matrix(Rp)
    half = div(1, 2)
    return mat_scale(half, mat_sub(identity(len(Rp)), Rp))


def minus_one_from_modified(R):
    """R' = 1 - 2R (inverse of :func:`modified_from_minus_one`)."""
    R = as_matrix(R)
    return mat_sub(identity(len(R)), mat_scale(to_scalar(2), R))


def compare_operator_forms(A: LieAlgebra, Rp) -> Dict[str, bool]:
    """Weight -1 verdict for R' next to the modified-CYBE verdicts of two substitutions.

    ``(1-R')/2`` is the substitution as usually stated; ``1+2R'`` is the one
    under which the two residuals agree up to the factor 4.  Nothing is
    asserted about their agreement.
    """
    Rp = as_matrix(Rp, A.dim, A.dim)
    closing = mat_add(identity(A.dim), mat_scale(to_scalar(2), Rp))
    return {
        "weight_minus_one": check_rota_baxter_minus_one(A, Rp).passed,
        "modified_half": check_modified_cybe_operator(A, modified_from_minus_one(Rp)).passed,
        "modified_one_plus_two": check_modified_cybe_operator(A, closing).passed,
    }


# ---------------------------------------------------------------------------
# constant tensor form
# ---------------------------------------------------------------------------

def constant_cybe_and_mcybe(A: LieAlgebra, r) -> Dict[str, object]:
    """Q3 = [r12, r13] + [r12, r23] + [r13, r23]; cybe = (Q3 == 0); mcybe = Q3 ad-invariant."""
    K = A.dim
    r = as_matrix(r, K, K)
    C = A.C
    rng = range(K)
    Q = [[[ZERO] * K for _ in rng] for _ in rng]
    for a in rng:
        for b in rng:
            rab = r[a][b]
            if not rab:
                continue
            for c in rng:
                for d in rng:
                    rcd = r[c][d]
                    if not rcd:
                        continue
                    w = rab * rcd
                    for k in rng:
                        # [a, c] (x) b (x) d
                        if C[a][c][k]:
                            Q[k][b][d] += w * C[a][c][k]
                        # a (x) [b, c] (x) d
                        if C[b][c][k]:
                            Q[a][k][d] += w * C[b][c][k]
                        # a (x) c (x) [b, d]
                        if C[b][d][k]:
                            Q[a][c][k] += w * C[b][d][k]
    Q3 = tuple(tuple(tuple(row) for row in plane) for plane in Q)
    cybe = all(not x for plane in Q3 for row in plane for x in row)
    mcybe = True
    witness = None
    for x in rng:
        ad = ad_matrix(A, x)
        for i in rng:
            for j in rng:
                for k in rng:
                    s = ZERO
                    for m in rng:
                        if ad[i][m]:
                            s += ad[i][m] * Q3[m][j][k]
                        if ad[j][m]:
                            s += ad[j][m] * Q3[i][m][k]
                        if ad[k][m]:
                            s += ad[k][m] * Q3[i][j][m]
                    if s and mcybe:
                        mcybe = False
                        witness = A.basis[x]
    return {"cybe": cybe, "mcybe": mcybe, "Q3": Q3, "mcybe_witness": witness}


# ---------------------------------------------------------------------------
# derived bracket
# ---------------------------------------------------------------------------

def derived_bracket(A: LieAlgebra, Rp) -> LieAlgebra:
    """Algebra with [x, y]_1 = [R'x, y] + [x, R'y] + [x, y] on the same basis."""
    K = A.dim
    Rp = as_matrix(Rp, K, K)
    cols = [matvec(Rp, unit(K, b)) for b in range(K)]
    C = []
    for a in range(K):
        plane = []
        for b in range(K):
            x, y = unit(K, a), unit(K, b)
            plane.append(_vadd(bracket(A, cols[a], y), bracket(A, x, cols[b]), bracket(A, x, y)))
        C.append(plane)
    return LieAlgebra(A.basis, C)


def derived_bracket_checks(A: LieAlgebra, Rp) -> Report:
    K = A.dim
    Rp = as_matrix(Rp, K, K)
    pre = check_rota_baxter_minus_one(A, Rp)
    if not pre.passed:
        raise InputError(f"operator fails the weight -1 relation: {pre.first_witness}")
    rep = Report("derived-bracket")
    A1 = derived_bracket(A, Rp)
    lie = validate_algebra(A1)
    lie.name = "derived-lie-algebra"
    rep.add(lie)
    cols = [matvec(Rp, unit(K, b)) for b in range(K)]

    hom = rep.add(Report("homomorphism"))
    for a in range(K):
        for b in range(K):
            lhs = matvec(Rp, A1.C[a][b])
            rhs = bracket(A, cols[a], cols[b])
            if lhs != rhs:
                hom.fail(x=A.basis[a], y=A.basis[b])

    # x o y = [R'x, y] + 1/2 [x, y]; its commutator must be [x, y]_1
    half = div(1, 2)

    def circ(a, b):
        x, y = unit(K, a), unit(K, b)
        return _vadd(bracket(A, cols[a], y), tuple(half * c for c in bracket(A, x, y)))

    adm = rep.add(Report("admissible-product"))
    for a in range(K):
        for b in range(K):
            comm = _vsub(circ(a, b), circ(b, a))
            if comm != tuple(A1.C[a][b]):
                adm.fail(x=A.basis[a], y=A.basis[b])
    return rep
