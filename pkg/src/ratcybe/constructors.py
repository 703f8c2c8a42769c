"""Build r-matrices from invariant tensors and O-operators.

Every constructor checks its preconditions and refuses with
:class:`ConstructionRefused` (carrying the failing report) unless
``force=True``.  Outputs are always re-certified by the independent
verifier; a certified-by-construction r that fails verification raises
:class:`InternalConsistencyError`.
"""
from __future__ import annotations

from typing import Dict, Tuple

from .algebra import (
    LieAlgebra,
    Representation,
    ad_invariance_witness,
    casimir_of_form,
    classical_double,
    dual_rep,
    semidirect_sum,
)
from .errors import ConstructionRefused, CybeError, InputError, InternalConsistencyError
from .linalg import as_matrix, det, identity, inverse, is_symmetric
from .loop import LoopVector
from .ooperator import (
    OOperator,
    check_adjoint_ooperator,
    check_coadjoint_ooperator,
    check_operator_unitarity,
    check_rep_ooperator,
)
from .reports import Report
from .rmatrix import RMatrix, check_unitarity, cybe_numerator, unitarity_report
from .scalars import ZERO, to_scalar

__all__ = [
    "r_from_invariant_tensor",
    "r_adjoint",
    "r_double",
    "r_coadjoint",
    "r_representation",
    "r_doubled_coadjoint",
    "heisenberg_algebra",
    "heisenberg_family",
    "coadjoint_from_adjoint",
]


def _refuse_or_continue(report: Report, force: bool, what: str):
    if not report.passed and not force:
        raise ConstructionRefused(f"{what}: preconditions failed", report)


def _certify(r: RMatrix, force: bool, what: str) -> RMatrix:
    if force:
        return r
    Q = cybe_numerator(r)
    if not Q.is_zero():
        raise InternalConsistencyError(f"{what} produced a non-solution; first term {Q.first_term()}")
    if not check_unitarity(r):
        raise InternalConsistencyError(f"{what} produced a non-unitary r")
    return r


class _Acc:
    """Sparse builder for polynomial blocks."""

    def __init__(self, K):
        self.K = K
        self.blocks: Dict[Tuple[int, int], list] = {}

    def add(self, p, q, i, j, c):
        if not c:
            return
        b = self.blocks.get((p, q))
        if b is None:
            b = self.blocks[(p, q)] = [[ZERO] * self.K for _ in range(self.K)]
        b[i][j] += c

    def done(self):
        return {k: tuple(tuple(r) for r in m) for k, m in self.blocks.items()}


def _tensor_report(A, t, name="tensor") -> Report:
    rep = Report(name)
    if not is_symmetric(t):
        rep.fail(reason="not symmetric")
    w = ad_invariance_witness(A, t)
    if w is not None:
        rep.fail(reason="not ad-invariant", x=w)
    return rep


def r_from_invariant_tensor(A: LieAlgebra, t, force=False) -> RMatrix:
    """t/(u1-u2) for a symmetric ad-invariant t."""
    t = as_matrix(t, A.dim, A.dim)
    rep = Report("pole-only")
    rep.add(_tensor_report(A, t))
    _refuse_or_continue(rep, force, "pole-only construction")
    return _certify(RMatrix(A, t), force, "pole-only construction")


# ---------------------------------------------------------------------------
# adjoint operators with an invariant form
# ---------------------------------------------------------------------------

def _adjoint_poly(mu: OOperator, t, K) -> dict:
    # sum_{k,i,p} t^{ki} mu(e_k u1^(-p-1)) (x) e_i u2^p
    acc = _Acc(K)
    for (k, p), img in mu.images.items():
        for (l, a), c in img.items():
            for i, x in enumerate(t[k]):
                if x:
                    acc.add(l, p, a, i, c * x)
    return acc.done()


def _form_report(A, B) -> Report:
    from .algebra import is_invariant_form

    rep = Report("form")
    if not is_symmetric(B):
        rep.fail(reason="not symmetric")
    if not is_invariant_form(A, B):
        rep.fail(reason="not invariant")
    if not det(B):
        rep.fail(reason="degenerate")
    return rep


def r_adjoint(A: LieAlgebra, B, mu: OOperator, W=None, force=False) -> RMatrix:
    """Casimir pole plus the polynomial part generated by an adjoint-kind operator.

    With t = B^-1 the polynomial part is the dual-basis sum
    ``sum_{k,i,p} t^{ki} mu(e_k u1^(-p-1)) (x) e_i u2^p``.
    """
    K = A.dim
    B = as_matrix(B, K, K)
    rep = Report("adjoint-construction")
    form = rep.add(_form_report(A, B))
    if mu.kind != "adjoint" or mu.domain_dim != K:
        raise InputError("expected an adjoint-kind operator on this algebra")
    if form.passed:
        t = inverse(B)
        rep.add(check_adjoint_ooperator(A, mu, W))
        rep.add(check_operator_unitarity(mu, t))
    _refuse_or_continue(rep, force, "adjoint construction")
    if not form.passed:
        raise ConstructionRefused("adjoint construction: the form cannot be inverted", rep)
    r = RMatrix(A, t, _adjoint_poly(mu, t, K))
    return _certify(r, force, "adjoint construction")


def r_double(A: LieAlgebra, Gamma, mu: OOperator, W=None, force=False) -> RMatrix:
    """r on the classical double g + g*
    ``sum_i (e_i (x) e*_i + e*_i (x) e_i)/(u1-u2) + mu(e*_i ..) (x) e_i .. + mu(e_i ..) (x) e*_i ..``.
    """
    D, form = classical_double(A, Gamma)
    K = A.dim
    if mu.kind != "adjoint" or mu.domain_dim != 2 * K:
        raise InputError("expected an adjoint-kind operator on the double")
    rep = Report("double-construction")
    rep.add(check_adjoint_ooperator(D, mu, W))
    rep.add(check_operator_unitarity(mu, form))
    _refuse_or_continue(rep, force, "double construction")
    acc = _Acc(2 * K)
    for (k, n), img in mu.images.items():
        partner = k + K if k < K else k - K
        for (l, a), c in img.items():
            acc.add(l, n, a, partner, c)
    r = RMatrix(D, form, acc.done())
    return _certify(r, force, "double construction")


# ---------------------------------------------------------------------------
# coadjoint operators
# ---------------------------------------------------------------------------

def _coadjoint_poly(T: OOperator, K, scale=1) -> dict:
    # sum_{k,n} T(e*_k u1^(-n-1)) (x) e_k u2^n
    acc = _Acc(K)
    for (k, n), img in T.images.items():
        for (l, a), c in img.items():
            acc.add(l, n, a, k, scale * c)
    return acc.done()


def _check_t_matches(T: OOperator, t):
    if T.t is not None and T.t != t:
        raise InputError("the operator's positive rule uses a different tensor t")


def r_coadjoint(A: LieAlgebra, t, T: OOperator, W=None, force=False) -> RMatrix:
    """t/(u1-u2) + sum_{k,n} T(e*_k u1^(-n-1)) (x) e_k u2^n."""
    K = A.dim
    t = as_matrix(t, K, K)
    if T.kind != "coadjoint":
        raise InputError("expected a coadjoint-kind operator")
    _check_t_matches(T, t)
    rep = Report("coadjoint-construction")
    tr = rep.add(_tensor_report(A, t))
    if tr.passed:
        rep.add(check_coadjoint_ooperator(A, t, T, W))
    rep.add(check_operator_unitarity(T))
    _refuse_or_continue(rep, force, "coadjoint construction")
    r = RMatrix(A, t, _coadjoint_poly(T, K))
    return _certify(r, force, "coadjoint construction")


def r_doubled_coadjoint(A: LieAlgebra, t, T: OOperator, W=None, force=False) -> RMatrix:
    """2t/(u1-u2) + 2 sum T(e*_k u1^(-n-1)) (x) e_k u2^n.

    Requires the identity without its t-term together with ad*(t(g)) f = 0;
    under that condition the result is twice the coadjoint construction.
    """
    K = A.dim
    t = as_matrix(t, K, K)
    if T.kind != "coadjoint":
        raise InputError("expected a coadjoint-kind operator")
    _check_t_matches(T, t)
    rep = Report("doubled-coadjoint-construction")
    tr = rep.add(_tensor_report(A, t))
    if tr.passed:
        rep.add(check_coadjoint_ooperator(A, t, T, W, drop_t_term=True))
    rep.add(check_operator_unitarity(T))
    _refuse_or_continue(rep, force, "doubled coadjoint construction")
    two = to_scalar(2)
    r = RMatrix(A, tuple(tuple(two * x for x in row) for row in t), _coadjoint_poly(T, K, two))
    if not force:
        single = RMatrix(A, t, _coadjoint_poly(T, K))
        if r != single.scale(2):
            raise InternalConsistencyError("doubled construction is not twice the single one")
    return _certify(r, force, "doubled coadjoint construction")


# ---------------------------------------------------------------------------
# arbitrary representations
# ---------------------------------------------------------------------------

def r_representation(A: LieAlgebra, rho: Representation, t, T: OOperator, W=None,
                     force=False) -> RMatrix:
    """r on g x| V* with the pole 2t in the V* (x) V* block and

    ``+ sum T(w_i u1^(-k-1)) (x) w*_i u2^k - sum w*_i u1^k (x) T(w_i u2^(-k-1))``.
    """
    K, N = A.dim, rho.module_dim
    t = as_matrix(t, N, N)
    if T.kind != "rep":
        raise InputError("expected a rep-kind operator")
    _check_t_matches(T, t)
    G = semidirect_sum(A, dual_rep(rho))
    rep = Report("representation-construction")
    try:
        rep.add(check_rep_ooperator(A, rho, t, T, W))
    except InputError as exc:
        if not force:
            bad = Report("preconditions")
            bad.fail(reason=str(exc))
            rep.add(bad)
            raise ConstructionRefused(f"representation construction: {exc}", rep) from None
    _refuse_or_continue(rep, force, "representation construction")
    dim = K + N
    pole = [[ZERO] * dim for _ in range(dim)]
    for i in range(N):
        for j in range(N):
            pole[K + i][K + j] = 2 * t[i][j]
    acc = _Acc(dim)
    for (i, k), img in T.images.items():
        for (l, a), c in img.items():
            acc.add(l, k, a, K + i, c)
            acc.add(k, l, K + i, a, -c)
    r = RMatrix(G, pole, acc.done())
    return _certify(r, force, "representation construction")


# ---------------------------------------------------------------------------
# correspondences and the worked example
# ---------------------------------------------------------------------------

def coadjoint_from_adjoint(A: LieAlgebra, t, mu: OOperator) -> OOperator:
    """T = mu o t, i.e. T(a* u^m) = mu(t(a*) u^m), with t read as a map g* -> g."""
    K = A.dim
    t = as_matrix(t, K, K)
    imgs = {}
    for k in range(K):
        for n in range(mu.n_max + 1):
            acc = LoopVector.zero(K)
            for j, x in enumerate(t[k]):
                if x:
                    acc = acc + mu.image(j, -n - 1).scale(x)
            if acc:
                imgs[(k, n)] = acc
    return OOperator("coadjoint", K, K, mu.n_max, mu.degree_bound, imgs, t)


def heisenberg_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(("e1", "e2", "e3"), [(0, 1, 2, 1)])


def heisenberg_family(lambda1, lambda2):
    """(algebra, t, T, r) for the two-parameter Heisenberg example.

    T(e3* u^-2) = -(l1 e1 + l2 e2), T(e1* u^-1) = l1 e3 u,
    T(e2* u^-1) = l2 e3 u, t = e3 (x) e3.
    """
    l1, l2 = to_scalar(lambda1), to_scalar(lambda2)
    H = heisenberg_algebra()
    t = ((ZERO,) * 3, (ZERO,) * 3, (ZERO, ZERO, to_scalar(1)))
    T = OOperator.from_entries(
        "coadjoint", 3, 3,
        [(2, 1, 0, 0, -l1), (2, 1, 1, 0, -l2), (0, 0, 2, 1, l1), (1, 0, 2, 1, l2)],
        t=t, n_max=1, degree_bound=1,
    )
    r = r_coadjoint(H, t, T)
    return H, t, T, r
