"""Rational r-matrices ``t/(u1-u2) + polynomial`` and the CYBE certifier.

The certifier multiplies ``[[r, r]]`` by ``D = (u1-u2)(u1-u3)(u2-u3)`` and
expands the result as an exact polynomial in ``u1, u2, u3`` with values in
g (x) g (x) g.  :func:`evaluate_cybe_at` is an independent pointwise oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import LieAlgebra, ad_invariance_witness, bracket, format_combination, subalgebra_closure
from .errors import DimensionMismatch, InternalConsistencyError, PoleDoesNotCancel, PoleEvaluation
from .linalg import Matrix, as_matrix, is_symmetric, is_zero, transpose, zeros
from .loop import LoopVector
from .reports import Report
from .scalars import ZERO, format_scalar, to_scalar
from .tensorpoly import TensorPoly

__all__ = [
    "RMatrix",
    "swap",
    "check_unitarity",
    "unitarity_report",
    "cybe_numerator",
    "is_cybe_solution",
    "evaluate_cybe_at",
    "evaluate_r_at",
    "is_nondegenerate",
    "cobracket",
    "D_at",
]


@dataclass(frozen=True)
class RMatrix:
    """r(u1,u2) = pole/(u1-u2) + sum_{p,q} poly[(p,q)] u1^p u2^q.

    ``pole`` and each ``poly`` value are K x K matrices of coefficients of
    e_i (x) e_j.  Zero polynomial blocks are dropped on construction.
    """

    algebra: LieAlgebra
    pole: Matrix = None
    poly: Mapping[Tuple[int, int], Matrix] = field(default_factory=dict)

    def __post_init__(self):
        K = self.algebra.dim
        pole = zeros(K) if self.pole is None else as_matrix(self.pole, K, K)
        poly = {}
        for (p, q), m in dict(self.poly).items():
            if p < 0 or q < 0:
                raise DimensionMismatch(f"negative polynomial degree ({p},{q})")
            m = as_matrix(m, K, K)
            if not is_zero(m):
                poly[(int(p), int(q))] = m
        object.__setattr__(self, "pole", pole)
        object.__setattr__(self, "poly", dict(sorted(poly.items())))

    __hash__ = None

    @property
    def dim(self):
        return self.algebra.dim

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return (self.algebra.C == other.algebra.C and self.pole == other.pole
                and self.poly == other.poly)

    def scale(self, c) -> "RMatrix":
        c = to_scalar(c)
        sc = lambda m: tuple(tuple(c * x for x in row) for row in m)
        return RMatrix(self.algebra, sc(self.pole), {k: sc(m) for k, m in self.poly.items()})

    def __add__(self, other: "RMatrix") -> "RMatrix":
        add = lambda a, b: tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))
        poly = dict(self.poly)
        for k, m in other.poly.items():
            poly[k] = add(poly[k], m) if k in poly else m
        return RMatrix(self.algebra, add(self.pole, other.pole), poly)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def with_entry(self, where, i, j, delta) -> "RMatrix":
        """Copy with ``delta`` added at entry (i, j) of the pole or of poly[(p, q)]."""
        K = self.dim
        bump = [[ZERO] * K for _ in range(K)]
        bump[i][j] = to_scalar(delta)
        if where == "pole":
            return self + RMatrix(self.algebra, bump)
        return self + RMatrix(self.algebra, None, {tuple(where): bump})

    def is_pole_only(self) -> bool:
        return not self.poly

    def max_degree(self) -> int:
        return max((max(p, q) for p, q in self.poly), default=0)

    def sparse_terms(self):
        """(p, q, i, j, c) for the polynomial part, sorted."""
        out = []
        for (p, q), m in self.poly.items():
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if c:
                        out.append((p, q, i, j, c))
        return out

    def describe(self) -> List[str]:
        names = self.algebra.basis
        lines = []
        for i, row in enumerate(self.pole):
            for j, c in enumerate(row):
                if c:
                    lines.append(f"pole {names[i]} (x) {names[j]}: {format_scalar(c)}")
        for p, q, i, j, c in self.sparse_terms():
            lines.append(f"u1^{p} u2^{q} {names[i]} (x) {names[j]}: {format_scalar(c)}")
        return lines


def swap(r: RMatrix) -> RMatrix:
    """(sigma r)(u1, u2) = sigma(r(u2, u1)) with sigma the tensor flip."""
    pole = tuple(tuple(-x for x in row) for row in transpose(r.pole))
    poly = {(q, p): transpose(m) for (p, q), m in r.poly.items()}
    return RMatrix(r.algebra, pole, poly)


def unitarity_report(r: RMatrix) -> Report:
    rep = Report("unitarity")
    names = r.algebra.basis
    K = r.dim
    for i in range(K):
        for j in range(i + 1, K):
            if r.pole[i][j] != r.pole[j][i]:
                rep.fail(term="pole", i=names[i], j=names[j])
    keys = sorted(set(r.poly) | {(q, p) for p, q in r.poly})
    zero = zeros(K)
    for p, q in keys:
        if (p, q) > (q, p):
            continue
        a = r.poly.get((p, q), zero)
        b = r.poly.get((q, p), zero)
        for i in range(K):
            for j in range(K):
                if (p, q) == (q, p) and j < i:
                    continue
                if a[i][j] + b[j][i]:
                    rep.fail(term=f"u1^{p} u2^{q}", i=names[i], j=names[j],
                             value=format_scalar(a[i][j] + b[j][i]))
    return rep


def check_unitarity(r: RMatrix) -> bool:
    """r(u1,u2) + sigma(r(u2,u1)) == 0 identically."""
    return unitarity_report(r).passed


# ---------------------------------------------------------------------------
# symbolic expansion
# ---------------------------------------------------------------------------

# scalar polynomials in (u1,u2,u3): {(a,b,c): int}
def _pmul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _var(slot, power):
    e = [0, 0, 0]
    e[slot] = power
    return {tuple(e): 1}


def _linear(a, b):
    # u_a - u_b
    return {**_var(a, 1), **{k: -v for k, v in _var(b, 1).items()}}


_FACTORS = {(0, 1): _linear(0, 1), (0, 2): _linear(0, 2), (1, 2): _linear(1, 2)}
_ALL = ((0, 1), (0, 2), (1, 2))


def _scalar_factor(fa, sa, fb, sb):
    """Polynomial (function_a on slots sa) * (function_b on slots sb) * D.

    A function is either "pole" (1/(u_x - u_y)) or a monomial exponent pair.
    Each pole consumes its own linear factor of D.
    """
    consumed = [s for f, s in ((fa, sa), (fb, sb)) if f == "pole"]
    if len(set(consumed)) != len(consumed):
        raise InternalConsistencyError("two poles share a linear factor of D")
    poly = {(0, 0, 0): 1}
    for s in _ALL:
        if s not in consumed:
            poly = _pmul(poly, _FACTORS[s])
    for f, (x, y) in ((fa, sa), (fb, sb)):
        if f != "pole":
            p, q = f
            poly = _pmul(poly, _pmul(_var(x, p), _var(y, q)))
    return poly


def _functions(r: RMatrix):
    """r as a list of (function, sparse matrix) with sparse = [(i, j, c)]."""
    out = []
    pole = [(i, j, c) for i, row in enumerate(r.pole) for j, c in enumerate(row) if c]
    if pole:
        out.append(("pole", pole))
    for pq, m in r.poly.items():
        out.append((pq, [(i, j, c) for i, row in enumerate(m) for j, c in enumerate(row) if c]))
    return out


def _contract(struct, kind, A_terms, B_terms):
    """Sparse g(x)g(x)g tensor of one bracket kind for two sparse matrices."""
    out = {}

    def put(key, v):
        w = out.get(key, ZERO) + v
        if w:
            out[key] = w
        else:
            out.pop(key, None)

    if kind == 0:  # [a_a, a_b] (x) b_a (x) b_b
        for i, l, x in A_terms:
            for i2, m, y in B_terms:
                for k, c in struct.get((i, i2), ()):
                    put((k, l, m), c * x * y)
    elif kind == 1:  # a_a (x) [b_a, a_b] (x) b_b
        for k, j, x in A_terms:
            for i2, m, y in B_terms:
                for l, c in struct.get((j, i2), ()):
                    put((k, l, m), c * x * y)
    else:  # a_a (x) a_b (x) [b_a, b_b]
        for k, j, x in A_terms:
            for l, j2, y in B_terms:
                for m, c in struct.get((j, j2), ()):
                    put((k, l, m), c * x * y)
    return out


# bracket kind -> (slots of the first r, slots of the second r)
_KINDS = {
    0: ((0, 1), (0, 2)),  # [r12(u1,u2), r13(u1,u3)]
    1: ((0, 1), (1, 2)),  # [r12(u1,u2), r23(u2,u3)]
    2: ((0, 2), (1, 2)),  # [r13(u1,u3), r23(u2,u3)]
}


def cybe_numerator(r: RMatrix) -> TensorPoly:
    """Q = D * [[r, r]] as an exact g(x)g(x)g-valued polynomial in u1, u2, u3."""
    A = r.algebra
    struct = A.struct
    funcs = _functions(r)
    Q = TensorPoly(3, A.dim)
    for kind, (sa, sb) in _KINDS.items():
        for fa, ma in funcs:
            for fb, mb in funcs:
                tens = _contract(struct, kind, ma, mb)
                if not tens:
                    continue
                scal = _scalar_factor(fa, sa, fb, sb)
                for degs, s in scal.items():
                    for idxs, c in tens.items():
                        Q.accumulate(degs, idxs, s * c)
    return Q


def is_cybe_solution(r: RMatrix) -> bool:
    return cybe_numerator(r).is_zero()


# ---------------------------------------------------------------------------
# pointwise oracle
# ---------------------------------------------------------------------------

def evaluate_r_at(r: RMatrix, x, y) -> List[List]:
    x, y = to_scalar(x), to_scalar(y)
    if x == y:
        raise PoleEvaluation()
    K = r.dim
    inv = 1 / (x - y)
    out = [[r.pole[i][j] * inv for j in range(K)] for i in range(K)]
    for (p, q), m in r.poly.items():
        w = x ** p * y ** q
        for i in range(K):
            for j in range(K):
                if m[i][j]:
                    out[i][j] += w * m[i][j]
    return out


def evaluate_cybe_at(r: RMatrix, u1, u2, u3):
    """[[r,r]](u1,u2,u3) as a dense K x K x K array, by substitution first."""
    u1, u2, u3 = to_scalar(u1), to_scalar(u2), to_scalar(u3)
    if u1 == u2 or u1 == u3 or u2 == u3:
        raise PoleEvaluation()
    K = r.dim
    C = r.algebra.C
    R12 = evaluate_r_at(r, u1, u2)
    R13 = evaluate_r_at(r, u1, u3)
    R23 = evaluate_r_at(r, u2, u3)
    rng = range(K)
    out = [[[ZERO] * K for _ in rng] for _ in rng]
    for k in rng:
        for l in rng:
            for m in rng:
                s = ZERO
                for a in rng:
                    for b in rng:
                        s += C[a][b][k] * R12[a][l] * R13[b][m]
                        s += R12[k][a] * C[a][b][l] * R23[b][m]
                        s += R13[k][a] * R23[l][b] * C[a][b][m]
                out[k][l][m] = s
    return out


def D_at(u1, u2, u3):
    u1, u2, u3 = to_scalar(u1), to_scalar(u2), to_scalar(u3)
    return (u1 - u2) * (u1 - u3) * (u2 - u3)


# ---------------------------------------------------------------------------
# nondegeneracy and cobracket
# ---------------------------------------------------------------------------

def coefficient_spans(r: RMatrix):
    mats = [r.pole] + list(r.poly.values())
    left, right = [], []
    for m in mats:
        left.extend(c for c in transpose(m) if any(c))
        right.extend(row for row in m if any(row))
    return left, right


def is_nondegenerate(r: RMatrix) -> bool:
    """No proper subalgebra h carries every coefficient of r in h (x) h."""
    left, right = coefficient_spans(r)
    return len(subalgebra_closure(r.algebra, left + right)) == r.dim


def _ad_tensor(A, x, m, slot):
    """(ad x (x) 1) m  if slot == 0 else (1 (x) ad x) m, sparse over (i, j)."""
    out = {}
    K = A.dim
    for i in range(K):
        for j in range(K):
            c = m[i][j]
            if not c:
                continue
            src = i if slot == 0 else j
            for a, xa in enumerate(x):
                if not xa:
                    continue
                for k, s in A.struct.get((a, src), ()):
                    key = (k, j) if slot == 0 else (i, k)
                    v = out.get(key, ZERO) + xa * s * c
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return out


def _difference_quotient(m):
    """(u^m - v^m)/(u - v) as {(a, b): coeff}."""
    if m == 0:
        return {}
    if m > 0:
        return {(a, m - 1 - a): 1 for a in range(m)}
    n = -m
    return {(a - n, n - 1 - a - n): -1 for a in range(n)}


def cobracket(r: RMatrix, f: LoopVector) -> TensorPoly:
    """[f(u) (x) 1 + 1 (x) f(v), r(u, v)] as a g(x)g-valued Laurent polynomial in (u, v)."""
    A = r.algebra
    if f.dim != A.dim:
        raise DimensionMismatch("element does not belong to the r-matrix algebra")
    out = TensorPoly(2, A.dim)
    have_pole = not is_zero(r.pole)
    for m, x in f.terms.items():
        for (p, q), mat in r.poly.items():
            for (i, j), c in _ad_tensor(A, x, mat, 0).items():
                out.accumulate((p + m, q), (i, j), c)
            for (i, j), c in _ad_tensor(A, x, mat, 1).items():
                out.accumulate((p, q + m), (i, j), c)
        if not have_pole:
            continue
        left = _ad_tensor(A, x, r.pole, 0)
        right = _ad_tensor(A, x, r.pole, 1)
        total = dict(left)
        for k, c in right.items():
            v = total.get(k, ZERO) + c
            if v:
                total[k] = v
            else:
                total.pop(k, None)
        if total:
            raise PoleDoesNotCancel(format_combination(x, A.basis))
        for (a, b), s in _difference_quotient(m).items():
            for (i, j), c in left.items():
                out.accumulate((a, b), (i, j), s * c)
    return out
