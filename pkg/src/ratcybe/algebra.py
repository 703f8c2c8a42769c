"""Structure-constant Lie algebras, forms, invariant tensors and representations.

Conventions
-----------
* ``C[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
* A tensor ``t`` in g (x) g is the matrix ``t[i][j]`` of ``sum t^{ij} e_i (x) e_j``.
* Representation matrices act on column vectors: ``rho(e_i) w_b = sum_a M_i[a][b] w_a``.
  With this convention the coadjoint and every dual representation are ``-M^T``.
* A cobracket is given by the structure constants ``Gamma`` of the bracket on g*,
  ``[e*_i, e*_j] = sum_k Gamma[i][j][k] e*_k``, equivalently
  ``delta(e_k) = sum_{ij} Gamma[i][j][k] e_i (x) e_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    FormDegenerateError,
    InputError,
    InternalConsistencyError,
    NotALieBialgebra,
)
from .linalg import (
    Matrix,
    Vector,
    as_matrix,
    det,
    identity,
    inverse,
    is_symmetric,
    is_zero,
    mat_add,
    matmul,
    nullspace,
    row_space_basis,
    transpose,
    zeros,
)
from .reports import Report
from .scalars import ONE, ZERO, format_scalar, to_scalar

__all__ = [
    "LieAlgebra",
    "Representation",
    "validate_algebra",
    "bracket",
    "ad_matrix",
    "killing_form",
    "is_invariant_form",
    "casimir_of_form",
    "is_ad_invariant_tensor",
    "is_invariant_tensor",
    "invariant_symmetric_tensors",
    "adjoint_rep",
    "coadjoint_rep",
    "dual_rep",
    "trivial_rep",
    "validate_representation",
    "semidirect_sum",
    "classical_double",
    "check_cocycle",
    "cobracket_algebra",
    "tensor_as_map",
    "subalgebra_closure",
    "abelian",
]


def _struct_of(C, n):
    struct = {}
    for i in range(n):
        for j in range(n):
            nz = tuple((k, c) for k, c in enumerate(C[i][j]) if c)
            if nz:
                struct[(i, j)] = nz
    return struct


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional algebra given by structure constants.

    Construction does not enforce the Lie axioms; run :func:`validate_algebra`.
    """

    basis: Tuple[str, ...]
    C: Tuple
    forms: Mapping[str, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        basis = tuple(str(b) for b in self.basis)
        n = len(basis)
        if n == 0:
            raise InputError("zero-dimensional algebras are not accepted")
        if len(set(basis)) != n:
            raise InputError("basis names must be unique")
        try:
            C = tuple(tuple(tuple(to_scalar(c) for c in row) for row in plane) for plane in self.C)
        except TypeError as exc:
            raise InputError(f"malformed structure constants: {exc}") from None
        if len(C) != n or any(len(p) != n or any(len(r) != n for r in p) for p in C):
            raise InputError(f"structure constants must be a {n}x{n}x{n} array")
        forms = {name: as_matrix(m, n, n) for name, m in dict(self.forms).items()}
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "_struct", _struct_of(C, n))

    __hash__ = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def struct(self) -> Dict[Tuple[int, int], Tuple]:
        """Sparse view: ``(i, j) -> ((k, C^k_ij), ...)`` over nonzero constants."""
        return self._struct

    @classmethod
    def from_brackets(cls, basis, entries, forms=None) -> "LieAlgebra":
        """Build from 0-based ``(i, j, k, c)`` entries meaning ``C^k_ij = c``.

        An entry for (i, j, k) implies ``C^k_ji = -c`` unless (j, i, k) is
        listed explicitly as well.
        """
        n = len(basis)
        explicit = {}
        for entry in entries:
            if len(entry) != 4:
                raise InputError(f"bracket entry must be (i, j, k, coeff), got {entry!r}")
            i, j, k, c = entry
            for idx in (i, j, k):
                if not isinstance(idx, int) or not 0 <= idx < n:
                    raise InputError(f"bracket index {idx!r} out of range for dim {n}")
            if (i, j, k) in explicit:
                raise InputError(f"duplicate bracket entry for {(i, j, k)}")
            explicit[(i, j, k)] = to_scalar(c)
        C = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), c in explicit.items():
            C[i][j][k] = c
            if (j, i, k) not in explicit and i != j:
                C[j][i][k] = -c
        return cls(tuple(basis), C, dict(forms or {}))

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise InputError(f"unknown basis element {name!r}") from None

    def entries(self):
        """Sparse 0-based (i, j, k, c) list with i < j (enough when antisymmetric)."""
        out = []
        for (i, j), terms in sorted(self._struct.items()):
            for k, c in terms:
                if i < j or (j, i) not in self._struct or self.C[j][i][k] != -c:
                    out.append((i, j, k, c))
        return out

    def vector(self, coeffs: Mapping[str, object]) -> Vector:
        v = [ZERO] * self.dim
        for name, c in coeffs.items():
            v[self.index(name)] += to_scalar(c)
        return tuple(v)

    def format_vector(self, v) -> str:
        return format_combination(v, self.basis)


def abelian(n: int, names=None) -> LieAlgebra:
    names = names or [f"e{i + 1}" for i in range(n)]
    return LieAlgebra.from_brackets(names, [])


def format_combination(v, names) -> str:
    parts = []
    for c, name in zip(v, names):
        if not c:
            continue
        txt = format_scalar(c)
        if txt == "1":
            term = name
        elif txt == "-1":
            term = f"-{name}"
        else:
            if "+" in txt[1:] or "-" in txt[1:]:
                txt = f"({txt})"
            term = f"{txt}*{name}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------
# brackets and axioms
# ---------------------------------------------------------------------------

def _check_len(A: LieAlgebra, *vs):
    for v in vs:
        if len(v) != A.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for algebra of dim {A.dim}")


def bracket(A: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    _check_len(A, x, y)
    out = [ZERO] * A.dim
    struct = A.struct
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            terms = struct.get((i, j))
            if terms:
                ab = a * b
                for k, c in terms:
                    out[k] += ab * c
    return tuple(out)


def ad_matrix(A: LieAlgebra, i: int) -> Matrix:
    n = A.dim
    return tuple(tuple(A.C[i][k][j] for k in range(n)) for j in range(n))


def _jacobiator(A: LieAlgebra, i, j, k):
    n = A.dim
    out = [ZERO] * n
    C = A.C
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m, cm in A.struct.get((a, b), ()):
            for l, cl in A.struct.get((m, c), ()):
                out[l] += cm * cl
    return out


def validate_algebra(A: LieAlgebra) -> Report:
    rep = Report("lie-algebra", details={"dim": A.dim})
    names = A.basis
    anti = rep.add(Report("antisymmetry"))
    n = A.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if A.C[i][j][k] != -A.C[j][i][k]:
                    anti.fail(i=names[i], j=names[j], k=names[k],
                              value=format_scalar(A.C[i][j][k] + A.C[j][i][k]))
    jac = rep.add(Report("jacobi"))
    # total antisymmetry of the Jacobiator lets us restrict to i<j<k when the
    # bracket itself is antisymmetric
    if anti.passed:
        triples = ((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
    else:
        triples = product(range(n), repeat=3)
    for i, j, k in triples:
        J = _jacobiator(A, i, j, k)
        if any(J):
            jac.fail(triple=(names[i], names[j], names[k]),
                     value=format_combination(J, names))
    return rep


# ---------------------------------------------------------------------------
# forms and invariant tensors
# ---------------------------------------------------------------------------

def killing_form(A: LieAlgebra) -> Matrix:
    n = A.dim
    C = A.C
    B = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = ZERO
            for m in range(n):
                for k in range(n):
                    a = C[i][m][k]
                    if a:
                        b = C[j][k][m]
                        if b:
                            s += a * b
            B[i][j] = B[j][i] = s
    return tuple(tuple(r) for r in B)


def _form_matrix(A: LieAlgebra, B) -> Matrix:
    if isinstance(B, str):
        if B == "killing" and "killing" not in A.forms:
            return killing_form(A)
        try:
            return A.forms[B]
        except KeyError:
            raise InputError(f"algebra has no form named {B!r}") from None
    return as_matrix(B, A.dim, A.dim)


def invariance_witnesses(A: LieAlgebra, B) -> List[Tuple[int, int, int]]:
    B = _form_matrix(A, B)
    n = A.dim
    out = []
    for i, j, k in product(range(n), repeat=3):
        lhs = sum((c * B[m][k] for m, c in A.struct.get((i, j), ())), ZERO)
        rhs = sum((c * B[i][m] for m, c in A.struct.get((j, k), ())), ZERO)
        if lhs != rhs:
            out.append((i, j, k))
    return out


def is_invariant_form(A: LieAlgebra, B) -> bool:
    """B([x,y],z) == B(x,[y,z]) on all basis triples."""
    return not invariance_witnesses(A, B)


def casimir_of_form(A: LieAlgebra, B) -> Matrix:
    """Casimir tensor of a nondegenerate invariant symmetric form: t = B^{-1}."""
    B = _form_matrix(A, B)
    if not is_symmetric(B):
        raise InputError("form is not symmetric")
    if not is_invariant_form(A, B):
        raise InputError("form is not invariant")
    if not det(B):
        raise FormDegenerateError()
    return inverse(B)


def _rep_invariance_residual(mats, t):
    # (rho(x) (x) 1 + 1 (x) rho(x)) t  ==  M t + t M^T
    for k, M in enumerate(mats):
        R = mat_add(matmul(M, t), matmul(t, transpose(M)))
        if not is_zero(R):
            return k, R
    return None


def is_invariant_tensor(rho: "Representation", t) -> bool:
    t = as_matrix(t, rho.module_dim, rho.module_dim)
    return _rep_invariance_residual(rho.matrices, t) is None


def is_ad_invariant_tensor(A: LieAlgebra, t) -> bool:
    t = as_matrix(t, A.dim, A.dim)
    return _ad_invariance_witness(A, t) is None


def _ad_invariance_witness(A: LieAlgebra, t):
    n = A.dim
    for k in range(n):
        for i in range(n):
            for j in range(n):
                s = ZERO
                for m in range(n):
                    a = A.C[k][m][i]
                    if a and t[m][j]:
                        s += a * t[m][j]
                    b = A.C[k][m][j]
                    if b and t[i][m]:
                        s += b * t[i][m]
                if s:
                    return k
    return None


def ad_invariance_witness(A: LieAlgebra, t) -> Optional[str]:
    """Name of a basis element x with [x (x) 1 + 1 (x) x, t] != 0, or None."""
    k = _ad_invariance_witness(A, as_matrix(t, A.dim, A.dim))
    return None if k is None else A.basis[k]


def invariant_symmetric_tensors(rho: "Representation") -> List[Matrix]:
    """Basis of the symmetric tensors in V (x) V fixed by ``rho``.

    Pass ``adjoint_rep(A)`` for ad-invariant tensors on g, or a dual
    representation for tensors on V*.
    """
    n = rho.module_dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    col = {p: c for c, p in enumerate(pairs)}

    def var(i, j):
        return col[(i, j) if i <= j else (j, i)]

    rows = []
    for M in rho.matrices:
        for i in range(n):
            for j in range(n):
                row = [ZERO] * len(pairs)
                for m in range(n):
                    if M[i][m]:
                        row[var(m, j)] += M[i][m]
                    if M[j][m]:
                        row[var(i, m)] += M[j][m]
                if any(row):
                    rows.append(tuple(row))
    out = []
    for sol in nullspace(tuple(rows), len(pairs)):
        t = [[ZERO] * n for _ in range(n)]
        for (i, j), c in zip(pairs, sol):
            t[i][j] = t[j][i] = c
        out.append(tuple(tuple(r) for r in t))
    return out


def tensor_as_map(t) -> Matrix:
    """Matrix of the map g* -> g, a* -> <t, a* (x) .>; column i is t(e*_i)."""
    return transpose(as_matrix(t))


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

def _action_of(mats, n):
    act = []
    for M in mats:
        cols = {}
        for b in range(n):
            nz = tuple((a, M[a][b]) for a in range(n) if M[a][b])
            if nz:
                cols[b] = nz
        act.append(cols)
    return tuple(act)


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    matrices: Tuple[Matrix, ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        K = self.algebra.dim
        mats = tuple(as_matrix(m) for m in self.matrices)
        if len(mats) != K:
            raise DimensionMismatch(f"need {K} representation matrices, got {len(mats)}")
        N = len(mats[0]) if mats[0] else 0
        for m in mats:
            if len(m) != N or any(len(r) != N for r in m):
                raise DimensionMismatch("representation matrices must all be NxN")
        if N == 0:
            raise InputError("zero-dimensional modules are not accepted")
        names = tuple(self.names) or tuple(f"w{i + 1}" for i in range(N))
        if len(names) != N:
            raise DimensionMismatch("module basis names do not match module dimension")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_act", _action_of(mats, N))

    __hash__ = None

    @property
    def module_dim(self) -> int:
        return len(self.names)

    @property
    def action(self):
        """Sparse view: ``action[i][b] = ((a, M_i[a][b]), ...)``."""
        return self._act

    def apply(self, x: Sequence, v: Sequence) -> Vector:
        out = [ZERO] * self.module_dim
        for i, a in enumerate(x):
            if not a:
                continue
            act = self._act[i]
            for b, c in enumerate(v):
                if c and b in act:
                    ac = a * c
                    for k, m in act[b]:
                        out[k] += ac * m
        return tuple(out)


def adjoint_rep(A: LieAlgebra) -> Representation:
    return Representation(A, tuple(ad_matrix(A, i) for i in range(A.dim)), A.basis)


def coadjoint_rep(A: LieAlgebra) -> Representation:
    return dual_rep(adjoint_rep(A))


def dual_rep(rho: Representation) -> Representation:
    mats = tuple(tuple(tuple(-x for x in row) for row in transpose(M)) for M in rho.matrices)
    return Representation(rho.algebra, mats, tuple(f"{n}*" for n in rho.names))


def trivial_rep(A: LieAlgebra, n: int, names=None) -> Representation:
    return Representation(A, tuple(zeros(n) for _ in range(A.dim)), tuple(names or ()))


def validate_representation(rho: Representation) -> Report:
    A = rho.algebra
    rep = Report("representation", details={"module_dim": rho.module_dim})
    hom = rep.add(Report("homomorphism"))
    n = A.dim
    N = rho.module_dim
    for i in range(n):
        for j in range(i, n):
            lhs = [[ZERO] * N for _ in range(N)]
            for k, c in A.struct.get((i, j), ()):
                M = rho.matrices[k]
                for a in range(N):
                    for b in range(N):
                        if M[a][b]:
                            lhs[a][b] += c * M[a][b]
            Mi, Mj = rho.matrices[i], rho.matrices[j]
            rhs = matmul(Mi, Mj)
            rhs2 = matmul(Mj, Mi)
            if any(lhs[a][b] != rhs[a][b] - rhs2[a][b] for a in range(N) for b in range(N)):
                hom.fail(i=A.basis[i], j=A.basis[j])
    return rep


def _require_valid_rep(rho: Representation):
    r = validate_representation(rho)
    if not r.passed:
        raise InputError(f"invalid representation: {r.first_witness}")


def semidirect_sum(A: LieAlgebra, rho: Representation) -> LieAlgebra:
    """g (+) V with V abelian and [x, w] = rho(x) w."""
    if rho.algebra is not A and rho.algebra != A:
        raise InputError("representation belongs to a different algebra")
    _require_valid_rep(rho)
    K, N = A.dim, rho.module_dim
    D = K + N
    C = [[[ZERO] * D for _ in range(D)] for _ in range(D)]
    for i in range(K):
        for j in range(K):
            for k in range(K):
                C[i][j][k] = A.C[i][j][k]
    for i, M in enumerate(rho.matrices):
        for a in range(N):
            for b in range(N):
                if M[a][b]:
                    C[i][K + b][K + a] = M[a][b]
                    C[K + b][i][K + a] = -M[a][b]
    return LieAlgebra(A.basis + _module_names(A.basis, rho.names), C)


def _module_names(taken, names):
    # primes keep V's labels apart from g's, e.g. for the adjoint module
    taken = set(taken)
    out = []
    for n in names:
        while n in taken:
            n += "'"
        taken.add(n)
        out.append(n)
    return tuple(out)


# ---------------------------------------------------------------------------
# bialgebras
# ---------------------------------------------------------------------------

def cobracket_algebra(A: LieAlgebra, Gamma) -> LieAlgebra:
    """Wrap cobracket constants as the Lie algebra g* they define."""
    if isinstance(Gamma, LieAlgebra):
        if Gamma.dim != A.dim:
            raise DimensionMismatch("cobracket dimension does not match algebra")
        return Gamma
    names = tuple(f"{b}*" for b in A.basis)
    if Gamma is None or Gamma == 0:
        return LieAlgebra.from_brackets(names, [])
    if isinstance(Gamma, (list, tuple)) and Gamma and isinstance(Gamma[0], (list, tuple)) \
            and len(Gamma[0]) == 4 and not isinstance(Gamma[0][0], (list, tuple)):
        return LieAlgebra.from_brackets(names, Gamma)
    return LieAlgebra(names, Gamma)


def _delta(Gd: LieAlgebra, k):
    n = Gd.dim
    return tuple(tuple(Gd.C[i][j][k] for j in range(n)) for i in range(n))


def _act_on_tensor(A: LieAlgebra, x: int, M: Matrix) -> Matrix:
    ad = ad_matrix(A, x)
    return mat_add(matmul(ad, M), matmul(M, transpose(ad)))


def check_cocycle(A: LieAlgebra, Gamma) -> Report:
    """delta([x,y]) == x.delta(y) - y.delta(x) on basis pairs."""
    Gd = cobracket_algebra(A, Gamma)
    n = A.dim
    rep = Report("cocycle")
    deltas = [_delta(Gd, k) for k in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            lhs = [[ZERO] * n for _ in range(n)]
            for k, c in A.struct.get((a, b), ()):
                for i in range(n):
                    for j in range(n):
                        if deltas[k][i][j]:
                            lhs[i][j] += c * deltas[k][i][j]
            ra = _act_on_tensor(A, a, deltas[b])
            rb = _act_on_tensor(A, b, deltas[a])
            if any(lhs[i][j] != ra[i][j] - rb[i][j] for i in range(n) for j in range(n)):
                rep.fail(x=A.basis[a], y=A.basis[b])
    return rep


def classical_double(A: LieAlgebra, Gamma) -> Tuple[LieAlgebra, Matrix]:
    """Lie algebra on g (+) g* and its canonical pairing form.

    Basis order is e_1..e_K followed by e*_1..e*_K.
    """
    Gd = cobracket_algebra(A, Gamma)
    report = Report("lie-bialgebra")
    report.add(validate_algebra(Gd))
    report.add(check_cocycle(A, Gd))
    if not report.passed:
        raise NotALieBialgebra(report=report)
    K = A.dim
    D = 2 * K
    C = [[[ZERO] * D for _ in range(D)] for _ in range(D)]
    for i in range(K):
        for j in range(K):
            for k in range(K):
                C[i][j][k] = A.C[i][j][k]
                C[K + i][K + j][K + k] = Gd.C[i][j][k]
    for i in range(K):
        for j in range(K):
            for k in range(K):
                # [e*_i, e_j] = sum_k C^i_{jk} e*_k - Gamma^j_{ik} e_k
                a = A.C[j][k][i]
                b = Gd.C[i][k][j]
                if a:
                    C[K + i][j][K + k] += a
                    C[j][K + i][K + k] -= a
                if b:
                    C[K + i][j][k] -= b
                    C[j][K + i][k] += b
    form = tuple(
        tuple(ONE if (j == i + K or i == j + K) else ZERO for j in range(D)) for i in range(D)
    )
    double = LieAlgebra(A.basis + Gd.basis, C, {"pairing": form})
    check = validate_algebra(double)
    if not check.passed:
        raise InternalConsistencyError(f"double fails the Lie axioms: {check.first_witness}")
    if not is_invariant_form(double, form):
        raise InternalConsistencyError("pairing form on the double is not invariant")
    return double, form


# ---------------------------------------------------------------------------
# subalgebras
# ---------------------------------------------------------------------------

def subalgebra_closure(A: LieAlgebra, span: Sequence[Sequence]) -> List[Vector]:
    """RREF basis of the smallest bracket-closed subspace containing ``span``."""
    for v in span:
        _check_len(A, v)
    basis = row_space_basis([tuple(to_scalar(x) for x in v) for v in span])
    while True:
        new = [bracket(A, u, v) for a, u in enumerate(basis) for v in basis[a + 1:]]
        grown = row_space_basis(list(basis) + [w for w in new if any(w)])
        if len(grown) == len(basis):
            return basis
        basis = grown
