"""JSON formats.  Indices in files are 1-based; everything in memory is 0-based.

Scalars are written as canonical ``"p/q"`` strings (or ``{"re", "im"}``
objects) so output is byte-deterministic and re-loads to equal values.
"""
from __future__ import annotations

import json
import os
from typing import Any, Dict, Optional

from .algebra import LieAlgebra, Representation, cobracket_algebra
from .errors import InputError
from .linalg import as_matrix
from .loop import LoopVector
from .ooperator import KINDS, OOperator
from .rmatrix import RMatrix
from .scalars import is_scalar, scalar_to_json, to_scalar

__all__ = [
    "load_json",
    "dumps",
    "algebra_from_json",
    "algebra_to_json",
    "load_algebra",
    "rep_from_json",
    "rep_to_json",
    "triples_from_json",
    "triples_to_json",
    "rmatrix_from_json",
    "rmatrix_to_json",
    "operator_from_json",
    "operator_to_json",
    "matrix_from_json",
    "matrix_to_json",
]


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _default(o):
    if is_scalar(o):
        return scalar_to_json(o)
    return str(o)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, default=_default) + "\n"


def _need(d, key, what):
    if not isinstance(d, dict):
        raise InputError(f"{what} must be a JSON object")
    if key not in d:
        raise InputError(f"{what} is missing the key {key!r}")
    return d[key]


def _index(x, n, what):
    if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
        raise InputError(f"{what} index {x!r} is not in 1..{n}")
    return x - 1


def _int(x, what, lo=None):
    if isinstance(x, bool) or not isinstance(x, int) or (lo is not None and x < lo):
        raise InputError(f"{what} must be an integer" + (f" >= {lo}" if lo is not None else ""))
    return x


def matrix_from_json(m, n=None, k=None):
    if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
        raise InputError("matrix must be a list of rows")
    return as_matrix(m, n, k if k is not None else n)


def matrix_to_json(m):
    return [[scalar_to_json(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# algebras, cobrackets, star products
# ---------------------------------------------------------------------------

def triples_from_json(entries, n, what="bracket"):
    if not isinstance(entries, list):
        raise InputError(f"{what} entries must be a list")
    out = []
    for e in entries:
        if not isinstance(e, list) or len(e) != 4:
            raise InputError(f"{what} entry must be [i, j, k, coeff], got {e!r}")
        i, j, k = (_index(x, n, what) for x in e[:3])
        out.append((i, j, k, to_scalar(e[3])))
    return out


def triples_to_json(C):
    """Sparse triples that reproduce C under the implied-antisymmetry rule."""
    n = len(C)
    out = []
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                a, b = C[i][j][k], C[j][i][k]
                if i == j:
                    if a:
                        out.append([i + 1, i + 1, k + 1, scalar_to_json(a)])
                    continue
                if not a and not b:
                    continue
                out.append([i + 1, j + 1, k + 1, scalar_to_json(a)])
                if b != -a:
                    out.append([j + 1, i + 1, k + 1, scalar_to_json(b)])
    return out


def algebra_from_json(d) -> LieAlgebra:
    basis = d.get("basis") if isinstance(d, dict) else None
    dim = _int(_need(d, "dim", "algebra"), "dim", 0)
    if dim == 0:
        raise InputError("zero-dimensional algebras are not accepted")
    if basis is None:
        basis = [f"e{i + 1}" for i in range(dim)]
    if not isinstance(basis, list) or len(basis) != dim:
        raise InputError("basis must list exactly dim names")
    entries = triples_from_json(d.get("brackets", []), dim)
    forms = {}
    for name, m in (d.get("forms") or {}).items():
        forms[name] = matrix_from_json(m, dim)
    return LieAlgebra.from_brackets(basis, entries, forms)


def algebra_to_json(A: LieAlgebra) -> Dict:
    out = {"dim": A.dim, "basis": list(A.basis), "brackets": triples_to_json(A.C)}
    if A.forms:
        out["forms"] = {k: matrix_to_json(A.forms[k]) for k in sorted(A.forms)}
    return out


def load_algebra(path) -> LieAlgebra:
    return algebra_from_json(load_json(path))


def cobracket_from_json(A: LieAlgebra, d) -> LieAlgebra:
    entries = triples_from_json(_need(d, "brackets", "cobracket"), A.dim, "cobracket")
    return cobracket_algebra(A, entries) if entries else cobracket_algebra(A, None)


def star_from_json(N: int, d):
    """Star constants from sparse products (implied antisymmetry), as an N^3 array."""
    entries = triples_from_json(_need(d, "products", "star product"), N, "star product")
    return LieAlgebra.from_brackets([f"w{i}" for i in range(N)], entries).C


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

def rep_from_json(A: LieAlgebra, d) -> Representation:
    N = _int(_need(d, "module_dim", "representation"), "module_dim", 1)
    mats = _need(d, "rho", "representation")
    if not isinstance(mats, list) or len(mats) != A.dim:
        raise InputError(f"rho must list {A.dim} matrices, one per basis element")
    names = d.get("basis") or ()
    return Representation(A, tuple(matrix_from_json(m, N) for m in mats), tuple(names))


def rep_to_json(rho: Representation) -> Dict:
    return {"module_dim": rho.module_dim, "basis": list(rho.names),
            "rho": [matrix_to_json(m) for m in rho.matrices]}


# ---------------------------------------------------------------------------
# r-matrices
# ---------------------------------------------------------------------------

def rmatrix_from_json(d, base_dir: str = ".") -> RMatrix:
    alg = _need(d, "algebra", "r-matrix")
    if isinstance(alg, str):
        A = load_algebra(alg if os.path.isabs(alg) else os.path.join(base_dir, alg))
    else:
        A = algebra_from_json(alg)
    K = A.dim
    pole = matrix_from_json(d.get("pole", [[0] * K for _ in range(K)]), K)
    poly: Dict = {}
    for e in d.get("poly", []):
        if not isinstance(e, list) or len(e) != 5:
            raise InputError(f"poly entry must be [p, q, i, j, coeff], got {e!r}")
        p, q = _int(e[0], "p", 0), _int(e[1], "q", 0)
        i, j = _index(e[2], K, "poly"), _index(e[3], K, "poly")
        m = poly.setdefault((p, q), [[0] * K for _ in range(K)])
        m[i][j] = to_scalar(m[i][j]) + to_scalar(e[4])
    return RMatrix(A, pole, poly)


def rmatrix_to_json(r: RMatrix, algebra_ref: Optional[str] = None) -> Dict:
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(r.algebra),
        "pole": matrix_to_json(r.pole),
        "poly": [[p, q, i + 1, j + 1, scalar_to_json(c)] for p, q, i, j, c in r.sparse_terms()],
    }


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def operator_dims(kind, A: LieAlgebra, rho: Representation = None, G: LieAlgebra = None):
    if kind in ("adjoint", "coadjoint"):
        return A.dim, A.dim
    if rho is None:
        raise InputError(f"{kind}-kind operators need a representation file")
    if kind == "rep":
        return rho.module_dim, A.dim + rho.module_dim
    return rho.module_dim, (G or A).dim


def operator_from_json(d, A: LieAlgebra, rho: Representation = None, G: LieAlgebra = None,
                       kind: str = None) -> OOperator:
    kind = kind or d.get("kind")
    if kind not in KINDS:
        raise InputError(f"operator kind must be one of {', '.join(KINDS)}")
    dom, img = operator_dims(kind, A, rho, G)
    n_max = _int(_need(d, "N_max", "operator"), "N_max", 0)
    L = _int(_need(d, "L", "operator"), "L", 0)
    t = d.get("t")
    if t is not None:
        t = matrix_from_json(t, dom, None)
    acc: Dict = {}
    for e in d.get("entries", []):
        i = _index(_need(e, "i", "operator entry"), dom, "operator domain")
        n = _int(_need(e, "n", "operator entry"), "n", 0)
        for term in _need(e, "image", "operator entry"):
            if not isinstance(term, list) or len(term) != 3:
                raise InputError(f"image term must be [j, l, coeff], got {term!r}")
            j = _index(term[0], img, "operator image")
            l = _int(term[1], "image degree", 0)
            dd = acc.setdefault((i, n), {})
            dd[(l, j)] = to_scalar(dd.get((l, j), 0)) + to_scalar(term[2])
    imgs = {k: LoopVector(img, v) for k, v in acc.items()}
    return OOperator(kind, dom, img, n_max, L, imgs, t)


def operator_to_json(T: OOperator) -> Dict:
    entries = []
    for (i, n), v in sorted(T.images.items()):
        terms = sorted(v.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        entries.append({"i": i + 1, "n": n,
                        "image": [[j + 1, l, scalar_to_json(c)] for (l, j), c in terms]})
    out = {"kind": T.kind, "N_max": T.n_max, "L": T.degree_bound}
    if T.t is not None:
        out["t"] = matrix_to_json(T.t)
    out["entries"] = entries
    return out
