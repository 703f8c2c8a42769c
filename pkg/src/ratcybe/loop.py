"""Laurent-polynomial vectors over a finite-dimensional space.

A :class:`LoopVector` is an element of ``V[u, u^-1]`` stored sparsely as
``{(degree, basis index): coefficient}``.  Zero coefficients are never stored,
so equality is structural.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DimensionMismatch, InputError
from .scalars import ZERO, format_scalar, to_scalar

__all__ = [
    "LoopVector",
    "loop_bracket",
    "loop_rep_apply",
    "residue_pairing",
    "parse_element",
    "format_element",
]


class LoopVector:
    __slots__ = ("dim", "_c", "_hash")

    def __init__(self, dim: int, coeffs: Mapping[Tuple[int, int], object] = ()):
        self.dim = dim
        c = {}
        for (m, i), x in dict(coeffs).items():
            if not 0 <= i < dim:
                raise DimensionMismatch(f"index {i} out of range for dim {dim}")
            x = to_scalar(x)
            if x:
                c[(int(m), i)] = x
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, dim, c):
        self = object.__new__(cls)
        self.dim = dim
        self._c = c
        self._hash = None
        return self

    @classmethod
    def zero(cls, dim):
        return cls._raw(dim, {})

    @classmethod
    def monomial(cls, dim, index, degree, coeff=1):
        return cls(dim, {(degree, index): coeff})

    @classmethod
    def from_vector(cls, v: Sequence, degree: int = 0):
        return cls(len(v), {(degree, i): x for i, x in enumerate(v)})

    @classmethod
    def from_terms(cls, dim, terms: Mapping[int, Sequence]):
        out = {}
        for m, v in terms.items():
            if len(v) != dim:
                raise DimensionMismatch("component of wrong length")
            for i, x in enumerate(v):
                out[(m, i)] = x
        return cls(dim, out)

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self) -> Dict[Tuple[int, int], object]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def degrees(self):
        return sorted({m for m, _ in self._c})

    def component(self, m: int) -> Tuple:
        return tuple(self._c.get((m, i), ZERO) for i in range(self.dim))

    @property
    def terms(self) -> Dict[int, Tuple]:
        """degree -> dense coefficient vector, nonzero components only."""
        return {m: self.component(m) for m in self.degrees()}

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def min_degree(self):
        return min(m for m, _ in self._c) if self._c else None

    def max_degree(self):
        return max(m for m, _ in self._c) if self._c else None

    # -- arithmetic ---------------------------------------------------------
    def _same(self, other):
        if not isinstance(other, LoopVector):
            return False
        if other.dim != self.dim:
            raise DimensionMismatch(f"loop vectors of dims {self.dim} and {other.dim}")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        c = dict(self._c)
        for k, x in other._c.items():
            y = c.get(k, ZERO) + x
            if y:
                c[k] = y
            else:
                c.pop(k, None)
        return LoopVector._raw(self.dim, c)

    def __neg__(self):
        return LoopVector._raw(self.dim, {k: -x for k, x in self._c.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def scale(self, a):
        a = to_scalar(a)
        if not a:
            return LoopVector.zero(self.dim)
        return LoopVector._raw(self.dim, {k: a * x for k, x in self._c.items()})

    def __rmul__(self, a):
        return self.scale(a)

    def shift(self, d: int):
        """Multiply by u^d."""
        return LoopVector._raw(self.dim, {(m + d, i): x for (m, i), x in self._c.items()})

    def truncate(self, lo=None, hi=None):
        return LoopVector._raw(
            self.dim,
            {(m, i): x for (m, i), x in self._c.items()
             if (lo is None or m >= lo) and (hi is None or m <= hi)},
        )

    def embed(self, dim: int, offset: int = 0):
        """Place into a larger space at ``offset``."""
        if offset + self.dim > dim:
            raise DimensionMismatch("embedding does not fit")
        return LoopVector._raw(dim, {(m, i + offset): x for (m, i), x in self._c.items()})

    def project(self, start: int, stop: int):
        return LoopVector._raw(
            stop - start, {(m, i - start): x for (m, i), x in self._c.items() if start <= i < stop}
        )

    def __eq__(self, other):
        if not isinstance(other, LoopVector):
            return NotImplemented
        return self.dim == other.dim and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"LoopVector({self.dim}, {format_element(self)!r})"


def _sum_into(out, key, x):
    y = out.get(key, ZERO) + x
    if y:
        out[key] = y
    else:
        out.pop(key, None)


def loop_bracket(A, f: LoopVector, g: LoopVector) -> LoopVector:
    """[x u^m, y u^n] = [x, y] u^(m+n), extended bilinearly."""
    if f.dim != A.dim or g.dim != A.dim:
        raise DimensionMismatch("loop vectors do not belong to this algebra")
    struct = A.struct
    out = {}
    for (m, i), a in f._c.items():
        for (n, j), b in g._c.items():
            terms = struct.get((i, j))
            if terms:
                ab = a * b
                d = m + n
                for k, c in terms:
                    _sum_into(out, (d, k), ab * c)
    return LoopVector._raw(A.dim, out)


def loop_rep_apply(rho, f: LoopVector, v: LoopVector) -> LoopVector:
    """rho(x u^m)(w u^n) = rho(x) w u^(m+n)."""
    N = rho.module_dim
    if f.dim != rho.algebra.dim or v.dim != N:
        raise DimensionMismatch("loop vectors incompatible with representation")
    act = rho.action
    out = {}
    for (m, i), a in f._c.items():
        cols = act[i]
        if not cols:
            continue
        for (n, b), c in v._c.items():
            col = cols.get(b)
            if col:
                ac = a * c
                d = m + n
                for k, x in col:
                    _sum_into(out, (d, k), ac * x)
    return LoopVector._raw(N, out)


def residue_pairing(B, f: LoopVector, g: LoopVector):
    """-Res_{u=0} B(f, g): minus the u^-1 coefficient of B(f(u), g(u))."""
    n = len(B)
    if f.dim != n or g.dim != n:
        raise DimensionMismatch("pairing dimension mismatch")
    s = ZERO
    for (m, i), a in f._c.items():
        row = B[i]
        for (k, j), b in g._c.items():
            if m + k == -1 and row[j]:
                s += a * b * row[j]
    return -s


# ---------------------------------------------------------------------------
# text syntax:  "2*e*u^-1 - h*u^0 + 1/2*f"
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""^\s*
    (?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?
    (?P<name>[A-Za-z_][A-Za-z0-9_*']*?)
    (?:\s*\*\s*u(?:\s*\^\s*(?P<deg>[+-]?\d+))?)?
    \s*$""",
    re.VERBOSE,
)


def _split_terms(text: str):
    terms = []
    sign = 1
    buf = ""
    depth_caret = False
    i = 0
    text = text.strip()
    while i < len(text):
        ch = text[i]
        if ch in "+-" and not depth_caret and buf.strip():
            terms.append((sign, buf))
            sign = 1 if ch == "+" else -1
            buf = ""
        elif ch in "+-" and not buf.strip() and not depth_caret:
            sign = sign * (1 if ch == "+" else -1)
        else:
            buf += ch
        depth_caret = ch == "^" or (depth_caret and ch == " ")
        i += 1
    if buf.strip():
        terms.append((sign, buf))
    elif terms or text:
        if not terms:
            raise InputError(f"cannot parse element {text!r}")
    return terms


def parse_element(text: str, names: Sequence[str]) -> LoopVector:
    """Parse ``coeff*name*u^m`` sums; ``u`` alone means degree 1, no ``u`` means 0."""
    names = list(names)
    out = {}
    if text.strip() in ("", "0"):
        return LoopVector.zero(len(names))
    for sign, body in _split_terms(text):
        m = _TERM_RE.match(body)
        if not m:
            raise InputError(f"cannot parse term {body!r}")
        name = m.group("name")
        if name not in names:
            raise InputError(f"unknown basis element {name!r}")
        coef = to_scalar(m.group("coef") or "1") * sign
        deg = m.group("deg")
        if deg is None:
            deg = 1 if re.search(r"\*\s*u\s*$", body) else 0
        key = (int(deg), names.index(name))
        _sum_into(out, key, coef)
    return LoopVector._raw(len(names), out)


def format_element(f: LoopVector, names: Sequence[str] = None) -> str:
    names = names or [f"e{i + 1}" for i in range(f.dim)]
    parts = []
    for (m, i), c in sorted(f.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        txt = format_scalar(c)
        neg = txt.startswith("-") and "+" not in txt and "i" not in txt
        mag = txt[1:] if neg else txt
        if "i" in mag:
            mag = f"({mag})"
        body = names[i] if mag == "1" else f"{mag}*{names[i]}"
        if m:
            body += f"*u^{m}"
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sg, body in parts[1:]:
        s += f" {sg} {body}"
    return s
