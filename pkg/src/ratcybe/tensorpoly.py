"""Sparse Laurent polynomials with tensor-valued coefficients.

A :class:`TensorPoly` of arity ``n`` is a finite sum of terms
``c * u1^d1 ... un^dn * e_{i1} (x) ... (x) e_{in}``, stored as
``{((d1..dn), (i1..in)): c}``.  Arity 3 houses the cleared CYBE numerator,
arity 2 houses cobrackets.
"""
from __future__ import annotations

from typing import Dict, Iterable, Sequence, Tuple

from .scalars import ZERO, format_scalar, to_scalar

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


class TensorPoly:
    __slots__ = ("arity", "dim", "_c")

    def __init__(self, arity: int, dim: int, coeffs=None):
        self.arity = arity
        self.dim = dim
        self._c: Dict[Key, object] = {}
        if coeffs:
            for (degs, idxs), c in dict(coeffs).items():
                if len(degs) != arity or len(idxs) != arity:
                    raise ValueError("key arity mismatch")
                self.accumulate(tuple(degs), tuple(idxs), to_scalar(c))

    def accumulate(self, degs, idxs, c):
        """In-place ``+= c * monomial``; only for builders that own the object."""
        if not c:
            return
        key = (degs, idxs)
        v = self._c.get(key, ZERO) + c
        if v:
            self._c[key] = v
        else:
            del self._c[key]

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def support(self):
        """Nonzero terms as ``(degs, idxs, c)`` in sorted order."""
        return [(d, i, self._c[(d, i)]) for d, i in sorted(self._c)]

    def coefficient(self, degs, idxs):
        return self._c.get((tuple(degs), tuple(idxs)), ZERO)

    def degree_support(self):
        return sorted({d for d, _ in self._c})

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (self.arity, self.dim, self._c) == (other.arity, other.dim, other._c)

    __hash__ = None

    def __add__(self, other):
        out = TensorPoly(self.arity, self.dim)
        out._c = dict(self._c)
        for (d, i), c in other._c.items():
            out.accumulate(d, i, c)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = to_scalar(a)
        out = TensorPoly(self.arity, self.dim)
        if a:
            out._c = {k: a * c for k, c in self._c.items()}
        return out

    def permute(self, perm: Sequence[int]):
        """Reorder slots: the new slot ``s`` carries old slot ``perm[s]``."""
        out = TensorPoly(self.arity, self.dim)
        for (d, i), c in self._c.items():
            out.accumulate(tuple(d[p] for p in perm), tuple(i[p] for p in perm), c)
        return out

    def evaluate(self, point: Sequence) -> Dict[Tuple[int, ...], object]:
        """Substitute scalars for the variables; returns ``{idxs: value}`` nonzero entries."""
        point = [to_scalar(x) for x in point]
        powers = {}
        out: Dict[Tuple[int, ...], object] = {}
        for (d, i), c in self._c.items():
            val = c
            for slot, e in enumerate(d):
                key = (slot, e)
                p = powers.get(key)
                if p is None:
                    base = point[slot]
                    p = base ** e if e >= 0 else 1 / base ** (-e)
                    powers[key] = p
                val = val * p
            v = out.get(i, ZERO) + val
            if v:
                out[i] = v
            else:
                out.pop(i, None)
        return out

    def first_term(self):
        s = self.support()
        return s[0] if s else None

    def describe(self, names=None, limit=None):
        lines = []
        for n, (d, i, c) in enumerate(self.support()):
            if limit is not None and n >= limit:
                lines.append(f"... {len(self._c) - limit} more")
                break
            slots = " (x) ".join(names[k] if names else str(k + 1) for k in i)
            degs = ",".join(str(x) for x in d)
            lines.append(f"degrees ({degs}) [{slots}] {format_scalar(c)}")
        return lines


def TensorPoly3(dim: int, coeffs=None) -> TensorPoly:
    return TensorPoly(3, dim, coeffs)
