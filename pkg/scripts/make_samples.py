"""Regenerate the JSON fixtures under samples/."""
import os
import sys

from ratcybe import io
from ratcybe.algebra import LieAlgebra
from ratcybe.constructors import heisenberg_algebra, heisenberg_family
from ratcybe.ooperator import OOperator

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, os.pardir, "samples")


def sl2(forms=True):
    f = {"trace": [[0, 1, 0], [1, 0, 0], [0, 0, 2]]} if forms else {}
    return LieAlgebra.from_brackets(("e", "f", "h"),
                                    [(2, 0, 0, 2), (2, 1, 1, -2), (0, 1, 2, 1)], f)


def write(name, doc):
    with open(os.path.join(OUT, name), "w", encoding="utf-8") as fh:
        fh.write(io.dumps(doc))


def main():
    os.makedirs(OUT, exist_ok=True)
    H = heisenberg_algebra()
    write("heisenberg.json", io.algebra_to_json(H))
    write("sl2.json", io.algebra_to_json(sl2()))
    bad = io.algebra_to_json(sl2(False))
    # [f,h] = 3f breaks Jacobi while keeping antisymmetry; rescaling [e,f]
    # alone would give an isomorphic algebra
    bad["brackets"] = [b if b[:3] != [2, 3, 2] else [2, 3, 2, "3"] for b in bad["brackets"]]
    write("sl2_bad_jacobi.json", bad)
    write("aff1.json", io.algebra_to_json(LieAlgebra.from_brackets(("x", "y"), [(0, 1, 1, 1)])))
    write("aff1_zero_cobracket.json", {"brackets": []})
    write("aff1_bad_cobracket.json", {"brackets": [[1, 1, 1, 1]]})
    write("aff1_double_zero_op.json", io.operator_to_json(OOperator.zero("adjoint", 4)))

    _, t, T, _ = heisenberg_family(1, 1)
    write("heisenberg_T.json", io.operator_to_json(T))
    write("mutated_T.json", io.operator_to_json(T.with_entry(0, 0, 2, 1, -1).with_entry(0, 0, 2, 2, 1)))
    write("heisenberg_t.json", {"t": io.matrix_to_json(t)})

    write("bad_r.json", {"algebra": "sl2.json", "pole": [[0, 1, 0], [0, 0, 0], [0, 0, 0]], "poly": []})
    write("yang_r.json", {"algebra": "sl2.json",
                          "pole": [["1/4" if (i, j) in ((0, 1), (1, 0)) else ("1/8" if i == j == 2 else 0)
                                    for j in range(3)] for i in range(3)],
                          "poly": []})
    write("sl2_natural_rep.json", {"module_dim": 2, "basis": ["v1", "v2"],
                                   "rho": [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]]})
    mu = OOperator.from_entries("adjoint", 3, 3, [(2, 0, 0, 0, 8), (1, 0, 2, 0, -4)])
    write("jordanian_mu.json", io.operator_to_json(mu))
    write("sl2_minus_borel_projection.json", {"matrix": [[-1, 0, 0], [0, 0, 0], [0, 0, -1]]})
    write("sl2_casimir.json", {"matrix": [[0, "1/4", 0], ["1/4", 0, 0], [0, 0, "1/8"]]})
    write("sl2_identity.json", {"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    return 0


if __name__ == "__main__":
    sys.exit(main())
