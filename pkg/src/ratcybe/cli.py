"""Command-line interface.  Exit codes: 0 pass, 1 failed check, 2 input error."""
from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from . import io
from .algebra import (
    LieAlgebra,
    adjoint_rep,
    check_cocycle,
    classical_double,
    coadjoint_rep,
    dual_rep,
    is_invariant_form,
    killing_form,
    semidirect_sum,
    validate_algebra,
    validate_representation,
)
from .constant_ops import (
    check_coadjoint_constant,
    check_constant_o_operator,
    check_modified_cybe_operator,
    check_rota_baxter_minus_one,
    check_rota_baxter_zero,
    constant_cybe_and_mcybe,
    derived_bracket_checks,
)
from .constructors import (
    heisenberg_family,
    r_adjoint,
    r_coadjoint,
    r_double,
    r_doubled_coadjoint,
    r_from_invariant_tensor,
    r_representation,
)
from .errors import (
    BudgetExceeded,
    ConstructionRefused,
    CybeError,
    FormDegenerateError,
    InputError,
    NotALieBialgebra,
    PoleDoesNotCancel,
)
from .linalg import det, inverse, is_symmetric
from .loop import parse_element
from .ooperator import (
    check_adjoint_ooperator,
    check_coadjoint_ooperator,
    check_generalized_ooperator,
    check_operator_unitarity,
    check_rep_ooperator,
    check_stolin_lagrangian,
    search_ooperators,
)
from .reports import Report
from .rmatrix import (
    D_at,
    check_unitarity,
    cybe_numerator,
    evaluate_cybe_at,
    is_nondegenerate,
    cobracket,
)
from .scalars import format_scalar, scalar_to_json, to_scalar

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# descriptive names accepted by `build --theorem` and `constant check --eq`,
# plus the short numeric aliases
THEOREMS = {
    "pole-only": "pole-only",
    "adjoint": "adjoint", "2": "adjoint",
    "double": "double",
    "coadjoint": "coadjoint", "3": "coadjoint",
    "rep": "rep", "4": "rep",
    "doubled-coadjoint": "doubled-coadjoint", "eq422": "doubled-coadjoint",
}
EQUATIONS = {
    "rota-baxter-zero": "rota-baxter-zero", "1.5": "rota-baxter-zero",
    "coadjoint": "coadjoint", "1.6": "coadjoint",
    "o-operator": "o-operator", "1.7": "o-operator",
    "rota-baxter-minus-one": "rota-baxter-minus-one", "5.2": "rota-baxter-minus-one",
    "modified": "modified", "5.3": "modified",
    "mcybe": "mcybe", "5.4": "mcybe",
    "derived": "derived", "5.5": "derived",
}


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: List[str] = []
        self.doc: dict = {}

    def text(self, line=""):
        self.lines.append(line)

    def emit(self):
        if self.as_json:
            sys.stdout.write(io.dumps(self.doc))
        else:
            for l in self.lines:
                sys.stdout.write(l + "\n")


def _report(out: _Out, rep: Report, key=None):
    out.lines.extend(rep.lines())
    out.doc.setdefault("reports", []).append(rep.to_dict())
    return rep.passed


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _algebra(path) -> LieAlgebra:
    return io.load_algebra(path)


def _form(A: LieAlgebra, name):
    if name is None:
        return None
    if name in A.forms:
        return A.forms[name]
    if name == "killing":
        return killing_form(A)
    if os.path.exists(name):
        d = io.load_json(name)
        m = d.get("form", d.get("matrix")) if isinstance(d, dict) else d
        return io.matrix_from_json(m, A.dim)
    raise InputError(f"unknown form {name!r} (not a named form, 'killing', or a file)")


def _tensor(path, n):
    d = io.load_json(path)
    if isinstance(d, dict):
        d = d.get("t", d.get("matrix"))
    return io.matrix_from_json(d, n)


def _matrix_file(path, rows, cols):
    d = io.load_json(path)
    if isinstance(d, dict):
        d = d.get("matrix", d.get("r", d.get("t")))
    return io.matrix_from_json(d, rows, cols)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args, out: _Out) -> int:
    A = _algebra(args.algebra)
    top = Report("validate", details={"dim": A.dim})
    top.add(validate_algebra(A))
    for name in sorted(A.forms):
        B = A.forms[name]
        fr = top.add(Report(f"form:{name}"))
        if not is_symmetric(B):
            fr.fail(reason="not symmetric")
        if not is_invariant_form(A, B):
            fr.fail(reason="not invariant")
        fr.details["nondegenerate"] = bool(det(B))
    if args.rep:
        rho = io.rep_from_json(A, io.load_json(args.rep))
        top.add(validate_representation(rho))
    if args.cobracket:
        Gd = io.cobracket_from_json(A, io.load_json(args.cobracket))
        dual = validate_algebra(Gd)
        dual.name = "dual-lie-algebra"
        top.add(dual)
        top.add(check_cocycle(A, Gd))
    _report(out, top)
    return EXIT_PASS if top.passed else EXIT_FAIL


def cmd_rep(args, out: _Out) -> int:
    A = _algebra(args.algebra)
    if args.kind == "adjoint":
        rho = adjoint_rep(A)
    elif args.kind == "coadjoint":
        rho = coadjoint_rep(A)
    else:
        if not args.rep:
            raise InputError("--kind dual needs --rep")
        src = io.rep_from_json(A, io.load_json(args.rep))
        chk = validate_representation(src)
        if not chk.passed:
            _report(out, chk)
            return EXIT_FAIL
        rho = dual_rep(src)
    rep = validate_representation(rho)
    if args.semidirect:
        doc = io.algebra_to_json(semidirect_sum(A, rho))
    else:
        doc = io.rep_to_json(rho)
    _write(args.output, io.dumps(doc))
    if args.output not in (None, "-"):
        _report(out, rep)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _load_operator(args, A, kind=None):
    rho = io.rep_from_json(A, io.load_json(args.rep)) if getattr(args, "rep", None) else None
    G = _algebra(args.codomain) if getattr(args, "codomain", None) else None
    d = io.load_json(args.operator)
    kind = kind or getattr(args, "kind", None) or (d.get("kind") if isinstance(d, dict) else None)
    if rho is not None and G is not None:
        rho = io.rep_from_json(G, io.load_json(args.rep))
    return io.operator_from_json(d, A, rho, G, kind=kind), rho, G


def cmd_op_check(args, out: _Out) -> int:
    A = _algebra(args.algebra)
    T, rho, G = _load_operator(args, A)
    W = args.window
    top = Report("op-check", details={"kind": T.kind})
    if T.kind == "adjoint":
        top.add(check_adjoint_ooperator(A, T, W))
        B = _form(A, args.form)
        if B is not None:
            if not det(B):
                raise FormDegenerateError()
            top.add(check_operator_unitarity(T, inverse(B)))
            if args.stolin:
                top.add(check_stolin_lagrangian(A, B, T))
    elif T.kind == "coadjoint":
        top.add(check_coadjoint_ooperator(A, T.t, T, W, drop_t_term=args.drop_t_term))
        top.add(check_operator_unitarity(T))
    elif T.kind == "rep":
        if rho is None:
            raise InputError("rep-kind checks need --rep")
        t = T.t
        top.add(check_rep_ooperator(A, rho, t, T, W))
    else:
        if rho is None or G is None or not args.star:
            raise InputError("generalized checks need --codomain, --rep and --star")
        from .io import star_from_json
        star = star_from_json(rho.module_dim, io.load_json(args.star))
        top.add(check_generalized_ooperator(G, rho, star, T, W))
    _report(out, top)
    return EXIT_PASS if top.passed else EXIT_FAIL


def _parse_pattern(text, dom, img):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 4:
            raise InputError(f"pattern position must be i,n,j,l: {chunk!r}")
        try:
            i, n, j, l = (int(p) for p in parts)
        except ValueError:
            raise InputError(f"pattern position must be integers: {chunk!r}") from None
        if not (1 <= i <= dom and 1 <= j <= img and n >= 0 and l >= 0):
            raise InputError(f"pattern position out of range: {chunk!r}")
        out.append((i - 1, n, j - 1, l))
    return out


def cmd_op_search(args, out: _Out) -> int:
    A = _algebra(args.algebra)
    kind = args.kind
    rho = io.rep_from_json(A, io.load_json(args.rep)) if args.rep else None
    dom, img = io.operator_dims(kind, A, rho) if kind != "generalized" else (None, None)
    if kind == "generalized":
        raise InputError("search over generalized operators is only available from the library")
    t = None
    if kind in ("coadjoint", "rep"):
        if not args.t:
            raise InputError(f"{kind} search needs --t")
        t = _tensor(args.t, dom)
    pairing = None
    if kind == "adjoint" and args.form:
        pairing = inverse(_form(A, args.form))
    pattern = _parse_pattern(args.pattern or "", dom, img)
    coeffs = [to_scalar(c.strip()) for c in args.coeffs.split(",") if c.strip()]
    found = search_ooperators(A, kind, pattern, coeffs, W=args.window, t=t, rho=rho, pairing=pairing)
    out.text(f"candidates: {len(coeffs) ** len(pattern)}")
    out.text(f"passing: {len(found)}")
    ops = []
    for T in found:
        coeffs_of = {(i, n, j, l): c for i, n, j, l, c in T.entries()}
        vals = [format_scalar(coeffs_of.get(p, 0)) for p in pattern]
        out.text("  [" + ", ".join(vals) + "]")
        ops.append(io.operator_to_json(T))
    out.doc = {"candidates": len(coeffs) ** len(pattern), "passing": len(found), "operators": ops}
    if args.output:
        _write(args.output, io.dumps(ops))
    return EXIT_PASS


def cmd_build(args, out: _Out) -> int:
    force = args.force
    if args.example:
        if args.example != "heisenberg":
            raise InputError(f"unknown example {args.example!r}")
        _, _, _, r = heisenberg_family(to_scalar(args.lambda1), to_scalar(args.lambda2))
    else:
        if not args.theorem:
            raise InputError("build needs --theorem or --example")
        how = THEOREMS.get(args.theorem)
        if how is None:
            raise InputError(f"unknown construction {args.theorem!r}")
        if not args.algebra:
            raise InputError("build needs an algebra file")
        A = _algebra(args.algebra)
        if how == "pole-only":
            if not args.t:
                raise InputError("pole-only construction needs --t")
            r = r_from_invariant_tensor(A, _tensor(args.t, A.dim), force=force)
        elif how == "adjoint":
            T, _, _ = _load_operator(args, A, kind="adjoint")
            B = _form(A, args.form or "killing")
            r = r_adjoint(A, B, T, W=args.window, force=force)
        elif how == "double":
            Gd = io.cobracket_from_json(A, io.load_json(args.cobracket)) if args.cobracket else None
            D, _ = classical_double(A, Gd)
            T, _, _ = _load_operator(args, D, kind="adjoint")
            r = r_double(A, Gd, T, W=args.window, force=force)
        elif how in ("coadjoint", "doubled-coadjoint"):
            T, _, _ = _load_operator(args, A, kind="coadjoint")
            t = _tensor(args.t, A.dim) if args.t else T.t
            build = r_coadjoint if how == "coadjoint" else r_doubled_coadjoint
            r = build(A, t, T, W=args.window, force=force)
        else:
            if not args.rep:
                raise InputError("the representation construction needs --rep")
            T, rho, _ = _load_operator(args, A, kind="rep")
            t = _tensor(args.t, rho.module_dim) if args.t else T.t
            r = r_representation(A, rho, t, T, W=args.window, force=force)
    _write(args.output, io.dumps(io.rmatrix_to_json(r)))
    if args.output not in (None, "-"):
        out.text(f"wrote {args.output}")
        out.doc = {"written": args.output}
    return EXIT_PASS


def cmd_verify(args, out: _Out) -> int:
    path = args.rmatrix
    r = io.rmatrix_from_json(io.load_json(path), os.path.dirname(os.path.abspath(path)))
    Q = cybe_numerator(r)
    names = r.algebra.basis
    support = Q.support()
    unitary = check_unitarity(r)
    nondeg = is_nondegenerate(r)
    ok = not support
    out.text(f"cybe: {'PASS' if ok else 'FAIL'}")
    out.text(f"numerator terms: {len(support)}")
    doc = {"cybe": ok, "numerator_terms": len(support)}
    if support:
        (p, q, s), (i, j, k), c = support[0]
        out.text(f"first nonzero coefficient: (p,q,s)=({p},{q},{s}) (i,j,k)=({names[i]},{names[j]},{names[k]}) "
                 f"value={format_scalar(c)}")
        doc["first_nonzero"] = {"p": p, "q": q, "s": s, "i": names[i], "j": names[j], "k": names[k],
                                "value": scalar_to_json(c)}
        for line in Q.describe(names, limit=args.max_terms):
            out.text("  " + line)
    out.text(f"unitarity: {'PASS' if unitary else 'FAIL'}")
    out.text(f"nondegenerate: {'yes' if nondeg else 'no'}")
    doc.update({"unitarity": unitary, "nondegenerate": nondeg})
    agree_all = True
    if args.numeric_samples:
        rng = random.Random(args.seed)
        samples = []
        K = r.dim
        while len(samples) < args.numeric_samples:
            pts = [to_scalar(rng.randint(-50, 50)) / rng.randint(1, 9) for _ in range(3)]
            if len(set(pts)) < 3:
                continue
            E = evaluate_cybe_at(r, *pts)
            d = D_at(*pts)
            val = Q.evaluate(pts)
            agree = all(E[a][b][c] * d == val.get((a, b, c), 0)
                        for a in range(K) for b in range(K) for c in range(K))
            agree_all &= agree
            label = ", ".join(format_scalar(x) for x in pts)
            out.text(f"oracle sample ({label}): {'agree' if agree else 'DISAGREE'}")
            samples.append({"point": [scalar_to_json(x) for x in pts], "agree": agree})
        doc["numeric_samples"] = samples
    out.doc = doc
    if args.require_unitarity and not unitary:
        return EXIT_FAIL
    return EXIT_PASS if ok and agree_all else EXIT_FAIL


def cmd_cobracket(args, out: _Out) -> int:
    path = args.rmatrix
    r = io.rmatrix_from_json(io.load_json(path), os.path.dirname(os.path.abspath(path)))
    f = parse_element(args.element, r.algebra.basis)
    try:
        d = cobracket(r, f)
    except PoleDoesNotCancel as exc:
        out.text(f"FAIL {exc}")
        out.doc = {"passed": False, "error": str(exc), "element": exc.element}
        return EXIT_FAIL
    names = r.algebra.basis
    out.text(f"terms: {len(d)}")
    terms = []
    for (a, b), (i, j), c in d.support():
        out.text(f"  u^{a} v^{b} {names[i]} (x) {names[j]}: {format_scalar(c)}")
        terms.append([a, b, i + 1, j + 1, scalar_to_json(c)])
    out.doc = {"passed": True, "terms": terms}
    return EXIT_PASS


def cmd_double(args, out: _Out) -> int:
    A = _algebra(args.algebra)
    Gd = io.cobracket_from_json(A, io.load_json(args.cobracket)) if args.cobracket else None
    try:
        D, form = classical_double(A, Gd)
    except NotALieBialgebra as exc:
        out.text(f"FAIL {exc}")
        if exc.report is not None:
            out.lines.extend(exc.report.lines())
            out.doc = {"passed": False, "report": exc.report.to_dict()}
        return EXIT_FAIL
    doc = io.algebra_to_json(D)
    _write(args.output, io.dumps(doc))
    if args.output not in (None, "-"):
        out.text(f"wrote {args.output} (dim {D.dim})")
        out.doc = {"written": args.output, "dim": D.dim}
    return EXIT_PASS


def cmd_constant(args, out: _Out) -> int:
    A = _algebra(args.algebra)
    how = EQUATIONS.get(args.eq)
    if how is None:
        raise InputError(f"unknown identity {args.eq!r}")
    K = A.dim
    if how == "mcybe":
        r = _matrix_file(args.operator, K, K)
        res = constant_cybe_and_mcybe(A, r)
        out.text(f"cybe: {'PASS' if res['cybe'] else 'FAIL'}")
        out.text(f"mcybe: {'PASS' if res['mcybe'] else 'FAIL'}")
        if res["mcybe_witness"]:
            out.text(f"  not invariant under ad({res['mcybe_witness']})")
        out.doc = {"cybe": res["cybe"], "mcybe": res["mcybe"]}
        return EXIT_PASS if res["mcybe"] else EXIT_FAIL
    if how == "o-operator":
        if not args.rep:
            raise InputError("the o-operator identity needs --rep")
        rho = io.rep_from_json(A, io.load_json(args.rep))
        rep = check_constant_o_operator(A, rho, _matrix_file(args.operator, K, rho.module_dim))
    else:
        M = _matrix_file(args.operator, K, K)
        fn = {
            "rota-baxter-zero": check_rota_baxter_zero,
            "coadjoint": check_coadjoint_constant,
            "rota-baxter-minus-one": check_rota_baxter_minus_one,
            "modified": check_modified_cybe_operator,
            "derived": derived_bracket_checks,
        }[how]
        rep = fn(A, M)
    _report(out, rep)
    return EXIT_PASS if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ratcybe", description=__doc__)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    v = sub.add_parser("validate", help="check the Lie axioms and optional attachments")
    v.add_argument("algebra")
    v.add_argument("--rep")
    v.add_argument("--cobracket")
    common(v)
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("rep", help="emit adjoint, coadjoint or dual representations")
    r.add_argument("algebra")
    r.add_argument("--kind", choices=["adjoint", "coadjoint", "dual"], default="adjoint")
    r.add_argument("--rep")
    r.add_argument("--semidirect", action="store_true", help="emit the semidirect sum instead")
    r.add_argument("-o", "--output")
    common(r)
    r.set_defaults(func=cmd_rep)

    op = sub.add_parser("op", help="O-operator checks and search")
    opsub = op.add_subparsers(dest="op_command", required=True)
    oc = opsub.add_parser("check")
    oc.add_argument("algebra")
    oc.add_argument("operator")
    oc.add_argument("--kind", choices=["adjoint", "coadjoint", "rep", "generalized"])
    oc.add_argument("--window", type=int)
    oc.add_argument("--rep")
    oc.add_argument("--codomain")
    oc.add_argument("--star")
    oc.add_argument("--form", help="form name, 'killing', or a file; enables the unitarity sum")
    oc.add_argument("--stolin", action="store_true", help="also run the Lagrangian-subspace check")
    oc.add_argument("--drop-t-term", action="store_true")
    common(oc)
    oc.set_defaults(func=cmd_op_check)
    os_ = opsub.add_parser("search")
    os_.add_argument("algebra")
    os_.add_argument("--kind", choices=["adjoint", "coadjoint", "rep"], required=True)
    os_.add_argument("--pattern", required=True, help="'i,n,j,l;...' with 1-based i, j")
    os_.add_argument("--coeffs", default="-1,0,1")
    os_.add_argument("--t")
    os_.add_argument("--rep")
    os_.add_argument("--form")
    os_.add_argument("--window", type=int)
    os_.add_argument("-o", "--output")
    common(os_)
    os_.set_defaults(func=cmd_op_search)

    b = sub.add_parser("build", help="construct an r-matrix")
    b.add_argument("algebra", nargs="?")
    b.add_argument("--theorem", help="pole-only|adjoint|double|coadjoint|rep|doubled-coadjoint "
                                     "(aliases 2, 3, 4, eq422)")
    b.add_argument("--op", dest="operator")
    b.add_argument("--t")
    b.add_argument("--form")
    b.add_argument("--rep")
    b.add_argument("--cobracket")
    b.add_argument("--window", type=int)
    b.add_argument("--example")
    b.add_argument("--lambda1", default="1")
    b.add_argument("--lambda2", default="1")
    b.add_argument("--force", action="store_true")
    b.add_argument("-o", "--output")
    common(b)
    b.set_defaults(func=cmd_build)

    ve = sub.add_parser("verify", help="certify an r-matrix")
    ve.add_argument("rmatrix")
    ve.add_argument("--numeric-samples", type=int, default=0)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--max-terms", type=int, default=10)
    ve.add_argument("--require-unitarity", action="store_true")
    common(ve)
    ve.set_defaults(func=cmd_verify)

    c = sub.add_parser("cobracket", help="cobracket of a loop element")
    c.add_argument("rmatrix")
    c.add_argument("element", help="e.g. '2*e*u^-1 - h'")
    common(c)
    c.set_defaults(func=cmd_cobracket)

    d = sub.add_parser("double", help="classical double of a Lie bialgebra")
    d.add_argument("algebra")
    d.add_argument("--cobracket")
    d.add_argument("-o", "--output")
    common(d)
    d.set_defaults(func=cmd_double)

    k = sub.add_parser("constant", help="constant operator identities")
    ksub = k.add_subparsers(dest="constant_command", required=True)
    kc = ksub.add_parser("check")
    kc.add_argument("--eq", required=True, help=", ".join(sorted(set(EQUATIONS.values())))
                    + " (aliases 1.5 1.6 1.7 5.2 5.3 5.4 5.5)")
    kc.add_argument("algebra")
    kc.add_argument("operator")
    kc.add_argument("--rep")
    common(kc)
    kc.set_defaults(func=cmd_constant)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    out = _Out(getattr(args, "json", False))
    try:
        code = args.func(args, out)
    except ConstructionRefused as exc:
        out.text(f"REFUSED {exc}")
        if exc.report is not None:
            out.lines.extend(exc.report.lines())
            out.doc = {"refused": str(exc), "report": exc.report.to_dict()}
        out.emit()
        return EXIT_FAIL
    except (InputError, FormDegenerateError, BudgetExceeded) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except CybeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
