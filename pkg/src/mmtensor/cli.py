"""``mmtensor`` command line: ``mm``, ``dm``, ``rg`` and ``verify`` namespaces.

Exit codes: 0 success, 1 a verification failed, 2 usage error,
3 malformed input, 4 hypothesis violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import deltamatroid as dmm
from . import ribbon as rgm
from .algebra import MultiPoly
from .compose import SumSpec, tensor, two_sum
from .errors import (DivisionByZero, HypothesisError, MalformedInput, MissingAssignment,
                     ModeHypothesisViolated, UnknownElement)
from .multimatroid import mm_enumerate
from .structfile import (dm_from_json, dm_to_json, dumps, load_dm, load_mm, load_rg, load_weights,
                         mm_to_json, parse_value, read_json, rg_to_json)
from .transition import brylawski_check, linear_system_check, q_poly, slack_sums

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MALFORMED, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4


class Output:
    """Collects results; ``text`` prints plain lines, ``machine`` one JSON object per line."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def poly(self, p: MultiPoly, **extra):
        if self.fmt == "machine":
            self._json({"polynomial": p.to_text(), **extra})
        else:
            self.stream.write(p.to_text() + "\n")

    def structure(self, data: dict):
        self.stream.write(dumps(data) if self.fmt == "text" else json.dumps(data, sort_keys=False) + "\n")

    def value(self, name: str, v, labeled: bool = False):
        if self.fmt == "machine":
            self._json({name: _jsonable(v)})
        else:
            self.stream.write(f"{name}: {v}\n" if labeled else f"{v}\n")

    def check(self, name: str, ok: bool, counterexample: dict | None = None):
        if self.fmt == "machine":
            rec = {"check": name, "ok": ok}
            if counterexample is not None and not ok:
                rec["counterexample"] = counterexample
            self._json(rec)
        else:
            self.stream.write(f"{'ok  ' if ok else 'FAIL'} {name}\n")
            if counterexample is not None and not ok:
                self.stream.write("  counterexample: " + json.dumps(counterexample) + "\n")

    def _json(self, obj):
        self.stream.write(json.dumps(obj) + "\n")


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, MultiPoly):
        return v.to_text()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [_jsonable(x) for x in v]
        return sorted(items, key=str) if isinstance(v, (set, frozenset)) else items
    return str(v)


def _diff_json(diff) -> dict | None:
    if diff is None:
        return None
    mono, a, b = diff
    return {"monomial": mono, "lhs_coeff": _jsonable(a), "rhs_coeff": _jsonable(b)}


def _csv(text: str | None) -> list:
    return [x for x in (text or "").split(",") if x]


def _t_value(text):
    return None if text is None else parse_value(text)


# mm ---------------------------------------------------------------------------

def cmd_mm_q(a, out):
    Z = load_mm(a.input)
    w = load_weights(a.weights) if a.weights else None
    unknown = sorted(set(w or ()) - set(Z.carrier.elems))
    if unknown:
        raise UnknownElement(f"weights for unknown elements {unknown}")
    out.poly(q_poly(Z, w, _t_value(a.t_value)))
    return EXIT_OK


def cmd_mm_rank(a, out):
    Z = load_mm(a.input)
    out.value("rank", Z.rank(_csv(a.set)))
    return EXIT_OK


def cmd_mm_slack(a, out):
    Z = load_mm(a.input)
    out.value("slack", Z.slack(_csv(a.set)))
    return EXIT_OK


def cmd_mm_minor(a, out):
    out.structure(mm_to_json(load_mm(a.input).minor(a.elem).materialize()))
    return EXIT_OK


def cmd_mm_enumerate(a, out):
    Z = load_mm(a.input)
    c = Z.carrier
    sets = [sorted(S, key=c.bit.get) for S in mm_enumerate(Z, a.kind)]
    out.value("sets", sets)
    return EXIT_OK


def cmd_mm_slack_sums(a, out):
    Z = load_mm(a.input)
    for j, y in enumerate(slack_sums(Z, a.cls), 1):
        out.poly(y, index=j)
    return EXIT_OK


def cmd_mm_two_sum(a, out):
    Z = two_sum(SumSpec(load_mm(a.left), a.left_class, load_mm(a.right), a.right_class))
    out.structure(mm_to_json(Z))
    return EXIT_OK


def cmd_mm_tensor(a, out):
    Z, _ = tensor(load_mm(a.left), load_mm(a.right), a.cls)
    out.structure(mm_to_json(Z))
    return EXIT_OK


def cmd_mm_verify_brylawski(a, out):
    Z1, Z2 = load_mm(a.left), load_mm(a.right)
    ok, lhs, rhs, diff = brylawski_check(Z1, Z2, a.cls)
    ce = None
    if not ok:
        ce = {"left": mm_to_json(Z1), "right": mm_to_json(Z2), "class": a.cls,
              "first_difference": _diff_json(diff)}
    out.check("brylawski", ok, ce)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mm_verify_linear(a, out):
    Z = load_mm(a.input)
    ok = linear_system_check(Z, a.cls)
    out.check(f"linear-system {a.cls}", ok, None if ok else {"structure": mm_to_json(Z)})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mm_verify_axioms(a, out):
    Z = load_mm(a.input)
    rep = Z.check_axioms()
    out.check("axioms", rep.ok, None if rep.ok else {"violations": rep.violations[:5]})
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_mm_verify_tight(a, out):
    ok = load_mm(a.input).is_tight()
    out.check("tight", ok)
    return EXIT_OK if ok else EXIT_FAIL


# dm ---------------------------------------------------------------------------

def cmd_dm_validate(a, out):
    data = read_json(a.input)
    D = dm_from_json(data, validate=False)
    rep = dmm.dm_validate(D)
    out.check("valid", rep.ok, None if rep.ok else {"violations": rep.violations[:5]})
    if rep.ok:
        out.value("even", dmm.dm_is_even(D), labeled=True)
        out.value("matroid", dmm.dm_is_matroid(D), labeled=True)
        out.value("vf_safe", dmm.dm_is_vf_safe(D), labeled=True)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_dm_twist(a, out):
    out.structure(dm_to_json(dmm.dm_twist(load_dm(a.input), _csv(a.set))))
    return EXIT_OK


def cmd_dm_lc(a, out):
    D, valid = dmm.dm_loop_complement(load_dm(a.input), _csv(a.set))
    out.structure({**dm_to_json(D), "valid": valid})
    return EXIT_OK


def cmd_dm_minor(a, out):
    D = load_dm(a.input)
    op = {"delete": dmm.dm_delete, "contract": dmm.dm_contract,
          "lc-contract": dmm.dm_lc_contract}[a.op]
    out.structure(dm_to_json(op(D, a.elem)))
    return EXIT_OK


def cmd_dm_two_sum(a, out):
    D = dmm.dm_two_sum(load_dm(a.left), a.left_elem, load_dm(a.right), a.right_elem, a.mode)
    out.structure(dm_to_json(D))
    return EXIT_OK


def cmd_dm_tensor(a, out):
    out.structure(dm_to_json(dmm.dm_tensor(load_dm(a.left), load_dm(a.right), a.elem, a.mode)))
    return EXIT_OK


def cmd_dm_to_z(a, out):
    D = load_dm(a.input)
    Z = dmm.dm_to_z2(D) if a.q == 2 else dmm.dm_to_z3(D)
    out.structure(mm_to_json(Z))
    return EXIT_OK


def cmd_dm_q(a, out):
    D = load_dm(a.input)
    out.poly(dmm.dm_q_multi(D) if a.form == "multi" else dmm.dm_q_two(D))
    return EXIT_OK


def cmd_dm_tutte(a, out):
    D = load_dm(a.input)
    if a.kind == "T":
        if not dmm.dm_is_matroid(D):
            raise ModeHypothesisViolated("T is defined for matroids only")
        out.poly(dmm.matroid_tutte_T(D))
    else:
        out.poly(dmm.dm_tutte_R(D, shifted=a.shifted))
    return EXIT_OK


_DM_THEOREMS = {
    "multi": dmm.verify_thm_dm_multi,
    "even": dmm.verify_thm_dm_even,
    "R": dmm.verify_thm_dm_R,
    "brylawski": dmm.verify_brylawski_matroid,
}


def cmd_dm_verify(a, out):
    D1, D2 = load_dm(a.left), load_dm(a.right)
    names = list(_DM_THEOREMS) if a.theorem == "all" else [a.theorem]
    code = EXIT_OK
    for name in names:
        try:
            ok = _DM_THEOREMS[name](D1, D2, a.elem)
        except HypothesisError as err:
            if a.theorem != "all":
                raise
            out.value("skipped", f"{name}: {err}", labeled=True)
            continue
        ce = None if ok else {"left": dm_to_json(D1), "right": dm_to_json(D2), "elem": a.elem}
        out.check(f"theorem {name}", ok, ce)
        if not ok:
            code = EXIT_FAIL
    return code


# rg ---------------------------------------------------------------------------

def cmd_rg_count(a, out):
    G = load_rg(a.input)
    fn = {"b": rgm.rg_b, "k": rgm.rg_k, "e": rgm.rg_e}[a.which]
    out.value(a.which, fn(G))
    return EXIT_OK


def cmd_rg_q(a, out):
    out.poly(rgm.rg_q(load_rg(a.input), _t_value(a.t_value)))
    return EXIT_OK


def cmd_rg_local(a, out):
    G = load_rg(a.input)
    if a.op == "delete":
        R = rgm.rg_delete(G, a.edge)
    elif a.op == "contract":
        R = rgm.rg_contract(G, a.edge)
    else:
        R = rgm.rg_petrial(G, a.edge, a.slot)
    out.structure(rg_to_json(R))
    return EXIT_OK


def cmd_rg_to_z(a, out):
    out.structure(mm_to_json(rgm.rg_to_z(load_rg(a.input))))
    return EXIT_OK


def cmd_rg_two_sum(a, out):
    R = rgm.rg_two_sum(load_rg(a.left), a.left_edge, load_rg(a.right), a.right_edge)
    out.structure(rg_to_json(R))
    return EXIT_OK


def cmd_rg_tensor(a, out):
    out.structure(rg_to_json(rgm.rg_tensor(load_rg(a.left), load_rg(a.right), a.edge)))
    return EXIT_OK


def cmd_rg_verify(a, out):
    G, H = load_rg(a.left), load_rg(a.right)
    rep = rgm.rg_tensor_report(G, H, a.edge)
    ce = {"left": rg_to_json(G), "right": rg_to_json(H), "edge": a.edge}
    out.check("linear system", rep.system, ce)
    out.check("component count", rep.components, {**ce, "k": rep.details.get("k")})
    out.check("tensor polynomial", rep.polynomial,
              {**ce, "first_difference": _diff_json(rep.details.get("first_difference"))})
    return EXIT_OK if rep.ok else EXIT_FAIL


# verify all -------------------------------------------------------------------

def cmd_verify_all(a, out):
    from .suite import run_suite
    failures = run_suite(Path(a.fixtures), seed=a.seed, count=a.count, out=out)
    return EXIT_OK if failures == 0 else EXIT_FAIL


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS,
                        help="output style (default text)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized fixtures (default 0)")

    p = argparse.ArgumentParser(prog="mmtensor", parents=[common],
                                description="Tensor products of multimatroids and the "
                                            "structures they come from.")
    ns = p.add_subparsers(dest="namespace", required=True)

    def leaf(sub, name, func, help_text):
        q = sub.add_parser(name, parents=[common], help=help_text)
        q.set_defaults(func=func)
        return q

    # mm
    mm = ns.add_parser("mm", help="multimatroids").add_subparsers(dest="cmd", required=True)
    q = leaf(mm, "q", cmd_mm_q, "weighted transition polynomial")
    q.add_argument("--input", required=True)
    q.add_argument("--weights")
    q.add_argument("--t-value")
    q = leaf(mm, "rank", cmd_mm_rank, "rank of a subtransversal")
    q.add_argument("--input", required=True)
    q.add_argument("--set", default="", help="comma-separated element ids")
    q = leaf(mm, "slack", cmd_mm_slack, "slack element of a near-transversal")
    q.add_argument("--input", required=True)
    q.add_argument("--set", default="")
    q = leaf(mm, "minor", cmd_mm_minor, "elementary minor Z|e")
    q.add_argument("--input", required=True)
    q.add_argument("--elem", required=True)
    q = leaf(mm, "enumerate", cmd_mm_enumerate, "list (sub/near-)transversals")
    q.add_argument("--input", required=True)
    q.add_argument("--kind", choices=("transversal", "near", "sub"), default="transversal")
    q = leaf(mm, "slack-sums", cmd_mm_slack_sums, "the polynomials y_1..y_q of a class")
    q.add_argument("--input", required=True)
    q.add_argument("--class", dest="cls", required=True)
    q = leaf(mm, "two-sum", cmd_mm_two_sum, "2-sum along two ordered classes")
    for side in ("left", "right"):
        q.add_argument(f"--{side}", required=True)
        q.add_argument(f"--{side}-class", required=True)
    q = leaf(mm, "tensor", cmd_mm_tensor, "tensor product along a class of the right factor")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--class", dest="cls", required=True)
    mv = mm.add_parser("verify", help="checks").add_subparsers(dest="check", required=True)
    q = leaf(mv, "brylawski", cmd_mm_verify_brylawski, "tensor identity for Q")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--class", dest="cls", required=True)
    q = leaf(mv, "linear-system", cmd_mm_verify_linear, "minor system for the slack sums")
    q.add_argument("--input", required=True)
    q.add_argument("--class", dest="cls", required=True)
    for name, func in (("axioms", cmd_mm_verify_axioms), ("tight", cmd_mm_verify_tight)):
        leaf(mv, name, func, f"{name} check").add_argument("--input", required=True)

    # dm
    dm = ns.add_parser("dm", help="delta-matroids").add_subparsers(dest="cmd", required=True)
    leaf(dm, "validate", cmd_dm_validate, "symmetric exchange and basic properties") \
        .add_argument("--input", required=True)
    for name, func in (("twist", cmd_dm_twist), ("lc", cmd_dm_lc)):
        q = leaf(dm, name, func, f"{name} by a set")
        q.add_argument("--input", required=True)
        q.add_argument("--set", default="", help="comma-separated ground elements")
    q = leaf(dm, "minor", cmd_dm_minor, "deletion, contraction or (D+e)/e")
    q.add_argument("--input", required=True)
    q.add_argument("--op", choices=("delete", "contract", "lc-contract"), required=True)
    q.add_argument("--elem", required=True)
    q = leaf(dm, "two-sum", cmd_dm_two_sum, "2-sum of delta-matroids")
    for side in ("left", "right"):
        q.add_argument(f"--{side}", required=True)
        q.add_argument(f"--{side}-elem", required=True)
    q.add_argument("--mode", choices=("even", "vfsafe"), default="even")
    q = leaf(dm, "tensor", cmd_dm_tensor, "tensor product of delta-matroids")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--elem", required=True)
    q.add_argument("--mode", choices=("even", "vfsafe"), default="even")
    q = leaf(dm, "to-z", cmd_dm_to_z, "the 2- or 3-matroid of a delta-matroid")
    q.add_argument("--input", required=True)
    q.add_argument("--q", type=int, choices=(2, 3), default=2)
    q = leaf(dm, "q", cmd_dm_q, "transition polynomial")
    q.add_argument("--input", required=True)
    q.add_argument("--form", choices=("multi", "two"), default="two")
    q = leaf(dm, "tutte", cmd_dm_tutte, "Tutte polynomial R (or T for matroids)")
    q.add_argument("--input", required=True)
    q.add_argument("--kind", choices=("R", "T"), default="R")
    q.add_argument("--shifted", action="store_true", help="R(D; x+1, y+1) in s, u with x=s^2, y=u^2")
    q = leaf(dm, "verify", cmd_dm_verify, "tensor identities for delta-matroids")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--elem", required=True)
    q.add_argument("--theorem", choices=("multi", "even", "R", "brylawski", "all"), default="all")

    # rg
    rg = ns.add_parser("rg", help="ribbon graphs").add_subparsers(dest="cmd", required=True)
    for which in ("b", "k", "e"):
        q = leaf(rg, which, cmd_rg_count, f"the count {which}(G)")
        q.add_argument("--input", required=True)
        q.set_defaults(which=which)
    q = leaf(rg, "q", cmd_rg_q, "transition polynomial in u, v, w and t")
    q.add_argument("--input", required=True)
    q.add_argument("--t-value")
    for op in ("delete", "contract", "petrial"):
        q = leaf(rg, op, cmd_rg_local, f"{op} an edge")
        q.add_argument("--input", required=True)
        q.add_argument("--edge", required=True)
        q.set_defaults(op=op)
        if op == "petrial":
            q.add_argument("--slot", type=int, choices=(1, 2), default=1)
    leaf(rg, "to-z", cmd_rg_to_z, "the 3-matroid Z(G)").add_argument("--input", required=True)
    q = leaf(rg, "two-sum", cmd_rg_two_sum, "2-sum along distinguished arrows")
    for side in ("left", "right"):
        q.add_argument(f"--{side}", required=True)
        q.add_argument(f"--{side}-edge", required=True)
    for name, func in (("tensor", cmd_rg_tensor), ("verify", cmd_rg_verify)):
        q = leaf(rg, name, func, f"{name} along an edge of the right graph")
        q.add_argument("--left", required=True)
        q.add_argument("--right", required=True)
        q.add_argument("--edge", required=True)

    # verify all
    va = ns.add_parser("verify", help="suites").add_subparsers(dest="cmd", required=True)
    q = leaf(va, "all", cmd_verify_all, "fixture checks plus seeded random checks")
    q.add_argument("--fixtures", required=True)
    q.add_argument("--count", type=int, default=20, help="number of random tensor pairs")
    return p


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", 0)
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except (MalformedInput, MissingAssignment, DivisionByZero) as err:
        print(f"mmtensor: malformed input: {err}", file=sys.stderr)
        return EXIT_MALFORMED
    except HypothesisError as err:
        print(f"mmtensor: hypothesis violated: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
