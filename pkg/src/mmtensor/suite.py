"""Checks behind ``mmtensor verify all``.

Golden CLI invocations come from ``manifest.json``.  Every structure file in
the fixture directory is then checked for its structural invariants, and a
batch of seeded random tensor pairs is run through the tensor identity.
"""
from __future__ import annotations

import contextlib
import io
import random
from pathlib import Path

from .algebra import T_VAR, MultiPoly, rename_vars
from .deltamatroid import (dm_contract, dm_d, dm_delete, dm_is_coloop, dm_is_even, dm_is_loop,
                           dm_is_vf_safe, dm_lc_contract, dm_to_z2, dm_to_z3, omega)
from .errors import HypothesisError
from .gen import random_tensor_pair
from .ribbon import (elem, rg_contract, rg_delete, rg_k, rg_petrial, rg_q, rg_tensor_report,
                     rg_to_z, uvw_names)
from .structfile import load_dm, load_mm, load_rg, mm_to_json, read_json
from .transition import brylawski_check, linear_system_check, q_poly


def _golden(fixtures: Path, entry: dict) -> tuple:
    from .cli import main
    args = [a.replace("{fixtures}", str(fixtures)) for a in entry["args"]]
    buf = io.StringIO()
    with contextlib.redirect_stderr(io.StringIO()):
        code = main(args, stdout=buf)
    got = buf.getvalue().rstrip("\n")
    ok = code == entry.get("exit", 0)
    if "expected" in entry:
        ok = ok and got == entry["expected"]
    return ok, {"args": entry["args"], "exit": code, "output": got}


def _mm_checks(Z) -> list:
    out = [("axioms", Z.check_axioms().ok)]
    if Z.is_nondegenerate() and Z.is_tight():
        for c in Z.carrier.classes:
            if c.ordered and not Z.is_singular(c.name):
                out.append((f"linear system {c.name}", linear_system_check(Z, c.name)))
    return out


def _rg_checks(G) -> list:
    Z = rg_to_z(G)
    uvw = uvw_names(Z.carrier.elems)
    out = [("tight", Z.is_tight()),
           ("q = t^k Q(Z)", rg_q(G) == MultiPoly.var(T_VAR) ** rg_k(G) * rename_vars(q_poly(Z), uvw))]
    for e in G.edges:
        ok = (rg_to_z(rg_contract(G, e)) == Z.minor(elem(e, "dot")) and
              rg_to_z(rg_delete(G, e)) == Z.minor(elem(e, "bar")) and
              rg_to_z(rg_contract(rg_petrial(G, e), e)) == Z.minor(elem(e, "hat")))
        out.append((f"minors of {e}", ok))
    return out


def _dm_checks(D) -> list:
    Z2 = dm_to_z2(D)
    subsets = [D.labels(m) for m in range(1 << D.n)]
    out = [("d = nullity", all(dm_d(D, X) == Z2.nullity(omega(D, X)) for X in subsets)),
           ("tight iff even", Z2.is_tight() == dm_is_even(D))]
    if dm_is_vf_safe(D):
        Z3 = dm_to_z3(D)
        ok = True
        for e in D.ground:
            ok = ok and (dm_to_z3(dm_contract(D, e)) == Z3.minor(elem(e, "dot")) and
                         dm_to_z3(dm_delete(D, e)) == Z3.minor(elem(e, "bar")) and
                         dm_to_z3(dm_lc_contract(D, e)) == Z3.minor(elem(e, "hat")))
        out.append(("Z3 minors", ok))
    if dm_is_even(D):
        loops = [g for g in D.ground if dm_is_loop(D, g) or dm_is_coloop(D, g)]
        out.append(("singular = loop or coloop", loops == [g for g in D.ground if Z2.is_singular(g)]))
    return out


def run_suite(fixtures: Path, *, seed: int = 0, count: int = 20, out) -> int:
    """Run every check, report through ``out``, return the number of failures."""
    failures = 0

    def report(name, ok, ce=None):
        nonlocal failures
        failures += not ok
        out.check(name, ok, ce)

    manifest = fixtures / "manifest.json"
    if manifest.exists():
        data = read_json(manifest)
        for entry in data.get("golden", []):
            ok, ce = _golden(fixtures, entry)
            report(f"golden {entry['name']}", ok, ce)
        for entry in data.get("rg_tensor", []):
            G, H = load_rg(fixtures / entry["left"]), load_rg(fixtures / entry["right"])
            rep = rg_tensor_report(G, H, entry["edge"])
            report(f"ribbon tensor {entry['left']} x {entry['right']}", rep.ok,
                   {"details": str(rep.details)})
    for path in sorted(fixtures.glob("*.mm")):
        for name, ok in _mm_checks(load_mm(path)):
            report(f"{path.name}: {name}", ok)
    for path in sorted(fixtures.glob("*.rg")):
        for name, ok in _rg_checks(load_rg(path)):
            report(f"{path.name}: {name}", ok)
    for path in sorted(fixtures.glob("*.dm")):
        for name, ok in _dm_checks(load_dm(path)):
            report(f"{path.name}: {name}", ok)

    rng = random.Random(seed)
    for i in range(count):
        pair = random_tensor_pair(rng)
        try:
            ok, _, _, diff = brylawski_check(pair["left"], pair["right"], pair["class"])
            ok = ok and linear_system_check(pair["right"], pair["class"])
        except HypothesisError as err:
            ok, diff = False, str(err)
        ce = None
        if not ok:
            ce = {"left": mm_to_json(pair["left"]), "right": mm_to_json(pair["right"]),
                  "class": pair["class"], "first_difference": diff}
        report(f"random tensor #{i} ({pair['label']})", ok, ce)
    return failures
