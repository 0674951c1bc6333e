"""Weighted transition polynomial of a multimatroid and the tensor identity.

``Q(Z; x, t)`` sums ``t^{n(T)} x_T`` over the transversals ``T``.  Element
weights default to the formal variables ``x.<elem>``.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .algebra import T_VAR, MultiPoly, first_difference, rename_vars
from .compose import TensorNaming, check_tensor_hypotheses, copy_name, tensor
from .errors import NotTight, SingularClass
from .multimatroid import Multimatroid

T = MultiPoly.var(T_VAR)


def weight_var(elem: str) -> str:
    return f"x.{elem}"


def _weights(elems: Iterable[str], w: Mapping[str, object] | None) -> dict:
    w = w or {}
    return {e: MultiPoly.coerce(w[e]) if e in w else MultiPoly.var(weight_var(e)) for e in elems}


def _weighted_sum(Z: Multimatroid, masks: list, weights: dict) -> MultiPoly:
    c = Z.carrier
    by_bit = [weights[e] for e in c.elems]
    acc: dict = {}
    for m, n in zip(masks, Z.nullity_masks(masks)):
        p = MultiPoly.term(1, {T_VAR: n}) if n else MultiPoly.const(1)
        while m:
            low = m & -m
            p = p * by_bit[low.bit_length() - 1]
            m ^= low
            if p.is_zero():
                break
        for mono, coeff in p.items():
            acc[mono] = acc.get(mono, 0) + coeff
    return MultiPoly(acc)


def q_poly(Z: Multimatroid, w: Mapping[str, object] | None = None,
           t_value=None) -> MultiPoly:
    """``Q(Z; x, t)``; ``t_value`` substitutes a number (or polynomial) for ``t``."""
    weights = _weights(Z.carrier.elems, w)
    q = _weighted_sum(Z, Z.carrier.transversal_masks(), weights)
    if t_value is not None:
        q = q.subst({T_VAR: t_value})
    return q


def slack_sums(Z: Multimatroid, e_name: str, w: Mapping[str, object] | None = None,
               *, check: bool = True) -> list:
    """``[y_1, …, y_q]``: near-transversals avoiding the class, grouped by slack position."""
    cls = Z.carrier.resolve_class(e_name)
    if check:
        if not Z.is_tight():
            raise NotTight("slack sums need a tight multimatroid")
        if Z.is_singular(cls.name):
            raise SingularClass(f"class {cls.name!r} contains a singular element")
    ci = Z.carrier.classes.index(cls)
    slack = Z.slack_index_map(ci)
    weights = _weights(Z.carrier.elems, w)
    groups: list = [[] for _ in cls.elems]
    for m, j in slack.items():
        groups[j - 1].append(m)
    return [_weighted_sum(Z, g, weights) for g in groups]


def linear_system_check(Z: Multimatroid, e_name: str,
                        w: Mapping[str, object] | None = None) -> bool:
    """``Q(Z|e_i) = t·y_i + Σ_{j≠i} y_j`` for every element ``e_i`` of the class."""
    cls = Z.carrier.resolve_class(e_name)
    ys = slack_sums(Z, cls.name, w)
    total = sum(ys[1:], ys[0])
    for i, ei in enumerate(cls.elems):
        rhs = total + (T - 1) * ys[i]
        if q_poly(Z.minor(ei), w) != rhs:
            return False
    return True


def phi_map(Z1: Multimatroid, Z2: Multimatroid, e_name: str,
            naming: TensorNaming | None = None) -> dict:
    """``x_{α_ij} ↦ y_j`` with every ``x_β`` renamed to the copy for ``α_i``."""
    cls = Z2.carrier.resolve_class(e_name)
    if naming is None:
        naming = TensorNaming.build(Z1, Z2, cls)
    ys = slack_sums(Z2, cls.name, check=False)
    others = [x for c in Z2.carrier.classes if c is not cls for x in c.elems]
    phi = {}
    for alpha in naming.left_classes:
        ren = {weight_var(b): weight_var(copy_name(b, alpha)) for b in others}
        acls = Z1.carrier.get_class(alpha)
        for j, a in enumerate(acls.elems):
            phi[weight_var(a)] = rename_vars(ys[j], ren)
    return phi


def brylawski_rhs(Z1: Multimatroid, Z2: Multimatroid, e_name: str,
                  naming: TensorNaming | None = None, *, check: bool = True) -> MultiPoly:
    """``φ(Q(Z1))``, the predicted transition polynomial of ``Z1 ⊗_e Z2``."""
    if check:
        check_tensor_hypotheses(Z1, Z2, e_name)
    return q_poly(Z1).subst(phi_map(Z1, Z2, e_name, naming))


def brylawski_check(Z1: Multimatroid, Z2: Multimatroid, e_name: str) -> tuple:
    """Compare ``Q(Z1 ⊗_e Z2)`` by enumeration with ``φ(Q(Z1))``.

    Returns ``(ok, lhs, rhs, first_difference)``.
    """
    Z, naming = tensor(Z1, Z2, e_name)
    lhs = q_poly(Z)
    rhs = brylawski_rhs(Z1, Z2, e_name, naming, check=False)
    diff = first_difference(lhs, rhs)
    return diff is None, lhs, rhs, diff
