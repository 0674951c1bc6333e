"""2-sums and tensor products of tight multimatroids.

Copies of the right-hand factor in a tensor product get element ids
``<elem>@<left class>`` and class names ``<class>@<left class>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (MalformedInput, NotQMatroid, NotTight, SingularClass, SizeMismatch,
                     UnorderedClass)
from .multimatroid import Carrier, Multimatroid, SkewClass


def copy_name(name: str, alpha: str) -> str:
    return f"{name}@{alpha}"


@dataclass(frozen=True)
class SumSpec:
    left: Multimatroid
    left_class: str
    right: Multimatroid
    right_class: str


def _check_class(Z: Multimatroid, name: str, side: str) -> SkewClass:
    cls = Z.carrier.resolve_class(name)
    if not cls.ordered:
        raise UnorderedClass(f"{side} class {cls.name!r} is not ordered")
    if Z.is_singular(cls.name):
        raise SingularClass(f"{side} class {cls.name!r} contains a singular element")
    return cls


def check_sum_spec(spec: SumSpec, *, check_tight: bool = True) -> tuple:
    if check_tight:
        if not spec.left.is_tight():
            raise NotTight("left multimatroid is not tight")
        if not spec.right.is_tight():
            raise NotTight("right multimatroid is not tight")
    f = _check_class(spec.left, spec.left_class, "left")
    e = _check_class(spec.right, spec.right_class, "right")
    if len(f) != len(e):
        raise SizeMismatch(f"classes {f.name!r} and {e.name!r} have sizes {len(f)} and {len(e)}")
    rest1 = [c for c in spec.left.carrier.classes if c is not f]
    rest2 = [c for c in spec.right.carrier.classes if c is not e]
    ids1 = {x for c in rest1 for x in c.elems} | {c.name for c in rest1}
    ids2 = {x for c in rest2 for x in c.elems} | {c.name for c in rest2}
    clash = ids1 & ids2
    if clash:
        raise MalformedInput(f"carriers overlap outside the summed classes: {sorted(clash)}")
    return f, e


def _independent_slack(Z: Multimatroid, cls: SkewClass) -> dict:
    """slack position -> independent near-transversal masks avoiding ``cls``."""
    ci = Z.carrier.classes.index(cls)
    slack = Z.slack_index_map(ci)
    masks = list(slack)
    out: dict = {}
    for m, n in zip(masks, Z.nullity_masks(masks)):
        if n == 0:
            out.setdefault(slack[m], []).append(m)
    return out


def two_sum(spec: SumSpec, *, check: bool = True) -> Multimatroid:
    """``Z1 ⊕_{f=e} Z2``; bases pair independent near-transversals with distinct slack."""
    f, e = check_sum_spec(spec, check_tight=check)
    Z1, Z2 = spec.left, spec.right
    classes = [c for c in Z1.carrier.classes if c is not f] + \
              [c for c in Z2.carrier.classes if c is not e]
    carrier = Carrier(classes)
    left = _independent_slack(Z1, f)
    right = _independent_slack(Z2, e)
    c1, c2 = Z1.carrier, Z2.carrier
    bases = []
    for i, ms1 in left.items():
        sets1 = [c1.elems_of(m) for m in ms1]
        for j, ms2 in right.items():
            if i == j:
                continue
            sets2 = [c2.elems_of(m) for m in ms2]
            bases.extend(a | b for a in sets1 for b in sets2)
    return Multimatroid(carrier, bases)


def two_sum_rank_check(spec: SumSpec, T1: Iterable[str], T2: Iterable[str]) -> int:
    """Predicted composite rank of ``T1 ∪ T2`` from the two summands."""
    f, e = check_sum_spec(spec)
    Z1, Z2 = spec.left, spec.right
    T1, T2 = frozenset(T1), frozenset(T2)
    if T1 & set(f.elems) or T2 & set(e.elems):
        raise MalformedInput("T1 must avoid the left class and T2 the right class")
    i = f.position(Z1.slack(T1))
    j = e.position(Z2.slack(T2))
    r = Z1.rank(T1) + Z2.rank(T2)
    return r - 1 if i == j else r


@dataclass
class TensorNaming:
    """(i, j, k) -> composite element id, all indices 1-based.

    ``i`` indexes the left classes, ``j`` the right classes other than the
    distinguished one and ``k`` the position within that class.
    """
    left_classes: tuple
    right_classes: tuple
    distinguished: str
    ids: dict = field(default_factory=dict)

    @classmethod
    def build(cls, Z1: Multimatroid, Z2: Multimatroid, e: SkewClass) -> "TensorNaming":
        lefts = tuple(c.name for c in Z1.carrier.classes)
        rights = tuple(c for c in Z2.carrier.classes if c is not e)
        ids = {}
        for i, alpha in enumerate(lefts, 1):
            for j, beta in enumerate(rights, 1):
                for k, x in enumerate(beta.elems, 1):
                    ids[(i, j, k)] = copy_name(x, alpha)
        return cls(lefts, tuple(c.name for c in rights), e.name, ids)

    def __call__(self, i: int, j: int, k: int) -> str:
        return self.ids[(i, j, k)]

    def elements(self) -> set:
        return set(self.ids.values())


def _copy_for(Z2: Multimatroid, alpha: str) -> Multimatroid:
    emap = {x: copy_name(x, alpha) for x in Z2.carrier.elems}
    cmap = {c.name: copy_name(c.name, alpha) for c in Z2.carrier.classes}
    return Z2.relabel(emap, cmap)


def check_tensor_hypotheses(Z1: Multimatroid, Z2: Multimatroid, e_name: str) -> SkewClass:
    if not Z1.is_tight():
        raise NotTight("left multimatroid is not tight")
    if not Z2.is_tight():
        raise NotTight("right multimatroid is not tight")
    e = _check_class(Z2, e_name, "distinguished")
    q = Z1.carrier.q()
    if q is None:
        raise NotQMatroid("left multimatroid has classes of different sizes")
    if q != len(e):
        raise SizeMismatch(f"left classes have size {q}, {e.name!r} has size {len(e)}")
    for c in Z1.carrier.classes:
        _check_class(Z1, c.name, "left")
    return e


def tensor(Z1: Multimatroid, Z2: Multimatroid, e_name: str,
           order: Sequence[str] | None = None) -> tuple:
    """``Z1 ⊗_e Z2`` as an iterated 2-sum, one fresh copy of ``Z2`` per left class.

    ``order`` permutes the sequence in which the 2-sums are taken; the
    result does not depend on it.
    """
    e = check_tensor_hypotheses(Z1, Z2, e_name)
    naming = TensorNaming.build(Z1, Z2, e)
    current = Z1
    for alpha in order or naming.left_classes:
        cp = _copy_for(Z2, alpha)
        current = two_sum(SumSpec(current, alpha, cp, copy_name(e.name, alpha)), check=False)
    return current, naming


def compose_parts(Z0: Multimatroid, parts: Sequence[tuple]) -> Multimatroid:
    """Iterated 2-sum of ``Z0`` with ``(x_class, Zi, e_class)`` parts."""
    Z = Z0
    for x, Zi, e in parts:
        Z = two_sum(SumSpec(Z, x, Zi, e), check=False)
    return Z


def nullity_decomposition_check(Z0: Multimatroid, parts: Sequence[tuple], T: Iterable[str],
                                composite: Multimatroid | None = None) -> bool:
    """Check ``n_Z(T) = n_{Z0}(T') + Σ n_{Zi}(T ∩ U_i)`` for one transversal ``T``.

    ``T'`` keeps ``T ∩ U_0`` and adds, for each summed class ``x``, the
    element of ``x`` at the slack position of ``T ∩ U_i``.
    """
    Z = composite if composite is not None else compose_parts(Z0, parts)
    T = frozenset(T)
    total = 0
    t_prime = set(T & set(Z0.carrier.elems))
    for x, Zi, e in parts:
        xcls = Z0.carrier.resolve_class(x)
        ecls = Zi.carrier.resolve_class(e)
        Ti = T & set(Zi.carrier.elems)
        total += Zi.nullity(Ti)
        t_prime.add(xcls.elems[ecls.position(Zi.slack(Ti)) - 1])
    return Z.nullity(T) == Z0.nullity(t_prime) + total
