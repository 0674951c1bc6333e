"""Multimatroids over a carrier, with their elementary minors.

A multimatroid is held either by its basis list, with
``r(S) = max |B ∩ S|`` over the bases, or as a derived view of a parent
multimatroid (an elementary minor or a restriction).  Internally every
subtransversal is a bitmask over the carrier's elements, in carrier order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .errors import (MalformedInput, NotASubtransversal, NotNearTransversal,
                     NotTight, UnknownElement)


@dataclass(frozen=True)
class SkewClass:
    name: str
    elems: tuple
    ordered: bool = False

    def __post_init__(self):
        object.__setattr__(self, "elems", tuple(self.elems))
        if not self.elems:
            raise MalformedInput(f"skew class {self.name!r} is empty")
        if len(set(self.elems)) != len(self.elems):
            raise MalformedInput(f"skew class {self.name!r} repeats an element")

    def __len__(self):
        return len(self.elems)

    def position(self, elem: str) -> int:
        """1-based index of ``elem`` in the class order."""
        return self.elems.index(elem) + 1


class Carrier:
    """An ordered list of skew classes with globally unique element ids."""

    def __init__(self, classes: Iterable[SkewClass]):
        self.classes: tuple = tuple(classes)
        self.elems: tuple = tuple(e for c in self.classes for e in c.elems)
        if len(set(self.elems)) != len(self.elems):
            raise MalformedInput("element ids must be unique across skew classes")
        names = [c.name for c in self.classes]
        if len(set(names)) != len(names):
            raise MalformedInput("skew class names must be unique")
        self.bit = {e: i for i, e in enumerate(self.elems)}
        self.class_pos = {}
        self.class_masks = []
        for ci, c in enumerate(self.classes):
            m = 0
            for e in c.elems:
                self.class_pos[e] = ci
                m |= 1 << self.bit[e]
            self.class_masks.append(m)
        self._by_name = {c.name: c for c in self.classes}

    @property
    def nbits(self) -> int:
        return len(self.elems)

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"Carrier({[c.name for c in self.classes]})"

    def get_class(self, name: str) -> SkewClass:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownElement(f"no skew class named {name!r}") from None

    def class_index(self, name: str) -> int:
        return self.classes.index(self.get_class(name))

    def class_of(self, elem: str) -> SkewClass:
        if elem not in self.class_pos:
            raise UnknownElement(elem)
        return self.classes[self.class_pos[elem]]

    def resolve_class(self, x: str) -> SkewClass:
        """Accept either a class name or one of its elements."""
        if x in self._by_name:
            return self._by_name[x]
        return self.class_of(x)

    def q(self):
        sizes = {len(c) for c in self.classes}
        return sizes.pop() if len(sizes) == 1 else None

    def mask(self, elems: Iterable[str]) -> int:
        m = 0
        for e in elems:
            if e not in self.bit:
                raise UnknownElement(e)
            m |= 1 << self.bit[e]
        return m

    def elems_of(self, mask: int) -> frozenset:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.elems[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)

    def is_subtransversal(self, mask: int) -> bool:
        return all((mask & cm).bit_count() <= 1 for cm in self.class_masks)

    def partition(self) -> frozenset:
        return frozenset(frozenset(c.elems) for c in self.classes)

    # enumeration ------------------------------------------------------
    def _class_bits(self, ci: int) -> list:
        return [1 << self.bit[e] for e in self.classes[ci].elems]

    def transversal_masks(self, skip: Sequence[int] = ()) -> list:
        choices = [self._class_bits(ci) for ci in range(len(self.classes)) if ci not in skip]
        return [sum(p) for p in itertools.product(*choices)]

    def near_transversal_masks(self, missing: int | None = None) -> list:
        if missing is not None:
            return self.transversal_masks(skip=(missing,))
        out = []
        for ci in range(len(self.classes)):
            out.extend(self.transversal_masks(skip=(ci,)))
        return out

    def subtransversal_masks(self) -> list:
        choices = [[0] + self._class_bits(ci) for ci in range(len(self.classes))]
        return [sum(p) for p in itertools.product(*choices)]


def _as_class(c) -> SkewClass:
    if isinstance(c, SkewClass):
        return c
    if isinstance(c, Mapping):
        return SkewClass(c["name"], tuple(c["elems"]), bool(c.get("ordered", False)))
    name, elems, *rest = c
    return SkewClass(name, tuple(elems), bool(rest[0]) if rest else False)


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


class Multimatroid:
    """A multimatroid on a :class:`Carrier`.

    Build one from a basis list with :meth:`from_bases`; :meth:`minor` and
    :meth:`restrict` return derived views whose rank is computed through the
    parent.
    """

    def __init__(self, carrier: Carrier, bases: Iterable[Iterable[str]] | None = None, *,
                 parent: "Multimatroid | None" = None, pin: str | None = None):
        self.carrier = carrier
        self._cache: dict = {}
        self._parent = parent
        self._pin = pin
        self._bases = None
        if parent is None:
            masks = set()
            for b in bases or ():
                m = carrier.mask(b)
                if not carrier.is_subtransversal(m):
                    raise NotASubtransversal(f"basis {sorted(b)} is not a subtransversal")
                masks.add(m)
            self._basis_masks = sorted(masks)
        else:
            self._basis_masks = None
            self._pin_rank = parent.rank([pin]) if pin is not None else 0
            self._pin_mask = parent.carrier.mask([pin]) if pin is not None else 0
            self._to_parent = [1 << parent.carrier.bit[e] for e in carrier.elems]

    @classmethod
    def from_bases(cls, classes, bases) -> "Multimatroid":
        return cls(Carrier(_as_class(c) for c in classes), bases)

    @property
    def is_derived(self) -> bool:
        return self._parent is not None

    def __repr__(self):
        kind = "derived" if self.is_derived else f"{len(self._basis_masks)} bases"
        return f"<Multimatroid {len(self.carrier)} classes, {kind}>"

    # rank ---------------------------------------------------------------
    def _translate(self, mask: int) -> int:
        out = self._pin_mask
        tp = self._to_parent
        while mask:
            low = mask & -mask
            out |= tp[low.bit_length() - 1]
            mask ^= low
        return out

    def rank_masks(self, masks: Sequence[int]) -> list:
        cache = self._cache
        missing = [m for m in dict.fromkeys(masks) if m not in cache]
        if missing:
            if self._parent is None:
                vals = kernels.rank_batch(self._basis_masks, missing, self.carrier.nbits)
            else:
                vals = self._parent.rank_masks([self._translate(m) for m in missing])
                vals = [v - self._pin_rank for v in vals]
            cache.update(zip(missing, vals))
        return [cache[m] for m in masks]

    def rank_mask(self, mask: int) -> int:
        return self.rank_masks([mask])[0]

    def _checked_mask(self, S: Iterable[str]) -> int:
        m = self.carrier.mask(S)
        if not self.carrier.is_subtransversal(m):
            raise NotASubtransversal(f"{sorted(S)} meets a skew class twice")
        return m

    def rank(self, S: Iterable[str]) -> int:
        return self.rank_mask(self._checked_mask(S))

    def nullity(self, S: Iterable[str]) -> int:
        m = self._checked_mask(S)
        return m.bit_count() - self.rank_mask(m)

    def nullity_masks(self, masks: Sequence[int]) -> list:
        return [m.bit_count() - r for m, r in zip(masks, self.rank_masks(masks))]

    # bases --------------------------------------------------------------
    def basis_masks(self) -> list:
        if self._basis_masks is not None:
            return list(self._basis_masks)
        if self._bases is None:
            self._bases = self._search_bases()
        return list(self._bases)

    def _search_bases(self) -> list:
        c = self.carrier
        if self.is_nondegenerate():
            ts = c.transversal_masks()
            return sorted(m for m, n in zip(ts, self.nullity_masks(ts)) if n == 0)
        return maximal_independent_masks(self)

    @property
    def bases(self) -> frozenset:
        return frozenset(self.carrier.elems_of(m) for m in self.basis_masks())

    def materialize(self) -> "Multimatroid":
        """Basis-defined copy (same carrier, same rank function)."""
        if not self.is_derived:
            return self
        return Multimatroid(self.carrier, [self.carrier.elems_of(m) for m in self.basis_masks()])

    # derived views ------------------------------------------------------
    def minor(self, elem: str) -> "Multimatroid":
        """Elementary minor ``Z|elem``: drop the class, pin ``elem``."""
        cls = self.carrier.class_of(elem)
        sub = Carrier(c for c in self.carrier.classes if c is not cls)
        return Multimatroid(sub, parent=self, pin=elem)

    def restrict(self, elems: Iterable[str]) -> "Multimatroid":
        """``Z[A]``: classes cut down to ``A``, rank restricted."""
        keep = set(elems)
        for e in keep:
            self.carrier.class_of(e)
        classes = []
        for c in self.carrier.classes:
            sub = tuple(e for e in c.elems if e in keep)
            if sub:
                classes.append(SkewClass(c.name, sub, c.ordered))
        return Multimatroid(Carrier(classes), parent=self, pin=None)

    def relabel(self, elem_map: Mapping[str, str], class_map: Mapping[str, str] | None = None,
                ordered: Mapping[str, bool] | None = None) -> "Multimatroid":
        """Copy with renamed elements/classes (unmapped names are kept)."""
        class_map = class_map or {}
        ordered = ordered or {}
        classes = [SkewClass(class_map.get(c.name, c.name),
                             tuple(elem_map.get(e, e) for e in c.elems),
                             ordered.get(c.name, c.ordered))
                   for c in self.carrier.classes]
        bases = [[elem_map.get(e, e) for e in b] for b in self.bases]
        return Multimatroid(Carrier(classes), bases)

    # enumeration ----------------------------------------------------------
    def transversals(self) -> list:
        return [self.carrier.elems_of(m) for m in self.carrier.transversal_masks()]

    def near_transversals(self, missing: str | None = None) -> list:
        ci = None if missing is None else self.carrier.class_index(
            self.carrier.resolve_class(missing).name)
        return [self.carrier.elems_of(m) for m in self.carrier.near_transversal_masks(ci)]

    def subtransversals(self) -> list:
        return [self.carrier.elems_of(m) for m in self.carrier.subtransversal_masks()]

    # structure ------------------------------------------------------------
    def is_nondegenerate(self) -> bool:
        return all(len(c) >= 2 for c in self.carrier.classes)

    def is_singular(self, x: str) -> bool:
        """Singular element (rank-0 singleton) or class containing one."""
        c = self.carrier
        if x in c.bit:
            return self.rank_mask(1 << c.bit[x]) == 0
        cls = c.get_class(x)
        return any(self.rank_mask(1 << c.bit[e]) == 0 for e in cls.elems)

    def _slack_mask(self, nmask: int, ci: int) -> int:
        c = self.carrier
        ext = [nmask | (1 << c.bit[e]) for e in c.classes[ci].elems]
        ranks = self.rank_masks([nmask] + ext)
        hits = [m for m, r in zip(ext, ranks[1:]) if r == ranks[0]]
        if len(hits) != 1:
            raise NotTight(f"{sorted(c.elems_of(nmask))} has {len(hits)} rank-preserving "
                           "extensions")
        return hits[0] ^ nmask

    def slack(self, N: Iterable[str]) -> str:
        """The unique element of the missing class that keeps the rank of ``N``."""
        c = self.carrier
        m = self._checked_mask(N)
        missing = [ci for ci, cm in enumerate(c.class_masks) if not m & cm]
        if len(missing) != 1:
            raise NotNearTransversal(f"{sorted(N)} misses {len(missing)} classes")
        bit = self._slack_mask(m, missing[0])
        return c.elems[bit.bit_length() - 1]

    def slack_index_map(self, ci: int) -> dict:
        """near-transversal mask avoiding class ``ci`` -> 1-based slack position."""
        c = self.carrier
        cls = c.classes[ci]
        pos = {1 << c.bit[e]: k + 1 for k, e in enumerate(cls.elems)}
        masks = c.near_transversal_masks(ci)
        ext_masks = [n | b for n in masks for b in pos]
        self.rank_masks(masks + ext_masks)
        return {n: pos[self._slack_mask(n, ci)] for n in masks}

    def is_tight(self) -> bool:
        if not self.is_nondegenerate():
            return False
        c = self.carrier
        for ci in range(len(c.classes)):
            bits = [1 << c.bit[e] for e in c.classes[ci].elems]
            masks = c.near_transversal_masks(ci)
            ranks = self.rank_masks(masks)
            ext = self.rank_masks([n | b for n in masks for b in bits])
            k = len(bits)
            for i, r in enumerate(ranks):
                if sum(1 for x in ext[i * k:(i + 1) * k] if x == r) != 1:
                    return False
        return True

    def check_axioms(self) -> AxiomReport:
        return check_axioms(self)

    def equals(self, other: "Multimatroid") -> bool:
        """Same skew-class partition and the same rank on every subtransversal."""
        if self.carrier.partition() != other.carrier.partition():
            return False
        mine = self.carrier.subtransversal_masks()
        theirs = [other.carrier.mask(self.carrier.elems_of(m)) for m in mine]
        return self.rank_masks(mine) == other.rank_masks(theirs)

    __eq__ = equals
    __hash__ = None


def maximal_independent_masks(Z: Multimatroid) -> list:
    c = Z.carrier
    subs = c.subtransversal_masks()
    indep = {m for m, n in zip(subs, Z.nullity_masks(subs)) if n == 0}
    out = []
    for m in indep:
        grow = False
        for ci, cm in enumerate(c.class_masks):
            if m & cm:
                continue
            if any((m | (1 << c.bit[e])) in indep for e in c.classes[ci].elems):
                grow = True
                break
        if not grow:
            out.append(m)
    return sorted(out)


def check_axioms(Z: Multimatroid) -> AxiomReport:
    """Exhaustive check of (R1) and (R2) over all subtransversals."""
    c = Z.carrier
    subs = c.subtransversal_masks()
    r = dict(zip(subs, Z.rank_masks(subs)))
    report = AxiomReport()
    bad = report.violations
    fmt = lambda m: sorted(c.elems_of(m))  # noqa: E731
    if r[0] != 0:
        bad.append(f"R1: r(empty) = {r[0]}")
    elem_bits = [[1 << c.bit[e] for e in cls.elems] for cls in c.classes]
    for S in subs:
        rs = r[S]
        free = [ci for ci, cm in enumerate(c.class_masks) if not S & cm]
        for ci in free:
            for b in elem_bits[ci]:
                d = r[S | b] - rs
                if d < 0 or d > 1:
                    bad.append(f"R1: r jumps by {d} adding {fmt(b)} to {fmt(S)}")
        for i, ci in enumerate(free):
            for cj in free[i + 1:]:
                for a in elem_bits[ci]:
                    for b in elem_bits[cj]:
                        if r[S | a] + r[S | b] < r[S | a | b] + rs:
                            bad.append(f"R1: submodularity fails at {fmt(S)} with "
                                       f"{fmt(a)}, {fmt(b)}")
        for ci in free:
            bits = elem_bits[ci]
            for i, a in enumerate(bits):
                for b in bits[i + 1:]:
                    if r[S | a] + r[S | b] - 2 * rs < 1:
                        bad.append(f"R2: skew pair {fmt(a | b)} over {fmt(S)}")
    return report


# functional surface ---------------------------------------------------------

def mm_rank(Z: Multimatroid, S: Iterable[str]) -> int:
    return Z.rank(S)


def mm_nullity(Z: Multimatroid, S: Iterable[str]) -> int:
    return Z.nullity(S)


def mm_check_axioms(Z: Multimatroid) -> AxiomReport:
    return check_axioms(Z)


def mm_is_tight(Z: Multimatroid) -> bool:
    return Z.is_tight()


def mm_slack(Z: Multimatroid, N: Iterable[str]) -> str:
    return Z.slack(N)


def mm_minor(Z: Multimatroid, elem: str) -> Multimatroid:
    return Z.minor(elem)


def mm_singular(Z: Multimatroid, x: str) -> bool:
    return Z.is_singular(x)


def mm_enumerate(Z: Multimatroid, kind: str = "transversal") -> list:
    if kind == "transversal":
        return Z.transversals()
    if kind == "near":
        return Z.near_transversals()
    if kind == "sub":
        return Z.subtransversals()
    raise ValueError(f"unknown enumeration kind {kind!r}")


def iter_transversal_elems(Z: Multimatroid) -> Iterator[frozenset]:
    for m in Z.carrier.transversal_masks():
        yield Z.carrier.elems_of(m)
