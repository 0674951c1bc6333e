"""Delta-matroids, their 2- and 3-matroids, and the tensor-product identities.

Feasible sets are held as bitmasks over the ground list.  ``Z2(D)`` has a
class ``e = {e_dot < e_bar}`` per ground element and ``Z3(D)`` adds
``e_hat``; ``ω(X)`` picks ``e_dot`` for ``e ∈ X`` and ``e_bar`` otherwise.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels
from .algebra import T_VAR, MultiPoly, rename_vars
from .compose import SumSpec, copy_name, two_sum
from .errors import (HypothesisError, MalformedInput, ModeHypothesisViolated, NotVfSafe,
                     SingularElement, UnknownElement)
from .multimatroid import AxiomReport, Carrier, Multimatroid, SkewClass
from .transition import slack_sums, weight_var

DOT, BAR, HAT = "dot", "bar", "hat"


def elem_id(label: str, kind: str) -> str:
    return f"{label}_{kind}"


# set-system level helpers on masks -------------------------------------------

def _twist(fam: Iterable[int], a: int) -> frozenset:
    return frozenset(x ^ a for x in fam)


def _lc(fam: frozenset, bit: int) -> frozenset:
    return fam.symmetric_difference({x | bit for x in fam if not x & bit})


def _star_bar(fam: frozenset, bit: int) -> frozenset:
    return _lc(_twist(_lc(fam, bit), bit), bit)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


class DeltaMatroid:
    """Ground list plus a family of feasible sets (as masks)."""

    def __init__(self, ground: Sequence[str], feasible: Iterable[Iterable[str]] = (), *,
                 masks: Iterable[int] | None = None, validate: bool = True):
        self.ground = tuple(str(g) for g in ground)
        if len(set(self.ground)) != len(self.ground):
            raise MalformedInput("ground elements must be distinct")
        self.index = {g: i for i, g in enumerate(self.ground)}
        if masks is None:
            masks = [self.mask(F) for F in feasible]
        self.masks = frozenset(masks)
        full = (1 << len(self.ground)) - 1
        if any(m & ~full for m in self.masks):
            raise MalformedInput("feasible set outside the ground set")
        if validate:
            report = dm_validate(self)
            if not report.ok:
                raise MalformedInput("; ".join(report.violations[:3]))

    @classmethod
    def from_masks(cls, ground, masks, validate: bool = True) -> "DeltaMatroid":
        return cls(ground, masks=masks, validate=validate)

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask(self, A: Iterable[str]) -> int:
        m = 0
        for a in A:
            a = str(a)
            if a not in self.index:
                raise UnknownElement(a)
            m |= 1 << self.index[a]
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[b.bit_length() - 1] for b in _bits(mask))

    def bit(self, e: str) -> int:
        if e not in self.index:
            raise UnknownElement(e)
        return 1 << self.index[e]

    @property
    def feasible(self) -> frozenset:
        return frozenset(self.labels(m) for m in self.masks)

    def is_valid(self) -> bool:
        return bool(self.masks) and kernels.exchange_ok(sorted(self.masks), self.n)

    def with_masks(self, masks, validate: bool = False) -> "DeltaMatroid":
        return DeltaMatroid(self.ground, masks=masks, validate=validate)

    def relabel(self, mapping: Mapping[str, str]) -> "DeltaMatroid":
        return DeltaMatroid([mapping.get(g, g) for g in self.ground], masks=self.masks,
                            validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaMatroid):
            return NotImplemented
        return set(self.ground) == set(other.ground) and self.feasible == other.feasible

    def __hash__(self):
        return hash((frozenset(self.ground), self.feasible))

    def __repr__(self):
        fs = sorted(sorted(F) for F in self.feasible)
        return f"DeltaMatroid({list(self.ground)}, {fs})"


# validation and basic predicates ---------------------------------------------

def dm_validate(D: DeltaMatroid) -> AxiomReport:
    report = AxiomReport()
    if not D.masks:
        report.violations.append("no feasible sets")
        return report
    if kernels.exchange_ok(sorted(D.masks), D.n):
        return report
    fam = D.masks
    for x in sorted(fam):
        for y in sorted(fam):
            d = x ^ y
            for u in _bits(d):
                if not any((x ^ u ^ v if v != u else x ^ u) in fam for v in _bits(d)):
                    report.violations.append(
                        f"exchange fails for X={sorted(D.labels(x))}, Y={sorted(D.labels(y))}, "
                        f"u={D.ground[u.bit_length() - 1]}")
                    return report
    return report


def dm_is_even(D: DeltaMatroid) -> bool:
    return len({m.bit_count() % 2 for m in D.masks}) == 1


def dm_is_matroid(D: DeltaMatroid) -> bool:
    return len({m.bit_count() for m in D.masks}) == 1


def dm_is_loop(D: DeltaMatroid, e: str) -> bool:
    b = D.bit(e)
    return all(not m & b for m in D.masks)


def dm_is_coloop(D: DeltaMatroid, e: str) -> bool:
    b = D.bit(e)
    return all(m & b for m in D.masks)


def dm_is_singular(D: DeltaMatroid, e: str) -> bool:
    b = D.bit(e)
    return dm_is_loop(D, e) or dm_is_coloop(D, e) or all((m ^ b) in D.masks for m in D.masks)


def dm_singular_elements(D: DeltaMatroid) -> list:
    return [g for g in D.ground if dm_is_singular(D, g)]


# twists, loop complements -----------------------------------------------------

def dm_twist(D: DeltaMatroid, A: Iterable[str]) -> DeltaMatroid:
    return D.with_masks(_twist(D.masks, D.mask(A)))


def dm_loop_complement(D: DeltaMatroid, A: Iterable[str]) -> tuple:
    """``(D + A, is_delta_matroid)``; the set system may fail exchange."""
    fam = D.masks
    for b in _bits(D.mask(A)):
        fam = _lc(fam, b)
    out = D.with_masks(fam)
    return out, out.is_valid()


def dm_star_bar(D: DeltaMatroid, e: str) -> DeltaMatroid:
    """``D ∗̄ e = D + e ∗ e + e``."""
    b = D.bit(e)
    mid = _lc(D.masks, b)
    if not (mid and kernels.exchange_ok(sorted(mid), D.n)):
        raise NotVfSafe(f"D + {e} is not a delta-matroid")
    out = D.with_masks(_lc(_twist(mid, b), b))
    if not out.is_valid():
        raise NotVfSafe(f"D ∗̄ {e} is not a delta-matroid")
    return out


def _star_bar_set(D: DeltaMatroid, zmask: int) -> frozenset:
    fam = D.masks
    for b in _bits(zmask):
        fam = _star_bar(fam, b)
    return fam


def dm_is_vf_safe(D: DeltaMatroid) -> bool:
    """Breadth-first closure under single ``∗e``/``+e`` steps; every image must be valid."""
    if not D.is_valid():
        return False
    bits = [1 << i for i in range(D.n)]
    seen = {D.masks}
    queue = deque([D.masks])
    while queue:
        fam = queue.popleft()
        for b in bits:
            for nxt in (_twist(fam, b), _lc(fam, b)):
                if nxt in seen:
                    continue
                if not (nxt and kernels.exchange_ok(sorted(nxt), D.n)):
                    return False
                seen.add(nxt)
                queue.append(nxt)
    return True


# minors ---------------------------------------------------------------------

def _drop_bit(m: int, i: int) -> int:
    low = m & ((1 << i) - 1)
    return low | ((m >> (i + 1)) << i)


def _minor(D: DeltaMatroid, e: str, keep_with: bool) -> DeltaMatroid:
    i = D.index[e]
    b = 1 << i
    ground = D.ground[:i] + D.ground[i + 1:]
    masks = [_drop_bit(m, i) for m in D.masks if bool(m & b) == keep_with]
    return DeltaMatroid(ground, masks=masks, validate=False)


def dm_delete(D: DeltaMatroid, e: str) -> DeltaMatroid:
    D.bit(e)
    return _minor(D, e, keep_with=dm_is_coloop(D, e))


def dm_contract(D: DeltaMatroid, e: str) -> DeltaMatroid:
    D.bit(e)
    return _minor(D, e, keep_with=not dm_is_loop(D, e))


def dm_delete_set(D: DeltaMatroid, A: Iterable[str]) -> DeltaMatroid:
    for a in A:
        D = dm_delete(D, a)
    return D


def dm_lc_contract(D: DeltaMatroid, e: str) -> DeltaMatroid:
    """``(D + e) / e``."""
    lc, ok = dm_loop_complement(D, [e])
    if not ok:
        raise NotVfSafe(f"D + {e} is not a delta-matroid")
    return dm_contract(lc, e)


# multimatroid correspondences ---------------------------------------------------

@dataclass
class DMIndexing:
    """ground label -> (dot id, bar id[, hat id])."""
    ids: dict = field(default_factory=dict)

    @classmethod
    def standard(cls, ground: Iterable[str], q: int = 2) -> "DMIndexing":
        kinds = (DOT, BAR, HAT)[:q]
        return cls({g: tuple(elem_id(g, k) for k in kinds) for g in ground})

    @classmethod
    def from_classes(cls, Z: Multimatroid) -> "DMIndexing":
        return cls({c.name: tuple(c.elems) for c in Z.carrier.classes})

    def omega(self, X: Iterable[str], ground: Iterable[str] | None = None) -> frozenset:
        X = set(X)
        return frozenset(ids[0] if g in X else ids[1] for g, ids in self.ids.items()
                         if ground is None or g in ground)


def _classes(D: DeltaMatroid, q: int) -> list:
    kinds = (DOT, BAR, HAT)[:q]
    return [SkewClass(g, tuple(elem_id(g, k) for k in kinds), True) for g in D.ground]


def omega(D: DeltaMatroid, X: Iterable[str]) -> frozenset:
    X = set(X)
    return frozenset(elem_id(g, DOT if g in X else BAR) for g in D.ground)


def dm_to_z2(D: DeltaMatroid) -> Multimatroid:
    bases = [omega(D, D.labels(m)) for m in D.masks]
    return Multimatroid(Carrier(_classes(D, 2)), bases)


def dm_to_z3(D: DeltaMatroid, *, check: bool = True) -> Multimatroid:
    """Tight 3-matroid with bases ``dot(X) ∪ bar(Y) ∪ hat(Z)``, ``X`` feasible in ``D ∗̄ Z``."""
    if check and not dm_is_vf_safe(D):
        raise NotVfSafe("Z3 exists only for vf-safe delta-matroids")
    bases = []
    for zmask in range(1 << D.n):
        fam = _star_bar_set(D, zmask)
        for x in fam:
            if x & zmask:
                continue
            basis = []
            for i, g in enumerate(D.ground):
                b = 1 << i
                kind = HAT if zmask & b else DOT if x & b else BAR
                basis.append(elem_id(g, kind))
            bases.append(basis)
    Z = Multimatroid(Carrier(_classes(D, 3)), bases)
    if check and not Z.is_tight():
        raise NotVfSafe("constructed 3-matroid is not tight")
    return Z


def z_to_dm(Z: Multimatroid, indexing: DMIndexing | None = None) -> DeltaMatroid:
    """Feasible sets ``{X : ω(X) is a basis}`` under the given indexing."""
    idx = indexing or DMIndexing.from_classes(Z)
    ground = list(idx.ids)
    c = Z.carrier
    masks, queries = [], []
    for bits in itertools.product((0, 1), repeat=len(ground)):
        x = sum(1 << i for i, on in enumerate(bits) if on)
        masks.append(x)
        queries.append(c.mask(idx.ids[g][0] if on else idx.ids[g][1]
                              for g, on in zip(ground, bits)))
    ranks = Z.rank_masks(queries)
    feas = [x for x, r in zip(masks, ranks) if r == len(ground)]
    return DeltaMatroid(ground, masks=feas, validate=False)


# sums and tensors --------------------------------------------------------------

def _mode_z(D: DeltaMatroid, mode: str, check: bool) -> Multimatroid:
    if mode == "even":
        return dm_to_z2(D)
    if mode == "vfsafe":
        return dm_to_z3(D, check=check)
    raise MalformedInput(f"unknown mode {mode!r}")


def _check_mode(D: DeltaMatroid, mode: str, name: str):
    if mode == "even" and not dm_is_even(D):
        raise ModeHypothesisViolated(f"{name} is not even")
    if mode == "vfsafe" and not dm_is_vf_safe(D):
        raise ModeHypothesisViolated(f"{name} is not vf-safe")


def dm_two_sum(D1: DeltaMatroid, f: str, D2: DeltaMatroid, e: str, mode: str = "even", *,
               check: bool = True) -> DeltaMatroid:
    if set(D1.ground) & set(D2.ground):
        raise MalformedInput("ground sets must be disjoint")
    if check:
        _check_mode(D1, mode, "left delta-matroid")
        _check_mode(D2, mode, "right delta-matroid")
        for D, x in ((D1, f), (D2, e)):
            if dm_is_singular(D, x):
                raise SingularElement(f"{x} is singular")
    Z = two_sum(SumSpec(_mode_z(D1, mode, False), f, _mode_z(D2, mode, False), e), check=check)
    return z_to_dm(Z)


def dm_tensor(D1: DeltaMatroid, D2: DeltaMatroid, e: str, mode: str = "even", *,
              check: bool = True) -> DeltaMatroid:
    """Iterated 2-sum of a copy ``b -> b@a`` of ``D2`` onto each element ``a`` of ``D1``."""
    D2.bit(e)
    if check:
        _check_mode(D1, mode, "left delta-matroid")
        _check_mode(D2, mode, "right delta-matroid")
        bad = dm_singular_elements(D1)
        if bad:
            raise SingularElement(f"left delta-matroid has singular elements {bad}")
        if dm_is_singular(D2, e):
            raise SingularElement(f"{e} is singular")
    current = D1
    for a in D1.ground:
        cp = D2.relabel({b: copy_name(b, a) for b in D2.ground})
        current = dm_two_sum(current, a, cp, copy_name(e, a), mode, check=False)
    return current


# distances, sigma, polynomials --------------------------------------------------

def dm_d(D: DeltaMatroid, X: Iterable[str]) -> int:
    return kernels.min_symdiff_batch(sorted(D.masks), [D.mask(X)], D.n)[0]


def _d_all(fam: Iterable[int], n: int) -> list:
    """``d(X)`` for every mask ``X`` in ``range(2**n)``."""
    return kernels.min_symdiff_batch(sorted(fam), range(1 << n), n)


def dm_rmin(D: DeltaMatroid) -> int:
    return min(m.bit_count() for m in D.masks)


def dm_rmax(D: DeltaMatroid) -> int:
    return max(m.bit_count() for m in D.masks)


def dm_sigma(D: DeltaMatroid) -> Fraction:
    return Fraction(dm_rmin(D) + dm_rmax(D), 2)


def dm_sigma_of(D: DeltaMatroid, A: Iterable[str]) -> Fraction:
    """``σ_D(A) = σ(D \\ A^c)``."""
    A = set(A)
    return dm_sigma(dm_delete_set(D, [g for g in D.ground if g not in A]))


def dm_sigma_formula(D: DeltaMatroid, A: Iterable[str]) -> Fraction:
    A = list(A)
    return Fraction(len(A) - dm_d(D, A) + dm_rmin(D), 2)


def dm_q_multi(D: DeltaMatroid, *, check: bool = True) -> MultiPoly:
    """Sum over ordered 3-partitions ``(X, Y, Z)`` of ``u_X v_Y w_Z t^{d_{D∗̄Z}(X)}``."""
    if check and not dm_is_vf_safe(D):
        raise NotVfSafe("the multivariate transition polynomial needs a vf-safe input")
    n = D.n
    acc: dict = {}
    for zmask in range(1 << n):
        rest = [1 << i for i in range(n) if not zmask & (1 << i)]
        xs = [sum(c) for k in range(len(rest) + 1) for c in itertools.combinations(rest, k)]
        ds = kernels.min_symdiff_batch(sorted(_star_bar_set(D, zmask)), xs, n)
        for x, d in zip(xs, ds):
            exps = {T_VAR: d} if d else {}
            for i, g in enumerate(D.ground):
                b = 1 << i
                exps[f"{'w' if zmask & b else 'u' if x & b else 'v'}.{g}"] = 1
            mono = MultiPoly.term(1, exps)
            for m, c in mono.items():
                acc[m] = acc.get(m, 0) + c
    return MultiPoly(acc)


def dm_q_two(D: DeltaMatroid, w="w", x="x", t=T_VAR) -> MultiPoly:
    """``Σ_A w^{|E−A|} x^{|A|} t^{d(A)}``; arguments may be variable names or polynomials."""
    w, x, t = (MultiPoly.coerce(v) for v in (w, x, t))
    counts: dict = {}
    for a, d in zip(range(1 << D.n), _d_all(D.masks, D.n)):
        key = (a.bit_count(), d)
        counts[key] = counts.get(key, 0) + 1
    out = MultiPoly.zero()
    for (k, d), c in sorted(counts.items()):
        out = out + MultiPoly.const(c) * w ** (D.n - k) * x ** k * t ** d
    return out


def _sigma2_table(D: DeltaMatroid) -> tuple:
    """``(2σ(E), [(|A|, 2σ(A)) for A])`` via ``2σ(A) = |A| − d(A) + r(D_min)``."""
    rmin = dm_rmin(D)
    rows = [(a.bit_count(), a.bit_count() - d + rmin)
            for a, d in zip(range(1 << D.n), _d_all(D.masks, D.n))]
    return rmin + dm_rmax(D), rows


def dm_tutte_R(D: DeltaMatroid, shifted: bool = False) -> MultiPoly:
    """``R(D; x, y)``; with ``shifted`` the polynomial ``R(D; x+1, y+1)`` on the half-grid."""
    s2E, rows = _sigma2_table(D)
    counts: dict = {}
    for k, s2 in rows:
        key = (s2E - s2, 2 * k - s2)
        counts[key] = counts.get(key, 0) + 1
    if shifted:
        return MultiPoly({tuple(p for p in (("x", hx), ("y", hy)) if p[1]): c
                          for (hx, hy), c in counts.items()})
    if any(hx % 2 or hy % 2 for hx, hy in counts):
        raise HypothesisError("R(D; x, y) has half-integer exponents here; use shifted=True")
    xm1, ym1 = MultiPoly.var("x") - 1, MultiPoly.var("y") - 1
    out = MultiPoly.zero()
    for (hx, hy), c in sorted(counts.items()):
        out = out + MultiPoly.const(c) * xm1 ** (hx // 2) * ym1 ** (hy // 2)
    return out


def _matroid_rank_fn(M: DeltaMatroid):
    bases = sorted(M.masks)
    return lambda masks: kernels.rank_batch(bases, masks, M.n)


def matroid_tutte_T(M: DeltaMatroid) -> MultiPoly:
    if not dm_is_matroid(M):
        raise HypothesisError("Tutte polynomial T needs a matroid")
    subsets = list(range(1 << M.n))
    ranks = _matroid_rank_fn(M)(subsets)
    rE = ranks[-1]
    counts: dict = {}
    for a, r in zip(subsets, ranks):
        key = (rE - r, a.bit_count() - r)
        counts[key] = counts.get(key, 0) + 1
    xm1, ym1 = MultiPoly.var("x") - 1, MultiPoly.var("y") - 1
    out = MultiPoly.zero()
    for (i, j), c in sorted(counts.items()):
        out = out + MultiPoly.const(c) * xm1 ** i * ym1 ** j
    return out


def sqrt_identity_check(D: DeltaMatroid) -> bool:
    """``s^{|E|−r(D_max)} u^{r(D_min)} R(D; s²+1, u²+1) = Q(D; s, u, su)`` formally."""
    s, u = MultiPoly.var("s"), MultiPoly.var("u")
    lhs = MultiPoly.term(1, {"s": D.n - dm_rmax(D), "u": dm_rmin(D)}) * \
        dm_tutte_R(D, shifted=True).subst({"x": s * s, "y": u * u})
    return lhs == dm_q_two(D, w=s, x=u, t=s * u)


# tensor-product theorems -----------------------------------------------------------

def _check_tensor_pair(D1: DeltaMatroid, D2: DeltaMatroid, e: str, mode: str):
    _check_mode(D1, mode, "left delta-matroid")
    _check_mode(D2, mode, "right delta-matroid")
    bad = dm_singular_elements(D1)
    if bad:
        raise SingularElement(f"left delta-matroid has singular elements {bad}")
    if dm_is_singular(D2, e):
        raise SingularElement(f"{e} is singular")


def _x_to_uvw(Z_elems: Iterable[str]) -> dict:
    out = {}
    for x in Z_elems:
        g, _, kind = x.rpartition("_")
        out[weight_var(x)] = f"{ {DOT: 'u', BAR: 'v', HAT: 'w'}[kind]}.{g}"
    return out


def dm_multi_pqr(D2: DeltaMatroid, e: str) -> list:
    """``[p, q, r]`` in the ``u/v/w`` variables of ``D2``, from slack sums of ``Z3(D2)``."""
    Z = dm_to_z3(D2, check=False)
    ren = _x_to_uvw(Z.carrier.elems)
    return [rename_vars(y, ren) for y in slack_sums(Z, e, check=False)]


def verify_thm_dm_multi(D1: DeltaMatroid, D2: DeltaMatroid, e: str, *,
                        check: bool = True) -> bool:
    """Tensor identity for the multivariate transition polynomial (vf-safe inputs)."""
    if check:
        _check_tensor_pair(D1, D2, e, "vfsafe")
    p, q, r = dm_multi_pqr(D2, e)
    t = MultiPoly.var(T_VAR)
    system = (dm_q_multi(dm_contract(D2, e), check=False) == t * p + q + r and
              dm_q_multi(dm_delete(D2, e), check=False) == p + t * q + r and
              dm_q_multi(dm_lc_contract(D2, e), check=False) == p + q + t * r)
    if not system:
        return False
    others = [b for b in D2.ground if b != e]
    psi = {}
    for a in D1.ground:
        ren = {f"{k}.{b}": f"{k}.{copy_name(b, a)}" for b in others for k in "uvw"}
        psi[f"u.{a}"], psi[f"v.{a}"], psi[f"w.{a}"] = (rename_vars(y, ren) for y in (p, q, r))
    rhs = dm_q_multi(D1, check=False).subst(psi)
    lhs = dm_q_multi(dm_tensor(D1, D2, e, "vfsafe", check=False), check=False)
    return lhs == rhs


def dm_even_pq(D2: DeltaMatroid, e: str, w="w", x="x") -> tuple:
    """``(p, q)`` for the two-variable identity, from slack sums of ``Z2(D2)``."""
    Z = dm_to_z2(D2)
    weights = {}
    for g in D2.ground:
        weights[elem_id(g, DOT)] = x
        weights[elem_id(g, BAR)] = w
    y_dot, y_bar = slack_sums(Z, e, weights, check=False)
    return y_dot, y_bar


def verify_thm_dm_even(D1: DeltaMatroid, D2: DeltaMatroid, e: str, *, literal: bool = False,
                       check: bool = True) -> bool:
    """``Q(D1 ⊗_e D2; w, x, t) = Q(D1; q, p, t)`` with ``(p, q)`` solving the minor system.

    ``literal=True`` tests the variant with ``p`` and ``q`` in the other order.
    """
    if check:
        _check_tensor_pair(D1, D2, e, "even")
    p, q = dm_even_pq(D2, e)
    t = MultiPoly.var(T_VAR)
    if dm_q_two(dm_contract(D2, e)) != t * p + q or dm_q_two(dm_delete(D2, e)) != p + t * q:
        return False
    lhs = dm_q_two(dm_tensor(D1, D2, e, "even", check=False))
    rhs = dm_q_two(D1, w=p, x=q) if literal else dm_q_two(D1, w=q, x=p)
    return lhs == rhs


def sample_points(count: int = 30) -> list:
    """Deterministic positive rationals ``(s, u)`` with ``su ≠ 1``."""
    pts = []
    k = 0
    while len(pts) < count:
        s = Fraction(k % 7 + 2, k % 3 + 1)
        u = Fraction(k % 5 + 1, k % 4 + 2)
        k += 1
        if s * u != 1 and (s, u) not in pts:
            pts.append((s, u))
    return pts


def _R_value(D: DeltaMatroid, a, b) -> Fraction:
    """``R(D; a+1, b+1)`` at rationals; exponents must be integral."""
    s2E, rows = _sigma2_table(D)
    a, b = Fraction(a), Fraction(b)
    total = Fraction(0)
    for k, s2 in rows:
        hx, hy = s2E - s2, 2 * k - s2
        if hx % 2 or hy % 2:
            raise HypothesisError("half-integer exponent; use square-root coordinates")
        total += a ** (hx // 2) * b ** (hy // 2)
    return total


def _R_sqrt_value(D: DeltaMatroid, s, u) -> Fraction:
    """``R(D; s²+1, u²+1)`` exactly."""
    s2E, rows = _sigma2_table(D)
    return sum((Fraction(s) ** (s2E - s2) * Fraction(u) ** (2 * k - s2) for k, s2 in rows),
               Fraction(0))


def thm_dm_R_sides(D1: DeltaMatroid, D2: DeltaMatroid, e: str, s, u,
                   tensor: DeltaMatroid | None = None):
    """Both sides of the delta-matroid Tutte identity at ``x = s², y = u²``.

    Returns ``None`` when the point is degenerate (``p`` or ``q`` vanishes).
    """
    s, u = Fraction(s), Fraction(u)
    su = s * u
    Dt = tensor if tensor is not None else dm_tensor(D1, D2, e, "even", check=False)
    n2 = D2.n
    con, dele = dm_contract(D2, e), dm_delete(D2, e)
    A = _R_sqrt_value(con, s, u) / (s ** (dm_rmax(con) - n2 + 1) * u ** (-dm_rmin(con)))
    B = _R_sqrt_value(dele, s, u) / (s ** (dm_rmax(dele) - n2 + 1) * u ** (-dm_rmin(dele)))
    q = (B * su - A) / (su * su - 1)
    p = B - q * su
    if p == 0 or q == 0:
        return None
    sig1 = dm_sigma(D1)
    sigt = dm_sigma(Dt)
    if sig1.denominator != 1 or sigt.denominator != 1:
        raise HypothesisError("the Tutte identity is checked on even delta-matroids only")
    lhs = _R_sqrt_value(Dt, s, u)
    rhs = (q ** D1.n * (p / (q * su)) ** int(sig1) * s ** int(2 * sigt - Dt.n)
           * su ** (dm_rmin(D1) - dm_rmin(Dt)) * _R_value(D1, q * su / p, p * su / q))
    return lhs, rhs


def verify_thm_dm_R(D1: DeltaMatroid, D2: DeltaMatroid, e: str, points: Sequence | None = None,
                    *, check: bool = True, min_points: int = 25) -> bool:
    if check:
        _check_tensor_pair(D1, D2, e, "even")
    Dt = dm_tensor(D1, D2, e, "even", check=False)
    used = 0
    for s, u in points or sample_points():
        sides = thm_dm_R_sides(D1, D2, e, s, u, Dt)
        if sides is None:
            continue
        if sides[0] != sides[1]:
            return False
        used += 1
    return used >= min_points


def _T_value(M: DeltaMatroid, x, y) -> Fraction:
    return matroid_tutte_T(M).evaluate({"x": x, "y": y})


def brylawski_sides(M1: DeltaMatroid, M2: DeltaMatroid, e: str, x, y,
                    tensor: DeltaMatroid | None = None):
    """Both sides of Brylawski's formula at ``(x, y)``, or ``None`` if degenerate."""
    x, y = Fraction(x), Fraction(y)
    Mt = tensor if tensor is not None else dm_tensor(M1, M2, e, "even", check=False)
    t_del = _T_value(dm_delete(M2, e), x, y)
    t_con = _T_value(dm_contract(M2, e), x, y)
    det = 1 - (x - 1) * (y - 1)
    if det == 0:
        return None
    beta = (t_del - (x - 1) * t_con) / det
    alpha = t_con - (y - 1) * beta
    if alpha == 0 or beta == 0:
        return None
    r1 = dm_rmax(M1)
    lhs = _T_value(Mt, x, y)
    rhs = alpha ** (M1.n - r1) * beta ** r1 * _T_value(M1, t_del / beta, t_con / alpha)
    return lhs, rhs


def brylawski_points(count: int = 30) -> list:
    pts = []
    k = 0
    while len(pts) < count:
        x = Fraction(k % 6 + 2, k % 4 + 1)
        y = Fraction(k % 5 + 3, k % 3 + 1)
        k += 1
        if (x, y) not in pts:
            pts.append((x, y))
    return pts


def verify_brylawski_matroid(M1: DeltaMatroid, M2: DeltaMatroid, e: str,
                             points: Sequence | None = None, *, min_points: int = 25) -> bool:
    for M, name in ((M1, "left"), (M2, "right")):
        if not dm_is_matroid(M):
            raise ModeHypothesisViolated(f"{name} input is not a matroid")
    bad = dm_singular_elements(M1)
    if bad:
        raise SingularElement(f"left matroid has loops or coloops {bad}")
    if dm_is_singular(M2, e):
        raise SingularElement(f"{e} is a loop or coloop")
    Mt = dm_tensor(M1, M2, e, "even", check=False)
    used = 0
    for x, y in points or brylawski_points():
        sides = brylawski_sides(M1, M2, e, x, y, Mt)
        if sides is None:
            continue
        if sides[0] != sides[1]:
            return False
        used += 1
    return used >= min_points


# named matroids ---------------------------------------------------------------

def uniform_matroid(r: int, n: int, prefix: str = "") -> DeltaMatroid:
    ground = [f"{prefix}{i}" for i in range(1, n + 1)]
    masks = [sum(1 << i for i in c) for c in itertools.combinations(range(n), r)]
    return DeltaMatroid(ground, masks=masks, validate=False)


def cycle_matroid(edges: Mapping[str, tuple]) -> DeltaMatroid:
    """Bases = spanning forests of the multigraph ``label -> (u, v)``."""
    ground = list(edges)
    verts = sorted({v for uv in edges.values() for v in uv})

    def forest_rank(sub):
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v
        r = 0
        for g in sub:
            a, b = (find(v) for v in edges[g])
            if a != b:
                parent[a] = b
                r += 1
        return r

    full = forest_rank(ground)
    masks = [sum(1 << ground.index(g) for g in c)
             for c in itertools.combinations(ground, full) if forest_rank(c) == full]
    return DeltaMatroid(ground, masks=masks, validate=False)


def triangle_with_doubled_edge(prefix: str = "") -> DeltaMatroid:
    return cycle_matroid({f"{prefix}1": (0, 1), f"{prefix}2": (1, 2), f"{prefix}3": (2, 0),
                          f"{prefix}4": (0, 1)})
