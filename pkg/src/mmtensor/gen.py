"""Seeded random structures for property tests and ``verify all``.

Delta-matroids come from symmetric GF(2) matrices (binary delta-matroids
are vf-safe; a zero diagonal makes them even).  Ribbon graphs are random
arrow presentations.  Every generator takes a ``random.Random``.
"""
from __future__ import annotations

import random
from itertools import combinations

from .deltamatroid import DeltaMatroid, dm_singular_elements, dm_to_z2, dm_to_z3, dm_twist
from .multimatroid import Multimatroid
from .ribbon import ArrowPresentation, Occurrence, is_bridge, is_trivial_loop, rg_to_z


def gf2_nonsingular(rows: list, idx: tuple) -> bool:
    """Whether the principal submatrix on ``idx`` is invertible over GF(2)."""
    sub = []
    for i in idx:
        r = 0
        for k, j in enumerate(idx):
            if rows[i] >> j & 1:
                r |= 1 << k
        sub.append(r)
    rank = 0
    for col in range(len(idx)):
        piv = next((i for i in range(rank, len(sub)) if sub[i] >> col & 1), None)
        if piv is None:
            return False
        sub[rank], sub[piv] = sub[piv], sub[rank]
        for i in range(len(sub)):
            if i != rank and sub[i] >> col & 1:
                sub[i] ^= sub[rank]
        rank += 1
    return True


def random_symmetric(rng: random.Random, n: int, even: bool) -> list:
    rows = [0] * n
    for i in range(n):
        if not even and rng.random() < 0.5:
            rows[i] |= 1 << i
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def binary_dm(rows: list, ground: list) -> DeltaMatroid:
    n = len(ground)
    masks = [0]
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if gf2_nonsingular(rows, idx):
                masks.append(sum(1 << i for i in idx))
    return DeltaMatroid.from_masks(ground, masks)


def random_binary_dm(rng: random.Random, n: int, prefix: str = "d", *, even: bool = True,
                     twist: bool = True) -> DeltaMatroid:
    ground = [f"{prefix}{i}" for i in range(n)]
    D = binary_dm(random_symmetric(rng, n, even), ground)
    if twist:
        D = dm_twist(D, [x for x in ground if rng.random() < 0.5])
    return D


def random_nonsingular_dm(rng: random.Random, n: int, prefix: str = "d", *,
                          even: bool = True, tries: int = 200) -> DeltaMatroid:
    """Binary delta-matroid with no loops or coloops (rejection sampling)."""
    for _ in range(tries):
        D = random_binary_dm(rng, n, prefix, even=even)
        if not dm_singular_elements(D):
            return D
    raise RuntimeError(f"no non-singular delta-matroid found on {n} elements")


def random_binary_matroid(rng: random.Random, r: int, n: int, prefix: str = "m") -> DeltaMatroid:
    """Column matroid of a random ``r × n`` GF(2) matrix of full row rank."""
    ground = [f"{prefix}{i}" for i in range(n)]
    while True:
        cols = [rng.randrange(1, 1 << r) for _ in range(n)]
        bases = []
        for idx in combinations(range(n), r):
            if _independent([cols[i] for i in idx]):
                bases.append(sum(1 << i for i in idx))
        if bases:
            return DeltaMatroid.from_masks(ground, bases)


def _independent(vectors: list) -> bool:
    basis: list = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if not v:
            return False
        basis.append(v)
    return True


def random_rg(rng: random.Random, n_edges: int, prefix: str = "g",
              max_circles: int = 2) -> ArrowPresentation:
    """Random arrow presentation; every edge gets a random distinguished slot."""
    nc = rng.randint(1, max_circles)
    circles: list = [[] for _ in range(nc)]
    edges = [f"{prefix}{i}" for i in range(n_edges)]
    for e in edges:
        for s in (1, 2):
            c = circles[rng.randrange(nc)]
            c.insert(rng.randint(0, len(c)), Occurrence(e, s, rng.choice("+-")))
    return ArrowPresentation(circles, {e: rng.choice((1, 2)) for e in edges})


def rg_good_edge(G: ArrowPresentation, e: str) -> bool:
    return not (is_bridge(G, e) or is_trivial_loop(G, e))


def random_rg_all_good(rng: random.Random, n_edges: int, prefix: str = "g",
                       tries: int = 500) -> ArrowPresentation:
    """Random presentation with no bridges and no trivial loops."""
    for _ in range(tries):
        G = random_rg(rng, n_edges, prefix)
        if all(rg_good_edge(G, e) for e in G.edges):
            return G
    raise RuntimeError(f"no bridgeless presentation found with {n_edges} edges")


def random_rg_with_good_edge(rng: random.Random, n_edges: int, prefix: str = "h",
                             tries: int = 500) -> tuple:
    """(presentation, edge) where the edge is neither a bridge nor a trivial loop."""
    for _ in range(tries):
        H = random_rg(rng, n_edges, prefix)
        good = [e for e in H.edges if rg_good_edge(H, e)]
        if good:
            return H, rng.choice(good)
    raise RuntimeError(f"no usable edge found with {n_edges} edges")


def _left_factor(rng: random.Random, q: int, k: int, source: str) -> Multimatroid:
    if q == 2:
        return dm_to_z2(random_nonsingular_dm(rng, k, "a", even=True))
    if source == "rg":
        return rg_to_z(random_rg_all_good(rng, k, "a"))
    return dm_to_z3(random_nonsingular_dm(rng, k, "a", even=False))


def _right_factor(rng: random.Random, q: int, m: int, source: str) -> tuple:
    if q == 3 and source == "rg":
        H, e = random_rg_with_good_edge(rng, m, "b")
        return rg_to_z(H), e
    for _ in range(500):
        D = random_binary_dm(rng, m, "b", even=(q == 2))
        bad = set(dm_singular_elements(D))
        good = [x for x in D.ground if x not in bad]
        if good:
            Z = dm_to_z2(D) if q == 2 else dm_to_z3(D)
            return Z, rng.choice(good)
    raise RuntimeError("no usable right factor")


def random_tensor_pair(rng: random.Random, max_classes: int = 4) -> dict:
    """A hypothesis-satisfying ``(Z1, Z2, e)`` for the tensor identity.

    Sizes are bounded so the composite has at most ``3^6`` or ``2^8``
    transversals.
    """
    q = rng.choice((2, 3))
    budget = 8 if q == 2 else 6
    src1 = "dm" if q == 2 else rng.choice(("rg", "dm"))
    src2 = "dm" if q == 2 else rng.choice(("rg", "dm"))
    # every one-element factor has a singular class
    while True:
        k = rng.randint(2, max_classes)
        m = rng.randint(2, max_classes)
        if k * (m - 1) <= budget:
            break
    Z1 = _left_factor(rng, q, k, src1)
    Z2, e = _right_factor(rng, q, m, src2)
    return {"q": q, "left": Z1, "right": Z2, "class": e,
            "label": f"q={q} {src1}[{k}] x {src2}[{m}]"}
