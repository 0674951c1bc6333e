"""Ribbon graphs as arrow presentations.

A presentation is a list of circles (vertex boundaries), each a cyclic list of
arrow occurrences ``(edge, slot, dir)``.  ``dir`` is ``"+"`` when the arrow
points along the circle's traversal and ``"-"`` otherwise.  Each edge has a
slot-1 and a slot-2 arrow.  The edge disc's boundary runs
``tail1 -> head1 -> tail2 -> head2 -> tail1``, so its sides join ``head1`` to
``tail2`` and ``head2`` to ``tail1``.

For 2-sums an edge may carry a distinguished slot: that arrow marks the head
of the directed edge.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import kernels
from .algebra import T_VAR, MultiPoly, first_difference, rename_vars
from .compose import copy_name
from .errors import HypothesisError, MalformedPresentation, MissingDistinguishedArrow, UnknownEdge
from .multimatroid import Carrier, Multimatroid, SkewClass
from .transition import slack_sums, weight_var

TAIL, HEAD = 0, 1
KINDS = ("dot", "bar", "hat")


@dataclass(frozen=True)
class Occurrence:
    edge: str
    slot: int
    dir: str = "+"

    def __post_init__(self):
        if self.slot not in (1, 2):
            raise MalformedPresentation(f"slot must be 1 or 2, got {self.slot!r}")
        if self.dir not in ("+", "-"):
            raise MalformedPresentation(f"direction must be '+' or '-', got {self.dir!r}")

    @property
    def key(self) -> tuple:
        return (self.edge, self.slot)

    def flipped(self) -> "Occurrence":
        return Occurrence(self.edge, self.slot, "-" if self.dir == "+" else "+")


def _occ(x) -> Occurrence:
    if isinstance(x, Occurrence):
        return x
    if isinstance(x, Mapping):
        return Occurrence(str(x["edge"]), int(x["slot"]), x.get("dir", "+"))
    edge, slot, *rest = x
    return Occurrence(str(edge), int(slot), rest[0] if rest else "+")


class ArrowPresentation:
    def __init__(self, circles: Iterable[Iterable], distinguished: Mapping[str, int] | None = None):
        self.circles = tuple(tuple(_occ(o) for o in c) for c in circles)
        seen: dict = {}
        order = []
        for c in self.circles:
            for o in c:
                if o.key in seen:
                    raise MalformedPresentation(f"edge {o.edge!r} has two slot-{o.slot} arrows")
                seen[o.key] = o
                if o.edge not in order:
                    order.append(o.edge)
        for e in order:
            if (e, 1) not in seen or (e, 2) not in seen:
                raise MalformedPresentation(f"edge {e!r} needs exactly two arrows")
        self.edges = tuple(order)
        self.distinguished = {}
        for e, s in (distinguished or {}).items():
            if e not in seen and (e, 1) not in seen:
                raise UnknownEdge(e)
            if int(s) not in (1, 2):
                raise MalformedPresentation(f"distinguished slot of {e!r} must be 1 or 2")
            self.distinguished[str(e)] = int(s)

    @classmethod
    def parse_word(cls, text: str, distinguished: Mapping[str, int] | None = None):
        """Compact form: circles separated by ``|``, tokens like ``a+`` or ``b-``.

        The first token of an edge is slot 1, the second slot 2.
        """
        slots: dict = {}
        circles = []
        for chunk in text.split("|"):
            circle = []
            for tok in chunk.split():
                edge, d = tok[:-1], tok[-1]
                slots[edge] = slots.get(edge, 0) + 1
                circle.append(Occurrence(edge, slots[edge], d))
            circles.append(circle)
        return cls(circles, distinguished)

    def to_word(self) -> str:
        return " | ".join(" ".join(f"{o.edge}{o.dir}" for o in c) for c in self.circles)

    def find(self, edge: str, slot: int) -> tuple:
        for ci, c in enumerate(self.circles):
            for pos, o in enumerate(c):
                if o.key == (edge, slot):
                    return ci, pos
        raise UnknownEdge(edge)

    def _check_edge(self, e: str):
        if e not in self.edges:
            raise UnknownEdge(e)

    def _sub_distinguished(self, drop: Iterable[str] = ()) -> dict:
        drop = set(drop)
        return {e: s for e, s in self.distinguished.items() if e not in drop}

    def relabel(self, mapping: Mapping[str, str]) -> "ArrowPresentation":
        circles = [[Occurrence(mapping.get(o.edge, o.edge), o.slot, o.dir) for o in c]
                   for c in self.circles]
        dist = {mapping.get(e, e): s for e, s in self.distinguished.items()}
        return ArrowPresentation(circles, dist)

    def with_distinguished(self, dist: Mapping[str, int]) -> "ArrowPresentation":
        d = dict(self.distinguished)
        d.update(dist)
        return ArrowPresentation(self.circles, d)

    def canonical(self) -> tuple:
        """Presentation data up to circle order and rotation."""
        forms = []
        for c in self.circles:
            reps = [tuple((o.edge, o.slot, o.dir) for o in c[i:] + c[:i]) for i in range(len(c))]
            forms.append(min(reps) if reps else ())
        return tuple(sorted(forms)), tuple(sorted(self.distinguished.items()))

    def __eq__(self, other):
        if not isinstance(other, ArrowPresentation):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"ArrowPresentation({self.to_word()!r}, distinguished={self.distinguished})"

    def to_json(self) -> dict:
        out = {"circles": [[{"edge": o.edge, "slot": o.slot, "dir": o.dir} for o in c]
                           for c in self.circles]}
        if self.distinguished:
            out["distinguished"] = dict(self.distinguished)
        return out


# boundary and component counts -------------------------------------------------

def _boundary_count(G: ArrowPresentation, deleted: frozenset = frozenset(),
                    flipped: frozenset = frozenset()) -> int:
    """``b(G^{τ(flipped)} \\ deleted)``; flips act on slot-1 arrows."""
    ids: dict = {}
    empty = 0
    live = []
    for c in G.circles:
        occ = [o for o in c if o.edge not in deleted]
        if not occ:
            empty += 1
            continue
        live.append(occ)
        for o in occ:
            ids[o.key] = len(ids)
    n = 2 * len(ids)
    if n == 0:
        return empty
    gap = [0] * n
    side = [0] * n
    for occ in live:
        ends = []
        for o in occ:
            fwd = (o.dir == "+") != (o.slot == 1 and o.edge in flipped)
            base = 2 * ids[o.key]
            ends.append((base + (TAIL if fwd else HEAD), base + (HEAD if fwd else TAIL)))
        m = len(ends)
        for i in range(m):
            a, b = ends[i][1], ends[(i + 1) % m][0]
            gap[a], gap[b] = b, a
    for (edge, slot), i in ids.items():
        if slot == 1:
            j = ids[(edge, 2)]
            for a, b in ((2 * i + HEAD, 2 * j + TAIL), (2 * j + HEAD, 2 * i + TAIL)):
                side[a], side[b] = b, a
    return empty + kernels.count_cycles(gap, side)


def rg_b(G: ArrowPresentation) -> int:
    return _boundary_count(G)


def _components(G: ArrowPresentation, deleted: Iterable[str] = ()) -> int:
    deleted = set(deleted)
    parent = list(range(len(G.circles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    where: dict = {}
    for ci, c in enumerate(G.circles):
        for o in c:
            if o.edge in deleted:
                continue
            if o.edge in where:
                a, b = find(where[o.edge]), find(ci)
                parent[a] = b
            else:
                where[o.edge] = ci
    return len({find(i) for i in range(len(G.circles))})


def rg_k(G: ArrowPresentation) -> int:
    return _components(G)


def rg_e(G: ArrowPresentation) -> int:
    return len(G.edges)


# local operations ------------------------------------------------------------

def rg_delete(G: ArrowPresentation, e: str) -> ArrowPresentation:
    G._check_edge(e)
    circles = [[o for o in c if o.edge != e] for c in G.circles]
    return ArrowPresentation(circles, G._sub_distinguished([e]))


def rg_petrial(G: ArrowPresentation, e: str, slot: int = 1) -> ArrowPresentation:
    G._check_edge(e)
    circles = [[o.flipped() if o.key == (e, slot) else o for o in c] for c in G.circles]
    return ArrowPresentation(circles, G.distinguished)


def _resplice(circles: Sequence[Sequence[Occurrence]], removed: set, links: Sequence[tuple]):
    """Remove arrows, join their endpoints by ``links`` and read off the new circles.

    Nodes are ``(key, TAIL|HEAD)``.  Arrows traversed against their
    direction come out with the flag flipped.
    """
    adj: dict = {}

    def link(a, b, arrow=None):
        lid = len(lids)
        lids.append((a, b, arrow))
        adj.setdefault(a, []).append(lid)
        adj.setdefault(b, []).append(lid)

    lids: list = []
    order = []
    empties = 0
    for c in circles:
        if not c:
            empties += 1
            continue
        for o in c:
            if o.key not in removed:
                link((o.key, TAIL), (o.key, HEAD), o)
                order.append(o)
        m = len(c)
        for i in range(m):
            o, nxt = c[i], c[(i + 1) % m]
            link((o.key, HEAD if o.dir == "+" else TAIL), (nxt.key, TAIL if nxt.dir == "+" else HEAD))
    for a, b in links:
        link(a, b)
    for node, ls in adj.items():
        if len(ls) != 2:
            raise MalformedPresentation(f"splice left node {node} with degree {len(ls)}")
    used = [False] * len(lids)
    out = []

    def walk(start, first):
        seq = []
        node, lid = start, first
        while not used[lid]:
            used[lid] = True
            a, b, arrow = lids[lid]
            nxt = b if node == a else a
            if arrow is not None:
                seq.append(Occurrence(arrow.edge, arrow.slot, "+" if node[1] == TAIL else "-"))
            node = nxt
            l0, l1 = adj[node]
            lid = l1 if l0 == lid else l0
        return seq

    for o in order:
        tail = (o.key, TAIL)
        first = next(lid for lid in adj[tail] if lids[lid][2] is not None)
        if used[first]:
            continue
        start = tail if o.dir == "+" else (o.key, HEAD)
        out.append(walk(start, first))
    for lid in range(len(lids)):
        if not used[lid]:
            a = lids[lid][0]
            walk(a, lid)
            empties += 1
    return out + [[] for _ in range(empties)]


def rg_contract(G: ArrowPresentation, e: str) -> ArrowPresentation:
    G._check_edge(e)
    k1, k2 = (e, 1), (e, 2)
    links = [((k1, HEAD), (k2, TAIL)), ((k2, HEAD), (k1, TAIL))]
    circles = _resplice(G.circles, {k1, k2}, links)
    return ArrowPresentation(circles, G._sub_distinguished([e]))


# polynomials and the 3-matroid ------------------------------------------------------

def _partitions(edges: Sequence[str]):
    """``(X, Y, Z)`` as a tuple of block indices 0/1/2 per edge."""
    return itertools.product(range(3), repeat=len(edges))


def _partition_b(G: ArrowPresentation, blocks) -> int:
    Y = frozenset(e for e, k in zip(G.edges, blocks) if k == 1)
    Z = frozenset(e for e, k in zip(G.edges, blocks) if k == 2)
    return _boundary_count(G, Y, Z)


def rg_q(G: ArrowPresentation, t_value=None) -> MultiPoly:
    """``Σ u_X v_Y w_Z t^{b(G^{τ(Z)} \\ Y)}`` over ordered 3-partitions."""
    acc: dict = {}
    for blocks in _partitions(G.edges):
        exps = {f"{'uvw'[k]}.{e}": 1 for e, k in zip(G.edges, blocks)}
        exps[T_VAR] = _partition_b(G, blocks)
        for m, c in MultiPoly.term(1, exps).items():
            acc[m] = acc.get(m, 0) + c
    q = MultiPoly(acc)
    if t_value is not None:
        q = q.subst({T_VAR: t_value})
    return q


def elem(e: str, kind: str) -> str:
    return f"{e}_{kind}"


def rg_to_z(G: ArrowPresentation) -> Multimatroid:
    """Tight 3-matroid whose bases are the partitions keeping ``b = k(G)``."""
    k = rg_k(G)
    classes = [SkewClass(e, tuple(elem(e, kd) for kd in KINDS), True) for e in G.edges]
    bases = [[elem(e, KINDS[b]) for e, b in zip(G.edges, blocks)]
             for blocks in _partitions(G.edges) if _partition_b(G, blocks) == k]
    return Multimatroid(Carrier(classes), bases)


def uvw_names(elems: Iterable[str]) -> dict:
    """``x.<e>_dot -> u.<e>`` and so on."""
    out = {}
    for x in elems:
        e, _, kind = x.rpartition("_")
        out[weight_var(x)] = f"{'uvw'[KINDS.index(kind)]}.{e}"
    return out


# bridges and trivial loops --------------------------------------------------------

def is_bridge(G: ArrowPresentation, e: str) -> bool:
    G._check_edge(e)
    return _components(G, [e]) > _components(G)


def is_loop(G: ArrowPresentation, e: str) -> bool:
    return G.find(e, 1)[0] == G.find(e, 2)[0]


def is_trivial_loop(G: ArrowPresentation, e: str) -> bool:
    """A loop not interlaced with any cycle.

    Split the loop's vertex along ``e``: edge ends on one side of the two
    ``e`` arrows go to one half, the rest to the other.  The loop is
    interlaced with a cycle exactly when the halves stay connected in
    ``G \\ e``.
    """
    G._check_edge(e)
    if not is_loop(G, e):
        return False
    ci, p1 = G.find(e, 1)
    _, p2 = G.find(e, 2)
    circle = G.circles[ci]
    lo, hi = sorted((p1, p2))
    inside = {o.key for o in circle[lo + 1:hi]}
    # node ids: circles by index, the split vertex gets halves ci and -1
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def vertex(o, cidx):
        if cidx == ci:
            return -1 if o.key in inside else ci
        return cidx

    where: dict = {}
    for cidx, c in enumerate(G.circles):
        for o in c:
            if o.edge == e:
                continue
            v = vertex(o, cidx)
            if o.edge in where:
                parent[find(where[o.edge])] = find(v)
            else:
                where[o.edge] = v
    return find(-1) != find(ci)


# sums and tensors -----------------------------------------------------------------

def rg_two_sum(G: ArrowPresentation, f: str, H: ArrowPresentation, e: str) -> ArrowPresentation:
    """Splice along ``f`` and ``e``: the distinguished arrows pair tail-to-head."""
    G._check_edge(f)
    H._check_edge(e)
    for P, x in ((G, f), (H, e)):
        if x not in P.distinguished:
            raise MissingDistinguishedArrow(f"edge {x!r} has no distinguished arrow")
    rest_g = set(G.edges) - {f}
    rest_h = set(H.edges) - {e}
    if rest_g & rest_h:
        raise MalformedPresentation(f"edge labels overlap: {sorted(rest_g & rest_h)}")
    fs, es = G.distinguished[f], H.distinguished[e]
    F1, F2 = ("#f", fs), ("#f", 3 - fs)
    E1, E2 = ("#e", es), ("#e", 3 - es)

    def tag(P, x, mark):
        return [[Occurrence(mark, o.slot, o.dir) if o.edge == x else o for o in c]
                for c in P.circles]

    circles = tag(G, f, "#f") + tag(H, e, "#e")
    links = [((F1, TAIL), (E1, HEAD)), ((F1, HEAD), (E1, TAIL)),
             ((F2, TAIL), (E2, HEAD)), ((F2, HEAD), (E2, TAIL))]
    out = _resplice(circles, {F1, F2, E1, E2}, links)
    dist = G._sub_distinguished([f])
    dist.update(H._sub_distinguished([e]))
    return ArrowPresentation(out, dist)


def rg_tensor(G: ArrowPresentation, H: ArrowPresentation, e: str) -> ArrowPresentation:
    """Iterated 2-sum of a copy ``h -> h@g`` of ``H`` onto every edge ``g`` of ``G``."""
    H._check_edge(e)
    missing = [g for g in G.edges if g not in G.distinguished]
    if missing:
        raise MissingDistinguishedArrow(f"edges {missing} have no distinguished arrow")
    if e not in H.distinguished:
        raise MissingDistinguishedArrow(f"edge {e!r} has no distinguished arrow")
    current = G
    for g in G.edges:
        cp = H.relabel({h: copy_name(h, g) for h in H.edges})
        current = rg_two_sum(current, g, cp, copy_name(e, g))
    return current


def check_tensor_hypotheses(G: ArrowPresentation, H: ArrowPresentation, e: str):
    for g in G.edges:
        if is_bridge(G, g) or is_trivial_loop(G, g):
            raise HypothesisError(f"edge {g!r} of the left graph is a bridge or trivial loop")
    if is_bridge(H, e) or is_trivial_loop(H, e):
        raise HypothesisError(f"edge {e!r} is a bridge or trivial loop")


def rg_y(H: ArrowPresentation, e: str) -> list:
    """``[y_dot, y_bar, y_hat]`` in ``u/v/w`` variables, from slack sums of ``Z(H)``."""
    Z = rg_to_z(H)
    ren = uvw_names(Z.carrier.elems)
    return [rename_vars(y, ren) for y in slack_sums(Z, e, check=False)]


@dataclass
class TensorReport:
    system: bool = False
    components: bool = False
    polynomial: bool = False
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.system and self.components and self.polynomial


def rg_tensor_report(G: ArrowPresentation, H: ArrowPresentation, e: str, *,
                     check: bool = True) -> TensorReport:
    if check:
        check_tensor_hypotheses(G, H, e)
    rep = TensorReport()
    t = MultiPoly.var(T_VAR)
    kH = rg_k(H)
    yd, yb, yh = rg_y(H, e)
    tk = t ** kH
    rep.system = (rg_q(rg_contract(H, e)) == tk * (t * yd + yb + yh) and
                  rg_q(rg_delete(H, e)) == tk * (yd + t * yb + yh) and
                  rg_q(rg_contract(rg_petrial(H, e), e)) == tk * (yd + yb + t * yh))
    GH = rg_tensor(G, H, e)
    expected_k = rg_e(G) * (kH - 1) + rg_k(G)
    rep.details["k"] = (rg_k(GH), expected_k)
    rep.components = rg_k(GH) == expected_k
    others = [h for h in H.edges if h != e]
    phi = {}
    for g in G.edges:
        ren = {f"{c}.{h}": f"{c}.{copy_name(h, g)}" for h in others for c in "uvw"}
        phi[f"u.{g}"], phi[f"v.{g}"], phi[f"w.{g}"] = (rename_vars(y, ren) for y in (yd, yb, yh))
    lhs = rg_q(GH)
    rhs = t ** (rg_e(G) * (kH - 1)) * rg_q(G).subst(phi)
    rep.polynomial = lhs == rhs
    rep.details["lhs_terms"] = len(lhs)
    rep.details["first_difference"] = first_difference(lhs, rhs)
    return rep


def rg_verify_tensor_theorem(G: ArrowPresentation, H: ArrowPresentation, e: str, *,
                             check: bool = True) -> bool:
    return rg_tensor_report(G, H, e, check=check).ok
