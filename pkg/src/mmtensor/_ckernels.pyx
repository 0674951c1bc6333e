# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels; see _pykernels.py for the reference versions."""
from cpython cimport array
from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
import array

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef array.array _U64 = array.array('Q')
cdef array.array _I64 = array.array('q')


cdef inline array.array _as_u64(object seq):
    if isinstance(seq, array.array) and seq.typecode == 'Q':
        return seq
    return array.array('Q', seq)


def rank_batch(bases, queries):
    """max |B & S| over bases B, for every query mask S (0 if no bases)."""
    cdef array.array b = _as_u64(bases)
    cdef array.array q = _as_u64(queries)
    cdef Py_ssize_t nb = len(b), nq = len(q), i, j
    cdef uint64_t[::1] bv
    cdef uint64_t[::1] qv
    cdef array.array out = array.clone(_I64, nq, zero=True)
    cdef long long[::1] ov = out
    cdef int best, c, full
    cdef uint64_t s
    if nq == 0:
        return []
    qv = q
    if nb == 0:
        return out.tolist()
    bv = b
    with nogil:
        for i in range(nq):
            s = qv[i]
            full = __builtin_popcountll(s)
            best = 0
            for j in range(nb):
                c = __builtin_popcountll(bv[j] & s)
                if c > best:
                    best = c
                    if best == full:
                        break
            ov[i] = best
    return out.tolist()


def min_symdiff_batch(family, queries):
    """min |F ^ X| over F in family, for every query mask X."""
    cdef array.array f = _as_u64(family)
    cdef array.array q = _as_u64(queries)
    cdef Py_ssize_t nf = len(f), nq = len(q), i, j
    cdef uint64_t[::1] fv
    cdef uint64_t[::1] qv
    cdef array.array out = array.clone(_I64, nq, zero=True)
    cdef long long[::1] ov = out
    cdef int best, c
    cdef uint64_t x
    if nf == 0:
        raise ValueError("empty family")
    if nq == 0:
        return []
    fv = f
    qv = q
    with nogil:
        for i in range(nq):
            x = qv[i]
            best = 65
            for j in range(nf):
                c = __builtin_popcountll(fv[j] ^ x)
                if c < best:
                    best = c
                    if best == 0:
                        break
            ov[i] = best
    return out.tolist()


def count_cycles(gap, side):
    """Number of cycles in the union of two perfect matchings on range(n)."""
    cdef array.array g = array.array('q', gap)
    cdef array.array s = array.array('q', side)
    cdef Py_ssize_t n = len(g), start, node
    cdef long long[::1] gv
    cdef long long[::1] sv
    cdef char* seen
    cdef long cycles = 0
    if n == 0:
        return 0
    if len(s) != n:
        raise ValueError("matchings must have equal length")
    gv = g
    sv = s
    seen = <char*> calloc(n, 1)
    if seen == NULL:
        raise MemoryError()
    try:
        for start in range(n):
            if seen[start]:
                continue
            cycles += 1
            node = start
            while not seen[node]:
                seen[node] = 1
                node = gv[node]
                seen[node] = 1
                node = sv[node]
    finally:
        free(seen)
    return cycles


def exchange_ok(family, int nbits):
    """Symmetric exchange axiom for a family of masks over nbits elements."""
    cdef array.array f = _as_u64(family)
    cdef Py_ssize_t nf = len(f), i, j
    cdef uint64_t[::1] fv
    cdef char* member
    cdef uint64_t size, x, y, d, ubit, rest, vbit, rest_v, cand
    cdef bint found, ok = True
    if nf == 0:
        return False
    if nbits > 26:
        raise ValueError("ground set too large for the membership table")
    size = (<uint64_t>1) << nbits
    fv = f
    member = <char*> calloc(size, 1)
    if member == NULL:
        raise MemoryError()
    try:
        for i in range(nf):
            if fv[i] >= size:
                raise ValueError("mask outside the ground set")
            member[fv[i]] = 1
        with nogil:
            for i in range(nf):
                x = fv[i]
                for j in range(nf):
                    y = fv[j]
                    d = x ^ y
                    rest = d
                    while rest:
                        ubit = rest & (~rest + 1)
                        rest ^= ubit
                        found = False
                        rest_v = d
                        while rest_v:
                            vbit = rest_v & (~rest_v + 1)
                            rest_v ^= vbit
                            if vbit == ubit:
                                cand = x ^ ubit
                            else:
                                cand = x ^ ubit ^ vbit
                            if member[cand]:
                                found = True
                                break
                        if not found:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
    finally:
        free(member)
    return ok
