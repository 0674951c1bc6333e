"""Pure-Python bitmask kernels.

These are the reference implementations.  ``_ckernels.pyx`` mirrors each
function one for one; the dispatcher in :mod:`mmtensor.kernels` picks the
compiled version when it imported successfully.
"""


def rank_batch(bases, queries):
    out = []
    bases = list(bases)
    for s in queries:
        full = s.bit_count()
        best = 0
        for b in bases:
            c = (b & s).bit_count()
            if c > best:
                best = c
                if best == full:
                    break
        out.append(best)
    return out


def min_symdiff_batch(family, queries):
    family = list(family)
    if not family:
        raise ValueError("empty family")
    return [min((f ^ x).bit_count() for f in family) for x in queries]


def count_cycles(gap, side):
    n = len(gap)
    if len(side) != n:
        raise ValueError("matchings must have equal length")
    seen = bytearray(n)
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        node = start
        while not seen[node]:
            seen[node] = 1
            node = gap[node]
            seen[node] = 1
            node = side[node]
    return cycles


def exchange_ok(family, nbits):
    fam = set(family)
    if not fam:
        return False
    for x in fam:
        for y in fam:
            d = x ^ y
            rest = d
            while rest:
                u = rest & -rest
                rest ^= u
                vs = d
                while vs:
                    v = vs & -vs
                    vs ^= v
                    if (x ^ u ^ v if v != u else x ^ u) in fam:
                        break
                else:
                    return False
    return True
