# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of uvknot._kernel_py: hot algebra primitives.

Same API and semantics as the pure-Python module; see there for the
conventions.  States are bitmasks (fits comfortably in 64 bits for the
diagram sizes this library targets), weights are tuples of doubled ints.
"""

from itertools import combinations

KERNEL_IMPL = "cython"

cdef dict _v_cache = {}
cdef dict _mw2_cache = {}
cdef dict _rel_cache = {}
cdef dict _corner_cache = {}
cdef dict _nonzero_cache = {}


def v_vector(x, strands):
    key = (x, strands)
    v = _v_cache.get(key)
    if v is not None:
        return v
    cdef unsigned long long xm = x
    cdef int n = strands
    cdef int i
    cdef int acc = 0
    out = [0] * n
    for i in range(n, 0, -1):
        if (xm >> i) & 1:
            acc += 1
        out[i - 1] = acc
    v = tuple(out)
    _v_cache[key] = v
    return v


def min_w2(x, y, strands):
    key = (x, y, strands)
    m = _mw2_cache.get(key)
    if m is not None:
        return m
    vx = v_vector(x, strands)
    vy = v_vector(y, strands)
    cdef int i, n = strands
    out = [0] * n
    for i in range(n):
        out[i] = vx[i] - vy[i] if vx[i] >= vy[i] else vy[i] - vx[i]
    m = tuple(out)
    _mw2_cache[key] = m
    return m


def _subsets_with_popcount(positions, count):
    if count < 0 or count > len(positions):
        return
    if count == 0:
        yield 0
        return
    for combo in combinations(positions, count):
        m = 0
        for p in combo:
            m |= 1 << p
        yield m


def _relation_instances(strands, k):
    key = (strands, k)
    rels = _rel_cache.get(key)
    if rels is not None:
        return rels
    rels = []
    allpos = list(range(strands + 1))
    cdef int i, j
    for i in range(1, strands):
        rest = [p for p in allpos if p not in (i - 1, i, i + 1)]
        w2r = tuple(1 if j in (i, i + 1) else 0 for j in range(1, strands + 1))
        for free in _subsets_with_popcount(rest, k - 1):
            z1 = free | (1 << (i + 1))
            z2 = free | (1 << (i - 1))
            rels.append((z1, z2, w2r))
            rels.append((z2, z1, w2r))
    for j in range(1, strands + 1):
        rest = [p for p in allpos if p not in (j - 1, j)]
        w2r = tuple(2 if jj == j else 0 for jj in range(1, strands + 1))
        for z in _subsets_with_popcount(rest, k):
            rels.append((z, z, w2r))
    _rel_cache[key] = rels
    return rels


def dead_corners(strands, x, y):
    key = (strands, x, y)
    corners = _corner_cache.get(key)
    if corners is not None:
        return corners
    cdef int k = bin(x).count("1")
    cdef int n = strands
    cdef int i
    cands = set()
    for z1, z2, w2r in _relation_instances(strands, k):
        a = min_w2(x, z1, strands)
        b = min_w2(z2, y, strands)
        c = [0] * n
        for i in range(n):
            c[i] = a[i] + w2r[i] + b[i]
        cands.add(tuple(c))
    kept = []
    for c in sorted(cands, key=sum):
        dominated = False
        for k0 in kept:
            ok = True
            for i in range(n):
                if k0[i] > c[i]:
                    ok = False
                    break
            if ok:
                dominated = True
                break
        if not dominated:
            kept.append(c)
    corners = tuple(kept)
    _corner_cache[key] = corners
    return corners


def is_nonzero(strands, x, y, w2):
    if bin(x).count("1") != bin(y).count("1"):
        return False
    key = (strands, x, y, w2)
    res = _nonzero_cache.get(key)
    if res is not None:
        return res
    m = min_w2(x, y, strands)
    cdef int i, n = strands
    cdef bint alive = True
    for i in range(n):
        if w2[i] < m[i] or (w2[i] - m[i]) & 1:
            alive = False
            break
    if alive:
        for c in dead_corners(strands, x, y):
            dominated = True
            for i in range(n):
                if w2[i] < c[i]:
                    dominated = False
                    break
            if dominated:
                alive = False
                break
    res = bool(alive)
    _nonzero_cache[key] = res
    return res


def mul_w2(strands, x1, y1, w2a, x2, y2, w2b):
    if y1 != x2:
        return None
    cdef int i, n = strands
    out = [0] * n
    for i in range(n):
        out[i] = w2a[i] + w2b[i]
    w2 = tuple(out)
    if not is_nonzero(strands, x1, y2, w2):
        return None
    return w2


def csign(cf1, cf2):
    cdef unsigned long long m1 = cf1, c2 = cf2, low
    cdef int par = 0
    while m1:
        low = m1 & (~m1 + 1)
        par ^= bin(c2 & (low - 1)).count("1") & 1
        m1 ^= low
    return par


def clear_caches():
    _v_cache.clear()
    _mw2_cache.clear()
    _rel_cache.clear()
    _corner_cache.clear()
    _nonzero_cache.clear()
