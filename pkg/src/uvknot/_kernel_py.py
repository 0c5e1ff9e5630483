"""Pure-Python reference implementation of the hot algebra primitives.

Conventions used throughout the package:

* An idempotent state on ``strands`` strands is a bitmask over the
  positions ``{0, ..., strands}`` (bit ``p`` set means position ``p``
  is occupied).
* Weight vectors are tuples of *doubled* integers of length ``strands``
  (index ``i`` holds ``2 * w_{i+1}``), so that all arithmetic stays
  integral.
* A monomial of the strand algebra is a triple ``(x, y, w2)``.  It is
  nonzero exactly when ``w2`` dominates no "dead corner": the two-sided
  ideal generated by the defining relations is a monomial ideal, so a
  monomial dies iff it factors through a relation, i.e. iff
  ``w2 >= minimal(x, z1) + weight(rel) + minimal(z2, y)`` for some
  relation instance ``z1 -> z2``.

The compiled twin (``_kernel.pyx``) implements the same API; the
selector in :mod:`uvknot.kernel` picks whichever is available.
"""

KERNEL_IMPL = "python"

_v_cache = {}
_mw2_cache = {}
_rel_cache = {}
_corner_cache = {}
_nonzero_cache = {}


def v_vector(x: int, strands: int):
    """v-vector of a state: entry i counts occupied positions >= i+1."""
    key = (x, strands)
    v = _v_cache.get(key)
    if v is None:
        out = []
        acc = 0
        for i in range(strands, 0, -1):
            if (x >> i) & 1:
                acc += 1
            out.append(acc)
        out.reverse()
        v = tuple(out)
        _v_cache[key] = v
    return v


def min_w2(x: int, y: int, strands: int):
    """Minimal (doubled) weight of a monomial from state x to state y."""
    key = (x, y, strands)
    m = _mw2_cache.get(key)
    if m is None:
        vx = v_vector(x, strands)
        vy = v_vector(y, strands)
        m = tuple(abs(a - b) for a, b in zip(vx, vy))
        _mw2_cache[key] = m
    return m


def _subsets_with_popcount(positions, count):
    """All bitmasks using `count` of the given positions."""
    n = len(positions)
    if count < 0 or count > n:
        return
    if count == 0:
        yield 0
        return
    from itertools import combinations

    for combo in combinations(positions, count):
        m = 0
        for p in combo:
            m |= 1 << p
        yield m


def _relation_instances(strands: int, k: int):
    """All relation instances (z1, z2, w2_rel) for B(strands, k).

    Relations: L_{i+1} L_i = 0 and R_i R_{i+1} = 0 for 1 <= i <= strands-1,
    and I_z U_j = 0 whenever z misses both j-1 and j.
    """
    key = (strands, k)
    rels = _rel_cache.get(key)
    if rels is not None:
        return rels
    rels = []
    allpos = list(range(strands + 1))
    for i in range(1, strands):
        # L-relation: z1 contains i+1, misses i and i-1; z2 = z1 - {i+1} + {i-1}
        rest = [p for p in allpos if p not in (i - 1, i, i + 1)]
        w2r = tuple(1 if j in (i, i + 1) else 0 for j in range(1, strands + 1))
        for free in _subsets_with_popcount(rest, k - 1):
            z1 = free | (1 << (i + 1))
            z2 = free | (1 << (i - 1))
            rels.append((z1, z2, w2r))
            # R-relation is the reverse move with the same weight
            rels.append((z2, z1, w2r))
    for j in range(1, strands + 1):
        rest = [p for p in allpos if p not in (j - 1, j)]
        w2r = tuple(2 if jj == j else 0 for jj in range(1, strands + 1))
        for z in _subsets_with_popcount(rest, k):
            rels.append((z, z, w2r))
    _rel_cache[key] = rels
    return rels


def dead_corners(strands: int, x: int, y: int):
    """Pareto-minimal corners of the dead region for monomials x -> y."""
    key = (strands, x, y)
    corners = _corner_cache.get(key)
    if corners is not None:
        return corners
    k = bin(x).count("1")
    cands = set()
    for z1, z2, w2r in _relation_instances(strands, k):
        a = min_w2(x, z1, strands)
        b = min_w2(z2, y, strands)
        cands.add(tuple(aa + rr + bb for aa, rr, bb in zip(a, w2r, b)))
    # Pareto-minimize: drop corners dominated by another corner.
    corners = []
    for c in sorted(cands, key=sum):
        if not any(all(k0 <= c0 for k0, c0 in zip(kept, c)) for kept in corners):
            corners.append(c)
    corners = tuple(corners)
    _corner_cache[key] = corners
    return corners


def is_nonzero(strands: int, x: int, y: int, w2) -> bool:
    """Whether the monomial (x, y, w2) survives in B(strands, k)."""
    if bin(x).count("1") != bin(y).count("1"):
        return False
    key = (strands, x, y, w2)
    res = _nonzero_cache.get(key)
    if res is not None:
        return res
    m = min_w2(x, y, strands)
    res = True
    for wi, mi in zip(w2, m):
        if wi < mi or (wi - mi) & 1:
            res = False
            break
    if res:
        for c in dead_corners(strands, x, y):
            if all(wi >= ci for wi, ci in zip(w2, c)):
                res = False
                break
    _nonzero_cache[key] = res
    return res


def mul_w2(strands: int, x1: int, y1: int, w2a, x2: int, y2: int, w2b):
    """Weight of the product of two B-monomials, or None if it vanishes."""
    if y1 != x2:
        return None
    w2 = tuple(a + b for a, b in zip(w2a, w2b))
    if not is_nonzero(strands, x1, y2, w2):
        return None
    return w2


def csign(cf1: int, cf2: int) -> int:
    """Parity of reordering C-factor lists cf1, cf2 (bitmasks) into sorted order."""
    par = 0
    m1 = cf1
    while m1:
        low = m1 & -m1
        par ^= bin(cf2 & (low - 1)).count("1") & 1
        m1 ^= low
    return par


def clear_caches():
    _v_cache.clear()
    _mw2_cache.clear()
    _rel_cache.clear()
    _corner_cache.clear()
    _nonzero_cache.clear()
