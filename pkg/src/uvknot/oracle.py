"""Brute-force relation-quotient oracle for the strand algebra.

Independently of the production nonzero test, this enumerates the
two-sided monomial ideal generated by the defining relations inside the
free weighted path algebra: every product (monomial) * (relation) *
(monomial) within a weight bound is marked dead.  A monomial survives
the quotient iff it is never marked.

Used by the certification tests (exhaustive for small n and weight).
"""

from itertools import combinations

from uvknot.kernel import min_w2


def _states(strands, k):
    out = []
    for combo in combinations(range(strands + 1), k):
        m = 0
        for p in combo:
            m |= 1 << p
        out.append(m)
    return out


def _weights_upto(strands, bound2):
    """All doubled-weight tuples with total <= bound2."""

    def rec(i, left):
        if i == strands:
            yield ()
            return
        for t in range(left + 1):
            for rest in rec(i + 1, left - t):
                yield (t,) + rest

    return rec(0, bound2)


def dead_monomials(strands: int, k: int, bound2: int):
    """Set of dead (x, y, w2) with total doubled weight <= bound2."""
    states = _states(strands, k)
    dead = set()

    rels = []
    for i in range(1, strands):
        w2r = tuple(1 if j in (i, i + 1) else 0 for j in range(1, strands + 1))
        for z1 in states:
            if (z1 >> (i + 1)) & 1 and not (z1 >> i) & 1 and not (z1 >> (i - 1)) & 1:
                z2 = (z1 & ~(1 << (i + 1))) | (1 << (i - 1))
                rels.append((z1, z2, w2r))
                rels.append((z2, z1, w2r))
    for j in range(1, strands + 1):
        w2r = tuple(2 if jj == j else 0 for jj in range(1, strands + 1))
        for z in states:
            if not (z >> (j - 1)) & 1 and not (z >> j) & 1:
                rels.append((z, z, w2r))

    for z1, z2, w2r in rels:
        wr = sum(w2r)
        for x in states:
            a0 = min_w2(x, z1, strands)
            base_a = sum(a0)
            if base_a + wr > bound2:
                continue
            for y in states:
                b0 = min_w2(z2, y, strands)
                base = base_a + wr + sum(b0)
                if base > bound2:
                    continue
                corner = tuple(p + q + r for p, q, r in zip(a0, w2r, b0))
                # everything >= corner (in even steps) within the bound dies
                for extra in _weights_upto(strands, bound2 - base):
                    if all(e % 2 == 0 for e in extra):
                        dead.add((x, y, tuple(c + e for c, e in zip(corner, extra))))
    return dead


def nonzero_table(strands: int, k: int, bound2: int):
    """Map (x, y, w2) -> bool for all admissible monomials within the bound."""
    states = _states(strands, k)
    dead = dead_monomials(strands, k, bound2)
    table = {}
    for x in states:
        for y in states:
            m = min_w2(x, y, strands)
            base = sum(m)
            if base > bound2:
                continue
            for extra in _weights_upto(strands, bound2 - base):
                if any(e % 2 for e in extra):
                    continue
                w2 = tuple(a + b for a, b in zip(m, extra))
                table[(x, y, w2)] = (x, y, w2) not in dead
    return table
