"""Exact arithmetic in the strand algebras B(2n,k) and their matched
extensions A(n,k,M).

A *pure element* is ``coeff * (B-monomial from state x to state y with
U-weight w) * C_{p_1} ... C_{p_r}`` with distinct matched pairs ``p_i``.
Terms are stored in a canonical form keyed by ``(x, y, w2, cf)`` where
``x, y`` are state bitmasks, ``w2`` the doubled weight tuple and ``cf``
a bitmask over the matching's pair indices (C-factors are kept sorted
by pair index; reordering signs are folded into the coefficient).

Nonzero-ness of B-monomials is decided by :func:`uvknot.kernel.is_nonzero`,
which is certified against the brute-force relation-quotient oracle in
the test suite.
"""

from fractions import Fraction

from uvknot import kernel
from uvknot.rings import F2_RING, Ring


def mask(points) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def unmask(m: int):
    out = []
    p = 0
    while m:
        if m & 1:
            out.append(p)
        m >>= 1
        p += 1
    return tuple(out)


def state_str(m: int) -> str:
    return "{" + ",".join(str(p) for p in unmask(m)) + "}"


class Ambient:
    """The algebra A(n, k, M) over a coefficient ring.

    ``matching`` is a set of disjoint pairs covering {1, ..., 2n}; it may
    be empty only when n == 0.  ``k`` counts idempotent-state points.
    """

    def __init__(self, n: int, k: int, matching, ring: Ring = F2_RING):
        self.n = n
        self.strands = 2 * n
        if not (0 <= k <= 2 * n + 1):
            raise ValueError(f"k={k} out of range for n={n}")
        self.k = k
        pairs = tuple(sorted(tuple(sorted(p)) for p in matching))
        seen = set()
        for a, b in pairs:
            if a == b or not (1 <= a <= 2 * n) or not (1 <= b <= 2 * n):
                raise ValueError(f"bad matched pair {(a, b)}")
            seen.update((a, b))
        if len(seen) != 2 * n:
            raise ValueError("matching must partition {1,...,2n}")
        self.matching = pairs
        self.pair_index = {p: i for i, p in enumerate(pairs)}
        self.partner = {}
        for a, b in pairs:
            self.partner[a] = b
            self.partner[b] = a
        self.ring = ring

    def __eq__(self, other):
        return (
            isinstance(other, Ambient)
            and (self.n, self.k, self.matching) == (other.n, other.k, other.matching)
            and self.ring.name == other.ring.name
        )

    def __hash__(self):
        return hash((self.n, self.k, self.matching, self.ring.name))

    def __repr__(self):
        return f"A(n={self.n},k={self.k},M={list(self.matching)};{self.ring})"

    def states(self):
        """All idempotent states, as bitmasks (sorted)."""
        from itertools import combinations

        out = []
        for combo in combinations(range(self.strands + 1), self.k):
            out.append(mask(combo))
        return sorted(out)

    def zero_w2(self):
        return (0,) * self.strands


class AlgebraElement:
    """A finite sum of pure elements of one ambient, in normal form."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms=None):
        self.ambient = ambient
        self.terms = {}
        if terms:
            ring = ambient.ring
            for key, c in terms.items() if isinstance(terms, dict) else terms:
                c = ring.normalize(c)
                if c:
                    c0 = self.terms.get(key)
                    if c0 is None:
                        self.terms[key] = c
                    else:
                        c1 = ring.add(c0, c)
                        if c1:
                            self.terms[key] = c1
                        else:
                            del self.terms[key]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        ring = self.ambient.ring
        for key, c in other.terms.items():
            c1 = ring.add(out.get(key, 0), c)
            if c1:
                out[key] = c1
            else:
                out.pop(key, None)
        res = AlgebraElement(self.ambient)
        res.terms = out
        return res

    def __neg__(self):
        ring = self.ambient.ring
        res = AlgebraElement(self.ambient)
        res.terms = {k: ring.neg(c) for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        ring = self.ambient.ring
        res = AlgebraElement(self.ambient)
        for key, c0 in self.terms.items():
            c1 = ring.mul(c0, c)
            if c1:
                res.terms[key] = c1
        return res

    def __mul__(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        amb = self.ambient
        ring = amb.ring
        out = {}
        for (x1, y1, w2a, cf1), c1 in self.terms.items():
            for (x2, y2, w2b, cf2), c2 in other.terms.items():
                if y1 != x2 or (cf1 & cf2):
                    continue
                w2 = kernel.mul_w2(amb.strands, x1, y1, w2a, x2, y2, w2b)
                if w2 is None:
                    continue
                c = ring.mul(c1, c2)
                if ring.char != 2 and kernel.csign(cf1, cf2):
                    c = ring.neg(c)
                key = (x1, y2, w2, cf1 | cf2)
                acc = ring.add(out.get(key, 0), c)
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        res = AlgebraElement(amb)
        res.terms = out
        return res

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(term_str(self.ambient, key, c) for key, c in self.sorted_terms())


def term_str(amb: Ambient, key, coeff: int) -> str:
    x, y, w2, cf = key
    parts = []
    v = kernel.min_w2(x, y, amb.strands)
    for i, (wi, mi) in enumerate(zip(w2, v), start=1):
        if wi == 0:
            continue
        if wi == mi and mi == 1:
            # minimal half-step: direction from the v-vectors
            vx = kernel.v_vector(x, amb.strands)[i - 1]
            vy = kernel.v_vector(y, amb.strands)[i - 1]
            parts.append(f"R{i}" if vy > vx else f"L{i}")
        else:
            e = Fraction(wi, 2)
            parts.append(f"W{i}^{e}" if e.denominator != 1 else f"U{i}^{e}" if e != 1 else f"U{i}")
    for idx in unmask(cf):
        a, b = amb.matching[idx]
        parts.append(f"C{{{a},{b}}}")
    body = " ".join(parts) if parts else "1"
    cs = "" if coeff == 1 else f"{coeff}*"
    return f"[{cs}{state_str(x)}|{body}|{state_str(y)}]"


# ---------------------------------------------------------------- builders


def zero(amb: Ambient) -> AlgebraElement:
    return AlgebraElement(amb)


def pure(amb: Ambient, x: int, y: int, w2, cf: int = 0, coeff: int = 1) -> AlgebraElement:
    """The pure element with the given data, normalized (may be zero)."""
    res = AlgebraElement(amb)
    c = amb.ring.normalize(coeff)
    if c and kernel.is_nonzero(amb.strands, x, y, tuple(w2)):
        res.terms[(x, y, tuple(w2), cf)] = c
    return res


def idem(amb: Ambient, x: int) -> AlgebraElement:
    return pure(amb, x, x, amb.zero_w2())


def unit(amb: Ambient) -> AlgebraElement:
    res = AlgebraElement(amb)
    for x in amb.states():
        res.terms[(x, x, amb.zero_w2(), 0)] = 1
    return res


def _shift_state(x: int, frm: int, to: int) -> int:
    return (x & ~(1 << frm)) | (1 << to)


def gen_L(amb: Ambient, i: int) -> AlgebraElement:
    """L_i: moves an occupied position i down to i-1."""
    res = AlgebraElement(amb)
    w2 = tuple(1 if j == i else 0 for j in range(1, amb.strands + 1))
    for x in amb.states():
        if (x >> i) & 1 and not (x >> (i - 1)) & 1:
            res.terms[(x, _shift_state(x, i, i - 1), w2, 0)] = 1
    return res


def gen_R(amb: Ambient, i: int) -> AlgebraElement:
    """R_i: moves an occupied position i-1 up to i."""
    res = AlgebraElement(amb)
    w2 = tuple(1 if j == i else 0 for j in range(1, amb.strands + 1))
    for x in amb.states():
        if (x >> (i - 1)) & 1 and not (x >> i) & 1:
            res.terms[(x, _shift_state(x, i - 1, i), w2, 0)] = 1
    return res


def gen_U(amb: Ambient, i: int) -> AlgebraElement:
    res = AlgebraElement(amb)
    w2 = tuple(2 if j == i else 0 for j in range(1, amb.strands + 1))
    for x in amb.states():
        if kernel.is_nonzero(amb.strands, x, x, w2):
            res.terms[(x, x, w2, 0)] = 1
    return res


def gen_C(amb: Ambient, pair) -> AlgebraElement:
    idx = amb.pair_index[tuple(sorted(pair))]
    res = AlgebraElement(amb)
    for x in amb.states():
        res.terms[(x, x, amb.zero_w2(), 1 << idx)] = 1
    return res


# ---------------------------------------------------------------- operations


def weight_vector(x, n: int):
    """v-vector of an idempotent state (spec operation; x a set or mask)."""
    xm = x if isinstance(x, int) else mask(x)
    return kernel.v_vector(xm, 2 * n)


def min_relative_weight(x, y, n: int):
    """Minimal relative weight, as Fractions."""
    xm = x if isinstance(x, int) else mask(x)
    ym = y if isinstance(y, int) else mask(y)
    return tuple(Fraction(t, 2) for t in kernel.min_w2(xm, ym, 2 * n))


def is_nonzero_b(x, y, w, n: int) -> bool:
    """Whether the B(2n,k) monomial from x to y with weight w survives.

    ``w`` may be a tuple of Fractions/halves or a doubled-int tuple.
    """
    xm = x if isinstance(x, int) else mask(x)
    ym = y if isinstance(y, int) else mask(y)
    w2 = []
    for t in w:
        t2 = 2 * Fraction(t)
        if t2.denominator != 1:
            return False
        w2.append(int(t2))
    return kernel.is_nonzero(2 * n, xm, ym, tuple(w2))


def differential(a: AlgebraElement) -> AlgebraElement:
    """d C_{a,b} = U_a U_b, extended by the (signed) Leibniz rule.

    On a canonical term the C-factors are sorted; removing the j-th one
    contributes the sign (-1)^(j-1) over Z.
    """
    amb = a.ambient
    ring = amb.ring
    out = AlgebraElement(amb)
    acc = {}
    for (x, y, w2, cf), c in a.terms.items():
        pos = 0
        rem = cf
        j = 0
        while rem:
            low = rem & -rem
            idx = low.bit_length() - 1
            p, q = amb.matching[idx]
            w2n = list(w2)
            w2n[p - 1] += 2
            w2n[q - 1] += 2
            w2n = tuple(w2n)
            if kernel.is_nonzero(amb.strands, x, y, w2n):
                cc = c if (j % 2 == 0 or ring.char == 2) else ring.neg(c)
                key = (x, y, w2n, cf & ~low)
                s = ring.add(acc.get(key, 0), cc)
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
            rem ^= low
            j += 1
        del pos
    out.terms = acc
    return out


def exterior(key) -> int:
    return bin(key[3]).count("1") & 1


def delta_grading(amb: Ambient, key) -> Fraction:
    """#C-factors minus the total Alexander weight (each C weighs e_i + e_j,
    so a C-factor contributes 1 - 2 = -1)."""
    x, y, w2, cf = key
    return Fraction(-sum(w2), 2) - bin(cf).count("1")


def alexander_multi(amb: Ambient, key):
    """Alexander multigrading: weight plus e_i + e_j per C-factor, as Fractions."""
    x, y, w2, cf = key
    out = [Fraction(t, 2) for t in w2]
    for idx in unmask(cf):
        p, q = amb.matching[idx]
        out[p - 1] += 1
        out[q - 1] += 1
    return tuple(out)


def alexander_scalar(amb: Ambient, key, upwards) -> Fraction:
    """Orientation-weighted Alexander grading: -sum over upward strands,
    +sum over downward strands."""
    multi = alexander_multi(amb, key)
    tot = Fraction(0)
    for i, a in enumerate(multi, start=1):
        tot += -a if i in upwards else a
    return tot


class GradingData:
    __slots__ = ("delta", "alex", "exterior")

    def __init__(self, delta, alex, ext):
        self.delta = delta
        self.alex = alex
        self.exterior = ext


def gradings(amb: Ambient, key) -> GradingData:
    return GradingData(delta_grading(amb, key), alexander_multi(amb, key), exterior(key))
