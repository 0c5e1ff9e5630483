"""Independent Alexander-polynomial oracle via Fox calculus.

From the oriented diagram's traversal we extract a Wirtinger
presentation (one generator per over-arc, one relation per crossing),
take Fox derivatives abelianized at t, delete one column and evaluate
the determinant exactly over Z[t, 1/t].  The result is normalized to
the symmetrized Alexander polynomial with p(t) = p(1/t) and p(1) = 1.

This module is deliberately independent of the homology pipeline: it
never touches the strand algebras.
"""

from fractions import Fraction

from uvknot.diagram import Diagram, OrientedDiagram


class LaurentPoly(dict):
    """Sparse Laurent polynomial over Z: exponent -> coefficient."""

    @classmethod
    def make(cls, items):
        p = cls()
        for e, c in items:
            if c:
                p[e] = p.get(e, 0) + c
                if not p[e]:
                    del p[e]
        return p

    def __add__(self, other):
        out = LaurentPoly(self)
        for e, c in other.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def __neg__(self):
        return LaurentPoly.make((e, -c) for e, c in self.items())

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = LaurentPoly()
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return out

    def shift(self, k):
        return LaurentPoly.make((e + k, c) for e, c in self.items())

    def __call__(self, val: Fraction) -> Fraction:
        return sum((Fraction(c) * Fraction(val) ** e for e, c in self.items()), Fraction(0))

    def is_symmetric(self):
        return all(self.get(-e, 0) == c for e, c in self.items())

    def pretty(self, var="t"):
        if not self:
            return "0"
        parts = []
        for e in sorted(self, reverse=True):
            c = self[e]
            mono = "1" if e == 0 else var if e == 1 else f"{var}^{e}"
            if e == 0:
                term = str(abs(c))
            elif abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


ONE = LaurentPoly.make([(0, 1)])
T = LaurentPoly.make([(1, 1)])
TINV = LaurentPoly.make([(-1, 1)])


def _wirtinger(od: OrientedDiagram):
    """Over-arcs and crossing relations from the oriented traversal.

    Returns (num_arcs, relations) where each relation is
    (over_arc, in_arc, out_arc, sign) for x_out = x_over^s x_in x_over^-s.
    """
    # passages of the knot in traversal order: (event index, 'o'/'u')
    seq = []
    for arc, going_up in od._walk:
        p = od._passages[arc]
        seq.extend(reversed(p) if going_up else p)
    if not seq:
        return 1, []
    # over-arcs: maximal runs between under-passages
    under_positions = [i for i, (e, role) in enumerate(seq) if role == "u"]
    narcs = len(under_positions)
    # over-arc id for each sequence position: arc j spans from just after
    # under_positions[j-1] to under_positions[j] (cyclically)
    arc_of_pos = {}
    for j, up in enumerate(under_positions):
        prev = under_positions[j - 1]
        i = (prev + 1) % len(seq)
        while True:
            arc_of_pos[i] = j
            if i == up:
                break
            i = (i + 1) % len(seq)
    in_arc_of_under = {}
    out_arc_of_under = {}
    for j, up in enumerate(under_positions):
        in_arc_of_under[seq[up][0]] = j
        out_arc_of_under[seq[up][0]] = (j + 1) % narcs
    over_arc_of_event = {}
    for i, (e, role) in enumerate(seq):
        if role == "o":
            over_arc_of_event[e] = arc_of_pos[i]
    rels = []
    for e, sign in od.crossing_signs.items():
        rels.append((over_arc_of_event[e], in_arc_of_under[e], out_arc_of_under[e], sign))
    return narcs, rels


def alexander_polynomial(d: Diagram) -> LaurentPoly:
    """Symmetrized Alexander polynomial, normalized with p(1) = 1."""
    od = d if isinstance(d, OrientedDiagram) else OrientedDiagram(d)
    narcs, rels = _wirtinger(od)
    if not rels:
        return LaurentPoly.make([(0, 1)])
    # Fox derivative rows; delete the last generator column
    m = len(rels)
    rows = []
    for over, a_in, a_out, sign in rels:
        row = [LaurentPoly() for _ in range(narcs)]
        if sign > 0:
            # r = c a c^-1 b^-1: d/dc = 1-t, d/da = t, d/db = -1
            row[over] = row[over] + (ONE - T)
            row[a_in] = row[a_in] + T
            row[a_out] = row[a_out] - ONE
        else:
            # r = c^-1 a c b^-1: d/dc = t^-1(1 - ... ) -> -t^-1 + t^-1 * t = 1 - t^-1
            # scaled by t (a unit): d/dc = t-1, d/da = 1, d/db = -t
            row[over] = row[over] + (T - ONE)
            row[a_in] = row[a_in] + ONE
            row[a_out] = row[a_out] - T
        rows.append(row[: narcs - 1])
    det = _laurent_det([r for r in rows[: narcs - 1]])
    return _symmetrize(det)


def _laurent_det(mat):
    """Exact determinant by fraction-free expansion (matrices are small)."""
    n = len(mat)
    if n == 0:
        return LaurentPoly.make([(0, 1)])
    if n == 1:
        return LaurentPoly(mat[0][0])

    def det_rec(rows, cols):
        if len(cols) == 1:
            return LaurentPoly(mat[rows[0]][cols[0]])
        total = LaurentPoly()
        r = rows[0]
        for k, c in enumerate(cols):
            entry = mat[r][c]
            if not entry:
                continue
            sub = det_rec(rows[1:], cols[:k] + cols[k + 1 :])
            term = entry * sub
            total = total + (term if k % 2 == 0 else -term)
        return total

    return det_rec(list(range(n)), list(range(n)))


def _symmetrize(p: LaurentPoly) -> LaurentPoly:
    if not p:
        raise ValueError("vanishing Alexander determinant (not a knot?)")
    lo = min(p)
    hi = max(p)
    mid = Fraction(lo + hi, 2)
    if mid.denominator != 1:
        raise ValueError("asymmetric degree span in Alexander determinant")
    q = p.shift(-int(mid))
    if not q.is_symmetric():
        raise ValueError(f"Alexander determinant not symmetric after centering: {dict(q)}")
    if q(Fraction(1)) == -1:
        q = -q
    if q(Fraction(1)) != 1:
        raise ValueError(f"Alexander polynomial has det(1) = {q(Fraction(1))}, expected +-1")
    return q
