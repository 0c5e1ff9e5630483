"""Standard (curved) type-D structures over A(n,k,M) and their reduction.

A standard structure stores only the epsilon part of the structure map:
the diagonal curvature term -(sum of C_p) tensor x is implicit.  Over Z
the structure relation for the stored arrows reads

    d(eps) + eps o eps = (sum over p of U_{p1} U_{p2}) . id

componentwise in each idempotent, and every arrow is Delta-homogeneous
with Delta(src) - 1 = Delta(coef) + Delta(dst).

Cancellation removes a pair of generators joined by an arrow whose
coefficient is a unit multiple of an idempotent, via the zig-zag
formula a'_{ij} = a_{ij} - a_{i2} c^{-1} a_{1j}; reduction applies this
greedily (Markowitz-style pivoting) until no such arrow remains.
"""

import heapq
from fractions import Fraction

from uvknot import kernel
from uvknot.algebra import (
    AlgebraElement,
    Ambient,
    alexander_scalar,
    delta_grading,
    differential,
    exterior,
    state_str,
)


class DGenerator:
    __slots__ = ("gid", "idem", "delta", "alex", "ext", "label")

    def __init__(self, gid, idem, delta, alex, ext=0, label=()):
        self.gid = gid
        self.idem = idem
        self.delta = delta
        self.alex = alex
        self.ext = ext & 1
        self.label = label

    def __repr__(self):
        return f"g{self.gid}[{state_str(self.idem)} d={self.delta} a={self.alex}]"


class StructureReport:
    def __init__(self):
        self.violations = []

    def add(self, kind, detail):
        self.violations.append((kind, detail))

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        if self.ok:
            return "StructureReport(OK)"
        lines = "\n".join(f"  [{k}] {d}" for k, d in self.violations[:20])
        extra = "" if len(self.violations) <= 20 else f"\n  ... {len(self.violations) - 20} more"
        return f"StructureReport({len(self.violations)} violations)\n{lines}{extra}"


class StandardDStructure:
    """Finitely generated standard type-D structure (curvature implicit)."""

    def __init__(self, ambient: Ambient, upwards=frozenset()):
        self.ambient = ambient
        self.upwards = frozenset(upwards)
        self.gens = {}
        self.arrows = {}      # src -> {dst -> AlgebraElement}
        self.arrows_in = {}   # dst -> set(src)
        self._next = 0

    # ------------------------------------------------------------- building

    def add_gen(self, idem, delta, alex, ext=0, label=()):
        gid = self._next
        self._next += 1
        self.gens[gid] = DGenerator(gid, idem, delta, alex, ext, label)
        self.arrows[gid] = {}
        self.arrows_in[gid] = set()
        return gid

    def add_arrow(self, src, dst, coef: AlgebraElement):
        if not coef:
            return
        row = self.arrows[src]
        cur = row.get(dst)
        new = coef if cur is None else cur + coef
        if new:
            row[dst] = new
            self.arrows_in[dst].add(src)
        elif cur is not None:
            del row[dst]
            self.arrows_in[dst].discard(src)

    # ------------------------------------------------------------ inspection

    def gen_count(self):
        return len(self.gens)

    def arrow_count(self):
        return sum(len(r) for r in self.arrows.values())

    def graded_counts(self):
        """Multiset of (idem, delta, alex) -> count."""
        out = {}
        for g in self.gens.values():
            key = (g.idem, g.delta, g.alex)
            out[key] = out.get(key, 0) + 1
        return out

    def curvature(self, idem):
        """(sum over p of U_{p1} U_{p2}) . I_idem as an AlgebraElement."""
        amb = self.ambient
        el = AlgebraElement(amb)
        for p, q in amb.matching:
            w2 = [0] * amb.strands
            w2[p - 1] += 2
            w2[q - 1] += 2
            w2 = tuple(w2)
            if kernel.is_nonzero(amb.strands, idem, idem, w2):
                el.terms[(idem, idem, w2, 0)] = 1
        return el

    # ---------------------------------------------------------------- checks

    def check_structure(self, gradings=True, relation=True) -> StructureReport:
        rep = StructureReport()
        amb = self.ambient
        if gradings:
            for src, row in self.arrows.items():
                gs = self.gens[src]
                for dst, coef in row.items():
                    gd = self.gens[dst]
                    for key in coef.terms:
                        x, y, w2, cf = key
                        if x != gs.idem or y != gd.idem:
                            rep.add("idem", f"{gs} -> {gd}: coefficient {key}")
                        if gs.delta - 1 != delta_grading(amb, key) + gd.delta:
                            rep.add("delta", f"{gs} -> {gd}: {key}")
                        if gs.alex != alexander_scalar(amb, key, self.upwards) + gd.alex:
                            rep.add("alex", f"{gs} -> {gd}: {key}")
                        if exterior(key):
                            rep.add("standard", f"{gs} -> {gd}: C-factor in arrow {key}")
        if relation:
            ring = amb.ring
            for i, row in self.arrows.items():
                acc = {}

                def bump(tgt, key, c):
                    k = (tgt, key)
                    s = ring.add(acc.get(k, 0), c)
                    if s:
                        acc[k] = s
                    else:
                        acc.pop(k, None)

                for j, a_ij in row.items():
                    for key, c in differential(a_ij).terms.items():
                        bump(j, key, c)
                    for k2, a_jk in self.arrows[j].items():
                        for key, c in (a_ij * a_jk).terms.items():
                            bump(k2, key, c)
                for key, c in self.curvature(self.gens[i].idem).terms.items():
                    bump(i, key, ring.neg(c))
                for (tgt, key), c in acc.items():
                    rep.add("relation", f"gen {i} -> {tgt}: residual {key} = {c}")
        return rep

    # ----------------------------------------------------------- cancellation

    def pivot_ok(self, src, dst):
        """Arrow usable for cancellation: unit multiple of an idempotent."""
        if src == dst:
            return None
        coef = self.arrows[src].get(dst)
        if coef is None or len(coef.terms) != 1:
            return None
        (key, c), = coef.terms.items()
        x, y, w2, cf = key
        if x != y or cf or any(w2):
            return None
        if not self.ambient.ring.is_unit(c):
            return None
        return c

    def cancel_arrow(self, y1, y2):
        """Cancel the pair (y1, y2) along the arrow y1 -> y2."""
        c = self.pivot_ok(y1, y2)
        if c is None:
            raise ValueError(f"arrow {y1}->{y2} is not an invertible idempotent pivot")
        ring = self.ambient.ring
        cinv = ring.inv(c)
        ins = [i for i in self.arrows_in[y2] if i not in (y1, y2)]
        outs = [(j, a) for j, a in self.arrows[y1].items() if j not in (y1, y2)]
        for i in ins:
            a_i2 = self.arrows[i][y2]
            for j, a_1j in outs:
                corr = (a_i2 * a_1j).scale(ring.neg(cinv))
                self.add_arrow(i, j, corr)
        self._drop_gen(y1)
        self._drop_gen(y2)

    def _drop_gen(self, gid):
        for dst in list(self.arrows[gid]):
            self.arrows_in[dst].discard(gid)
        del self.arrows[gid]
        for src in list(self.arrows_in[gid]):
            self.arrows[src].pop(gid, None)
        del self.arrows_in[gid]
        del self.gens[gid]

    def reduce(self, validate=False):
        """Cancel until no idempotent-coefficient arrow with unit scalar remains.

        Over a field the result is small; over Z non-unit scalar arrows may
        survive (callers can inspect weight-zero leftovers).  Pivots are
        chosen by Markowitz fill-in cost, ties by generator id.
        """
        heap = []
        for src, row in self.arrows.items():
            for dst in row:
                if self.pivot_ok(src, dst) is not None:
                    cost = (len(self.arrows[src]) - 1) * (len(self.arrows_in[dst]) - 1)
                    heapq.heappush(heap, (cost, src, dst))
        while heap:
            cost, src, dst = heapq.heappop(heap)
            if src not in self.gens or dst not in self.gens:
                continue
            if self.pivot_ok(src, dst) is None:
                continue
            cur_cost = (len(self.arrows[src]) - 1) * (len(self.arrows_in[dst]) - 1)
            if cur_cost > cost:
                heapq.heappush(heap, (cur_cost, src, dst))
                continue
            touched_src = list(self.arrows_in[dst])
            touched_dst = list(self.arrows[src].keys())
            self.cancel_arrow(src, dst)
            if validate:
                rep = self.check_structure()
                if not rep.ok:
                    raise AssertionError(f"cancellation broke the structure: {rep}")
            for i in touched_src:
                if i not in self.gens:
                    continue
                for j in self.arrows[i]:
                    if self.pivot_ok(i, j) is not None:
                        c2 = (len(self.arrows[i]) - 1) * (len(self.arrows_in[j]) - 1)
                        heapq.heappush(heap, (c2, i, j))
            for j in touched_dst:
                if j not in self.gens:
                    continue
                for i in self.arrows_in[j]:
                    if self.pivot_ok(i, j) is not None:
                        c2 = (len(self.arrows[i]) - 1) * (len(self.arrows_in[j]) - 1)
                        heapq.heappush(heap, (c2, i, j))
        return self

    def weight_zero_arrows(self):
        out = []
        for src, row in self.arrows.items():
            for dst, coef in row.items():
                for (x, y, w2, cf) in coef.terms:
                    if not any(w2) and not cf:
                        out.append((src, dst))
                        break
        return out

    # ------------------------------------------------------------------ dump

    def dump(self):
        lines = [f"# ambient {self.ambient}, upwards {sorted(self.upwards)}"]
        for gid in sorted(self.gens):
            g = self.gens[gid]
            lines.append(f"gen {gid} idem={state_str(g.idem)} delta={g.delta} alex={g.alex} ext={g.ext}")
        for src in sorted(self.arrows):
            for dst in sorted(self.arrows[src]):
                lines.append(f"arrow {src} -> {dst}: {self.arrows[src][dst]}")
        return "\n".join(lines)


def unit_structure(ring) -> StandardDStructure:
    """The type-D structure of the empty top slice (one generator)."""
    amb = Ambient(0, 0, [], ring)
    X = StandardDStructure(amb)
    X.add_gen(idem=0, delta=Fraction(0), alex=Fraction(0), ext=0, label=("top",))
    return X
