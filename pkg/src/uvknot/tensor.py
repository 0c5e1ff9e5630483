"""Box tensor products of slice evaluators with standard structures, and
the full diagram pipeline.

The tensor of a slice bimodule Y against a standard structure X sums
the bimodule's curvature-summed operations over epsilon paths of X:

    delta(q (x) x) = sum over epsilon paths x -> x' of gamma(q, path) (x) x'

(all Koszul signs live inside gamma).  The output curvature diagonal
-(sum of C) emitted by gamma0 is checked and stripped; everything else
must be C-free, which is asserted.

A negative crossing is applied through duality: Neg (x) X is the
transpose-dual of Pos (x) dual(X), which is the definition of the
negative-crossing bimodule as an opposite module.  A minimum at c > 1
is applied as Min^{c-1} (x) Pos^c (x) Pos^{c-1}.
"""

from fractions import Fraction

from uvknot.algebra import Ambient, AlgebraElement
from uvknot.bimodules import CrossBim, MaxBim, MinBim
from uvknot.dstructure import StandardDStructure, unit_structure
from uvknot.diagram import OrientedDiagram
from uvknot.gradconst import TERMIN_BASE
from uvknot.homology import BigradedComplex


class PipelineError(RuntimeError):
    pass


def dualize(X: StandardDStructure) -> StandardDStructure:
    """Transpose arrows and reverse Op on coefficients; negate gradings.

    The dual of a standard structure is standard over the same algebra
    (Op fixes idempotents, weights and C's; epsilon arrows are C-free).
    """
    out = StandardDStructure(X.ambient, X.upwards)
    gid_map = {}
    for gid in sorted(X.gens):
        g = X.gens[gid]
        gid_map[gid] = out.add_gen(g.idem, -g.delta, -g.alex, g.ext, ("*",) + g.label)
    for src in sorted(X.arrows):
        for dst, coef in X.arrows[src].items():
            flipped = AlgebraElement(out.ambient)
            for (x, y, w2, cf), c in coef.terms.items():
                flipped.terms[(y, x, w2, cf)] = c
            out.add_arrow(gid_map[dst], gid_map[src], flipped)
    return out


def box_tensor(bim, X: StandardDStructure, up_out=frozenset(), check=False,
               restrict_idem=True) -> StandardDStructure:
    """Apply a gamma-evaluator slice bimodule to a standard structure."""
    out = StandardDStructure(bim.out_amb, frozenset(up_out))
    ring = bim.out_amb.ring
    n_out = 2 * bim.out_amb.n
    gid_map = {}
    for xid in sorted(X.gens):
        xg = X.gens[xid]
        for q in bim.pair(xg.idem):
            if restrict_idem and n_out and (
                (q.out_idem & 1) or (q.out_idem >> n_out) & 1
            ):
                continue
            gid_map[(q.key(), xid)] = out.add_gen(
                q.out_idem,
                xg.delta + q.ddelta,
                xg.alex + q.dalex,
                (xg.ext + q.dext) & 1,
                (q.label, xid),
            )
    # curvature diagonal we expect gamma0 to produce on every generator
    curv_pairs = frozenset(range(len(bim.out_amb.matching)))
    for (qkey, xid), ngid in sorted(gid_map.items()):
        gen = qkey
        seen_curv = set()

        def emit(terms, end_xid, path_coef=1):
            for coef, key, gen2 in terms:
                x, y, w2, cf = key
                c = ring.mul(coef, path_coef)
                if not c:
                    continue
                tgt = gid_map.get((gen2, end_xid))
                if cf:
                    # must be exactly one curvature diagonal term -C_p
                    if (
                        tgt == ngid
                        and x == y
                        and not any(w2)
                        and bin(cf).count("1") == 1
                        and ring.normalize(c + 1) == 0
                    ):
                        seen_curv.add(cf.bit_length() - 1)
                        continue
                    raise PipelineError(
                        f"unexpected C-carrying gamma output {key} at {qkey}"
                    )
                if tgt is None:
                    # target pruned by the idempotent restriction: must vanish
                    raise PipelineError(
                        f"gamma output to pruned generator {gen2} at {qkey}"
                    )
                el = AlgebraElement(out.ambient)
                el.terms[key] = c
                out.add_arrow(ngid, tgt, el)

        emit(bim.gamma0(gen), xid)
        if seen_curv != curv_pairs:
            raise PipelineError(
                f"curvature diagonal mismatch at {qkey}: {seen_curv} vs {curv_pairs}"
            )
        # epsilon paths (the arrow digraph is acyclic in a graded structure)
        maxlen = getattr(bim, "max_inputs", 2)

        def dfs(cur_xid, betas, coef_acc, depth):
            if betas:
                for terms_coef, key, gen2 in bim.gamma(gen, betas):
                    emit([(terms_coef, key, gen2)], cur_xid, coef_acc)
            if maxlen is not None and depth >= maxlen:
                return
            if not bim.prefix_ok(gen, betas):
                return
            for nxt in sorted(X.arrows.get(cur_xid, ())):
                coef = X.arrows[cur_xid][nxt]
                for key, c in sorted(coef.terms.items()):
                    dfs(nxt, betas + [key], ring.mul(coef_acc, c), depth + 1)

        dfs(xid, [], 1, 0)
    if check:
        rep = out.check_structure()
        if not rep.ok:
            raise PipelineError(f"box tensor output invalid:\n{rep}")
    return out


def _complement_up(upwards, n2):
    return frozenset(range(1, n2 + 1)) - frozenset(upwards)


def apply_crossing(X, i, positive, up_out, check=False):
    if positive:
        bim = CrossBim(X.ambient, i, True, up_out)
        return box_tensor(bim, X, up_out, check=check)
    Xd = dualize(X)
    bim = CrossBim(Xd.ambient, i, True, up_out)
    Y = box_tensor(bim, Xd, up_out, check=check)
    return dualize(Y)


def apply_max(X, c, up_out, check=False):
    left_up = c in up_out
    bim = MaxBim(X.ambient, c, left_up)
    return box_tensor(bim, X, up_out, check=check)


def apply_min(X, c, up_above, up_out, check=False, reducer=None):
    """A minimum at position c, via Min^1 or the sliding composition."""
    n2 = 2 * X.ambient.n

    def tau_set(s, i):
        return frozenset(i + 1 if p == i else i if p == i + 1 else p for p in s)

    cur = X
    up = frozenset(up_above)
    cc = c
    while cc > 1:
        up1 = tau_set(up, cc - 1)
        cur = apply_crossing(cur, cc - 1, True, up1, check=check)
        if reducer:
            cur = reducer(cur)
        up2 = tau_set(up1, cc)
        cur = apply_crossing(cur, cc, True, up2, check=check)
        if reducer:
            cur = reducer(cur)
        up = up2
        cc -= 1
    left_up = 1 in up
    bim = MinBim(cur.ambient, left_up)
    out = box_tensor(bim, cur, up_out, check=check)
    return out


def apply_terminal_min(X: StandardDStructure, strand1_up: bool) -> BigradedComplex:
    """Close off with the terminal minimum: land in F[U,V]/(UV)."""
    amb = X.ambient
    if amb.n != 1 or amb.k != 1:
        raise PipelineError("terminal minimum needs a 2-strand slice")
    ring = amb.ring
    C = BigradedComplex(ring)
    base = TERMIN_BASE[strand1_up]
    gid_map = {}
    for gid in sorted(X.gens):
        g = X.gens[gid]
        if g.idem != 0b010:
            raise PipelineError("final structure not supported on the middle idempotent")
        alex = g.alex
        maslov = g.delta + base + alex
        if alex.denominator != 1 or maslov.denominator != 1:
            raise PipelineError(
                f"non-integral final bigrading (A={g.alex}, M={maslov}) on {g.label}"
            )
        gid_map[gid] = C.add_gen(int(alex), int(maslov), g.label)
    for src in sorted(X.arrows):
        for dst, coef in X.arrows[src].items():
            for (x, y, w2, cf), c in coef.terms.items():
                if cf:
                    raise PipelineError("C-factor arrow at the terminal slice")
                s, t = w2[0] // 2, w2[1] // 2
                if w2[0] % 2 or w2[1] % 2:
                    raise PipelineError("half-weight arrow at the terminal slice")
                if s and t:
                    continue  # u^2s v^2t = 0 in F[u,v]/(uv)
                if not strand1_up:
                    s, t = t, s
                C.add_diff(gid_map[src], gid_map[dst], c, s, t)
    return C


def pipeline(
    od: OrientedDiagram,
    ring,
    interleave_reduce=True,
    check=False,
    stats=None,
    validate_each=False,
):
    """Fold the diagram's events into the final complex over F[U,V]/(UV)."""
    X = unit_structure(ring)

    def reducer(S):
        if interleave_reduce:
            S.reduce(validate=validate_each)
        return S

    events = od.diagram.events
    for idx, e in enumerate(events):
        below = od.slices[idx + 1]
        up_out = below.upwards
        if e.kind == "max":
            X = apply_max(X, e.pos, up_out, check=check)
        elif e.kind == "min":
            above = od.slices[idx]
            X = apply_min(X, e.pos, above.upwards, up_out, check=check, reducer=reducer)
        else:
            # The slice bimodule is assigned by the geometric crossing type
            # (which strand passes over), independently of orientation; the
            # orientation only enters the grading offsets.
            positive = e.kind == "o"
            X = apply_crossing(X, e.pos, positive, up_out, check=check)
        X = reducer(X)
        if stats is not None:
            stats.append(
                {
                    "event": f"{e.kind} {e.pos}",
                    "generators": X.gen_count(),
                    "arrows": X.arrow_count(),
                }
            )
    return apply_terminal_min(X, od.bottom_strand1_up())
