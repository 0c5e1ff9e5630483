"""Direct A-infinity relation checker for the slice bimodule evaluators.

Verifies, over small algebras and bounded weights, that the raw delta
operations of an evaluator satisfy the (signed) DA bimodule relations

  0 = (d ∘ delta_i) + (-1)^(i-1) sum_j delta_i(.., d b_j, ..)
      + sum_j (-1)^j delta_(i-1)(.., b_j b_(j+1), ..)
      + sum_(splits) (-1)^((|a1|+j)(i-j+1)) (a1 a2) (x) -

exactly as elements of the outgoing algebra.  This is the gold-standard
test for the transcription of the local crossing tables and their signs.
"""

from itertools import combinations

from uvknot import kernel
from uvknot.algebra import Ambient, pure, differential, AlgebraElement


def pure_keys(amb: Ambient, max_w2: int, max_c: int = 1, standard_only=False):
    """All nonzero pure-element keys with bounded doubled weight / C-count.

    With ``standard_only`` the C-carrying keys are restricted to bare
    single C_p factors (the entries of standard sequences); these are
    the only C-inputs the curvature-summed operations ever consume.
    """
    out = []
    states = amb.states()
    npairs = len(amb.matching)
    cf_masks = [0]
    for r in range(1, max_c + 1):
        for combo in combinations(range(npairs), r):
            m = 0
            for idx in combo:
                m |= 1 << idx
            cf_masks.append(m)
    if standard_only:
        for x in states:
            for p in range(npairs):
                out.append((x, x, amb.zero_w2(), 1 << p))
        cf_masks = [0]

    def weights(total):
        def rec(i, left):
            if i == amb.strands:
                yield ()
                return
            for t in range(left + 1):
                for rest in rec(i + 1, left - t):
                    yield (t,) + rest
        return rec(0, total)

    for x in states:
        for y in states:
            base = kernel.min_w2(x, y, amb.strands)
            room = max_w2 - sum(base)
            if room < 0:
                continue
            for extra in weights(room):
                if any(e % 2 for e in extra):
                    continue
                w2 = tuple(a + b for a, b in zip(base, extra))
                if not kernel.is_nonzero(amb.strands, x, y, w2):
                    continue
                for cf in cf_masks:
                    out.append((x, y, w2, cf))
    return out


def mul_keys(amb: Ambient, k1, k2):
    """Product of two pure keys: (coeff, key) or None."""
    x1, y1, w2a, cf1 = k1
    x2, y2, w2b, cf2 = k2
    if y1 != x2 or (cf1 & cf2):
        return None
    w2 = kernel.mul_w2(amb.strands, x1, y1, w2a, x2, y2, w2b)
    if w2 is None:
        return None
    c = 1
    if amb.ring.char != 2 and kernel.csign(cf1, cf2):
        c = -1
    return (c, (x1, y2, w2, cf1 | cf2))


def diff_key(amb: Ambient, key):
    """Differential of a pure key as a list of (coeff, key)."""
    el = AlgebraElement(amb)
    el.terms[key] = 1
    return [(c, k) for k, c in differential(el).terms.items()]


def check_crossing_relations(bim, max_w2=3, max_c=1, max_inputs=2, report_limit=12,
                             gen_ext=None):
    """Run the DA relations for a slice evaluator; returns violations."""
    amb = bim.in_amb
    ring = amb.ring
    standard_only = getattr(bim, "standard_inputs_only", False)
    if gen_ext is None:
        ext_table = {}
        for st in amb.states():
            for g in bim.pair(st):
                ext_table[g.key()] = g.dext
        gen_ext = lambda gen: ext_table.get(gen, 0)
    keys = pure_keys(amb, max_w2, max_c, standard_only=standard_only)
    by_left = {}
    for k in keys:
        by_left.setdefault(k[0], []).append(k)

    def deltas(gen, seq):
        if len(seq) == 0:
            return bim.delta1(gen)
        if len(seq) == 1:
            return bim.delta2(gen, seq[0])
        if len(seq) == 2:
            return bim.delta3(gen, seq[0], seq[1])
        return []

    violations = []

    def run_case(gen, seq):
        i = len(seq) + 1
        acc = {}

        def bump(tgt, key, c):
            c = ring.normalize(c)
            if not c:
                return
            kk = (tgt, key)
            s = ring.add(acc.get(kk, 0), c)
            if s:
                acc[kk] = s
            else:
                acc.pop(kk, None)

        # (a) differential of outputs
        for c, okey, g2 in deltas(gen, seq):
            for dc, dkey in diff_key(bim.out_amb, okey):
                bump(g2, dkey, ring.mul(c, dc))
        # (b) differential of inputs: sign -(-1)^(j-1) * (-1)^{|x| + sum of
        # degrees of the inputs the differential moves past}
        gext = gen_ext(gen)
        for j in range(len(seq)):
            prefix_ext = sum(bin(seq[l][3]).count("1") for l in range(j)) & 1
            for dc, dkey in diff_key(amb, seq[j]):
                seq2 = list(seq)
                seq2[j] = dkey
                for c, okey, g2 in deltas(gen, seq2):
                    s = ring.mul(dc, c)
                    if (j + 1 + gext + prefix_ext) % 2:
                        s = ring.neg(s)
                    bump(g2, okey, s)
        # (c) multiplications of consecutive inputs
        for j in range(len(seq) - 1):
            prod = mul_keys(amb, seq[j], seq[j + 1])
            if prod is None:
                continue
            pc, pkey = prod
            seq2 = list(seq[:j]) + [pkey] + list(seq[j + 2:])
            for c, okey, g2 in deltas(gen, seq2):
                s = ring.mul(pc, c)
                if (j + 1) % 2:
                    s = ring.neg(s)
                bump(g2, okey, s)
        # (d) compositions: sign (-1)^(j(i-j) + |a1|) from the primed-delta
        # twist plus the Koszul commutation of the second delta past a1
        for j in range(1, i + 1):
            pre, post = seq[: j - 1], seq[j - 1:]
            for c1, k1, g_mid in deltas(gen, pre):
                for c2, k2, g_out in deltas(g_mid, post):
                    prod = mul_keys(bim.out_amb, k1, k2)
                    if prod is None:
                        continue
                    pc, pkey = prod
                    ext1 = bin(k1[3]).count("1") & 1
                    sgn = (-1) ** ((j * (i - j) + ext1 * (i - j + 1)) & 1)
                    bump(g_out, pkey, ring.mul(ring.mul(c1, c2), sgn * pc))
        for (tgt, key), c in acc.items():
            violations.append((gen, tuple(seq), tgt, key, c))
            if len(violations) >= report_limit:
                raise StopIteration

    try:
        for st in amb.states():
            for gen in bim.pair(st):
                g = gen.key()
                run_case(g, [])
                if max_inputs >= 1:
                    for b1 in by_left.get(st, ()):
                        run_case(g, [b1])
                        if max_inputs >= 2:
                            for b2 in by_left.get(b1[1], ()):
                                if sum(b1[2]) + sum(b2[2]) > max_w2 + 2:
                                    continue
                                run_case(g, [b1, b2])
                                if max_inputs >= 3:
                                    for b3 in by_left.get(b2[1], ()):
                                        if (sum(b1[2]) + sum(b2[2]) + sum(b3[2])
                                                > max_w2):
                                            continue
                                        run_case(g, [b1, b2, b3])
    except StopIteration:
        pass
    return violations
