"""Homological-perturbation oracle for the c = 1 minimum.

This is the alternative construction of the minimum bimodule: a big DA
bimodule with type-D generating set { X.a, Y.a : a in Gamma } for
Gamma = { R2 U2^t, U2^(n>0), L1 U1^t, U1^t }, a differential X.a ->
Y.U2a, Y.a -> X.U1a, the evident right module action, and the special
C-pair actions.  Contracting everything outside the span of X.L1 and
Y.R2 with the homotopy h (dividing by U1 resp. U2) induces the minimum's
operations; summing over curvature insertions gives its gamma
operations.

Used as an independent oracle for the closed-form evaluator in
uvknot.bimodules.MinBim (acceptance criterion: agreement at small
weight).  Unsigned (F2) by design.
"""

from uvknot import kernel
from uvknot.algebra import Ambient


def _zeta_inv(state):
    """Map a min-1 state (containing 1, not 0) to the output B2 state."""
    return state >> 3 << 1 | ((state >> 2) & 1)


class MinModelOracle:
    def __init__(self, in_amb: Ambient):
        if in_amb.ring.char != 2:
            raise ValueError("oracle is mod-2 only")
        self.in_amb = in_amb
        if (1, 2) in in_amb.matching:
            raise ValueError("minimum at a matched pair")
        self.alpha = in_amb.partner[1] - 2
        self.beta = in_amb.partner[2] - 2
        out_matching = [(min(self.alpha, self.beta), max(self.alpha, self.beta))]
        for p, q in in_amb.matching:
            if 1 in (p, q) or 2 in (p, q):
                continue
            out_matching.append((p - 2, q - 2))
        self.out_amb = Ambient(in_amb.n - 1, in_amb.k - 1, out_matching, in_amb.ring)
        self.c1_bit = 1 << in_amb.pair_index[tuple(sorted((1, in_amb.partner[1])))]
        self.c2_bit = 1 << in_amb.pair_index[tuple(sorted((2, in_amb.partner[2])))]

    # ---------------------------------------------------------- generators
    # gen = (xi, shape, t, rstate); shapes: "L1", "R2", "U1", "U2"
    # element: xi * shape * U^t from lstate(gen) to rstate.

    def lstate(self, gen):
        xi, shape, t, r = gen
        if shape == "L1":
            return (r & ~1) | 2
        if shape == "R2":
            return (r & ~4) | 2
        return r

    def out_idem(self, gen):
        return _zeta_inv(self.lstate(gen))

    def split(self, xi, key):
        """Write a Blg-element key (from a state with min 1) as b2 * a'.

        Returns (b2key, gen') or None when the element dies in the model
        module.  b2key lives in the output algebra.
        """
        (lst, rst, w2, cf) = key
        if not kernel.is_nonzero(2 * self.in_amb.n, lst, rst, w2):
            return None
        if cf & (self.c1_bit | self.c2_bit):
            return None
        w1, w2_ = w2[0], w2[1]
        if rst & 1:
            # local {0...}: L1-shaped
            if w2_ or w1 % 2 == 0:
                return None
            shape, t = "L1", (w1 - 1) // 2
            mid = (rst & ~1) | 2
        elif (rst >> 2) & 1 and not (rst >> 1) & 1:
            if w1 or w2_ % 2 == 0:
                return None
            shape, t = "R2", (w2_ - 1) // 2
            mid = (rst & ~4) | 2
        else:
            if w1 and w2_:
                return None
            if w2_:
                if w2_ % 2:
                    return None
                shape, t = "U2", w2_ // 2
                if t == 0:
                    shape = "U1"
            else:
                if w1 % 2:
                    return None
                shape, t = "U1", w1 // 2
            mid = rst
        b2 = (
            _zeta_inv(lst),
            _zeta_inv(mid),
            tuple(w2[2:]),
            self._shift_cf(cf),
        )
        if not kernel.is_nonzero(2 * self.out_amb.n, b2[0], b2[1], b2[2]):
            return None
        return b2, (xi, shape, t, rst)

    def _shift_cf(self, cf):
        out = 0
        rem = cf
        while rem:
            low = rem & -rem
            rem ^= low
            p, q = self.in_amb.matching[low.bit_length() - 1]
            out |= 1 << self.out_amb.pair_index[(p - 2, q - 2)]
        return out

    def _mul_right(self, gen, key):
        """gen * key as a sum (here: 0 or 1 term) of b2 (x) gen'."""
        xi, shape, t, r = gen
        (x2, y2, w2b, cfb) = key
        if x2 != r:
            return None
        lst = self.lstate(gen)
        if shape == "L1":
            aw = [1 + 2 * t, 0]
        elif shape == "R2":
            aw = [0, 1 + 2 * t]
        elif shape == "U1":
            aw = [2 * t, 0]
        else:
            aw = [0, 2 * t]
        w2 = tuple(
            (aw[j] if j < 2 else 0) + w2b[j] for j in range(2 * self.in_amb.n)
        )
        return self.split(xi, (lst, y2, w2, cfb))

    # ------------------------------------------------------------ delta ops

    def delta(self, gen, seq):
        """delta^1_(1+len(seq)) of the big model on a standard sequence.

        Entries of seq are pure keys of the incoming algebra; bare C1/C2
        factors trigger the special actions.  Returns [(b2key, gen')].
        """
        xi, shape, t, r = gen
        n2 = 2 * self.in_amb.n
        zero_in = (0,) * n2
        if len(seq) == 0:
            # differential: X.a -> Y.(U2 a), Y.a -> X.(U1 a)
            other = "Y" if xi == "X" else "X"
            j = 1 if xi == "X" else 0
            w2 = tuple(2 if k == j else 0 for k in range(n2))
            res = self.split(other, self._elt_key(gen, extra=w2))
            return [res] if res else []
        if len(seq) == 1:
            key = seq[0]
            cf = key[3]
            if cf and not any(key[2]) and bin(cf).count("1") == 1:
                # bare C entry
                if cf == self.c1_bit and xi == "X":
                    out_w = tuple(
                        2 if j + 1 == self.alpha else 0
                        for j in range(2 * self.out_amb.n)
                    )
                    z = self.out_idem(gen)
                    b2 = (z, z, out_w, 0)
                    if kernel.is_nonzero(2 * self.out_amb.n, z, z, out_w):
                        return [(b2, ("Y", shape, t, r))]
                    return []
                if cf == self.c2_bit and xi == "Y":
                    out_w = tuple(
                        2 if j + 1 == self.beta else 0
                        for j in range(2 * self.out_amb.n)
                    )
                    z = self.out_idem(gen)
                    b2 = (z, z, out_w, 0)
                    if kernel.is_nonzero(2 * self.out_amb.n, z, z, out_w):
                        return [(b2, ("X", shape, t, r))]
                    return []
                if cf & (self.c1_bit | self.c2_bit):
                    return []
            res = self._mul_right(gen, key)
            return [res] if res else []
        if len(seq) == 2:
            k1, k2 = seq
            bare = (
                not any(k1[2]) and not any(k2[2])
                and bin(k1[3]).count("1") == 1 and bin(k2[3]).count("1") == 1
            )
            if bare and xi == "X" and k1[3] == self.c1_bit and k2[3] == self.c2_bit:
                z = self.out_idem(gen)
                cf_out = 1 << self.out_amb.pair_index[
                    (min(self.alpha, self.beta), max(self.alpha, self.beta))
                ]
                return [((z, z, (0,) * (2 * self.out_amb.n), cf_out), gen)]
            if bare and xi == "Y" and k1[3] == self.c2_bit and k2[3] == self.c1_bit:
                z = self.out_idem(gen)
                cf_out = 1 << self.out_amb.pair_index[
                    (min(self.alpha, self.beta), max(self.alpha, self.beta))
                ]
                return [((z, z, (0,) * (2 * self.out_amb.n), cf_out), gen)]
            return []
        return []

    def _elt_key(self, gen, extra):
        xi, shape, t, r = gen
        lst = self.lstate(gen)
        if shape == "L1":
            aw = [1 + 2 * t, 0]
        elif shape == "R2":
            aw = [0, 1 + 2 * t]
        elif shape == "U1":
            aw = [2 * t, 0]
        else:
            aw = [0, 2 * t]
        w2 = tuple(
            (aw[j] if j < 2 else 0) + extra[j] for j in range(2 * self.in_amb.n)
        )
        return (lst, r, w2, 0)

    def h(self, gen):
        """Divide by U1 (on X generators) or U2 (on Y generators)."""
        xi, shape, t, r = gen
        if xi == "X" and shape in ("U1", "L1") and t >= 1:
            return ("Y", shape, t - 1, r)
        if xi == "Y" and shape in ("U2", "R2") and t >= 1:
            return ("X", shape, t - 1, r)
        return None

    def in_Q(self, gen):
        xi, shape, t, r = gen
        return (xi == "X" and shape == "L1" and t == 0) or (
            xi == "Y" and shape == "R2" and t == 0
        )

    # ------------------------------------------------- transferred operations

    def transferred_delta(self, q, seq, weight_cap=12):
        """Induced operation on Q = span(X.L1, Y.R2) via perturbation.

        q = ('XL1'|'YR2', rstate); seq a standard sequence of keys.
        Returns a dict (b2key, q') -> coeff (mod 2).
        """
        xi = "X" if q[0] == "XL1" else "Y"
        shape = "L1" if xi == "X" else "R2"
        start = (xi, shape, 0, q[1])
        out = {}

        def rec(gen, idx, coeff_chain, first):
            # apply one more operation node consuming seq[idx:j]; the bare
            # differential never appears as a node (deformation-retract side
            # conditions), so blocks are nonempty
            for j in range(idx + 1, len(seq) + 1):
                block = seq[idx:j]
                for b2, gen2 in self.delta(gen, list(block)):
                    if sum(b2[2]) > weight_cap:
                        continue
                    chain = coeff_chain + [b2]
                    if j == len(seq) and self.in_Q(gen2):
                        key = self._mul_chain(chain)
                        if key is not None:
                            lab = ("XL1" if gen2[0] == "X" else "YR2", gen2[3])
                            kk = (key, lab)
                            out[kk] = out.get(kk, 0) ^ 1
                    nxt = self.h(gen2)
                    if nxt is not None:
                        rec(nxt, j, chain, False)

        rec(start, 0, [], True)
        return {k: v for k, v in out.items() if v}

    def _mul_chain(self, chain):
        cur = chain[0]
        for key in chain[1:]:
            x1, y1, w2a, cf1 = cur
            x2, y2, w2b, cf2 = key
            if y1 != x2 or (cf1 & cf2):
                return None
            w2 = kernel.mul_w2(2 * self.out_amb.n, x1, y1, w2a, x2, y2, w2b)
            if w2 is None:
                return None
            cur = (x1, y2, w2, cf1 | cf2)
        return cur

    def gamma(self, q, betas, weight_cap=12):
        """Curvature-summed transferred operation (mod 2)."""
        n2 = 2 * self.in_amb.n
        zero = (0,) * n2
        npairs = len(self.in_amb.matching)
        out = {}

        # need arbitrarily many insertions: iterate by count
        def all_aug(seq, maxins):
            frontier = [seq]
            seen = {tuple(seq)}
            yield seq
            for _ in range(maxins):
                nxt = []
                for s in frontier:
                    for pos in range(len(s) + 1):
                        st = q[1] if pos == 0 else s[pos - 1][1]
                        if pos < len(s) and s[pos][0] != st:
                            continue
                        for pidx in range(npairs):
                            key = (st, st, zero, 1 << pidx)
                            s2 = s[:pos] + [key] + s[pos:]
                            t2 = tuple(s2)
                            if t2 not in seen:
                                seen.add(t2)
                                nxt.append(s2)
                                yield s2
                frontier = nxt
        total_w = sum(sum(b[2]) for b in betas)
        maxins = total_w // 1 + 4
        for aug in all_aug(list(betas), maxins):
            for kk, c in self.transferred_delta(q, aug, weight_cap).items():
                out[kk] = out.get(kk, 0) ^ c
        return {k: v for k, v in out.items() if v}
