"""Bigraded complexes over R = F[U,V]/(UV) and the derived invariants.

The final pipeline output is a finitely generated free R-complex with
integer (Alexander, Maslov) bigradings; the differential entries are
c*U^s or c*V^t (never mixed).  Homology is computed per bigrading in a
finite Alexander window [min A - 1, max A + 1]: outside it the complex
is U- (resp. V-) periodic, so every invariant is visible inside.

tau and nu locate the U-non-torsion tower: nu = -max{ s : some class in
H(C)_s survives all powers of U }, tau the same for H(C/V); epsilon
compares with the dual complex.  Over Z the tower is detected by ranks
over Q, and torsion is reported from Smith normal forms per bigrading.
"""

from fractions import Fraction

from uvknot.alexander import LaurentPoly
from uvknot.rings import F2_RING, Fp, Ring, Z_RING


class BigradedComplex:
    def __init__(self, ring: Ring):
        self.ring = ring
        self.gens = {}       # gid -> (A, M, label)
        self.diff = {}       # src -> {dst: coeff}
        self._next = 0

    def add_gen(self, A: int, M: int, label=()):
        gid = self._next
        self._next += 1
        self.gens[gid] = (A, M, label)
        self.diff[gid] = {}
        return gid

    def add_diff(self, src, dst, coeff, s, t):
        """Differential term src -> coeff * U^s V^t * dst (s*t == 0)."""
        if s and t:
            return
        A1, M1, _ = self.gens[src]
        A2, M2, _ = self.gens[dst]
        # U has (A, M)-degree (-1, -2); V has (+1, 0)
        if A1 != A2 - s + t or M1 - 1 != M2 - 2 * s:
            raise ValueError(
                f"graded differential mismatch: ({A1},{M1}) -> U^{s}V^{t} ({A2},{M2})"
            )
        c0 = self.diff[src].get(dst, 0)
        c = self.ring.add(c0, coeff)
        if c:
            self.diff[src][dst] = c
        else:
            self.diff[src].pop(dst, None)

    def uv_power(self, src, dst):
        dA = self.gens[dst][0] - self.gens[src][0]
        return (dA, 0) if dA >= 0 else (0, -dA)

    def euler_characteristic(self) -> LaurentPoly:
        return LaurentPoly.make(
            ((A, 1 if M % 2 == 0 else -1) for (A, M, _) in self.gens.values())
        )

    def mirror_dual(self):
        """Mor(C, R): transposed differential, negated bigradings."""
        D = BigradedComplex(self.ring)
        m = {g: D.add_gen(-A, -M, ("*",) + tuple(lbl) if isinstance(lbl, tuple) else ("*", lbl))
             for g, (A, M, lbl) in sorted(self.gens.items())}
        for src, row in self.diff.items():
            for dst, c in row.items():
                D.diff[m[dst]][m[src]] = c
        return D

    def mod_p(self, p: int):
        ring = F2_RING if p == 2 else Fp(p)
        D = BigradedComplex(ring)
        m = {}
        for g, (A, M, lbl) in sorted(self.gens.items()):
            m[g] = D.add_gen(A, M, lbl)
        for src, row in self.diff.items():
            for dst, c in row.items():
                cc = ring.normalize(c)
                if cc:
                    D.diff[m[src]][m[dst]] = cc
        return D

    def check_d_squared(self):
        """d^2 = 0 exactly (UV = 0 kills mixed compositions)."""
        bad = []
        for x, row in self.diff.items():
            acc = {}
            for y, c1 in row.items():
                s1, t1 = self.uv_power(x, y)
                for z, c2 in self.diff[y].items():
                    s2, t2 = self.uv_power(y, z)
                    if (s1 + s2) and (t1 + t2):
                        continue  # U^a V^b = 0
                    acc[z] = self.ring.add(acc.get(z, 0), self.ring.mul(c1, c2))
            for z, c in acc.items():
                if c:
                    bad.append((x, z, c))
        return bad


# ----------------------------------------------------------- linear algebra


def _rref(rows, ncols, ring):
    """Row-reduce over a field (or Q when ring is Z: entries Fractions).

    Returns (pivot_cols, reduced_rows).
    """
    field_inv = (lambda a: Fraction(1) / a) if ring.char == 0 else ring.inv
    norm = (lambda a: a) if ring.char == 0 else ring.normalize
    rows = [list(map(norm, r)) for r in rows if any(norm(x) for x in r)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field_inv(rows[r][c])
        rows[r] = [norm(v * inv) if ring.char == 0 else ring.mul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                if ring.char == 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                else:
                    rows[i] = [ring.add(a, ring.mul(ring.neg(f), b)) for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == len(rows):
            break
    rows = [r_ for r_ in rows if any(r_)]
    return piv_cols, rows


def _rank(rows, ncols, ring):
    return len(_rref(rows, ncols, ring)[0])


def smith_normal_form(mat):
    """Diagonal of the Smith normal form of an integer matrix (exact)."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    r = c = 0
    while r < m and c < n:
        # find a nonzero pivot of minimal absolute value
        best = None
        for i in range(r, m):
            for j in range(c, n):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[r], a[bi] = a[bi], a[r]
        for row in a:
            row[c], row[bj] = row[bj], row[c]
        again = True
        while again:
            again = False
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        a[r], a[i] = a[i], a[r]
                        again = True
            for j in range(c + 1, n):
                col = [a[i][j] for i in range(m)]
                if a[r][j]:
                    q = a[r][j] // a[r][c]
                    for i in range(m):
                        a[i][j] -= q * a[i][c]
                    if a[r][j]:
                        for i in range(m):
                            a[i][c], a[i][j] = a[i][j], a[i][c]
                        again = True
                del col
        piv = abs(a[r][c])
        diag.append(piv)
        r += 1
        c += 1
    # normalize divisibility
    diag = [d for d in diag if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            if diag[i + 1] % diag[i]:
                import math

                g = math.gcd(diag[i], diag[i + 1])
                l = diag[i] * diag[i + 1] // g
                diag[i], diag[i + 1] = g, l
                changed = True
    return diag


# ----------------------------------------------------------- graded slices


class _Slice:
    """Basis of C in one Alexander grading: one element per generator."""

    def __init__(self, C: BigradedComplex, s: int):
        self.C = C
        self.s = s
        self.basis = []          # (gid, 'U'|'V', power)
        self.index = {}
        for gid in sorted(C.gens):
            A, M, _ = C.gens[gid]
            if A >= s:
                el = (gid, "U", A - s)
            else:
                el = (gid, "V", s - A)
            self.index[gid] = len(self.basis)
            self.basis.append(el)

    def maslov(self, i):
        gid, kind, p = self.basis[i]
        M = self.C.gens[gid][1]
        return M - 2 * p if kind == "U" else M

    def diff_matrix(self, drop_v=False):
        """Rows indexed by source basis elements."""
        n = len(self.basis)
        rows = [[0] * n for _ in range(n)]
        for i, (gid, kind, p) in enumerate(self.basis):
            if drop_v and kind == "V":
                continue
            for dst, c in self.C.diff[gid].items():
                s1, t1 = self.C.uv_power(gid, dst)
                if kind == "U":
                    if t1 and p > 0:
                        continue  # U^p V^t = 0
                    if drop_v and t1:
                        continue
                else:
                    if s1:
                        continue  # V^p U^s = 0
                j = self.index[dst]
                rows[i][j] = c
        return rows


def _window(C: BigradedComplex):
    if not C.gens:
        return 0, -1
    As = [A for (A, _, _) in C.gens.values()]
    return min(As) - 1, max(As) + 1


class GradedHomology:
    """Per-bigrading homology data of a complex over R (field or Z)."""

    def __init__(self, C: BigradedComplex, drop_v=False):
        self.C = C
        self.drop_v = drop_v
        self.ring = C.ring
        self.lo, self.hi = _window(C)
        self.slices = {}
        self._dims = None

    def slice(self, s):
        if s not in self.slices:
            self.slices[s] = _Slice(self.C, s)
        return self.slices[s]

    # field-or-Q hom computations per (s, M)
    def _blocks(self, s):
        """Split the slice complex at grading s by Maslov degree."""
        sl = self.slice(s)
        n = len(sl.basis)
        byM = {}
        for i in range(n):
            if self.drop_v and sl.basis[i][1] == "V":
                continue
            byM.setdefault(sl.maslov(i), []).append(i)
        D = sl.diff_matrix(self.drop_v)
        return sl, byM, D

    def dims(self):
        """dict (s, M) -> dimension (free rank over Z) within the window."""
        if self._dims is not None:
            return self._dims
        out = {}
        tors = {}
        for s in range(self.lo, self.hi + 1):
            sl, byM, D = self._blocks(s)
            for M, idxs in sorted(byM.items()):
                src = idxs                       # degree M
                tgt = byM.get(M - 1, [])         # degree M-1
                upr = byM.get(M + 1, [])
                d_here = [[D[i][j] for j in tgt] for i in src]
                d_above = [[D[i][j] for j in src] for i in upr]
                if self.ring.char == 0:
                    dh = [[Fraction(x) for x in r] for r in d_here]
                    da = [[Fraction(x) for x in r] for r in d_above]
                    r1 = _rank(dh, len(tgt), self.ring)
                    r2 = _rank(da, len(src), self.ring)
                    dim = len(src) - r1 - r2
                    diag = smith_normal_form(d_above) if d_above and src else []
                    t = [d for d in diag if d not in (0, 1)]
                    if t:
                        tors[(s, M)] = t
                else:
                    r1 = _rank(d_here, len(tgt), self.ring)
                    r2 = _rank(d_above, len(src), self.ring)
                    dim = len(src) - r1 - r2
                if dim:
                    out[(s, M)] = dim
        self._dims = out
        self.torsion = tors if self.ring.char == 0 else {}
        return out

    # ------------------------------------------------ U-tower detection

    def _cycle_space(self, s):
        """Basis of cycles in grading s (all Maslov degrees), as vectors."""
        sl = self.slice(s)
        n = len(sl.basis)
        D = sl.diff_matrix(self.drop_v)
        live = [i for i in range(n) if not (self.drop_v and sl.basis[i][1] == "V")]
        if self.ring.char == 0:
            rows = [[Fraction(D[i][j]) for j in range(n)] for i in live]
        else:
            rows = [[D[i][j] for j in range(n)] for i in live]
        piv, red = _rref(rows, n, self.ring)
        rank = len(piv)
        # kernel via standard complement: solve for free columns
        # build kernel basis of the row map x -> x.D  (vectors over live idx)
        m = len(live)
        cols = n
        # transpose system: we need x (len m) with sum x_i D[live_i] = 0
        tr = [[rows[i][j] for i in range(m)] for j in range(cols)]
        pivc, redc = _rref(tr, m, self.ring)
        freec = [j for j in range(m) if j not in pivc]
        kers = []
        for f in freec:
            vec = [0] * m
            vec[f] = 1
            for ri, pc in zip(redc, pivc):
                val = ri[f]
                if val:
                    vec[pc] = -val if self.ring.char == 0 else self.ring.neg(val)
            kers.append(vec)
        # lift back to full-length vectors
        out = []
        for v in kers:
            full = [0] * n
            for li, x in zip(live, v):
                full[li] = x
            out.append(full)
        return out

    def _boundary_rows(self, s):
        sl = self.slice(s)
        n = len(sl.basis)
        D = sl.diff_matrix(self.drop_v)
        live = [i for i in range(n) if not (self.drop_v and sl.basis[i][1] == "V")]
        if self.ring.char == 0:
            return [[Fraction(D[i][j]) for j in range(n)] for i in live]
        return [[D[i][j] for j in range(n)] for i in live]

    def _u_map_vec(self, s, vec):
        """Multiply a chain vector at grading s by U (lands at s-1).

        U kills every V-power (UV = 0) and shifts U-powers up by one;
        in the per-generator slice encoding the latter is the identity
        on coordinates.
        """
        sl = self.slice(s)
        sl2 = self.slice(s - 1)
        out = [0] * len(sl2.basis)
        for i, x in enumerate(vec):
            if not x:
                continue
            gid, kind, p = sl.basis[i]
            if kind == "U":
                out[sl2.index[gid]] = x
        return out

    def nu(self):
        """-max{ s : H_s contains a class surviving every power of U }."""
        dims = self.dims()
        if not dims and not self.C.gens:
            raise ValueError("empty complex")
        s0 = self.lo
        for s in range(self.hi, self.lo - 1, -1):
            if self._tower_visible(s, s0):
                return -s
        raise ValueError("no U-tower found (localization rank != 1?)")

    def _tower_visible(self, s, s0):
        cycles = self._cycle_space(s)
        if not cycles:
            return False
        vecs = cycles
        for t in range(s, s0, -1):
            vecs = [self._u_map_vec(t, v) for v in vecs]
        # survivors modulo boundaries at s0
        bnd = self._boundary_rows(s0)
        n = len(self.slice(s0).basis)
        base_rank = _rank(bnd, n, self.ring)
        full_rank = _rank(bnd + vecs, n, self.ring)
        return full_rank > base_rank


class Invariants:
    """Bundle of the derived numerical invariants of one complex."""

    def __init__(self, hfk, torsion, alexander, tau, nu, epsilon, nu_p=None):
        self.hfk = hfk
        self.torsion = torsion
        self.alexander = alexander
        self.tau = tau
        self.nu = nu
        self.epsilon = epsilon
        self.nu_p = nu_p or {}

    def to_json(self):
        return {
            "hfk_hat": [
                {"a": a, "m": m, "dim": d, "torsion": self.torsion.get((a, m), [])}
                for (a, m), d in sorted(self.hfk.items())
            ],
            "alexander": {str(e): c for e, c in sorted(self.alexander.items())},
            "tau": self.tau,
            "nu": self.nu,
            "epsilon": self.epsilon,
            "nu_p": {str(p): v for p, v in sorted(self.nu_p.items())},
        }


def hfk_hat(C: BigradedComplex):
    """Homology of C/(U = V = 0): dims (and torsion over Z) per (A, M)."""
    ring = C.ring
    byAM = {}
    for gid, (A, M, _) in C.gens.items():
        byAM.setdefault(A, []).append(gid)
    dims = {}
    torsion = {}
    for A, gids in sorted(byAM.items()):
        byM = {}
        for g in gids:
            byM.setdefault(C.gens[g][1], []).append(g)
        for M, src in sorted(byM.items()):
            tgt = byM.get(M - 1, [])
            upr = byM.get(M + 1, [])
            # scalar part of the differential only (U = V = 0)
            def scal(rows_from, cols_to):
                return [
                    [C.diff[x].get(y, 0) if C.uv_power(x, y) == (0, 0) else 0 for y in cols_to]
                    for x in rows_from
                ]
            d_here = scal(src, tgt)
            d_above = scal(upr, src)
            if ring.char == 0:
                r1 = _rank([[Fraction(v) for v in r] for r in d_here], len(tgt), ring)
                r2 = _rank([[Fraction(v) for v in r] for r in d_above], len(src), ring)
                diag = smith_normal_form(d_above) if upr else []
                tors = [d for d in diag if d not in (0, 1)]
                if tors:
                    torsion[(A, M)] = tors
            else:
                r1 = _rank(d_here, len(tgt), ring)
                r2 = _rank(d_above, len(src), ring)
            dim = len(src) - r1 - r2
            if dim:
                dims[(A, M)] = dim
    return dims, torsion


def alexander_polynomial(C: BigradedComplex) -> LaurentPoly:
    return C.euler_characteristic()


def tau(C: BigradedComplex) -> int:
    return GradedHomology(C, drop_v=True).nu()


def nu(C: BigradedComplex) -> int:
    return GradedHomology(C, drop_v=False).nu()


def epsilon(C: BigradedComplex) -> int:
    D = C.mirror_dual()
    return (tau(C) - nu(C)) - (tau(D) - nu(D))


def nu_p(C: BigradedComplex, p: int) -> int:
    if C.ring.char != 0:
        raise ValueError("nu_p needs an integral complex")
    return nu(C.mod_p(p))


def invariants(C: BigradedComplex, primes=()) -> Invariants:
    hfk, torsion = hfk_hat(C)
    inv = Invariants(
        hfk,
        torsion,
        alexander_polynomial(C),
        tau(C),
        nu(C),
        epsilon(C),
        {p: nu_p(C, p) for p in primes} if C.ring.char == 0 else {},
    )
    return inv


def homology_dims(C: BigradedComplex):
    """Bigraded dims of H(C) in the stable Alexander window, plus torsion."""
    G = GradedHomology(C)
    dims = G.dims()
    return dims, getattr(G, "torsion", {})
