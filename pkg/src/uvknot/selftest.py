"""Programmatic self-test suites, exposed through the CLI.

``fast`` exercises the main invariants on small knots plus the kernel
certification at low weight; ``full`` adds the signed relation checks,
the minimum-model oracle comparison and the larger corpus.
"""

import time

from uvknot import kernel, oracle
from uvknot.algebra import Ambient
from uvknot.corpus import corpus_names, knot, variants
from uvknot.diagram import kauffman_state_count, orient
from uvknot.homology import hfk_hat, invariants
from uvknot.rings import F2_RING, Z_RING
from uvknot.tensor import pipeline


def run_selftest(level="fast", echo=print):
    ok = True

    def report(name, passed, detail=""):
        nonlocal ok
        ok = ok and passed
        echo(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))

    t0 = time.time()
    # kernel vs brute-force oracle
    bound = 6 if level == "fast" else 8
    bad = 0
    for n, k in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        tab = oracle.nonzero_table(2 * n, k, bound)
        for (x, y, w2), alive in tab.items():
            if kernel.is_nonzero(2 * n, x, y, w2) != alive:
                bad += 1
    report("nonzero-kernel vs relation-quotient oracle", bad == 0, f"{bad} mismatches")

    # corpus invariants: Kauffman counts, Euler characteristic, unknotting bounds
    from uvknot.alexander import alexander_polynomial

    names = ["unknot", "trefoil", "trefoil_mirror", "figure8"]
    if level == "full":
        names = corpus_names()
    for name in names:
        d = knot(name)
        od = orient(d)
        C = pipeline(od, F2_RING)
        inv = invariants(C)
        chi_ok = dict(inv.alexander) == dict(alexander_polynomial(d))
        report(f"{name}: Euler characteristic vs Fox oracle", chi_ok)
        C2 = pipeline(od, F2_RING, interleave_reduce=False)
        report(f"{name}: pre-reduction generators = Kauffman states",
               len(C2.gens) == kauffman_state_count(d),
               f"{len(C2.gens)} vs {kauffman_state_count(d)}")
        report(f"{name}: tau <= nu", inv.tau <= inv.nu, f"{inv.tau} vs {inv.nu}")

    if level == "full":
        # invariance across diagram variants, F2 and Z
        for name in ["trefoil", "figure8", "5_2"]:
            base = None
            for d in variants(name):
                od = orient(d)
                sigs = []
                for ring in (F2_RING, Z_RING):
                    C = pipeline(od, ring, check=(ring is Z_RING))
                    inv = invariants(C)
                    sigs.append((tuple(sorted(inv.hfk.items())), inv.tau, inv.nu, inv.epsilon))
                if base is None:
                    base = sigs
                else:
                    report(f"invariance {name} ~ {d.name}", sigs == base)
        # signed relation checks on the crossing evaluator
        from uvknot.bimodules import CrossBim
        from uvknot.dacheck import check_crossing_relations

        v = check_crossing_relations(
            CrossBim(Ambient(1, 2, [(1, 2)], Z_RING), 1, True), max_w2=4, max_inputs=3
        )
        report("signed crossing relations (matched)", not v)
        v = check_crossing_relations(
            CrossBim(Ambient(2, 2, [(1, 3), (2, 4)], Z_RING), 2, True),
            max_w2=3, max_inputs=3,
        )
        report("signed crossing relations (unmatched)", not v)
        # Z mod 2 equals native F2 on the corpus
        for name in ["trefoil", "figure8", "granny"]:
            od = orient(knot(name))
            CZ = pipeline(od, Z_RING)
            CF = pipeline(od, F2_RING)
            report(f"{name}: Z mod 2 = F2 homology",
                   hfk_hat(CZ.mod_p(2))[0] == hfk_hat(CF)[0])

    echo(f"selftest {level}: {'OK' if ok else 'FAILURES'} ({time.time()-t0:.1f}s)")
    return ok
