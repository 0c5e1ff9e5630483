"""Bundled diagram corpus: standard knots plus equivalent-diagram variants.

Plat words were validated against the Fox-calculus Alexander oracle;
variants differ by an R2 stabilization, a distant-crossing commutation
or a critical-point commutation and must yield identical invariants.
"""

from uvknot.diagram import Diagram, connected_sum, parse_diagram

_SOURCES = {
    "unknot": "max 1",
    "unknot_kink_o": "max 1\no 1",
    "unknot_kink_u": "max 1\nu 1",
    "trefoil": "braid 2 2 2 2",
    "trefoil_mirror": "braid 2 -2 -2 -2",
    "figure8": "braid 2 2 2 -1 2 -1",
    "5_1": "braid 2 2 2 2 2 2",
    "5_2": "braid 2 2 2 2 -1 2",
    "6_1": "braid 2 2 2 2 2 -1 2",
}


def knot(name: str) -> Diagram:
    if name in _SOURCES:
        return parse_diagram(_SOURCES[name], name)
    if name == "granny":
        return connected_sum(knot("trefoil"), knot("trefoil"), "granny")
    if name == "square":
        return connected_sum(knot("trefoil"), knot("trefoil_mirror"), "square")
    raise KeyError(f"unknown corpus knot {name!r}")


def corpus_names():
    return ["unknot", "trefoil", "trefoil_mirror", "figure8", "5_1", "5_2", "6_1",
            "granny", "square"]


def variants(name: str):
    """Distinct diagrams of the same knot, for invariance tests.

    Returns a list of Diagrams starting with the standard one.  Each
    corpus knot gets an R2-stabilized variant, a critical-point
    commutation variant (the two top maxima swapped) and, where the
    diagram allows, a distant-crossing commutation.
    """
    base = knot(name)
    out = [base]
    if name == "unknot":
        out.append(parse_diagram("max 1\no 1\nu 1", "unknot+R2"))
        out.append(parse_diagram("max 2", "unknot_max2"))
        return out
    # R2 stabilization in the widest slice
    from uvknot.diagram import r2_stabilize, swap_events

    out.append(r2_stabilize(base, name=f"{name}+R2"))
    # critical-point commutation: the slices of "max 1, max 1" can also be
    # built as "max 1, max 3" (create the right cap first)
    evs = [(e.kind, e.pos) for e in base.events]
    if evs[0] == ("max", 1) and evs[1] == ("max", 1):
        from uvknot.diagram import Event

        swapped = Diagram(
            [Event("max", 1), Event("max", 3)] + list(base.events[2:]),
            f"{name}~maxswap",
        )
        out.append(swapped)
    # distant commutation: look for adjacent crossings at distance >= 2
    for i in range(len(base.events) - 1):
        e1, e2 = base.events[i], base.events[i + 1]
        if e1.kind in "ou" and e2.kind in "ou" and abs(e1.pos - e2.pos) >= 2:
            out.append(swap_events(base, i, name=f"{name}~farswap{i}"))
            break
    return out
