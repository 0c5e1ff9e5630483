"""Diagram parsing, validation, orientation, regions and constructors."""

import json

import pytest

from uvknot.diagram import (
    Diagram,
    DiagramError,
    Event,
    connected_sum,
    kauffman_state_count,
    mirror,
    orient,
    parse_diagram,
    r2_stabilize,
)

TREFOIL = "max 1\nmax 1\no 2\no 2\no 2\nmin 1"


def test_parse_unknot():
    d = parse_diagram("max 1", "unknot")
    assert d.strand_counts() == [0, 2]
    assert d.crossing_count() == 0


def test_parse_comments_and_braid():
    d = parse_diagram("# a trefoil\nbraid 2 2 2 2  # plat closure")
    assert [(e.kind, e.pos) for e in d.events] == [
        ("max", 1), ("max", 1), ("o", 2), ("o", 2), ("o", 2), ("min", 1)]


def test_parse_errors():
    with pytest.raises(DiagramError, match="line 2"):
        parse_diagram("max 1\nmin 2")
    with pytest.raises(DiagramError, match="closes a component early"):
        parse_diagram("max 1\nmin 1")
    with pytest.raises(DiagramError, match="ends with"):
        parse_diagram("max 1\nmax 1")
    with pytest.raises(DiagramError, match="cannot parse"):
        parse_diagram("maax 1")
    with pytest.raises(DiagramError, match="out of range"):
        parse_diagram("braid 2 5")


def test_strand_count_invariants():
    d = parse_diagram(TREFOIL)
    counts = d.strand_counts()
    assert counts[0] == 0 and counts[-1] == 2
    assert all(c >= 0 and c % 2 == 0 for c in counts)
    n_max = sum(1 for e in d.events if e.kind == "max")
    n_min = sum(1 for e in d.events if e.kind == "min")
    assert n_max == n_min + 1  # the global minimum is implicit


def test_orient_unknot():
    od = orient(parse_diagram("max 1"))
    assert od.slices[-1].matching == ((1, 2),)
    assert sorted(od.slices[-1].upwards) in ([1], [2])
    assert od.writhe == 0
    assert od.bottom_strand1_up()


def test_orient_trefoil_signs():
    od = orient(parse_diagram(TREFOIL))
    signs = set(od.crossing_signs.values())
    assert len(signs) == 1  # all crossings have equal sign
    assert abs(od.writhe) == 3


def test_reverse_complements_upwards_fixes_signs():
    od = orient(parse_diagram(TREFOIL))
    rev = od.reverse()
    for s1, s2 in zip(od.slices, rev.slices):
        assert s2.upwards == frozenset(range(1, 2 * s1.n + 1)) - s1.upwards
    assert rev.crossing_signs == od.crossing_signs
    assert rev.reverse().slices[3].upwards == od.slices[3].upwards


def test_mirror_involution_and_signs():
    d = parse_diagram(TREFOIL)
    m = mirror(d)
    assert [e.kind for e in m.events] == ["max", "max", "u", "u", "u", "min"]
    assert [(e.kind, e.pos) for e in mirror(m).events] == [
        (e.kind, e.pos) for e in d.events]
    assert orient(m).writhe == -orient(d).writhe
    for s1, s2 in zip(orient(d).slices, orient(m).slices):
        assert s1.matching == s2.matching


def test_each_pair_one_up_one_down():
    od = orient(parse_diagram("braid 2 2 2 2 -1 2"))
    for s in od.slices:
        for a, b in s.matching:
            assert (a in s.upwards) != (b in s.upwards)


def test_kauffman_counts():
    assert kauffman_state_count(parse_diagram("max 1")) == 1
    assert kauffman_state_count(parse_diagram(TREFOIL)) == 3
    assert kauffman_state_count(parse_diagram("braid 2 2 2 -1 2 -1")) == 5
    assert kauffman_state_count(parse_diagram("braid 2 2 2 2 2 2")) == 5


def test_connected_sum_and_r2():
    t = parse_diagram(TREFOIL, "t")
    g = connected_sum(t, t)
    assert g.crossing_count() == 6
    assert kauffman_state_count(g) == 9
    r = r2_stabilize(t)
    assert r.crossing_count() == 5


def test_json_echo_roundtrip():
    od = orient(parse_diagram(TREFOIL, "trefoil"))
    blob = json.loads(od.to_json_text())
    assert blob["writhe"] == od.writhe
    d2 = Diagram([Event(k, p) for k, p in blob["events"]], blob["name"])
    assert orient(d2).to_json() == od.to_json()
