"""Bridge-position knot diagrams: parsing, validation, orientation.

A diagram is a top-to-bottom event list.  Events:

* ``max c`` -- a local maximum whose two new strands enter at positions
  ``c, c+1`` of the slice below (1 <= c <= 2n+1 on a 2n-strand slice);
* ``min c`` -- a local minimum capping strands ``c, c+1``;
* ``o i`` / ``u i`` -- a crossing of strands ``i, i+1``; for ``o`` the
  strand entering from below at position ``i`` exits at ``i+1`` passing
  over the other strand, for ``u`` it passes under.

The global minimum closing the final two strands is implicit and always
carries the marked edge.  The running strand count must end at 2 and a
``min`` may never cap two strands already matched to each other.

Text format (one event per line, ``#`` comments)::

    max 1
    o 2        # crossing
    min 2
    braid 2 1 1 1   # plat closure shorthand: 2N strands, signed generators
"""

import json


class DiagramError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(msg if line is None else f"line {line}: {msg}")


class Event:
    __slots__ = ("kind", "pos")

    def __init__(self, kind: str, pos: int):
        if kind not in ("max", "min", "o", "u"):
            raise DiagramError(f"unknown event kind {kind!r}")
        self.kind = kind
        self.pos = pos

    def __repr__(self):
        return f"{self.kind} {self.pos}"

    def __eq__(self, other):
        return isinstance(other, Event) and (self.kind, self.pos) == (other.kind, other.pos)


class Diagram:
    """A validated bridge-position knot diagram."""

    def __init__(self, events, name: str = ""):
        self.events = [e if isinstance(e, Event) else Event(*e) for e in events]
        self.name = name
        self._validate()

    # -------------------------------------------------------------- checks

    def _validate(self):
        count = 0
        # matching of the current slice: partner[position] (1-based), built
        # from the part of the diagram above the slice
        partner = {}
        for idx, e in enumerate(self.events):
            line = idx + 1
            if e.kind == "max":
                c = e.pos
                if not (1 <= c <= count + 1):
                    raise DiagramError(f"max position {c} out of range 1..{count + 1}", line)
                new = {}
                for p, q in partner.items():
                    new[p + 2 if p >= c else p] = q + 2 if q >= c else q
                new[c] = c + 1
                new[c + 1] = c
                partner = new
                count += 2
            elif e.kind == "min":
                c = e.pos
                if not (1 <= c <= count - 1):
                    raise DiagramError(f"min position {c} out of range 1..{count - 1}", line)
                if partner[c] == c + 1:
                    raise DiagramError(
                        f"min {c} closes a component early (strands {c},{c + 1} already matched)",
                        line,
                    )
                a, b = partner[c], partner[c + 1]
                partner[a] = b
                partner[b] = a
                del partner[c], partner[c + 1]
                partner = {
                    (p - 2 if p > c else p): (q - 2 if q > c else q) for p, q in partner.items()
                }
                count -= 2
            else:
                i = e.pos
                if not (1 <= i <= count - 1):
                    raise DiagramError(f"crossing position {i} out of range 1..{count - 1}", line)
                swap = {i: i + 1, i + 1: i}
                partner = {
                    swap.get(p, p): swap.get(q, q) for p, q in partner.items()
                }
        if count != 2:
            raise DiagramError(f"diagram ends with {count} strands, expected 2")
        if partner.get(1) != 2:
            raise DiagramError("final strands are not matched to each other")

    # ------------------------------------------------------------ utilities

    def strand_counts(self):
        """Strand count of each slice, top to bottom (len(events)+1 entries)."""
        out = [0]
        c = 0
        for e in self.events:
            c += 2 if e.kind == "max" else -2 if e.kind == "min" else 0
            out.append(c)
        return out

    def crossing_count(self):
        return sum(1 for e in self.events if e.kind in ("o", "u"))

    def mirror(self, name=None):
        """Swap every CrossOver with CrossUnder."""
        flip = {"o": "u", "u": "o"}
        evs = [Event(flip.get(e.kind, e.kind), e.pos) for e in self.events]
        return Diagram(evs, name if name is not None else f"mirror({self.name})")

    def to_text(self):
        return "\n".join(f"{e.kind} {e.pos}" for e in self.events) + "\n"

    def __repr__(self):
        return f"Diagram({self.name or 'unnamed'}: {'; '.join(map(repr, self.events))})"


# ------------------------------------------------------------------ parsing


def parse_diagram(text: str, name: str = "") -> Diagram:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0].lower()
        if kind == "braid":
            if len(tok) < 2:
                raise DiagramError("braid needs a strand-pair count", lineno)
            try:
                n = int(tok[1])
                word = [int(t) for t in tok[2:]]
            except ValueError:
                raise DiagramError("braid arguments must be integers", lineno)
            if n < 1:
                raise DiagramError("braid needs n >= 1", lineno)
            for g in word:
                if g == 0 or abs(g) > 2 * n - 1:
                    raise DiagramError(f"braid generator {g} out of range", lineno)
            for _ in range(n):
                events.append(Event("max", 1))
            for g in word:
                events.append(Event("o" if g > 0 else "u", abs(g)))
            # plat closure: cups (1,2), (3,4), ... realized bottom-up as
            # repeated "min 1" with the last cup implicit
            for _ in range(n - 1):
                events.append(Event("min", 1))
            continue
        if kind not in ("max", "min", "o", "u") or len(tok) != 2:
            raise DiagramError(f"cannot parse event {line!r}", lineno)
        try:
            pos = int(tok[1])
        except ValueError:
            raise DiagramError(f"bad position {tok[1]!r}", lineno)
        events.append(Event(kind, pos))
    try:
        return Diagram(events, name)
    except DiagramError:
        raise


# --------------------------------------------------------------- orientation


class SliceData:
    """Per-slice matching and orientation data (1-based strand positions)."""

    __slots__ = ("n", "matching", "upwards")

    def __init__(self, n, matching, upwards):
        self.n = n
        self.matching = tuple(sorted(tuple(sorted(p)) for p in matching))
        self.upwards = frozenset(upwards)

    def __repr__(self):
        return f"Slice(n={self.n}, M={list(self.matching)}, up={sorted(self.upwards)})"


class OrientedDiagram:
    """Diagram plus derived orientation data.

    ``slices[t]`` describes the slice *below* event ``t-1`` (``slices[0]``
    is the empty top slice).  ``crossing_signs`` maps event index ->
    +1/-1.  The default orientation points the left strand of the global
    minimum upward; ``reverse=True`` picks the other one.
    """

    def __init__(self, diagram: Diagram, reverse: bool = False):
        self.diagram = diagram
        self.reversed = reverse
        self._trace()

    def _trace(self):
        d = self.diagram
        events = d.events
        # simulate arcs: each max births two arcs joined at the top; each
        # crossing permutes them; each min joins two arcs at the bottom.
        arcs = []  # per slice: tuple of arc ids (index 0 <-> position 1)
        cur = []
        arcs.append(tuple(cur))
        next_id = 0
        top_join = {}  # arc id -> partner at its birth cap
        bot_join = {}  # arc id -> partner at its death cap
        passages = {}  # arc id -> list of (event index, role 'o'/'u') top-down
        for idx, e in enumerate(events):
            if e.kind == "max":
                a, b = next_id, next_id + 1
                next_id += 2
                top_join[a] = b
                top_join[b] = a
                passages[a] = []
                passages[b] = []
                cur = cur[: e.pos - 1] + [a, b] + cur[e.pos - 1 :]
            elif e.kind == "min":
                a, b = cur[e.pos - 1], cur[e.pos]
                bot_join[a] = b
                bot_join[b] = a
                cur = cur[: e.pos - 1] + cur[e.pos + 1 :]
            else:
                i = e.pos - 1
                a_top_i, a_top_i1 = cur[i], cur[i + 1]
                # over-strand: bottom-i <-> top-(i+1) for 'o'
                over = a_top_i1 if e.kind == "o" else a_top_i
                under = a_top_i if e.kind == "o" else a_top_i1
                passages[over].append((idx, "o"))
                passages[under].append((idx, "u"))
                cur = cur[:i] + [a_top_i1, a_top_i] + cur[i + 2 :]
            arcs.append(tuple(cur))
        a1, a2 = arcs[-1]
        bot_join[a1] = a2
        bot_join[a2] = a1

        # traverse the single closed component; direction[arc] = +1 (up) / -1
        start = a2 if self.reversed else a1
        direction = {}
        walk = []  # (arc, dir) in traversal order
        arc, going_up = start, True
        while True:
            direction[arc] = 1 if going_up else -1
            walk.append((arc, going_up))
            arc, going_up = (top_join[arc] if going_up else bot_join[arc]), not going_up
            if arc == start and going_up:
                break
        if len(direction) != next_id:
            raise DiagramError("diagram is not a single closed component")
        self.arc_direction = direction
        self.arc_slices = arcs
        self._walk = walk
        self._passages = passages

        # slice data: matching + upwards per slice.  The matching of each
        # slice is maintained incrementally exactly as in validation: a min
        # fuses the partners of the two capped strands.
        slices = []
        partner = {}

        def snapshot(idx):
            ids = arcs[idx]
            n2 = len(ids)
            matching = []
            for p in range(1, n2 + 1):
                q = partner[p]
                if p < q:
                    matching.append((p, q))
            up = frozenset(p + 1 for p in range(n2) if direction[ids[p]] > 0)
            return SliceData(n2 // 2, matching, up)

        slices.append(snapshot(0))
        for idx, e in enumerate(events):
            c = e.pos
            if e.kind == "max":
                partner = {
                    (p + 2 if p >= c else p): (q + 2 if q >= c else q)
                    for p, q in partner.items()
                }
                partner[c] = c + 1
                partner[c + 1] = c
            elif e.kind == "min":
                a, b = partner[c], partner[c + 1]
                partner[a] = b
                partner[b] = a
                del partner[c], partner[c + 1]
                partner = {
                    (p - 2 if p > c else p): (q - 2 if q > c else q)
                    for p, q in partner.items()
                }
            else:
                swap = {c: c + 1, c + 1: c}
                partner = {swap.get(p, p): swap.get(q, q) for p, q in partner.items()}
            slices.append(snapshot(idx + 1))
        self.slices = slices

        # crossing signs
        signs = {}
        wr = 0
        for idx, e in enumerate(events):
            if e.kind not in ("o", "u"):
                continue
            ids = arcs[idx]
            i = e.pos - 1
            over = ids[i + 1] if e.kind == "o" else ids[i]
            under = ids[i] if e.kind == "o" else ids[i + 1]
            # over runs bottom-i <-> top-(i+1) for 'o': direction vector when
            # oriented up is (dx, dy) = (-1, 1) seen from below... fix by role:
            # strand bottom-i <-> top-(i+1) has dx=+1 going up; the other dx=-1.
            if e.kind == "o":
                o_vec = (1, 1) if direction[over] > 0 else (-1, -1)
                u_vec = (-1, 1) if direction[under] > 0 else (1, -1)
            else:
                o_vec = (-1, 1) if direction[over] > 0 else (1, -1)
                u_vec = (1, 1) if direction[under] > 0 else (-1, -1)
            det = o_vec[0] * u_vec[1] - o_vec[1] * u_vec[0]
            signs[idx] = 1 if det > 0 else -1
            wr += signs[idx]
        self.crossing_signs = signs
        self.writhe = wr

    # ------------------------------------------------------------- interface

    def reverse(self):
        """The same diagram with the opposite orientation."""
        return OrientedDiagram(self.diagram, reverse=not self.reversed)

    def slice_below(self, event_idx: int) -> SliceData:
        return self.slices[event_idx + 1]

    def slice_above(self, event_idx: int) -> SliceData:
        return self.slices[event_idx]

    def bottom_strand1_up(self) -> bool:
        """Orientation of strand 1 at the global minimum."""
        return 1 in self.slices[-1].upwards

    def to_json(self):
        d = self.diagram
        return {
            "name": d.name,
            "events": [[e.kind, e.pos] for e in d.events],
            "writhe": self.writhe,
            "crossing_signs": {str(i): s for i, s in sorted(self.crossing_signs.items())},
            "slices": [
                {
                    "n": s.n,
                    "matching": [list(p) for p in s.matching],
                    "upwards": sorted(s.upwards),
                }
                for s in self.slices
            ],
        }

    def to_json_text(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def orient(d: Diagram) -> OrientedDiagram:
    return OrientedDiagram(d)


def mirror(d: Diagram) -> Diagram:
    return d.mirror()


def reverse(od: OrientedDiagram) -> OrientedDiagram:
    return od.reverse()


# ------------------------------------------------------------------- regions


class Regions:
    """Checkerboard regions of the diagram, via a top-down sweep.

    Quadrants of each crossing are reported as canonical region ids;
    ``excluded`` holds the two regions adjacent to the marked edge
    (the global minimum).
    """

    def __init__(self, d: Diagram):
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        fresh = [0]

        def new_region():
            r = fresh[0]
            fresh[0] += 1
            parent[r] = r
            return r

        outer = new_region()
        gaps = [outer]  # region id per gap 0..2n
        quadrants = {}
        for idx, e in enumerate(d.events):
            c = e.pos
            if e.kind == "max":
                mid = new_region()
                gaps = gaps[:c] + [mid, gaps[c - 1]] + gaps[c:]
            elif e.kind == "min":
                union(gaps[c - 1], gaps[c + 1])
                gaps = gaps[: c - 1] + [gaps[c - 1]] + gaps[c + 2 :]
            else:
                south = new_region()
                quadrants[idx] = (gaps[c], south, gaps[c - 1], gaps[c + 1])  # N, S, W, E
                gaps = gaps[:c] + [south] + gaps[c + 1 :]
        # global minimum: gaps = [left, mid, right]
        union(gaps[0], gaps[2])
        self.excluded = frozenset({find(gaps[1]), find(gaps[0])})
        self.quadrants = {
            i: tuple(find(r) for r in quads) for i, quads in quadrants.items()
        }
        self.all_regions = frozenset(find(r) for r in range(fresh[0]))

    def kauffman_states(self):
        """All Kauffman states: per-crossing quadrant picks, bijective onto
        the unmarked regions.  Yields dicts event_index -> region."""
        crossings = sorted(self.quadrants)
        avail = set(self.all_regions) - set(self.excluded)
        if len(crossings) != len(avail):
            return
        state = {}

        def rec(k):
            if k == len(crossings):
                yield dict(state)
                return
            idx = crossings[k]
            for r in self.quadrants[idx]:
                if r in avail:
                    avail.discard(r)
                    state[idx] = r
                    yield from rec(k + 1)
                    del state[idx]
                    avail.add(r)

        yield from rec(0)

    def kauffman_count(self):
        return sum(1 for _ in self.kauffman_states())


def kauffman_state_count(d: Diagram) -> int:
    """Independent combinatorial count of Kauffman states."""
    return Regions(d).kauffman_count()


# ------------------------------------------------------- diagram constructors


def connected_sum(d1: Diagram, d2: Diagram, name=None) -> Diagram:
    """Plat connected sum: run d2 shifted right of strand 1 of d1, then
    close d2's pair against d1's old pair."""
    evs = list(d1.events)
    for e in d2.events:
        evs.append(Event(e.kind, e.pos + 1))
    evs.append(Event("min", 3))
    return Diagram(evs, name or f"{d1.name}#{d2.name}")


def r2_stabilize(d: Diagram, after: int = None, pos: int = None, name=None) -> Diagram:
    """Insert a canceling crossing pair (Reidemeister 2) at a valid spot."""
    counts = d.strand_counts()
    if after is None:
        after = max(range(len(counts)), key=lambda t: counts[t])
    n2 = counts[after]
    if pos is None:
        pos = 1
    if not (1 <= pos <= n2 - 1):
        raise DiagramError(f"cannot R2-stabilize at slice {after} position {pos}")
    evs = list(d.events)
    evs[after:after] = [Event("o", pos), Event("u", pos)]
    return Diagram(evs, name or f"{d.name}+R2")


def swap_events(d: Diagram, idx: int, name=None) -> Diagram:
    """Swap adjacent commuting events (distant crossings / critical points).

    The caller is responsible for picking an index where the swap is a
    planar isotopy; positions are adjusted for max/min shifts.
    """
    e1, e2 = d.events[idx], d.events[idx + 1]
    shift1 = 2 if e1.kind == "max" else -2 if e1.kind == "min" else 0

    def width(e):
        return 2 if e.kind in ("max", "min") else 2  # both touch pos, pos+1

    p1, p2 = e1.pos, e2.pos
    # e2's position in the slice above e1
    if shift1 > 0 and p2 >= p1:
        q2 = p2 - 2
    elif shift1 < 0 and p2 > p1:
        q2 = p2 + 2
    else:
        q2 = p2
    shift2 = 2 if e2.kind == "max" else -2 if e2.kind == "min" else 0
    if shift2 > 0 and p1 >= q2:
        q1 = p1 + 2
    elif shift2 < 0 and p1 > q2:
        q1 = p1 - 2
    else:
        q1 = p1
    if {q2, q2 + 1} & {q1, q1 + 1}:
        raise DiagramError(f"events {idx},{idx + 1} do not commute")
    evs = list(d.events)
    evs[idx] = Event(e2.kind, q2)
    evs[idx + 1] = Event(e1.kind, q1)
    return Diagram(evs, name or f"{d.name}~swap{idx}")
