"""Window-movie machinery: windows, movies, crossing submovies, splicing.

A window is an edge cut-set of the infinite grid graph. The search API works
with axis-aligned translated families (vertical/horizontal lines); explicit
finite edge sets are accepted for the core types.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .core import DIRS, NULL_LABEL, OFFSET, OPPOSITE, Assembly, TileForgeError, TileSystem
from .dynamics import AssemblySequence, AttachmentEvent, EngineState

UNIT = {N: off for N, off in OFFSET.items()}
# lexicographic order of unit vectors (-1,0) < (0,-1) < (0,1) < (1,0)
_DIR_LEX = {d: UNIT[d] for d in DIRS}


class SequenceHasDetachmentsError(TileForgeError):
    pass


class MoviesDifferError(TileForgeError):
    pass


class NegativeGlueConflictError(TileForgeError):
    pass


class ReplayFailureError(TileForgeError):
    pass


@dataclass(frozen=True)
class Window:
    """kind 'vertical': separates x < c from x >= c; 'horizontal': y < c from y >= c;
    'edges': explicit finite cut-set (partition computed per assembly)."""
    kind: str
    c: int = 0
    edges: frozenset[frozenset[tuple[int, int]]] = frozenset()

    @staticmethod
    def vertical(c: int) -> "Window":
        return Window("vertical", c)

    @staticmethod
    def horizontal(c: int) -> "Window":
        return Window("horizontal", c)

    @staticmethod
    def explicit(edges: Iterable[tuple[tuple[int, int], tuple[int, int]]]) -> "Window":
        return Window("edges", edges=frozenset(frozenset(e) for e in edges))

    def crosses(self, cell: tuple[int, int], d: str) -> bool:
        dx, dy = OFFSET[d]
        nb = (cell[0] + dx, cell[1] + dy)
        if self.kind == "vertical":
            return {cell[0], nb[0]} == {self.c - 1, self.c}
        if self.kind == "horizontal":
            return {cell[1], nb[1]} == {self.c - 1, self.c}
        return frozenset((cell, nb)) in self.edges

    def side(self, cell: tuple[int, int]) -> str:
        if self.kind == "vertical":
            return "L" if cell[0] < self.c else "R"
        if self.kind == "horizontal":
            return "L" if cell[1] < self.c else "R"
        raise TileForgeError("explicit windows need per-assembly partitioning")

    def translate(self, c: tuple[int, int]) -> "Window":
        if self.kind == "vertical":
            return Window("vertical", self.c + c[0])
        if self.kind == "horizontal":
            return Window("horizontal", self.c + c[1])
        return Window("edges", edges=frozenset(
            frozenset((a[0] + c[0], a[1] + c[1]) for a in e) for e in self.edges))

    def origin(self) -> tuple[int, int]:
        if self.kind == "vertical":
            return (self.c, 0)
        if self.kind == "horizontal":
            return (0, self.c)
        return (0, 0)


@dataclass(frozen=True)
class MovieEntry:
    vertex: tuple[int, int]
    direction: str
    label: str
    strength: int
    step: int  # index of the originating event in the sequence

    def normalized(self, origin: tuple[int, int]) -> tuple:
        return (self.vertex[0] - origin[0], self.vertex[1] - origin[1],
                self.direction, self.label, self.strength)


@dataclass(frozen=True)
class WindowMovie:
    window: Window
    entries: tuple[MovieEntry, ...]

    def normalized(self) -> tuple:
        o = self.window.origin()
        return tuple(e.normalized(o) for e in self.entries)


@dataclass(frozen=True)
class WindowCrossingSubmovie:
    window: Window
    entries: tuple[MovieEntry, ...]
    crossing_steps: frozenset[int]

    def normalized(self) -> tuple:
        o = self.window.origin()
        return tuple(e.normalized(o) for e in self.entries)


def extract_movie(seq: AssemblySequence, w: Window) -> WindowMovie:
    """Maximal ordered (vertex, glue) trace along the window.

    Simultaneous glues from one placement appear contiguously in lexicographic
    order of their unit vectors. Requires a detachment-free sequence.
    """
    if not seq.detachment_free:
        raise SequenceHasDetachmentsError("window movies require detachment-free sequences")
    entries: list[MovieEntry] = []
    sys = seq.sys
    for i, ev in enumerate(seq.events):
        assert isinstance(ev, AttachmentEvent)
        batch = []
        for (loc, tid) in ev.cells:
            for d in DIRS:
                if not w.crosses(loc, d):
                    continue
                g = sys.glue_of(tid, d)
                if g.label == NULL_LABEL:
                    continue
                batch.append(MovieEntry(loc, d, g.label, g.strength, i))
        batch.sort(key=lambda e: (_DIR_LEX[e.direction], e.vertex))
        entries.extend(batch)
    return WindowMovie(w, tuple(entries))


def crossing_submovie(movie: WindowMovie, seq: AssemblySequence, w: Window,
                      ) -> WindowCrossingSubmovie:
    """Drop entries of non-window-crossing placements.

    A placement is non-window-crossing iff the piece can stably bind even with
    every positive glue contribution along the window zeroed out.
    """
    sys = seq.sys
    st = EngineState(sys, seq.initial)
    crossing: set[int] = set()
    for i, ev in enumerate(seq.events):
        assert isinstance(ev, AttachmentEvent)
        occupied = {loc for loc, _ in ev.cells}
        total_off_window = 0
        for loc, tid in ev.cells:
            for d in DIRS:
                dx, dy = OFFSET[d]
                nb = (loc[0] + dx, loc[1] + dy)
                if nb in occupied:
                    continue
                b = st._bond(loc, d, tid)
                if w.crosses(loc, d) and b > 0:
                    continue  # zero out positive window contributions
                total_off_window += b
        if total_off_window < sys.tau:
            crossing.add(i)
        st.apply_attachment(ev)
    kept = tuple(e for e in movie.entries if e.step in crossing)
    return WindowCrossingSubmovie(w, kept, frozenset(crossing))


def movies_match(m1: WindowMovie | WindowCrossingSubmovie,
                 m2: WindowMovie | WindowCrossingSubmovie) -> bool:
    return m1.normalized() == m2.normalized()


def _side_of(seq_sys_seed_cell, w: Window, cell, assembly: Assembly) -> str:
    return w.side(cell)


def _negative_conflicts(sys: TileSystem, composite: dict, w: Window,
                        originals: tuple[set, set]) -> list[tuple]:
    """Negative matching pairs across the window not present in either original."""
    allowed = originals[0] | originals[1]
    bad = []
    for cell, tid in composite.items():
        for d in DIRS:
            if not w.crosses(cell, d):
                continue
            dx, dy = OFFSET[d]
            nb = (cell[0] + dx, cell[1] + dy)
            other = composite.get(nb)
            if other is None:
                continue
            g1 = sys.glue_of(tid, d)
            g2 = sys.glue_of(other, OPPOSITE[d])
            if g1.label != NULL_LABEL and g1.label == g2.label \
                    and g1.strength == g2.strength and g1.strength < 0:
                e = frozenset((cell, nb))
                if e not in allowed:
                    bad.append((cell, nb, g1.label))
    return bad


def _negative_window_edges(sys: TileSystem, a: Assembly, w: Window) -> set:
    out = set()
    for cell, tid in a.items():
        for d in DIRS:
            if not w.crosses(cell, d):
                continue
            dx, dy = OFFSET[d]
            nb = (cell[0] + dx, cell[1] + dy)
            other = a.get(nb)
            if other is None:
                continue
            g1 = sys.glue_of(tid, d)
            g2 = sys.glue_of(other, OPPOSITE[d])
            if g1.label != NULL_LABEL and g1.label == g2.label \
                    and g1.strength == g2.strength and g1.strength < 0:
                out.add(frozenset((cell, nb)))
    return out


@dataclass
class SpliceResult:
    assembly: Assembly
    certificate: AssemblySequence
    symmetric: Optional[Assembly] = None


def splice(seq_a: AssemblySequence, w_a: Window, seq_b: AssemblySequence,
           w_b: Window, use_submovies: bool = False,
           want_symmetric: bool = False) -> SpliceResult:
    """Produce alpha_L union (beta translated) _R with a replay certificate.

    Both sequences must be detachment-free; the movies (or crossing submovies,
    with the negative-glue compatibility conditions) must match after
    translating w_b onto w_a.
    """
    for s in (seq_a, seq_b):
        if not s.detachment_free:
            raise SequenceHasDetachmentsError("splice requires detachment-free sequences")
    sys = seq_a.sys
    oa, ob = w_a.origin(), w_b.origin()
    c = (ob[0] - oa[0], ob[1] - oa[1])

    m_a = extract_movie(seq_a, w_a)
    m_b = extract_movie(seq_b, w_b)
    if use_submovies:
        s_a = crossing_submovie(m_a, seq_a, w_a)
        s_b = crossing_submovie(m_b, seq_b, w_b)
        if s_a.normalized() != s_b.normalized():
            raise MoviesDifferError("window crossing submovies differ")
    else:
        if m_a.normalized() != m_b.normalized():
            raise MoviesDifferError("window movies differ")

    alpha = seq_a.result()
    beta = seq_b.result().translate(-c[0], -c[1])

    def split(asm: Assembly, w: Window):
        left, right = {}, {}
        for cell, tid in asm.items():
            (left if w.side(cell) == "L" else right)[cell] = tid
        return left, right

    a_l, a_r = split(alpha, w_a)
    b_l, b_r = split(beta, w_a)

    def build(left: dict, right: dict, ev_left: AssemblySequence, ev_right: AssemblySequence,
              right_shift: tuple[int, int]) -> SpliceResult | tuple:
        composite = dict(left)
        for cell, tid in right.items():
            if cell in composite and composite[cell] != tid:
                raise ReplayFailureError(f"splice sides overlap inconsistently at {cell}")
            composite[cell] = tid
        if use_submovies:
            neg_a = _negative_window_edges(sys, alpha, w_a)
            neg_b = _negative_window_edges(sys, beta, w_a)
            bad = _negative_conflicts(sys, composite, w_a, (neg_a, neg_b))
            if bad:
                raise NegativeGlueConflictError(f"new negative contacts across window: {bad}")
        cert = _interleave_certificate(sys, seq_a.initial, ev_left, ev_right,
                                       w_a, right_shift)
        return Assembly(composite, check_connected=False), cert

    asm1, cert1 = build(a_l, b_r, seq_a, seq_b, c)
    res = SpliceResult(asm1, cert1)
    if want_symmetric:
        asm2, _cert2 = build(b_l, a_r, seq_b, seq_a, c)
        res.symmetric = asm2
    return res


def _interleave_certificate(sys: TileSystem, initial: Assembly,
                            seq_left: AssemblySequence, seq_right: AssemblySequence,
                            w: Window, right_shift: tuple[int, int]) -> AssemblySequence:
    """Greedy order-preserving merge of L-side events of seq_left and R-side
    events of seq_right (translated), validated step by step."""
    def side_events(seq: AssemblySequence, side: str, shift: tuple[int, int]):
        evs = []
        for ev in seq.events:
            assert isinstance(ev, AttachmentEvent)
            cells = tuple(((loc[0] - shift[0], loc[1] - shift[1]), tid)
                          for loc, tid in ev.cells)
            sides = {w.side(loc) for loc, _ in cells}
            if len(sides) > 1:
                raise ReplayFailureError("placement straddles the window; unsupported")
            if sides == {side}:
                evs.append(AttachmentEvent(ev.kind, ev.piece_id,
                                           cells[0][0], cells, ev.strength))
        return evs

    left_q = side_events(seq_left, "L", (0, 0))
    right_q = side_events(seq_right, "R", right_shift)
    st = EngineState(sys, initial)
    out = AssemblySequence(sys, initial)
    li = ri = 0
    from .dynamics import _piece_by_id
    while li < len(left_q) or ri < len(right_q):
        progressed = False
        for q, idx in (("L", li), ("R", ri)):
            if q == "L" and li < len(left_q):
                ev = left_q[li]
            elif q == "R" and ri < len(right_q):
                ev = right_q[ri]
            else:
                continue
            if any(loc in st.tiles for loc, _ in ev.cells):
                # already placed (seed overlap); skip
                if q == "L":
                    li += 1
                else:
                    ri += 1
                progressed = True
                break
            piece = _piece_by_id(sys, ev.piece_id)
            s = st.placement_strength(piece, ev.cells[0][0])
            if s is not None and s >= sys.tau:
                real = AttachmentEvent(ev.kind, ev.piece_id, ev.cells[0][0], ev.cells, s)
                st.apply_attachment(real)
                out.events.append(real)
                if q == "L":
                    li += 1
                else:
                    ri += 1
                progressed = True
                break
        if not progressed:
            raise ReplayFailureError("splice certificate stuck; no side can advance")
    out.final = st.assembly()
    return out


def find_matching_windows(seq: AssemblySequence, family: str, pitch_range: range,
                          use_submovies: bool = False,
                          ) -> list[tuple[Window, Window, tuple[int, int]]]:
    """All pairs of translated windows in the family with equal (sub)movies."""
    movies = {}
    for c in pitch_range:
        w = Window.vertical(c) if family == "vertical" else Window.horizontal(c)
        m = extract_movie(seq, w)
        key = crossing_submovie(m, seq, w).normalized() if use_submovies else m.normalized()
        movies[c] = (w, key)
    out = []
    cs = sorted(movies)
    for i, c1 in enumerate(cs):
        for c2 in cs[i + 1:]:
            w1, k1 = movies[c1]
            w2, k2 = movies[c2]
            if k1 == k2:
                shift = (c2 - c1, 0) if family == "vertical" else (0, c2 - c1)
                out.append((w1, w2, shift))
    return out


# re-exported per the module map: the bundled example system lives with the corpus
from .systems import finger_flagpole  # noqa: E402,F401
