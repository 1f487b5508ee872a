"""Nondeterministic evolution: attachment, detachment, sequences, enumeration.

Attachment follows the strength-sum rule (>= tau for aTAM, >= 1 for the
restricted-glue models, negative glues subtract). Detachment is an atomic cut
event along any cut of strength <= 0 (rgTAM/DrgTAM only); the seed-containing
side is retained and the other side is recorded as junk.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .core import (DEFAULT_BOUNDED_K, DIRS, NULL_LABEL, OFFSET, OPPOSITE, Assembly, Piece,
                   SemanticError, TileForgeError, TileSystem, _grid_connected, bond_strength)


class TerminalAssemblyError(TileForgeError):
    pass


class CompletionError(TileForgeError):
    pass


@dataclass(frozen=True)
class AttachmentEvent:
    kind: str  # "singleton" | "duple"
    piece_id: str
    anchor: tuple[int, int]
    cells: tuple[tuple[tuple[int, int], str], ...]  # ((x, y), tile id)
    strength: int

    def sort_key(self):
        return (0, self.anchor, self.piece_id)


@dataclass(frozen=True)
class DetachmentEvent:
    junk_side: frozenset[tuple[int, int]]
    strength: int

    def sort_key(self):
        return (1, tuple(sorted(self.junk_side)), self.strength)


Event = AttachmentEvent | DetachmentEvent


# ---------------------------------------------------------------------------
# Engine state with incremental frontier maintenance
# ---------------------------------------------------------------------------

class _Supply:
    """Index of attachable pieces by (direction, glue label) of positive faces."""

    def __init__(self, sys: TileSystem):
        self.sys = sys
        self.pieces = sys.pieces()
        self.by_face: dict[tuple[str, str], list[tuple[Piece, tuple[int, int]]]] = {}
        for p in self.pieces:
            for off, tid in p.cells:
                tt = sys.tile_types[tid]
                for d in DIRS:
                    g = tt.glue(d)
                    if g.label != NULL_LABEL and g.strength > 0:
                        self.by_face.setdefault((d, g.label), []).append((p, off))


class EngineState:
    """Mutable assembly plus incrementally maintained attachment candidates."""

    def __init__(self, sys: TileSystem, assembly: Assembly,
                 bounded_k: int = DEFAULT_BOUNDED_K,
                 arena: Optional[frozenset[tuple[int, int]]] = None):
        self.sys = sys
        self.tau = sys.tau
        self.supply = _Supply(sys)
        self.tiles: dict[tuple[int, int], str] = dict(assembly.tiles)
        self.bounded_k = bounded_k
        self.arena = arena
        self.negative_edges: set[frozenset[tuple[int, int]]] = set()
        self.candidates: dict[tuple, AttachmentEvent] = {}
        self._rebuild_negative_edges()
        self._rescan(set(self.tiles.keys()))

    # -- glue helpers --------------------------------------------------------

    def _bond(self, loc: tuple[int, int], d: str, tid: str) -> int:
        """Strength of the bond a tile `tid` at `loc` would make on side d."""
        dx, dy = OFFSET[d]
        nb = (loc[0] + dx, loc[1] + dy)
        other = self.tiles.get(nb)
        if other is None:
            return 0
        g1 = self.sys.glue_of(tid, d)
        if g1.label == NULL_LABEL:
            return 0
        g2 = self.sys.glue_of(other, OPPOSITE[d])
        if g1.label == g2.label and g1.strength == g2.strength:
            return g1.strength
        return 0

    def placement_strength(self, piece: Piece, anchor: tuple[int, int]) -> Optional[int]:
        """Binding strength of placing piece with cell[0] at anchor; None if blocked."""
        cells = []
        for off, tid in piece.cells:
            loc = (anchor[0] + off[0], anchor[1] + off[1])
            if loc in self.tiles:
                return None
            if self.arena is not None and loc not in self.arena:
                return None
            cells.append((loc, tid))
        occupied = {loc for loc, _ in cells}
        total = 0
        for loc, tid in cells:
            for d in DIRS:
                dx, dy = OFFSET[d]
                nb = (loc[0] + dx, loc[1] + dy)
                if nb in occupied:
                    continue  # internal duple bond, not a binding contribution
                total += self._bond(loc, d, tid)
        return total

    # -- incremental candidate maintenance ------------------------------------

    def _placements_anchored_near(self, cell: tuple[int, int]) -> Iterator[AttachmentEvent]:
        """All valid placements with a positive contact to an occupied neighbor of `cell`."""
        x, y = cell
        for d in DIRS:
            dx, dy = OFFSET[d]
            nb = (x + dx, y + dy)
            other = self.tiles.get(nb)
            if other is None:
                continue
            g = self.sys.glue_of(other, OPPOSITE[d])
            if g.label == NULL_LABEL or g.strength <= 0:
                continue
            for piece, off in self.supply.by_face.get((d, g.label), ()):  # faces pointing d
                anchor = (x - off[0], y - off[1])
                s = self.placement_strength(piece, anchor)
                if s is not None and s >= self.tau:
                    cells = tuple(((anchor[0] + o[0], anchor[1] + o[1]), tid)
                                  for o, tid in piece.cells)
                    yield AttachmentEvent(
                        "duple" if piece.is_duple else "singleton",
                        piece.id, anchor, cells, s)

    def _rescan(self, changed: set[tuple[int, int]]) -> None:
        near: set[tuple[int, int]] = set()
        for (x, y) in changed:
            near.add((x, y))
            for dx, dy in OFFSET.values():
                near.add((x + dx, y + dy))
        # drop stale candidates touching the changed neighborhood
        stale = [k for k, ev in self.candidates.items()
                 if any(loc in near for loc, _ in ev.cells)]
        for k in stale:
            del self.candidates[k]
        # rescan anchors in the two-ring around changes
        scan: set[tuple[int, int]] = set(near)
        for (x, y) in list(near):
            for dx, dy in OFFSET.values():
                scan.add((x + dx, y + dy))
        for cell in scan:
            if cell in self.tiles:
                continue
            for ev in self._placements_anchored_near(cell):
                if any(loc in near for loc, _ in ev.cells):
                    key = (ev.cells, ev.piece_id)
                    self.candidates[key] = ev

    def _rebuild_negative_edges(self) -> None:
        self.negative_edges.clear()
        for loc, tid in self.tiles.items():
            for d in (("N"), ("E")):
                dx, dy = OFFSET[d]
                nb = (loc[0] + dx, loc[1] + dy)
                if nb in self.tiles:
                    if self._pair_bond(loc, nb) < 0:
                        self.negative_edges.add(frozenset((loc, nb)))

    def _pair_bond(self, a: tuple[int, int], b: tuple[int, int]) -> int:
        dx, dy = b[0] - a[0], b[1] - a[1]
        for d, off in OFFSET.items():
            if off == (dx, dy):
                g1 = self.sys.glue_of(self.tiles[a], d)
                g2 = self.sys.glue_of(self.tiles[b], OPPOSITE[d])
                if g1.label != NULL_LABEL and g1.label == g2.label and g1.strength == g2.strength:
                    return g1.strength
                return 0
        raise ValueError("not adjacent")

    def _update_negative_edges_around(self, cells: Iterable[tuple[int, int]]) -> None:
        for loc in cells:
            for dx, dy in OFFSET.values():
                nb = (loc[0] + dx, loc[1] + dy)
                e = frozenset((loc, nb))
                if loc in self.tiles and nb in self.tiles and self._pair_bond(loc, nb) < 0:
                    self.negative_edges.add(e)
                else:
                    self.negative_edges.discard(e)

    # -- event application -----------------------------------------------------

    def apply_attachment(self, ev: AttachmentEvent) -> None:
        for loc, tid in ev.cells:
            if loc in self.tiles:
                raise SemanticError(f"attachment into occupied cell {loc}")
            self.tiles[loc] = tid
        changed = {loc for loc, _ in ev.cells}
        self._update_negative_edges_around(changed)
        self._rescan(changed)

    def apply_detachment(self, ev: DetachmentEvent) -> Assembly:
        junk = {loc: self.tiles[loc] for loc in ev.junk_side}
        for loc in ev.junk_side:
            del self.tiles[loc]
        changed = set(ev.junk_side)
        self._update_negative_edges_around(
            {nb for loc in changed for nb in _neighbors(loc)} | changed)
        self._rescan(changed)
        return Assembly(junk, check_connected=False)

    # -- queries ----------------------------------------------------------------

    def assembly(self) -> Assembly:
        return Assembly(self.tiles, check_connected=False)

    def frontier(self) -> list[AttachmentEvent]:
        return sorted(self.candidates.values(), key=AttachmentEvent.sort_key)

    def eligible_detachments(self) -> list[DetachmentEvent]:
        if self.sys.kind == "atam":
            return []
        return detachment_cuts(self.sys, self.assembly(), self.bounded_k,
                               negative_edges=self.negative_edges)


def _neighbors(loc: tuple[int, int]) -> Iterator[tuple[int, int]]:
    for dx, dy in OFFSET.values():
        yield (loc[0] + dx, loc[1] + dy)


# ---------------------------------------------------------------------------
# Stateless operation surface
# ---------------------------------------------------------------------------

def frontier(sys: TileSystem, a: Assembly,
             arena: Optional[frozenset[tuple[int, int]]] = None) -> list[AttachmentEvent]:
    """All stable attachments of singletons (and duples for DrgTAS) onto `a`."""
    return EngineState(sys, a, arena=arena).frontier()


def _bond_components(sys: TileSystem, a: Assembly) -> list[set[tuple[int, int]]]:
    seen: set[tuple[int, int]] = set()
    comps = []
    for start in a.domain():
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            loc = stack.pop()
            for nb in _neighbors(loc):
                if nb in a and nb not in comp:
                    if bond_strength(a, sys, loc, nb) != 0:
                        comp.add(nb)
                        seen.add(nb)
                        stack.append(nb)
        comps.append(comp)
    return comps


def detachment_cuts(sys: TileSystem, a: Assembly, bounded_k: int = DEFAULT_BOUNDED_K,
                    negative_edges: Optional[set[frozenset[tuple[int, int]]]] = None,
                    seed_cells: Optional[set[tuple[int, int]]] = None,
                    ) -> list[DetachmentEvent]:
    """All cuts of strength <= 0 whose junk side has <= bounded_k tiles.

    Completeness for sides <= k: such a cut either crosses a negative edge (so
    an endpoint seeds the search) or crosses no bond at all (stranded
    bond-component). Both sides must be grid-connected assemblies.
    """
    if sys.kind == "atam":
        return []
    dom = a.domain()
    n = len(dom)
    if n <= 1:
        return []
    if negative_edges is None:
        negative_edges = set()
        for loc in dom:
            for nb in _neighbors(loc):
                if nb in dom and loc < nb and bond_strength(a, sys, loc, nb) < 0:
                    negative_edges.add(frozenset((loc, nb)))
    results: dict[frozenset, DetachmentEvent] = {}

    def consider(side: frozenset[tuple[int, int]]) -> None:
        if side in results or not side or len(side) >= n:
            return
        rest = dom - side
        if seed_cells and side & seed_cells:
            return
        if not _grid_connected(side) or not _grid_connected(rest):
            return
        s = 0
        for loc in side:
            for nb in _neighbors(loc):
                if nb in rest:
                    s += bond_strength(a, sys, loc, nb)
        if s <= 0:
            results[side] = DetachmentEvent(side, s)

    # stranded bond-components
    comps = _bond_components(sys, a)
    if len(comps) > 1:
        anchor = min(dom)
        for comp in comps:
            if anchor not in comp:
                consider(frozenset(comp))
    # seeded growth from negative-edge endpoints
    seeds = sorted({loc for e in negative_edges for loc in e})
    if seeds:
        adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for loc in dom:
            lst = []
            for nb in _neighbors(loc):
                if nb in dom and bond_strength(a, sys, loc, nb) != 0:
                    lst.append(nb)
            adj[loc] = lst

        emitted: set[frozenset] = set()

        def grow(current: set, frontier_set: set, banned: frozenset) -> None:
            side = frozenset(current)
            if side not in emitted:
                emitted.add(side)
                consider(side)
            if len(current) >= bounded_k:
                return
            banned_now = set(banned)
            for nb in sorted(frontier_set):
                if nb in banned_now:
                    continue
                nf = set(frontier_set)
                nf.discard(nb)
                for nb2 in adj[nb]:
                    if nb2 not in current:
                        nf.add(nb2)
                current.add(nb)
                grow(current, nf, frozenset(banned_now))
                current.remove(nb)
                banned_now.add(nb)

        for st in seeds:
            grow({st}, set(adj[st]), frozenset())
    return sorted(results.values(), key=DetachmentEvent.sort_key)


def eligible_detachments(sys: TileSystem, a: Assembly,
                         bounded_k: int = DEFAULT_BOUNDED_K) -> list[DetachmentEvent]:
    if sys.kind == "atam":
        return []
    return detachment_cuts(sys, a, bounded_k)


# ---------------------------------------------------------------------------
# Assembly sequences
# ---------------------------------------------------------------------------

@dataclass
class AssemblySequence:
    sys: TileSystem
    initial: Assembly
    events: list[Event] = field(default_factory=list)
    final: Optional[Assembly] = None
    junk: list[Assembly] = field(default_factory=list)

    @property
    def detachment_free(self) -> bool:
        return all(isinstance(e, AttachmentEvent) for e in self.events)

    def replay(self, validate: bool = True) -> Iterator[tuple[Event, Assembly]]:
        """Re-execute events, yielding (event, assembly-after). Raises on invalid steps."""
        st = EngineState(self.sys, self.initial)
        for ev in self.events:
            if isinstance(ev, AttachmentEvent):
                if validate:
                    piece = _piece_by_id(self.sys, ev.piece_id)
                    s = st.placement_strength(piece, ev.anchor)
                    if s is None or s < self.sys.tau:
                        raise SemanticError(
                            f"replay: attachment {ev.piece_id} at {ev.anchor} not stable (s={s})")
                st.apply_attachment(ev)
            else:
                if validate:
                    junk = set(ev.junk_side)
                    s = 0
                    asm = st.assembly()
                    for loc in junk:
                        for nb in _neighbors(loc):
                            if nb in asm and nb not in junk:
                                s += bond_strength(asm, self.sys, loc, nb)
                    if s > 0:
                        raise SemanticError(f"replay: detachment cut has strength {s} > 0")
                st.apply_detachment(ev)
            yield ev, st.assembly()

    def result(self, validate: bool = False) -> Assembly:
        last = self.initial
        for _ev, asm in self.replay(validate=validate):
            last = asm
        return last

    def alpha_index(self) -> dict[tuple[int, int], int]:
        """First placement step per location (seed locations get -1)."""
        idx = {loc: -1 for loc in self.initial.domain()}
        for i, ev in enumerate(self.events):
            if isinstance(ev, AttachmentEvent):
                for loc, _tid in ev.cells:
                    idx.setdefault(loc, i)
        return idx

    def input_sides(self) -> dict[tuple[int, int], tuple[str, ...]]:
        """For each attached location, the sides that bound with positive strength."""
        out: dict[tuple[int, int], tuple[str, ...]] = {}
        st = EngineState(self.sys, self.initial)
        for ev in self.events:
            if isinstance(ev, AttachmentEvent):
                occupied = {loc for loc, _ in ev.cells}
                for loc, tid in ev.cells:
                    sides = []
                    for d in DIRS:
                        dx, dy = OFFSET[d]
                        nb = (loc[0] + dx, loc[1] + dy)
                        if nb in occupied:
                            continue
                        if st._bond(loc, d, tid) > 0:
                            sides.append(d)
                    out.setdefault(loc, tuple(sides))
                st.apply_attachment(ev)
            else:
                st.apply_detachment(ev)
        return out


def _piece_by_id(sys: TileSystem, pid: str) -> Piece:
    for p in sys.pieces():
        if p.id == pid:
            return p
    raise KeyError(pid)


# ---------------------------------------------------------------------------
# step / run
# ---------------------------------------------------------------------------

def step(sys: TileSystem, a: Assembly, rng_seed: int,
         scheduler: str = "arbitrary", bounded_k: int = DEFAULT_BOUNDED_K,
         ) -> tuple[Assembly, Event, Optional[Assembly]]:
    """One uniformly chosen event; returns (new assembly, event, junk or None)."""
    st = EngineState(sys, a, bounded_k=bounded_k)
    ev = _choose_event(st, random.Random(rng_seed), scheduler, sys.seed.domain())
    if ev is None:
        raise TerminalAssemblyError("no attachment or detachment available")
    if isinstance(ev, AttachmentEvent):
        st.apply_attachment(ev)
        return st.assembly(), ev, None
    junk = st.apply_detachment(ev)
    return st.assembly(), ev, junk


def _choose_event(st: EngineState, rng: random.Random, scheduler: str,
                  seed_cells: set[tuple[int, int]]) -> Optional[Event]:
    att = st.frontier()
    det = [d for d in st.eligible_detachments() if not (d.junk_side & seed_cells)]
    if scheduler == "detach-first" and det:
        return det[rng.randrange(len(det))]
    events: list[Event] = list(att) + list(det)
    if not events:
        return None
    return events[rng.randrange(len(events))]


def run(sys: TileSystem, rng_seed: int, max_steps: int,
        scheduler: str = "arbitrary", bounded_k: int = DEFAULT_BOUNDED_K,
        arena: Optional[frozenset[tuple[int, int]]] = None) -> AssemblySequence:
    """Iterate uniformly chosen events until terminal or the step budget runs out."""
    rng = random.Random(rng_seed)
    st = EngineState(sys, sys.seed, bounded_k=bounded_k, arena=arena)
    seq = AssemblySequence(sys, sys.seed)
    seed_cells = sys.seed.domain()
    for _ in range(max_steps):
        ev = _choose_event(st, rng, scheduler, seed_cells)
        if ev is None:
            break
        if isinstance(ev, AttachmentEvent):
            st.apply_attachment(ev)
        else:
            seq.junk.append(st.apply_detachment(ev))
        seq.events.append(ev)
    seq.final = st.assembly()
    return seq


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

@dataclass
class ProducibleSet:
    assemblies: dict[tuple, Assembly]
    junk: dict[tuple, Assembly]
    exceeded: bool
    bound: int

    def __contains__(self, a: Assembly) -> bool:
        return a.key() in self.assemblies

    def __len__(self) -> int:
        return len(self.assemblies)


def enumerate_producible(sys: TileSystem, max_tiles: int,
                         max_assemblies: int = 2_000_000,
                         bounded_k: int = DEFAULT_BOUNDED_K,
                         arena: Optional[frozenset[tuple[int, int]]] = None,
                         explore_junk: bool = False) -> ProducibleSet:
    """Exact BFS closure of {seed} under attachments (and cuts for rg models).

    Deduplicated by exact tile map; junk sides are recorded separately (and
    explored as separate roots only when `explore_junk` is set).
    """
    seed_cells = sys.seed.domain()
    out = ProducibleSet({}, {}, False, max_tiles)
    queue: deque[Assembly] = deque()

    def push(a: Assembly) -> None:
        k = a.key()
        if k not in out.assemblies:
            out.assemblies[k] = a
            queue.append(a)

    push(sys.seed)
    while queue:
        if len(out.assemblies) > max_assemblies:
            out.exceeded = True
            break
        a = queue.popleft()
        st = EngineState(sys, a, bounded_k=bounded_k, arena=arena)
        for ev in st.frontier():
            if len(a) + len(ev.cells) > max_tiles:
                out.exceeded = True
                continue
            b = a.place(ev.cells)
            push(b)
        if sys.kind != "atam":
            for ev in st.eligible_detachments():
                if ev.junk_side & seed_cells:
                    continue
                junk = Assembly({loc: a[loc] for loc in ev.junk_side}, check_connected=False)
                out.junk.setdefault(junk.key(), junk)
                retained = a.without(ev.junk_side, check_connected=False)
                push(retained)
    if explore_junk:
        _explore_junk_growth(sys, out, max_tiles, bounded_k)
    return out


def _explore_junk_growth(sys: TileSystem, out: ProducibleSet, max_tiles: int,
                         bounded_k: int) -> None:
    queue = deque(out.junk.values())
    seen = set(out.junk.keys())
    while queue:
        a = queue.popleft()
        st = EngineState(sys, a, bounded_k=bounded_k)
        for ev in st.frontier():
            if len(a) + len(ev.cells) > max_tiles:
                continue
            b = a.place(ev.cells)
            if b.key() not in seen:
                seen.add(b.key())
                out.junk[b.key()] = b
                queue.append(b)


def terminal_assemblies(sys: TileSystem, max_tiles: int,
                        bounded_k: int = DEFAULT_BOUNDED_K,
                        arena: Optional[frozenset[tuple[int, int]]] = None,
                        ) -> tuple[list[Assembly], ProducibleSet]:
    """Producible assemblies with empty frontier (attachment-only criterion)."""
    prod = enumerate_producible(sys, max_tiles, bounded_k=bounded_k, arena=arena)
    terms = []
    for a in prod.assemblies.values():
        if not frontier(sys, a, arena=arena):
            terms.append(a)
    return terms, prod


def is_directed(sys: TileSystem, max_tiles: int) -> tuple[bool, dict]:
    terms, prod = terminal_assemblies(sys, max_tiles)
    report = {"bound": max_tiles, "terminal_count": len(terms),
              "producible_count": len(prod.assemblies), "exceeded": prod.exceeded}
    return len(terms) == 1, report


def quiescence_flags(sys: TileSystem, a: Assembly,
                     bounded_k: int = DEFAULT_BOUNDED_K) -> dict[str, bool]:
    """Both terminality notions for rg models: attachment-terminal and fully quiescent."""
    att = not frontier(sys, a)
    det = not eligible_detachments(sys, a, bounded_k) if sys.kind != "atam" else True
    return {"attachment_terminal": att, "fully_quiescent": att and det}


def check_strict_self_assembly(sys: TileSystem, shape: set[tuple[int, int]],
                               max_tiles: int) -> tuple[bool, dict]:
    terms, prod = terminal_assemblies(sys, max_tiles)
    ok = bool(terms) and all(t.domain() == shape for t in terms)
    return ok, {"bound": max_tiles, "terminal_count": len(terms), "exceeded": prod.exceeded}


# ---------------------------------------------------------------------------
# Detachment-free completion (Lemma machinery)
# ---------------------------------------------------------------------------

def detachment_free_completion(sys: TileSystem, alpha: Assembly, beta: Assembly,
                               ) -> AssemblySequence:
    """A sequence of single stable attachments from beta up to alpha.

    Follows the lemma's argument: repeatedly attach any piece of alpha-minus-gamma
    whose glue sum against the current assembly is >= tau. Raises CompletionError
    if no such piece exists (a violated precondition).
    """
    from .core import is_stable, subassembly
    if not subassembly(beta, alpha):
        raise CompletionError("beta is not a subassembly of alpha")
    for name, a in (("alpha", alpha), ("beta", beta)):
        rep = is_stable(a, sys.tau, sys,
                        mode="exact" if len(a) <= 20 else "bounded", bounded_k=12)
        if not rep.stable:
            raise CompletionError(f"{name} is not stable; the lemma's guarantee lapses")

    pieces = _alpha_piece_cover(sys, alpha, beta)
    st = EngineState(sys, beta)
    seq = AssemblySequence(sys, beta)
    remaining = set(pieces)
    while remaining:
        progressed = False
        for piece_cells in sorted(remaining):
            cells = [(loc, alpha[loc]) for loc in piece_cells]
            if any(loc in st.tiles for loc, _ in cells):
                remaining.discard(piece_cells)
                progressed = True
                break
            pid = _supply_piece_id(sys, cells)
            if pid is None:
                continue
            piece = _piece_by_id(sys, pid)
            anchor = cells[0][0] if piece.cells[0][1] == cells[0][1] and len(cells) == 1 \
                else _anchor_for(piece, cells)
            if anchor is None:
                continue
            s = st.placement_strength(piece, anchor)
            if s is not None and s >= sys.tau:
                ev = AttachmentEvent("duple" if piece.is_duple else "singleton",
                                     piece.id, anchor,
                                     tuple(((loc), tid) for loc, tid in cells), s)
                st.apply_attachment(ev)
                seq.events.append(ev)
                remaining.discard(piece_cells)
                progressed = True
                break
        if not progressed:
            raise CompletionError("no stable attachment available; completion stuck")
    seq.final = st.assembly()
    return seq


def _alpha_piece_cover(sys: TileSystem, alpha: Assembly, beta: Assembly,
                       ) -> list[tuple[tuple[int, int], ...]]:
    """Partition alpha-minus-beta cells into attachable pieces (singletons/duples)."""
    todo = sorted(alpha.domain() - beta.domain())
    if sys.kind != "drgtam":
        return [(loc,) for loc in todo]
    cells = set(todo)
    singles = set(sys.singletons)
    cover: list[tuple[tuple[int, int], ...]] = []
    by_pair: dict[tuple[str, str, str], Duple_like] = {}
    duple_index = {}
    for d in sys.duples:
        duple_index[(d.first, d.second, d.axis)] = d
    used: set[tuple[int, int]] = set()
    for loc in todo:
        if loc in used:
            continue
        tid = alpha[loc]
        placed = False
        if tid in singles:
            cover.append((loc,))
            used.add(loc)
            placed = True
        if not placed:
            for (first, second, axis), d in duple_index.items():
                if tid == first:
                    off = OFFSET[axis]
                    nb = (loc[0] + off[0], loc[1] + off[1])
                    if nb in cells and nb not in used and alpha[nb] == second:
                        cover.append((loc, nb))
                        used.update((loc, nb))
                        placed = True
                        break
        if not placed:
            # lone duple half or unknown: not attachable detachment-free
            raise CompletionError(f"cell {loc} ({tid}) is not coverable by supply pieces")
    return cover


Duple_like = object


def _supply_piece_id(sys: TileSystem, cells: list[tuple[tuple[int, int], str]]) -> Optional[str]:
    if len(cells) == 1:
        tid = cells[0][1]
        if sys.kind != "drgtam" or tid in sys.singletons:
            return tid
        return None
    (l1, t1), (l2, t2) = cells
    dx, dy = l2[0] - l1[0], l2[1] - l1[1]
    for d, off in OFFSET.items():
        if off == (dx, dy):
            for dup in sys.duples:
                if dup.first == t1 and dup.second == t2 and dup.axis == d:
                    return dup.id
    return None


def _anchor_for(piece: Piece, cells: list[tuple[tuple[int, int], str]]) -> Optional[tuple[int, int]]:
    # piece.cells[0] is the anchor-relative origin
    loc0 = cells[0][0]
    return loc0
