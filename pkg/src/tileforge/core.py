"""Static domain model: glues, tiles, duples, assemblies, binding graphs, cuts, stability.

Coordinates are unbounded signed integers; (x, y) with x east, y north.
All types are immutable after construction; operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

N, E, S, W = "N", "E", "S", "W"
DIRS = (N, E, S, W)
OFFSET = {N: (0, 1), E: (1, 0), S: (0, -1), W: (-1, 0)}
OPPOSITE = {N: S, S: N, E: W, W: E}

NULL_LABEL = ""  # reserved empty label; matches nothing

EXACT_STABILITY_LIMIT = 20
DEFAULT_BOUNDED_K = 8


class TileForgeError(Exception):
    pass


class SemanticError(TileForgeError):
    """System-level validation failure (glue inconsistency, unstable seed, ...)."""


class InvalidPartitionError(TileForgeError):
    pass


class SizeExceededError(TileForgeError):
    pass


@dataclass(frozen=True, slots=True)
class Glue:
    label: str
    strength: int

    def is_null(self) -> bool:
        return self.label == NULL_LABEL or self.strength == 0 and self.label == NULL_LABEL


NULL_GLUE = Glue(NULL_LABEL, 0)


@dataclass(frozen=True, slots=True)
class TileType:
    id: str
    glues: Mapping[str, Glue] = field(default_factory=dict)

    def glue(self, d: str) -> Glue:
        return self.glues.get(d, NULL_GLUE)

    def with_glues(self, **kw: Glue) -> "TileType":
        g = dict(self.glues)
        g.update(kw)
        return TileType(self.id, g)


def tile(tid: str, n: Glue | None = None, e: Glue | None = None,
         s: Glue | None = None, w: Glue | None = None) -> TileType:
    g = {}
    for d, gl in ((N, n), (E, e), (S, s), (W, w)):
        if gl is not None:
            g[d] = gl
    return TileType(tid, g)


@dataclass(frozen=True, slots=True)
class Duple:
    """Pre-joined pair: `second` sits at offset `axis` from `first`."""
    first: str
    second: str
    axis: str

    @property
    def id(self) -> str:
        return f"{self.first}+{self.second}@{self.axis}"


class Assembly:
    """Immutable partial map from Z^2 to tile type ids, grid-connected and non-empty."""

    __slots__ = ("tiles", "_key", "_hash")

    def __init__(self, tiles: Mapping[tuple[int, int], str], check_connected: bool = True):
        if not tiles:
            raise SemanticError("assembly must be non-empty")
        self.tiles: dict[tuple[int, int], str] = dict(tiles)
        if check_connected and not _grid_connected(self.tiles.keys()):
            raise SemanticError("assembly domain is not grid-connected")
        self._key = tuple(sorted((x, y, t) for (x, y), t in self.tiles.items()))
        self._hash = hash(self._key)

    def __len__(self) -> int:
        return len(self.tiles)

    def __contains__(self, loc: tuple[int, int]) -> bool:
        return loc in self.tiles

    def __getitem__(self, loc: tuple[int, int]) -> str:
        return self.tiles[loc]

    def get(self, loc: tuple[int, int]) -> Optional[str]:
        return self.tiles.get(loc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assembly) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def key(self) -> tuple:
        return self._key

    def domain(self) -> set[tuple[int, int]]:
        return set(self.tiles.keys())

    def items(self) -> Iterator[tuple[tuple[int, int], str]]:
        return iter(self.tiles.items())

    def place(self, placements: Iterable[tuple[tuple[int, int], str]]) -> "Assembly":
        t = dict(self.tiles)
        for loc, tid in placements:
            if loc in t:
                raise SemanticError(f"cell {loc} already occupied")
            t[loc] = tid
        return Assembly(t, check_connected=False)

    def without(self, locs: Iterable[tuple[int, int]], check_connected: bool = True) -> "Assembly":
        t = dict(self.tiles)
        for loc in locs:
            del t[loc]
        return Assembly(t, check_connected=check_connected)

    def translate(self, dx: int, dy: int) -> "Assembly":
        return Assembly({(x + dx, y + dy): t for (x, y), t in self.tiles.items()},
                        check_connected=False)

    def __repr__(self) -> str:
        return f"Assembly({len(self.tiles)} tiles)"


def _grid_connected(cells: Iterable[tuple[int, int]]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for dx, dy in OFFSET.values():
            nb = (x + dx, y + dy)
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class TileSystem:
    """Tagged union: kind is 'atam' | 'rgtam' | 'drgtam'."""
    kind: str
    tile_types: Mapping[str, TileType]
    seed: Assembly
    temperature: int = 1
    singletons: frozenset[str] = frozenset()
    duples: tuple[Duple, ...] = ()

    def glue_of(self, tid: str, d: str) -> Glue:
        return self.tile_types[tid].glue(d)

    @property
    def tau(self) -> int:
        return self.temperature

    def pieces(self) -> list["Piece"]:
        if self.kind == "atam":
            return [Piece.single(t) for t in sorted(self.tile_types)]
        if self.kind == "rgtam":
            return [Piece.single(t) for t in sorted(self.tile_types)]
        out = [Piece.single(t) for t in sorted(self.singletons)]
        out.extend(Piece.of_duple(d) for d in self.duples)
        return out


@dataclass(frozen=True)
class Piece:
    """An attachable unit: one tile, or a duple (two tiles at relative offset)."""
    id: str
    cells: tuple[tuple[tuple[int, int], str], ...]  # (relative loc, tile id)

    @staticmethod
    def single(tid: str) -> "Piece":
        return Piece(tid, (((0, 0), tid),))

    @staticmethod
    def of_duple(d: Duple) -> "Piece":
        return Piece(d.id, (((0, 0), d.first), (OFFSET[d.axis], d.second)))

    @property
    def is_duple(self) -> bool:
        return len(self.cells) == 2


def make_atam(tile_types: Iterable[TileType], seed: Assembly, temperature: int) -> TileSystem:
    tts = _index_types(tile_types)
    if temperature < 1:
        raise SemanticError("temperature must be a positive integer")
    _check_glue_consistency(tts.values())
    for tt in tts.values():
        for d in DIRS:
            g = tt.glue(d)
            if not (0 <= g.strength <= temperature):
                raise SemanticError(
                    f"aTAM glue strength out of range on tile {tt.id!r} side {d}: {g.strength}")
    sys = TileSystem("atam", tts, seed, temperature)
    _check_seed(sys)
    return sys


def make_rgtas(tile_types: Iterable[TileType], seed: Assembly) -> TileSystem:
    tts = _index_types(tile_types)
    _check_glue_consistency(tts.values())
    _check_rg_strengths(tts.values())
    sys = TileSystem("rgtam", tts, seed, 1)
    _check_seed(sys)
    return sys


def make_drgtas(tile_types: Iterable[TileType], singletons: Iterable[str],
                duples: Iterable[Duple], seed: Assembly) -> TileSystem:
    tts = _index_types(tile_types)
    _check_glue_consistency(tts.values())
    _check_rg_strengths(tts.values())
    singles = frozenset(singletons)
    dups = tuple(duples)
    for s in singles:
        if s not in tts:
            raise SemanticError(f"singleton {s!r} not in tile set")
    for d in dups:
        if d.first not in tts or d.second not in tts:
            raise SemanticError(f"duple {d.id} references unknown tile types")
        g1 = tts[d.first].glue(d.axis)
        g2 = tts[d.second].glue(OPPOSITE[d.axis])
        if g1.label != g2.label or g1.strength != g2.strength:
            raise SemanticError(f"duple {d.id} internal glues do not match")
        if g1.strength != 1:
            raise SemanticError(f"duple {d.id} internal glue must have strength 1")
    sys = TileSystem("drgtam", tts, seed, 1, singles, dups)
    _check_seed(sys)
    return sys


def _index_types(tile_types: Iterable[TileType]) -> dict[str, TileType]:
    tts: dict[str, TileType] = {}
    for tt in tile_types:
        if tt.id in tts:
            raise SemanticError(f"duplicate tile id {tt.id!r}")
        tts[tt.id] = tt
    return tts


def _check_glue_consistency(tile_types: Iterable[TileType]) -> None:
    strengths: dict[str, int] = {}
    for tt in tile_types:
        for d in DIRS:
            g = tt.glue(d)
            if g.label == NULL_LABEL:
                if g.strength != 0:
                    raise SemanticError(f"null glue with nonzero strength on {tt.id!r}")
                continue
            prev = strengths.setdefault(g.label, g.strength)
            if prev != g.strength:
                raise SemanticError(
                    f"glue {g.label!r} appears with strengths {prev} and {g.strength}")


def _check_rg_strengths(tile_types: Iterable[TileType]) -> None:
    for tt in tile_types:
        for d in DIRS:
            g = tt.glue(d)
            if g.strength not in (-1, 0, 1):
                raise SemanticError(
                    f"restricted-glue strength out of range on {tt.id!r} side {d}: {g.strength}")


def _check_seed(sys: TileSystem) -> None:
    for loc, tid in sys.seed.items():
        if tid not in sys.tile_types:
            raise SemanticError(f"seed references unknown tile {tid!r} at {loc}")
    report = is_stable(sys.seed, sys.tau, sys)
    if not report.stable:
        raise SemanticError("seed assembly is not stable")


# ---------------------------------------------------------------------------
# Binding graph, cuts, stability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BindingGraph:
    """Edges between occupied locations with matching labels and nonzero strength.

    Negative-strength edges are retained; positive-only views are exposed for
    "interact/attached" adjacency queries.
    """
    vertices: frozenset[tuple[int, int]]
    edges: tuple[tuple[tuple[int, int], tuple[int, int], int], ...]

    def adjacency(self, positive_only: bool = False) -> dict[tuple[int, int], list[tuple[tuple[int, int], int]]]:
        adj: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {v: [] for v in self.vertices}
        for a, b, s in self.edges:
            if positive_only and s <= 0:
                continue
            adj[a].append((b, s))
            adj[b].append((a, s))
        return adj


def binding_graph(a: Assembly, sys: TileSystem) -> BindingGraph:
    edges = []
    for (x, y), tid in a.items():
        for d in (N, E):  # visit each unordered pair once
            dx, dy = OFFSET[d]
            nb = (x + dx, y + dy)
            other = a.get(nb)
            if other is None:
                continue
            g1 = sys.glue_of(tid, d)
            g2 = sys.glue_of(other, OPPOSITE[d])
            if g1.label != NULL_LABEL and g1.label == g2.label and g1.strength == g2.strength \
                    and g1.strength != 0:
                edges.append(((x, y), nb, g1.strength))
    return BindingGraph(frozenset(a.domain()), tuple(sorted(edges)))


def bond_strength(a: Assembly, sys: TileSystem, loc: tuple[int, int],
                  nb: tuple[int, int]) -> int:
    """Strength of the bond between two abutting occupied cells (0 if no edge)."""
    dx, dy = nb[0] - loc[0], nb[1] - loc[1]
    for d, off in OFFSET.items():
        if off == (dx, dy):
            g1 = sys.glue_of(a[loc], d)
            g2 = sys.glue_of(a[nb], OPPOSITE[d])
            if g1.label != NULL_LABEL and g1.label == g2.label and g1.strength == g2.strength:
                return g1.strength
            return 0
    raise ValueError("cells are not adjacent")


@dataclass(frozen=True)
class Cut:
    side_a: frozenset[tuple[int, int]]
    side_b: frozenset[tuple[int, int]]
    strength: int


def cut_strength(a: Assembly, sys: TileSystem, side: Iterable[tuple[int, int]]) -> int:
    """Sum of binding-graph edge strengths crossing the bipartition (side vs rest)."""
    side = set(side)
    dom = a.domain()
    if not side or not (dom - side):
        raise InvalidPartitionError("both sides of a cut must be non-empty")
    if not side <= dom:
        raise InvalidPartitionError("cut side contains unassigned locations")
    total = 0
    for loc in side:
        x, y = loc
        for dx, dy in OFFSET.values():
            nb = (x + dx, y + dy)
            if nb in dom and nb not in side:
                total += bond_strength(a, sys, loc, nb)
    return total


def make_cut(a: Assembly, sys: TileSystem, side: Iterable[tuple[int, int]]) -> Cut:
    side = frozenset(side)
    s = cut_strength(a, sys, side)
    return Cut(side, frozenset(a.domain() - side), s)


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    mode: str  # "exact" | "bounded"
    bound: int | None
    witness: Optional[frozenset[tuple[int, int]]]  # a side of a violating cut, if found


def _bond_adjacency(a: Assembly, sys: TileSystem) -> dict[tuple[int, int], list[tuple[tuple[int, int], int]]]:
    return binding_graph(a, sys).adjacency()


def _connected_sides(a: Assembly, sys: TileSystem, max_size: int,
                     seeds: Iterable[tuple[int, int]] | None = None) -> Iterator[frozenset[tuple[int, int]]]:
    """Enumerate bond-connected subsets of size <= max_size (each subset once).

    If `seeds` is given, only subsets containing at least one seed are produced.
    """
    adj = _bond_adjacency(a, sys)
    order = {loc: i for i, loc in enumerate(sorted(a.domain()))}
    starts = sorted(seeds) if seeds is not None else sorted(a.domain())
    emitted: set[frozenset] = set()

    def grow(current: set, frontier_set: set, banned: set) -> Iterator[frozenset]:
        fc = frozenset(current)
        if fc not in emitted:
            emitted.add(fc)
            yield fc
        if len(current) >= max_size:
            return
        for nb in sorted(frontier_set, key=order.get):
            if nb in banned:
                continue
            new_frontier = set(frontier_set)
            new_frontier.discard(nb)
            for nb2, _s in adj[nb]:
                if nb2 not in current and nb2 != nb:
                    new_frontier.add(nb2)
            current.add(nb)
            yield from grow(current, new_frontier, banned)
            current.remove(nb)
            banned = banned | {nb}

    for st in starts:
        frontier = {nb for nb, _s in adj[st]}
        yield from grow({st}, frontier, set())


def is_stable(a: Assembly, tau: int, sys: TileSystem,
              mode: str = "auto", bounded_k: int = DEFAULT_BOUNDED_K) -> StabilityReport:
    """True iff every cut of the binding graph has strength >= tau.

    Exact mode enumerates bond-connected candidate sides (complete for integer
    weights); permitted up to EXACT_STABILITY_LIMIT tiles. Bounded mode checks
    only cuts isolating connected subassemblies of size <= bounded_k.
    """
    n = len(a)
    if n == 1:
        return StabilityReport(True, "exact", None, None)
    if mode == "auto":
        mode = "exact" if n <= EXACT_STABILITY_LIMIT else "bounded"
    if mode == "exact":
        if n > EXACT_STABILITY_LIMIT:
            raise SizeExceededError(
                f"exact stability check limited to {EXACT_STABILITY_LIMIT} tiles (got {n})")
        anchor = min(a.domain())
        for side in _connected_sides(a, sys, n - 1):
            if anchor in side or len(side) == n:
                continue
            if cut_strength(a, sys, side) < tau:
                return StabilityReport(False, "exact", None, side)
        return StabilityReport(True, "exact", None, None)
    # bounded: only sides of size <= k
    for side in _connected_sides(a, sys, bounded_k):
        if len(side) == n:
            continue
        if cut_strength(a, sys, side) < tau:
            return StabilityReport(False, "bounded", bounded_k, side)
    return StabilityReport(True, "bounded", bounded_k, None)


def brute_force_stable(a: Assembly, tau: int, sys: TileSystem) -> bool:
    """Independent oracle: enumerate all 2^(n-1)-1 bipartitions."""
    cells = sorted(a.domain())
    n = len(cells)
    if n == 1:
        return True
    rest = cells[1:]
    for r in range(1, n):
        for combo in itertools.combinations(rest, r):
            if cut_strength(a, sys, combo) < tau:
                return False
    return True


def subassembly(a: Assembly, b: Assembly) -> bool:
    """a is a subassembly of b: domains nest and tiles agree pointwise."""
    for loc, tid in a.items():
        if b.get(loc) != tid:
            return False
    return True


def restrict(a: Assembly, cells: Iterable[tuple[int, int]]) -> Assembly:
    cells = set(cells)
    if not cells <= a.domain():
        raise InvalidPartitionError("restriction cells must lie within the domain")
    sub = {loc: a[loc] for loc in cells}
    if not sub:
        raise SemanticError("restriction is empty")
    return Assembly(sub, check_connected=False)
