"""Gadget templates: adjacent cooperator, gap cooperator, crosser.

Each builder returns a GadgetTemplate carrying the emitted tile types, duples,
footprints, and (for the bundled fixtures) a ready-to-run DrgTAS realizing the
gadget with anchor chains, so the narrated micro-dynamics can be replayed and
the detached-junk inventory enumerated.

Mechanism summary (one cooperation, pair of glues a x b, outcomes Ts):
  - the finger ends with a hanging duple H = (Y inner, X outer); X presents the
    single negative guard glue of the gadget;
  - the resistor ends with a late-arriving duple R = (Rt, R0) presenting a
    positive trigger opposite Y and the matching guard opposite X;
  - whichever part completes second binds with total strength exactly 1
    (+1 anchor, +1 trigger, -1 guard); X is then held at a strength-0 cut and
    detaches, exposing the duple's internal glue;
  - one outcome duple per placeable tile competes for the freed cell via that
    internal glue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import core
from ..core import Assembly, Duple, Glue, TileType, make_drgtas

NEG = -1


@dataclass
class GadgetTemplate:
    kind: str           # adjacent-cooperator | gap-cooperator | crosser
    part: str           # finger | resistor | crosser-core | combined
    parameters: tuple   # simulated glue pair or crossing direction
    footprint: dict[tuple[int, int], str] = field(default_factory=dict)
    tiles: dict[str, dict[str, Glue]] = field(default_factory=dict)
    duples: list[Duple] = field(default_factory=list)
    singletons: set[str] = field(default_factory=set)
    outcome_duples: list[str] = field(default_factory=list)
    notes: str = ""


class _Reg:
    """Small tile/duple registry shared by the fixture builders."""

    def __init__(self, prefix: str):
        self.prefix = prefix
        self.tiles: dict[str, dict[str, Glue]] = {}
        self.duples: list[Duple] = []
        self.singles: set[str] = set()

    def t(self, name: str, single: bool = True, **faces: tuple[str, int]) -> str:
        tid = f"{self.prefix}{name}"
        fs = {d.upper(): Glue(f"{self.prefix}{lab}" if s != 0 else lab, s)
              for d, (lab, s) in faces.items()}
        if tid in self.tiles and self.tiles[tid] != fs:
            raise ValueError(f"conflicting tile {tid}")
        self.tiles[tid] = fs
        if single:
            self.singles.add(tid)
        return tid

    def duple(self, t1: str, t2: str, axis: str) -> Duple:
        d = Duple(t1, t2, axis)
        self.duples.append(d)
        self.singles.discard(t1)
        self.singles.discard(t2)
        return d

    def tile_types(self) -> list[TileType]:
        return [TileType(tid, fs) for tid, fs in self.tiles.items()]


def build_adjacent_cooperator(glue_a: str, glue_b: str, outcomes: list[str],
                              prefix: str = "ac.") -> GadgetTemplate | None:
    """Finger + resistor template pair for adjacent-corner cooperation.

    Returns None when outcomes is empty (the pair never cooperates, nothing is
    emitted). The returned template's fixture system replays the narrated
    sequence: trigger arrival, strength-1 duple binding, strength-0 detachment
    of the guard half, then outcome-duple competition at the freed cell.
    """
    if not outcomes:
        return None
    r = _Reg(prefix)
    # anchor chain: seed -> finger lane (row 1) and resistor lane (row 0)
    r.t("seed", e=("f0", 1), s=("a1", 1))
    fin = r.t("P1", w=("f0", 1), e=("fe", 1))
    r.t("A1", n=("a1", 1), e=("a2", 1))
    r.t("A2", w=("a2", 1), e=("a3", 1))
    # resistor duple (late): Rt bonded to the lane, presents the trigger; R0
    # carries the guard
    rt = r.t("Rt", single=False, w=("a3", 1), n=("rt", 1), e=("ri", 1))
    r0 = r.t("R0", single=False, w=("ri", 1), n=("gd", NEG))
    r.duple(rt, r0, "E")
    # hanging duple: Y inner (binds finger + trigger), X outer (guard)
    y = r.t("Y", single=False, w=("fe", 1), s=("rt", 1), e=("hi", 1))
    x = r.t("X", single=False, w=("hi", 1), s=("gd", NEG))
    r.duple(y, x, "E")
    outs = []
    for i, t in enumerate(outcomes):
        o1 = r.t(f"O1.{t}", single=False, w=("hi", 1), e=(f"oc.{t}", 1))
        o2 = r.t(f"O2.{t}", single=False, w=(f"oc.{t}", 1))
        d = r.duple(o1, o2, "E")
        outs.append(d.id)
    seed = Assembly({(-2, 1): f"{prefix}seed"})
    footprint = {(-2, 1): "seed", (-1, 1): "finger-tip", (0, 1): "Y", (1, 1): "X",
                 (-2, 0): "anchor", (-1, 0): "anchor", (0, 0): "Rt", (1, 0): "R0",
                 (2, 1): "outcome-tail"}
    tpl = GadgetTemplate("adjacent-cooperator", "combined", (glue_a, glue_b),
                         footprint, r.tiles, r.duples, r.singles, outs,
                         notes="finger row 1 east; resistor row 0 east; guard on X.S")
    tpl.system = make_drgtas(r.tile_types(), r.singles, r.duples, seed)  # type: ignore[attr-defined]
    tpl.seed = seed  # type: ignore[attr-defined]
    tpl.coop_cells = {"Y": (0, 1), "X": (1, 1), "Rt": (0, 0), "R0": (1, 0),
                      "P1": (-1, 1), "freed": (1, 1)}  # type: ignore[attr-defined]
    return tpl


def build_gap_cooperator(glue_a: str, glue_b: str, outcomes: list[str],
                         prefix: str = "gc.", extended: bool = True,
                         ) -> GadgetTemplate | None:
    """Adjacent cooperator extended with crossable bridge segments in the lane.

    The finger carries one bridge per crossing direction (three detaching cells
    framed by duple halves whose internal glues are dead to the supply), then
    the same tip mechanics as the adjacent cooperator.
    """
    if not outcomes:
        return None
    r = _Reg(prefix)
    r.t("seed", e=("f0", 1), s=("a1", 1))
    # bridge 1 (southbound crossers): alpha duple, middle, beta duple
    a1 = r.t("al1", single=False, w=("f0", 1), e=("ia", 1))
    a2 = r.t("al2", single=False, w=("ia", 1), e=("bm1", 1), n=("gd", NEG))
    r.duple(a1, a2, "E")
    r.t("M", w=("bm1", 1), e=("bm2", 1))
    b1 = r.t("be1", single=False, w=("bm2", 1), e=("ib", 1), n=("gd", NEG))
    b2 = r.t("be2", single=False, w=("ib", 1), e=("f1", 1))
    r.duple(b1, b2, "E")
    segs = [("f1", "f2")]
    if extended:
        # bridge 2 (northbound crossers): guards on the south faces
        a1b = r.t("al1b", single=False, w=("f1", 1), e=("ia2", 1))
        a2b = r.t("al2b", single=False, w=("ia2", 1), e=("bm3", 1), s=("gd", NEG))
        r.duple(a1b, a2b, "E")
        r.t("M2", w=("bm3", 1), e=("bm4", 1))
        b1b = r.t("be1b", single=False, w=("bm4", 1), e=("ib2", 1), s=("gd", NEG))
        b2b = r.t("be2b", single=False, w=("ib2", 1), e=("f2", 1))
        r.duple(b1b, b2b, "E")
        fin_in = "f2"
    else:
        fin_in = "f1"
    r.t("P1", w=(fin_in, 1), e=("fe", 1))
    rt = r.t("Rt", single=False, w=("a9", 1), n=("rt", 1), e=("ri", 1))
    r0 = r.t("R0", single=False, w=("ri", 1), n=("gd", NEG))
    r.duple(rt, r0, "E")
    y = r.t("Y", single=False, w=("fe", 1), s=("rt", 1), e=("hi", 1))
    x = r.t("X", single=False, w=("hi", 1), s=("gd", NEG))
    r.duple(y, x, "E")
    outs = []
    for t in outcomes:
        o1 = r.t(f"O1.{t}", single=False, w=("hi", 1), e=(f"oc.{t}", 1))
        o2 = r.t(f"O2.{t}", single=False, w=(f"oc.{t}", 1))
        outs.append(r.duple(o1, o2, "E").id)
    # resistor anchor chain along row 0 beneath the full lane
    width = 12 if extended else 7
    r.t("A1", n=("a1", 1), e=("c0", 1))
    for i in range(width - 2):
        r.t(f"A{i + 2}", w=(f"c{i}", 1), e=(f"c{i + 1}", 1))
    r.t(f"A{width}", w=(f"c{width - 2}", 1), e=("a9", 1))
    x0 = -width - 1
    seed = Assembly({(x0, 1): f"{prefix}seed"})
    tpl = GadgetTemplate("gap-cooperator", "combined", (glue_a, glue_b), {},
                         r.tiles, r.duples, r.singles, outs,
                         notes="bridges precede the tip duple; extended form has "
                               "lanes for crossers from either direction")
    tpl.system = make_drgtas(r.tile_types(), r.singles, r.duples, seed)  # type: ignore[attr-defined]
    tpl.seed = seed  # type: ignore[attr-defined]
    # lane coordinates for the first bridge, west to east from the seed
    tpl.bridge_cells = [(x0 + 1, 1), (x0 + 2, 1), (x0 + 3, 1), (x0 + 4, 1), (x0 + 5, 1)]  # type: ignore[attr-defined]
    tpl.x0 = x0  # type: ignore[attr-defined]
    return tpl


def build_crosser(direction: str = "S", prefix: str = "cr.") -> GadgetTemplate:
    """A crossing path plus its kit over a gap-cooperator bridge.

    The fixture grows the bridge lane eastward and a crossing path southward
    into it; the kit's two flanking duples each bind with total strength one,
    induce the strength-0 cut around the three-cell bridge segment, and the
    freed middle cell carries the path onward.
    """
    r = _Reg(prefix)
    # gap-cooperator style lane: seed, alpha duple, middle, beta duple, tail
    r.t("seed", e=("f0", 1), n=("u1", 1))
    a1 = r.t("al1", single=False, w=("f0", 1), e=("ia", 1))
    a2 = r.t("al2", single=False, w=("ia", 1), e=("bm1", 1), n=("gd", NEG))
    r.duple(a1, a2, "E")
    r.t("M", w=("bm1", 1), e=("bm2", 1))
    b1 = r.t("be1", single=False, w=("bm2", 1), e=("ib", 1), n=("gd", NEG))
    b2 = r.t("be2", single=False, w=("ib", 1), e=("f1", 1))
    r.duple(b1, b2, "E")
    r.t("P1", w=("f1", 1), e=("fe", 1), n=("d2", 1))  # lane tail, anchored above
    # overhead chain from the seed over the crossing column and down to the tail
    r.t("U1", s=("u1", 1), n=("u2", 1))
    r.t("U2", s=("u2", 1), n=("u3", 1))
    r.t("U3", s=("u3", 1), e=("v1", 1))
    r.t("V1", w=("v1", 1), e=("v2", 1))
    r.t("V2", w=("v2", 1), e=("v3", 1))
    r.t("V3", w=("v3", 1), s=("c0", 1), e=("v4", 1))
    r.t("V4", w=("v4", 1), e=("v5", 1))
    r.t("V5", w=("v5", 1), e=("v6", 1))
    r.t("V6", w=("v6", 1), s=("d0", 1))
    r.t("D1", n=("d0", 1), s=("d1", 1))
    r.t("D2", n=("d1", 1), s=("d2", 1))
    # crossing path: C2 then C1 (the singleton stopped by the bridge)
    r.t("C2", n=("c0", 1), s=("c1", 1), w=("cxw2", 1), e=("cxe2", 1))
    r.t("C1", n=("c1", 1), w=("cxw", 1), e=("cxe", 1), s=("cc", 1))
    # flanking duples (each +1 +1 -1 = 1)
    dw1 = r.t("DW1", single=False, e=("cxw", 1), s=("gd", NEG), n=("iw", 1))
    dw2 = r.t("DW2", single=False, s=("iw", 1), e=("cxw2", 1))
    r.duple(dw1, dw2, "N")
    de1 = r.t("DE1", single=False, w=("cxe", 1), s=("gd", NEG), n=("ie", 1))
    de2 = r.t("DE2", single=False, s=("ie", 1), w=("cxe2", 1))
    r.duple(de1, de2, "N")
    # continuation singleton into the freed middle cell
    r.t("CD", n=("cc", 1), s=("c2", 1))
    r.t("CD2", n=("c2", 1))
    seed = Assembly({(-4, 1): f"{prefix}seed"})
    tpl = GadgetTemplate("crosser", "crosser-core", (direction,), {},
                         r.tiles, r.duples, r.singles, [],
                         notes="flank duples bind at strength one only after the "
                               "crossing singleton arrives; the severed bridge trio "
                               "exposes only internal duple glues")
    tpl.system = make_drgtas(r.tile_types(), r.singles, r.duples, seed)  # type: ignore[attr-defined]
    tpl.seed = seed  # type: ignore[attr-defined]
    # key cells (absolute): bridge trio, crossing column
    tpl.cells = {  # type: ignore[attr-defined]
        "al1": (-3, 1), "al2": (-2, 1), "M": (-1, 1), "be1": (0, 1), "be2": (1, 1),
        "P1": (2, 1), "C2": (-1, 3), "C1": (-1, 2), "CD": (-1, 1), "CD2": (-1, 0),
        "DW1": (-2, 2), "DW2": (-2, 3), "DE1": (0, 2), "DE2": (0, 3),
    }
    return tpl
