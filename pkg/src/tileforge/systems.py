"""Bundled tile systems: the finger/flagpole system and the desk-scale corpus."""

from __future__ import annotations

from .core import Assembly, Duple, Glue, TileSystem, make_atam, make_drgtas, make_rgtas, tile


def _g2(label: str) -> Glue:
    return Glue(label, 2)


def _g1(label: str) -> Glue:
    return Glue(label, 1)


def finger_flagpole() -> TileSystem:
    """The 18-tile temperature-2 system with nondeterministic equal-armed growth.

    Arms grow east at rows +2 and -2 to nondeterministic lengths; a one-tile
    figure descends/ascends from each arm tip; the keystone fits at row 0 only
    when the two strength-1 glues g11 and g14 are simultaneously present, then
    the flagpole and flag grow. All other glues are strength 2.
    """
    tiles = [
        tile("seed", n=_g2("g1"), s=_g2("g2")),
        tile("up", s=_g2("g1"), n=_g2("g3")),
        tile("up2", s=_g2("g3"), e=_g2("g4")),
        tile("dn", n=_g2("g2"), s=_g2("g5")),
        tile("dn2", n=_g2("g5"), e=_g2("g6")),
        tile("armT", w=_g2("g4"), e=_g2("g4")),
        tile("tipT", w=_g2("g4"), s=_g2("g7")),
        tile("armB", w=_g2("g6"), e=_g2("g6")),
        tile("tipB", w=_g2("g6"), n=_g2("g8")),
        tile("figT", n=_g2("g7"), s=_g1("g11")),
        tile("figB", s=_g2("g8"), n=_g1("g14")),
        tile("keystone", n=_g1("g11"), s=_g1("g14"), e=_g2("g15")),
        tile("pole1", w=_g2("g15"), e=_g2("g16")),
        tile("pole2", w=_g2("g16"), n=_g2("g17")),
        tile("flag1", s=_g2("g17"), e=_g2("g18")),
        tile("flag2", w=_g2("g18"), n=_g2("g9")),
        tile("flag3", s=_g2("g9"), w=_g2("g10")),
        tile("flag4", e=_g2("g10")),
    ]
    seed = Assembly({(0, 0): "seed"})
    return make_atam(tiles, seed, 2)


def ff_expected_terminal(k: int, j: int) -> Assembly:
    """Oracle: the terminal assembly with top arm length k and bottom arm length j.

    Built directly from the frozen geometry, independent of the dynamics engine.
    """
    t: dict[tuple[int, int], str] = {(0, 0): "seed", (0, 1): "up", (0, 2): "up2",
                                     (0, -1): "dn", (0, -2): "dn2"}
    for x in range(1, k):
        t[(x, 2)] = "armT"
    t[(k, 2)] = "tipT"
    for x in range(1, j):
        t[(x, -2)] = "armB"
    t[(j, -2)] = "tipB"
    t[(k, 1)] = "figT"
    t[(j, -1)] = "figB"
    if k == j:
        t[(k, 0)] = "keystone"
        t[(k + 1, 0)] = "pole1"
        t[(k + 2, 0)] = "pole2"
        t[(k + 2, 1)] = "flag1"
        t[(k + 3, 1)] = "flag2"
        t[(k + 3, 2)] = "flag3"
        t[(k + 2, 2)] = "flag4"
    return Assembly(t)


def trivial_one_tile() -> TileSystem:
    """|T| = 1: a lone seed tile; no growth."""
    return make_atam([tile("only")], Assembly({(0, 0): "only"}), 2)


def coop5() -> TileSystem:
    """|T| = 5 cooperation toy: self-stacking north arm, hooks, south stub.

    The cooperative tile C fits at (1, 1) only when a hook sits at (1, 2) and
    the stub at (1, 0): its two strength-1 glues then sum to temperature 2.
    """
    tiles = [
        tile("L", n=_g2("gn"), e=_g2("ge")),
        tile("AN", s=_g2("gn"), n=_g2("gn"), e=_g2("hn")),
        tile("HN", w=_g2("hn"), s=_g1("cN")),
        tile("ES", w=_g2("ge"), n=_g1("cS")),
        tile("C", n=_g1("cN"), s=_g1("cS")),
    ]
    return make_atam(tiles, Assembly({(0, 0): "L"}), 2)


def twosided_ns() -> TileSystem:
    """Two-sided case class a: north/south cooperation (same shape as coop5)."""
    return coop5()


def twosided_ew() -> TileSystem:
    """Two-sided case class b: east/west cooperation across an arch."""
    tiles = [
        tile("L", n=_g2("up"), e=_g1("cw")),
        tile("U", s=_g2("up"), e=_g2("h1")),
        tile("H1", w=_g2("h1"), e=_g2("h2")),
        tile("H2", w=_g2("h2"), s=_g2("dn")),
        tile("R", n=_g2("dn"), w=_g1("ce")),
        tile("C", w=_g1("cw"), e=_g1("ce")),
    ]
    return make_atam(tiles, Assembly({(0, 0): "L"}), 2)


def twosided_ws() -> TileSystem:
    """Two-sided case class c: west/south adjacent-corner cooperation."""
    tiles = [
        tile("L", n=_g2("a"), e=_g2("b")),
        tile("Wt", s=_g2("a"), e=_g1("cw1")),
        tile("St", w=_g2("b"), n=_g1("cs1")),
        tile("C", w=_g1("cw1"), s=_g1("cs1")),
    ]
    return make_atam(tiles, Assembly({(0, 0): "L"}), 2)


def twosided_es() -> TileSystem:
    """Two-sided case class d: east/south adjacent-corner cooperation."""
    tiles = [
        tile("L", n=_g2("a"), e=_g2("b")),
        tile("St", w=_g2("b"), n=_g1("cs")),
        tile("Up", s=_g2("a"), n=_g2("u")),
        tile("Up2", s=_g2("u"), e=_g2("h")),
        tile("HT", w=_g2("h"), e=_g2("k")),
        tile("HD", w=_g2("k"), s=_g2("m")),
        tile("RT", n=_g2("m"), w=_g1("ce")),
        tile("C", e=_g1("ce"), s=_g1("cs")),
    ]
    return make_atam(tiles, Assembly({(0, 0): "L"}), 2)


def onesided_s2() -> TileSystem:
    """One-sided toy: strength-2 attachments east and west of the seed."""
    tiles = [
        tile("L", e=_g2("g2"), w=_g2("g4")),
        tile("R", w=_g2("g2"), e=_g2("g3")),
        tile("R2", w=_g2("g3")),
        tile("Q", e=_g2("g4")),
    ]
    return make_atam(tiles, Assembly({(0, 0): "L"}), 2)


def pocket_case_h() -> TileSystem:
    """A ring seed enclosing one pocket cell fillable only by N/S cooperation.

    The east/west pocket neighbors present mismatching strength-1 glues, so all
    four probes enter the pocket's block in the simulator but only the N x S
    pair can cooperate: the compiled system must fall back to the last-resort
    nondeterministic region to decide the block.
    """
    ring = {
        (0, 0): "r_sw", (1, 0): "r_s", (2, 0): "r_se", (2, 1): "r_e",
        (2, 2): "r_ne", (1, 2): "r_n", (0, 2): "r_nw", (0, 1): "r_w",
    }
    tiles = [
        tile("r_sw", e=_g2("q1"), n=_g2("q8")),
        tile("r_s", e=_g2("q2"), w=_g2("q1"), n=_g1("cS")),
        tile("r_se", w=_g2("q2"), n=_g2("q3")),
        tile("r_e", s=_g2("q3"), n=_g2("q4"), w=_g1("eMis")),
        tile("r_ne", s=_g2("q4"), w=_g2("q5")),
        tile("r_n", e=_g2("q5"), w=_g2("q6"), s=_g1("cN")),
        tile("r_nw", e=_g2("q6"), s=_g2("q7")),
        tile("r_w", n=_g2("q7"), s=_g2("q8"), e=_g1("wMis")),
        tile("C", n=_g1("cN"), s=_g1("cS")),
    ]
    return make_atam(tiles, Assembly(ring), 2)


def line_grower_rgtas(length_glue: str = "ln") -> TileSystem:
    """One-way line grower at tau = 1: a single tile extending east forever."""
    tiles = [
        tile("seed", e=_g1(length_glue)),
        tile("seg", w=_g1(length_glue), e=_g1(length_glue)),
    ]
    return make_rgtas(tiles, Assembly({(0, 0): "seed"}))


def periodic_arm_rgtas(period: int = 3) -> TileSystem:
    """An rgTAS growing an eastward arm with a repeating vertical bump motif.

    Used by the window-matching search: vertical windows one period apart see
    identical movies.
    """
    tiles = []
    for i in range(period):
        nxt = (i + 1) % period
        kws = {"w": _g1(f"p{i}"), "e": _g1(f"p{nxt}")}
        if i == 0:
            kws["n"] = _g1("bump")
        tiles.append(tile(f"seg{i}", **kws))
    tiles.append(tile("bump", s=_g1("bump")))
    tiles.append(tile("seed", e=_g1("p1")))
    seed = Assembly({(0, 0): "seed"})
    return make_rgtas(tiles, seed)


BUNDLED = {
    "finger_flagpole": finger_flagpole,
    "trivial": trivial_one_tile,
    "coop5": coop5,
    "twosided_ns": twosided_ns,
    "twosided_ew": twosided_ew,
    "twosided_ws": twosided_ws,
    "twosided_es": twosided_es,
    "onesided_s2": onesided_s2,
    "pocket_case_h": pocket_case_h,
}
