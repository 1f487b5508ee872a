"""Core domain model: binding graphs, cuts, stability, subassembly, restrict."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tileforge.core import (Assembly, Duple, Glue, InvalidPartitionError, SemanticError,
                            binding_graph, brute_force_stable, cut_strength, is_stable,
                            make_atam, make_drgtas, make_rgtas, restrict, subassembly, tile)


def two_tile_system(strength=1):
    g = Glue("a", strength)
    tiles = [tile("t1", e=g), tile("t2", w=g)]
    seed = Assembly({(0, 0): "t1"})
    if strength >= 0 and strength <= 1:
        return make_rgtas(tiles, seed)
    return make_atam(tiles, seed, strength)


def test_binding_graph_single_tile():
    sys = two_tile_system()
    a = Assembly({(0, 0): "t1"})
    g = binding_graph(a, sys)
    assert len(g.vertices) == 1 and len(g.edges) == 0


def test_binding_graph_matching_pair():
    sys = two_tile_system()
    a = Assembly({(0, 0): "t1", (1, 0): "t2"})
    g = binding_graph(a, sys)
    assert g.edges == (((0, 0), (1, 0), 1),)


def test_binding_graph_negative_edge():
    neg = Glue("n", -1)
    pos = Glue("p", 1)
    tiles = [tile("a", e=neg, n=pos), tile("b", w=neg, n=pos), tile("c", s=pos)]
    seed = Assembly({(0, 0): "a"})
    sys = make_rgtas(tiles, seed)
    a = Assembly({(0, 0): "a", (1, 0): "b", (0, 1): "c", (1, 1): "c"})
    g = binding_graph(a, sys)
    strengths = {(e[0], e[1]): e[2] for e in g.edges}
    assert strengths[((0, 0), (1, 0))] == -1
    # positive-only adjacency filter drops the negative edge
    adj = g.adjacency(positive_only=True)
    assert all(s > 0 for lst in adj.values() for _nb, s in lst)


def test_cut_strength_simple_and_symmetry():
    sys = two_tile_system()
    a = Assembly({(0, 0): "t1", (1, 0): "t2"})
    assert cut_strength(a, sys, [(0, 0)]) == 1
    assert cut_strength(a, sys, [(1, 0)]) == 1


def test_cut_strength_duple_half_with_negative_contact_is_zero():
    # duple halves joined by strength 1, plus an adjacent matching -1 contact
    tiles = [
        tile("x", e=Glue("i", 1), s=Glue("gd", -1)),
        tile("y", w=Glue("i", 1)),
        tile("base", n=Glue("gd", -1), e=Glue("k", 1)),
        tile("base2", w=Glue("k", 1), n=Glue("up", 1)),
        tile("anchor", s=Glue("up", 1)),
    ]
    seed = Assembly({(0, 0): "base"})
    sys = make_rgtas(tiles, seed)
    a = Assembly({(0, 0): "base", (1, 0): "base2", (1, 1): "anchor",
                  (0, 1): "x", (1, 2): None or "y"}, check_connected=False)
    # simpler: x at (0,1) bound to y at... place y east of x at (1,1)? occupied.
    a = Assembly({(0, 0): "base", (0, 1): "x", (1, 1): "y"}, check_connected=False)
    # x binds y with +1 (internal) and touches base with gd (-1): cut {x} = 0
    assert cut_strength(a, sys, [(0, 1)]) == 0


def test_cut_invalid_partition():
    sys = two_tile_system()
    a = Assembly({(0, 0): "t1", (1, 0): "t2"})
    with pytest.raises(InvalidPartitionError):
        cut_strength(a, sys, [])
    with pytest.raises(InvalidPartitionError):
        cut_strength(a, sys, [(0, 0), (1, 0)])
    with pytest.raises(InvalidPartitionError):
        cut_strength(a, sys, [(5, 5)])


def test_three_tile_line_cut():
    g = Glue("a", 1)
    tiles = [tile("m", e=g, w=g)]
    sys = make_rgtas(tiles, Assembly({(0, 0): "m"}))
    a = Assembly({(0, 0): "m", (1, 0): "m", (2, 0): "m"})
    # middle vs rest crosses two strength-1 bonds
    assert cut_strength(a, sys, [(1, 0)]) == 2


def test_is_stable_basics():
    sys = two_tile_system()
    single = Assembly({(0, 0): "t1"})
    assert is_stable(single, 1, sys).stable
    assert is_stable(single, 7, sys).stable  # no cut exists
    pair = Assembly({(0, 0): "t1", (1, 0): "t2"})
    assert is_stable(pair, 1, sys).stable
    assert not is_stable(pair, 2, sys).stable


def test_subassembly_and_restrict():
    sys = two_tile_system()
    a = Assembly({(0, 0): "t1", (1, 0): "t2"})
    b = Assembly({(0, 0): "t1"})
    assert subassembly(b, a)
    assert subassembly(a, a)
    assert not subassembly(a, b)
    c = Assembly({(5, 5): "t1"})
    assert not subassembly(c, a)
    r = restrict(a, [(1, 0)])
    assert r.tiles == {(1, 0): "t2"}
    assert restrict(a, a.domain()) == a
    with pytest.raises(InvalidPartitionError):
        restrict(a, [(9, 9)])


def test_glue_consistency_enforced_at_load():
    tiles = [tile("a", e=Glue("g", 1)), tile("b", w=Glue("g", 2))]
    with pytest.raises(SemanticError):
        make_atam(tiles, Assembly({(0, 0): "a"}), 2)


def test_atam_strength_above_tau_rejected():
    tiles = [tile("a", e=Glue("g", 3))]
    with pytest.raises(SemanticError):
        make_atam(tiles, Assembly({(0, 0): "a"}), 2)


def test_duple_internal_glue_must_be_strength_one():
    tiles = [tile("a", e=Glue("i", 1)), tile("b", w=Glue("i", 1))]
    seed = Assembly({(0, 0): "a"})
    sysok = make_drgtas(tiles, ["a"], [Duple("a", "b", "E")], seed)
    assert sysok.duples[0].id == "a+b@E"
    bad = [tile("a", e=Glue("i", -1)), tile("b", w=Glue("i", -1))]
    with pytest.raises(SemanticError):
        make_drgtas(bad, ["a"], [Duple("a", "b", "E")], seed)


def test_unstable_seed_rejected():
    g0 = Glue("z", 0)
    tiles = [tile("a", e=g0), tile("b", w=g0)]
    with pytest.raises(SemanticError):
        make_rgtas(tiles, Assembly({(0, 0): "a", (1, 0): "b"}))


# -- property: exact stability agrees with the brute-force oracle ------------

@st.composite
def small_rg_assembly(draw):
    """Random connected assembly (<= 8 tiles) over a random rg tile set."""
    labels = ["a", "b", "c"]
    strengths = {lab: draw(st.sampled_from([-1, 1, 1])) for lab in labels}
    types = []
    for i in range(4):
        kw = {}
        for d, key in (("n", "n"), ("e", "e"), ("s", "s"), ("w", "w")):
            lab = draw(st.sampled_from(labels + [None]))
            if lab is not None:
                kw[key] = Glue(lab, strengths[lab])
        types.append(tile(f"t{i}", **kw))
    cells = {(0, 0): draw(st.sampled_from([t.id for t in types]))}
    n = draw(st.integers(min_value=1, max_value=7))
    for _ in range(n):
        frontier = sorted({(x + dx, y + dy) for (x, y) in cells
                           for dx, dy in ((0, 1), (1, 0), (0, -1), (-1, 0))} - set(cells))
        loc = draw(st.sampled_from(frontier))
        cells[loc] = draw(st.sampled_from([t.id for t in types]))
    return types, cells


@given(small_rg_assembly())
@settings(max_examples=60, deadline=None)
def test_exact_stability_matches_brute_force(data):
    types, cells = data
    seed = Assembly({(0, 0): cells[(0, 0)]})
    try:
        sys = make_rgtas(types, seed)
    except SemanticError:
        return  # unstable singleton seed cannot happen; glue checks may reject
    a = Assembly(cells, check_connected=False)
    got = is_stable(a, 1, sys, mode="exact").stable
    want = brute_force_stable(a, 1, sys)
    assert got == want
