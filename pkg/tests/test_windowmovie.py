"""Window movies, crossing submovies, splicing, matching-window search."""

import pytest

from tileforge.core import Assembly
from tileforge.dynamics import run
from tileforge.systems import finger_flagpole, line_grower_rgtas, periodic_arm_rgtas
from tileforge.windowmovie import (MoviesDifferError, Window, crossing_submovie,
                                   extract_movie, find_matching_windows, movies_match, splice)


def grow_line(n, seed=3):
    sys = line_grower_rgtas()
    seq = run(sys, rng_seed=seed, max_steps=n)
    return sys, seq


def test_empty_movie_for_disjoint_window():
    sys, seq = grow_line(4)
    m = extract_movie(seq, Window.vertical(100))
    assert m.entries == ()


def test_single_crossing_records_one_pair_each_side():
    sys, seq = grow_line(4)
    m = extract_movie(seq, Window.vertical(2))
    # the tile placed at x=2 presents its W glue across the window; the tile at
    # x=1 presented its E glue when placed (maximal trace records both)
    labels = [(e.vertex, e.direction) for e in m.entries]
    assert ((1, 0), "E") in labels and ((2, 0), "W") in labels


def test_submovie_drops_non_crossing_placements():
    sys, seq = grow_line(6)
    w = Window.vertical(2)
    m = extract_movie(seq, w)
    sub = crossing_submovie(m, seq, w)
    # the x=1 tile binds via its W bond (off-window): non-crossing, dropped;
    # the x=2 tile binds only via the window bond: crossing, kept
    verts = {e.vertex for e in sub.entries}
    assert (2, 0) in verts and (1, 0) not in verts


def test_identity_splice():
    sys, seq = grow_line(5)
    w = Window.vertical(2)
    res = splice(seq, w, seq, w)
    assert res.assembly == seq.result()
    assert res.certificate.result(validate=True) == res.assembly


def test_pump_line_splice():
    sys, seq = grow_line(8)
    res = splice(seq, Window.vertical(3), seq, Window.vertical(5))
    # alpha_L (x < 3) + beta_R shifted west by 2: a shorter line, still valid
    assert res.certificate.result(validate=True) == res.assembly
    res2 = splice(seq, Window.vertical(5), seq, Window.vertical(3))
    # alpha_L (x < 5) + beta_R shifted east by 2: pumped longer line
    assert len(res2.assembly) == len(seq.result()) + 2
    assert res2.certificate.result(validate=True) == res2.assembly


def test_splice_mismatch_raises():
    sys, seq = grow_line(6)
    # a window through the seed vs one far out: different movies
    with pytest.raises(MoviesDifferError):
        splice(seq, Window.vertical(1), seq, Window.vertical(100))


def test_find_matching_windows_periodic():
    sys = periodic_arm_rgtas(period=3)
    seq = run(sys, rng_seed=11, max_steps=40)
    pairs = find_matching_windows(seq, "vertical", range(2, 14), use_submovies=False)
    assert pairs, "periodic growth must yield matching translated windows"
    # at least one pair at pitch = period (or a multiple)
    assert any((w2.c - w1.c) % 3 == 0 for w1, w2, _ in pairs)


def test_movie_invariant_under_event_order_preservation():
    sys, seq = grow_line(5, seed=1)
    m1 = extract_movie(seq, Window.vertical(2))
    m2 = extract_movie(seq, Window.vertical(2))
    assert movies_match(m1, m2)
