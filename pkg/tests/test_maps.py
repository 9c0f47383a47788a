import random

import pytest

from dubrovnik.maps import (InvalidMap, MapBuilder, NonPlanar, PlanarMap,
                            Surgery, canonical_signature)


def build_theta():
    b = MapBuilder()
    w1, w2 = b.edge(wide=True)
    a1, b1 = b.edge()
    a2, b2 = b.edge()
    b.node([w1, a1, a2])
    b.node([w2, b2, b1])
    return b.finish()


def test_theta_faces():
    th = build_theta()
    kinds = sorted(tuple(sorted(th.wide[h] for h in f)) for f in th.faces())
    assert kinds == [(False, False), (False, True), (False, True)]


def test_torus_embedding_rejected():
    b = MapBuilder()
    w1, w2 = b.edge(wide=True)
    a1, b1 = b.edge()
    a2, b2 = b.edge()
    b.node([w1, a1, a2])
    b.node([w2, b1, b2])
    with pytest.raises(NonPlanar):
        b.finish()


def test_twin_validation():
    with pytest.raises(InvalidMap):
        PlanarMap([0, 1], [1, 0], [False, False])   # fixed points


def relabel(g: PlanarMap, rng: random.Random) -> PlanarMap:
    perm = list(range(g.n_half))
    rng.shuffle(perm)
    twin = [0] * g.n_half
    nxt = [0] * g.n_half
    wide = [False] * g.n_half
    for h in range(g.n_half):
        twin[perm[h]] = perm[g.twin[h]]
        nxt[perm[h]] = perm[g.nxt[h]]
        wide[perm[h]] = g.wide[h]
    return PlanarMap(twin, nxt, wide, frozenset(), g.free_loops, check=False)


def test_signature_relabeling_invariance():
    rng = random.Random(0)
    th = build_theta()
    sig = canonical_signature(th)
    for _ in range(1000):
        assert canonical_signature(relabel(th, rng)) == sig


def test_signature_distinguishes():
    th = build_theta()
    loop = PlanarMap([], [], [], frozenset(), 1)
    two_loops = PlanarMap([], [], [], frozenset(), 2)
    sigs = {canonical_signature(g) for g in (th, loop, two_loops)}
    assert len(sigs) == 3


def test_surgery_free_loop():
    th = build_theta()
    # removing both vertices while splicing one edge pair into a circle
    f = [f for f in th.faces()
         if len(f) == 2 and sorted(th.wide[h] for h in f) == [False, True]][0]
    hs = [h for h in f if not th.wide[h]][0]
    hw = [h for h in f if th.wide[h]][0]
    s = Surgery(th)
    s.kill(th.node_of(hw))
    s.kill(th.node_of(th.twin[hw]))
    s.pair(th.nxt[hw], th.nxt[hs])
    g, _ = s.finish()
    assert g.n_half == 0 and g.free_loops == 1


def test_surgery_rejects_double_use():
    th = build_theta()
    s = Surgery(th)
    s.kill(0)
    s.kill(1)
    s.pair(0, 1)
    with pytest.raises(InvalidMap):
        s.pair(0, 2)


def test_json_round_trip():
    th = build_theta()
    data = th.to_json()
    back = PlanarMap.from_json(data)
    assert canonical_signature(back) == canonical_signature(th)
    assert data["freeLoops"] == 0
    assert sorted(data["halfedges"]["kind"])[-2:] == ["wide", "wide"]
