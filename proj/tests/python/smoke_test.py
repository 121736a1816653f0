"""Python smoke tests for the compiled module.

Runs standalone (python smoke_test.py) or under pytest.
"""

import math
import os
import tempfile

import numpy as np

import hopse


def test_route_counts():
    assert hopse.count_neighborhoods(2) == 12
    assert hopse.count_minimal_routes(1) == 2
    assert hopse.count_extended_routes(2) == 54
    routes = hopse.enumerate_minimal_routes(2)
    assert len(routes) == 6
    assert all(len(r) == 3 for r in routes)
    assert ["I_{0->1}", "I_{1->2}", "I_{2->0}"] in routes


def test_taxonomy():
    assert hopse.taxonomy_names() == [
        "Adj-1", "Adj-2", "Adj-3", "Inc-1", "Inc-2", "Inc-3", "Mix-1", "Mix-2",
    ]
    inc1 = [nf.name() for nf in hopse.taxonomy_set("Inc-1")]
    assert inc1 == ["A_{0,1}", "I_{0->1}", "I_{1->2}"]
    mix2_r1 = hopse.rank_targeted(hopse.taxonomy_set("Mix-2"), 1)
    assert [nf.name() for nf in mix2_r1] == ["A_{1,2}", "A_{1,0}"]


def test_lifting():
    k4 = hopse.InputGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    clique = hopse.clique_lift(k4, max_rank=2)
    assert [len(clique.cells_of_rank(r)) for r in range(3)] == [4, 6, 4]
    cyc = hopse.cycle_lift(k4, max_cycle_len=6)
    assert len(cyc.cells_of_rank(2)) == 4

    c4 = hopse.InputGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert hopse.chordless_cycles(c4) == [[0, 1, 2, 3]]


def test_complex_and_isomorphism():
    cc = hopse.build_complex([([0, 1], 1), ([1, 2], 1)])
    assert cc.num_cells == 5  # three auto-inserted singletons
    relabeled = hopse.build_complex([([2, 1], 1), ([1, 0], 1)])
    assert hopse.is_isomorphic(cc, relabeled)


def test_hasse_and_encodings():
    tri = hopse.InputGraph(3, [(0, 1), (0, 2), (1, 2)])
    cc = hopse.clique_lift(tri, max_rank=2)
    h = hopse.hasse_graph(cc, hopse.NeighborhoodFunction.parse("I_{2->1}"))
    assert len(h) == 4
    assert len(h.arcs) == 3

    enc = hopse.encode_graph(tri, "rwse:K=3")
    assert enc.values.shape == (3, 3)
    np.testing.assert_allclose(enc.values, [[0, 0.5, 0.25]] * 3, atol=1e-12)

    hk = hopse.encode_graph(hopse.InputGraph(2, [(0, 1)]), "hk:K=1")
    expected = (1.0 + math.exp(-2.0)) / 2.0
    np.testing.assert_allclose(hk.values, [[expected]] * 2, atol=1e-12)


def test_bundle_roundtrip():
    tri = hopse.InputGraph(3, [(0, 1), (0, 2), (1, 2)])
    cc = hopse.clique_lift(tri, max_rank=2)
    bundle = hopse.precompute_bundle(cc, "Inc-1", "rwse:K=4", max_rank=2)
    assert bundle.max_rank == 2
    assert bundle.channel(0, 0).shape == (3, 4)
    assert bundle.init_features(0).shape == (3, 1)
    assert bundle.complex_hash == cc.content_hash()

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "t.hb")
        hopse.save_bundle(path, bundle)
        back = hopse.load_bundle(path)
        assert back == bundle
        np.testing.assert_array_equal(back.channel(0, 0), bundle.channel(0, 0))


def test_errors():
    try:
        hopse.taxonomy_set("Adj-9")
        raise AssertionError("expected UnknownSetError")
    except ValueError:
        pass


def test_train_demo_smoke():
    acc, trace = hopse.train_demo(samples=16, steps=60, seed=7)
    assert len(trace) == 60
    assert trace[-1] < trace[0]
    assert acc >= 0.9


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
