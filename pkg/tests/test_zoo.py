from __future__ import annotations

import pytest

from transpension import zoo
from transpension.errors import BadParams, UnknownEntry
from transpension.fincat import check_category_laws


def test_names_are_sorted_and_buildable():
    names = zoo.names()
    assert names == sorted(names)
    for name in names:
        _, entry, spec = zoo.build(name)
        assert entry.name == name
        assert set(entry.expected) >= {"spooky", "cancellative", "affine", "connection_free",
                                       "quantifiable"}


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        zoo.build("no-such-entry")


@pytest.mark.parametrize("name,params", [("affine-cubes", {"k": "x"}), ("affine-cubes", {"n": 1}),
                                         ("clocks", {"K": 1, "k": 3}), ("depth-cubes", {"d": 1, "k": 2}),
                                         ("enhanced-embargo", {"variant": "codom"}),
                                         ("affine-cubes", {"k": 3, "involution": 1})])
def test_bad_params(name, params):
    with pytest.raises(BadParams):
        zoo.build(name, params)


def test_params_are_normalized():
    e = zoo.entry("affine-cubes", {"k": "2"})
    assert e.params == {"k": 2, "involution": 0}


def test_windows_are_cached_and_lawful():
    G = zoo.Cubes(1, True)
    assert zoo.window(G, 2) is zoo.window(zoo.Cubes(1, True), 2)
    assert check_category_laws(zoo.window(G, 2)).passed


def test_erasure_chain_is_a_total_order():
    # [DERIVED] a chain has exactly one map a → b when a ≤ b in the chain order
    C = zoo.window(zoo.Erasure(3), 0)
    counts = sorted(sum(len(C.hom(a, b)) for b in range(C.n_objects)) for a in range(C.n_objects))
    assert counts == list(range(1, C.n_objects + 1))


def test_depth_presentations_agree():
    assert zoo.depth_hom_audit(1) == []


def test_twisted_and_cube_windows_lawful():
    for G in (zoo.TwistedCubes(), zoo.Cubes(2, involution=True), zoo.Clocks(2), zoo.DepthCubes(2)):
        assert check_category_laws(zoo.window(G, 1)).passed


def test_golden_list_covers_every_family():
    assert {n for n, _ in zoo.golden_entries()} == set(zoo.names())
