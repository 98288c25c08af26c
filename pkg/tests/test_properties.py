from __future__ import annotations

from hypothesis import given, settings, strategies as st
from oracles import brute_homs, is_presheaf

from transpension import zoo
from transpension.fincat import full_subcategory
from transpension.presheaf import (central_lift, check_presheaf, count_homs, iso_search, left_lift,
                                   random_presheaf, right_lift)
from transpension.transpension import four_functors

CUBE = zoo.window(zoo.Cubes(2), 1)
SUB, INC = full_subcategory(zoo.window(zoo.Cubes(2), 2), [0, 1])
SMALL = zoo.entry("affine-cubes", {"k": 1}).multiplier(1)
FF = four_functors(SMALL)

seeds = st.integers(min_value=0, max_value=10_000)
common = settings(max_examples=25, deadline=None)


@common
@given(seeds, st.integers(min_value=1, max_value=3))
def test_random_presheaf_is_presheaf(seed, cells):
    P = random_presheaf(CUBE, seed, max_cells=cells)
    assert is_presheaf(P) and check_presheaf(P).passed
    assert max(P.sizes()) <= cells


@common
@given(seeds, seeds)
def test_hom_count_matches_brute_force(s1, s2):
    X = random_presheaf(CUBE, s1, max_cells=2)
    Y = random_presheaf(CUBE, s2, max_cells=2)
    assert count_homs(X, Y) == len(brute_homs(X, Y))


@common
@given(seeds)
def test_iso_search_reflexive(seed):
    X = random_presheaf(CUBE, seed)
    iso = iso_search(X, X)
    assert iso is not None and iso.is_iso()


@common
@given(seeds, seeds)
def test_lift_adjunction_counts(s1, s2):
    # F_! ⊣ F* ⊣ F_* as equalities of hom-set sizes
    G = random_presheaf(SUB, s1, max_cells=2)
    H = random_presheaf(INC.target, s2, max_cells=2)
    assert count_homs(left_lift(INC, G), H) == count_homs(G, central_lift(INC, H))
    assert count_homs(central_lift(INC, H), G) == count_homs(H, right_lift(INC, G))


@common
@given(seeds, seeds)
def test_four_functor_counts(s1, s2):
    G = random_presheaf(FF.EW, s1, max_cells=2)
    D = random_presheaf(FF.EV, s2, max_cells=2)
    assert count_homs(FF.fresh(G), D) == count_homs(G, FF.lolli(D))
    assert count_homs(FF.lolli(D), G) == count_homs(D, FF.transp(G))


@common
@given(seeds)
def test_poles_on_random_inputs(seed):
    G = random_presheaf(FF.EW, seed)
    R = FF.transp(G)
    for e in FF.boundary_elements():
        if FF.interior[e]:
            assert len(R.cells[e]) == 1
