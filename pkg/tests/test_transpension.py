from __future__ import annotations

import dataclasses

import pytest

from transpension import zoo
from transpension.errors import UnsupportedCell
from transpension.presheaf import count_homs, initial_presheaf, sample_presheaves, terminal_presheaf
from transpension.transpension import (COMMUTATION_FIXTURES, FourFunctors, check_adjunction_chain,
                                       check_boundary_theorem, check_commutation_instance,
                                       check_elimination_support, check_fresh_exchange, check_kernel,
                                       check_poles, commutation_fixtures, four_functors, psi_choices)


@pytest.fixture(scope="module")
def small():
    """Unary affine cubes on a small window, small enough for hom counting."""
    return zoo.entry("affine-cubes", {"k": 1}).multiplier(1)


@pytest.fixture(scope="module")
def ff_box(box2):
    return four_functors(box2)


def test_adjunction_hom_counts(small):
    # [DERIVED] |Hom(fresh Γ, Δ)| = |Hom(Γ, ⊸Δ)| and |Hom(⊸Δ, Γ)| = |Hom(Δ, √Γ)|
    for FF in (four_functors(small), four_functors(small, "𝐲𝕀")):
        Ws = sample_presheaves(FF.EW, 1, 3, max_cells=2)
        Vs = sample_presheaves(FF.EV, 2, 3, max_cells=2)
        for G in Ws:
            for D in Vs:
                assert count_homs(FF.fresh(G), D) == count_homs(G, FF.lolli(D))
                assert count_homs(FF.lolli(D), G) == count_homs(D, FF.transp(G))


def test_transp_of_terminal_is_terminal(small):
    FF = four_functors(small)
    R = FF.transp(terminal_presheaf(FF.EW))
    assert all(len(c) == 1 for c in R.cells)


def test_poles(ff_box):
    # [PAPER] √Γ is a singleton over the boundary
    assert check_poles(ff_box, sample_presheaves(ff_box.EW, 0, 5)).passed


def test_transp_initial_counts_boundary(ff_box):
    # √⊥ has one cell at boundary elements and none at total ones
    R = ff_box.transp(initial_presheaf(ff_box.EW))
    for e in range(ff_box.EV.n_objects):
        if ff_box.interior[e]:
            assert len(R.cells[e]) == (0 if ff_box.split[e] else 1)


def test_boundary_theorem_and_sentinel(ff_box):
    assert check_boundary_theorem(ff_box).passed
    assert not check_boundary_theorem(ff_box, mutate=True).passed


def test_kernel_cube_passes(ff_box):
    assert check_kernel(ff_box).passed


def test_kernel_cartesian_reports_diagonal(cart2):
    # [PAPER] the diagonal (𝕀, δ) is a connection for cartesian cubes
    FF = four_functors(cart2, "𝐲𝕀")
    rep = check_kernel(FF)
    failed = {e.check: e for e in rep.failures()}
    assert "essentially surjective onto split elements" in failed
    assert failed["essentially surjective onto split elements"].witness["reason"] == "connection"


def test_elimination_support(ff_box, cart2):
    assert check_elimination_support(ff_box).passed
    assert not check_elimination_support(four_functors(cart2, "𝐲𝕀")).passed


def test_fresh_exchange(ff_box):
    assert check_fresh_exchange(ff_box, sample_presheaves(ff_box.EW, 3, 3)).passed


def test_adjunction_chain(small):
    FF = four_functors(small)
    rep = check_adjunction_chain(FF, sample_presheaves(FF.EW, 0, 2), sample_presheaves(FF.EV, 1, 2))
    assert rep.passed


def test_psi_choices_contexts(box2):
    labels = [label for label, _, _ in psi_choices(box2)]
    assert labels == ["⊤", "𝐲𝕀"]
    FF = FourFunctors(box2)
    assert FF.EW.n_objects == box2.W.n_objects


def test_commutation_fixture_list_is_complete():
    names = {c.name for c in COMMUTATION_FIXTURES}
    assert {"Ω/Ω strict", "Σ ⊸ affine", "Σ ∃ quantifiable", "Ω fresh quantifiable"} <= names
    assert [c.name for c in commutation_fixtures(["Σ/Σ"])] == ["Σ/Σ"]


def test_false_commutation_cell_fails():
    # Σ ⊸ ≅ ⊸ Σ needs affineness; claiming it for cartesian cubes must fail
    cell = next(c for c in COMMUTATION_FIXTURES if c.name == "Σ ⊸ affine")
    bogus = dataclasses.replace(cell, name="bogus", fixture="cartesian-cubes", requires=())
    assert not check_commutation_instance(bogus).passed


def test_unsupported_cell_rejected():
    cell = next(c for c in COMMUTATION_FIXTURES if c.name == "Σ ⊸ affine")
    bad = dataclasses.replace(cell, fixture="cartesian-cubes")
    with pytest.raises(UnsupportedCell):
        check_commutation_instance(bad)
