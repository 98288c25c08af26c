from __future__ import annotations

import dataclasses

from transpension import zoo
from transpension.modalities import check_adjunction, check_piped_adjunction, slice_lift
from transpension.fincat import check_functor
from transpension.presheaf import sample_presheaves, left_lift


def test_embargo_triple_is_adjoint():
    lower, upper = zoo.embargo_adjunctions(2, bound=1)
    assert check_adjunction(lower).passed
    assert check_adjunction(upper).passed


def test_erasure_adjunction():
    for i in (-1, 0, 1):
        assert check_adjunction(zoo.erasure_adjunction(2, i)).passed


def test_mutated_unit_is_caught():
    lower, upper = zoo.embargo_adjunctions(1, bound=1)
    A = upper.G.source
    unit = list(upper.unit)
    # replace one component by another parallel morphism
    for a in range(A.n_objects):
        others = [h for h in A.hom(A.dom[unit[a]], A.cod[unit[a]]) if h != unit[a]]
        if others:
            unit[a] = others[0]
            break
    else:
        raise AssertionError("no alternative unit component")
    assert not check_adjunction(dataclasses.replace(upper, unit=unit)).passed


def test_piped_adjunctions():
    for adj in zoo.embargo_adjunctions(1, bound=1):
        assert check_piped_adjunction(adj).passed
    assert check_piped_adjunction(zoo.erasure_adjunction(2, 0)).passed


def test_slice_lift_is_functor():
    lower, _ = zoo.embargo_adjunctions(1, bound=1)
    G = lower.G
    for Psi in sample_presheaves(G.source, 0, 2):
        lifted = slice_lift(G, Psi, left_lift(G, Psi)).lifted
        assert check_functor(lifted).passed


def test_ill_typed_unit_is_reported():
    lower, upper = zoo.embargo_adjunctions(1, bound=1)
    A = upper.G.source
    unit = [A.identities[0]] * A.n_objects
    assert not check_adjunction(dataclasses.replace(upper, unit=unit)).passed
