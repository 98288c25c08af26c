from __future__ import annotations

import pytest
from conftest import poset
from oracles import closure, compose_table, cube_hom_count, is_initial_in_comma

from transpension import zoo
from transpension.caps import Caps, set_caps
from transpension.errors import InvalidStructure, LimitExceeded
from transpension.fincat import (FinCategory, check_category_laws, check_functor, classify_morphism,
                                 dump_category, elements_category, full_subcategory, generators,
                                 identity_functor, load_category, materialize_window, pullback,
                                 terminal_object, universal_arrow, Functor)
from transpension.presheaf import yoneda


def _copy(C, comp=None):
    mors = [(C.mor_label[f], C.dom[f], C.cod[f]) for f in range(C.n_morphisms)]
    return FinCategory(C.objects, mors, C.identities, dict(comp if comp is not None else C.comp),
                       name=C.name + "'")


@pytest.mark.parametrize("k,cartesian", [(0, False), (1, False), (2, False), (2, True), (1, True)])
def test_cube_hom_counts_match_closed_form(k, cartesian):
    # [DERIVED] closed-form count of cube maps
    C = zoo.window(zoo.Cubes(k, cartesian), 3)
    for m in range(C.n_objects):
        for n in range(C.n_objects):
            assert len(C.hom(m, n)) == cube_hom_count(k, m, n, cartesian)


def test_window_laws_hold():
    C = zoo.window(zoo.Cubes(2), 2)
    assert check_category_laws(C).passed
    assert terminal_object(C) == C.obj(0)


def test_associativity_mutation_is_caught():
    C = zoo.window(zoo.Cubes(2), 2)
    comp = compose_table(C)
    target = None
    for (g, f), gf in comp.items():
        if g in C.identities or f in C.identities:
            continue
        others = [h for h in C.hom(C.dom[f], C.cod[g]) if h != gf]
        if others:
            target = ((g, f), others[0])
            break
    assert target is not None
    comp[target[0]] = target[1]
    rep = check_category_laws(_copy(C, comp))
    assert not rep.passed
    assert any(e.check == "associativity" and e.status == "fail" for e in rep.entries)


def test_missing_composite_is_caught():
    C = poset(3, lambda a, b: a < b)
    comp = dict(C.comp)
    comp.pop(next(iter(k for k in comp if C.identities[C.dom[k[0]]] != k[0])))
    assert not check_category_laws(_copy(C, comp)).passed


def test_generators_generate():
    # [DERIVED] naive closure under composition
    for G in (zoo.Cubes(2), zoo.Cubes(1, True), zoo.TwistedCubes()):
        C = zoo.window(G, 2)
        gens = generators(C)
        assert closure(C, gens) == set(range(C.n_morphisms))
        assert not set(gens) & set(C.identities)


def test_elements_composition_matches_definition():
    C = zoo.window(zoo.Cubes(2), 2)
    P = yoneda(C, C.obj(1))
    E = elements_category(C, P)
    # a morphism of ∫P lies over a base morphism; composites lie over base composites
    checked = 0
    for m in range(E.n_morphisms):
        for m2 in E.out(E.cod[m]):
            c = E.comp[(m2, m)]
            assert E.base_mor[c] == C.comp[(E.base_mor[m2], E.base_mor[m])]
            assert E.dom[c] == E.dom[m] and E.cod[c] == E.cod[m2]
            checked += 1
    assert checked == len(E.comp)
    assert check_category_laws(E).passed
    with pytest.raises(KeyError):
        bad = next((a, b) for a in range(E.n_morphisms) for b in range(E.n_morphisms)
                   if E.dom[a] != E.cod[b])
        E.comp[bad]


def test_functor_mutation_is_caught():
    C = zoo.window(zoo.Cubes(2), 1)
    F = identity_functor(C)
    assert check_functor(F).passed
    f = next(f for f in range(C.n_morphisms) if f not in C.identities and
             len(C.hom(C.dom[f], C.cod[f])) > 1)
    other = next(g for g in C.hom(C.dom[f], C.cod[f]) if g != f)
    mor = list(F.mor)
    mor[f] = other
    assert not check_functor(Functor(C, C, F.obj, mor, "bad")).passed


def test_pullback_in_poset_is_meet():
    # divisibility on 1..12 restricted to divisors of 12: pullbacks are gcds
    divs = [1, 2, 3, 4, 6, 12]
    P = poset(len(divs), lambda a, b: divs[b] % divs[a] == 0)
    from math import gcd
    for a in range(len(divs)):
        for b in range(len(divs)):
            z = P.obj(len(divs) - 1)
            f, g = P.hom(a, z)[0], P.hom(b, z)[0]
            apex, _, _ = pullback(P, f, g)
            assert divs[apex] == gcd(divs[a], divs[b])


def test_universal_arrow_against_comma_oracle():
    C = zoo.window(zoo.Cubes(2), 2)
    S, R = full_subcategory(C, [C.obj(0), C.obj(1)])
    for b in range(C.n_objects):
        got = universal_arrow(R, b)
        brute = [(a, eta) for a in range(S.n_objects) for eta in C.hom(b, R.obj[a])
                 if is_initial_in_comma(R, b, a, eta)]
        assert (got is None) == (not brute)
        if got is not None:
            assert got in brute


def test_classify_morphism_on_cubes():
    C = zoo.window(zoo.Cubes(2), 2)
    for f in C.hom(C.obj(1), C.obj(0)):
        info = classify_morphism(C, f)
        assert info["split_epi"] and not info["mono"]


def test_json_roundtrip():
    C = zoo.window(zoo.Cubes(1), 1)
    D = load_category(dump_category(C))
    assert D.n_objects == C.n_objects and D.n_morphisms == C.n_morphisms
    assert check_category_laws(D).passed


def test_bad_json_category_rejected():
    C = poset(2, lambda a, b: a < b)
    data = dump_category(C)
    data["composition"] = []
    with pytest.raises(InvalidStructure):
        load_category(data)


def test_caps_enforced():
    set_caps(Caps(objects=2))
    with pytest.raises(LimitExceeded):
        materialize_window(zoo.Cubes(2), 5)
