from __future__ import annotations

import pytest
from conftest import poset
from oracles import brute_homs, brute_left_lift_sizes, brute_right_lift_sizes, is_presheaf

from transpension import zoo
from transpension.errors import InvalidStructure
from transpension.fincat import Functor, full_subcategory, identity_functor
from transpension.presheaf import (Presheaf, check_lift_adjunctions, check_presheaf, constant_presheaf,
                                   count_homs, dump_presheaf, iso_search, left_lift, load_presheaf,
                                   presheaf_homs, presheaf_pullback, random_presheaf, right_lift,
                                   sample_presheaves, terminal_presheaf, yoneda)


@pytest.fixture(scope="module")
def cube1():
    return zoo.window(zoo.Cubes(2), 1)


@pytest.fixture(scope="module")
def cube2():
    return zoo.window(zoo.Cubes(2), 2)


def test_yoneda_cells_are_homs(cube2):
    for w in range(cube2.n_objects):
        Y = yoneda(cube2, w)
        assert Y.sizes() == [len(cube2.hom(v, w)) for v in range(cube2.n_objects)]
        assert is_presheaf(Y)


def test_random_presheaves_are_presheaves(cube2):
    # [DERIVED] literal functoriality check
    for P in sample_presheaves(cube2, 7, 6):
        assert check_presheaf(P).passed
        assert is_presheaf(P)
        assert max(P.sizes()) <= 3


def test_sampling_is_deterministic(cube2):
    a = [P.restrict for P in sample_presheaves(cube2, 3, 4)]
    b = [P.restrict for P in sample_presheaves(cube2, 3, 4)]
    assert a == b


def test_restriction_mutation_is_caught(cube1):
    Y = yoneda(cube1, 1)
    restrict = list(Y.restrict)
    f = next(f for f in range(cube1.n_morphisms) if f not in cube1.identities and len(set(restrict[f])) > 1)
    row = list(restrict[f])
    row[0], row[1] = row[1], row[0]
    restrict[f] = tuple(row)
    bad = Presheaf(cube1, Y.cells, restrict, name="bad")
    assert not is_presheaf(bad)
    assert not check_presheaf(bad).passed


def test_hom_enumeration_matches_brute_force(cube1):
    # [DERIVED] exhaustive enumeration of component functions
    samples = sample_presheaves(cube1, 11, 4, max_cells=2) + [yoneda(cube1, 0), yoneda(cube1, 1)]
    for X in samples:
        for Y in samples:
            got = sorted(tuple(s.components) for s in presheaf_homs(X, Y))
            assert got == sorted(brute_homs(X, Y))


def test_iso_search_finds_permuted_copy(cube2):
    import random
    rng = random.Random(5)
    for P in sample_presheaves(cube2, 2, 4):
        perms = [rng.sample(range(len(c)), len(c)) for c in P.cells]
        inv = [{p: i for i, p in enumerate(pm)} for pm in perms]
        cells = [[P.cells[w][perms[w][i]] for i in range(len(P.cells[w]))] for w in range(cube2.n_objects)]
        restrict = []
        for f in range(cube2.n_morphisms):
            a, b = cube2.dom[f], cube2.cod[f]
            restrict.append(tuple(inv[a][P.restrict[f][perms[b][i]]] for i in range(len(P.cells[b]))))
        Q = Presheaf(cube2, cells, restrict, name="Q")
        assert check_presheaf(Q).passed
        iso = iso_search(P, Q)
        assert iso is not None and iso.is_iso()


def test_iso_search_rejects_non_isomorphic(cube1):
    K = constant_presheaf(cube1, ["0", "1"])
    assert iso_search(K, yoneda(cube1, 1)) is None
    assert iso_search(K, constant_presheaf(cube1, ["a", "b"])) is not None


def _inclusion_functor(C):
    S, inc = full_subcategory(C, [0, 1])
    return inc


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_left_lift_sizes_match_coend_oracle(cube2, seed):
    # [DERIVED] naive quotient over all source morphisms
    F = _inclusion_functor(cube2)
    for G in sample_presheaves(F.source, seed, 2, max_cells=2):
        assert left_lift(F, G).sizes() == brute_left_lift_sizes(F, G)


@pytest.mark.parametrize("seed", [0, 1])
def test_right_lift_sizes_match_end_oracle(cube1, seed):
    # [DERIVED] exhaustive enumeration of compatible families
    C = cube1
    F = Functor(C, C, range(C.n_objects), range(C.n_morphisms), "Id")
    for G in sample_presheaves(C, seed, 2, max_cells=2):
        assert right_lift(F, G).sizes() == brute_right_lift_sizes(F, G)
    # and along the inclusion of the point
    S, inc = full_subcategory(C, [0])
    for G in sample_presheaves(S, seed, 2, max_cells=2):
        assert right_lift(inc, G).sizes() == brute_right_lift_sizes(inc, G)


def test_lifts_along_identity_are_trivial(cube2):
    F = identity_functor(cube2)
    for G in sample_presheaves(cube2, 9, 3):
        assert iso_search(left_lift(F, G), G) is not None
        assert iso_search(right_lift(F, G), G) is not None
        assert check_presheaf(left_lift(F, G)).passed
        assert check_presheaf(right_lift(F, G)).passed


def test_lift_adjunctions_on_samples(cube2):
    F = _inclusion_functor(cube2)
    pairs = list(zip(sample_presheaves(F.source, 4, 2, max_cells=2),
                     sample_presheaves(cube2, 4, 2, max_cells=2)))
    assert check_lift_adjunctions(F, pairs).passed


def test_lift_adjunction_mutation_is_caught(cube2):
    from transpension.presheaf import left_sharp
    F = _inclusion_functor(cube2)
    X = yoneda(F.source, 1)
    Y = constant_presheaf(cube2, ["a", "b"])
    homs = {}

    def wrong(LX, Y2, a):
        # always answer with the first transpose, ignoring the input
        if (id(LX), id(Y2)) not in homs:
            homs[(id(LX), id(Y2))] = left_sharp(F, LX, Y2, a)
        return homs[(id(LX), id(Y2))]
    assert check_lift_adjunctions(F, [(X, Y)]).passed
    assert not check_lift_adjunctions(F, [(X, Y)], sharp_left=wrong).passed


def test_adjunction_hom_counts_left(cube2):
    # [DERIVED] |Hom(F_!G, H)| = |Hom(G, F*H)| counted by brute force
    from transpension.presheaf import central_lift
    F = _inclusion_functor(cube2)
    Gs = sample_presheaves(F.source, 8, 2, max_cells=2)
    Hs = sample_presheaves(cube2, 8, 2, max_cells=2)
    for G in Gs:
        L = left_lift(F, G)
        for H in Hs:
            assert count_homs(L, H) == len(brute_homs(G, central_lift(F, H)))


def test_pullback_of_presheaves_in_poset():
    C = poset(2, lambda a, b: a < b)
    one = terminal_presheaf(C)
    Y = yoneda(C, 1)
    homs = list(presheaf_homs(Y, one))
    Q, p1, p2 = presheaf_pullback(homs[0], homs[0])
    # Y ×_⊤ Y has |Y(v)|² cells
    assert Q.sizes() == [n * n for n in Y.sizes()]


def test_json_roundtrip(cube1):
    for P in sample_presheaves(cube1, 1, 3):
        Q = load_presheaf(dump_presheaf(P), cube1)
        assert Q.sizes() == P.sizes() and Q.restrict == P.restrict


def test_load_rejects_bad_presheaf(cube1):
    data = dump_presheaf(yoneda(cube1, 1))
    data["restrictions"] = {}
    with pytest.raises(InvalidStructure):
        load_presheaf(data, cube1)


def test_random_presheaf_generator_count(cube2):
    P = random_presheaf(cube2, 0, generators=1)
    assert check_presheaf(P).passed
