"""Base functors acting on slices, and piped adjunctions between them.

A functor G: 𝒲 → 𝒲' sends an element (W, ψ) of Ψ to (GW, G_!ψ), an element
of the left lifting G_!Ψ.  For an adjunction G ⊣ S the lifted slice functors
are again adjoint once the counit is pushed along (the piped adjunction).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidStructure, MissingPullbacks
from .fincat import Functor, NatTrans, check_functor, check_nat_trans, compose_functors
from .presheaf import (PresheafMorphism, central_lift, check_lift_adjunctions, check_morphism,
                       iso_search, left_lift, pair_functor, right_lift, sample_presheaves,
                       terminal_presheaf, wkn_functor)
from .report import WINDOW_NEGATIVE, CheckReport


@dataclass
class SliceLiftedFunctor:
    G: Functor
    Psi: object
    lifted_presheaf: object
    lifted: Functor


def slice_lift(G, Psi, GPsi=None, name=None):
    """G-slice: ∫Ψ → ∫G_!Ψ, (W, ψ) ↦ (GW, class of (W, id, ψ))."""
    C, D = G.source, G.target
    if Psi.base is not C:
        raise InvalidStructure("presheaf is not over the source of the functor")
    L = GPsi if GPsi is not None else left_lift(G, Psi)
    E, EL = Psi.elements(), L.elements()
    obj = []
    for w, g in E.points:
        gw = G.obj[w]
        obj.append(EL.index[(gw, L.cls(gw, w, D.identities[gw], g))])
    mor = [EL.lift(G.mor[E.base_mor[m]], obj[E.cod[m]]) for m in range(E.n_morphisms)]
    F = Functor(E, EL, obj, mor, name=name or f"{G.name}-slice")
    return SliceLiftedFunctor(G, Psi, L, F)


def descriptor_functor(C, D, obj, mor, name="G"):
    """A functor between windows given on descriptors and normal forms."""
    objs = [D.obj(obj(C.objects[a])) for a in range(C.n_objects)]
    mors = []
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        g = D.find(objs[a], objs[b], mor(C.objects[a], C.objects[b], C.mor_label[f]))
        if g is None:
            raise InvalidStructure(f"{name} sends {C.show_mor(f)} outside the target")
        mors.append(g)
    return Functor(C, D, objs, mors, name=name)


def descriptor_nat_trans(F, G, component, name="η"):
    """Components given as normal forms component(descriptor)."""
    C, D = F.source, F.target
    comps = []
    for a in range(C.n_objects):
        c = D.find(F.obj[a], G.obj[a], component(C.objects[a]))
        if c is None:
            raise InvalidStructure(f"{name} has no component at {C.objects[a]!r}")
        comps.append(c)
    return NatTrans(F, G, comps, name=name)


@dataclass
class Adjunction:
    """G ⊣ S with G: A → B, unit Id_A → SG and counit GS → Id_B."""

    G: Functor
    S: Functor
    unit: list
    counit: list
    name: str = "G⊣S"


def check_adjunction(adj):
    G, S = adj.G, adj.S
    A, B = G.source, G.target
    r = CheckReport(f"adjunction[{adj.name}]")
    r.extend(check_functor(G), "G")
    r.extend(check_functor(S), "S")
    SG = compose_functors(S, G)
    GS = compose_functors(G, S)
    r.extend(check_nat_trans(NatTrans(Functor(A, A, range(A.n_objects), range(A.n_morphisms)), SG,
                                      adj.unit, "η")), "unit")
    r.extend(check_nat_trans(NatTrans(GS, Functor(B, B, range(B.n_objects), range(B.n_morphisms)),
                                      adj.counit, "ε")), "counit")
    if not r.passed:
        return r
    bad = next((A.objects[a] for a in range(A.n_objects)
                if B.comp[(adj.counit[G.obj[a]], G.mor[adj.unit[a]])] != B.identities[G.obj[a]]), None)
    r.expect("triangle εG∘Gη = id", bad is None, witness=bad)
    bad = next((B.objects[b] for b in range(B.n_objects)
                if A.comp[(S.mor[adj.counit[b]], adj.unit[S.obj[b]])] != A.identities[S.obj[b]]), None)
    r.expect("triangle Sε∘ηS = id", bad is None, witness=bad)
    bad = None
    for a in range(A.n_objects):
        for b in range(B.n_objects):
            image = {A.comp[(S.mor[h], adj.unit[a])] for h in B.hom(G.obj[a], b)}
            if len(image) != len(B.hom(G.obj[a], b)) or len(image) != len(A.hom(a, S.obj[b])):
                bad = (A.objects[a], B.objects[b])
                break
        if bad:
            break
    r.expect("hom-bijection", bad is None, witness=bad)
    return r


def counit_lift(adj, Psi2, SP, GSP):
    """ε_!: G_!S_!Ψ' → Ψ' on representatives."""
    G = adj.G
    B = G.target
    comps = []
    for b in range(B.n_objects):
        row = []
        for c in range(len(GSP.cells[b])):
            a, phi, x = GSP.rep(b, c)
            b2, phi2, y = SP.rep(a, x)
            h = B.compose(adj.counit[b2], G.mor[phi2], phi)
            row.append(Psi2.restrict[h][y])
        comps.append(row)
    return PresheafMorphism(GSP, Psi2, comps, name="ε!")


def unit_lift(adj, Psi, GP, SGP):
    """η_!: Ψ → S_!G_!Ψ."""
    G = adj.G
    A, B = G.source, G.target
    comps = []
    for a in range(A.n_objects):
        ga = G.obj[a]
        row = []
        for x in range(len(Psi.cells[a])):
            inner = GP.cls(ga, a, B.identities[ga], x)
            row.append(SGP.cls(a, ga, adj.unit[a], inner))
        comps.append(row)
    return PresheafMorphism(Psi, SGP, comps, name="η!")


def _element_hom_bijection(r, label, L, R, transpose):
    """Hom(Lx, y) → Hom(x, Ry) given by ``transpose`` is a bijection for all x, y."""
    EX, EY = L.source, L.target
    bad = None
    pairs = 0
    for x in range(EX.n_objects):
        for y in range(EY.n_objects):
            pairs += 1
            left = EY.hom(L.obj[x], y)
            right = EX.hom(x, R.obj[y])
            image = set()
            for h in left:
                t = transpose(x, y, h)
                if t is None:
                    bad = ("no transpose", EX.objects[x], EY.objects[y])
                    break
                image.add(t)
            if bad is None and (len(image) != len(left) or len(image) != len(right)):
                bad = ("not bijective", EX.objects[x], EY.objects[y], len(left), len(right))
            if bad:
                break
        if bad:
            break
    r.expect(label, bad is None, f"{pairs} pairs", witness=bad)


def check_piped_adjunction(adj, Psi2=None, samples=2, seed=0, max_cells=3):
    """Verify pair_ε ∘ G-slice ⊣ S-slice over Ψ' and its lifted rows.

    The base row is checked as a hom-bijection between categories of
    elements; the rows below it follow from the lifted adjunction checker
    and the two comparison isomorphisms S_! ≅ L* and S* ≅ L_*.  The first row
    of the right half, G-slice ⊣ wkn_η ∘ S-slice, needs pullbacks along η_!
    and is reported window-negative when the window lacks them.
    """
    G, S = adj.G, adj.S
    A, B = G.source, G.target
    r = CheckReport(f"piped[{adj.name}]")
    r.extend(check_adjunction(adj), "base")
    if not r.passed:
        return r
    if Psi2 is None:
        Psi2 = terminal_presheaf(B, name="⊤")
    SP = left_lift(S, Psi2, name=f"S!{Psi2.name}")
    GSP = left_lift(G, SP, name=f"G!S!{Psi2.name}")
    eps = counit_lift(adj, Psi2, SP, GSP)
    r.extend(check_morphism(eps), "ε!")
    Gs = slice_lift(G, SP, GSP).lifted
    L = compose_functors(pair_functor(eps), Gs, name="pair_ε∘G-slice")
    R = slice_lift(S, Psi2, SP).lifted
    r.extend(check_functor(L), "L")
    r.extend(check_functor(R), "R")
    EX, EY = L.source, L.target

    def transpose(x, y, h):
        a = EX.carrier(x)
        t = A.comp[(S.mor[EY.base_mor[h]], adj.unit[a])]
        return EX.find(x, R.obj[y], t)

    _element_hom_bijection(r, "row1: pair_ε∘G-slice ⊣ S-slice", L, R, transpose)

    Xs = sample_presheaves(EY, seed, samples, max_cells, prefix="X")
    Ys = sample_presheaves(EX, seed + 1, samples, max_cells, prefix="Y")
    r.extend(check_lift_adjunctions(L, list(zip(Ys, Xs))), "rows2-4")
    for k, (X, Y) in enumerate(zip(Xs, Ys)):
        r.expect(f"sample{k}: S!-slice ≅ L*", iso_search(left_lift(R, X), central_lift(L, X)) is not None)
        r.expect(f"sample{k}: S*-slice ≅ L_*", iso_search(central_lift(R, Y), right_lift(L, Y)) is not None)

    # right half, first row
    Psi = terminal_presheaf(A, name="⊤")
    GP = left_lift(G, Psi)
    SGP = left_lift(S, GP)
    eta = unit_lift(adj, Psi, GP, SGP)
    r.extend(check_morphism(eta), "η!")
    Gs2 = slice_lift(G, Psi, GP).lifted
    Ss2 = slice_lift(S, GP, SGP).lifted
    try:
        wk = wkn_functor(eta)
    except MissingPullbacks as exc:
        r.add("right-row1: G-slice ⊣ wkn_η∘S-slice", WINDOW_NEGATIVE, str(exc))
        return r
    R2 = compose_functors(wk, Ss2, name="wkn_η∘S-slice")
    pe = pair_functor(eta)
    E1, E2 = Gs2.source, Gs2.target

    def transpose2(x, y, h):
        # h: G-slice x → y; transpose through the unit and the pullback counit
        a = E1.carrier(x)
        t = A.comp[(S.mor[E2.base_mor[h]], adj.unit[a])]
        target = Ss2.target.find(Ss2.target.index[(a, eta.components[a][E1.points[x][1]])],
                                 Ss2.obj[y], t)
        if target is None:
            return None
        return next((g for g in E1.hom(x, R2.obj[y])
                     if Ss2.target.comp[(wk.counit[Ss2.obj[y]], pe.mor[g])] == target), None)

    _element_hom_bijection(r, "right-row1: G-slice ⊣ wkn_η∘S-slice", Gs2, R2, transpose2)
    return r
