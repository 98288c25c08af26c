"""Multipliers ⋉U : 𝒲 → 𝒱 on finite windows and their classification.

A multiplier is materialized from a :class:`MultiplierSpec`, which acts on
object descriptors and morphism normal forms.  The source window holds the
objects of size ≤ N and the target window those of size ≤ N + shift, so that
fresh weakening never escapes.  Target objects of size ≤ N are *interior*:
verdicts about them do not depend on the truncation of the source window.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidStructure, NotQuantifiable, WindowEscape
from .fincat import (Functor, NatTrans, check_functor, check_nat_trans, compose_functors,
                     hom_injectivity_witness, hom_surjectivity_witness, identity_functor,
                     slice_category, terminal_object, universal_arrow)
from .presheaf import Presheaf, PresheafMorphism, require_presheaf, yoneda
from .report import FAIL, FRONTIER, PASS, SKIP, WINDOW_NEGATIVE, CheckReport


@dataclass
class MultiplierSpec:
    """A multiplier given on descriptors.

    ``obj`` and ``mor`` give the functor on descriptors and normal forms;
    ``copoint(W)`` (optional) is the normal form of π₁: W⋉U → W.
    """

    name: str
    source: object
    target: object
    obj: object
    mor: object
    U: object
    unit: object
    shift: int = 1
    endo: bool = True
    copoint: object = None
    sigma_oracle: object = None
    params: dict = field(default_factory=dict)


class Multiplier:
    def __init__(self, F, U, unit_iso, name="⋉U", spec=None, bound=None, copoint=None, embed=None):
        self.F = F
        self.W = F.source
        self.V = F.target
        self.U = U
        self.unit_iso = unit_iso
        self.name = name
        self.spec = spec
        self.bound = bound
        self.embed = embed
        self.declared_copoint = copoint
        W, V = self.W, self.V
        self.top = terminal_object(W)
        if self.top is None:
            raise InvalidStructure(f"{W.name} has no terminal object in the window")
        if V.dom[unit_iso] != F.obj[self.top] or V.cod[unit_iso] != U or V.is_iso(unit_iso) is None:
            raise InvalidStructure("unit is not an isomorphism ⊤⋉U ≅ U")
        self.bang = [W.hom(w, self.top)[0] for w in range(W.n_objects)]
        self.pi2 = [V.comp[(unit_iso, F.mor[self.bang[w]])] for w in range(W.n_objects)]
        if bound is not None and hasattr(V, "size"):
            self.interior = [V.size(v) <= bound for v in range(V.n_objects)]
        else:
            self.interior = [True] * V.n_objects
        self._split = {}
        self._slice = None
        self._fresh = None
        self._sums = None

    def __repr__(self):
        return f"<Multiplier {self.name}: {self.W.name} -> {self.V.name}>"

    @property
    def endo(self):
        return self.embed is not None

    def check(self):
        r = CheckReport(f"multiplier[{self.name}]")
        r.extend(check_functor(self.F), "functor")
        W, V = self.W, self.V
        bad = None
        for f in range(W.n_morphisms):
            if V.comp[(self.pi2[W.cod[f]], self.F.mor[f])] != self.pi2[W.dom[f]]:
                bad = W.show_mor(f)
                break
        r.expect("π₂-naturality", bad is None, witness=bad)
        if self.declared_copoint is not None:
            r.extend(check_nat_trans(self.declared_copoint), "copoint")
        return r

    # fresh weakening at the base

    def slice(self):
        if self._slice is None:
            self._slice = slice_category(self.V, self.U)
        return self._slice

    def fresh_base(self):
        if self._fresh is None:
            S, _ = self.slice()
            W = self.W
            obj = [S.index[(self.F.obj[w], self.pi2[w])] for w in range(W.n_objects)]
            mor = [S.find(obj[W.dom[f]], obj[W.cod[f]], self.F.mor[f]) for f in range(W.n_morphisms)]
            self._fresh = Functor(W, S, obj, mor, name=f"fresh[{self.name}]")
        return self._fresh

    # dimensional splitness and the boundary

    def dimensional_section(self, phi):
        """First (W, χ) with φ∘χ = π₂(W), or None (relative to the window)."""
        if phi not in self._split:
            V, F = self.V, self.F
            v = V.dom[phi]
            found = None
            for w in range(self.W.n_objects):
                for chi in V.hom(F.obj[w], v):
                    if V.comp[(phi, chi)] == self.pi2[w]:
                        found = (w, chi)
                        break
                if found:
                    break
            self._split[phi] = found
        return self._split[phi]

    def is_split(self, phi):
        return self.dimensional_section(phi) is not None

    def sum_base(self, s):
        """Universal arrow (W, η) for slice index ``s``, or None."""
        if self._sums is None:
            self._sums = {}
        if s not in self._sums:
            self._sums[s] = universal_arrow(self.fresh_base(), s)
        return self._sums[s]


def is_dimensionally_split(M, phi):
    return M.dimensional_section(phi)


def boundary_presheaf(M):
    V, U = M.V, M.U
    cells = [[phi for phi in V.hom(v, U) if not M.is_split(phi)] for v in range(V.n_objects)]
    pos = [{phi: i for i, phi in enumerate(cs)} for cs in cells]
    restrict = []
    for h in range(V.n_morphisms):
        a, b = V.dom[h], V.cod[h]
        row = []
        for phi in cells[b]:
            g = V.comp[(phi, h)]
            if g not in pos[a]:
                raise InvalidStructure(f"boundary not closed under restriction: {V.show_mor(phi)} · {V.show_mor(h)}")
            row.append(pos[a][g])
        restrict.append(tuple(row))
    B = require_presheaf(Presheaf(V, [[V.mor_label[p] for p in cs] for cs in cells], restrict, name="∂U"))
    B.mor = cells
    yU = yoneda(V, U)
    ypos = [{phi: i for i, phi in enumerate(yU.mor[v])} for v in range(V.n_objects)]
    B.inclusion = PresheafMorphism(B, yU, [[ypos[v][p] for p in cells[v]] for v in range(V.n_objects)],
                                   name="∂U⊆yU")
    return B


def check_boundary_maximal(M):
    """For non-spooky M: every split φ generates all of yU, so ∂U is the largest strict subobject."""
    V, U = M.V, M.U
    r = CheckReport("boundary-maximal")
    bad = None
    for v in range(V.n_objects):
        for phi in V.hom(v, U):
            if M.is_split(phi) and not any(V.comp[(phi, s)] == V.identities[U] for s in V.hom(U, v)):
                bad = V.show_mor(phi)
                break
    r.expect("split⇒generates-yU", bad is None, witness=bad)
    return r


# structure searches

def _descriptor_functor(M):
    """F as a partial functor on the target window, via descriptors."""
    spec, V = M.spec, M.V
    obj = {}
    for v in range(V.n_objects):
        d = spec.obj(V.objects[v])
        if V.has_obj(d):
            obj[v] = V.obj(d)
    mor = {}
    for h in range(V.n_morphisms):
        a, b = V.dom[h], V.cod[h]
        if a in obj and b in obj:
            nf = spec.mor(V.objects[a], V.objects[b], V.mor_label[h])
            mor[h] = V.find(obj[a], obj[b], nf)
    return obj, mor


def _transformations(C, D, src_obj, src_mor, tgt_obj, tgt_mor, candidates, limit):
    """Natural transformations between two functors C → D given by tables.

    ``candidates[c]`` restricts the component at c.  Search by backtracking
    with the naturality squares checked once both ends are chosen.
    """
    objs = list(range(C.n_objects))
    order = sorted(objs, key=lambda c: len(candidates[c]))
    squares = {c: [] for c in objs}
    pos = {c: i for i, c in enumerate(order)}
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        later = a if pos[a] >= pos[b] else b
        squares[later].append(f)
    out = []
    choice = {}

    def ok(c):
        for f in squares[c]:
            a, b = C.dom[f], C.cod[f]
            if D.comp[(tgt_mor[f], choice[a])] != D.comp[(choice[b], src_mor[f])]:
                return False
        return True

    def go(i):
        if len(out) >= limit:
            return
        if i == len(order):
            out.append([choice[c] for c in objs])
            return
        c = order[i]
        for m in candidates[c]:
            choice[c] = m
            if ok(c):
                go(i + 1)
        choice.pop(c, None)

    go(0)
    return out


def find_copoints(M, limit=64):
    """Natural transformations π₁: F → embed (window-exhaustive up to ``limit``)."""
    if M.embed is None:
        return []
    W, V, F, E = M.W, M.V, M.F, M.embed
    cands = [list(V.hom(F.obj[w], E.obj[w])) for w in range(W.n_objects)]
    comps = _transformations(W, V, F.obj, F.mor, E.obj, E.mor, cands, limit)
    return [NatTrans(F, E, c, name="π₁") for c in comps]


def find_diagonals(M, copoint, limit=8):
    """δ: F → F∘F with π₁F∘δ = id and F(π₁)∘δ = id, on objects where FF fits."""
    W, V, F = M.W, M.V, M.F
    fobj, fmor = _descriptor_functor(M)
    keep = [w for w in range(W.n_objects) if F.obj[w] in fobj]
    if not keep:
        return None, keep
    pi1 = copoint.components
    # π₁ at F W, an object of V, is the copoint of the descriptor-level functor
    pi1_at = {}
    for w in keep:
        fw = F.obj[w]
        nf = M.spec.copoint(V.objects[fobj[fw]]) if M.spec and M.spec.copoint else None
        if nf is None:
            return None, keep
        pi1_at[w] = V.find(fobj[fw], fw, nf)
    from .fincat import full_subcategory
    S, inc = full_subcategory(W, keep)
    src_obj = [F.obj[inc.obj[s]] for s in range(S.n_objects)]
    src_mor = [F.mor[inc.mor[f]] for f in range(S.n_morphisms)]
    tgt_obj = [fobj[F.obj[inc.obj[s]]] for s in range(S.n_objects)]
    tgt_mor = [fmor[F.mor[inc.mor[f]]] for f in range(S.n_morphisms)]
    cands = []
    for s in range(S.n_objects):
        w = inc.obj[s]
        fw = F.obj[w]
        idf = V.identities[fw]
        cands.append([d for d in V.hom(fw, fobj[fw])
                      if V.comp[(pi1_at[w], d)] == idf and V.comp[(fmor[pi1[w]], d)] == idf])
    comps = _transformations(S, V, src_obj, src_mor, tgt_obj, tgt_mor, cands, limit)
    return comps, keep


def product_witness(M, copoint):
    """First (W, X) where (π₁, π₂) fails to exhibit FW as W × U, or None."""
    W, V, F, E = M.W, M.V, M.F, M.embed
    for w in range(W.n_objects):
        fw, ew = F.obj[w], E.obj[w]
        p1, p2 = copoint.components[w], M.pi2[w]
        for x in range(V.n_objects):
            image = {(V.comp[(p1, h)], V.comp[(p2, h)]) for h in V.hom(x, fw)}
            if len(image) != len(V.hom(x, fw)) or len(image) != len(V.hom(x, ew)) * len(V.hom(x, M.U)):
                return (W.objects[w], V.objects[x])
    return None


@dataclass
class Verdict:
    status: str
    witness: object = None
    detail: str = ""

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            from .report import jsonable
            out["witness"] = jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class PropertyReport:
    spooky_object_found: object
    cancellative: Verdict
    affine: Verdict
    connection_free: Verdict
    quantifiable: Verdict
    semicartesian: Verdict
    three_quarter: Verdict
    cartesian: Verdict
    frontier: int = 0

    FIELDS = ("cancellative", "affine", "connection_free", "quantifiable",
              "semicartesian", "three_quarter", "cartesian")

    def summary(self):
        """Flat classification: property → True/False/None (None = undecided or n/a)."""
        out = {"spooky": self.spooky_object_found is not None}
        for f in self.FIELDS:
            st = getattr(self, f).status
            out[f] = True if st == PASS else False if st == FAIL else None
        return out

    def to_json(self):
        from .report import jsonable
        out = {"spooky_object_found": jsonable(self.spooky_object_found)}
        for f in self.FIELDS:
            out[f] = getattr(self, f).to_json()
        out["frontier"] = self.frontier
        return out


def property_report(M):
    W = M.W
    fresh = M.fresh_base()
    S = fresh.target
    spooky = next((W.objects[w] for w in range(W.n_objects) if not W.hom(M.top, w)), None)

    wit = hom_injectivity_witness(fresh)
    cancellative = Verdict(PASS) if wit is None else Verdict(FAIL, wit)
    wit = hom_surjectivity_witness(fresh)
    affine = Verdict(PASS) if wit is None else Verdict(FAIL, wit)

    frontier = 0
    counts = S.hom_counts()
    images = {}
    for w in range(W.n_objects):
        images.setdefault(counts[fresh.obj[w]], []).append(fresh.obj[w])
    connection = None
    for s in range(S.n_objects):
        if not M.is_split(S.leg(s)):
            continue
        if not any(S.find_iso(t, s) for t in images.get(counts[s], ())):
            connection = S.objects[s]
            break
    connection_free = Verdict(PASS) if connection is None else Verdict(FAIL, connection, "connection")

    missing = None
    for s in range(S.n_objects):
        if M.sum_base(s) is None:
            if M.interior[S.carrier(s)]:
                missing = missing or S.objects[s]
            else:
                frontier += 1
    quantifiable = Verdict(PASS) if missing is None else Verdict(WINDOW_NEGATIVE, missing,
                                                                  "no universal arrow in window")

    semi, three, cart = _structure_verdicts(M)
    return PropertyReport(spooky, cancellative, affine, connection_free, quantifiable,
                          semi, three, cart, frontier)


def _structure_verdicts(M):
    na = Verdict(SKIP, detail="not endo")
    if not M.endo:
        return na, na, na
    if M.declared_copoint is not None:
        rep = check_nat_trans(M.declared_copoint)
        if not rep.passed:
            bad = Verdict(FAIL, rep.failures()[0].witness, "declared copoint is not natural")
            return bad, bad, bad
        copoints = [M.declared_copoint]
        how = "declared"
    else:
        copoints = find_copoints(M)
        how = "searched"
    if not copoints:
        no = Verdict(FAIL, None, "no natural F → Id in the window")
        return no, no, no
    semi = Verdict(PASS, detail=how)

    three = Verdict(WINDOW_NEGATIVE, detail="diagonal search needs a wider window")
    for cp in copoints:
        comps, keep = find_diagonals(M, cp)
        if comps is None:
            continue
        if comps:
            three = Verdict(PASS, detail=f"diagonal found on {len(keep)} objects")
            break
        three = Verdict(FAIL, M.W.objects[keep[-1]], "no diagonal satisfying the counit laws")

    cart = None
    wit = None
    for cp in copoints:
        wit = product_witness(M, cp)
        if wit is None:
            cart = Verdict(PASS, detail=how)
            break
    if cart is None:
        cart = Verdict(FAIL, wit, "(π₁, π₂) is not a product")
    return semi, three, cart


# Σ at the base: the left adjoint of fresh weakening

def sum_base(M, s):
    return M.sum_base(s)


def sum_functor(M):
    """Σ on the full subcategory of slices where a universal arrow exists.

    Returns (subcategory inclusion data, Σ functor, unit components).
    """
    from .fincat import full_subcategory
    fresh = M.fresh_base()
    S = fresh.target
    found = {s: M.sum_base(s) for s in range(S.n_objects)}
    keep = [s for s, u in found.items() if u is not None]
    Sub, inc = full_subcategory(S, keep)
    obj = [found[inc.obj[i]][0] for i in range(Sub.n_objects)]
    mor = []
    for m in range(Sub.n_morphisms):
        a, b = inc.obj[Sub.dom[m]], inc.obj[Sub.cod[m]]
        (wa, ea), (wb, eb) = found[a], found[b]
        target = S.comp[(eb, inc.mor[m])]
        g = next((g for g in M.W.hom(wa, wb) if S.comp[(fresh.mor[g], ea)] == target), None)
        if g is None:
            raise NotQuantifiable("Σ is not functorial on the window")
        mor.append(g)
    Sig = Functor(Sub, M.W, obj, mor, name=f"Σ[{M.name}]")
    unit = [found[inc.obj[i]][1] for i in range(Sub.n_objects)]
    return Sub, inc, Sig, unit


def check_drop_iso(M):
    """drop: Σ fresh W → W is invertible for every W."""
    fresh = M.fresh_base()
    S = fresh.target
    r = CheckReport(f"drop[{M.name}]")
    for w in range(M.W.n_objects):
        u = M.sum_base(fresh.obj[w])
        if u is None:
            r.add(f"drop@{M.W.objects[w]}", FRONTIER, "Σ∘fresh outside window")
            continue
        a, eta = u
        drop = next(g for g in M.W.hom(a, w) if S.comp[(fresh.mor[g], eta)] == S.identities[fresh.obj[w]])
        r.expect(f"drop@{M.W.objects[w]}", M.W.is_iso(drop) is not None, witness=M.W.show_mor(drop))
    return r


# composition and morphisms of multipliers

def compose_multipliers(M1, M2, name=None):
    if M1.V is not M2.W:
        raise WindowEscape("multipliers do not share the middle window")
    F = compose_functors(M2.F, M1.F)
    U = M2.F.obj[M1.U]
    # ⊤⋉U⋉U' = F2(F1 ⊤) → F2(U) is F2 applied to the first unit; F2(U) is U⋉U'
    unit = M2.F.mor[M1.unit_iso]
    M = Multiplier(F, U, unit, name=name or f"{M1.name}{M2.name}", bound=M1.bound)
    return M


def check_composite(M1, M2, M):
    """fresh of the composite agrees with the composite of the fresh functors."""
    r = CheckReport(f"composite[{M.name}]")
    bad = next((w for w in range(M.W.n_objects)
                if M.pi2[w] != M2.F.mor[M1.pi2[w]]), None)
    r.expect("fresh=fresh∘fresh (legs)", bad is None, witness=None if bad is None else M.W.objects[bad])
    bad = next((f for f in range(M.W.n_morphisms) if M.F.mor[f] != M2.F.mor[M1.F.mor[f]]), None)
    r.expect("fresh=fresh∘fresh (morphisms)", bad is None)
    r.extend(M.check(), "composite")
    return r


class MultiplierMorphism:
    """Components υ_W: W⋉U → W⋉U' natural in W, over υ: U → U'."""

    def __init__(self, source, target, components, upsilon, name="υ"):
        self.source = source
        self.target = target
        self.components = list(components)
        self.upsilon = upsilon
        self.name = name

    def check(self):
        M, N = self.source, self.target
        V = M.V
        r = CheckReport(f"multiplier-morphism[{self.name}]")
        r.extend(check_nat_trans(NatTrans(M.F, N.F, self.components, self.name)))
        bad = next((M.W.objects[w] for w in range(M.W.n_objects)
                    if V.comp[(N.pi2[w], self.components[w])] != V.comp[(self.upsilon, M.pi2[w])]), None)
        r.expect("π₂∘(W⋉υ) = υ∘π₂", bad is None, witness=bad)
        return r


def multiplier_morphism_maps(t):
    """The transformation pair_υ∘fresh_U → fresh_U' and, when both sides are
    quantifiable, its mate Σ_U'∘pair_υ → Σ_U obtained by cotransposition."""
    M, N = t.source, t.target
    V = M.V
    SM, _ = M.slice()
    SN, _ = N.slice()
    fM, fN = M.fresh_base(), N.fresh_base()
    pair_obj = [SN.index[(SM.carrier(s), V.comp[(t.upsilon, SM.leg(s))])] for s in range(SM.n_objects)]
    first = [SN.find(pair_obj[fM.obj[w]], fN.obj[w], t.components[w]) for w in range(M.W.n_objects)]
    r = CheckReport(f"morphism-maps[{t.name}]")
    r.expect("pair∘fresh → fresh components are slice maps", all(c is not None for c in first))
    mate = {}
    for s in range(SM.n_objects):
        uM, uN = M.sum_base(s), N.sum_base(pair_obj[s])
        if uM is None or uN is None:
            continue
        (wM, eM), (wN, eN) = uM, uN
        # pair_υ(copy) followed by (ΣV ⋉ υ), transposed along Σ_U' ⊣ fresh_U'
        h = V.comp[(t.components[wM], SM.mor_label[eM])]
        h_slice = SN.find(pair_obj[s], fN.obj[wM], h)
        g = next((g for g in N.W.hom(wN, wM) if SN.comp[(fN.mor[g], eN)] == h_slice), None)
        mate[s] = g
    r.expect("mate components exist", all(g is not None for g in mate.values()),
             f"{len(mate)} slices")
    bad = None
    for m in range(SM.n_morphisms):
        a, b = SM.dom[m], SM.cod[m]
        if a in mate and b in mate and mate[a] is not None and mate[b] is not None:
            sig_m = _sigma_on(M, a, b, m)
            pm = SN.find(pair_obj[a], pair_obj[b], SM.mor_label[m])
            sig_n = _sigma_on(N, pair_obj[a], pair_obj[b], pm)
            if sig_m is None or sig_n is None:
                continue
            if M.W.comp[(sig_m, mate[a])] != M.W.comp[(mate[b], sig_n)]:
                bad = SM.show_mor(m)
                break
    r.expect("mate naturality", bad is None, witness=bad)
    return first, mate, r


def _sigma_on(M, a, b, m):
    S = M.fresh_base().target
    fresh = M.fresh_base()
    (wa, ea), (wb, eb) = M.sum_base(a), M.sum_base(b)
    target = S.comp[(eb, m)]
    return next((g for g in M.W.hom(wa, wb) if S.comp[(fresh.mor[g], ea)] == target), None)


def identity_multiplier(C, name="Id"):
    top = terminal_object(C)
    if top is None:
        raise InvalidStructure("identity multiplier needs a terminal object")
    F = identity_functor(C)
    return Multiplier(F, top, C.identities[top], name=name,
                      copoint=NatTrans(F, F, list(C.identities), "π₁"), embed=F)
