"""The four functors ∃ ⊣ fresh ⊣ ⊸ ⊣ √ over categories of elements.

For a multiplier ⋉U: 𝒲 → 𝒱 and a presheaf Ψ over 𝒲, fresh-slice sends an
element (W, ψ) of Ψ to (W⋉U, ψ⋉𝐲U), an element of Ψ⋉𝐲U.  Its three liftings
are fresh, ⊸ and √; ∃ lifts the left adjoint of fresh-slice where that
adjoint exists in the window.

Elements of Ψ⋉𝐲U whose carrier lies outside the interior of the target
window are tagged FRONTIER and never produce hard verdicts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidStructure, MissingPullbacks, NotQuantifiable, UnsupportedCell
from .fincat import (Functor, full_subcategory, hom_injectivity_witness, hom_surjectivity_witness,
                     transpose_along, universal_arrow)
from .modalities import slice_lift
from .multiplier import (boundary_presheaf, check_drop_iso, find_copoints, product_witness,
                         property_report)
from .presheaf import (Presheaf, PresheafMorphism, _bijection_check, central_lift,
                       central_lift_morphism, check_lift_adjunctions, check_morphism,
                       compose_morphisms, elements_inclusion, identity_morphism, initial_presheaf,
                       iso_search, left_flat, left_lift, left_lift_morphism, left_sharp,
                       pair_functor, presheaf_homs, right_flat, right_lift, sample_presheaves,
                       terminal_presheaf, total_space, wkn_functor, yoneda)
from .report import FRONTIER, INFO, SKIP, WINDOW_NEGATIVE, CheckReport


class FourFunctors:
    """∃ ⊣ fresh ⊣ ⊸ ⊣ √ for a multiplier M and a presheaf Ψ over its source.

    ``Psi_V`` (endo multipliers only) is a presheaf over the target whose
    restriction to the source is Ψ; the cartesian comparisons need it.
    """

    def __init__(self, M, Psi=None, Psi_V=None):
        self.M = M
        W, V = M.W, M.V
        if Psi is None:
            if Psi_V is not None:
                if not M.endo:
                    raise InvalidStructure("Ψ over the target needs an endo multiplier")
                Psi = central_lift(M.embed, Psi_V, name=Psi_V.name)
            else:
                Psi = terminal_presheaf(W)
        self.Psi, self.Psi_V = Psi, Psi_V
        self.P = left_lift(M.F, Psi, name=f"{Psi.name}⋉𝐲U")
        self.fresh_slice = slice_lift(M.F, Psi, self.P, name="fresh-slice").lifted
        self.EW, self.EV = self.fresh_slice.source, self.fresh_slice.target
        EV = self.EV
        self.leg = []
        for v, c in EV.points:
            w, phi, _ = self.P.rep(v, c)
            self.leg.append(V.comp[(M.pi2[w], phi)])
        self.split = [M.is_split(phi) for phi in self.leg]
        self.interior = [M.interior[v] for v, _ in EV.points]
        self._sum = None
        self._sub = {}

    def interior_sub(self):
        """The full subcategory of interior elements of ∫(Ψ⋉𝐲U) and its inclusion."""
        if "V" not in self._sub:
            keep = [e for e in range(self.EV.n_objects) if self.interior[e]]
            self._sub["V"] = full_subcategory(self.EV, keep, name="interior")
        return self._sub["V"]

    def exact_sub(self):
        """Elements x of ∫Ψ whose fresh image is interior; ∃ is exact there."""
        if "W" not in self._sub:
            keep = [x for x in range(self.EW.n_objects) if self.interior[self.fresh_slice.obj[x]]]
            self._sub["W"] = full_subcategory(self.EW, keep, name="exact")
        return self._sub["W"]

    def on_interior(self, X):
        return central_lift(self.interior_sub()[1], X)

    def on_exact(self, X):
        return central_lift(self.exact_sub()[1], X)

    # the four functors

    def fresh(self, D, name=None):
        return left_lift(self.fresh_slice, D, name=name or f"fresh {D.name}")

    def lolli(self, G, name=None):
        return central_lift(self.fresh_slice, G, name=name or f"⊸{G.name}")

    def transp(self, D, name=None):
        return right_lift(self.fresh_slice, D, name=name or f"√{D.name}")

    def sum_slice(self):
        """Σ-slice on the trusted elements T, with its inclusion and units.

        T holds the interior elements e for which e ↓ fresh-slice has an
        initial object in the window.
        """
        if self._sum is None:
            Fs, EV, EW = self.fresh_slice, self.EV, self.EW
            found = {}
            for e in range(EV.n_objects):
                if self.interior[e]:
                    u = universal_arrow(Fs, e)
                    if u is not None:
                        found[e] = u
            T, inc = full_subcategory(EV, list(found), name="T")
            obj = [found[inc.obj[t]][0] for t in range(T.n_objects)]
            mor = []
            for m in range(T.n_morphisms):
                a, b = inc.obj[T.dom[m]], inc.obj[T.cod[m]]
                (xa, ea), (xb, eb) = found[a], found[b]
                g = transpose_along(Fs, ea, xa, xb, EV.comp[(eb, inc.mor[m])])
                if g is None:
                    raise NotQuantifiable("Σ-slice is not functorial on the window")
                mor.append(g)
            Sig = Functor(T, EW, obj, mor, name="Σ-slice")
            unit = [found[inc.obj[t]][1] for t in range(T.n_objects)]
            missing = [e for e in range(EV.n_objects) if self.interior[e] and e not in found]
            self._sum = (T, inc, Sig, unit, missing)
        return self._sum

    def restrict_T(self, G, name=None):
        _, inc, _, _, _ = self.sum_slice()
        return central_lift(inc, G, name=name or f"{G.name}|T")

    def exists(self, G, name=None):
        """∃Γ, computed from the restriction of Γ to the trusted elements."""
        _, inc, Sig, _, _ = self.sum_slice()
        G = G if G.base is inc.source else central_lift(inc, G)
        return left_lift(Sig, G, name=name or f"∃{G.name}")

    def sum_iso(self, D, FD=None, SD=None):
        """The canonical iso (fresh Δ)|T → Σ-slice*Δ, [(x, χ, δ)] ↦ Δ(χ♭)(δ)."""
        T, inc, Sig, unit, _ = self.sum_slice()
        Fs = self.fresh_slice
        FD = FD if FD is not None else self.fresh(D)
        SD = SD if SD is not None else central_lift(Sig, D)
        src = central_lift(inc, FD)
        comps = []
        for t in range(T.n_objects):
            e = inc.obj[t]
            row = []
            for c in range(len(FD.cells[e])):
                vals = set()
                for m in FD.members[e][c]:
                    x, chi, d = FD.raw[e][m]
                    flat = transpose_along(Fs, unit[t], Sig.obj[t], x, chi)
                    vals.add(D.restrict[flat][d])
                if len(vals) != 1:
                    raise InvalidStructure(f"fresh→Σ* not constant on a class at {T.objects[t]!r}")
                row.append(vals.pop())
            comps.append(row)
        return PresheafMorphism(src, SD, comps, name="fresh|T≅Σ*")

    # boundary and frontier bookkeeping

    def boundary_elements(self):
        return [e for e in range(self.EV.n_objects) if not self.split[e]]

    def element_status(self, e):
        if not self.interior[e]:
            return FRONTIER
        return "boundary" if not self.split[e] else "total"

    def membership(self, mutate=False):
        """(∈ ∂U) over ∫(Ψ⋉𝐲U); ``mutate`` uses all of 𝐲U instead of ∂U."""
        EV = self.EV
        mark = [mutate or not s for s in self.split]
        cells = [["∈"] if m else [] for m in mark]
        restrict = []
        for m in range(EV.n_morphisms):
            a, b = EV.dom[m], EV.cod[m]
            if mark[b] and not mark[a]:
                raise InvalidStructure("boundary is not closed under restriction")
            restrict.append((0,) if mark[b] else ())
        return Presheaf(EV, cells, restrict, name="(∈∂U)" if not mutate else "(∈𝐲U)")


def _interior_restrict(FF, X):
    """X restricted to the interior elements of ∫(Ψ⋉𝐲U)."""
    return FF.on_interior(X), FF.interior_sub()[1]


def psi_choices(M, kinds=("⊤", "𝐲𝕀")):
    """(label, Ψ, Ψ_V) for the standard contexts: ⊤ and the representable interval."""
    out = []
    for kind in kinds:
        if kind == "⊤":
            out.append(("⊤", terminal_presheaf(M.W), terminal_presheaf(M.V) if M.endo else None))
        elif kind == "𝐲𝕀":
            target = M.V.objects[M.U]
            if not M.W.has_obj(target):
                continue
            Psi = yoneda(M.W, M.W.obj(target))
            Psi.name = "𝐲𝕀"
            PV = None
            if M.endo:
                PV = yoneda(M.V, M.U)
                PV.name = "𝐲𝕀"
            out.append(("𝐲𝕀", Psi, PV))
        else:
            raise ValueError(f"unknown context {kind!r}")
    return out


def four_functors(M, kind="⊤"):
    (_, Psi, PV), = psi_choices(M, (kind,))
    if PV is not None:
        return FourFunctors(M, Psi_V=PV)
    return FourFunctors(M, Psi)


# poles and boundary

def check_poles(FF, samples):
    """√Γ has exactly one cell at every boundary element, for each sample Γ."""
    r = CheckReport(f"poles[{FF.M.name}, Ψ={FF.Psi.name}]")
    boundary = FF.boundary_elements()
    hard = [e for e in boundary if FF.interior[e]]
    soft = len(boundary) - len(hard)
    for G in samples:
        R = FF.transp(G)
        bad = next((e for e in hard if len(R.cells[e]) != 1), None)
        r.expect(f"{G.name}: boundary cells singleton", bad is None,
                 f"{len(hard)} boundary elements",
                 witness=None if bad is None else (FF.EV.objects[bad], len(R.cells[bad])))
        off = [e for e in range(soft and FF.EV.n_objects) if not FF.interior[e] and not FF.split[e]
               and len(R.cells[e]) != 1]
        if soft:
            r.add(f"{G.name}: frontier boundary", FRONTIER,
                  f"{soft} elements at the window edge, {len(off)} not singleton")
    return r


def check_boundary_theorem(FF, mutate=False):
    """(∈ ∂U) ≅ √⊥ over ⊤⋉𝐲U; with ``mutate`` the membership uses all of 𝐲U."""
    r = CheckReport(f"boundary[{FF.M.name}]")
    B = FF.membership(mutate=mutate)
    R = FF.transp(initial_presheaf(FF.EW))
    Bi, _ = _interior_restrict(FF, B)
    Ri, _ = _interior_restrict(FF, R)
    iso = iso_search(Bi, Ri)
    wit = None
    if iso is None:
        wit = next((FF.EV.objects[e] for e in range(FF.EV.n_objects)
                    if FF.interior[e] and len(B.cells[e]) != len(R.cells[e])), None)
    label = "(∈∂U) ≅ √⊥" if not mutate else "mutated (∈𝐲U) ≅ √⊥"
    r.expect(label, iso is not None, f"{sum(map(len, Bi.cells))} boundary cells", witness=wit)
    return r


def check_boundary_general(M, Psi):
    """The comparison for a general Ψ, reported as information only."""
    FF = FourFunctors(M, Psi)
    Bi, _ = _interior_restrict(FF, FF.membership())
    Ri, _ = _interior_restrict(FF, FF.transp(initial_presheaf(FF.EW)))
    found = iso_search(Bi, Ri) is not None
    r = CheckReport(f"boundary-general[{M.name}, Ψ={Psi.name}]")
    r.add("(∈∂U) ≅ √⊥", INFO, "isomorphic" if found else "not isomorphic")
    return r


def check_interval_boundary(M):
    """|∂U(V)| = 2 everywhere and ∂U ≅ the constant two-cell presheaf."""
    from .presheaf import constant_presheaf
    r = CheckReport(f"interval-boundary[{M.name}]")
    B = boundary_presheaf(M)
    sizes = {M.V.objects[v]: len(B.cells[v]) for v in range(M.V.n_objects)}
    bad = next(((k, n) for k, n in sizes.items() if n != 2), None)
    r.expect("|∂𝕀| = 2", bad is None, f"{len(sizes)} objects", witness=bad)
    K = constant_presheaf(M.V, ["0", "1"], name="Bool")
    r.expect("∂𝕀 ≅ Bool", iso_search(B, K) is not None)
    return r


# kernel and elimination support

def _element_label(FF, e):
    return FF.EV.objects[e]


def check_kernel(FF):
    """fresh-slice is full, faithful and essentially surjective onto split elements."""
    Fs, EV = FF.fresh_slice, FF.EV
    r = CheckReport(f"kernel[{FF.M.name}, Ψ={FF.Psi.name}]")
    wit = hom_injectivity_witness(Fs)
    r.expect("faithful", wit is None, witness=wit)
    wit = hom_surjectivity_witness(Fs)
    r.expect("full", wit is None, witness=wit)
    images = sorted(set(Fs.obj))
    counts = EV.hom_counts()
    by_count = {}
    for e in images:
        by_count.setdefault(counts[e], []).append(e)
    missing, frontier = None, 0
    for e in range(EV.n_objects):
        if not FF.split[e]:
            continue
        if not FF.interior[e]:
            frontier += 1
            continue
        if e in by_count.get(counts[e], ()) or any(EV.find_iso(x, e) for x in by_count.get(counts[e], ())):
            continue
        missing = missing or _element_label(FF, e)
    r.expect("essentially surjective onto split elements", missing is None,
             witness=None if missing is None else {"element": missing, "reason": "connection"})
    if frontier:
        r.add("split elements at the window edge", FRONTIER, f"{frontier} excluded")
    return r


def check_elimination_support(FF):
    """Dichotomy, no total → boundary maps, and boundary → total maps factor through copy."""
    M, Fs, EV, EW = FF.M, FF.fresh_slice, FF.EV, FF.EW
    r = CheckReport(f"elimination[{M.name}, Ψ={FF.Psi.name}]")
    if any(not M.W.hom(M.top, w) for w in range(M.W.n_objects)):
        r.add("elimination support", SKIP, "spooky base category: outside the scope of the argument")
        return r
    images = set(Fs.obj)
    counts = EV.hom_counts()
    by_count = {}
    for x in images:
        by_count.setdefault(counts[x], []).append(x)
    fresh_like = {}
    for e in range(EV.n_objects):
        if FF.interior[e]:
            fresh_like[e] = next((x for x in by_count.get(counts[e], ())
                                  if x == e or EV.find_iso(x, e)), None)
    bad = next((_element_label(FF, e) for e, x in fresh_like.items()
                if FF.split[e] and x is None), None)
    r.expect("(a) boundary or fresh image", bad is None, witness=bad)
    bad = None
    for m in range(EV.n_morphisms):
        a, b = EV.dom[m], EV.cod[m]
        if FF.split[a] and not FF.split[b]:
            bad = (_element_label(FF, a), _element_label(FF, b))
            break
    r.expect("(b) no split → boundary morphism", bad is None, witness=bad)
    # (c) every φ: e → Fs x with e on the boundary factors through the universal arrow of e
    _, inc, _, unit, missing = FF.sum_slice()
    pos = {e: t for t, e in enumerate(inc.obj)}
    bad, checked, frontier = None, 0, 0
    for e in range(EV.n_objects):
        if FF.split[e]:
            continue
        if e not in pos:
            frontier += 1
            continue
        t = pos[e]
        Sig = FF.sum_slice()[2]
        for x in range(EW.n_objects):
            for h in EV.hom(e, Fs.obj[x]):
                checked += 1
                if transpose_along(Fs, unit[t], Sig.obj[t], x, h) is None:
                    bad = bad or (_element_label(FF, e), EW.objects[x])
    r.expect("(c) boundary → total factors through copy", bad is None, f"{checked} morphisms",
             witness=bad)
    if frontier:
        r.add("(c) untrusted boundary elements", FRONTIER, f"{frontier} skipped")
    return r


# fresh exchange

def check_fresh_exchange(FF, samples):
    """(Ψ⋉𝐲U).fresh Γ ≅ (Ψ.Γ)⋉𝐲U over Ψ⋉𝐲U, through the explicit cell map."""
    M, P, Psi = FF.M, FF.P, FF.Psi
    V = M.V
    r = CheckReport(f"fresh-exchange[{M.name}, Ψ={Psi.name}]")
    for G in samples:
        FG = FF.fresh(G)
        lhs, _ = total_space(P, FG)
        T, proj = total_space(Psi, G)
        rhs = left_lift(M.F, T)
        # [(w, φ, (ψ, γ))] ↦ (p = [w, φ, ψ], [((w, ψ), φ, γ)])
        index = [{c: i for i, c in enumerate(cs)} for cs in lhs.pairs]
        comps = []
        for v in range(V.n_objects):
            row = []
            for c in range(len(rhs.cells[v])):
                w, phi, t = rhs.rep(v, c)
                psi, g = T.pairs[w][t]
                p = P.cls(v, w, phi, psi)
                e = FF.EV.index[(v, p)]
                x = FF.EW.index[(w, psi)]
                # φ read as an element morphism e → fresh-slice(x)
                chi = FF.EV.find(e, FF.fresh_slice.obj[x], phi)
                row.append(index[v][(p, FG.cls(e, x, chi, g))])
            comps.append(row)
        m = PresheafMorphism(rhs, lhs, comps, name="exchange")
        ok = check_morphism(m).passed and m.is_iso()
        r.expect(f"{G.name}: (Ψ.Γ)⋉𝐲U ≅ (Ψ⋉𝐲U).fresh Γ", ok,
                 f"{lhs.total()} cells", witness=None if ok else [len(c) for c in lhs.cells])
    return r


# adjunction chain

def check_adjunction_chain(FF, samples_W, samples_V, triangles=True):
    """Hom-bijections of ∃ ⊣ fresh ⊣ ⊸ ⊣ √ and the triangles of ∃ ⊣ fresh.

    ``samples_W`` are presheaves over ∫Ψ, ``samples_V`` over ∫(Ψ⋉𝐲U).
    """
    Fs = FF.fresh_slice
    r = CheckReport(f"adjunction-chain[{FF.M.name}, Ψ={FF.Psi.name}]")
    pairs = list(zip(samples_W, samples_V))
    sub = check_lift_adjunctions(Fs, pairs)
    for e in sub.entries:
        e.check = e.check.replace("left⊣central", "fresh⊣⊸").replace("central⊣right", "⊸⊣√")
    r.extend(sub)
    T, inc, Sig, unit, missing = FF.sum_slice()
    if missing:
        r.add("∃⊣fresh", WINDOW_NEGATIVE,
              f"{len(missing)} interior elements without Σ in the window",
              witness=FF.EV.objects[missing[0]])
        return r
    if T.n_objects == 0:
        r.add("∃⊣fresh", SKIP, "no trusted elements")
        return r
    EW = FF.EW

    def transpose(t, x, g):
        return FF.EV.comp[(Fs.mor[g], unit[t])]

    # element level: Hom(Σ e, x) ≅ Hom(e, fresh x) through the unit
    bad = None
    for t in range(T.n_objects):
        e = inc.obj[t]
        for x in range(EW.n_objects):
            left = EW.hom(Sig.obj[t], x)
            image = {FF.EV.comp[(Fs.mor[g], unit[t])] for g in left}
            if len(image) != len(left) or len(image) != len(FF.EV.hom(e, Fs.obj[x])):
                bad = (T.objects[t], EW.objects[x])
                break
        if bad:
            break
    r.expect("element level Σ ⊣ fresh", bad is None, f"{T.n_objects} trusted elements", witness=bad)

    for k, (D, G) in enumerate(pairs):
        GT = central_lift(inc, G)
        LG = left_lift(Sig, GT)
        FD = FF.fresh(D)
        FDT = central_lift(inc, FD)
        SD = central_lift(Sig, D)
        c = FF.sum_iso(D, FD, SD)
        r.expect(f"sample{k}: fresh Δ|T ≅ Σ*Δ natural", check_morphism(c).passed and c.is_iso())
        if not c.is_iso():
            continue
        cinv = _inverse(c)
        _bijection_check(r, f"sample{k}:∃⊣fresh", list(presheaf_homs(LG, D)),
                         list(presheaf_homs(GT, FDT)),
                         lambda a: compose_morphisms(cinv, left_sharp(Sig, LG, D, a)),
                         lambda b: left_flat(Sig, LG, D, SD, compose_morphisms(c, b)))
        if triangles:
            _triangles(r, k, FF, Sig, inc, G, GT, LG, D, FD, FDT, SD, c, cinv)
    return r


def _inverse(s):
    comps = []
    for w, row in enumerate(s.components):
        inv = [0] * len(row)
        for x, y in enumerate(row):
            inv[y] = x
        comps.append(inv)
    return PresheafMorphism(s.target, s.source, comps, name=f"{s.name}⁻¹")


def _triangles(r, k, FF, Sig, inc, G, GT, LG, D, FD, FDT, SD, c, cinv):
    """drop ∘ ∃copy = id and fresh(drop) ∘ copy = id on the trusted elements."""
    # copy_Γ: Γ|T → (fresh ∃Γ)|T
    F_LG = FF.fresh(LG)
    F_LG_T = central_lift(inc, F_LG)
    S_LG = central_lift(Sig, LG)
    c_LG = FF.sum_iso(LG, F_LG, S_LG)
    copy = compose_morphisms(_inverse(c_LG), left_sharp(Sig, LG, LG, identity_morphism(LG)))
    # drop_∃Γ: ∃((fresh ∃Γ)|T) → ∃Γ
    L_FLG = left_lift(Sig, F_LG_T)
    drop = left_flat(Sig, L_FLG, LG, S_LG, c_LG)
    lhs = compose_morphisms(drop, left_lift_morphism(copy, LG, L_FLG))
    r.expect(f"sample{k}: drop∘∃copy = id", lhs == identity_morphism(LG))
    # fresh(drop_Δ) ∘ copy_{fresh Δ}, on T
    L_FDT = left_lift(Sig, FDT)
    drop_D = left_flat(Sig, L_FDT, D, SD, c)
    F_L = FF.fresh(L_FDT)
    S_L = central_lift(Sig, L_FDT)
    c_L = FF.sum_iso(L_FDT, F_L, S_L)
    copy_FD = compose_morphisms(_inverse(c_L), left_sharp(Sig, L_FDT, L_FDT, identity_morphism(L_FDT)))
    fdrop = left_lift_morphism(drop_D, F_L, FD)
    fdrop_T = central_lift_morphism(inc, fdrop, central_lift(inc, F_L), FDT)
    rhs = compose_morphisms(fdrop_T, copy_FD)
    r.expect(f"sample{k}: fresh(drop)∘copy = id", rhs == identity_morphism(FDT))


# presheaf quantification

def check_psh_quantification(FF, samples_W, samples_V):
    """drop, const and unmerid in the cancellative affine case, the comparison maps
    from the copoint in the semicartesian case, and the substitution isomorphisms
    in the cartesian case."""
    M = FF.M
    r = CheckReport(f"psh-quantification[{M.name}, Ψ={FF.Psi.name}]")
    rep = property_report(M).summary()
    Fs = FF.fresh_slice
    if rep["cancellative"] and rep["affine"]:
        if rep["quantifiable"]:
            r.extend(check_drop_iso(M), "base")
        for k, D in enumerate(samples_W):
            FD = FF.fresh(D)
            const = left_sharp(Fs, FD, FD, identity_morphism(FD))
            r.expect(f"sample{k}: const iso", const.is_iso())
            RD = FF.transp(D)
            unmerid = right_flat(Fs, RD, RD, identity_morphism(RD))
            r.expect(f"sample{k}: unmerid iso", unmerid.is_iso())
            if rep["quantifiable"] and not FF.sum_slice()[4]:
                c = FF.sum_iso(D)
                r.expect(f"sample{k}: drop iso", c.is_iso() and _drop_is_iso(FF, D, c))
    else:
        r.add("cancellative affine case", SKIP, "not cancellative and affine")
    if not M.endo:
        r.add("semicartesian case", SKIP, "not an endo multiplier")
        return r
    copoint = M.declared_copoint or next(iter(find_copoints(M)), None)
    if copoint is None:
        r.add("semicartesian case", SKIP, "no copoint")
        return r
    if FF.Psi_V is None:
        r.add("semicartesian case", SKIP, "Ψ is not given over the target")
        return r
    Q = _CopointData(FF, copoint)
    for k, D in enumerate(samples_W):
        DV = Q.extend_sample(D, k)
        spoil = Q.spoil(DV)
        r.expect(f"sample{k}: spoil natural", check_morphism(spoil).passed)
    for k, G in enumerate(samples_V):
        cospoil = Q.cospoil(G)
        r.expect(f"sample{k}: cospoil natural", check_morphism(cospoil).passed)
        if not FF.sum_slice()[4]:
            hide = Q.hide(G)
            r.expect(f"sample{k}: hide natural", check_morphism(hide).passed)
    if product_witness(M, copoint) is None:
        r.extend(Q.cartesian_isos(samples_W, samples_V), "cartesian")
    else:
        r.add("cartesian case", SKIP, "(π₁, π₂) is not a product")
    return r


def _drop_is_iso(FF, D, c):
    T, inc, Sig, unit, _ = FF.sum_slice()
    L = left_lift(Sig, central_lift(inc, FF.fresh(D)))
    drop = left_flat(Sig, L, D, central_lift(Sig, D), c)
    sub, emb = FF.exact_sub()
    return central_lift_morphism(emb, drop, FF.on_exact(L), FF.on_exact(D)).is_iso()


class _CopointData:
    """σ = π₁: Ψ⋉𝐲U → Ψ_V and the maps it induces."""

    def __init__(self, FF, copoint):
        self.FF = FF
        M, P, PV = FF.M, FF.P, FF.Psi_V
        V = M.V
        comps = []
        for v in range(V.n_objects):
            row = []
            for c in range(len(P.cells[v])):
                w, phi, psi = P.rep(v, c)
                row.append(PV.restrict[V.comp[(copoint.components[w], phi)]][psi])
            comps.append(row)
        self.sigma = PresheafMorphism(P, PV, comps, name="π₁")
        self.copoint = copoint
        self.pair = pair_functor(self.sigma)
        self.iota = elements_inclusion(M.embed, PV, FF.Psi)
        self.EPV = PV.elements()

    def extend_sample(self, D, k):
        """A presheaf over ∫Ψ_V restricting to D on ∫Ψ: right Kan extension along ι."""
        return right_lift(self.iota, D, name=f"{D.name}ᵛ")

    def spoil(self, DV):
        """fresh(ι*Δ) → Ω_σ Δ, [(x, h, δ)] ↦ Δ(π₁ ∘ h)(δ)."""
        FF = self.FF
        D = central_lift(self.iota, DV)
        FD = FF.fresh(D)
        OD = central_lift(self.pair, DV)
        EV, EPV = FF.EV, self.EPV
        V = FF.M.V
        comps = []
        for e in range(EV.n_objects):
            row = []
            for c in range(len(FD.cells[e])):
                x, h, d = FD.rep(e, c)
                w = FF.EW.points[x][0]
                base = V.comp[(self.copoint.components[w], EV.base_mor[h])]
                row.append(DV.restrict[EPV.lift(base, self.iota.obj[x])][d])
            comps.append(row)
        return PresheafMorphism(FD, OD, comps, name="spoil")

    def cospoil(self, G):
        """Π_σΓ restricted to ∫Ψ → ⊸Γ, t ↦ t(fresh x, π₁)."""
        FF = self.FF
        PiG = right_lift(self.pair, G)
        src = central_lift(self.iota, PiG)
        dst = FF.lolli(G)
        comps = []
        for x in range(FF.EW.n_objects):
            y = self.iota.obj[x]
            e = FF.fresh_slice.obj[x]
            w = FF.EW.points[x][0]
            m = self.EPV.find(self.pair.obj[e], y, self.copoint.components[w])
            comps.append([PiG.value(y, t, e, m) for t in range(len(PiG.cells[y]))])
        return PresheafMorphism(src, dst, comps, name="cospoil")

    def hide(self, G):
        """Σ_σΓ restricted to ∫Ψ → ∃Γ, [(e, h, γ)] ↦ [(e, π₁-transpose, γ)]."""
        FF = self.FF
        T, inc, Sig, unit, _ = FF.sum_slice()
        pos = {e: t for t, e in enumerate(inc.obj)}
        SG = left_lift(self.pair, G)
        src = central_lift(self.iota, SG)
        GT = central_lift(inc, G)
        EG = left_lift(Sig, GT)
        V, EW, EPV = FF.M.V, FF.EW, self.EPV
        comps = []
        for x in range(EW.n_objects):
            y = self.iota.obj[x]
            row = []
            for c in range(len(SG.cells[y])):
                vals = set()
                for mem in SG.members[y][c]:
                    e, h, g = SG.raw[y][mem]
                    if e not in pos:
                        continue
                    t = pos[e]
                    # x → σ(e) and π₁ ∘ η_e : σ(e) → Σ e give x → Σ e
                    s = Sig.obj[t]
                    ws = EW.points[s][0]
                    base = V.compose(self.copoint.components[ws], FF.EV.base_mor[unit[t]],
                                     EPV.base_mor[h])
                    base_w = FF.M.embed.mor.index(base) if base in FF.M.embed.mor else None
                    if base_w is None:
                        continue
                    m = EW.find(x, s, base_w)
                    if m is None:
                        continue
                    vals.add(EG.cls(x, t, m, g))
                if len(vals) != 1:
                    raise InvalidStructure(f"hide is not determined at {EW.objects[x]!r}")
                row.append(vals.pop())
            comps.append(row)
        return PresheafMorphism(src, EG, comps, name="hide")

    def cartesian_isos(self, samples_W, samples_V):
        FF = self.FF
        r = CheckReport("cartesian")
        wk = wkn_functor(self.sigma, along=self.iota)
        for k, G in enumerate(samples_V):
            lhs = central_lift(self.iota, left_lift(self.pair, G))
            if not FF.sum_slice()[4]:
                r.expect(f"sample{k}: ∃ ≅ Σ_π₁", iso_search(FF.exists(G), lhs) is not None)
            else:
                r.add(f"sample{k}: ∃ ≅ Σ_π₁", WINDOW_NEGATIVE, "∃ not available on the window")
            rhs = central_lift(self.iota, right_lift(self.pair, G))
            r.expect(f"sample{k}: ⊸ ≅ Π_π₁", iso_search(FF.lolli(G), rhs) is not None)
        for k, D in enumerate(samples_W):
            DV = self.extend_sample(D, k)
            a, _ = _interior_restrict(FF, FF.fresh(central_lift(self.iota, DV)))
            b, _ = _interior_restrict(FF, central_lift(self.pair, DV))
            r.expect(f"sample{k}: fresh ≅ Ω_π₁", iso_search(a, b) is not None)
            a, _ = _interior_restrict(FF, FF.transp(D))
            b, _ = _interior_restrict(FF, right_lift(wk, D))
            r.expect(f"sample{k}: √ ≅ $_π₁", iso_search(a, b) is not None)
        return r


# the spooky counterexample

def check_spooky_example(M):
    """For a spooky base: Δ (two cells at ⊤, one elsewhere) has Δ⋉𝐲U terminal,
    and the two maps ⊤ → Δ are identified by ⋉𝐲U, so fresh is not faithful on
    presheaves although it is at the base."""
    W = M.W
    r = CheckReport(f"spooky[{M.name}]")
    spooky = [w for w in range(W.n_objects) if not W.hom(M.top, w)]
    if not spooky:
        r.add("spooky object", SKIP, "no spooky object in the window")
        return r
    r.ok("spooky object", f"{W.objects[spooky[0]]!r}")
    FF = FourFunctors(M)
    EW = FF.EW
    cells = [["ff", "tt"] if EW.carrier(x) == M.top else ["*"] for x in range(EW.n_objects)]
    restrict = []
    for m in range(EW.n_morphisms):
        a, b = EW.dom[m], EW.cod[m]
        if EW.carrier(b) == M.top and EW.carrier(a) != M.top:
            restrict.append((0, 0))
        elif EW.carrier(b) == M.top:
            restrict.append((0, 1))
        else:
            if EW.carrier(a) == M.top:
                raise InvalidStructure("a spooky object maps to ⊤ only through itself")
            restrict.append((0,))
    D = Presheaf(EW, cells, restrict, name="Δ")
    one = terminal_presheaf(EW)
    FD, F1 = FF.fresh(D), FF.fresh(one)
    top = FF.on_interior(F1)
    r.expect("⊤⋉𝐲U is terminal", all(len(c) == 1 for c in top.cells))
    r.expect("Δ⋉𝐲U ≅ ⊤⋉𝐲U", iso_search(FF.on_interior(FD), top) is not None)
    maps = list(presheaf_homs(one, D))
    r.expect("two maps ⊤ → Δ", len(maps) == 2, witness=len(maps))
    if len(maps) == 2:
        a, b = (left_lift_morphism(s, F1, FD) for s in maps)
        sub, inc = FF.interior_sub()
        a_i = central_lift_morphism(inc, a, FF.on_interior(F1), FF.on_interior(FD))
        b_i = central_lift_morphism(inc, b, FF.on_interior(F1), FF.on_interior(FD))
        r.expect("⋉𝐲U identifies them", maps[0] != maps[1] and a_i == b_i)
    base_faithful = hom_injectivity_witness(M.fresh_base()) is None
    r.expect("fresh is faithful at the base", base_faithful)
    return r


# composing multipliers

def check_composite_sum(M1, M2):
    """Σ of the composite agrees with Σ₁ after the slice-level Σ₂."""
    from .multiplier import compose_multipliers
    M = compose_multipliers(M1, M2)
    r = CheckReport(f"composite-Σ[{M.name}]")
    V2 = M2.V
    Psi = yoneda(M2.W, M1.U)
    FF2 = FourFunctors(M2, Psi)
    T2, inc2, Sig2, _, _ = FF2.sum_slice()
    S, _ = M.slice()
    S1, _ = M1.slice()
    checked, bad, frontier = 0, None, 0
    for t in range(T2.n_objects):
        e = inc2.obj[t]
        v, c = FF2.EV.points[e]
        w, phi, psi = FF2.P.rep(v, c)
        leg = V2.comp[(M2.F.mor[Psi.mor[w][psi]], phi)]
        s = S.index[(v, leg)]
        x = Sig2.obj[t]
        w1, psi1 = FF2.EW.points[x]
        s1 = S1.index[(w1, Psi.mor[w1][psi1])]
        whole, part = M.sum_base(s), M1.sum_base(s1)
        if whole is None or part is None:
            frontier += 1
            continue
        checked += 1
        if whole[0] != part[0] and M.W.find_iso(whole[0], part[0]) is None:
            bad = bad or (S.objects[s], M.W.objects[whole[0]], M.W.objects[part[0]])
    r.expect("Σ(U⋉U') ≅ Σ(U)∘Σ(U')", bad is None, f"{checked} slices", witness=bad)
    if frontier:
        r.add("slices without Σ in the window", FRONTIER, f"{frontier} skipped")
    return r


# commutation cells

@dataclass(frozen=True)
class CommutationCell:
    """lhs RELATION rhs between composites of named functors.

    Composites are written in composition order: ("Σσ", "⊸1") is Σ_σ ∘ ⊸_{Ψ1}.
    ``context`` is "square" (a pullback square of weakenings Ψ.(A×B) → Ψ.A,
    Ψ.B → Ψ) or "multiplier" (σ: Ψ1 → Ψ2 and τ = σ⋉𝐲U).  ``candidate`` names
    the transformation checked for "→" and "←" cells.
    """

    name: str
    context: str
    lhs: tuple
    rhs: tuple
    relation: str
    fixture: str
    params: tuple = ()
    sigma: str = "bang"
    requires: tuple = ()
    candidate: str = ""
    statement: str = ""


@dataclass
class _Fn:
    source: str
    target: str
    apply: object


class _SquareContext:
    """Ψ.(A×B) with projections β': to Ψ.A and α': to Ψ.B over a seeded Ψ, A, B."""

    def __init__(self, M, seed):
        W = M.W
        target = M.V.objects[M.U]
        Psi = yoneda(W, W.obj(target)) if W.has_obj(target) else terminal_presheaf(W)
        EPsi = Psi.elements()
        A, B = sample_presheaves(EPsi, seed + 17, 2, max_cells=2, prefix="A")
        B.name = "B"
        PA, alpha = total_space(Psi, A, name="Ψ.A")
        PB, beta = total_space(Psi, B, name="Ψ.B")
        alpha.name, beta.name = "α", "β"
        from .presheaf import presheaf_pullback, Substitution
        Q, bp, ap = presheaf_pullback(alpha, beta, name="Ψ.(A×B)")
        bp.name, ap.name = "β'", "α'"
        self.cats = {"Ψ": EPsi, "A": PA.elements(), "B": PB.elements(), "AB": Q.elements()}
        self.fns = {}
        for label, s, src, tgt in (("α", alpha, "A", "Ψ"), ("β", beta, "B", "Ψ"),
                                   ("β'", bp, "AB", "A"), ("α'", ap, "AB", "B")):
            sub = Substitution(s)
            self.fns["Σ" + label] = _Fn(src, tgt, lambda X, sub=sub: sub.apply("Σ", X))
            self.fns["Ω" + label] = _Fn(tgt, src, lambda X, sub=sub: sub.apply("Ω", X))
            self.fns["Π" + label] = _Fn(src, tgt, lambda X, sub=sub: sub.apply("Π", X))
            self.fns["$" + label] = _Fn(tgt, src, lambda X, sub=sub: sub.apply("$", X))

    def compare_on(self, tag, X):
        return X


class _MultiplierContext:
    """σ: Ψ1 → Ψ2 over the source of M, τ = σ⋉𝐲U, and both four-functor chains."""

    def __init__(self, M, sigma):
        from .presheaf import Substitution, yoneda_morphism
        W = M.W
        i = W.obj(M.V.objects[M.U]) if W.has_obj(M.V.objects[M.U]) else None
        if sigma == "bang":
            if i is None:
                raise UnsupportedCell("the interval is not an object of the source window")
            P1 = yoneda(W, i)
            P2 = terminal_presheaf(W)
            s = PresheafMorphism(P1, P2, [[0] * len(c) for c in P1.cells], name="!")
        elif sigma == "point":
            if i is None or not W.hom(M.top, i):
                raise UnsupportedCell("no point of the interval in the window")
            f = W.hom(M.top, i)[0]
            yt = yoneda(W, M.top)
            s = yoneda_morphism(W, f, yt)
            P1, P2 = yt, s.target
        else:
            raise UnsupportedCell(f"unknown σ {sigma!r}")
        P1.name, P2.name = "Ψ1", "Ψ2"
        self.M = M
        self.sigma = s
        self.FF1, self.FF2 = FourFunctors(M, P1), FourFunctors(M, P2)
        self.tau = left_lift_morphism(s, self.FF1.P, self.FF2.P)
        self.tau.name = "τ"
        self.cats = {"W1": self.FF1.EW, "W2": self.FF2.EW, "V1": self.FF1.EV, "V2": self.FF2.EV}
        fns = {}
        for label, m, src, tgt in (("σ", s, "W1", "W2"), ("τ", self.tau, "V1", "V2")):
            sub = Substitution(m)
            fns["Σ" + label] = _Fn(src, tgt, lambda X, sub=sub: sub.apply("Σ", X))
            fns["Ω" + label] = _Fn(tgt, src, lambda X, sub=sub: sub.apply("Ω", X))
            fns["Π" + label] = _Fn(src, tgt, lambda X, sub=sub: sub.apply("Π", X))
            fns["$" + label] = _Fn(tgt, src, lambda X, sub=sub: sub.apply("$", X))
        for k, FF in (("1", self.FF1), ("2", self.FF2)):
            W_, V_ = "W" + k, "V" + k
            fns["fresh" + k] = _Fn(W_, V_, FF.fresh)
            fns["⊸" + k] = _Fn(V_, W_, FF.lolli)
            fns["√" + k] = _Fn(W_, V_, FF.transp)
            fns["∃" + k] = _Fn(V_, W_, lambda X, FF=FF: self._exists(FF, X))
        self.fns = fns

    @staticmethod
    def _exists(FF, X):
        if FF.sum_slice()[4]:
            raise UnsupportedCell("∃ is not available on the window")
        return FF.exists(X)

    def compare_on(self, tag, X):
        FF = self.FF1 if tag.endswith("1") else self.FF2
        return FF.on_interior(X) if tag.startswith("V") else FF.on_exact(X)


def _composite(ctx, names):
    fns = []
    for n in names:
        if n not in ctx.fns:
            raise UnsupportedCell(f"functor {n!r} is not available here")
        fns.append(ctx.fns[n])
    for outer, inner in zip(fns, fns[1:]):
        if inner.target != outer.source:
            raise UnsupportedCell(f"ill-typed composite {' ∘ '.join(names)}")
    return fns[-1].source, fns[0].target, fns


def _apply(fns, X):
    for f in reversed(fns):
        X = f.apply(X)
    return X


def _sigma_lolli_candidate(ctx, G, lhs, rhs):
    """Σ_σ ⊸Γ → ⊸ Σ_τ Γ, [(x1, θ, γ)] ↦ [(fresh x1, θ⋉U, γ)]."""
    FF1, FF2 = ctx.FF1, ctx.FF2
    F = ctx.M.F
    pair_tau = pair_functor(ctx.tau)
    StG = rhs.inner if hasattr(rhs, "inner") else None
    if StG is None:
        raise UnsupportedCell("candidate needs the lifted right-hand side")
    EW2, EV2 = FF2.EW, FF2.EV
    comps = []
    for x2 in range(EW2.n_objects):
        e2 = FF2.fresh_slice.obj[x2]
        row = []
        for c in range(len(lhs.cells[x2])):
            vals = set()
            for m in lhs.members[x2][c]:
                x1, theta, g = lhs.raw[x2][m]
                e1 = FF1.fresh_slice.obj[x1]
                omega = EV2.find(e2, pair_tau.obj[e1], F.mor[EW2.base_mor[theta]])
                vals.add(StG.cls(e2, e1, omega, g))
            if len(vals) != 1:
                raise InvalidStructure(f"candidate is not constant on a class at {EW2.objects[x2]!r}")
            row.append(vals.pop())
        comps.append(row)
    return PresheafMorphism(lhs, rhs, comps, name="Σ⊸→⊸Σ")


CANDIDATES = {"sigma-lolli": _sigma_lolli_candidate}


def check_commutation_instance(cell, seed=0, samples=2, M=None):
    """Check one cell on seeded inputs; returns a CheckReport."""
    from . import zoo
    r = CheckReport(f"commutation[{cell.name}]")
    if M is None:
        M = zoo.entry(cell.fixture, dict(cell.params)).multiplier()
    if cell.requires:
        rep = property_report(M).summary()
        missing = [p for p in cell.requires if not rep.get(p)]
        if missing:
            raise UnsupportedCell(f"{cell.fixture} is not {', '.join(missing)}")
    if cell.context == "square":
        ctx = _SquareContext(M, seed)
    elif cell.context == "multiplier":
        ctx = _MultiplierContext(M, cell.sigma)
    else:
        raise UnsupportedCell(f"unknown context {cell.context!r}")
    src, tgt, lfns = _composite(ctx, cell.lhs)
    src2, tgt2, rfns = _composite(ctx, cell.rhs)
    if (src, tgt) != (src2, tgt2):
        raise UnsupportedCell("the two composites have different types")
    if cell.relation in ("→", "←") and cell.candidate not in CANDIDATES:
        raise UnsupportedCell(f"no candidate transformation for {cell.name}")
    inputs = sample_presheaves(ctx.cats[src], seed, samples, prefix="Γ")
    for G in inputs:
        try:
            L, R = _apply(lfns, G), _apply(rfns, G)
        except MissingPullbacks as exc:
            r.add(f"{G.name}", WINDOW_NEGATIVE, str(exc))
            continue
        if cell.relation == "=":
            same = L.cells == R.cells and L.restrict == R.restrict
            r.expect(f"{G.name}: strictly equal", same)
        elif cell.relation == "≅":
            a, b = ctx.compare_on(tgt, L), ctx.compare_on(tgt, R)
            r.expect(f"{G.name}: isomorphic", iso_search(a, b) is not None,
                     f"{a.total()} cells", witness=None if a.sizes() == b.sizes() else "sizes differ")
        else:
            first, second = (L, R) if cell.relation == "→" else (R, L)
            try:
                t = CANDIDATES[cell.candidate](ctx, G, first, second)
            except InvalidStructure as exc:
                r.fail(f"{G.name}: candidate", str(exc))
                continue
            r.expect(f"{G.name}: candidate natural", check_morphism(t).passed)
            r.add(f"{G.name}: candidate invertible", INFO, "yes" if t.is_iso() else "no")
    return r


COMMUTATION_FIXTURES = [
    CommutationCell("Ω/Ω strict", "square", ("Ωα'", "Ωβ"), ("Ωβ'", "Ωα"), "=",
                    "cartesian-cubes", (("k", 2),), statement="Ω_α' Ω_β = Ω_β' Ω_α"),
    CommutationCell("Σ/Σ", "square", ("Σα", "Σβ'"), ("Σβ", "Σα'"), "≅",
                    "cartesian-cubes", (("k", 2),), statement="Σ_α Σ_β' ≅ Σ_β Σ_α'"),
    CommutationCell("Ω/Σ", "square", ("Ωα", "Σβ"), ("Σβ'", "Ωα'"), "≅",
                    "cartesian-cubes", (("k", 2),), statement="Ω_α Σ_β ≅ Σ_β' Ω_α'"),
    CommutationCell("Σ fresh", "multiplier", ("Στ", "fresh1"), ("fresh2", "Σσ"), "≅",
                    "affine-cubes", (("k", 2),), statement="Σ_τ fresh ≅ fresh Σ_σ"),
    CommutationCell("Ω ⊸", "multiplier", ("Ωσ", "⊸2"), ("⊸1", "Ωτ"), "≅",
                    "affine-cubes", (("k", 2),), statement="Ω_σ ⊸ ≅ ⊸ Ω_τ"),
    CommutationCell("Σ ⊸ affine", "multiplier", ("Σσ", "⊸1"), ("⊸2", "Στ"), "≅",
                    "affine-cubes", (("k", 2),), requires=("cancellative", "affine"),
                    statement="Σ_σ ⊸ ≅ ⊸ Σ_τ for cancellative affine multipliers"),
    CommutationCell("Σ ⊸ affine, point", "multiplier", ("Σσ", "⊸1"), ("⊸2", "Στ"), "≅",
                    "affine-cubes", (("k", 2),), sigma="point", requires=("cancellative", "affine"),
                    statement="Σ_σ ⊸ ≅ ⊸ Σ_τ for cancellative affine multipliers"),
    CommutationCell("Σ ⊸ general", "multiplier", ("Σσ", "⊸1"), ("⊸2", "Στ"), "→",
                    "cartesian-cubes", (("k", 2),), candidate="sigma-lolli",
                    statement="Σ_σ ⊸ → ⊸ Σ_τ"),
    CommutationCell("Σ ∃ quantifiable", "multiplier", ("Σσ", "∃1"), ("∃2", "Στ"), "≅",
                    "cartesian-cubes", (("k", 2),), requires=("quantifiable",),
                    statement="Σ_σ ∃ ≅ ∃ Σ_τ for quantifiable multipliers"),
    CommutationCell("Ω fresh quantifiable", "multiplier", ("Ωτ", "fresh2"), ("fresh1", "Ωσ"), "≅",
                    "cartesian-cubes", (("k", 2),), requires=("quantifiable",),
                    statement="Ω_τ fresh ≅ fresh Ω_σ for quantifiable multipliers"),
]


def commutation_fixtures(names=None):
    if names is None:
        return list(COMMUTATION_FIXTURES)
    return [c for c in COMMUTATION_FIXTURES if c.name in names]
