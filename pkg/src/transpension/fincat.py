"""Finite categories, functors and natural transformations.

Objects and morphisms are referred to by integer index.  Every object and
morphism also carries a hashable label; for materialized windows of a
generated category the labels are the normal forms, so ``find`` doubles as the
lookup table between normal forms and indices.
"""
from __future__ import annotations

import ast
import itertools
from collections.abc import Mapping

import numpy as np

from .caps import get_caps
from .errors import InvalidStructure, WindowEscape
from .report import CheckReport


class FinCategory:
    def __init__(self, objects, morphisms, identities, composition, name="C"):
        self.name = name
        self.objects = list(objects)
        self.mor_label = [m[0] for m in morphisms]
        self.dom = [m[1] for m in morphisms]
        self.cod = [m[2] for m in morphisms]
        self.identities = list(identities)
        self.comp = composition
        self._obj_index = {}
        for i, o in enumerate(self.objects):
            if o in self._obj_index:
                raise InvalidStructure(f"duplicate object label {o!r}")
            self._obj_index[o] = i
        self._homs = {}
        self._find = {}
        self._out = [[] for _ in self.objects]
        for f, (label, a, b) in enumerate(morphisms):
            self._homs.setdefault((a, b), []).append(f)
            self._out[a].append(f)
            key = (a, b, label)
            if key in self._find:
                raise InvalidStructure(f"duplicate morphism label {label!r} in Hom({a},{b})")
            self._find[key] = f
        self._hom_counts = None

    def __repr__(self):
        return f"<FinCategory {self.name}: {len(self.objects)} objects, {len(self.dom)} morphisms>"

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.dom)

    def obj(self, label):
        return self._obj_index[label]

    def has_obj(self, label):
        return label in self._obj_index

    def hom(self, a, b):
        return self._homs.get((a, b), ())

    def out(self, a):
        return self._out[a]

    def find(self, a, b, label):
        return self._find.get((a, b, label))

    def ident(self, a):
        return self.identities[a]

    def compose(self, *ms):
        """compose(h, g, f) is h after g after f."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.comp[(g, out)]
        return out

    def hom_counts(self):
        if self._hom_counts is None:
            n = self.n_objects
            self._hom_counts = [tuple(len(self.hom(a, b)) for b in range(n)) for a in range(n)]
        return self._hom_counts

    def is_iso(self, f):
        a, b = self.dom[f], self.cod[f]
        for g in self.hom(b, a):
            if self.comp[(g, f)] == self.identities[a] and self.comp[(f, g)] == self.identities[b]:
                return g
        return None

    def find_iso(self, a, b):
        for f in self.hom(a, b):
            g = self.is_iso(f)
            if g is not None:
                return f, g
        return None

    def show_obj(self, a):
        return self.objects[a]

    def show_mor(self, f):
        return (self.mor_label[f], self.objects[self.dom[f]], self.objects[self.cod[f]])


ExplicitFinCategory = FinCategory


def check_category_laws(C):
    r = CheckReport(f"laws[{C.name}]")
    n = C.n_morphisms
    bad = None
    for a, i in enumerate(C.identities):
        if not (0 <= i < n) or C.dom[i] != a or C.cod[i] != a:
            bad = (C.objects[a], i)
            break
    r.expect("identity-typing", bad is None, witness=bad)
    if bad is not None:
        return r
    missing = None
    coherence = None
    for f in range(n):
        for g in C.out(C.cod[f]):
            gf = C.comp.get((g, f))
            if gf is None:
                missing = (C.show_mor(g), C.show_mor(f))
                break
            if C.dom[gf] != C.dom[f] or C.cod[gf] != C.cod[g]:
                coherence = (C.show_mor(g), C.show_mor(f), C.show_mor(gf))
                break
        if missing or coherence:
            break
    extra = None
    for (g, f) in C.comp:
        if C.cod[f] != C.dom[g]:
            extra = (C.show_mor(g), C.show_mor(f))
            break
    r.expect("composition-total", missing is None, witness=missing)
    r.expect("composition-typed", extra is None, witness=extra)
    r.expect("dom-cod-coherence", coherence is None, witness=coherence)
    if missing or coherence or extra:
        return r
    unit = None
    for f in range(n):
        if C.comp[(C.identities[C.cod[f]], f)] != f or C.comp[(f, C.identities[C.dom[f]])] != f:
            unit = C.show_mor(f)
            break
    r.expect("identity-laws", unit is None, witness=unit)
    assoc = _associativity_witness(C)
    r.expect("associativity", assoc is None, witness=assoc)
    return r


def generators(C):
    """A set of non-identity morphisms generating C under composition, cached.

    Morphisms are scanned in index order and kept when not already composites
    of earlier ones; the closure grows by multiplying new words with the
    generators on either side.  For a category of elements the lifts of base
    generators suffice.
    """
    gens = getattr(C, "_generators", None)
    if gens is not None:
        return gens
    base = getattr(C, "base_mor", None)
    if base is not None and hasattr(C, "presheaf"):
        keep = set(generators(C.base))
        gens = [m for m in range(C.n_morphisms) if base[m] in keep]
        C._generators = gens
        return gens
    closed = set(C.identities)
    gens = []
    into = [[] for _ in range(C.n_objects)]
    outof = [[] for _ in range(C.n_objects)]
    for f in range(C.n_morphisms):
        if f in closed:
            continue
        gens.append(f)
        into[C.cod[f]].append(f)
        outof[C.dom[f]].append(f)
        closed.add(f)
        queue = [f]
        while queue:
            x = queue.pop()
            for g in outof[C.cod[x]]:
                y = C.comp[(g, x)]
                if y not in closed:
                    closed.add(y)
                    queue.append(y)
            for g in into[C.dom[x]]:
                y = C.comp[(x, g)]
                if y not in closed:
                    closed.add(y)
                    queue.append(y)
    C._generators = gens
    return gens


def composition_array(C):
    """The composition table as rows (g, f, g∘f), cached on the category."""
    arr = getattr(C, "_comp_array", None)
    if arr is None or len(arr) != len(C.comp):
        arr = np.fromiter((x for (g, f), gf in C.comp.items() for x in (g, f, gf)),
                          dtype=np.int64, count=3 * len(C.comp)).reshape(-1, 3)
        C._comp_array = arr
    return arr


def generator_pairs(C):
    """Rows (g, f, g∘f) with g a generator, cached.

    Functoriality need only be checked on these pairs: if a functor respects
    g₁∘x and g₂∘x for all x, it respects (g₁∘g₂)∘x as well.
    """
    arr = getattr(C, "_gen_pairs", None)
    if arr is None:
        into = [[] for _ in range(C.n_objects)]
        for f in range(C.n_morphisms):
            into[C.cod[f]].append(f)
        rows = [(g, f, C.comp[(g, f)]) for g in generators(C) for f in into[C.dom[g]]]
        arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
        C._gen_pairs = arr
    return arr


def _associativity_witness(C):
    """First (h, g, f) with h(gf) ≠ (hg)f.

    Checking h over a generating set suffices: if h₁ and h₂ associate with
    everything then so does h₁h₂.  Columns are processed in blocks to bound memory.
    """
    n = C.n_morphisms
    table = np.full((n, n), -1, dtype=np.int64)
    pairs = composition_array(C)
    table[pairs[:, 0], pairs[:, 1]] = pairs[:, 2]
    cod = np.array(C.cod, dtype=np.int64)
    gens = set(generators(C))
    for c in range(C.n_objects):
        hs = np.array([h for h in C.out(c) if h in gens], dtype=np.int64)
        sel = pairs[cod[pairs[:, 0]] == c]
        if not len(hs) or not len(sel):
            continue
        block = max(1, 4_000_000 // len(hs))
        for start in range(0, len(sel), block):
            part = sel[start:start + block]
            gs, fs, gfs = part[:, 0], part[:, 1], part[:, 2]
            lhs = table[hs[:, None], gfs[None, :]]
            rhs = table[table[hs[:, None], gs[None, :]], fs[None, :]]
            bad = np.nonzero(lhs != rhs)
            if len(bad[0]):
                i, j = int(bad[0][0]), int(bad[1][0])
                return (C.show_mor(int(hs[i])), C.show_mor(int(gs[j])), C.show_mor(int(fs[j])))
    return None


def require_laws(C):
    rep = check_category_laws(C)
    if not rep.passed:
        raise InvalidStructure(f"category {C.name} violates the category laws", rep)
    return C


class GeneratedCategory:
    """A category presented by object descriptors and morphism normal forms.

    Subclasses (or instances built with callables) provide ``objects(bound)``,
    ``hom(a, b)``, ``compose(a, b, c, g, f)`` (g after f), ``identity(a)`` and
    ``size(a)``.  Descriptors and normal forms are nested tuples of ints and
    strings, so ``repr`` and ``ast.literal_eval`` round-trip them.
    """

    name = "generated"

    def __init__(self, name=None, objects=None, hom=None, compose=None, identity=None, size=None):
        if name is not None:
            self.name = name
        for attr, fn in (("objects", objects), ("hom", hom), ("compose", compose),
                         ("identity", identity), ("size", size)):
            if fn is not None:
                setattr(self, attr, fn)

    def render(self, nf):
        return repr(nf)

    def parse(self, text):
        return ast.literal_eval(text)


class Window(FinCategory):
    """A materialized full subcategory of a generated category."""

    def __init__(self, generator, bound, *args, **kw):
        super().__init__(*args, **kw)
        self.generator = generator
        self.bound = bound

    def size(self, a):
        return self.generator.size(self.objects[a])

    def lookup(self, a_desc, b_desc, nf):
        a, b = self._obj_index.get(a_desc), self._obj_index.get(b_desc)
        if a is None or b is None:
            raise WindowEscape(f"{a_desc!r} or {b_desc!r} outside window {self.name}")
        f = self._find.get((a, b, nf))
        if f is None:
            raise InvalidStructure(f"{nf!r} is not a normal form in Hom({a_desc!r},{b_desc!r})")
        return f


def materialize_window(G, bound, caps=None, check=True):
    caps = caps or get_caps()
    descs = list(G.objects(bound))
    caps.check("objects", len(descs))
    morphisms = []
    homs = {}
    for ia, a in enumerate(descs):
        for ib, b in enumerate(descs):
            nfs = list(G.hom(a, b))
            if len(set(nfs)) != len(nfs):
                raise InvalidStructure(f"{G.name}: hom enumeration repeats a normal form in Hom({a!r},{b!r})")
            homs[(ia, ib)] = range(len(morphisms), len(morphisms) + len(nfs))
            morphisms.extend((nf, ia, ib) for nf in nfs)
            caps.check("morphisms", len(morphisms))
    n = len(descs)
    entries = sum(len(homs[(a, b)]) * len(homs[(b, c)])
                  for a in range(n) for b in range(n) for c in range(n))
    caps.check("composition", entries)
    find = {(a, b, nf): i for i, (nf, a, b) in enumerate(morphisms)}
    identities = []
    for ia, a in enumerate(descs):
        f = find.get((ia, ia, G.identity(a)))
        if f is None:
            raise InvalidStructure(f"{G.name}: identity of {a!r} is not a normal form")
        identities.append(f)
    comp = {}
    for ia, ib, ic in itertools.product(range(n), repeat=3):
        a, b, c = descs[ia], descs[ib], descs[ic]
        for f in homs[(ia, ib)]:
            for g in homs[(ib, ic)]:
                nf = G.compose(a, b, c, morphisms[g][0], morphisms[f][0])
                gf = find.get((ia, ic, nf))
                if gf is None:
                    raise InvalidStructure(
                        f"{G.name}: composite {nf!r} of {morphisms[g][0]!r} and {morphisms[f][0]!r} "
                        f"is not in Hom({a!r},{c!r})")
                comp[(g, f)] = gf
    W = Window(G, bound, descs, morphisms, identities, comp, name=f"{G.name}[{bound}]")
    if check:
        require_laws(W)
    return W


class Functor:
    def __init__(self, source, target, obj_map, mor_map, name="F"):
        self.source = source
        self.target = target
        self.obj = list(obj_map)
        self.mor = list(mor_map)
        self.name = name

    def __repr__(self):
        return f"<Functor {self.name}: {self.source.name} -> {self.target.name}>"


def identity_functor(C, name="Id"):
    return Functor(C, C, range(C.n_objects), range(C.n_morphisms), name)


def compose_functors(G, F, name=None):
    """G after F."""
    if F.target is not G.source:
        raise InvalidStructure("functors are not composable")
    return Functor(F.source, G.target, [G.obj[x] for x in F.obj], [G.mor[f] for f in F.mor],
                   name or f"{G.name}∘{F.name}")


def check_functor(F):
    C, D = F.source, F.target
    r = CheckReport(f"functor[{F.name}]")
    bad = None
    for f in range(C.n_morphisms):
        g = F.mor[f]
        if D.dom[g] != F.obj[C.dom[f]] or D.cod[g] != F.obj[C.cod[f]]:
            bad = C.show_mor(f)
            break
    r.expect("dom-cod", bad is None, witness=bad)
    bad = next((C.objects[a] for a in range(C.n_objects)
                if F.mor[C.identities[a]] != D.identities[F.obj[a]]), None)
    r.expect("identities", bad is None, witness=bad)
    bad = None
    for g, f, gf in generator_pairs(C).tolist():
        if D.comp[(F.mor[g], F.mor[f])] != F.mor[gf]:
            bad = (C.show_mor(g), C.show_mor(f))
            break
    r.expect("composition", bad is None, witness=bad)
    return r


class NatTrans:
    def __init__(self, source, target, components, name="η"):
        self.source = source
        self.target = target
        self.components = list(components)
        self.name = name


def check_nat_trans(t):
    F, G = t.source, t.target
    C, D = F.source, F.target
    r = CheckReport(f"natural[{t.name}]")
    bad = None
    for a in range(C.n_objects):
        c = t.components[a]
        if D.dom[c] != F.obj[a] or D.cod[c] != G.obj[a]:
            bad = ("typing", C.objects[a])
            break
    if bad is None:
        for f in range(C.n_morphisms):
            a, b = C.dom[f], C.cod[f]
            if D.comp[(G.mor[f], t.components[a])] != D.comp[(t.components[b], F.mor[f])]:
                bad = ("square", C.show_mor(f))
                break
    r.expect("naturality", bad is None, witness=bad)
    return r


def full_subcategory(C, keep, name=None):
    """Full subcategory on the object indices in ``keep`` and its inclusion."""
    keep = sorted(set(keep))
    new = {a: i for i, a in enumerate(keep)}
    mors = []
    old_of = []
    for a in keep:
        for b in keep:
            for f in C.hom(a, b):
                old_of.append(f)
                mors.append((C.mor_label[f], new[a], new[b]))
    idx = {f: i for i, f in enumerate(old_of)}
    comp = {}
    for f in old_of:
        for g in C.out(C.cod[f]):
            if g in idx:
                comp[(idx[g], idx[f])] = idx[C.comp[(g, f)]]
    S = FinCategory([C.objects[a] for a in keep], mors, [idx[C.identities[a]] for a in keep], comp,
                    name=name or f"{C.name}|sub")
    return S, Functor(S, C, keep, old_of, name="incl")


def terminal_object(C):
    n = C.n_objects
    for t in range(n):
        if all(len(C.hom(x, t)) == 1 for x in range(n)):
            return t
    return None


def classify_morphism(C, f):
    a, b = C.dom[f], C.cod[f]
    mono = True
    for x in range(C.n_objects):
        seen = set()
        for g in C.hom(x, a):
            fg = C.comp[(f, g)]
            if fg in seen:
                mono = False
                break
            seen.add(fg)
        if not mono:
            break
    section = next((s for s in C.hom(b, a) if C.comp[(f, s)] == C.identities[b]), None)
    return {"mono": mono, "split_epi": section is not None, "section": section}


class ElementsCategory(FinCategory):
    """Objects are pairs (W, cell); a morphism is determined by its base morphism."""

    def __init__(self, base, presheaf, points, morphisms, identities, comp, base_mor, name):
        super().__init__([(base.objects[w], presheaf.cells[w][g]) for w, g in points],
                         morphisms, identities, comp, name=name)
        self.base = base
        self.presheaf = presheaf
        self.points = points
        self.index = {p: i for i, p in enumerate(points)}
        self.base_mor = base_mor

    def lift(self, f, target):
        """The morphism over base morphism ``f`` into element ``target``."""
        w, g = self.points[target]
        src = self.index[(self.base.dom[f], self.presheaf.restrict[f][g])]
        return self._find[(src, target, f)]

    def carrier(self, e):
        return self.points[e][0]


class _ElementsComposition(Mapping):
    """Composition in ∫P computed on demand from the base composition.

    A composable pair (g₂ over f₂, g over f) composes to the morphism over
    f₂∘f into the target of g₂, so nothing needs to be tabulated.
    """

    def __init__(self, C, morphisms, points, offset):
        self.comp = C.comp
        self.base = [m[0] for m in morphisms]
        self.src = [m[1] for m in morphisms]
        self.tgt = [m[2] for m in morphisms]
        self.points = points
        self.offset = offset
        self.cell = [points[t][1] for t in self.tgt]
        self._out = None
        self._len = None

    def __getitem__(self, key):
        m2, m = key
        if self.tgt[m] != self.src[m2]:
            raise KeyError(key)
        return self.offset[self.comp[(self.base[m2], self.base[m])]] + self.cell[m2]

    def _outs(self):
        if self._out is None:
            self._out = [[] for _ in self.points]
            for m, a in enumerate(self.src):
                self._out[a].append(m)
        return self._out

    def __iter__(self):
        out = self._outs()
        for m, b in enumerate(self.tgt):
            for m2 in out[b]:
                yield (m2, m)

    def __len__(self):
        if self._len is None:
            out = self._outs()
            self._len = sum(len(out[b]) for b in self.tgt)
        return self._len

    def __bool__(self):
        return bool(self.tgt)

    def __contains__(self, key):
        try:
            m2, m = key
            return self.tgt[m] == self.src[m2]
        except (TypeError, ValueError, IndexError):
            return False


def elements_category(C, P, name=None):
    caps = get_caps()
    points = [(w, g) for w in range(C.n_objects) for g in range(len(P.cells[w]))]
    caps.check("derived_objects", len(points))
    index = {p: i for i, p in enumerate(points)}
    morphisms = []
    base_mor = []
    offset = []
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        r = P.restrict[f]
        offset.append(len(morphisms))
        for g in range(len(P.cells[b])):
            src, tgt = index[(a, r[g])], index[(b, g)]
            morphisms.append((f, src, tgt))
            base_mor.append(f)
    caps.check("derived_morphisms", len(morphisms))
    comp = _ElementsComposition(C, morphisms, points, offset)
    identities = [offset[C.identities[w]] + g for w, g in points]
    return ElementsCategory(C, P, points, morphisms, identities, comp, base_mor,
                            name or f"∫{getattr(P, 'name', 'Γ')}")


class SliceCategory(FinCategory):
    def __init__(self, base, U, points, *args, **kw):
        super().__init__(*args, **kw)
        self.base = base
        self.U = U
        self.points = points
        self.index = {p: i for i, p in enumerate(points)}

    def carrier(self, e):
        return self.points[e][0]

    def leg(self, e):
        return self.points[e][1]


def slice_category(C, U, name=None):
    """The slice C/U and its forgetful pair functor to C."""
    points = [(w, psi) for w in range(C.n_objects) for psi in C.hom(w, U)]
    get_caps().check("derived_objects", len(points))
    morphisms = []
    base_mor = []
    by = {}
    for i, (w, psi) in enumerate(points):
        for j, (w2, psi2) in enumerate(points):
            for chi in C.hom(w, w2):
                if C.comp[(psi2, chi)] == psi:
                    by[(i, j, chi)] = len(morphisms)
                    morphisms.append((chi, i, j))
                    base_mor.append(chi)
    get_caps().check("derived_morphisms", len(morphisms))
    out = {}
    for m, (chi, i, j) in enumerate(morphisms):
        out.setdefault(i, []).append(m)
    comp = {}
    for m, (chi, i, j) in enumerate(morphisms):
        for m2 in out.get(j, ()):
            chi2, _, k = morphisms[m2]
            comp[(m2, m)] = by[(i, k, C.comp[(chi2, chi)])]
    identities = [by[(i, i, C.identities[w])] for i, (w, _) in enumerate(points)]
    S = SliceCategory(C, U, points, [(C.objects[w], C.mor_label[psi]) for w, psi in points],
                      morphisms, identities, comp, name=name or f"{C.name}/{C.objects[U]}")
    pair = Functor(S, C, [w for w, _ in points], base_mor, name="pair")
    return S, pair


def hom_injectivity_witness(F):
    """A pair of distinct parallel morphisms identified by F, or None."""
    C = F.source
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            seen = {}
            for f in C.hom(a, b):
                g = F.mor[f]
                if g in seen:
                    return (C.show_mor(seen[g]), C.show_mor(f))
                seen[g] = f
    return None


def hom_surjectivity_witness(F, objects=None):
    """A target morphism between images not hit by F, or None."""
    C, D = F.source, F.target
    objs = range(C.n_objects) if objects is None else objects
    for a in objs:
        for b in objs:
            image = {F.mor[f] for f in C.hom(a, b)}
            for g in D.hom(F.obj[a], F.obj[b]):
                if g not in image:
                    return (C.objects[a], C.objects[b], D.show_mor(g))
    return None


def universal_arrow(R, b):
    """Initial object (a, η: b → R a) of the comma category b ↓ R, or None.

    Initiality means every η': b → R a' factors as R(g)∘η for exactly one
    g: a → a'.  Hence Hom(a, -) and Hom(b, R -) have equal cardinalities,
    which prunes candidates before any composition is looked up.
    """
    A, B = R.source, R.target
    n = A.n_objects
    want = tuple(len(B.hom(b, R.obj[a2])) for a2 in range(n))
    counts = A.hom_counts()
    for a in range(n):
        if counts[a] != want:
            continue
        for eta in B.hom(b, R.obj[a]):
            if _is_initial(R, eta, a):
                return a, eta
    return None


def _is_initial(R, eta, a):
    A, B = R.source, R.target
    for a2 in range(A.n_objects):
        seen = set()
        for g in A.hom(a, a2):
            h = B.comp[(R.mor[g], eta)]
            if h in seen:
                return False
            seen.add(h)
    return True


def transpose_along(R, eta, a, a2, h):
    """The unique g: a → a2 with R(g)∘η = h, or None."""
    A, B = R.source, R.target
    for g in A.hom(a, a2):
        if B.comp[(R.mor[g], eta)] == h:
            return g
    return None


def pullback(C, f, g):
    """A limiting cone (P, p, q) over A -f-> Z <-g- B in the window, or None."""
    A, B = C.dom[f], C.dom[g]
    if C.cod[f] != C.cod[g]:
        raise InvalidStructure("pullback of non-cospan")
    cones = {}
    for P in range(C.n_objects):
        cones[P] = [(p, q) for p in C.hom(P, A) for q in C.hom(P, B)
                    if C.comp[(f, p)] == C.comp[(g, q)]]
    counts = C.hom_counts()
    want = tuple(len(cones[P]) for P in range(C.n_objects))
    for P in range(C.n_objects):
        if tuple(counts[x][P] for x in range(C.n_objects)) != want:
            continue
        for p, q in cones[P]:
            ok = True
            for P2 in range(C.n_objects):
                image = {(C.comp[(p, u)], C.comp[(q, u)]) for u in C.hom(P2, P)}
                if len(image) != len(cones[P2]):
                    ok = False
                    break
            if ok:
                return P, p, q
    return None


def load_category(data, name="json"):
    """Build a category from the JSON table format and check its laws."""
    try:
        objects = list(data["objects"])
        names = [m["name"] for m in data["morphisms"]]
        index = {o: i for i, o in enumerate(objects)}
        mindex = {nm: i for i, nm in enumerate(names)}
        if len(mindex) != len(names) or len(index) != len(objects):
            raise InvalidStructure("duplicate names")
        morphisms = [(m["name"], index[m["dom"]], index[m["cod"]]) for m in data["morphisms"]]
        identities = [mindex[data["identities"][o]] for o in objects]
        comp = {}
        for e in data["composition"]:
            comp[(mindex[e["g"]], mindex[e["f"]])] = mindex[e["gf"]]
    except (KeyError, TypeError) as exc:
        raise InvalidStructure(f"malformed category table: missing or unknown {exc}") from None
    C = FinCategory(objects, morphisms, identities, comp, name=name)
    return require_laws(C)


def obj_names(C):
    return [o if isinstance(o, str) else repr(o) for o in C.objects]


def mor_names(C):
    """Unique printable morphism names: the label when that is unambiguous,
    otherwise ``label:dom→cod``, otherwise the index."""
    objs = obj_names(C)
    plain = [lab if isinstance(lab, str) else repr(lab) for lab in C.mor_label]
    if len(set(plain)) == len(plain):
        return plain
    typed = [f"{plain[f]}:{objs[C.dom[f]]}→{objs[C.cod[f]]}" for f in range(C.n_morphisms)]
    if len(set(typed)) == len(typed):
        return typed
    return [f"m{f}" for f in range(C.n_morphisms)]


def dump_category(C):
    name = mor_names(C)
    objs = obj_names(C)
    return {
        "objects": objs,
        "morphisms": [{"name": name[f], "dom": objs[C.dom[f]], "cod": objs[C.cod[f]]}
                      for f in range(C.n_morphisms)],
        "identities": {objs[a]: name[C.identities[a]] for a in range(C.n_objects)},
        "composition": [{"g": name[g], "f": name[f], "gf": name[gf]}
                        for (g, f), gf in sorted(C.comp.items())],
    }
