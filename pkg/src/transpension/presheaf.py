"""Presheaves over explicit categories and the liftings of a functor.

A presheaf stores, per object, a list of cell labels and, per morphism
f: A → B, a tuple sending cell indices at B to cell indices at A.
"""
from __future__ import annotations

import random

import numpy as np

from .caps import get_caps
from .csp import FunctionalCSP
from .errors import InvalidStructure, MissingPullbacks
from .fincat import Functor, generator_pairs, elements_category, generators, mor_names, obj_names
from .report import CheckReport


class Presheaf:
    def __init__(self, base, cells, restrict, name="Γ"):
        self.base = base
        self.cells = [list(c) for c in cells]
        self.restrict = [tuple(r) for r in restrict]
        self.name = name
        self._elements = None
        self._index = None

    def __repr__(self):
        return f"<Presheaf {self.name} over {self.base.name}: sizes {self.sizes()}>"

    def sizes(self):
        return [len(c) for c in self.cells]

    def total(self):
        return sum(len(c) for c in self.cells)

    def act(self, f, x):
        """The restriction x·f of a cell x at cod f."""
        return self.restrict[f][x]

    def cell_index(self, w, label):
        if self._index is None:
            self._index = [{c: i for i, c in enumerate(cs)} for cs in self.cells]
        return self._index[w][label]

    def elements(self):
        if self._elements is None:
            self._elements = elements_category(self.base, self, name=f"∫{self.name}")
        return self._elements


def check_presheaf(P):
    C = P.base
    r = CheckReport(f"presheaf[{P.name}]")
    bad = None
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        m = P.restrict[f]
        if len(m) != len(P.cells[b]) or any(not (0 <= x < len(P.cells[a])) for x in m):
            bad = ("typing", C.show_mor(f))
            break
    r.expect("restriction-typing", bad is None, witness=bad)
    if bad:
        return r
    bad = next((C.objects[a] for a in range(C.n_objects)
                if P.restrict[C.identities[a]] != tuple(range(len(P.cells[a])))), None)
    r.expect("restrict-identity", bad is None, witness=bad)
    bad = _composition_witness(P)
    r.expect("restrict-composition", bad is None, witness=bad)
    return r


def _composition_witness(P):
    """First (g, f) with P(g∘f) ≠ P(f)∘P(g), checked on padded numpy tables."""
    C = P.base
    if not C.comp:
        return None
    width = max(1, max(len(c) for c in P.cells))
    R = np.full((C.n_morphisms + 1, width), -1, dtype=np.int64)
    for f, row in enumerate(P.restrict):
        R[f, :len(row)] = row
    pairs = generator_pairs(C)
    if not len(pairs):
        return None
    G, F, GF = pairs[:, 0], pairs[:, 1], pairs[:, 2]
    rg = R[G]
    valid = rg >= 0
    via = np.where(valid, R[F[:, None], np.where(valid, rg, 0)], -1)
    bad = np.nonzero((via != R[GF]).any(axis=1))[0]
    if len(bad):
        g, f = int(G[bad[0]]), int(F[bad[0]])
        return (C.show_mor(g), C.show_mor(f))
    return None


def require_presheaf(P):
    rep = check_presheaf(P)
    if not rep.passed:
        raise InvalidStructure(f"{P.name} is not functorial", rep)
    return P


class PresheafMorphism:
    def __init__(self, source, target, components, name="σ"):
        self.source = source
        self.target = target
        self.components = [tuple(c) for c in components]
        self.name = name

    def __call__(self, w, x):
        return self.components[w][x]

    def __eq__(self, other):
        return isinstance(other, PresheafMorphism) and self.components == other.components

    def __hash__(self):
        return hash(tuple(self.components))

    def is_iso(self):
        return all(len(set(c)) == len(c) == len(self.target.cells[w])
                   for w, c in enumerate(self.components))


def check_morphism(s):
    X, Y = s.source, s.target
    C = X.base
    r = CheckReport(f"morphism[{s.name}]")
    bad = None
    for w in range(C.n_objects):
        if len(s.components[w]) != len(X.cells[w]) or any(
                not (0 <= y < len(Y.cells[w])) for y in s.components[w]):
            bad = ("typing", C.objects[w])
            break
    if bad is None:
        for f in range(C.n_morphisms):
            a, b = C.dom[f], C.cod[f]
            ca, cb = s.components[a], s.components[b]
            rx, ry = X.restrict[f], Y.restrict[f]
            x = next((x for x in range(len(X.cells[b])) if ca[rx[x]] != ry[cb[x]]), None)
            if x is not None:
                bad = ("square", C.show_mor(f), X.cells[b][x])
                break
    r.expect("naturality", bad is None, witness=bad)
    return r


def compose_morphisms(t, s):
    """t after s."""
    return PresheafMorphism(s.source, t.target,
                            [[t.components[w][y] for y in c] for w, c in enumerate(s.components)],
                            name=f"{t.name}∘{s.name}")


def identity_morphism(X):
    return PresheafMorphism(X, X, [range(len(c)) for c in X.cells], name="id")


def yoneda(C, W):
    cells = [list(C.hom(v, W)) for v in range(C.n_objects)]
    pos = [{f: i for i, f in enumerate(cs)} for cs in cells]
    restrict = []
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        restrict.append(tuple(pos[a][C.comp[(g, f)]] for g in cells[b]))
    P = Presheaf(C, [[C.mor_label[g] for g in cs] for cs in cells], restrict,
                 name=f"y{C.objects[W]}")
    P.mor = cells
    return P


def terminal_presheaf(C, name="⊤"):
    return Presheaf(C, [["*"] for _ in range(C.n_objects)],
                    [(0,) for _ in range(C.n_morphisms)], name=name)


def initial_presheaf(C, name="⊥"):
    return Presheaf(C, [[] for _ in range(C.n_objects)], [() for _ in range(C.n_morphisms)], name=name)


def constant_presheaf(C, labels, name="K"):
    n = len(labels)
    return Presheaf(C, [list(labels) for _ in range(C.n_objects)],
                    [tuple(range(n)) for _ in range(C.n_morphisms)], name=name)


def _hom_system(X, Y, allowed=None, groups=None):
    C = X.base
    var = {}
    domains = []
    for w in range(C.n_objects):
        for x in range(len(X.cells[w])):
            var[(w, x)] = len(domains)
            domains.append(len(Y.cells[w]))
    edges = [[] for _ in domains]
    indeg = [0] * C.n_objects
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        if f == C.identities[a]:
            continue
        indeg[b] += 1
        rx, ry = X.restrict[f], Y.restrict[f]
        for x in range(len(X.cells[b])):
            edges[var[(b, x)]].append((var[(a, rx[x])], ry))
    order = sorted(var, key=lambda p: (-indeg[p[0]], len(Y.cells[p[0]]), p))
    csp = FunctionalCSP(domains, edges, [var[p] for p in order],
                        None if allowed is None else [allowed[p] for p in var],
                        None if groups is None else [p[0] for p in var])
    return csp, var


def _morphism_from(X, Y, var, sol, name):
    C = X.base
    return PresheafMorphism(X, Y, [[sol[var[(w, x)]] for x in range(len(X.cells[w]))]
                                   for w in range(C.n_objects)], name=name)


def presheaf_homs(X, Y, limit=None):
    """All natural transformations X → Y, in a deterministic order."""
    if X.base is not Y.base:
        raise InvalidStructure("presheaves over different categories")
    csp, var = _hom_system(X, Y)
    for sol in csp.solutions(limit):
        yield _morphism_from(X, Y, var, sol, "α")


def count_homs(X, Y, limit=None):
    return sum(1 for _ in presheaf_homs(X, Y, limit))


def _refine(presheaves, seeds):
    """Joint colour refinement over several presheaves on one base."""
    C = presheaves[0].base
    into = [[f for f in range(C.n_morphisms) if C.cod[f] == w and f != C.identities[w]]
            for w in range(C.n_objects)]
    colours = [[[(w, seed[w][x] if seed else None) for x in range(len(P.cells[w]))]
                for w in range(C.n_objects)] for P, seed in zip(presheaves, seeds)]
    table = {}

    def canon(cols):
        out = []
        for per_obj in cols:
            out.append([table.setdefault(c, len(table)) for c in per_obj])
        return out

    colours = [canon(c) for c in colours]
    classes = -1
    while True:
        new = []
        for P, col in zip(presheaves, colours):
            up = [[[] for _ in cs] for cs in P.cells]
            for f in range(C.n_morphisms):
                a, b = C.dom[f], C.cod[f]
                if f == C.identities[a]:
                    continue
                rf = P.restrict[f]
                for y in range(len(P.cells[b])):
                    up[a][rf[y]].append((f, col[b][y]))
            sig = []
            for w in range(C.n_objects):
                row = []
                for x in range(len(P.cells[w])):
                    down = tuple(col[C.dom[f]][P.restrict[f][x]] for f in into[w])
                    row.append((col[w][x], down, tuple(sorted(up[w][x]))))
                sig.append(row)
            new.append(sig)
        table = {}
        colours = [canon(s) for s in new]
        count = len(table)
        if count == classes:
            return colours
        classes = count


def iso_search(X, Y, colours=None):
    """A natural isomorphism X ≅ Y, or None when none exists.

    ``colours`` optionally gives a pair of per-cell labels that the iso must
    preserve (used to search for isomorphisms of slices).
    """
    C = X.base
    if Y.base is not C:
        raise InvalidStructure("presheaves over different categories")
    if X.sizes() != Y.sizes():
        return None
    seeds = colours if colours is not None else (None, None)
    cx, cy = _refine([X, Y], seeds)
    for w in range(C.n_objects):
        if sorted(cx[w]) != sorted(cy[w]):
            return None
    allowed = {}
    for w in range(C.n_objects):
        by = {}
        for y, c in enumerate(cy[w]):
            by.setdefault(c, set()).add(y)
        for x, c in enumerate(cx[w]):
            allowed[(w, x)] = by[c]
    csp, var = _hom_system(X, Y, allowed=allowed, groups=True)
    sol = csp.first()
    if sol is None:
        return None
    return _morphism_from(X, Y, var, sol, "iso")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb


class LeftLift(Presheaf):
    """Coend ∃V. (W → FV) × Γ(V), with the class tables kept for inspection.

    ``raw[W]`` lists triples (V, φ, γ); ``klass[W][t]`` is the class of raw
    triple t; ``members[W][c]`` lists raw triples of class c.
    """

    def cls(self, w, v, phi, g):
        return self.klass[w][self.raw_index[w][(v, phi, g)]]

    def rep(self, w, c):
        return self.raw[w][self.members[w][c][0]]


def left_lift(F, G, name=None):
    C, D = F.source, F.target
    if G.base is not C:
        raise InvalidStructure("presheaf is not over the source of the functor")
    caps = get_caps()
    gens = generators(C)
    raws, raw_index, klass, members, cells = [], [], [], [], []
    for w in range(D.n_objects):
        raw = [(v, phi, g) for v in range(C.n_objects) for phi in D.hom(w, F.obj[v])
               for g in range(len(G.cells[v]))]
        caps.check("cells", len(raw))
        idx = {t: i for i, t in enumerate(raw)}
        uf = _UnionFind(len(raw))
        for chi in gens:
            v, v2 = C.dom[chi], C.cod[chi]
            fchi = F.mor[chi]
            rg = G.restrict[chi]
            for phi in D.hom(w, F.obj[v]):
                phi2 = D.comp[(fchi, phi)]
                for g in range(len(G.cells[v2])):
                    uf.union(idx[(v2, phi2, g)], idx[(v, phi, rg[g])])
        roots = {}
        kl = []
        mem = []
        for i in range(len(raw)):
            r = uf.find(i)
            if r not in roots:
                roots[r] = len(mem)
                mem.append([])
            kl.append(roots[r])
            mem[roots[r]].append(i)
        raws.append(raw)
        raw_index.append(idx)
        klass.append(kl)
        members.append(mem)
        cells.append([(C.objects[raw[m[0]][0]], D.mor_label[raw[m[0]][1]], G.cells[raw[m[0]][0]][raw[m[0]][2]])
                      for m in mem])
    def row(h):
        a, b = D.dom[h], D.cod[h]
        out = []
        for m in members[b]:
            v, phi, g = raws[b][m[0]]
            out.append(klass[a][raw_index[a][(v, D.comp[(phi, h)], g)]])
        return tuple(out)

    restrict = fill_restrictions(D, [len(m) for m in members], row)
    L = LeftLift(D, cells, restrict, name=name or f"{F.name}!{G.name}")
    L.functor, L.inner = F, G
    L.raw, L.raw_index, L.klass, L.members = raws, raw_index, klass, members
    return L


def central_lift(F, D_, name=None):
    if D_.base is not F.target:
        raise InvalidStructure("presheaf is not over the target of the functor")
    C = F.source
    P = Presheaf(C, [D_.cells[F.obj[v]] for v in range(C.n_objects)],
                 [D_.restrict[F.mor[f]] for f in range(C.n_morphisms)],
                 name=name or f"{F.name}*{D_.name}")
    P.functor, P.inner = F, D_
    return P


class RightLift(Presheaf):
    """End ∀V. (FV → W) → Γ(V); a cell is a tuple aligned with ``pairs[W]``."""

    def value(self, w, cell, v, psi):
        return self.families[w][cell][self.pair_index[w][(v, psi)]]


def _fill_plan(C):
    """Triples (y, x, g) with y = g∘x, g a generator, covering every non-generator
    non-identity morphism in an order where x is always handled first; cached."""
    plan = getattr(C, "_fill_plan", None)
    if plan is None:
        gens = generators(C)
        done = set(gens) | set(C.identities)
        out = [[] for _ in range(C.n_objects)]
        for g in gens:
            out[C.dom[g]].append(g)
        plan, queue = [], list(gens)
        while queue:
            x = queue.pop()
            for g in out[C.cod[x]]:
                y = C.comp[(g, x)]
                if y not in done:
                    done.add(y)
                    plan.append((y, x, g))
                    queue.append(y)
        C._fill_plan = plan
    return plan


def fill_restrictions(C, sizes, row):
    """Restriction rows for every morphism, computing ``row`` on generators only.

    The rest follow from P(g∘x) = P(x)∘P(g).
    """
    restrict = [None] * C.n_morphisms
    for a in range(C.n_objects):
        restrict[C.identities[a]] = tuple(range(sizes[a]))
    for g in generators(C):
        restrict[g] = row(g)
    for y, x, g in _fill_plan(C):
        rx = restrict[x]
        restrict[y] = tuple([rx[c] for c in restrict[g]])
    return restrict


def right_lift(F, G, name=None):
    C, D = F.source, F.target
    if G.base is not C:
        raise InvalidStructure("presheaf is not over the source of the functor")
    caps = get_caps()
    gens = generators(C)
    indeg = [0] * C.n_objects
    for chi in range(C.n_morphisms):
        if chi != C.identities[C.dom[chi]]:
            indeg[C.cod[chi]] += 1
    pairs_all, pidx_all, fams_all = [], [], []
    for w in range(D.n_objects):
        pairs = [(v, psi) for v in range(C.n_objects) for psi in D.hom(F.obj[v], w)]
        pidx = {p: i for i, p in enumerate(pairs)}
        domains = [len(G.cells[v]) for v, _ in pairs]
        edges = [[] for _ in pairs]
        for chi in gens:
            v2, v = C.dom[chi], C.cod[chi]
            fchi = F.mor[chi]
            rg = G.restrict[chi]
            for psi in D.hom(F.obj[v], w):
                edges[pidx[(v, psi)]].append((pidx[(v2, D.comp[(psi, fchi)])], rg))
        order = sorted(range(len(pairs)), key=lambda i: (-indeg[pairs[i][0]], domains[i], i))
        fams = sorted(FunctionalCSP(domains, edges, order).solutions())
        caps.check("cells", len(fams))
        pairs_all.append(pairs)
        pidx_all.append(pidx)
        fams_all.append(fams)
    fidx = [{t: i for i, t in enumerate(fs)} for fs in fams_all]

    def row(h):
        a, b = D.dom[h], D.cod[h]
        sel = [pidx_all[b][(v, D.comp[(h, psi)])] for v, psi in pairs_all[a]]
        fa = fidx[a]
        return tuple(fa[tuple(t[i] for i in sel)] for t in fams_all[b])

    restrict = fill_restrictions(D, [len(fs) for fs in fams_all], row)
    labels = [[tuple(G.cells[v][x] for (v, _), x in zip(pairs_all[w], t)) for t in fams_all[w]]
              for w in range(D.n_objects)]
    R = RightLift(D, labels, restrict, name=name or f"{F.name}_*{G.name}")
    R.functor, R.inner = F, G
    R.pairs, R.pair_index, R.families, R.family_index = pairs_all, pidx_all, fams_all, fidx
    return R


def left_lift_morphism(s, LX, LY):
    """F_!(s): F_!X → F_!Y for s: X → Y, on representatives."""
    comps = []
    for w in range(LX.base.n_objects):
        row = []
        for m in LX.members[w]:
            v, phi, g = LX.raw[w][m[0]]
            row.append(LY.cls(w, v, phi, s.components[v][g]))
        comps.append(row)
    return PresheafMorphism(LX, LY, comps, name=f"{LX.functor.name}!{s.name}")


def central_lift_morphism(F, s, FX, FY):
    return PresheafMorphism(FX, FY, [s.components[F.obj[v]] for v in range(F.source.n_objects)],
                            name=f"{F.name}*{s.name}")


def right_lift_morphism(s, RX, RY):
    comps = []
    for w in range(RX.base.n_objects):
        row = []
        for t in RX.families[w]:
            t2 = tuple(s.components[v][x] for (v, _), x in zip(RX.pairs[w], t))
            row.append(RY.family_index[w][t2])
        comps.append(row)
    return PresheafMorphism(RX, RY, comps, name=f"{RX.functor.name}_*{s.name}")


# transposes of the two lifted adjunctions

def left_sharp(F, LX, Y, alpha):
    """α: F_!X → Y  ↦  α♯: X → F*Y."""
    X = LX.inner
    C, D = F.source, F.target
    comps = [[alpha.components[F.obj[v]][LX.cls(F.obj[v], v, D.identities[F.obj[v]], g)]
              for g in range(len(X.cells[v]))] for v in range(C.n_objects)]
    return PresheafMorphism(X, central_lift(F, Y), comps, name="♯")


def left_flat(F, LX, Y, FY, beta):
    """β: X → F*Y  ↦  β♭: F_!X → Y; raises if β♭ is not well defined."""
    D = F.target
    comps = []
    for w in range(D.n_objects):
        row = []
        for mem in LX.members[w]:
            vals = set()
            for m in mem:
                v, phi, g = LX.raw[w][m]
                vals.add(Y.restrict[phi][beta.components[v][g]])
            if len(vals) != 1:
                raise InvalidStructure(f"♭ is not constant on a coend class at {D.objects[w]!r}")
            row.append(vals.pop())
        comps.append(row)
    return PresheafMorphism(LX, Y, comps, name="♭")


def right_sharp(F, Y, RX, alpha):
    """α: F*Y → X  ↦  α♯: Y → F_*X; raises if a family is not natural."""
    D = F.target
    comps = []
    for w in range(D.n_objects):
        row = []
        for y in range(len(Y.cells[w])):
            t = tuple(alpha.components[v][Y.restrict[psi][y]] for v, psi in RX.pairs[w])
            if t not in RX.family_index[w]:
                raise InvalidStructure(f"♯ produced a non-natural family at {D.objects[w]!r}")
            row.append(RX.family_index[w][t])
        comps.append(row)
    return PresheafMorphism(Y, RX, comps, name="♯")


def right_flat(F, Y, RX, beta):
    """β: Y → F_*X  ↦  β♭: F*Y → X."""
    C, D = F.source, F.target
    comps = []
    for v in range(C.n_objects):
        w = F.obj[v]
        i = RX.pair_index[w][(v, D.identities[w])]
        comps.append([RX.families[w][beta.components[w][y]][i] for y in range(len(Y.cells[w]))])
    return PresheafMorphism(central_lift(F, Y), RX.inner, comps, name="♭")


def _bijection_check(r, label, homs_l, homs_r, to_r, to_l):
    """Check to_r: homs_l → homs_r and to_l are mutually inverse natural maps."""
    set_r = set(homs_r)
    try:
        for a in homs_l:
            b = to_r(a)
            if not check_morphism(b).passed or b not in set_r:
                r.fail(label, "transpose leaves the hom-set", witness=("→", a.components))
                return False
            if to_l(b) != a:
                r.fail(label, "transposes are not inverse", witness=("→←", a.components))
                return False
        for b in homs_r:
            a = to_l(b)
            if to_r(a) != b:
                r.fail(label, "transposes are not inverse", witness=("←→", b.components))
                return False
    except InvalidStructure as exc:
        r.fail(label, str(exc))
        return False
    if len(homs_l) != len(set_r):
        r.fail(label, "hom-set sizes differ", witness=(len(homs_l), len(set_r)))
        return False
    r.ok(label, f"{len(homs_l)} morphisms")
    return True


def check_lift_adjunctions(F, samples, sharp_left=None, sharp_right=None, name=None):
    """Verify F_! ⊣ F* ⊣ F_* on sample pairs (X over source, Y over target).

    The transposes can be overridden, which the mutation tests use.
    """
    r = CheckReport(name or f"lift-adjunctions[{F.name}]")
    sl = sharp_left or (lambda LX, Y, a: left_sharp(F, LX, Y, a))
    sr = sharp_right or (lambda Y, RX, a: right_sharp(F, Y, RX, a))
    lifted = []
    for k, (X, Y) in enumerate(samples):
        LX, FY, RX = left_lift(F, X), central_lift(F, Y), right_lift(F, X)
        lifted.append((X, Y, LX, FY, RX))
        _bijection_check(r, f"sample{k}:left⊣central", list(presheaf_homs(LX, Y)),
                         list(presheaf_homs(X, FY)),
                         lambda a: sl(LX, Y, a), lambda b: left_flat(F, LX, Y, FY, b))
        _bijection_check(r, f"sample{k}:central⊣right", list(presheaf_homs(FY, X)),
                         list(presheaf_homs(Y, RX)),
                         lambda a: sr(Y, RX, a), lambda b: right_flat(F, Y, RX, b))
    _naturality_in_samples(r, F, lifted, sl)
    return r


def _naturality_in_samples(r, F, lifted, sl, per_pair=3):
    """(α ∘ F_!u)♯ = α♯ ∘ u for sample morphisms u: X_i → X_j."""
    bad = None
    tested = 0
    for i, (Xi, _, LXi, _, _) in enumerate(lifted):
        for j, (Xj, Yj, LXj, FYj, _) in enumerate(lifted):
            if i == j:
                continue
            us = []
            for u in presheaf_homs(Xi, Xj):
                us.append(u)
                if len(us) >= per_pair:
                    break
            alphas = []
            for a in presheaf_homs(LXj, Yj):
                alphas.append(a)
                if len(alphas) >= per_pair:
                    break
            for u in us:
                Lu = left_lift_morphism(u, LXi, LXj)
                for a in alphas:
                    tested += 1
                    lhs = sl(LXi, Yj, compose_morphisms(a, Lu))
                    rhs = compose_morphisms(sl(LXj, Yj, a), u)
                    if lhs.components != rhs.components:
                        bad = (i, j)
    if bad is None:
        r.ok("naturality-in-samples", f"{tested} squares")
    else:
        r.fail("naturality-in-samples", witness=bad)


def preimage(s, name=None):
    """The presheaf over ∫target with cells(W, γ) = {δ | s(δ) = γ}."""
    X, Y = s.source, s.target
    E = Y.elements()
    C = X.base
    fibres = {}
    for w in range(C.n_objects):
        for x, y in enumerate(s.components[w]):
            fibres.setdefault((w, y), []).append(x)
    cells, pos = [], []
    for w, g in E.points:
        xs = fibres.get((w, g), [])
        cells.append(xs)
        pos.append({x: i for i, x in enumerate(xs)})
    restrict = []
    for m in range(E.n_morphisms):
        f = E.base_mor[m]
        src, tgt = E.dom[m], E.cod[m]
        restrict.append(tuple(pos[src][X.restrict[f][x]] for x in cells[tgt]))
    P = Presheaf(E, [[X.cells[E.points[e][0]][x] for x in cells[e]] for e in range(len(cells))],
                 restrict, name=name or f"{s.name}⁻¹")
    P.fibre = cells
    return P


def total_space(Psi, G, name=None):
    """Ψ.Γ for Γ over ∫Ψ, with its projection to Ψ."""
    E = G.base
    C = Psi.base
    cells, index = [], []
    for w in range(C.n_objects):
        cs = [(p, x) for p in range(len(Psi.cells[w])) for x in range(len(G.cells[E.index[(w, p)]]))]
        cells.append(cs)
        index.append({c: i for i, c in enumerate(cs)})
    restrict = []
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        row = []
        for p, x in cells[b]:
            m = E.lift(f, E.index[(b, p)])
            row.append(index[a][(Psi.restrict[f][p], G.restrict[m][x])])
        restrict.append(tuple(row))
    T = Presheaf(C, [[(Psi.cells[w][p], G.cells[E.index[(w, p)]][x]) for p, x in cs]
                     for w, cs in enumerate(cells)], restrict, name=name or f"{Psi.name}.{G.name}")
    T.pairs = cells
    proj = PresheafMorphism(T, Psi, [[p for p, _ in cs] for cs in cells], name="π")
    return T, proj


def pair_functor(s):
    """pair_σ: ∫source → ∫target, (W, δ) ↦ (W, σδ)."""
    EX, EY = s.source.elements(), s.target.elements()
    obj = [EY.index[(w, s.components[w][x])] for w, x in EX.points]
    mor = [EY.lift(EX.base_mor[m], obj[EX.cod[m]]) for m in range(EX.n_morphisms)]
    return Functor(EX, EY, obj, mor, name=f"pair[{s.name}]")


def couniversal_arrow(L, b):
    """Terminal object (a, ε: L a → b) of L ↓ b, or None."""
    A, B = L.source, L.target
    n = A.n_objects
    want = tuple(len(B.hom(L.obj[a2], b)) for a2 in range(n))
    counts = A.hom_counts()
    for a in range(n):
        if tuple(counts[a2][a] for a2 in range(n)) != want:
            continue
        for eps in B.hom(L.obj[a], b):
            ok = True
            for a2 in range(n):
                image = {B.comp[(eps, L.mor[g])] for g in A.hom(a2, a)}
                if len(image) != want[a2]:
                    ok = False
                    break
            if ok:
                return a, eps
    return None


def wkn_functor(s, along=None):
    """wkn_σ: ∫target → ∫source by pullback along σ, found by search.

    With ``along`` (a functor into ∫target) the result is wkn_σ ∘ along,
    computed only on the image of ``along``.
    """
    P = pair_functor(s)
    EX, EY = P.source, P.target
    if along is None:
        along = Functor(EY, EY, range(EY.n_objects), range(EY.n_morphisms), name="id")
    elif along.target is not EY:
        raise InvalidStructure("wkn can only be restricted along a functor into the elements of the target")
    A = along.source
    arrows = []
    for a in range(A.n_objects):
        e = along.obj[a]
        u = couniversal_arrow(P, e)
        if u is None:
            raise MissingPullbacks(f"no pullback of {EY.objects[e]!r} along {s.name} in the window")
        arrows.append(u)
    obj = [x for x, _ in arrows]
    mor = []
    for m in range(A.n_morphisms):
        (x, eps), (x2, eps2) = arrows[A.dom[m]], arrows[A.cod[m]]
        target = EY.comp[(along.mor[m], eps)]
        g = next(g for g in EX.hom(x, x2) if EY.comp[(eps2, P.mor[g])] == target)
        mor.append(g)
    W = Functor(A, EX, obj, mor, name=f"wkn[{s.name}]")
    W.counit = [eps for _, eps in arrows]
    return W


def elements_inclusion(F, X, FX=None):
    """∫F*X → ∫X, (W, x) ↦ (FW, x), for F: C → D and X over D."""
    FX = FX if FX is not None else central_lift(F, X)
    EF, EX = FX.elements(), X.elements()
    obj = [EX.index[(F.obj[w], g)] for w, g in EF.points]
    mor = [EX.lift(F.mor[EF.base_mor[m]], obj[EF.cod[m]]) for m in range(EF.n_morphisms)]
    return Functor(EF, EX, obj, mor, name=f"∫{F.name}")


def yoneda_morphism(C, f, YA=None, YB=None):
    """𝐲f: 𝐲A → 𝐲B, g ↦ f∘g."""
    A, B = C.dom[f], C.cod[f]
    YA = YA if YA is not None else yoneda(C, A)
    YB = YB if YB is not None else yoneda(C, B)
    pos = [{g: i for i, g in enumerate(YB.mor[v])} for v in range(C.n_objects)]
    comps = [[pos[v][C.comp[(f, g)]] for g in YA.mor[v]] for v in range(C.n_objects)]
    return PresheafMorphism(YA, YB, comps, name=f"𝐲{C.mor_label[f]}")


def presheaf_pullback(a, b, name=None):
    """The pointwise pullback X ×_Z Y of a: X → Z ← Y: b, with both legs."""
    X, Y = a.source, b.source
    C = X.base
    pairs = [[(x, y) for x in range(len(X.cells[w])) for y in range(len(Y.cells[w]))
              if a.components[w][x] == b.components[w][y]] for w in range(C.n_objects)]
    pos = [{p: i for i, p in enumerate(ps)} for ps in pairs]
    restrict = []
    for f in range(C.n_morphisms):
        u, w = C.dom[f], C.cod[f]
        restrict.append(tuple(pos[u][(X.restrict[f][x], Y.restrict[f][y])] for x, y in pairs[w]))
    Q = Presheaf(C, [[(X.cells[w][x], Y.cells[w][y]) for x, y in ps] for w, ps in enumerate(pairs)],
                 restrict, name=name or f"{X.name}×{Y.name}")
    left = PresheafMorphism(Q, X, [[x for x, _ in ps] for ps in pairs], name="p₁")
    right = PresheafMorphism(Q, Y, [[y for _, y in ps] for ps in pairs], name="p₂")
    return Q, left, right


class Substitution:
    """The four functors Σ ⊣ Ω ⊣ Π ⊣ $ induced by σ: Ψ' → Ψ."""

    def __init__(self, s):
        self.s = s
        self.pair = pair_functor(s)
        self._wkn = None

    @property
    def wkn(self):
        if self._wkn is None:
            self._wkn = wkn_functor(self.s)
        return self._wkn

    def apply(self, kind, X):
        if kind in ("Σ", "sigma"):
            return left_lift(self.pair, X, name=f"Σ[{self.s.name}]{X.name}")
        if kind in ("Ω", "omega"):
            return central_lift(self.pair, X, name=f"Ω[{self.s.name}]{X.name}")
        if kind in ("Π", "pi"):
            return right_lift(self.pair, X, name=f"Π[{self.s.name}]{X.name}")
        if kind in ("$", "dollar"):
            return right_lift(self.wkn, X, name=f"${self.s.name}{X.name}")
        raise ValueError(f"unknown substitution functor {kind!r}")


def subst_functor(kind, s, X):
    return Substitution(s).apply(kind, X)


def random_presheaf(C, rng, max_cells=3, generators=None, name="Γ"):
    """A seeded finite presheaf with at most ``max_cells`` cells per object.

    Start from the free presheaf on a few random generators (a sum of
    representables) and merge random cells, closing each merge under
    restriction, until every object carries few enough cells.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    n = C.n_objects
    k = generators if generators is not None else rng.choice((1, 1, 2))
    gens = [rng.randrange(n) for _ in range(k)]
    cells = [[(i, g) for i, W in enumerate(gens) for g in C.hom(v, W)] for v in range(n)]
    ids, owner = {}, []
    for v in range(n):
        for c in cells[v]:
            ids[(v, c)] = len(owner)
            owner.append((v, c))
    into = [[f for f in range(C.n_morphisms) if C.cod[f] == v] for v in range(n)]
    uf = _UnionFind(len(owner))

    def restrict(v, c, f):
        i, g = c
        return ids[(C.dom[f], (i, C.comp[(g, f)]))]

    def merge(a, b):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            ra, rb = uf.find(a), uf.find(b)
            if ra == rb:
                continue
            uf.union(ra, rb)
            va, ca = owner[a]
            _, cb = owner[b]
            for f in into[va]:
                queue.append((restrict(va, ca, f), restrict(va, cb, f)))

    while True:
        classes = [sorted({uf.find(ids[(v, c)]) for c in cells[v]}) for v in range(n)]
        big = [v for v in range(n) if len(classes[v]) > max_cells]
        if not big:
            break
        v = rng.choice(big)
        a, b = rng.sample(classes[v], 2)
        merge(a, b)
    reps = [sorted({uf.find(ids[(v, c)]) for c in cells[v]}) for v in range(n)]
    pos = [{r: i for i, r in enumerate(rs)} for rs in reps]
    restrict_tab = []
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        restrict_tab.append(tuple(pos[a][uf.find(restrict(b, owner[r][1], f))] for r in reps[b]))
    labels = [[f"c{r}" for r in rs] for rs in reps]
    return require_presheaf(Presheaf(C, labels, restrict_tab, name=name))


def sample_presheaves(C, seed, count, max_cells=3, prefix="Γ"):
    rng = random.Random(seed)
    return [random_presheaf(C, rng, max_cells, name=f"{prefix}{i}") for i in range(count)]


def load_presheaf(data, C, name="Γ"):
    """Read the JSON presheaf format over category C (objects/morphisms by name)."""
    objs = {o: i for i, o in enumerate(obj_names(C))}
    mors = {m: f for f, m in enumerate(mor_names(C))}
    try:
        cells = [None] * C.n_objects
        for o, cs in data["cells"].items():
            cells[objs[o]] = list(cs)
        if any(c is None for c in cells):
            raise InvalidStructure("cells missing for some object")
        pos = [{c: i for i, c in enumerate(cs)} for cs in cells]
        restrict = [None] * C.n_morphisms
        for m, table in data["restrictions"].items():
            f = mors[m]
            a, b = C.dom[f], C.cod[f]
            restrict[f] = tuple(pos[a][table[c]] for c in cells[b])
        for f in range(C.n_morphisms):
            if restrict[f] is None:
                if f == C.identities[C.dom[f]]:
                    restrict[f] = tuple(range(len(cells[C.dom[f]])))
                else:
                    raise InvalidStructure(f"restriction missing for {C.mor_label[f]!r}")
    except KeyError as exc:
        raise InvalidStructure(f"unknown name {exc}") from None
    return require_presheaf(Presheaf(C, cells, restrict, name=name))


def dump_presheaf(P, category_ref="C"):
    C = P.base
    objs, mors = obj_names(C), mor_names(C)

    def nm(x):
        return x if isinstance(x, str) else repr(x)

    return {
        "category": category_ref,
        "cells": {objs[w]: [nm(c) for c in P.cells[w]] for w in range(C.n_objects)},
        "restrictions": {
            mors[f]: {nm(P.cells[C.cod[f]][y]): nm(P.cells[C.dom[f]][x])
                      for y, x in enumerate(P.restrict[f])}
            for f in range(C.n_morphisms)
        },
    }
