"""Brute-force reference implementations used as test oracles.

Everything here follows the textbook definitions literally (enumerate, then
filter) and shares no code with the package beyond the data structures.
"""
from __future__ import annotations

import itertools
from math import comb, perm


def cube_hom_count(k, m, n, cartesian):
    """|Hom(𝕀^m, 𝕀^n)|: each of the n target coordinates is a constant or a variable."""
    if cartesian:
        return (k + m) ** n
    return sum(comb(n, j) * perm(m, j) * k ** (n - j) for j in range(n + 1))


def compose_table(C):
    """Composition as a plain dict built by iterating over all composable pairs."""
    return {(g, f): C.comp[(g, f)]
            for f in range(C.n_morphisms) for g in range(C.n_morphisms) if C.dom[g] == C.cod[f]}


def closure(C, gens):
    """All morphisms reachable from identities and ``gens`` under composition."""
    seen = set(C.identities) | set(gens)
    frontier = list(seen)
    while frontier:
        new = []
        for f in frontier:
            for g in list(seen):
                for pair in ((g, f), (f, g)):
                    if C.dom[pair[0]] == C.cod[pair[1]]:
                        h = C.comp[pair]
                        if h not in seen:
                            seen.add(h)
                            new.append(h)
        frontier = new
    return seen


def is_presheaf(P):
    C = P.base
    for a in range(C.n_objects):
        if P.restrict[C.identities[a]] != tuple(range(len(P.cells[a]))):
            return False
    for f in range(C.n_morphisms):
        for g in range(C.n_morphisms):
            if C.dom[g] != C.cod[f]:
                continue
            gf = C.comp[(g, f)]
            for x in range(len(P.cells[C.cod[g]])):
                if P.restrict[gf][x] != P.restrict[f][P.restrict[g][x]]:
                    return False
    return True


def brute_homs(X, Y):
    """All natural transformations X → Y as component tuples, by exhaustive search."""
    C = X.base
    slots = [(w, x) for w in range(C.n_objects) for x in range(len(X.cells[w]))]
    choices = [range(len(Y.cells[w])) for w, _ in slots]
    out = []
    for vals in itertools.product(*choices):
        comp = dict(zip(slots, vals))
        ok = all(comp[(C.dom[f], X.restrict[f][x])] == Y.restrict[f][comp[(C.cod[f], x)]]
                 for f in range(C.n_morphisms) for x in range(len(X.cells[C.cod[f]])))
        if ok:
            out.append(tuple(tuple(comp[(w, x)] for x in range(len(X.cells[w])))
                             for w in range(C.n_objects)))
    return out


def brute_left_lift_sizes(F, G):
    """|F_!G(d)| as the number of classes of triples (v, φ: d → Fv, g ∈ Gv)
    under the relation generated by every morphism of the source."""
    C, D = F.source, F.target
    sizes = []
    for d in range(D.n_objects):
        raw = [(v, phi, g) for v in range(C.n_objects) for phi in D.hom(d, F.obj[v])
               for g in range(len(G.cells[v]))]
        parent = {t: t for t in raw}

        def find(t):
            while parent[t] != t:
                t = parent[t]
            return t
        for chi in range(C.n_morphisms):
            v, v2 = C.dom[chi], C.cod[chi]
            for phi in D.hom(d, F.obj[v]):
                phi2 = D.comp[(F.mor[chi], phi)]
                for g2 in range(len(G.cells[v2])):
                    a, b = find((v2, phi2, g2)), find((v, phi, G.restrict[chi][g2]))
                    if a != b:
                        parent[a] = b
        sizes.append(len({find(t) for t in raw}))
    return sizes


def brute_right_lift_sizes(F, G):
    """|F_*G(d)| as the number of compatible families over all (v, ψ: Fv → d)."""
    C, D = F.source, F.target
    sizes = []
    for d in range(D.n_objects):
        pairs = [(v, psi) for v in range(C.n_objects) for psi in D.hom(F.obj[v], d)]
        count = 0
        for vals in itertools.product(*[range(len(G.cells[v])) for v, _ in pairs]):
            t = dict(zip(pairs, vals))
            ok = all(t[(C.dom[chi], D.comp[(psi, F.mor[chi])])] == G.restrict[chi][t[(v, psi)]]
                     for (v, psi) in pairs for chi in range(C.n_morphisms) if C.cod[chi] == v)
            count += ok
        sizes.append(count)
    return sizes


def is_dimensionally_split(M, phi):
    """φ: V → U is split when some π₂: W⋉U → U factors through it."""
    V, W = M.V, M.W
    v = V.dom[phi]
    return any(V.comp[(phi, psi)] == M.pi2[w]
               for w in range(W.n_objects) for psi in V.hom(M.F.obj[w], v))


def is_initial_in_comma(R, b, a, eta):
    """η: b → Ra is initial in b ↓ R, checked against every object of the comma category."""
    A, B = R.source, R.target
    for a2 in range(A.n_objects):
        for h in B.hom(b, R.obj[a2]):
            hits = [g for g in A.hom(a, a2) if B.comp[(R.mor[g], eta)] == h]
            if len(hits) != 1:
                return False
    return True


def is_split_epi(C, f):
    """f has a section: some s with f∘s = id."""
    ident = C.identities[C.cod[f]]
    return any(C.comp[(f, s)] == ident for s in C.hom(C.cod[f], C.dom[f]))


def in_fresh_image(M, phi):
    """(V, φ) is isomorphic in 𝒱/U to some (W⋉U, π₂)."""
    V = M.V
    v = V.dom[phi]
    for w in range(M.W.n_objects):
        fw = M.F.obj[w]
        for g in V.hom(v, fw):
            if V.comp[(M.pi2[w], g)] != phi:
                continue
            if any(V.comp[(h, g)] == V.identities[v] and V.comp[(g, h)] == V.identities[fw]
                   for h in V.hom(fw, v)):
                return True
    return False
