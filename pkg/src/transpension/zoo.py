"""Executable fixtures: the example base categories and their multipliers.

Every category is a :class:`GeneratedCategory` with canonical normal forms.
Cube-like morphisms 𝕀^m → 𝕀^n are tuples over the n target variables whose
entries are ``(0, c)`` for a constant, ``(1, a)`` for source variable a and
``(2, a)`` for its negation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .caps import get_caps
from .errors import BadParams, UnknownEntry
from .fincat import Functor, GeneratedCategory, NatTrans, materialize_window
from .multiplier import Multiplier, MultiplierSpec

_windows = {}


def window(G, bound):
    """Materialized window, shared between all users of the same generator."""
    key = (G.key, bound)
    if key not in _windows:
        _windows[key] = materialize_window(G, bound)
    W = _windows[key]
    # caps may have changed since the window was cached
    caps = get_caps()
    caps.check("objects", W.n_objects)
    caps.check("morphisms", W.n_morphisms)
    caps.check("composition", len(W.comp))
    return W


def clear_windows():
    _windows.clear()


# cubes

class Cubes(GeneratedCategory):
    def __init__(self, k=2, cartesian=False, involution=False):
        if k < 0:
            raise BadParams("k must be non-negative")
        if involution and k != 2:
            raise BadParams("involutions are only defined for binary cubes")
        self.k, self.cartesian, self.involution = k, cartesian, involution
        self.name = ("⧄" if cartesian else "□") + str(k) + ("¬" if involution else "")
        self.key = ("cubes", k, cartesian, involution)
        self.top = 0

    def objects(self, bound):
        return range(bound + 1)

    def size(self, n):
        return n

    def _entries(self, m):
        out = [(0, c) for c in range(self.k)] + [(1, a) for a in range(m)]
        if self.involution:
            out += [(2, a) for a in range(m)]
        return out

    def hom(self, m, n):
        for t in itertools.product(self._entries(m), repeat=n):
            if self.cartesian:
                yield t
            else:
                used = [e[1] for e in t if e[0]]
                if len(set(used)) == len(used):
                    yield t

    def identity(self, n):
        return tuple((1, i) for i in range(n))

    def negate(self, e):
        kind, v = e
        if kind == 0:
            return (0, self.k - 1 - v)
        return (3 - kind, v)

    def compose(self, a, b, c, g, f):
        out = []
        for kind, v in g:
            if kind == 0:
                out.append((0, v))
            elif kind == 1:
                out.append(f[v])
            else:
                out.append(self.negate(f[v]))
        return tuple(out)


def cube_multiplier(G):
    """⋉𝕀 on cubes: the fresh variable is appended last."""
    def sigma(n, psi):
        e = psi[0]
        if e[0] == 0 or G.cartesian:
            return n, G.identity(n) + (e,)
        a = e[1]
        return n - 1, tuple((1, j) for j in range(n) if j != a) + (e,)

    return MultiplierSpec(
        name=f"{G.name}⋉𝕀", source=G, target=G,
        obj=lambda n: n + 1,
        mor=lambda m, n, phi: tuple(phi) + ((1, m),),
        U=1, unit=((1, 0),), shift=1, endo=True,
        copoint=lambda n: tuple((1, i) for i in range(n - 1)) if n >= 1 else None,
        sigma_oracle=sigma)


# clocks

class Clocks(GeneratedCategory):
    """Objects are tuples of clock types; a morphism V → W assigns to each
    variable of W a variable of V of smaller or equal type."""

    def __init__(self, K=1):
        if K < 0:
            raise BadParams("K must be non-negative")
        self.K = K
        self.name = f"🕒{K}"
        self.key = ("clocks", K)
        self.top = ()

    def objects(self, bound):
        for n in range(bound + 1):
            yield from itertools.product(range(self.K + 1), repeat=n)

    def size(self, v):
        return len(v)

    def hom(self, v, w):
        choices = [[a for a in range(len(v)) if v[a] <= t] for t in w]
        return itertools.product(*choices)

    def identity(self, v):
        return tuple(range(len(v)))

    def compose(self, a, b, c, g, f):
        return tuple(f[x] for x in g)


def clock_multiplier(G, k):
    return MultiplierSpec(
        name=f"×(i:🕒{k})", source=G, target=G,
        obj=lambda v: tuple(v) + (k,),
        mor=lambda v, w, phi: tuple(phi) + (len(v),),
        U=(k,), unit=(0,), shift=1, endo=True,
        copoint=lambda v: tuple(range(len(v) - 1)),
        sigma_oracle=lambda v, psi: (v, tuple(range(len(v))) + (psi[0],)))


# depth d cubes

class DepthCubes(GeneratedCategory):
    """Variables carry a depth in 0..d; a W-variable of depth k is sent to an
    endpoint or to a V-variable of depth at least k."""

    def __init__(self, d=1):
        if d < -1:
            raise BadParams("d must be at least -1")
        self.d = d
        self.name = f"⧄_{d}"
        self.key = ("depth", d)
        self.top = ()

    def objects(self, bound):
        if self.d < 0:
            yield ()
            return
        for n in range(bound + 1):
            yield from itertools.product(range(self.d + 1), repeat=n)

    def size(self, v):
        return len(v)

    def hom(self, v, w):
        choices = [[(0, 0), (0, 1)] + [(1, a) for a in range(len(v)) if v[a] >= t] for t in w]
        return itertools.product(*choices)

    def identity(self, v):
        return tuple((1, i) for i in range(len(v)))

    def compose(self, a, b, c, g, f):
        return tuple(e if e[0] == 0 else f[e[1]] for e in g)


def depth_multiplier(G, k):
    return MultiplierSpec(
        name=f"×(i:({k}))", source=G, target=G,
        obj=lambda v: tuple(v) + (k,),
        mor=lambda v, w, phi: tuple(phi) + ((1, len(v)),),
        U=(k,), unit=((1, 0),), shift=1, endo=True,
        copoint=lambda v: tuple((1, i) for i in range(len(v) - 1)),
        sigma_oracle=lambda v, psi: (v, tuple((1, i) for i in range(len(v))) + (psi[0],)))


def depth_hom_audit(d, bound=2):
    """Hom-set sizes of depth d and d+1 on their shared objects.

    The presentation only adds objects when d grows, so shared hom-sets must
    agree; returns the list of disagreeing (V, W, count_d, count_d+1).
    """
    A, B = DepthCubes(d), DepthCubes(d + 1)
    out = []
    for v in A.objects(bound):
        for w in A.objects(bound):
            ca = sum(1 for _ in A.hom(v, w))
            cb = sum(1 for _ in B.hom(v, w))
            if ca != cb:
                out.append((v, w, ca, cb))
    return out


# twisted cubes

class TwistedCubes(GeneratedCategory):
    """The object of dimension n is a chain with 2^n elements; a morphism is
    a rank tuple (a monotone map of chains).  W ⋉ 𝕀 is W^op below W."""

    name = "⋈"
    key = ("twisted",)
    top = 0

    def objects(self, bound):
        return range(bound + 1)

    def size(self, n):
        return n

    def hom(self, m, n):
        return _twisted_hom(m, n)

    def identity(self, n):
        return tuple(range(2 ** n))

    def compose(self, a, b, c, g, f):
        return tuple(g[x] for x in f)


def twist(phi, m, n):
    """φ ⋉ 𝕀 for φ: 𝕀^m → 𝕀^n."""
    M, N = 2 ** m, 2 ** n
    return tuple(N - 1 - phi[M - 1 - r] for r in range(M)) + tuple(N + phi[r] for r in range(M))


@lru_cache(maxsize=None)
def _twisted_hom(m, n):
    if n == 0:
        return ((0,) * 2 ** m,)
    N = 2 ** (n - 1)
    out = {}
    for g in _twisted_hom(m, n - 1):
        out[g] = None
        out[tuple(N + x for x in g)] = None
    if m >= 1:
        for phi in _twisted_hom(m - 1, n - 1):
            out[twist(phi, m - 1, n - 1)] = None
    return tuple(sorted(out))


def twisted_multiplier(G):
    def sigma(n, psi):
        N = 2 ** n
        if len(set(psi)) == 1:
            return n, tuple(psi[0] * N + r for r in range(N))
        return n - 1, tuple(range(N))

    return MultiplierSpec(
        name="⋈⋉𝕀", source=G, target=G,
        obj=lambda n: n + 1,
        mor=lambda m, n, phi: twist(phi, m, n),
        U=1, unit=(0, 1), shift=1, endo=True, sigma_oracle=sigma)


# erasure

class Erasure(GeneratedCategory):
    """The chain ⊤ ← 0 ← 1 ← … ← d, with ⊤ written -1."""

    def __init__(self, d=1):
        if d < -1:
            raise BadParams("d must be at least -1")
        self.d = d
        self.name = f"E{d}"
        self.key = ("erasure", d)
        self.top = -1

    def objects(self, bound):
        return range(-1, self.d + 1)

    def size(self, a):
        return 0

    def hom(self, a, b):
        return [()] if a >= b else []

    def identity(self, a):
        return ()

    def compose(self, a, b, c, g, f):
        return ()


def erasure_multiplier(G, i):
    if not -1 <= i <= G.d:
        raise BadParams(f"i must lie in -1..{G.d}")
    return MultiplierSpec(
        name=f"×{i}", source=G, target=G,
        obj=lambda a: max(a, i), mor=lambda a, b, phi: (),
        U=i, unit=(), shift=0, endo=True,
        copoint=lambda a: (), sigma_oracle=lambda j, psi: (j, ()))


# embargoes

class Arrowed(GeneratedCategory):
    """𝒲 × ↑ with ↑ = {0 → 1}; morphisms are those of 𝒲."""

    def __init__(self, base):
        self.base = base
        self.name = f"{base.name}×↑"
        self.key = ("arrowed", base.key)
        self.top = (base.top, 1)

    def objects(self, bound):
        return [(w, o) for w in self.base.objects(bound) for o in (0, 1)]

    def size(self, a):
        return self.base.size(a[0])

    def hom(self, a, b):
        return self.base.hom(a[0], b[0]) if a[1] <= b[1] else []

    def identity(self, a):
        return self.base.identity(a[0])

    def compose(self, a, b, c, g, f):
        return self.base.compose(a[0], b[0], c[0], g, f)


def embargo_multiplier(base, A):
    return MultiplierSpec(
        name="⋉!", source=base, target=A,
        obj=lambda w: (w, 1), mor=lambda v, w, phi: phi,
        U=A.top, unit=base.identity(base.top), shift=0, endo=False,
        sigma_oracle=lambda a, psi: (a[0], base.identity(a[0])))


class Comma(GeneratedCategory):
    """𝒲_⊥ / 𝒲: objects (V, W, ψ: V → W) with V possibly ⊥ (None)."""

    def __init__(self, base):
        self.base = base
        self.name = f"{base.name}⊥/{base.name}"
        self.key = ("comma", base.key)
        t = base.top
        self.top = (t, t, base.identity(t))

    def objects(self, bound):
        B = self.base
        ws = list(B.objects(bound))
        out = [(None, w, None) for w in ws]
        for v in ws:
            for w in ws:
                out.extend((v, w, psi) for psi in B.hom(v, w))
        return out

    def size(self, a):
        v, w, _ = a
        return max(0 if v is None else self.base.size(v), self.base.size(w))

    def hom(self, x, y):
        B = self.base
        (v, w, psi), (v2, w2, psi2) = x, y
        if v is None:
            return [(None, b) for b in B.hom(w, w2)]
        if v2 is None:
            return []
        out = []
        for a in B.hom(v, v2):
            left = B.compose(v, v2, w2, psi2, a)
            for b in B.hom(w, w2):
                if B.compose(v, w, w2, b, psi) == left:
                    out.append((a, b))
        return out

    def identity(self, x):
        v, w, _ = x
        return (None if v is None else self.base.identity(v), self.base.identity(w))

    def compose(self, x, y, z, g, f):
        B = self.base
        a = None if x[0] is None else B.compose(x[0], y[0], z[0], g[0], f[0])
        return (a, B.compose(x[1], y[1], z[1], g[1], f[1]))


def delta_multiplier(base, C):
    return MultiplierSpec(
        name="Δ", source=base, target=C,
        obj=lambda w: (w, w, base.identity(w)),
        mor=lambda v, w, phi: (phi, phi),
        U=C.top, unit=(base.identity(base.top), base.identity(base.top)),
        shift=0, endo=False,
        sigma_oracle=lambda x, leg: (x[1], (x[2] if x[0] is not None else None, base.identity(x[1]))))


def domain_multiplier(C, inner):
    """(V → W) ↦ (V ⋉ U → W) via ψ ∘ π₁, with ⊥ ⋉ U = ⊥."""
    B = C.base

    def obj(x):
        v, w, psi = x
        if v is None:
            return x
        fv = inner.obj(v)
        return (fv, w, B.compose(fv, v, w, psi, inner.copoint(fv)))

    def mor(x, y, f):
        a, b = f
        if a is None:
            return f
        return (inner.mor(x[0], y[0], a), b)

    def copoint(fx):
        v, w, _ = fx
        if v is None:
            return (None, B.identity(w))
        return (inner.copoint(v), B.identity(w))

    U = obj(C.top)
    return MultiplierSpec(
        name="⋉(!√U)", source=C, target=C, obj=obj, mor=mor,
        U=U, unit=C.identity(U), shift=inner.shift, endo=True, copoint=copoint)


def identity_spec(G):
    return MultiplierSpec(
        name="Id", source=G, target=G, obj=lambda w: w, mor=lambda v, w, phi: phi,
        U=G.top, unit=G.identity(G.top), shift=0, endo=True,
        copoint=lambda w: G.identity(w), sigma_oracle=lambda w, psi: (w, G.identity(w)))


# materialization

def materialize_multiplier(spec, bound):
    """The multiplier on the source window of size ≤ bound."""
    W = window(spec.source, bound)
    V = window(spec.target, bound + spec.shift)
    obj = [V.obj(spec.obj(W.objects[w])) if V.has_obj(spec.obj(W.objects[w])) else None
           for w in range(W.n_objects)]
    if None in obj:
        w = obj.index(None)
        from .errors import WindowEscape
        raise WindowEscape(f"{spec.name} sends {W.objects[w]!r} outside {V.name}")
    mor = [V.lookup(V.objects[obj[W.dom[f]]], V.objects[obj[W.cod[f]]],
                    spec.mor(W.objects[W.dom[f]], W.objects[W.cod[f]], W.mor_label[f]))
           for f in range(W.n_morphisms)]
    F = Functor(W, V, obj, mor, name=spec.name)
    U = V.obj(spec.U)
    top = spec.source.top
    unit = V.lookup(spec.obj(top), spec.U, spec.unit)
    embed = None
    copoint = None
    if spec.endo:
        embed = Functor(W, V, [V.obj(W.objects[w]) for w in range(W.n_objects)],
                        [V.lookup(W.objects[W.dom[f]], W.objects[W.cod[f]], W.mor_label[f])
                         for f in range(W.n_morphisms)], name="incl")
        if spec.copoint is not None:
            comps = [V.lookup(V.objects[obj[w]], W.objects[w], spec.copoint(V.objects[obj[w]]))
                     for w in range(W.n_objects)]
            copoint = NatTrans(F, embed, comps, name="π₁")
    return Multiplier(F, U, unit, name=spec.name, spec=spec, bound=bound,
                      copoint=copoint, embed=embed)


def check_sigma_oracle(M):
    """Compare the hand-coded Σ with universal-arrow search on every slice."""
    from .report import FRONTIER, CheckReport
    r = CheckReport(f"sigma-oracle[{M.name}]")
    spec = M.spec
    if spec is None or spec.sigma_oracle is None:
        r.add("oracle", "skip", "no hand-coded Σ")
        return r
    S, _ = M.slice()
    fresh = M.fresh_base()
    W, V = M.W, M.V
    bad = None
    checked = 0
    for s in range(S.n_objects):
        v, psi = S.points[s]
        found = M.sum_base(s)
        if not W.has_obj(spec.sigma_oracle(V.objects[v], V.mor_label[psi])[0]):
            r.add(f"oracle@{S.objects[s]}", FRONTIER, "oracle object outside window")
            continue
        wd, chi = spec.sigma_oracle(V.objects[v], V.mor_label[psi])
        w = W.obj(wd)
        eta_base = V.find(v, M.F.obj[w], chi)
        eta = None if eta_base is None else S.find(s, fresh.obj[w], eta_base)
        checked += 1
        if found is None or eta is None:
            bad = (S.objects[s], "missing")
            break
        from .fincat import _is_initial
        if found[0] != w and W.find_iso(found[0], w) is None:
            bad = (S.objects[s], W.objects[found[0]], wd)
            break
        if not _is_initial(fresh, eta, w):
            bad = (S.objects[s], "oracle arrow not initial")
            break
    r.expect("oracle=search", bad is None, f"{checked} slices", witness=bad)
    return r


# registry

@dataclass
class ZooEntry:
    name: str
    params: dict
    description: str
    build_spec: object
    window: int
    expected: dict
    notes: str = ""
    defaults: dict = field(default_factory=dict)

    def spec(self):
        return self.build_spec(**self.params)

    def multiplier(self, bound=None):
        return materialize_multiplier(self.spec(), self.window if bound is None else bound)


def _int(params, key, default):
    try:
        return int(params.get(key, default))
    except (TypeError, ValueError):
        raise BadParams(f"parameter {key} must be an integer") from None


def _cubes_spec(k=2, involution=0, cartesian=False):
    return cube_multiplier(Cubes(int(k), cartesian, bool(int(involution))))


def _families():
    T, F = True, False

    def exp(spooky, canc, aff, cf, quant, semi, three, cart):
        return {"spooky": spooky, "cancellative": canc, "affine": aff, "connection_free": cf,
                "quantifiable": quant, "semicartesian": semi, "three_quarter": three,
                "cartesian": cart}

    def affine_cubes(p):
        k = _int(p, "k", 2)
        return (dict(k=k, involution=_int(p, "involution", 0)),
                lambda k, involution: _cubes_spec(k, involution, False), 2,
                exp(k == 0, T, T, T, T, T, F, F))

    def cartesian_cubes(p):
        k = _int(p, "k", 2)
        return (dict(k=k, involution=_int(p, "involution", 0)),
                lambda k, involution: _cubes_spec(k, involution, True), 2,
                exp(k == 0, T, F, T, T, T, T, T))

    def identity(p):
        return ({}, lambda: identity_spec(Cubes(2)), 2, exp(F, T, T, T, T, T, T, T))

    def clocks(p):
        K = _int(p, "K", 1)
        k = _int(p, "k", K)
        if not 0 <= k <= K:
            raise BadParams("clock multiplier type k must lie in 0..K")
        return (dict(K=K, k=k), lambda K, k: clock_multiplier(Clocks(K), k), 2,
                exp(T, T, F, T, T, T, T, T))

    def twisted(p):
        return ({}, lambda: twisted_multiplier(TwistedCubes()), 2, exp(F, T, T, T, T, F, F, F))

    def erasure(p):
        d = _int(p, "d", 2)
        i = _int(p, "i", 0)
        return (dict(d=d, i=i), lambda d, i: erasure_multiplier(Erasure(d), i), 0,
                exp(T, T, i == -1, T, T, T, T, T))

    def embargo(p):
        k = _int(p, "k", 2)

        def build(k):
            base = Cubes(k, True)
            return embargo_multiplier(base, Arrowed(base))
        return (dict(k=k), build, 2, exp(k == 0, T, T, T, T, None, None, None))

    def enhanced(p):
        variant = p.get("variant", "delta")
        if variant not in ("delta", "dom"):
            raise BadParams("variant must be delta or dom")
        k = _int(p, "k", 2 if variant == "delta" else 1)

        def build(variant, k):
            base = Cubes(k)
            C = Comma(base)
            if variant == "delta":
                return delta_multiplier(base, C)
            return domain_multiplier(C, cube_multiplier(base))
        if variant == "delta":
            expected = exp(k == 0, T, T, F, T, None, None, None)
        else:
            expected = exp(T, T, T, F, T, T, F, F)
        return dict(variant=variant, k=k), build, 1, expected

    def depth(p):
        d = _int(p, "d", 1)
        k = _int(p, "k", d)
        if not 0 <= k <= d:
            raise BadParams("depth multiplier type k must lie in 0..d")
        return (dict(d=d, k=k), lambda d, k: depth_multiplier(DepthCubes(d), k), 1,
                exp(F, T, F, T, T, T, T, T))

    return {
        "identity": (identity, "identity multiplier on binary affine cubes"),
        "affine-cubes": (affine_cubes, "affine k-ary cubes with ⋉𝕀 (substructural interval)"),
        "cartesian-cubes": (cartesian_cubes, "cartesian k-ary cubes with ×𝕀"),
        "clocks": (clocks, "clock category with ×(i:🕒_k), types 0..K"),
        "twisted-cubes": (twisted, "affine twisted cubes with the twisted prism ⋉𝕀"),
        "erasure": (erasure, "erasure chain ⊤ ← 0 ← … ← d with ×i"),
        "embargo": (embargo, "embargo (Id,⊤): ⧄^k → ⧄^k × ↑"),
        "enhanced-embargo": (enhanced, "comma category over □^k: Δ or domain lifting ⋉(!√𝕀)"),
        "depth-cubes": (depth, "depth d cubes with ×(i:(k))"),
    }


NOTES = {
    "enhanced-embargo": "both variants are classified as not connection-free, following the "
                        "dimensional-splitness analysis: for Δ every non-identity arrow V → W with "
                        "V ≠ ⊥ is a connection, e.g. (⊤ → 𝕀) at an endpoint",
    "depth-cubes": "endpoints 0 and 1 are available at every depth",
    "twisted-cubes": "W^op and W coincide as rank chains; Σ(W, const 0) is W with the reversed arrow",
}


def names():
    return sorted(_families())


def build(name, params=None):
    """(generator, materialized multiplier, ZooEntry) for a zoo name."""
    fams = _families()
    if name not in fams:
        raise UnknownEntry(f"unknown zoo entry {name!r}; known: {', '.join(sorted(fams))}")
    params = dict(params or {})
    maker, desc = fams[name]
    known_keys = {"identity": set(), "affine-cubes": {"k", "involution"},
                  "cartesian-cubes": {"k", "involution"}, "clocks": {"K", "k"},
                  "twisted-cubes": set(), "erasure": {"d", "i"}, "embargo": {"k"},
                  "enhanced-embargo": {"variant", "k"}, "depth-cubes": {"d", "k"}}[name]
    extra = set(params) - known_keys
    if extra:
        raise BadParams(f"{name} does not take parameters {sorted(extra)}")
    norm, builder, win, expected = maker(params)
    entry = ZooEntry(name, norm, desc, builder, win, expected, NOTES.get(name, ""))
    spec = entry.spec()
    return spec.source, entry, spec


def entry(name, params=None):
    return build(name, params)[1]


def golden_entries():
    """The (name, params) pairs checked against the paper's classifications."""
    return [
        ("identity", {}),
        ("affine-cubes", {"k": 2}),
        ("affine-cubes", {"k": 1}),
        ("affine-cubes", {"k": 0}),
        ("cartesian-cubes", {"k": 2}),
        ("cartesian-cubes", {"k": 0}),
        ("clocks", {"K": 1}),
        ("twisted-cubes", {}),
        ("erasure", {"d": 2, "i": 0}),
        ("embargo", {"k": 2}),
        ("enhanced-embargo", {"variant": "delta"}),
        ("enhanced-embargo", {"variant": "dom"}),
        ("depth-cubes", {"d": 1}),
    ]


# adjunctions for the piped-adjunction checks

def embargo_adjunctions(k=2, bound=2):
    """(Id,⊥) ⊣ π₁ ⊣ (Id,⊤) between ⧄^k and ⧄^k × ↑, as two Adjunctions."""
    from .modalities import Adjunction, descriptor_functor
    base = Cubes(k, cartesian=True)
    A = Arrowed(base)
    W, WA = window(base, bound), window(A, bound)
    proj = descriptor_functor(WA, W, lambda a: a[0], lambda a, b, f: f, "π₁")
    top = descriptor_functor(W, WA, lambda w: (w, 1), lambda a, b, f: f, "(Id,⊤)")
    bot = descriptor_functor(W, WA, lambda w: (w, 0), lambda a, b, f: f, "(Id,⊥)")

    def ident(C, a, b):
        return C.find(a, b, base.identity(C.objects[a][0] if C is WA else C.objects[a]))

    upper = Adjunction(proj, top,
                       [ident(WA, a, top.obj[proj.obj[a]]) for a in range(WA.n_objects)],
                       list(W.identities), "π₁⊣(Id,⊤)")
    lower = Adjunction(bot, proj, list(W.identities),
                       [ident(WA, bot.obj[proj.obj[a]], a) for a in range(WA.n_objects)],
                       "(Id,⊥)⊣π₁")
    return lower, upper


def erasure_adjunction(d=2, i=0):
    """max(-, i) ⊣ S on the chain, with S(b) = ⊤ for b ≤ i and S(b) = b otherwise."""
    from .modalities import Adjunction, descriptor_functor
    G = Erasure(d)
    C = window(G, 0)
    if not -1 <= i <= d:
        raise BadParams("erasure index must lie in -1..d")
    left = descriptor_functor(C, C, lambda a: max(a, i), lambda a, b, f: (), f"max(-,{i})")
    right = descriptor_functor(C, C, lambda b: -1 if b <= i else b, lambda a, b, f: (), "S")
    unit = [C.hom(a, right.obj[left.obj[a]])[0] for a in range(C.n_objects)]
    counit = [C.hom(left.obj[right.obj[b]], b)[0] for b in range(C.n_objects)]
    return Adjunction(left, right, unit, counit, f"max(-,{i})⊣S")
