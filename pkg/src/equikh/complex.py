"""Free bigraded chain complexes over F2[u] (optionally F2[u,Q] and W).

Every map stored here is homogeneous, so each matrix entry is a single bit:
the monomial it stands for is forced by the gradings.  An entry ``x -> y`` of
a map of homological degree ``dh`` stands for ``Q^b u^a W^w`` with

    b = h[x] + dh - h[y],   a = (q[y] - q[x]) / 2,   w = k2[y] - k2[x]

where ``k2`` is twice the Lobb-Watson grading.  Q only appears when
``qvar`` is set; otherwise ``b`` must be 0.  This turns Gaussian elimination
over the polynomial ring into symmetric differences of index sets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


def entry_exponents(h, q, k2, x, y, dh=1):
    """(Q, u, W) exponents of the entry x -> y of a map of degree ``dh``."""
    b = h[x] + dh - h[y]
    du = q[y] - q[x]
    w = 0 if k2 is None else k2[y] - k2[x]
    return b, du // 2, w


@dataclass
class FreeComplex:
    """A free complex with differential ``d`` (adjacency lists, out-edges)."""

    h: list[int]
    q: list[int]
    d: list[list[int]]
    qvar: bool = False
    k2: list[int] | None = None
    endos: dict[str, list[list[int]]] = field(default_factory=dict)
    names: list[str] | None = None

    def __len__(self):
        return len(self.h)

    @property
    def n(self) -> int:
        return len(self.h)

    def exps(self, x, y, dh=1):
        return entry_exponents(self.h, self.q, self.k2, x, y, dh)

    def name(self, i) -> str:
        return self.names[i] if self.names else f"g{i}"

    def check(self, endo_degree: int = 0) -> None:
        """Assert homogeneity, d^2 = 0 and that endos are chain maps."""
        for x, outs in enumerate(self.d):
            for y in outs:
                b, a, w = self.exps(x, y)
                if (self.q[y] - self.q[x]) % 2 or a < 0 or b < 0 or w < 0:
                    raise AssertionError(f"inhomogeneous entry {x}->{y}")
                if b and not self.qvar:
                    raise AssertionError(f"Q-power in entry {x}->{y} of a u-complex")
        if not is_zero(compose(self.d, self.d)):
            raise AssertionError("d^2 != 0")
        for name, m in self.endos.items():
            for x, outs in enumerate(m):
                for y in outs:
                    if self.h[y] != self.h[x] + endo_degree or self.q[y] < self.q[x]:
                        raise AssertionError(f"endo {name} inhomogeneous at {x}->{y}")
            if compose(self.d, m) != compose(m, self.d):
                raise AssertionError(f"endo {name} does not commute with d")

    def mod_u(self):
        """Entries of the differential with zero u-, Q- and W-exponent."""
        return [[y for y in outs if self.q[y] == self.q[x] and self.h[y] == self.h[x] + 1
                 and (self.k2 is None or self.k2[y] == self.k2[x])]
                for x, outs in enumerate(self.d)]

    def gradings(self):
        return sorted(set(zip(self.h, self.q)))

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "qvar": self.qvar,
            "generators": [
                {"h": self.h[i], "q": self.q[i], **({"k2": self.k2[i]} if self.k2 else {}),
                 **({"name": self.names[i]} if self.names else {})}
                for i in range(self.n)
            ],
            "d": [sorted(o) for o in self.d],
        }
        if self.endos:
            out["endos"] = {k: [sorted(o) for o in v] for k, v in sorted(self.endos.items())}
        return out

    @classmethod
    def from_json(cls, data) -> "FreeComplex":
        if isinstance(data, str):
            data = json.loads(data)
        gens = data["generators"]
        k2 = [g["k2"] for g in gens] if gens and "k2" in gens[0] else None
        names = [g["name"] for g in gens] if gens and "name" in gens[0] else None
        return cls(
            h=[g["h"] for g in gens],
            q=[g["q"] for g in gens],
            d=[list(o) for o in data["d"]],
            qvar=data.get("qvar", False),
            k2=k2,
            endos={k: [list(o) for o in v] for k, v in data.get("endos", {}).items()},
            names=names,
        )


def build_complex(gens, d, endos=None, qvar=False):
    """Small complexes from named generators.

    ``gens`` maps name -> (h, q); ``d`` and each endo map name -> iterable of
    target names.
    """
    names = list(gens)
    idx = {n: i for i, n in enumerate(names)}

    def conv(m):
        out = [[] for _ in names]
        for src, tgts in m.items():
            out[idx[src]] = sorted(idx[t] for t in tgts)
        return out

    c = FreeComplex(
        h=[gens[n][0] for n in names],
        q=[gens[n][1] for n in names],
        d=conv(d),
        qvar=qvar,
        endos={k: conv(v) for k, v in (endos or {}).items()},
        names=names,
    )
    return c


# -- sparse F2 maps as lists of target lists -------------------------------

def apply(m, vec):
    """Image of a set of generators under the map ``m``."""
    out: set[int] = set()
    for x in vec:
        out.symmetric_difference_update(m[x])
    return out


def compose(m2, m1):
    """The map ``m2 o m1`` (apply m1 first)."""
    return [sorted(apply(m2, outs)) for outs in m1]


def add(m1, m2):
    return [sorted(set(a).symmetric_difference(b)) for a, b in zip(m1, m2)]


def identity(n):
    return [[i] for i in range(n)]


def is_zero(m):
    return all(not o for o in m)


def one_plus(m):
    """The map id + m."""
    return [sorted(set(o).symmetric_difference([i])) for i, o in enumerate(m)]


# -- Gaussian cancellation ---------------------------------------------------

@dataclass
class ReductionData:
    """Homotopy equivalence data between ``source`` and ``minimal``.

    ``f``: source -> minimal, ``g``: minimal -> source, ``H``: source -> source
    of homological degree -1, with gf = id and fg = id + dH + Hd.
    """

    source: FreeComplex
    minimal: FreeComplex
    f: list[list[int]] | None
    g: list[list[int]] | None
    H: list[list[int]] | None
    kept: list[int]

    def check(self):
        src, mn = self.source, self.minimal
        if compose(self.f, self.g) != identity(mn.n):
            raise AssertionError("gf != id")
        lhs = compose(self.g, self.f)
        rhs = add(identity(src.n), add(compose(src.d, self.H), compose(self.H, src.d)))
        if lhs != rhs:
            raise AssertionError("fg != id + dH + Hd")
        for m, name in ((compose(mn.d, self.f), "f"), (compose(src.d, self.g), "g")):
            other = compose(self.f, src.d) if name == "f" else compose(self.g, mn.d)
            if m != other:
                raise AssertionError(f"{name} is not a chain map")


def _default_order(c: FreeComplex):
    return sorted(range(c.n), key=lambda i: (c.h[i], c.q[i], i))


def simplify(c: FreeComplex, track: bool = True, order=None) -> ReductionData:
    """Cancel every unit entry of the differential.

    An entry is a unit when its implied monomial is 1.  With ``track`` the
    homotopy equivalence data f, g, H is maintained alongside.
    """
    n = c.n
    h, q, k2 = c.h, c.q, c.k2
    out = [set(o) for o in c.d]
    inc: list[set[int]] = [set() for _ in range(n)]
    for x, o in enumerate(out):
        for y in o:
            inc[y].add(x)
    alive = [True] * n
    if track:
        fmap = [{i} for i in range(n)]      # source gen -> current gens
        finc = [{i} for i in range(n)]      # current gen -> source gens hitting it
        gmap = [{i} for i in range(n)]      # current gen -> source gens
        hmap: list[set[int]] = [set() for _ in range(n)]

    def unit(x, y):
        return (h[y] == h[x] + 1 and q[y] == q[x]
                and (k2 is None or k2[y] == k2[x]))

    for x in (order if order is not None else _default_order(c)):
        if not alive[x]:
            continue
        best = None
        for y in out[x]:
            if y != x and unit(x, y) and (best is None or len(inc[y]) < len(inc[best])):
                best = y
        if best is None:
            continue
        y = best
        ox = out[x] - {x, y}
        if track:
            gx = gmap[x]
            for v in finc[y]:
                hmap[v] ^= gx
        for z in list(inc[y]):
            if z == x or z == y:
                continue
            oz = out[z]
            for w in ox:
                if w in oz:
                    oz.discard(w)
                    inc[w].discard(z)
                else:
                    oz.add(w)
                    inc[w].add(z)
            if track:
                gmap[z] ^= gx
        if track:
            # f(y) = (dx) restricted to the survivors; f(x) = 0
            for v in list(finc[y]):
                fv = fmap[v]
                fv.discard(y)
                for w in ox:
                    if w in fv:
                        fv.discard(w)
                        finc[w].discard(v)
                    else:
                        fv.add(w)
                        finc[w].add(v)
            for v in finc[x]:
                fmap[v].discard(x)
            finc[x] = set()
            finc[y] = set()
        for a in (x, y):
            alive[a] = False
            for w in out[a]:
                if w != a:
                    inc[w].discard(a)
            for z in inc[a]:
                if z != a:
                    out[z].discard(a)
            out[a] = set()
            inc[a] = set()

    kept = [i for i in range(n) if alive[i]]
    pos = {g: i for i, g in enumerate(kept)}
    minimal = FreeComplex(
        h=[h[i] for i in kept],
        q=[q[i] for i in kept],
        d=[sorted(pos[y] for y in out[i]) for i in kept],
        qvar=c.qvar,
        k2=[k2[i] for i in kept] if k2 is not None else None,
        names=[c.names[i] for i in kept] if c.names else None,
    )
    if not track:
        return ReductionData(c, minimal, None, None, None, kept)
    f = [sorted(pos[w] for w in fmap[v]) for v in range(n)]
    g = [sorted(gmap[i]) for i in kept]
    H = [sorted(s) for s in hmap]
    return ReductionData(c, minimal, f, g, H, kept)


def transfer_endo(r: ReductionData, name: str):
    """The map f o e o g on the minimal model."""
    e = r.source.endos.get(name)
    if e is None:
        raise KeyError(f"complex has no endomorphism {name!r}")
    return compose(r.f, compose(e, r.g))


def tensor(c1: FreeComplex, c2: FreeComplex, endo: str = "tau") -> FreeComplex:
    """Tensor product with the diagonal action on the named involution."""
    for c in (c1, c2):
        if endo and endo not in c.endos:
            raise KeyError(f"tensor factor lacks the involution {endo!r}")
    n2 = c2.n
    h, q, d, names = [], [], [], []
    t = []
    for i in range(c1.n):
        for j in range(n2):
            h.append(c1.h[i] + c2.h[j])
            q.append(c1.q[i] + c2.q[j])
            d.append(sorted([a * n2 + j for a in c1.d[i]] + [i * n2 + b for b in c2.d[j]]))
            if c1.names and c2.names:
                names.append(f"{c1.names[i]}{c2.names[j]}")
            if endo:
                t.append(sorted(a * n2 + b for a in c1.endos[endo][i] for b in c2.endos[endo][j]))
    k2 = None
    if c1.k2 is not None and c2.k2 is not None:
        k2 = [c1.k2[i] + c2.k2[j] for i in range(c1.n) for j in range(n2)]
    return FreeComplex(h, q, d, qvar=c1.qvar or c2.qvar, k2=k2,
                       endos={endo: t} if endo else {}, names=names or None)


def direct_sum_shift(c: FreeComplex, dh: int = 0, dq: int = 0) -> FreeComplex:
    return FreeComplex([x + dh for x in c.h], [x + dq for x in c.q], [list(o) for o in c.d],
                       c.qvar, c.k2, dict(c.endos), c.names)
