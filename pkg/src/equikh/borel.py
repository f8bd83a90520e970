"""Borel complexes C_Q with differential d + Q(1 + tau), and their invariants.

A Borel complex is stored as a ``FreeComplex`` with ``qvar`` set: an entry
x -> y carries Q^b with b = h[x] + 1 - h[y], so entries of d have b = 0 and
entries of Q(1 + tau) have b = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complex import FreeComplex, ReductionData, apply, simplify
from .f2 import Echelon, ModulePresentation, graded_smith, kernel

INF = math.inf


class NotKnotlike(ValueError):
    """The localized slice homology is not a single tower."""


def assemble_borel(c: FreeComplex, tau=None) -> FreeComplex:
    """The complex (C[Q], d + Q(1 + tau)); ``tau`` defaults to c.endos['tau']."""
    if tau is None:
        tau = c.endos.get("tau")
    if tau is None:
        raise KeyError("no involution supplied")
    d = []
    for x in range(c.n):
        s = set(c.d[x])
        s.symmetric_difference_update(tau[x])
        s.symmetric_difference_update([x])
        d.append(sorted(s))
    out = FreeComplex(list(c.h), list(c.q), d, qvar=True,
                      k2=list(c.k2) if c.k2 is not None else None, names=c.names)
    return out


def check_borel(b: FreeComplex) -> None:
    b.check()


def minimal_borel(c: FreeComplex, tau=None, track: bool = False) -> ReductionData:
    """Cancel the unit entries of d + Q(1 + tau) directly.

    This is the homological perturbation of the minimal model in one pass:
    the Q^0 part of the result is the minimal differential and its Q^1 part
    is 1 + tau' for the transferred involution.
    """
    return simplify(assemble_borel(c, tau), track=track)


def h_min(b: FreeComplex) -> int:
    return min(b.h) if b.n else 0


def slice_complex(b: FreeComplex, A: int, B=INF, span=1) -> FreeComplex:
    """The F2[u]-complex of Q^j g with h(g) + j in [A - span, A + span], j < B."""
    lo, hi = A - span, A + span
    hmin = h_min(b)
    gens = []
    index = {}
    for g in range(b.n):
        for deg in range(lo, hi + 1):
            j = deg - b.h[g]
            if j < 0 or j >= B:
                continue
            index[(g, j)] = len(gens)
            gens.append((g, j))
    h = [b.h[g] + j for g, j in gens]
    q = [b.q[g] for g, _ in gens]
    d = []
    for g, j in gens:
        outs = []
        for y in b.d[g]:
            jj = j + b.h[g] + 1 - b.h[y]
            t = index.get((y, jj))
            if t is not None:
                outs.append(t)
        d.append(outs)
    del hmin
    return FreeComplex(h, q, d)


def borel_slice_homology(b: FreeComplex, A: int, B=INF) -> ModulePresentation:
    """Homology of C_Q / Q^B in homological degree A, over F2[u]."""
    if B != INF and B < 1:
        raise ValueError("truncation B must be >= 1")
    if A < h_min(b):
        raise ValueError(f"degree {A} is below the complex")
    return graded_smith(simplify(slice_complex(b, A, B), track=False).minimal).degree(A)


def s_q(b: FreeComplex, A: int, B=INF) -> int:
    """Quantum grading of the u-nontorsion class of H_A(C_Q / Q^B)."""
    pres = borel_slice_homology(b, A, B)
    if len(pres.free_gens) != 1:
        raise NotKnotlike(f"slice A={A}, B={B} has free rank {len(pres.free_gens)}")
    return pres.free_gens[0][1]


def slice_free_rank(b: FreeComplex, A: int, B=INF) -> int:
    return len(borel_slice_homology(b, A, B).free_gens)


def s_q_grid(b: FreeComplex, A_max: int, B_max: int, check: bool = True):
    """Table {(A, B): s_q} for 0 <= A < B <= B_max, A <= A_max, plus B = inf."""
    grid = {}
    for B in list(range(1, B_max + 1)) + [INF]:
        for A in range(0, A_max + 1):
            if A < B:
                grid[(A, B)] = s_q(b, A, B)
    if check:
        check_monotone(grid)
    return grid


def check_monotone(grid) -> None:
    """Nondecreasing in A for fixed B; nonincreasing in B for fixed A."""
    for (A, B), v in grid.items():
        nxt = grid.get((A + 1, B))
        if nxt is not None and nxt < v:
            raise AssertionError(f"s_Q not monotone in A at ({A},{B})")
        for (A2, B2), w in grid.items():
            if A2 == A and B2 > B and w > v:
                raise AssertionError(f"s_Q not monotone in B at ({A},{B})")


def perturb_transfer(r: ReductionData, tau) -> FreeComplex:
    """Transfer d + Q(1 + tau) to the minimal model of ``r``.

    The result is d' + sum_{i>=0} Q^{i+1} f ((1+tau) H)^i (1+tau) g; the
    powers of Q are implied by the gradings.
    """
    if r.f is None:
        raise ValueError("reduction data must track f, g and H")
    mn = r.minimal
    n = r.source.n
    one_tau = [sorted(set(tau[x]).symmetric_difference([x])) for x in range(n)]
    cap = (max(r.source.h) - min(r.source.h) + 2) if n else 1
    d = []
    for m in range(mn.n):
        total = set(mn.d[m])
        v = apply(one_tau, r.g[m])
        steps = 0
        while v:
            total.symmetric_difference_update(apply(r.f, v))
            v = apply(one_tau, apply(r.H, v))
            steps += 1
            if steps > cap:
                raise AssertionError("perturbation series did not terminate")
        d.append(sorted(total))
    return FreeComplex(list(mn.h), list(mn.q), d, qvar=True, names=mn.names)


def q_parts(b: FreeComplex):
    """Split a Borel differential by Q-power: {b: adjacency lists}."""
    parts: dict[int, list[list[int]]] = {}
    for x, outs in enumerate(b.d):
        for y in outs:
            p = b.h[x] + 1 - b.h[y]
            parts.setdefault(p, [[] for _ in range(b.n)])[x].append(y)
    return parts


def q1_mod_u(b: FreeComplex):
    """The Q^1 u^0 part of a Borel differential (1 + tau_* on E1 for minimal models)."""
    return [[y for y in outs if b.h[y] == b.h[x] and b.q[y] == b.q[x]]
            for x, outs in enumerate(b.d)]


# -- F2[u,Q] module presentations --------------------------------------------

@dataclass
class FuqPresentation:
    """Presentation of a bigraded F2[u,Q]-module.

    Generators carry a bigrading and a display name; each relation is a set
    of generator indices together with its bigrading, the monomials being
    implied.
    """

    gens: list[tuple[int, int]]
    names: list[str]
    relations: list[tuple[tuple[int, int], frozenset[int]]] = field(default_factory=list)

    def monomial(self, i: int, deg) -> tuple[int, int]:
        """(u-power, Q-power) multiplying generator i in a relation of bigrading deg."""
        h, q = self.gens[i]
        return (q - deg[1]) // 2, deg[0] - h

    def simplify(self) -> "FuqPresentation":
        gens, names = list(self.gens), list(self.names)
        rels = [(deg, set(t)) for deg, t in self.relations]
        for _ in range(100):
            changed = False
            for ri, (deg, terms) in enumerate(rels):
                if len(terms) < 2:
                    continue
                mons = {i: self.monomial(i, deg) for i in terms}
                for k in sorted(terms):
                    mk = mons[k]
                    if all(mk[0] <= m[0] and mk[1] <= m[1] for m in mons.values()):
                        others = terms - {k}
                        for rj, (deg2, t2) in enumerate(rels):
                            if rj != ri and k in t2:
                                t2 ^= others
                        rels[ri] = (deg, {k})
                        changed = True
                        break
            if not changed:
                break
        rels = [(deg, frozenset(t)) for deg, t in rels if t]
        return FuqPresentation(gens, names, rels)

    def cyclic_summands(self):
        """[(grading, minimal monomial ideal)] if the presentation is diagonal."""
        if any(len(t) > 1 for _, t in self.relations):
            return None
        ideals: dict[int, set] = {i: set() for i in range(len(self.gens))}
        for deg, t in self.relations:
            (i,) = tuple(t)
            ideals[i].add(self.monomial(i, deg))
        out = []
        for i, mons in ideals.items():
            minimal = {m for m in mons
                       if not any(o != m and o[0] <= m[0] and o[1] <= m[1] for o in mons)}
            out.append((self.gens[i], sorted(minimal, key=lambda m: (m[1], m[0]))))
        return out

    def render(self) -> str:
        cyc = self.cyclic_summands()
        if cyc is None:
            return self._render_general()
        free = sorted((g for g, ideal in cyc if not ideal), key=lambda g: (g[0], -g[1]))
        tors = sorted(((g, ideal) for g, ideal in cyc if ideal), key=lambda p: (p[0][0], -p[0][1]))
        parts = [f"F[u,Q]_{{({h},{q})}}" for h, q in free]
        for (h, q), ideal in tors:
            parts.append(f"F[u,Q]/({', '.join(_mono(m) for m in ideal)})_{{({h},{q})}}")
        return " ⊕ ".join(parts) if parts else "0"

    def _render_general(self) -> str:
        gens = ", ".join(f"{n}_{{({h},{q})}}" for n, (h, q) in zip(self.names, self.gens))
        rels = []
        for deg, t in self.relations:
            terms = [_mono(self.monomial(i, deg), self.names[i]) for i in sorted(t)]
            rels.append(" = ".join(terms) if len(terms) == 2 else " + ".join(terms) + " = 0")
        return f"<{gens} | {'; '.join(rels)}>"

    def relation_strings(self) -> list[str]:
        return self._render_general().split(" | ", 1)[1].rstrip(">").split("; ")


def _mono(m, name: str = "") -> str:
    a, b = m
    s = ""
    if b:
        s += "Q" if b == 1 else f"Q^{b}"
    if a:
        s += "u" if a == 1 else f"u^{a}"
    if name:
        return s + name
    return s or "1"


class _Bigraded:
    """Chains of C_Q in a fixed bigrading, with d, u and Q between pieces."""

    def __init__(self, b: FreeComplex):
        self.b = b
        self.cache: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def basis(self, h: int, q: int):
        key = (h, q)
        if key not in self.cache:
            out = []
            for g in range(self.b.n):
                j = h - self.b.h[g]
                a2 = self.b.q[g] - q
                if j >= 0 and a2 >= 0 and a2 % 2 == 0:
                    out.append((g, j))
            self.cache[key] = out
        return self.cache[key]

    def vec(self, h, q, elems) -> int:
        pos = {e: i for i, e in enumerate(self.basis(h, q))}
        v = 0
        for e in elems:
            v ^= 1 << pos[e]
        return v

    def elems(self, h, q, v: int):
        basis = self.basis(h, q)
        return [basis[i] for i in range(len(basis)) if (v >> i) & 1]

    def d_col(self, g, j):
        out = []
        for y in self.b.d[g]:
            out.append((y, j + self.b.h[g] + 1 - self.b.h[y]))
        return out

    def d(self, h, q, v):
        img: set = set()
        for g, j in self.elems(h, q, v):
            img.symmetric_difference_update(self.d_col(g, j))
        return self.vec(h + 1, q, img)

    def cycles(self, h, q):
        cols = [self.d(h, q, 1 << i) for i in range(len(self.basis(h, q)))]
        return kernel(cols)

    def boundaries(self, h, q):
        n = len(self.basis(h - 1, q))
        return [self.d(h - 1, q, 1 << i) for i in range(n)]

    def times_u(self, h, q, v):
        return self.vec(h, q - 2, self.elems(h, q, v))

    def times_q(self, h, q, v):
        return self.vec(h + 1, q, [(g, j + 1) for g, j in self.elems(h, q, v)])


def fuq_presentation(b: FreeComplex, pad: int | None = None) -> FuqPresentation:
    """Minimal presentation of H_*(C_Q) for a small Borel complex."""
    if not b.n:
        return FuqPresentation([], [])
    pad = pad if pad is not None else b.n + 3
    hs = range(min(b.h), max(b.h) + pad + 1)
    qs = range(max(b.q), min(b.q) - 2 * pad - 1, -1)
    bg = _Bigraded(b)
    gens, names, reps = [], [], []
    for h in hs:
        for q in qs:
            if (q - b.q[0]) % 2:
                continue
            if not bg.basis(h, q):
                continue
            known = Echelon()
            for v in bg.boundaries(h, q):
                known.add(v)
            # decomposables: u * H(h, q+2) and Q * H(h-1, q)
            for z in bg.cycles(h, q + 2) if bg.basis(h, q + 2) else []:
                known.add(bg.times_u(h, q + 2, z))
            for z in bg.cycles(h - 1, q) if bg.basis(h - 1, q) else []:
                known.add(bg.times_q(h - 1, q, z))
            for z in bg.cycles(h, q):
                if known.add(z):
                    gens.append((h, q))
                    reps.append(z)
                    names.append(_rep_name(b, bg.elems(h, q, z), len(gens)))
    pres = FuqPresentation(gens, names)
    rels = []
    for h in hs:
        for q in qs:
            # F_{h,q}: monomials u^a Q^j e_i landing in (h, q)
            terms = [i for i, (hi, qi) in enumerate(gens) if h >= hi and qi >= q and (qi - q) % 2 == 0]
            if not terms:
                continue
            cols = []
            for i in terms:
                hi, qi = gens[i]
                v = reps[i]
                hh, qq = hi, qi
                while qq > q:
                    v = bg.times_u(hh, qq, v)
                    qq -= 2
                while hh < h:
                    v = bg.times_q(hh, qq, v)
                    hh += 1
                cols.append(v)
            bnd = bg.boundaries(h, q)
            ker = kernel(cols + bnd)
            mask = (1 << len(terms)) - 1
            K = Echelon()
            for comb in ker:
                K.add(comb & mask)
            # relations already implied by lower degree ones
            implied = Echelon()
            for deg, rel in rels:
                if _divides(deg, (h, q)):
                    implied.add(_as_vec(rel, terms))
            for v in K.basis():
                if implied.add(v):
                    rels.append(((h, q), frozenset(terms[i] for i in range(len(terms)) if (v >> i) & 1)))
    pres.relations = rels
    return pres.simplify()


def _divides(deg, target) -> bool:
    """Whether bigrading ``target`` is reached from ``deg`` by a monomial."""
    dh = target[0] - deg[0]
    dq = deg[1] - target[1]
    return dh >= 0 and dq >= 0 and dq % 2 == 0


def _as_vec(rel, terms):
    v = 0
    for k, i in enumerate(terms):
        if i in rel:
            v |= 1 << k
    return v


def _rep_name(b: FreeComplex, elems, k: int) -> str:
    if b.names and len(elems) == 1 and elems[0][1] == 0:
        return b.names[elems[0][0]]
    return f"e{k}"


def fuq_render(b: FreeComplex) -> str:
    return fuq_presentation(b).render()
