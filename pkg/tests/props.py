"""Property checks shared by the hypothesis suite and the acceptance run.

Each function raises AssertionError on a violation.
"""

from __future__ import annotations

import random
from itertools import combinations

from braids import braid_closure

from equikh import borel
from equikh.barnatan import build_reduced_pointed, build_reduced_unpointed, build_unreduced, canonical_generator
from equikh.complex import apply, simplify, tensor
from equikh.diagram import all_symmetries
from equikh.f2 import Echelon, graded_smith, u_zero_homology_dims
from equikh.involutive import build_tau, s_tilde


def random_braid_diagram(rng: random.Random, max_crossings: int = 8):
    """A connected braid-closure diagram with at most ``max_crossings`` crossings."""
    while True:
        n = rng.randint(1, 4)
        if n == 1:
            continue
        length = rng.randint(n - 1, max_crossings)
        word = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]
        try:
            return word, braid_closure(n, word)
        except ValueError:
            continue


def random_diagrams(count: int = 200, seed: int = 20261015, max_crossings: int = 8):
    rng = random.Random(seed)
    return [random_braid_diagram(rng, max_crossings) for _ in range(count)]


def random_symmetric_knots(count: int = 100, seed: int = 7, max_crossings: int = 8):
    """Closures of odd-length palindromic braid words; these carry a PD symmetry."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 4)
        half = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(1, max_crossings // 2))]
        word = half + half[-2::-1]
        try:
            d = braid_closure(n, word)
        except ValueError:
            continue
        if d.is_knot and len(word) <= max_crossings:
            out.append((word, d))
    return out


def d_squared_zero(d):
    build_unreduced(d).complex.check()
    build_reduced_pointed(d, 1).complex.check()


def tau_involution(d):
    """tau^2 = id and tau d = d tau for every PD symmetry, unreduced and pointed."""
    if not d.is_knot:
        return 0
    syms = all_symmetries(d)
    for s in syms:
        build_tau(build_unreduced(d), s, check=True)
        for p in sorted(s.fixed_edges):
            build_tau(build_reduced_pointed(d, p), s, check=True)
    return len(syms)


def pointed_matches_unpointed(d, basepoints=None):
    """Reduced homology over F2[u] is the same with or without a basepoint."""
    un = graded_smith(simplify(build_reduced_unpointed(d).complex, track=False).minimal)
    for p in basepoints or range(1, d.n_edges + 1):
        pt = graded_smith(simplify(build_reduced_pointed(d, p).complex, track=False).minimal)
        assert pt == un, f"basepoint {p}: {pt.render()} != {un.render()}"


def s_tilde_basepoint_independent(d):
    if not d.is_knot:
        return None
    values = {}
    for s in all_symmetries(d):
        for p in sorted(s.fixed_edges):
            bn = build_reduced_pointed(d, p)
            build_tau(bn, s, check=False)
            mb = borel.minimal_borel(bn.complex).minimal
            values[(s.k, p)] = s_tilde(mb)
        per_k = {v for (k, _), v in values.items() if k == s.k}
        assert len(per_k) <= 1, f"s-tilde depends on the basepoint for k={s.k}: {values}"
    return values


def free_ranks(d):
    comps = d.n_components
    un = graded_smith(simplify(build_unreduced(d).complex, track=False).minimal)
    assert len(un.free_gens) == 2 ** comps, f"unreduced free rank {len(un.free_gens)}"
    red = graded_smith(simplify(build_reduced_pointed(d, 1).complex, track=False).minimal)
    assert len(red.free_gens) == 2 ** (comps - 1), f"reduced free rank {len(red.free_gens)}"


def is_u_nontorsion_cycle(c, chain, r=None) -> bool:
    """A cycle of an F2[u]-complex whose class survives inverting u."""
    if apply(c.d, chain):
        return False
    if r is None:
        r = simplify(c, track=True)
    img = apply(r.f, chain)
    if not img:
        return False
    mn = r.minimal
    h = mn.h[next(iter(img))]
    deg = [g for g in range(mn.n) if mn.h[g] == h]
    pos = {g: i for i, g in enumerate(deg)}
    e = Echelon()
    for g in range(mn.n):
        if mn.h[g] == h - 1:
            v = 0
            for y in mn.d[g]:
                v ^= 1 << pos[y]
            e.add(v)
    v = 0
    for g in img:
        v ^= 1 << pos[g]
    return not e.contains(v)


def canonical_generators_nontorsion(d):
    """Every orientation's canonical chain is a u-nontorsion cycle."""
    bn = build_unreduced(d)
    r = simplify(bn.complex, track=True)
    comps = range(d.n_components)
    for k in range(d.n_components + 1):
        for rev in combinations(comps, k):
            chain = canonical_generator(bn, frozenset(rev))
            assert is_u_nontorsion_cycle(bn.complex, chain, r), f"orientation reversing {rev}"


def grid_monotone(d, a_max: int = 3, b_max: int = 4):
    if not d.is_knot:
        return None
    s = all_symmetries(d)
    if not s:
        return None
    bn = build_reduced_pointed(d, min(s[0].fixed_edges))
    build_tau(bn, s[0], check=False)
    mb = borel.minimal_borel(bn.complex).minimal
    grid = borel.s_q_grid(mb, a_max, b_max, check=False)
    for (A, B), v in grid.items():
        if (A + 1, B) in grid:
            assert grid[(A + 1, B)] >= v, f"not monotone in A at {(A, B)}"
        for (A2, B2), w in grid.items():
            if A2 == A and B2 > B:
                assert w <= v, f"not monotone in B at {(A, B)}"
    return grid


def _convolve(a: dict, b: dict) -> dict:
    out: dict = {}
    for (h1, q1), x in a.items():
        for (h2, q2), y in b.items():
            key = (h1 + h2, q1 + q2)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def kunneth(c1, c2):
    """dim H(C1 x C2 / u) is the convolution of the factors' dimensions."""
    t = tensor(c1, c2, endo="")
    got = {k: v for k, v in u_zero_homology_dims(t).items() if v}
    want = _convolve({k: v for k, v in u_zero_homology_dims(c1).items() if v},
                     {k: v for k, v in u_zero_homology_dims(c2).items() if v})
    assert got == want, f"{got} != {want}"
