"""The diagrammatic involution tau, its action on homology, and s-tilde."""

from __future__ import annotations

from dataclasses import dataclass

from . import borel
from .barnatan import BnComplex
from .complex import FreeComplex, compose, identity, simplify, transfer_endo
from .diagram import SymmetryAction
from .f2 import Echelon, kernel, preimage


@dataclass
class TauData:
    tau: list[list[int]]
    strict_involution: bool = True


def build_tau(bn: BnComplex, s: SymmetryAction, check: bool = True) -> TauData:
    """tau sends (v, labeling) to (sigma(v), labeling carried along the circles)."""
    d = bn.diagram
    cube = bn.cube
    nc = d.n_crossings
    if nc == 0:
        tau = identity(bn.complex.n)
        bn.complex.endos["tau"] = tau
        return TauData(tau)
    if bn.kind == "unpointed":
        raise ValueError("tau is built on the unreduced or pointed complex")
    if bn.basepoint is not None and s.edge(bn.basepoint) != bn.basepoint:
        raise ValueError(f"basepoint {bn.basepoint} is not a fixed edge of the symmetry")
    perm = s.crossing_perm
    vmap = []
    for v in range(1 << nc):
        w = 0
        for c in range(nc):
            if (v >> c) & 1:
                w |= 1 << perm[c]
        vmap.append(w)
    circle_map = {}
    tau = []
    for i in range(bn.complex.n):
        v, mask = bn.vertex[i], bn.mask[i]
        w = vmap[v]
        if v not in circle_map:
            lab, lab_w = cube.labels[v], cube.labels[w]
            cm = [0] * cube.n_circles[v]
            for e in range(1, d.n_edges + 1):
                cm[lab[e]] = lab_w[s.edge(e)]
            circle_map[v] = cm
        cm = circle_map[v]
        img = 0
        for t in range(len(cm)):
            if (mask >> t) & 1:
                img |= 1 << cm[t]
        j = bn.index.get((w, img))
        if j is None:
            raise ValueError("tau does not preserve this complex")
        tau.append([j])
    c = bn.complex
    c.endos["tau"] = tau
    if check:
        if compose(tau, tau) != identity(c.n):
            raise AssertionError("tau is not an involution")
        if compose(c.d, tau) != compose(tau, c.d):
            raise AssertionError("tau is not a chain map")
        if any(c.h[t[0]] != c.h[i] or c.q[t[0]] != c.q[i] for i, t in enumerate(tau)):
            raise AssertionError("tau does not preserve gradings")
    return TauData(tau)


def tau_star_table(minimal_borel: FreeComplex):
    """{(h, q): (dim E1, dim ker(1 + tau_*))} from a minimal Borel complex.

    The Q^1 u^0 part of the minimal Borel differential is 1 + tau_* on the
    E1 page.
    """
    t = borel.q1_mod_u(minimal_borel)
    blocks: dict[tuple[int, int], list[int]] = {}
    for i in range(minimal_borel.n):
        blocks.setdefault((minimal_borel.h[i], minimal_borel.q[i]), []).append(i)
    table = {}
    for key, members in sorted(blocks.items()):
        pos = {g: k for k, g in enumerate(members)}
        cols = []
        for g in members:
            v = 0
            for y in t[g]:
                v ^= 1 << pos[y]
            cols.append(v)
        table[key] = (len(members), len(kernel(cols)))
    return table


def tau_star_e1(r, name="tau"):
    """Induced map on H(C/u) as adjacency lists on the minimal model."""
    t = transfer_endo(r, name)
    mn = r.minimal
    return [[y for y in o if mn.q[y] == mn.q[x]] for x, o in enumerate(t)]


def s_tilde(minimal_borel: FreeComplex) -> int:
    """s-tilde read off as the top slice of C_Q / Q^2 in degree 0."""
    return borel.s_q(minimal_borel, 0, 2)


def s_tilde_direct(mn: FreeComplex, tau_min) -> int:
    """s-tilde by direct search for tau_*-fixed nontorsion classes.

    ``mn`` is a minimal model over F2[u] and ``tau_min`` a chain map on it
    inducing tau_* (for instance f tau g).  At bigrading (0, i) the chains are
    u^a g with h(g) = 0 and q(g) - 2a = i; because everything is homogeneous
    we may work with the underlying generator sets.
    """
    deg0 = [g for g in range(mn.n) if mn.h[g] == 0]
    degm1 = [g for g in range(mn.n) if mn.h[g] == -1]
    deg1 = set(g for g in range(mn.n) if mn.h[g] == 1)
    p0 = {g: k for k, g in enumerate(deg0)}
    # localized boundaries: image of d at u = 1 from degree -1
    loc = Echelon()
    for g in degm1:
        v = 0
        for y in mn.d[g]:
            v ^= 1 << p0[y]
        loc.add(v)
    s = s_of_minimal(mn)
    top = max(mn.q[g] for g in deg0)
    i = s
    while i >= s - 2 * (top - min(mn.q[g] for g in deg0) + 2) - 4:
        chains = [g for g in deg0 if mn.q[g] >= i and (mn.q[g] - i) % 2 == 0]
        if chains:
            pos = {g: k for k, g in enumerate(chains)}
            n = len(chains)
            # cycles
            dcols = []
            for g in chains:
                v = 0
                for y in mn.d[g]:
                    if y in deg1:
                        v ^= 1 << _key(y)
                dcols.append(v)
            cyc = kernel(dcols)
            # boundaries at (0, i) from (-1, i)
            src = [g for g in degm1 if mn.q[g] >= i and (mn.q[g] - i) % 2 == 0]
            bnd = []
            for g in src:
                v = 0
                for y in mn.d[g]:
                    if y in pos:
                        v ^= 1 << pos[y]
                bnd.append(v)
            # (1 + tau) on chains
            tcols = []
            for g in chains:
                v = 1 << pos[g]
                for y in tau_min[g]:
                    if y in pos:
                        v ^= 1 << pos[y]
                tcols.append(v)
            fixed = preimage(tcols, bnd, n)
            good = _intersect(cyc, fixed)
            for z in good:
                full = 0
                for k, g in enumerate(chains):
                    if (z >> k) & 1:
                        full ^= 1 << p0[g]
                if not loc.contains(full):
                    return i
        i -= 2
    raise AssertionError("no tau-invariant nontorsion class found")


def _key(y):
    return y


def _intersect(a, b):
    from .f2 import intersect

    return intersect(a, b)


def invariant_surviving_class(mb: FreeComplex, s: int | None = None) -> bool:
    """Is there a tau_*-fixed E1 class at (0, s) that survives to E-infinity?

    ``mb`` is a minimal Borel complex.  A class z of E1 at (0, s) survives
    when some cycle of the minimal model at (0, s) has leading term z and a
    u-nontorsion homology class; since s is the top of the free tower, every
    nontorsion cycle there has a nonzero leading term.
    """
    parts = borel.q_parts(mb)
    d0 = parts.get(0, [[] for _ in range(mb.n)])
    mn = FreeComplex(mb.h, mb.q, d0)
    if s is None:
        s = s_of_minimal(mn)
    t1 = borel.q1_mod_u(mb)
    chains = [g for g in range(mn.n) if mn.h[g] == 0 and mn.q[g] >= s and (mn.q[g] - s) % 2 == 0]
    lead = [g for g in chains if mn.q[g] == s]
    lpos = {g: k for k, g in enumerate(lead)}
    deg1 = sorted({y for g in chains for y in mn.d[g]})
    p1 = {y: k for k, y in enumerate(deg1)}
    # columns of [d | (1 + tau_*) o leading part], so that the kernel is
    # the space of cycles whose leading term is tau_*-fixed
    shift = len(deg1)
    cols = []
    for g in chains:
        v = 0
        for y in mn.d[g]:
            v ^= 1 << p1[y]
        if g in lpos:
            w = 0
            for y in t1[g]:  # already 1 + tau_*
                if y in lpos:
                    w ^= 1 << lpos[y]
            v |= w << shift
        cols.append(v)
    good = kernel(cols)
    deg0 = [g for g in range(mn.n) if mn.h[g] == 0]
    p0 = {g: k for k, g in enumerate(deg0)}
    loc = Echelon()
    for g in range(mn.n):
        if mn.h[g] == -1:
            v = 0
            for y in mn.d[g]:
                v ^= 1 << p0[y]
            loc.add(v)
    for z in good:
        full = 0
        for k, g in enumerate(chains):
            if (z >> k) & 1:
                full ^= 1 << p0[g]
        if not loc.contains(full):
            return True
    return False


@dataclass
class SqueezednessReport:
    s: int
    s_tilde: int

    @property
    def obstructed(self) -> bool:
        return self.s_tilde != self.s

    def to_json(self) -> dict:
        return {"s": self.s, "s_tilde": self.s_tilde, "obstructed": self.obstructed}


def squeezedness_obstruction(minimal_borel_complex: FreeComplex) -> SqueezednessReport:
    """An equivariantly squeezed knot has s-tilde equal to s."""
    s = borel.s_q(minimal_borel_complex, 0, 1)
    st = s_tilde(minimal_borel_complex)
    if st > s:
        raise AssertionError("s-tilde exceeds s")
    return SqueezednessReport(s, st)


def s_of_minimal(mn: FreeComplex) -> int:
    return borel.s_q(borel.assemble_borel(mn, identity(mn.n)), 0, 1)
