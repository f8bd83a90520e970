"""Bar-Natan complexes over F2[u] from the cube of resolutions.

Frobenius algebra F2[u][x]/(x^2 = ux):
    m(1 1) = 1, m(1 x) = m(x 1) = x, m(x x) = ux
    D(1) = 1 x + x 1 + u 1 1, D(x) = x x
Generators at a vertex are labelings of its circles; bit i of a labeling
mask is set when circle i carries x.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import FreeComplex
from .diagram import PdDiagram, PdError, circle_labels, oriented_vertex


@dataclass
class Cube:
    """Circle data for every vertex of the cube of resolutions."""

    diagram: PdDiagram
    labels: list[list[int]]           # vertex -> edge -> circle index
    n_circles: list[int]

    @classmethod
    def of(cls, d: PdDiagram) -> "Cube":
        if d.n_crossings == 0:
            return cls(d, [[0]], [1])
        labels = [circle_labels(d, v) for v in range(1 << d.n_crossings)]
        return cls(d, labels, [max(lab[1:]) + 1 for lab in labels])

    def circle_of(self, v: int, edge: int) -> int:
        return self.labels[v][edge] if self.diagram.n_crossings else 0

    def edge_map(self, v: int, c: int):
        """Circle correspondence along the cube edge v -> v + e_c.

        Returns (kind, perm, touched, split_source) where perm sends circles
        of v to circles of the target and ``touched`` lists the circles
        involved (two source circles for a merge, two target circles for a
        split).
        """
        d = self.diagram
        w = v | (1 << c)
        a, b, cc, dd = d.crossings[c]
        src, tgt = self.labels[v], self.labels[w]
        perm = [0] * self.n_circles[v]
        for e in range(1, d.n_edges + 1):
            perm[src[e]] = tgt[e]
        s1, s2 = src[a], src[cc]
        if s1 != s2:
            return "merge", perm, (s1, s2), None
        return "split", perm, (tgt[a], tgt[b]), s1


def _degree_shift(d: PdDiagram):
    return d.n_plus - 2 * d.n_minus


def _bits(m):
    return bin(m).count("1")


def _build(d: PdDiagram, base_circle=None, cube: Cube | None = None):
    """Unreduced complex, or the pointed subcomplex if ``base_circle`` is given.

    ``base_circle`` is an edge label; the circle containing it is forced to
    carry x.
    """
    cube = cube or Cube.of(d)
    nc = d.n_crossings
    shift = _degree_shift(d)
    index: dict[tuple[int, int], int] = {}
    h, q, vert, masks = [], [], [], []
    for v in range(1 << nc):
        m = cube.n_circles[v]
        pv = _bits(v)
        forced = 0 if base_circle is None else 1 << cube.circle_of(v, base_circle)
        for mask in range(1 << m):
            if mask & forced != forced:
                continue
            index[(v, mask)] = len(h)
            nx = _bits(mask)
            h.append(pv - d.n_minus)
            q.append(m - 2 * nx + pv + shift)
            vert.append(v)
            masks.append(mask)
    out: list[list[int]] = [[] for _ in h]
    for v in range(1 << nc):
        for c in range(nc):
            if (v >> c) & 1:
                continue
            w = v | (1 << c)
            kind, perm, (i, j), split_src = cube.edge_map(v, c)
            m = cube.n_circles[v]
            forced = 0 if base_circle is None else 1 << cube.circle_of(v, base_circle)
            for mask in range(1 << m):
                if mask & forced != forced:
                    continue
                src = index[(v, mask)]
                img = 0
                for t in range(m):
                    if (mask >> t) & 1:
                        img |= 1 << perm[t]
                if kind == "merge":
                    out[src].append(index[(w, img)])
                else:
                    if (mask >> split_src) & 1:
                        out[src].append(index[(w, img | (1 << i) | (1 << j))])
                    else:
                        out[src].extend(index[(w, img | bit)] for bit in (1 << i, 1 << j, 0))
    return FreeComplex(h, q, out), vert, masks, index, cube


@dataclass
class BnComplex:
    """A Bar-Natan complex with its generator bookkeeping."""

    complex: FreeComplex
    vertex: list[int]
    mask: list[int]
    index: dict
    cube: Cube
    diagram: PdDiagram
    basepoint: int | None = None
    kind: str = "unreduced"


def build_unreduced(d: PdDiagram) -> BnComplex:
    c, vert, masks, index, cube = _build(d)
    return BnComplex(c, vert, masks, index, cube, d)


def build_reduced_pointed(d: PdDiagram, p: int | None = None, cube: Cube | None = None) -> BnComplex:
    """Subcomplex with the circle through edge ``p`` labeled x, q shifted by +1."""
    if d.n_crossings == 0:
        p = p or 1
    elif p is None:
        p = 1
    if d.n_crossings and not 1 <= p <= d.n_edges:
        raise PdError(f"basepoint {p} is not an edge label")
    c, vert, masks, index, cube = _build(d, base_circle=p if d.n_crossings else None, cube=cube)
    if d.n_crossings == 0:
        keep = [i for i, m in enumerate(masks) if m == 1]
        c = FreeComplex([c.h[i] for i in keep], [c.q[i] for i in keep], [[] for _ in keep])
        vert, masks = [vert[i] for i in keep], [masks[i] for i in keep]
        index = {(0, 1): 0}
    c.q = [x + 1 for x in c.q]
    return BnComplex(c, vert, masks, index, cube, d, basepoint=p, kind="pointed")


def build_reduced_unpointed(d: PdDiagram) -> BnComplex:
    """Basepoint-free reduced complex.

    At a vertex with circles 0..m-1 the basis is y_S = prod_{i in S}(x_0 + x_i)
    for S a subset of {1..m-1}.  Merges relabel; splits relabel and multiply
    by x_b + x_c + u.  Computations run in the algebra at u = 1, where
    x_T x_T' = x_{T u T'}; homogeneity restores the powers of u.  The
    y-coordinates of an element are its coefficients on the x_T with 0 not in T.
    """
    cube = Cube.of(d)
    nc = d.n_crossings
    shift = _degree_shift(d)
    index = {}
    h, q, vert, masks = [], [], [], []
    for v in range(1 << nc):
        m = cube.n_circles[v]
        for s in range(0, 1 << m, 2):
            index[(v, s)] = len(h)
            h.append(_bits(v) - d.n_minus)
            q.append(m - 2 * _bits(s) + _bits(v) + shift - 1)
            vert.append(v)
            masks.append(s)
    out: list[list[int]] = [[] for _ in h]
    expand_cache: dict[int, set[int]] = {}

    def expand(s):
        # y_S at u = 1 as a set of subsets T
        if s not in expand_cache:
            terms = {0}
            for i in range(1, s.bit_length()):
                if (s >> i) & 1:
                    nxt = set()
                    for t in terms:
                        for f in (t | 1, t | (1 << i)):
                            nxt ^= {f}
                    terms = nxt
            expand_cache[s] = terms
        return expand_cache[s]

    for v in range(1 << nc):
        m = cube.n_circles[v]
        for c in range(nc):
            if (v >> c) & 1:
                continue
            w = v | (1 << c)
            kind, perm, (i, j), _ = cube.edge_map(v, c)
            for s in range(0, 1 << m, 2):
                img: set[int] = set()
                for t in expand(s):
                    r = 0
                    for b in range(m):
                        if (t >> b) & 1:
                            r |= 1 << perm[b]
                    if kind == "merge":
                        img ^= {r}
                    else:
                        for f in (r | (1 << i), r | (1 << j), r):
                            img ^= {f}
                src = index[(v, s)]
                out[src].extend(index[(w, t)] for t in sorted(img) if not t & 1)
    return BnComplex(FreeComplex(h, q, out), vert, masks, index, cube, d, kind="unpointed")


def canonical_generator(bn: BnComplex, reverse: frozenset[int] | set[int] = frozenset()):
    """The chain s_o in the unreduced complex for an orientation.

    ``reverse`` holds indices of components whose orientation is flipped
    relative to the PD numbering.  Circles of the oriented resolution are
    labeled x when a black region lies to their left, else x + u, with the
    unbounded region white.  Returned as a set of generator indices (the
    u-powers are implied by the gradings).
    """
    from .planar import circle_left_colours

    d = bn.diagram
    if d.n_crossings == 0:
        # unknot: the chains x and x + u
        lab_x = bn.index[(0, 1)]
        return {lab_x} if not reverse else {lab_x, bn.index[(0, 0)]}
    comp_of = {}
    for ci, comp in enumerate(d.components):
        for e in comp:
            comp_of[e] = ci
    flip = _flipped_signs(d, reverse, comp_of)
    v = sum(1 << i for i, s in enumerate(flip) if s < 0)
    left_black = circle_left_colours(d, v, reverse, comp_of)
    cube = bn.cube
    m = cube.n_circles[v]
    chain = {0}
    for circle in range(m):
        bit = 1 << circle
        if left_black[circle]:
            chain = {t | bit for t in chain}
        else:
            nxt = set()
            for t in chain:
                nxt ^= {t | bit}
                nxt ^= {t}
            chain = nxt
    return {bn.index[(v, t)] for t in chain}


def _flipped_signs(d, reverse, comp_of):
    out = []
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        # reversing exactly one strand of a crossing flips its sign
        if (comp_of[a] in reverse) != (comp_of[b] in reverse):
            s = -s
        out.append(s)
    return out


__all__ = [
    "BnComplex",
    "Cube",
    "build_unreduced",
    "build_reduced_pointed",
    "build_reduced_unpointed",
    "canonical_generator",
    "oriented_vertex",
]
