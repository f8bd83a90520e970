"""The axis grading deg_k, the (Q, W)-complex and its dimension data.

Half-integers are stored doubled (``k2 = 2 deg_k``).  A generator g of the
(Q, W)-complex spans u^a Q^b W^w g in trigrading
(h + b, q - 2a, k2 - w); every structure map is then an inclusion of index
sets, so the homology at each trigrading is plain F2 linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .barnatan import BnComplex
from .borel import assemble_borel
from .complex import FreeComplex
from .diagram import CrossingClass, PdDiagram, SymmetryAction, classify_crossings
from .f2 import Echelon, kernel


@dataclass(frozen=True)
class KGrading:
    """Doubled o(c), u(c) per crossing and doubled deg_k per vertex."""

    o2: tuple[int, ...]
    u2: tuple[int, ...]
    oriented_bit: tuple[int, ...]    # the resolution bit that smooths c in the oriented way
    k2: tuple[int, ...]

    def deg_k(self, v: int) -> float:
        return self.k2[v] / 2


def crossing_weights(cls: CrossingClass, sign: int) -> tuple[int, int]:
    """Doubled (o(c), u(c)) for a crossing of the given class and sign."""
    if cls is CrossingClass.OFF_AXIS:
        return 0, sign
    if cls is CrossingClass.ON_AXIS_REVERSING:
        return 0, 2 * sign
    return -sign, sign


def k_grading(d: PdDiagram, s: SymmetryAction, signs=None) -> KGrading:
    """deg_k of every vertex for the orientation given by ``signs``.

    ``signs`` defaults to the diagram's own crossing signs.  The 0-smoothing
    of a positive crossing is the oriented one, and the 1-smoothing of a
    negative crossing.
    """
    signs = tuple(signs if signs is not None else d.signs)
    nc = d.n_crossings
    classes = classify_crossings(d, s) if nc else []
    o2, u2, obit = [], [], []
    for c in range(nc):
        o, u = crossing_weights(classes[c], signs[c])
        o2.append(o)
        u2.append(u)
        obit.append(0 if signs[c] > 0 else 1)
    k2 = []
    for v in range(1 << nc):
        t = 0
        for c in range(nc):
            t += o2[c] if ((v >> c) & 1) == obit[c] else u2[c]
        k2.append(t)
    return KGrading(tuple(o2), tuple(u2), tuple(obit), tuple(k2))


def attach_k_grading(bn: BnComplex, kg: KGrading) -> FreeComplex:
    """Give every generator the deg_k of its vertex; returns the complex."""
    bn.complex.k2 = [kg.k2[v] for v in bn.vertex]
    return bn.complex


def build_qw(c: FreeComplex, tau=None) -> FreeComplex:
    """The (Q, W)-complex: the Borel complex with W-powers from deg_k.

    Raises if some entry lowers deg_k, which would need a negative W-power.
    """
    if c.k2 is None:
        raise ValueError("complex carries no deg_k grading")
    b = assemble_borel(c, tau)
    for x, outs in enumerate(b.d):
        for y in outs:
            if b.k2[y] < b.k2[x]:
                raise ValueError(
                    f"differential lowers deg_k from {b.k2[x] / 2} to {b.k2[y] / 2}")
    b.check()
    return b


def forget_w(b: FreeComplex) -> FreeComplex:
    return FreeComplex(list(b.h), list(b.q), [list(o) for o in b.d], qvar=b.qvar,
                       endos=dict(b.endos), names=b.names)


class _Cells:
    """Chain groups of a (Q, W)-complex at individual trigradings."""

    def __init__(self, b: FreeComplex):
        self.b = b
        self._cache = {}

    def basis(self, H, q, k2):
        b = self.b
        return [g for g in range(b.n)
                if b.h[g] <= H and b.q[g] >= q and (b.q[g] - q) % 2 == 0 and b.k2[g] >= k2]

    def data(self, H, q, k2):
        key = (H, q, k2)
        if key not in self._cache:
            src = self.basis(H, q, k2)
            tgt = self.basis(H + 1, q, k2)
            tp = {g: i for i, g in enumerate(tgt)}
            cols = []
            for g in src:
                v = 0
                for y in self.b.d[g]:
                    v ^= 1 << tp[y]
                cols.append(v)
            cyc = [_lift(z, src) for z in kernel(cols)]
            self._cache[key] = (src, cyc, tp, cols)
        return self._cache[key]

    def boundaries(self, H, q, k2):
        """Image of d from the cell below, in the coordinates of basis(H, q, k2)."""
        _, _, tp, cols = self.data(H - 1, q, k2)
        return cols, tp

    def homology_dim(self, H, q, k2) -> int:
        _, cyc, _, _ = self.data(H, q, k2)
        bnd, _ = self.boundaries(H, q, k2)
        e = Echelon()
        for v in bnd:
            e.add(v)
        return len(cyc) - len(e)

    def induced_rank(self, src_cell, tgt_cell) -> int:
        """Rank on homology of the inclusion src_cell -> tgt_cell (u, Q or W)."""
        _, cyc, _, _ = self.data(*src_cell)
        bnd, tp = self.boundaries(*tgt_cell)
        e = Echelon()
        for v in bnd:
            e.add(v)
        base = len(e)
        for z in cyc:
            v = 0
            for g in z:
                v ^= 1 << tp[g]
            e.add(v)
        return len(e) - base


def _lift(z: int, src):
    return [g for i, g in enumerate(src) if (z >> i) & 1]


@dataclass
class QwDimensionData:
    """dim H and the ranks of u, Q, W on H at every trigrading of a box.

    Keys are (h, q, k2); the ``u``/``Q``/``W`` maps start at the key.
    """

    dims: dict
    u_rank: dict
    q_rank: dict
    w_rank: dict

    def to_json(self) -> dict:
        def enc(m):
            return [{"h": h, "q": q, "k": k2 / 2, "value": v}
                    for (h, q, k2), v in sorted(m.items()) if v]
        return {"dims": enc(self.dims), "u_rank": enc(self.u_rank),
                "Q_rank": enc(self.q_rank), "W_rank": enc(self.w_rank)}


def qw_dimension_data(b: FreeComplex, h_range, q_range, k2_range) -> QwDimensionData:
    """Exact per-trigrading data inside the box (inclusive ranges)."""
    if b.k2 is None:
        raise ValueError("expected a (Q, W)-complex")
    cells = _Cells(b)
    dims, ur, qr, wr = {}, {}, {}, {}
    for H in range(h_range[0], h_range[1] + 1):
        for q in range(q_range[0], q_range[1] + 1):
            for k2 in range(k2_range[0], k2_range[1] + 1):
                key = (H, q, k2)
                dims[key] = cells.homology_dim(*key)
                ur[key] = cells.induced_rank(key, (H, q - 2, k2))
                qr[key] = cells.induced_rank(key, (H + 1, q, k2))
                wr[key] = cells.induced_rank(key, (H, q, k2 - 1))
    return QwDimensionData(dims, ur, qr, wr)


@dataclass(frozen=True)
class CyclicSummand:
    """F[u,Q,W]/(W^w_order) shifted to (h, q, k2); ``w_order`` None means free."""

    h: int
    q: int
    k2: int
    w_order: int | None = None

    def alive(self, H, q, k2) -> bool:
        if H < self.h or q > self.q or (self.q - q) % 2 or k2 > self.k2:
            return False
        return self.w_order is None or self.k2 - k2 < self.w_order


def model_dimension_data(summands, h_range, q_range, k2_range) -> QwDimensionData:
    """Dimension function and structure-map ranks of a sum of cyclic modules."""
    dims, ur, qr, wr = {}, {}, {}, {}
    for H in range(h_range[0], h_range[1] + 1):
        for q in range(q_range[0], q_range[1] + 1):
            for k2 in range(k2_range[0], k2_range[1] + 1):
                key = (H, q, k2)
                live = [s for s in summands if s.alive(*key)]
                dims[key] = len(live)
                ur[key] = sum(s.alive(H, q - 2, k2) for s in live)
                qr[key] = sum(s.alive(H + 1, q, k2) for s in live)
                wr[key] = sum(s.alive(H, q, k2 - 1) for s in live)
    return QwDimensionData(dims, ur, qr, wr)


def w_inverted_dims(b: FreeComplex, h_range, q_range) -> dict:
    """dim of W^{-1} H per (h, q): the data far below every generator in k."""
    k2 = min(b.k2) - 2 if b.n else 0
    cells = _Cells(b)
    out = {}
    for H in range(h_range[0], h_range[1] + 1):
        for q in range(q_range[0], q_range[1] + 1):
            out[(H, q)] = cells.homology_dim(H, q, k2)
    return out


def kinked_unknot() -> PdDiagram:
    """One-crossing unknot diagram with its kink on the symmetry axis."""
    from .diagram import parse_pd

    return parse_pd("[1,1,2,2]")
