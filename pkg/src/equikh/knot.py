"""End-to-end invariants of a (symmetric) knot diagram."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import borel
from .barnatan import build_reduced_pointed, build_unreduced
from .complex import FreeComplex, simplify
from .diagram import PdDiagram, SymmetryAction, classify_crossings, detect_symmetry, mirror, symmetry_for_k
from .f2 import ModulePresentation, graded_smith
from .involutive import build_tau, invariant_surviving_class, s_tilde, tau_star_table


@dataclass
class KnotReport:
    n_crossings: int
    mirrored: bool
    reduced: bool
    symmetry: SymmetryAction | None
    basepoint: int | None
    kh: dict                        # (h, q) -> dim of the E1 page
    homology: ModulePresentation    # over F2[u]
    s: int | None
    s_tilde: int | None = None
    invariant_survivor: bool | None = None
    tau_table: dict | None = None
    grid: dict | None = None
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)
    complex: FreeComplex | None = field(default=None, repr=False)

    @property
    def max_torsion(self) -> int:
        return self.homology.max_order()

    @property
    def e2_degenerates(self) -> bool:
        return self.max_torsion <= 1

    def to_json(self) -> dict:
        sym = None
        if self.symmetry is not None:
            s = self.symmetry
            sym = {"k": s.k, "fixed_edges": sorted(s.fixed_edges),
                   "crossing_perm": list(s.crossing_perm),
                   "crossing_class": [c.value for c in s.crossing_class]}
        out = {
            "n_crossings": self.n_crossings,
            "mirrored": self.mirrored,
            "reduced": self.reduced,
            "symmetry": sym,
            "basepoint": self.basepoint,
            "kh": [{"h": h, "q": q, "dim": v} for (h, q), v in sorted(self.kh.items())],
            "homology": self.homology.to_json(),
            "max_torsion_order": self.max_torsion,
            "e2_degenerates": self.e2_degenerates,
            "s": self.s,
            "s_tilde": self.s_tilde,
            "invariant_survivor": self.invariant_survivor,
            "tau_table": None if self.tau_table is None else [
                {"h": h, "q": q, "dim": a, "ker": b} for (h, q), (a, b) in sorted(self.tau_table.items())],
            "grid": None if self.grid is None else grid_to_json(self.grid),
        }
        out.update(self.extra)
        return out


def grid_to_json(grid) -> list[dict]:
    rows = []
    for (A, B), v in sorted(grid.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        rows.append({"A": A, "B": "inf" if B == borel.INF else B, "s_q": v})
    return rows


def choose_symmetry(d: PdDiagram, k: int | None = None) -> SymmetryAction | None:
    """The symmetry with reversal parameter k, or the smallest admissible one."""
    if k is not None:
        return symmetry_for_k(d, k)
    return detect_symmetry(d)


def _kh_dims(mn: FreeComplex) -> dict:
    out: dict = {}
    for i in range(mn.n):
        key = (mn.h[i], mn.q[i])
        out[key] = out.get(key, 0) + 1
    return out


def analyze(d: PdDiagram, *, mirrored: bool = False, reduced: bool = True,
            basepoint: int | None = None, symmetry: SymmetryAction | None | str = "auto",
            grid: tuple[int, int] | None = None, check: bool = False) -> KnotReport:
    """Compute the Khovanov, s and equivariant data of a diagram.

    ``symmetry`` may be a SymmetryAction, None (skip equivariant data) or
    "auto" (smallest admissible k).  When ``mirrored`` is set the diagram is
    mirrored first and the symmetry is looked up on the mirror.
    """
    t0 = time.perf_counter()
    if mirrored:
        d = mirror(d)
    if symmetry == "auto":
        symmetry = detect_symmetry(d) if d.is_knot else None
    if symmetry is not None:
        classify_crossings(d, symmetry)
    if reduced:
        if basepoint is None:
            basepoint = min(symmetry.fixed_edges) if symmetry is not None and symmetry.fixed_edges else 1
        bn = build_reduced_pointed(d, basepoint)
    else:
        bn = build_unreduced(d)
        basepoint = None
    if check:
        bn.complex.check()
    if symmetry is None:
        mn = simplify(bn.complex, track=False).minimal
        pres = graded_smith(mn)
        rep = KnotReport(d.n_crossings, mirrored, reduced, None, basepoint, _kh_dims(mn), pres,
                         _s_from(pres, reduced) if d.is_knot else None)
        rep.complex = bn.complex
        rep.seconds = time.perf_counter() - t0
        return rep
    build_tau(bn, symmetry, check=check)
    mb = borel.minimal_borel(bn.complex).minimal
    if check:
        mb.check()
    q0 = FreeComplex(mb.h, mb.q, borel.q_parts(mb).get(0, [[] for _ in range(mb.n)]))
    pres = graded_smith(q0)
    s = _s_from(pres, reduced) if d.is_knot else None
    rep = KnotReport(d.n_crossings, mirrored, reduced, symmetry, basepoint, _kh_dims(mb), pres, s)
    rep.complex = bn.complex
    rep.tau_table = tau_star_table(mb)
    if reduced and d.is_knot:
        rep.s_tilde = s_tilde(mb)
        rep.invariant_survivor = invariant_surviving_class(mb, s)
        if grid is not None:
            rep.grid = borel.s_q_grid(mb, grid[0], grid[1])
    rep.seconds = time.perf_counter() - t0
    return rep


def _s_from(pres: ModulePresentation, reduced: bool) -> int:
    free0 = [q for h, q in pres.free_gens if h == 0]
    if reduced:
        if len(free0) != 1:
            raise borel.NotKnotlike(f"reduced homology has {len(free0)} free generators in degree 0")
        return free0[0]
    if len(free0) != 2:
        raise borel.NotKnotlike(f"unreduced homology has {len(free0)} free generators in degree 0")
    return sum(free0) // 2
