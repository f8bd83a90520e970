"""Exact linear algebra over F2 and graded Smith reduction over F2[u].

Vectors over F2 are Python ints used as bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import FreeComplex


@dataclass
class SparseF2Matrix:
    n_rows: int
    n_cols: int
    entries: set[tuple[int, int]] = field(default_factory=set)

    def columns(self) -> list[int]:
        cols = [0] * self.n_cols
        for r, c in self.entries:
            cols[c] ^= 1 << r
        return cols

    @classmethod
    def from_dense(cls, rows) -> "SparseF2Matrix":
        rows = [list(r) for r in rows]
        n_cols = len(rows[0]) if rows else 0
        ent = {(i, j) for i, r in enumerate(rows) for j, v in enumerate(r) if v % 2}
        return cls(len(rows), n_cols, ent)


class Echelon:
    """Incrementally maintained reduced basis of a subspace of F2^n."""

    def __init__(self):
        self.rows: dict[int, int] = {}     # pivot bit -> row
        self.combo: dict[int, int] = {}    # pivot bit -> which inputs were summed

    def reduce(self, v: int, combo: int = 0):
        while v:
            p = v.bit_length() - 1
            r = self.rows.get(p)
            if r is None:
                return v, combo
            v ^= r
            combo ^= self.combo[p]
        return 0, combo

    def add(self, v: int, combo: int = 0) -> bool:
        v, combo = self.reduce(v, combo)
        if not v:
            return False
        p = v.bit_length() - 1
        self.rows[p] = v
        self.combo[p] = combo
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def __len__(self):
        return len(self.rows)

    def basis(self) -> list[int]:
        return [self.rows[p] for p in sorted(self.rows)]


def f2_rank_and_bases(m: SparseF2Matrix):
    """Rank, kernel basis, image basis and pivot columns of ``m``.

    Kernel vectors are bitsets over columns; image vectors over rows.
    """
    ech = Echelon()
    kernel = []
    pivots = []
    for j, col in enumerate(m.columns()):
        v, combo = ech.reduce(col, 1 << j)
        if v:
            ech.rows[v.bit_length() - 1] = v
            ech.combo[v.bit_length() - 1] = combo
            pivots.append(j)
        else:
            kernel.append(combo)
    image = [m.columns()[j] for j in pivots]
    return len(pivots), kernel, image, pivots


def mat_vec(cols: list[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= cols[i]
        v >>= 1
        i += 1
    return out


def kernel(cols: list[int]) -> list[int]:
    """Kernel of the linear map whose j-th column is ``cols[j]``."""
    ech = Echelon()
    ker = []
    for j, col in enumerate(cols):
        v, combo = ech.reduce(col, 1 << j)
        if v:
            ech.rows[v.bit_length() - 1] = v
            ech.combo[v.bit_length() - 1] = combo
        else:
            ker.append(combo)
    return ker


def span_rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def intersect(a: list[int], b: list[int]) -> list[int]:
    """Basis of span(a) & span(b) (Zassenhaus-style via kernel)."""
    # vectors x with x = sum s_i a_i = sum t_j b_j
    cols = list(a) + list(b)
    out = Echelon()
    for comb in kernel(cols):
        v = 0
        for i, ai in enumerate(a):
            if (comb >> i) & 1:
                v ^= ai
        out.add(v)
    return out.basis()


def preimage(cols: list[int], target_basis: list[int], n: int) -> list[int]:
    """Basis of {v in F2^n : map(v) in span(target_basis)}."""
    k = len(target_basis)
    allcols = list(cols) + list(target_basis)
    out = Echelon()
    for comb in kernel(allcols):
        out.add(comb & ((1 << n) - 1))
    return out.basis()


# -- graded Smith reduction over F2[u] ---------------------------------------

@dataclass
class ModulePresentation:
    """Homology over F2[u]: free generators and u^k-torsion generators."""

    free_gens: list[tuple[int, int]]
    torsion_gens: list[tuple[tuple[int, int], int]]

    def degree(self, h: int) -> "ModulePresentation":
        return ModulePresentation(
            [g for g in self.free_gens if g[0] == h],
            [t for t in self.torsion_gens if t[0][0] == h],
        )

    def normalized(self) -> "ModulePresentation":
        return ModulePresentation(sorted(self.free_gens), sorted(self.torsion_gens))

    def __eq__(self, other):
        if not isinstance(other, ModulePresentation):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.free_gens == b.free_gens and a.torsion_gens == b.torsion_gens

    def max_order(self) -> int:
        return max((k for _, k in self.torsion_gens), default=0)

    def e1_dims(self) -> dict[tuple[int, int], int]:
        """Dimensions of the homology after setting u = 0."""
        out: dict[tuple[int, int], int] = {}
        for g in self.free_gens:
            out[g] = out.get(g, 0) + 1
        for (h, q), k in self.torsion_gens:
            out[(h, q)] = out.get((h, q), 0) + 1
            src = (h - 1, q - 2 * k)
            out[src] = out.get(src, 0) + 1
        return out

    def to_json(self) -> dict:
        n = self.normalized()
        return {
            "free": [list(g) for g in n.free_gens],
            "torsion": [{"grading": list(g), "order": k} for g, k in n.torsion_gens],
        }

    @classmethod
    def from_json(cls, data) -> "ModulePresentation":
        return cls([tuple(g) for g in data["free"]],
                   [(tuple(t["grading"]), t["order"]) for t in data["torsion"]])

    def render(self) -> str:
        parts = [f"F[u]_{{({h},{q})}}" for h, q in sorted(self.free_gens)]
        for (h, q), k in sorted(self.torsion_gens):
            power = "u" if k == 1 else f"u^{k}"
            parts.append(f"F[u]/({power})_{{({h},{q})}}")
        return " + ".join(parts) if parts else "0"


def graded_smith(c: FreeComplex, check: bool = False) -> ModulePresentation:
    """Homology of a complex over F2[u] by pivoting on lowest u-powers first.

    An entry x -> y stands for u^e with e = (q[y] - q[x]) / 2.  Pivots are
    taken in increasing e; every fill-in then has exponent >= e, so each
    pivot divides its row and column and the change of basis is legal over
    F2[u].  A pivot of exponent e >= 1 leaves a u^e-torsion class at y.
    """
    if c.qvar:
        raise ValueError("graded_smith works over F2[u]; take a Borel slice first")
    if check and any(compose_nonzero(c)):
        raise ValueError("d^2 != 0")
    n = c.n
    h, q = c.h, c.q
    out = [set(o) for o in c.d]
    inc: list[set[int]] = [set() for _ in range(n)]
    for x, o in enumerate(out):
        for y in o:
            if h[y] != h[x] + 1:
                raise ValueError("differential must have homological degree 1")
            inc[y].add(x)
    alive = [True] * n
    torsion = []
    by_exp: dict[int, list[tuple[int, int]]] = {}
    for x in range(n):
        for y in out[x]:
            by_exp.setdefault((q[y] - q[x]) // 2, []).append((x, y))
    while by_exp:
        e = min(by_exp)
        queue = by_exp.pop(e)
        queue.sort(key=lambda p: (h[p[0]], q[p[0]], p[0], p[1]))
        while queue:
            x, y = queue.pop()
            if not (alive[x] and alive[y] and y in out[x]):
                continue
            if e:
                torsion.append(((h[y], q[y]), e))
            ox = out[x] - {y}
            for z in list(inc[y]):
                if z == x:
                    continue
                oz = out[z]
                for w in ox:
                    if w in oz:
                        oz.discard(w)
                        inc[w].discard(z)
                    else:
                        oz.add(w)
                        inc[w].add(z)
                        ee = (q[w] - q[z]) // 2
                        if ee == e:
                            queue.append((z, w))
                        else:
                            by_exp.setdefault(ee, []).append((z, w))
            for a in (x, y):
                alive[a] = False
                for w in out[a]:
                    inc[w].discard(a)
                for z in inc[a]:
                    out[z].discard(a)
                out[a] = set()
                inc[a] = set()
    free = [(h[i], q[i]) for i in range(n) if alive[i]]
    return ModulePresentation(free, torsion).normalized()


def compose_nonzero(c: FreeComplex):
    from .complex import compose

    return (bool(o) for o in compose(c.d, c.d))


def u_zero_homology_dims(c: FreeComplex) -> dict[tuple[int, int], int]:
    """dim over F2 of H(C/u) per bigrading, by plain linear algebra."""
    if c.qvar:
        raise ValueError("expected a complex over F2[u]")
    blocks: dict[tuple[int, int], list[int]] = {}
    for i in range(c.n):
        blocks.setdefault((c.h[i], c.q[i]), []).append(i)
    pos = {}
    for key, members in blocks.items():
        for j, i in enumerate(members):
            pos[i] = j
    rank: dict[tuple[int, int], int] = {}
    for (hh, qq), members in blocks.items():
        tgt = (hh + 1, qq)
        cols = []
        for i in members:
            v = 0
            for y in c.d[i]:
                if c.q[y] == qq:
                    v ^= 1 << pos[y]
            cols.append(v)
        rank[(hh, qq)] = span_rank(cols)
    out = {}
    for key, members in blocks.items():
        dim = len(members) - rank[key] - rank.get((key[0] - 1, key[1]), 0)
        if dim:
            out[key] = dim
    return out
