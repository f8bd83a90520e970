"""PD codes: parsing, orientation, symmetry detection and resolutions.

Convention: a crossing ``(a, b, c, d)`` lists its four edges counterclockwise
starting at the incoming under-strand, so the under-strand runs ``a -> c``.
The crossing is positive when the over-strand runs ``d -> b``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

UNKNOT_TOKEN = "unknot0"


class PdError(ValueError):
    """Raised for malformed or inconsistent PD input."""


class CrossingClass(enum.Enum):
    OFF_AXIS = "OffAxis"
    ON_AXIS_PRESERVING = "OnAxisPreserving"
    ON_AXIS_REVERSING = "OnAxisReversing"


@dataclass(frozen=True)
class PdDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    n_edges: int
    successor: dict[int, int] = field(compare=False, repr=False)
    signs: tuple[int, ...]
    components: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def is_knot(self) -> bool:
        return len(self.components) == 1

    def to_text(self) -> str:
        if not self.crossings:
            return UNKNOT_TOKEN
        return ",".join("[" + ",".join(map(str, c)) + "]" for c in self.crossings)


@dataclass(frozen=True)
class SymmetryAction:
    k: int
    n_edges: int
    crossing_perm: tuple[int, ...]
    fixed_edges: frozenset[int]
    crossing_class: tuple[CrossingClass, ...]

    def edge(self, i: int) -> int:
        return ((self.k - i) % self.n_edges) + 1 if self.n_edges else i

    @property
    def on_axis(self) -> list[int]:
        return [c for c, p in enumerate(self.crossing_perm) if p == c]


@dataclass(frozen=True)
class Resolution:
    vertex: tuple[int, ...]
    circles: tuple[tuple[int, ...], ...]

    @property
    def n_circles(self) -> int:
        return len(self.circles)


_TUPLE_RE = re.compile(r"\[([^\[\]]*)\]")


def parse_pd(text: str) -> PdDiagram:
    """Parse a PD code such as ``[1,4,2,5],[3,6,4,1],[5,2,6,3]``.

    Accepts an optional ``PD[...]``/``X[...]`` wrapper and the token
    ``unknot0`` for the crossingless unknot.
    """
    s = text.strip()
    if s == UNKNOT_TOKEN:
        return make_diagram([])
    s = re.sub(r"\s+", "", s)
    s = re.sub(r"^PD\[(.*)\]$", r"\1", s)
    s = s.replace("X[", "[")
    if s.startswith("[[") and s.endswith("]]"):
        s = s[1:-1]
    tuples = _TUPLE_RE.findall(s)
    rest = _TUPLE_RE.sub("", s).replace(",", "")
    if not tuples or rest:
        raise PdError(f"cannot parse PD code: {text!r}")
    crossings = []
    for t in tuples:
        try:
            vals = tuple(int(x) for x in t.split(","))
        except ValueError as exc:
            raise PdError(f"non-integer entry in [{t}]") from exc
        if len(vals) != 4 or min(vals) < 1:
            raise PdError(f"crossing [{t}] must have 4 positive labels")
        crossings.append(vals)
    return make_diagram(crossings)


def make_diagram(crossings) -> PdDiagram:
    """Validate crossings and derive orientation and signs."""
    crossings = tuple(tuple(int(x) for x in c) for c in crossings)
    if not crossings:
        return PdDiagram((), 0, {}, (), ((),))
    n_edges = 2 * len(crossings)
    counts: dict[int, int] = {}
    for c in crossings:
        for e in c:
            counts[e] = counts.get(e, 0) + 1
    if sorted(counts) != list(range(1, n_edges + 1)):
        raise PdError(f"edge labels must be exactly 1..{n_edges}")
    bad = [e for e, m in counts.items() if m != 2]
    if bad:
        raise PdError(f"edge labels {sorted(bad)} do not appear exactly twice")

    # components: edges joined through crossings along strands
    parent = list(range(n_edges + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    groups: dict[int, list[int]] = {}
    for e in range(1, n_edges + 1):
        groups.setdefault(find(e), []).append(e)
    comps = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    successor = {}
    for g in comps:
        if g != list(range(g[0], g[-1] + 1)):
            raise PdError(f"component edges {g} are not consecutively numbered")
        for e in g:
            successor[e] = e + 1 if e < g[-1] else g[0]

    for a, b, c, d in crossings:
        if successor[a] != c:
            raise PdError(f"under-strand of [{a},{b},{c},{d}] is not oriented a->c")

    # heads[e] is True once we know edge e enters the crossing at that slot
    signs: list[int | None] = [None] * len(crossings)
    unresolved = []
    for i, (a, b, c, d) in enumerate(crossings):
        fwd = successor[d] == b
        bwd = successor[b] == d
        if fwd and not bwd:
            signs[i] = 1
        elif bwd and not fwd:
            signs[i] = -1
        elif not fwd and not bwd:
            raise PdError(f"over-strand of [{a},{b},{c},{d}] is not consecutive")
        else:
            unresolved.append(i)
    # two-edge components: each edge has one head slot and one tail slot
    while unresolved:
        progress = False
        for i in list(unresolved):
            a, b, c, d = crossings[i]
            other = _other_slot_is_head(crossings, signs, i, b)
            if other is None:
                continue
            # if b's other slot is its head, b leaves here: over runs d -> b
            signs[i] = 1 if other else -1
            unresolved.remove(i)
            progress = True
        if not progress:
            raise PdError("cannot orient the over-strands of a two-edge component")
    return PdDiagram(crossings, n_edges, successor, tuple(signs), tuple(tuple(g) for g in comps))


def _slot_is_head(crossing, sign, pos):
    """True/False if the edge at ``pos`` enters the crossing; None if unknown."""
    if pos == 0:
        return True
    if pos == 2:
        return False
    if sign is None:
        return None
    # positive: over runs d -> b, so d enters
    return (pos == 3) if sign > 0 else (pos == 1)


def _other_slot_is_head(crossings, signs, i, edge):
    seen_here = False
    for j, c in enumerate(crossings):
        for pos, e in enumerate(c):
            if e != edge:
                continue
            if j == i and pos == 1 and not seen_here:
                seen_here = True
                continue
            return _slot_is_head(c, signs[j], pos)
    return None


def mirror(d: PdDiagram) -> PdDiagram:
    """Mirror image: each crossing re-rooted at its incoming over-edge."""
    out = []
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        out.append((dd, a, b, c) if s > 0 else (b, c, dd, a))
    # orientation carries over; re-deriving it fails when a two-edge
    # component becomes the over-strand at both of its crossings
    return PdDiagram(tuple(out), d.n_edges, dict(d.successor), tuple(-s for s in d.signs), d.components)


def _image_tuple(c, sign, sigma, reversing=True):
    a, b, cc, d = (sigma(x) for x in c)
    # the over-strand's outgoing edge becomes the incoming under-edge
    # of the image crossing, and the cyclic order flips
    if (sign > 0) == reversing:
        return (b, a, d, cc)
    return (d, cc, b, a)


def symmetry_for_k(d: PdDiagram, k: int) -> SymmetryAction | None:
    """Return the symmetry with reversal parameter ``k`` if the code admits it."""
    if not d.is_knot:
        raise PdError("symmetry detection is defined for knots only")
    n = d.n_edges
    if n == 0:
        return SymmetryAction(1, 0, (), frozenset(), ())
    if k % 2 == 0:
        return None

    def sigma(i):
        return ((k - i) % n) + 1

    index = {c: i for i, c in enumerate(d.crossings)}
    perm = []
    classes = []
    for i, (c, s) in enumerate(zip(d.crossings, d.signs)):
        img = _image_tuple(c, s, sigma, reversing=True)
        j = index.get(img)
        if j is None:
            return None
        perm.append(j)
    if any(perm[perm[i]] != i for i in range(len(perm))):
        return None
    for i, j in enumerate(perm):
        classes.append(CrossingClass.ON_AXIS_REVERSING if i == j else CrossingClass.OFF_AXIS)
    fixed = frozenset(i for i in range(1, n + 1) if sigma(i) == i)
    return SymmetryAction(k, n, tuple(perm), fixed, tuple(classes))


def all_symmetries(d: PdDiagram) -> list[SymmetryAction]:
    if d.n_edges == 0:
        return [symmetry_for_k(d, 1)]
    found = []
    for k in range(1, d.n_edges + 1, 2):
        s = symmetry_for_k(d, k)
        if s is not None:
            found.append(s)
    return found


def detect_symmetry(d: PdDiagram) -> SymmetryAction | None:
    """Smallest admissible ``k`` whose label reversal is a strong inversion."""
    found = all_symmetries(d)
    return found[0] if found else None


def classify_crossings(d: PdDiagram, s: SymmetryAction) -> list[CrossingClass]:
    """Classify crossings relative to the axis of ``s``.

    A fixed crossing is orientation reversing when the image of its incoming
    under-edge lands in an outgoing slot, and preserving otherwise.
    """
    n = d.n_edges
    if n == 0:
        return []
    index = {c: i for i, c in enumerate(d.crossings)}
    out = []
    for i, (c, sign) in enumerate(zip(d.crossings, d.signs)):
        rev = index.get(_image_tuple(c, sign, s.edge, True))
        pre = index.get(_image_tuple(c, sign, s.edge, False))
        j = rev if rev is not None else pre
        if j is None or j != s.crossing_perm[i]:
            raise PdError("the action is not a symmetry of this diagram")
        if j != i:
            out.append(CrossingClass.OFF_AXIS)
        elif rev == i:
            out.append(CrossingClass.ON_AXIS_REVERSING)
        else:
            out.append(CrossingClass.ON_AXIS_PRESERVING)
    return out


def relabel(d: PdDiagram, s: SymmetryAction) -> PdDiagram:
    """Apply the symmetry to the code, listing image crossings in source order."""
    return make_diagram([d.crossings[s.crossing_perm[i]] for i in range(d.n_crossings)])


def smoothing_pairs(c, bit):
    a, b, cc, d = c
    if bit == 0:
        return ((a, b), (cc, d))
    return ((a, d), (b, cc))


def circle_labels(d: PdDiagram, v: int) -> list[int]:
    """Edge -> circle index (index 0 unused) for the vertex bitmask ``v``.

    Circles are numbered by their smallest edge label.
    """
    n = d.n_edges
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b, c, dd) in enumerate(d.crossings):
        if (v >> i) & 1:
            parent[find(a)] = find(dd)
            parent[find(b)] = find(c)
        else:
            parent[find(a)] = find(b)
            parent[find(c)] = find(dd)
    label = [0] * (n + 1)
    seen: dict[int, int] = {}
    for e in range(1, n + 1):
        r = find(e)
        if r not in seen:
            seen[r] = len(seen)
        label[e] = seen[r]
    return label


def resolve(d: PdDiagram, v) -> Resolution:
    v = tuple(int(x) for x in v)
    if len(v) != d.n_crossings or any(x not in (0, 1) for x in v):
        raise PdError(f"vertex must be a 0/1 vector of length {d.n_crossings}")
    if d.n_crossings == 0:
        return Resolution(v, ((),))
    mask = sum(bit << i for i, bit in enumerate(v))
    label = circle_labels(d, mask)
    circles: dict[int, list[int]] = {}
    for e in range(1, d.n_edges + 1):
        circles.setdefault(label[e], []).append(e)
    return Resolution(v, tuple(tuple(circles[i]) for i in range(len(circles))))


def oriented_vertex(d: PdDiagram) -> int:
    """Bitmask of the oriented resolution: 0 at positive, 1 at negative crossings."""
    return sum(1 << i for i, s in enumerate(d.signs) if s < 0)
