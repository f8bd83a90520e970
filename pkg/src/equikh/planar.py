"""Faces of a PD diagram and checkerboard colours of a resolution.

Corner (X, i) is the corner of crossing X between slots i and i+1
(counterclockwise).  Walking out along edge X[i+1] to its other end (Y, j),
the same face continues at corner (Y, j).
"""

from __future__ import annotations

from collections import deque

from .diagram import PdDiagram


def _occurrences(d: PdDiagram):
    occ: dict[int, list[tuple[int, int]]] = {}
    for x, c in enumerate(d.crossings):
        for i, e in enumerate(c):
            occ.setdefault(e, []).append((x, i))
    return occ


def faces(d: PdDiagram) -> dict[tuple[int, int], int]:
    """Map each corner (crossing, slot) to a face index."""
    occ = _occurrences(d)
    face: dict[tuple[int, int], int] = {}
    for x in range(d.n_crossings):
        for i in range(4):
            if (x, i) in face:
                continue
            k = len(set(face.values()))
            cur = (x, i)
            while cur not in face:
                face[cur] = k
                cx, ci = cur
                nxt_slot = (ci + 1) % 4
                e = d.crossings[cx][nxt_slot]
                a, b = occ[e]
                other = b if a == (cx, nxt_slot) else a
                cur = other
    return face


def _head_slot(d: PdDiagram, x: int, slot: int) -> bool:
    """Whether the edge at (x, slot) enters crossing x there."""
    if slot == 0:
        return True
    if slot == 2:
        return False
    return (slot == 3) if d.signs[x] > 0 else (slot == 1)


def circle_left_colours(d: PdDiagram, v: int, reverse=frozenset(), comp_of=None):
    """For the resolution at vertex v: is the region left of each circle black?

    Circles are oriented by the diagram orientation, with the components in
    ``reverse`` flipped.  Regions are coloured alternately across circles
    with the face of largest boundary taken as the unbounded, white region.
    """
    from .diagram import circle_labels

    face = faces(d)
    n_faces = len(set(face.values()))
    parent = list(range(n_faces))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(d.n_crossings):
        bit = (v >> x) & 1
        # the smoothing opens a channel through the two corners it does not cut
        a, b = ((x, 1), (x, 3)) if bit == 0 else ((x, 0), (x, 2))
        parent[find(face[a])] = find(face[b])

    label = circle_labels(d, v)
    m = max(label[1:]) + 1
    left = [None] * m
    right = [None] * m
    for x, c in enumerate(d.crossings):
        for slot, e in enumerate(c):
            if not _head_slot(d, x, slot):
                continue
            ci = label[e]
            if left[ci] is not None:
                continue
            lf = find(face[(x, (slot - 1) % 4)])
            rf = find(face[(x, slot)])
            if comp_of is not None and comp_of[e] in reverse:
                lf, rf = rf, lf
            left[ci], right[ci] = lf, rf

    sizes: dict[int, int] = {}
    for corner, f in face.items():
        sizes[f] = sizes.get(f, 0) + 1
    outer = find(max(sorted(sizes), key=lambda f: sizes[f]))
    adj: dict[int, list[int]] = {}
    for ci in range(m):
        adj.setdefault(left[ci], []).append(right[ci])
        adj.setdefault(right[ci], []).append(left[ci])
    colour = {outer: 0}
    todo = deque([outer])
    while todo:
        r = todo.popleft()
        for s in adj.get(r, []):
            if s not in colour:
                colour[s] = 1 - colour[r]
                todo.append(s)
    return [colour[left[ci]] == 1 for ci in range(m)]
