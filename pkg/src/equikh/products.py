"""Connected sums at the level of complexes with involution."""

from __future__ import annotations

from functools import reduce

from .borel import assemble_borel
from .complex import FreeComplex, compose, identity, tensor


def connected_sum_complex(c1: FreeComplex, c2: FreeComplex) -> FreeComplex:
    """Reduced complex of an equivariant connected sum: tensor with tau1 x tau2."""
    out = tensor(c1, c2, "tau")
    out.check()
    t = out.endos["tau"]
    if compose(t, t) != identity(out.n):
        raise AssertionError("tensor involution does not square to the identity")
    return out


def tensor_power(c: FreeComplex, m: int) -> FreeComplex:
    if m < 1:
        raise ValueError("tensor power must be at least 1")
    return reduce(lambda a, b: tensor(a, b, "tau"), [c] * m)


def borel_of_tensor(c1: FreeComplex, c2: FreeComplex, check: bool = True) -> FreeComplex:
    """d_{Q,1} x 1 + 1 x d_{Q,2} + Q (1 + tau1) x (1 + tau2).

    Over F2 this equals d + Q(1 + tau1 x tau2) on the tensor product; with
    ``check`` the two are compared entry by entry.
    """
    b1, b2 = assemble_borel(c1), assemble_borel(c2)
    t1, t2 = c1.endos["tau"], c2.endos["tau"]
    n2 = c2.n
    out = []
    for i in range(c1.n):
        a1 = set(t1[i]) ^ {i}
        for j in range(n2):
            s: set[int] = set()
            for a in b1.d[i]:
                s ^= {a * n2 + j}
            for b in b2.d[j]:
                s ^= {i * n2 + b}
            a2 = set(t2[j]) ^ {j}
            for a in a1:
                for b in a2:
                    s ^= {a * n2 + b}
            out.append(sorted(s))
    h = [c1.h[i] + c2.h[j] for i in range(c1.n) for j in range(n2)]
    q = [c1.q[i] + c2.q[j] for i in range(c1.n) for j in range(n2)]
    res = FreeComplex(h, q, out, qvar=True)
    if check:
        ref = assemble_borel(tensor(c1, c2, "tau"))
        if [sorted(o) for o in ref.d] != out:
            raise AssertionError("Borel differential of the tensor product disagrees")
    return res


def br(c: FreeComplex) -> FreeComplex:
    """The Borel complex of a complex with strict involution."""
    return assemble_borel(c)
