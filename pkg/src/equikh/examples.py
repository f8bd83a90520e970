"""Small hand-built complexes with involutions used as golden fixtures.

Each is given by generators with (h, q), the differential, and the map
1 + tau (dashed arrows in the usual pictures).
"""

from __future__ import annotations

from .complex import FreeComplex, build_complex, compose, identity, one_plus


def with_involution(gens, d, one_plus_tau) -> FreeComplex:
    """Build a complex from named data, converting 1 + tau into tau."""
    c = build_complex(gens, d, {"T": one_plus_tau})
    tau = one_plus(c.endos["T"])
    c.endos = {"tau": tau}
    c.check()
    if compose(tau, tau) != identity(c.n):
        raise ValueError("1 + tau does not square to zero")
    return c


def ex1() -> FreeComplex:
    return with_involution({"x": (0, 0), "y": (0, 0), "z": (1, 2)},
                           {"y": ["z"]}, {"y": ["x"]})


def ex2() -> FreeComplex:
    return with_involution({"x": (0, 0), "y": (0, 0), "z": (-1, -2)},
                           {"z": ["y"]}, {"x": ["y"]})


_EX3 = {"x": (0, 0), "r": (0, 0), "r'": (-1, 0), "y": (-1, 0), "z": (-2, -2)}


def ex3_first() -> FreeComplex:
    return with_involution(_EX3, {"r'": ["r"], "z": ["y"]}, {"r'": ["y"]})


def ex3_second() -> FreeComplex:
    return with_involution(_EX3, {"r'": ["r"], "z": ["y"]}, {"x": ["r"], "r'": ["y"]})


def ex4() -> FreeComplex:
    gens = {"x": (0, 0), "y": (0, 0), "z": (1, 2), "r": (0, 0), "r'": (-1, 0),
            "s": (1, 2), "s'": (0, 2), "R": (-1, 0), "S": (0, 2)}
    d = {"y": ["z"], "r'": ["r"], "s'": ["s"], "R": ["S"]}
    t = {"y": ["x", "r", "s'"], "r": ["S"], "r'": ["R"], "z": ["s"], "s'": ["S"]}
    return with_involution(gens, d, t)


def trivial() -> FreeComplex:
    """One generator at (0, 0) with tau = id: the reduced unknot."""
    return FreeComplex([0], [0], [[]], endos={"tau": [[0]]}, names=["1"])


# Generators of a Borel subcomplex of 17nh_74's reduced complex: x, y, z as
# in ex4 and a, b, c, d from Khr with d a = u b and d c = u d.
_J_GENS = {"x": (0, 0), "y": (0, 0), "z": (1, 2), "a": (-1, 0), "b": (0, 2), "c": (0, 2), "d": (1, 4)}

# (X1, Y2, Z2) for the four solutions of d_Q^2 = 0; entries are
# d_Q x = uQ X1, d_Q y = uz + Qx + Q^2 Y2, d_Q z = Q^2 Z2
J_CASES = {1: ((), (), ()), 2: ((), ("a",), ("b",)), 3: (("b",), (), ("b",)), 4: (("b",), ("a",), ())}


def j_case(n: int, y1: bool = False) -> FreeComplex:
    """Candidate Borel complex for case ``n``; ``y1`` undoes the change of
    basis z -> z + Q c, giving d_Q y an extra uQ c and d_Q z an extra uQ d."""
    x1, y2, z2 = J_CASES[n]
    d = {"x": list(x1), "y": ["z", "x", *y2], "z": list(z2), "a": ["b"], "c": ["d"]}
    if y1:
        d["y"].append("c")
        d["z"].append("d")
    c = build_complex(_J_GENS, d, qvar=True)
    c.check()
    return c


ALGEBRAIC = {
    "ex1": ex1,
    "ex2": ex2,
    "ex3a": ex3_first,
    "ex3b": ex3_second,
    "ex4": ex4,
}
