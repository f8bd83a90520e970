"""Sakuma's eta-polynomial from fundamental-region crossing data."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class FundamentalRegion:
    """Crossings of a fundamental region as (sign, label) pairs."""

    crossings: tuple[tuple[int, int], ...]

    @classmethod
    def parse(cls, text: str) -> "FundamentalRegion":
        """Lines of ``sign,label``; blank lines and ``#`` comments are skipped."""
        out = []
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                sign, label = (int(x) for x in line.split(","))
            except ValueError:
                raise ValueError(f"line {n}: expected 'sign,label', got {line!r}") from None
            if sign not in (1, -1):
                raise ValueError(f"line {n}: sign must be +1 or -1")
            out.append((sign, label))
        return cls(tuple(out))


class LaurentPoly:
    """Integer Laurent polynomial in t stored as {exponent: coefficient}."""

    def __init__(self, coeffs=None):
        self.coeffs = {e: c for e, c in dict(coeffs or {}).items() if c}

    def __getitem__(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = Counter(self.coeffs)
        out.update(other.coeffs)
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: k * c for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self.coeffs.items()))})"

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def is_symmetric(self) -> bool:
        return all(self[-e] == c for e, c in self.coeffs.items())

    @classmethod
    def from_bracket(cls, a) -> "LaurentPoly":
        """[a0, a1, ...] means a0 + a1 (t + 1/t) + a2 (t^2 + 1/t^2) + ..."""
        out = {0: a[0]} if a else {}
        for i, c in enumerate(a[1:], 1):
            out[i] = out[-i] = c
        return cls(out)

    def bracket(self) -> list[int]:
        if not self.is_symmetric():
            raise ValueError("bracket notation needs a symmetric polynomial")
        top = max((abs(e) for e in self.coeffs), default=0)
        return [self[i] for i in range(top + 1)]

    def render_bracket(self) -> str:
        return "[" + ",".join(str(c) for c in self.bracket())

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}" if e > 0 else f"t^({e})")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def eta_tilde(fr: FundamentalRegion) -> dict[int, int]:
    """The formal sum of sign * x_label, as {label: coefficient}."""
    out: Counter[int] = Counter()
    for sign, label in fr.crossings:
        out[label] += sign
    return {k: v for k, v in sorted(out.items()) if v}


def render_formal(et: dict[int, int]) -> str:
    if not et:
        return "0"
    parts = []
    for i, c in sorted(et.items(), reverse=True):
        mono = f"x_{i}"
        parts.append(("-" if c < 0 else "+") + " " + (mono if abs(c) == 1 else f"{abs(c)}{mono}"))
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def eta_prime(et: dict[int, int]) -> LaurentPoly:
    """Substitute x_i -> t^(i-1) - 2 t^i + t^(i+1)."""
    out: Counter[int] = Counter()
    for i, c in et.items():
        out[i - 1] += c
        out[i] -= 2 * c
        out[i + 1] += c
    return LaurentPoly(out)


_DELTA = LaurentPoly({0: 2, 1: -1, -1: -1})


def eta_recover(ep: LaurentPoly) -> LaurentPoly:
    """eta = eta' - a (2 - t - 1/t) with a = -[t^1] eta', killing the t^1 term."""
    if not ep.is_symmetric():
        raise ValueError("eta' must be symmetric in t and 1/t")
    a = -ep[1]
    return ep - _DELTA.scale(a)


def eta(fr: FundamentalRegion) -> LaurentPoly:
    return eta_recover(eta_prime(eta_tilde(fr)))


# fundamental-region data read off the worked examples
K1_FIRST = FundamentalRegion(((-1, 0),))
K1_SECOND = FundamentalRegion(((1, 1), (-1, 0), (-1, 0), (1, -1)))
J_REGION = FundamentalRegion(((1, 1), (1, -1), (-1, 4), (-1, -4)))
