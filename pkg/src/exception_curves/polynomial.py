"""Integer bivariate polynomials for the exception curves.

The curve of a pair ``(s, t)`` is the zero set of

    F(x, y) = sum_k s_k x^{#_k(s)} y^{~#_k(s)} - t_k x^{#_k(t)} y^{~#_k(t)}

where ``#_k`` and ``~#_k`` count the +1 and -1 entries among the first k
symbols and k runs over 1..n.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

Exponent = tuple[int, int]


@dataclass(frozen=True)
class BiPoly:
    """Collected polynomial: exponent pair (i, j) of ``x^i y^j`` -> coefficient."""

    terms: Mapping[Exponent, int]

    def __post_init__(self):
        collected: dict[Exponent, int] = defaultdict(int)
        for (i, j), c in dict(self.terms).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            collected[(int(i), int(j))] += int(c)
        object.__setattr__(
            self, "terms", {k: c for k, c in sorted(collected.items()) if c != 0}
        )

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __add__(self, other: "BiPoly"):
        merged = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            merged[k] += c
        return BiPoly(merged)

    def __sub__(self, other: "BiPoly"):
        return self + (-other)

    def reflect(self) -> "BiPoly":
        """Swap the roles of x and y."""
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def __call__(self, x, y):
        return evaluate(self, x, y)

    def exact(self, x, y) -> Fraction:
        """Evaluate in rational arithmetic (floats are converted exactly)."""
        fx, fy = Fraction(x), Fraction(y)
        return sum((c * fx**i * fy**j for (i, j), c in self.terms.items()), Fraction(0))

    def to_text(self) -> str:
        return format_poly(self)

    def to_json(self) -> list[dict[str, int]]:
        return [{"i": i, "j": j, "c": c} for (i, j), c in _display_order(self)]

    @classmethod
    def from_json(cls, items) -> "BiPoly":
        return cls({(d["i"], d["j"]): d["c"] for d in items})

    def __str__(self):
        return format_poly(self)


def build_curve_poly(pair) -> BiPoly:
    terms: dict[Exponent, int] = defaultdict(int)
    for seq, sign in ((pair.s, 1), (pair.t, -1)):
        for e, a, b in zip(seq.entries, seq.prefix_ones, seq.prefix_minus):
            terms[(a, b)] += sign * e
    return BiPoly(terms)


def evaluate(poly: BiPoly, x, y):
    """Nested Horner evaluation; accepts scalars or broadcastable arrays."""
    if not poly.terms:
        return 0.0 * (np.asarray(x, dtype=float) + np.asarray(y, dtype=float))
    rows: dict[int, dict[int, int]] = defaultdict(dict)
    for (i, j), c in poly.terms.items():
        rows[i][j] = c
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    acc = 0.0
    for i in range(max(rows), -1, -1):
        row = rows.get(i)
        inner = 0.0
        if row:
            for j in range(max(row), -1, -1):
                inner = inner * y + row.get(j, 0)
        acc = acc * x + inner
    out = acc + np.zeros(np.broadcast(x, y).shape)
    return out[()] if out.ndim == 0 else out


def is_zero(poly: BiPoly) -> bool:
    return poly.is_zero()


@dataclass(frozen=True)
class UniPoly:
    """Integer univariate polynomial, ``coefficients[i]`` multiplies ``x^i``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative_at_one(self) -> int:
        return derivative_at_one(self)


def restrict_y1(poly: BiPoly) -> UniPoly:
    """f(x) = F(x, 1)."""
    coeffs: dict[int, int] = defaultdict(int)
    for (i, _), c in poly.terms.items():
        coeffs[i] += c
    degree = max(coeffs, default=-1)
    return UniPoly(tuple(coeffs.get(i, 0) for i in range(degree + 1)))


def derivative_at_one(poly: UniPoly) -> int:
    return sum(i * c for i, c in enumerate(poly.coefficients))


def _display_order(poly: BiPoly):
    # Decreasing x exponent, then decreasing y exponent: the order in which the
    # published curve equations are written.
    return sorted(poly.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))


def _monomial(i: int, j: int) -> str:
    part = ""
    if i:
        part += "x" if i == 1 else f"x^{i}"
    if j:
        part += "y" if j == 1 else f"y^{j}"
    return part


def format_poly(poly: BiPoly) -> str:
    if poly.is_zero():
        return "0"
    out = []
    for idx, ((i, j), c) in enumerate(_display_order(poly)):
        mono = _monomial(i, j)
        mag = abs(c)
        body = mono if (mag == 1 and mono) else f"{mag}{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TERM = re.compile(r"([+-])(\d*)((?:[xy](?:\^\d+)?)*)")
_FACTOR = re.compile(r"([xy])(?:\^(\d+))?")


def parse_poly(text: str) -> BiPoly:
    """Parse ``"2x^2y^3 + x^2y^2 - xy + x + y"`` (spaces and ``*`` optional).

    A trailing ``= 0`` is ignored.
    """
    body = text.split("=")[0].replace(" ", "").replace("*", "")
    if not body:
        raise ValueError("empty polynomial text")
    if body[0] not in "+-":
        body = "+" + body
    terms: dict[Exponent, int] = defaultdict(int)
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial near {body[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        i = j = 0
        for var, exp in _FACTOR.findall(m.group(3)):
            e = int(exp) if exp else 1
            if var == "x":
                i += e
            else:
                j += e
        terms[(i, j)] += sign * coeff
        pos = m.end()
    return BiPoly(terms)
