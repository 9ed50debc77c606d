"""Polarization: commutative x/y polynomials and their operatorization.

A bipolynomial ``G(x) H(y)`` is turned into an operator by substituting
``d/dx`` for ``y``, with the x-part on the left (NORMAL) or the d-part on
the left (DUAL).  The configuration operators built from the factors
``Delta[i,j] = sum_k x[i,k] y[j,k]`` (or the weighted symmetric version) are
what the Lambda recursion relates.
"""

from __future__ import annotations

import enum

from .configs import CapelliConfig
from .polynomial import ONE, Polynomial, Var, mono_from
from .weyl import WeylElement

__all__ = [
    "Grid",
    "OperatorizeMode",
    "UnitValue",
    "delta_factor",
    "operatorize",
    "config_operator",
]


class Grid(str, enum.Enum):
    STANDARD = "standard"
    SYMMETRIC = "symmetric"

    @property
    def symmetric(self) -> bool:
        return self is Grid.SYMMETRIC


class OperatorizeMode(str, enum.Enum):
    NORMAL = "normal"  # x-part left of d-part
    DUAL = "dual"  # d-part left of x-part


class UnitValue(int, enum.Enum):
    PLUS_ONE = 1
    MINUS_ONE = -1


def delta_factor(grid: Grid | str, n: int, i: int, j: int) -> Polynomial:
    """``sum_k x[i,k] y[j,k]``; on the symmetric grid the k = j term has weight 2."""
    grid = Grid(grid)
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"factor index ({i}, {j}) out of range for n={n}")
    sym = grid.symmetric
    out: dict = {}
    for k in range(1, n + 1):
        mono = mono_from({Var("x", i, k, sym): 1, Var("y", j, k, sym): 1})
        weight = 2 if (sym and j == k) else 1
        out[mono] = out.get(mono, 0) + weight
    return Polynomial(out)


def operatorize(F: Polynomial, mode: OperatorizeMode | str = OperatorizeMode.NORMAL) -> WeylElement:
    """Linear map x^a y^b -> x^a d^b (NORMAL) or normal order of d^b x^a (DUAL)."""
    mode = OperatorizeMode(mode)
    out = WeylElement()
    normal: dict = {}
    for mono, c in F.terms.items():
        xs = tuple((v, e) for v, e in mono if v.family == "x")
        ds = tuple((v.with_family("x"), e) for v, e in mono if v.family == "y")
        if mode is OperatorizeMode.NORMAL or not xs or not ds:
            key = (xs, ds)
            normal[key] = normal.get(key, 0) + c
        else:
            out = out + WeylElement({(ONE, ds): c}) * WeylElement({(xs, ONE): 1})
    return out + WeylElement(normal)


def _suppressed(c: CapelliConfig, i: int) -> bool:
    return c.sigma(i) == i and c.phi_map()[i] != i


def config_operator(
    c: CapelliConfig,
    m: int,
    grid: Grid | str = Grid.STANDARD,
    mode: OperatorizeMode | str = OperatorizeMode.NORMAL,
    unit: UnitValue | int = UnitValue.PLUS_ONE,
) -> WeylElement:
    """op(F[n]) ... op(F[m]) * op(F[m-1] ... F[1]).

    F[i] = Delta[sigma(i), i] in NORMAL mode and Delta[i, sigma(i)] in DUAL
    mode; the transpose keeps the single contractions on the pairs with
    sigma(i) = m, so the same fibers govern both recursions.  Factors at
    suppressed positions (sigma(i) = i, phi(i) != i) are replaced by the
    scalar ``unit``.  The last bundle is multiplied commutatively before
    being operatorized.
    """
    n = c.n
    if not 1 <= m <= n + 1:
        raise ValueError(f"m={m} outside 1..{n + 1}")
    mode = OperatorizeMode(mode)
    unit = int(unit)

    def factor(i: int) -> Polynomial:
        if mode is OperatorizeMode.DUAL:
            return delta_factor(grid, n, i, c.sigma(i))
        return delta_factor(grid, n, c.sigma(i), i)

    scalar = 1
    result = WeylElement.scalar(1)
    for i in range(n, m - 1, -1):
        if _suppressed(c, i):
            scalar *= unit
        else:
            result = result * operatorize(factor(i), mode)
    bundle = Polynomial.constant(1)
    for i in range(m - 1, 0, -1):
        if _suppressed(c, i):
            scalar *= unit
        else:
            bundle = bundle * factor(i)
    return result * operatorize(bundle, mode) * scalar
