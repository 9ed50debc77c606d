"""Normal-ordered differential operators with polynomial coefficients.

A :class:`WeylElement` is a finite sum ``c * x^a * d^b`` with every
multiplication operator to the left of every derivative.  Normal order is a
canonical form, so operator equality is plain map equality.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Mapping, Tuple

from .polynomial import (
    ONE,
    Monomial,
    Polynomial,
    Var,
    check_grids,
    format_terms,
    mono_degree,
    mono_from,
    mono_key,
    mono_mul,
    parse_terms,
)

__all__ = [
    "WeylElement",
    "weyl_mul",
    "weyl_apply",
    "generator",
    "equal_by_action",
    "parse_weyl",
]

Key = Tuple[Monomial, Monomial]


def _grid_of_key(key: Key) -> bool | None:
    grid = None
    for mono in key:
        for v, _ in mono:
            if grid is None:
                grid = v.symmetric
            elif grid != v.symmetric:
                raise ValueError("standard-grid and symmetric-grid variables cannot be mixed")
    return grid


@lru_cache(maxsize=1 << 16)
def _term_product(a: Monomial, b: Monomial, c: Monomial, d: Monomial) -> tuple[tuple[Key, int], ...]:
    """Normal-order (x^a d^b)(x^c d^d).

    Per shared variable v, d_v^p x_v^q = sum_k k! C(p,k) C(q,k) x_v^(q-k) d_v^(p-k).
    """
    if not b or not c:
        return (((mono_mul(a, c), mono_mul(b, d)), 1),)
    bexp = dict(b)
    cexp = dict(c)
    shared = [v for v in bexp if v in cexp]
    if not shared:
        return (((mono_mul(a, c), mono_mul(b, d)), 1),)
    out: dict[Key, int] = {}
    ranges = [range(min(bexp[v], cexp[v]) + 1) for v in shared]
    for ks in itertools.product(*ranges):
        coeff = 1
        bb = dict(bexp)
        cc = dict(cexp)
        for v, k in zip(shared, ks):
            if k:
                coeff *= factorial(k) * comb(bexp[v], k) * comb(cexp[v], k)
                bb[v] -= k
                cc[v] -= k
        key = (mono_mul(a, mono_from(cc)), mono_mul(mono_from(bb), d))
        out[key] = out.get(key, 0) + coeff
    return tuple(out.items())


class WeylElement:
    """Immutable normal-ordered operator: map (x-monomial, d-monomial) -> int.

    Both monomials are over x-family variables; the second one records which
    partial derivatives are taken.
    """

    __slots__ = ("_terms", "_grid", "_hash")

    def __init__(self, terms: Mapping[Key, int] | None = None):
        clean = {}
        grid = None
        for key, c in (terms or {}).items():
            if not c:
                continue
            clean[key] = int(c)
            grid = check_grids(grid, _grid_of_key(key))
        self._terms = clean
        self._grid = grid
        self._hash = None

    @classmethod
    def scalar(cls, c: int) -> "WeylElement":
        return cls({(ONE, ONE): c})

    @classmethod
    def x(cls, v: Var) -> "WeylElement":
        return cls({(((v, 1),), ONE): 1})

    @classmethod
    def d(cls, v: Var) -> "WeylElement":
        return cls({(ONE, ((v, 1),)): 1})

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "WeylElement":
        """Multiplication operator by a polynomial in the x variables."""
        for v in p.variables():
            if v.family != "x":
                raise ValueError("only x-variable polynomials lift to multiplication operators")
        return cls({(mono, ONE): c for mono, c in p.terms.items()})

    @property
    def terms(self) -> Mapping[Key, int]:
        return self._terms

    @property
    def grid(self) -> bool | None:
        return self._grid

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[Var]:
        return {v for key in self._terms for mono in key for v, _ in mono}

    def d_degree(self) -> int:
        return max((mono_degree(dm) for _, dm in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Key, int]]:
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = WeylElement.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "WeylElement":
        if isinstance(other, int):
            other = WeylElement.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        check_grids(self._grid, other._grid)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "WeylElement":
        if isinstance(other, int):
            other = WeylElement.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "WeylElement":
        return (-self) + other

    def __mul__(self, other) -> "WeylElement":
        if isinstance(other, int):
            return WeylElement({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, WeylElement):
            return NotImplemented
        check_grids(self._grid, other._grid)
        out: dict[Key, int] = {}
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in other._terms.items():
                for key, k in _term_product(a, b, c, d):
                    out[key] = out.get(key, 0) + c1 * c2 * k
        return WeylElement(out)

    def __rmul__(self, other) -> "WeylElement":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "WeylElement":
        result = WeylElement.scalar(1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, p: Polynomial) -> Polynomial:
        return weyl_apply(self, p)

    def sorted_terms(self) -> list[tuple[Key, int]]:
        return sorted(self._terms.items(), key=lambda t: (mono_key(t[0][0]), mono_key(t[0][1])))

    def __str__(self) -> str:
        def body(key: Key) -> str:
            xs, ds = key
            parts = [v.name() + (f"^{e}" if e != 1 else "") for v, e in xs]
            parts += [v.name("d") + (f"^{e}" if e != 1 else "") for v, e in ds]
            return "*".join(parts)

        return format_terms((body(k), c) for k, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"WeylElement({str(self)!r})"


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b


def _falling(n: int, k: int) -> int:
    return prod(range(n - k + 1, n + 1))


def weyl_apply(a: WeylElement, p: Polynomial) -> Polynomial:
    """Act on a polynomial: differentiate by the d-part, then multiply by the x-part."""
    check_grids(a.grid, p.grid)
    out: dict[Monomial, int] = {}
    for (xs, ds), c in a.terms.items():
        for mono, cp in p.terms.items():
            exps = dict(mono)
            coeff = c * cp
            for v, e in ds:
                have = exps.get(v, 0)
                if have < e:
                    coeff = 0
                    break
                coeff *= _falling(have, e)
                exps[v] = have - e
            if not coeff:
                continue
            m = mono_mul(xs, mono_from(exps))
            out[m] = out.get(m, 0) + coeff
    return Polynomial(out)


def generator(kind: str, n: int, i: int, j: int) -> WeylElement:
    """The polarization operators D, S and d.

    ``D[i,j] = sum_k x[i,k] d[j,k]`` on the standard grid,
    ``S[i,j] = sum_k (1 + delta_jk) xs[i,k] ds[j,k]`` on the symmetric grid,
    ``d[i,j] = sum_k d[i,k] x[j,k] = D[j,i] + n delta_ij`` (already normal-ordered).
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"generator index ({i}, {j}) out of range for n={n}")
    if kind == "D":
        return WeylElement({
            (((Var("x", i, k), 1),), ((Var("x", j, k), 1),)): 1 for k in range(1, n + 1)
        })
    if kind == "S":
        out: dict[Key, int] = {}
        for k in range(1, n + 1):
            key = (((Var("x", i, k, True), 1),), ((Var("x", j, k, True), 1),))
            out[key] = out.get(key, 0) + (2 if j == k else 1)
        return WeylElement(out)
    if kind == "d":
        return generator("D", n, j, i) + (n if i == j else 0)
    raise ValueError(f"unknown generator kind {kind!r}")


def monomials_up_to(variables: Iterable[Var], degree: int) -> list[Monomial]:
    vs = sorted(set(variables))
    out = []
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(vs, total):
            exps: dict[Var, int] = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            out.append(mono_from(exps))
    return out


def equal_by_action(a: WeylElement, b: WeylElement, degree: int | None = None) -> bool:
    """Decide a == b by comparing actions on all monomials of degree <= max d-degree.

    Independent of the normal-ordering product: only uses differentiation.
    """
    if degree is None:
        degree = max(a.d_degree(), b.d_degree())
    variables = a.variables() | b.variables()
    for mono in monomials_up_to(variables, degree):
        p = Polynomial({mono: 1})
        if weyl_apply(a, p) != weyl_apply(b, p):
            return False
    return True


def parse_weyl(text: str) -> WeylElement:
    """Inverse of ``str(WeylElement)``; ``d[i,j]`` factors are derivatives."""
    if text.strip() == "0":
        return WeylElement()
    out: dict[Key, int] = {}
    for coeff, factors in parse_terms(text):
        xs: dict[Var, int] = {}
        ds: dict[Var, int] = {}
        seen_d = False
        for fam, sym, i, j, e in factors:
            if fam == "y":
                raise ValueError("y variables are not operators")
            v = Var("x", i, j, sym)
            if fam == "d":
                seen_d = True
                ds[v] = ds.get(v, 0) + e
            elif seen_d:
                raise ValueError("factors must be written in normal order (x before d)")
            else:
                xs[v] = xs.get(v, 0) + e
        key = (mono_from(xs), mono_from(ds))
        out[key] = out.get(key, 0) + coeff
    return WeylElement(out)
