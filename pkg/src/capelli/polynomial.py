"""Sparse multivariate polynomials with exact integer coefficients.

Variables live on an n x n grid of indeterminates, either the standard grid
``x[i,j]`` or the symmetric grid ``xs[i,j]`` where ``xs[i,j] == xs[j,i]``.
A second family ``y`` (commuting with ``x``) is used for polarization.
"""

from __future__ import annotations

import itertools
import re
from collections import namedtuple
from typing import Iterable, Iterator, Mapping, Sequence, Tuple

__all__ = [
    "Var",
    "Monomial",
    "Polynomial",
    "xvar",
    "yvar",
    "mono_mul",
    "poly_add",
    "poly_mul",
    "poly_diff",
    "det_poly",
    "parse_polynomial",
]


class Var(namedtuple("_Var", "family symmetric i j")):
    """A grid indeterminate; on the symmetric grid indices are stored sorted."""

    __slots__ = ()

    def __new__(cls, family: str, i: int, j: int, symmetric: bool = False):
        if family not in ("x", "y"):
            raise ValueError(f"unknown variable family {family!r}")
        if i < 1 or j < 1:
            raise ValueError(f"indices must be positive, got ({i}, {j})")
        if symmetric and i > j:
            i, j = j, i
        return super().__new__(cls, family, bool(symmetric), int(i), int(j))

    def __repr__(self) -> str:
        return self.name()

    def name(self, family: str | None = None) -> str:
        fam = family or self.family
        return f"{fam}{'s' if self.symmetric else ''}[{self.i},{self.j}]"

    def with_family(self, family: str) -> "Var":
        return Var(family, self.i, self.j, self.symmetric)


def xvar(i: int, j: int, symmetric: bool = False) -> Var:
    return Var("x", i, j, symmetric)


def yvar(i: int, j: int, symmetric: bool = False) -> Var:
    return Var("y", i, j, symmetric)


# A monomial is a tuple of (Var, exponent) pairs sorted by Var, no zero exponents.
Monomial = Tuple[Tuple[Var, int], ...]

ONE: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_from(exps: Mapping[Var, int]) -> Monomial:
    for v, e in exps.items():
        if e < 0:
            raise ValueError(f"negative exponent for {v!r}")
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def mono_key(a: Monomial):
    """Sort key: lexicographic on (Var, exponent) pairs, a proper prefix sorts last."""
    return tuple((0, v, e) for v, e in a) + ((1,),)


def _grid_of(monomials: Iterable[Monomial]) -> bool | None:
    grid = None
    for mono in monomials:
        for v, _ in mono:
            if v.family != "x":
                continue
            if grid is None:
                grid = v.symmetric
            elif grid != v.symmetric:
                raise ValueError("standard-grid and symmetric-grid x variables cannot be mixed")
    return grid


def check_grids(*grids: bool | None) -> bool | None:
    found = {g for g in grids if g is not None}
    if len(found) > 1:
        raise ValueError("standard-grid and symmetric-grid x variables cannot be mixed")
    return found.pop() if found else None


class Polynomial:
    """Immutable sparse polynomial: a map from monomials to nonzero ints."""

    __slots__ = ("_terms", "_grid", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                clean[mono] = int(c)
        self._terms = clean
        self._grid = _grid_of(clean)
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def variable(cls, v: Var, power: int = 1) -> "Polynomial":
        return cls({((v, power),): 1} if power else {ONE: 1})

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    @property
    def grid(self) -> bool | None:
        """True for the symmetric grid, False for standard, None if no x variables."""
        return self._grid

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[Var]:
        return {v for mono in self._terms for v, _ in mono}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        check_grids(self._grid, other._grid)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        check_grids(self._grid, other._grid)
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, v: Var) -> "Polynomial":
        out: dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            e = exps.get(v, 0)
            if not e:
                continue
            exps[v] = e - 1
            m = mono_from(exps)
            out[m] = out.get(m, 0) + c * e
        return Polynomial(out)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]))

    def __str__(self) -> str:
        return format_terms((_mono_str(m), c) for m, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _mono_str(mono: Monomial) -> str:
    return "*".join(v.name() + (f"^{e}" if e != 1 else "") for v, e in mono)


def format_terms(terms: Iterable[tuple[str, int]]) -> str:
    """Join (monomial text, coefficient) pairs into ``2*a - b + 1`` form."""
    out = []
    for body, c in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not body:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        if not out:
            out.append(piece if sign == "+" else f"-{piece}")
        else:
            out.append(f" {sign} {piece}")
    return "".join(out) if out else "0"


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(x|y|d)(s?)\[(\d+),(\d+)\](?:\^(\d+))?$")


def parse_terms(text: str) -> list[tuple[int, list[tuple[str, bool, int, int, int]]]]:
    """Split text into (coefficient, [(family, symmetric, i, j, exp), ...]) terms."""
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    if text[0] not in "+-":
        text = "+" + text
    pieces = _TERM_SPLIT.split(text)[1:]
    if len(pieces) % 2:
        raise ValueError(f"malformed expression {text!r}")
    terms = []
    for sign, body in zip(pieces[::2], pieces[1::2]):
        if not body:
            raise ValueError(f"malformed expression {text!r}")
        coeff = -1 if sign == "-" else 1
        factors = []
        for tok in body.split("*"):
            tok = tok.strip()
            if tok.isdigit():
                coeff *= int(tok)
                continue
            m = _FACTOR.match(tok)
            if m is None:
                raise ValueError(f"cannot parse factor {tok!r}")
            fam, sym, i, j, e = m.groups()
            factors.append((fam, bool(sym), int(i), int(j), int(e or 1)))
        terms.append((coeff, factors))
    return terms


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of ``str(Polynomial)``."""
    if text.strip() == "0":
        return Polynomial()
    out = Polynomial()
    for coeff, factors in parse_terms(text):
        exps: dict[Var, int] = {}
        for fam, sym, i, j, e in factors:
            if fam == "d":
                raise ValueError("derivative factors are not allowed in a polynomial")
            v = Var(fam, i, j, sym)
            exps[v] = exps.get(v, 0) + e
        out = out + Polynomial({mono_from(exps): coeff})
    return out


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_diff(p: Polynomial, v: Var) -> Polynomial:
    return p.diff(v)


def permutation_sign(perm: Sequence[int]) -> int:
    """Parity of a permutation given in 0- or 1-based one-line notation."""
    seen = [False] * len(perm)
    base = min(perm) if perm else 0
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k] - base
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_poly(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion sum_sigma sign(sigma) prod_j M[sigma(j)][j]."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    total = Polynomial()
    for perm in itertools.permutations(range(n)):
        term = Polynomial.constant(permutation_sign(perm))
        for col, row in enumerate(perm):
            term = term * matrix[row][col]
            if term.is_zero():
                break
        total = total + term
    return total


def grid_matrix(rows: int, cols: int, family: str = "x", symmetric: bool = False) -> list[list[Polynomial]]:
    """The rows x cols matrix of grid variables of one family."""
    return [
        [Polynomial.variable(Var(family, i, j, symmetric)) for j in range(1, cols + 1)]
        for i in range(1, rows + 1)
    ]
