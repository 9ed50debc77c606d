"""Exact verifiers for Capelli-type identities.

Every check builds both sides as normal-ordered :class:`WeylElement` values
and compares them as maps, so a pass is a proof for that size.  Diagonal
offsets and column orders that the identities leave implicit are
pinned by :func:`pin_convention` and stored in a small JSON ledger.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
import time
from dataclasses import asdict, dataclass
from math import prod
from pathlib import Path
from typing import Callable, Sequence

from .configs import enumerate_configs, fiber
from .detops import column_det, natural_order, reversed_order
from .polarized import Grid, OperatorizeMode, UnitValue, config_operator, operatorize
from .polynomial import Polynomial, det_poly, grid_matrix
from .weyl import WeylElement, generator

__all__ = [
    "VerificationReport",
    "Convention",
    "ConventionError",
    "verify_capelli",
    "verify_theorem1",
    "verify_cauchy_binet",
    "verify_turnbull",
    "verify_turnbull_lemma",
    "verify_cayley",
    "verify_dual_capelli",
    "pin_convention",
    "load_convention",
    "ledger_path",
    "IDENTITIES",
    "run_identity",
]

MAX_N = 4

PINNABLE = ("cauchy_binet", "turnbull", "dual_capelli")

# Smallest sizes at which each pinnable convention is discriminated.
PIN_DEFAULTS = {"cauchy_binet": (3, 2), "turnbull": (2, None), "dual_capelli": (2, None)}

OFFSET_FAMILIES: dict[str, Callable[[int, int, int], int]] = {
    "m-i": lambda i, n, m: m - i,
    "n-i": lambda i, n, m: n - i,
    "i-1": lambda i, n, m: i - 1,
    "0": lambda i, n, m: 0,
}


class ConventionError(RuntimeError):
    """Convention search found no surviving candidate, or several inequivalent ones."""


@dataclass
class VerificationReport:
    identity: str
    n: int
    passed: bool
    residual_terms: int
    m: int | None = None
    s: int | None = None
    pinned_convention: str | None = None
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.passed != (self.residual_terms == 0):
            raise ValueError("passed must be equivalent to residual_terms == 0")

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "m": self.m,
            "s": self.s,
            "passed": self.passed,
            "residual_terms": self.residual_terms,
            "pinned_convention": self.pinned_convention,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            identity=data["identity"],
            n=int(data["n"]),
            m=data.get("m"),
            s=data.get("s"),
            passed=bool(data["passed"]),
            residual_terms=int(data["residual_terms"]),
            pinned_convention=data.get("pinned_convention"),
            elapsed_ms=float(data.get("elapsed_ms", 0.0)),
        )

    def summary(self) -> str:
        params = f"n={self.n}"
        if self.m is not None:
            params += f", m={self.m}"
        if self.s is not None:
            params += f", s={self.s}"
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.identity} ({params}): {status}, residual terms {self.residual_terms}"
        if self.pinned_convention:
            line += f" [convention {self.pinned_convention}]"
        return line


@dataclass(frozen=True)
class Convention:
    """Diagonal shift sign * family(i) added to entry (i, i), plus a column order."""

    identity: str
    offset_sign: int
    offset_family: str
    column_order: str = "natural"

    def __post_init__(self):
        if self.offset_sign not in (1, -1):
            raise ValueError("offset_sign must be +1 or -1")
        if self.offset_family not in OFFSET_FAMILIES:
            raise ValueError(f"unknown offset family {self.offset_family!r}")
        if self.column_order not in ("natural", "reversed"):
            raise ValueError(f"unknown column order {self.column_order!r}")

    def offsets(self, size: int, n: int, m: int | None = None) -> dict[int, int]:
        fam = OFFSET_FAMILIES[self.offset_family]
        m = size if m is None else m
        return {i: self.offset_sign * fam(i, n, m) for i in range(1, size + 1)}

    def order(self, size: int) -> tuple[int, ...]:
        return natural_order(size) if self.column_order == "natural" else reversed_order(size)

    def natural_offsets(self, size: int, n: int, m: int | None = None) -> tuple[int, ...]:
        """Offsets after mapping to natural order through the index reversal i -> size+1-i."""
        values = [self.offsets(size, n, m)[i] for i in range(1, size + 1)]
        return tuple(values if self.column_order == "natural" else values[::-1])

    def describe(self) -> str:
        sign = "+" if self.offset_sign > 0 else "-"
        return f"{sign}({self.offset_family}), {self.column_order} order"

    def to_dict(self, size: int | None = None, n: int | None = None, m: int | None = None) -> dict:
        data = asdict(self)
        data["offset_sign"] = "+" if self.offset_sign > 0 else "-"
        if size is not None:
            data["pinned_at"] = {"n": n, "m": m}
            data["offset_values"] = {str(k): v for k, v in self.offsets(size, n, m).items()}
            data["column_order_at_pin"] = list(self.order(size))
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Convention":
        sign = data["offset_sign"]
        if isinstance(sign, str):
            sign = 1 if sign == "+" else -1
        return cls(data["identity"], int(sign), data["offset_family"], data.get("column_order", "natural"))


def _check_size(n: int, allow_large: bool, limit: int = MAX_N) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > limit:
        raise ValueError(f"n={n} is beyond the supported size (n <= {limit})")
    if n == limit and not allow_large:
        raise ValueError(f"n={n} is expensive; pass allow_large=True to run it")


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
        return report

    return wrapper


def _shifted(
    kind: str, size: int, n: int, offsets: dict[int, int], perturb: int = 0
) -> list[list[WeylElement]]:
    rows = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            entry = generator(kind, n, i, j)
            if i == j:
                entry = entry + offsets[i] + (perturb if i == 1 else 0)
            row.append(entry)
        rows.append(row)
    return rows


def _x_det(rows: Sequence[int], cols: Sequence[int], symmetric: bool = False) -> Polynomial:
    full = grid_matrix(max(rows), max(cols), "x", symmetric)
    return det_poly([[full[i - 1][j - 1] for j in cols] for i in rows])


def _d_det(rows: Sequence[int], cols: Sequence[int], symmetric: bool = False, weighted: bool = False) -> WeylElement:
    """det of the matrix of partials, (1 + delta_jk) weights on the symmetric diagonal."""
    full = grid_matrix(max(rows), max(cols), "y", symmetric)
    sub = [
        [full[i - 1][j - 1] * (2 if weighted and i == j else 1) for j in cols]
        for i in rows
    ]
    return operatorize(det_poly(sub))


def capelli_rhs(n: int) -> WeylElement:
    """det(X) composed with det(d)."""
    idx = range(1, n + 1)
    return WeylElement.from_polynomial(_x_det(idx, idx)) * _d_det(idx, idx)


def capelli_lhs(n: int, perturb: int = 0) -> WeylElement:
    return column_det(_shifted("D", n, n, {i: n - i for i in range(1, n + 1)}, perturb))


def capelli_lhs_reversed(n: int) -> WeylElement:
    """The mirrored presentation: offsets i-1, columns multiplied n down to 1."""
    return column_det(_shifted("D", n, n, {i: i - 1 for i in range(1, n + 1)}), reversed_order(n))


@_timed
def verify_capelli(n: int, *, allow_large: bool = False, perturb: int = 0) -> VerificationReport:
    """col-det[D_ij + delta_ij (n - i)] == det(X) det(d)."""
    _check_size(n, allow_large)
    residual = capelli_lhs(n, perturb) - capelli_rhs(n)
    return VerificationReport("capelli", n, residual.is_zero(), len(residual))


def theorem1_residuals(
    n: int,
    mode: OperatorizeMode = OperatorizeMode.NORMAL,
    unit: UnitValue = UnitValue.PLUS_ONE,
    grid: Grid = Grid.STANDARD,
) -> dict[tuple[int, object], int]:
    """Per (m, target) term counts of sign*op(target, m+1) - sum over the fiber."""
    out = {}
    for m in range(1, n + 1):
        for target in enumerate_configs(n, m + 1):
            lhs = config_operator(target, m + 1, grid, mode, unit) * target.sign()
            for pre in fiber(target, m):
                lhs = lhs - config_operator(pre, m, grid, mode, unit) * pre.sign()
            out[(m, target)] = len(lhs)
    return out


THEOREM1_VARIANTS = {
    "normal": (OperatorizeMode.NORMAL, UnitValue.PLUS_ONE),
    "dual": (OperatorizeMode.DUAL, UnitValue.MINUS_ONE),
}


@_timed
def verify_theorem1(n: int, *, variant: str = "both", allow_large: bool = False) -> VerificationReport:
    """The one-step fiber recursion for every m and every target in C^{m+1}."""
    _check_size(n, allow_large)
    names = list(THEOREM1_VARIANTS) if variant == "both" else [variant]
    residual = 0
    for name in names:
        mode, unit = THEOREM1_VARIANTS[name]
        residual += sum(theorem1_residuals(n, mode, unit).values())
    label = None if variant == "both" else f"{variant} variant"
    return VerificationReport("theorem1", n, residual == 0, residual, pinned_convention=label)


def cauchy_binet_rhs(n: int, m: int) -> WeylElement:
    rows = range(1, m + 1)
    total = WeylElement()
    for cols in itertools.combinations(range(1, n + 1), m):
        total = total + WeylElement.from_polynomial(_x_det(rows, cols)) * _d_det(rows, cols)
    return total


def _cauchy_binet_lhs(n: int, m: int, conv: Convention, perturb: int = 0) -> WeylElement:
    return column_det(_shifted("D", m, n, conv.offsets(m, n, m), perturb), conv.order(m))


def _turnbull_lhs(n: int, conv: Convention, perturb: int = 0) -> WeylElement:
    return column_det(_shifted("S", n, n, conv.offsets(n, n), perturb), conv.order(n))


def turnbull_rhs(n: int) -> WeylElement:
    idx = range(1, n + 1)
    return WeylElement.from_polynomial(_x_det(idx, idx, True)) * _d_det(idx, idx, True, weighted=True)


def _dual_lhs(n: int, conv: Convention, perturb: int = 0) -> WeylElement:
    return column_det(_shifted("d", n, n, conv.offsets(n, n), perturb), conv.order(n))


def dual_capelli_rhs(n: int) -> WeylElement:
    """det(d) composed with det(X), the d-determinant on the left."""
    idx = range(1, n + 1)
    return _d_det(idx, idx) * WeylElement.from_polynomial(_x_det(idx, idx))


def _candidate_residual(identity: str, conv: Convention, n: int, m: int | None) -> int:
    if identity == "cauchy_binet":
        return len(_cauchy_binet_lhs(n, m, conv) - cauchy_binet_rhs(n, m))
    if identity == "turnbull":
        return len(_turnbull_lhs(n, conv) - turnbull_rhs(n))
    if identity == "dual_capelli":
        return len(_dual_lhs(n, conv) - dual_capelli_rhs(n))
    raise ValueError(f"identity {identity!r} has no convention to pin")


def candidate_conventions(identity: str) -> list[Convention]:
    families = list(OFFSET_FAMILIES)
    if identity != "cauchy_binet":
        families.remove("m-i")  # no second size parameter; m-i would duplicate n-i
    return [
        Convention(identity, sign, fam, order)
        for order in ("natural", "reversed")
        for fam in families
        for sign in (1, -1)
    ]


def search_conventions(identity: str, n: int, m: int | None = None) -> dict[tuple[int, ...], list[Convention]]:
    """Surviving candidates grouped by their offsets in natural order.

    Candidates in reversed order are identified with their mirror image under
    i -> size+1-i, which fixes the right-hand side; a class survives or fails
    as a whole.
    """
    size = m if identity == "cauchy_binet" else n
    if identity == "cauchy_binet" and (m is None or not 1 <= m < n):
        raise ValueError("cauchy_binet needs 1 <= m < n")
    classes: dict[tuple[int, ...], list[Convention]] = {}
    for conv in candidate_conventions(identity):
        if _candidate_residual(identity, conv, n, m) == 0:
            classes.setdefault(conv.natural_offsets(size, n, m), []).append(conv)
    return classes


def ledger_path() -> Path:
    env = os.environ.get("CAPELLI_LEDGER")
    if env:
        return Path(env)
    return Path(__file__).with_name("conventions.json")


def _read_ledger(path: Path) -> list[dict]:
    if not path.exists():
        return []
    return json.loads(path.read_text(encoding="utf-8"))


def _write_ledger_entry(path: Path, entry: dict) -> None:
    entries = [e for e in _read_ledger(path) if e.get("identity") != entry["identity"]]
    entries.append(entry)
    entries.sort(key=lambda e: e["identity"])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(entries, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def pin_convention(
    identity: str, n: int | None = None, m: int | None = None, *, persist: bool = True
) -> Convention:
    """Search the candidate space at a small size and return the unique survivor.

    Raises :class:`ConventionError` when no candidate class or more than one
    survives.
    """
    if identity not in PINNABLE:
        raise ValueError(f"identity {identity!r} has no convention to pin; choose from {PINNABLE}")
    default_n, default_m = PIN_DEFAULTS[identity]
    n = default_n if n is None else n
    if identity == "cauchy_binet":
        m = default_m if m is None else m
    else:
        m = None
    _check_size(n, allow_large=False)
    classes = search_conventions(identity, n, m)
    if len(classes) != 1:
        raise ConventionError(
            f"{identity} at n={n}: expected one surviving convention, found {len(classes)}"
        )
    (members,) = classes.values()
    natural = [c for c in members if c.column_order == "natural"]
    conv = (natural or members)[0]
    if persist:
        size = m if identity == "cauchy_binet" else n
        _write_ledger_entry(ledger_path(), conv.to_dict(size, n, m))
    return conv


def load_convention(identity: str) -> Convention:
    """Pinned convention from the ledger; pins at the minimal size if absent."""
    for entry in _read_ledger(ledger_path()):
        if entry.get("identity") == identity:
            return Convention.from_dict(entry)
    return pin_convention(identity)


@_timed
def verify_cauchy_binet(
    n: int, m: int, *, convention: Convention | None = None, perturb: int = 0
) -> VerificationReport:
    """m x m col-det[D_ij + shift] on the m x n grid == sum over m-subsets of columns."""
    if not 1 <= m < n:
        raise ValueError("cauchy_binet needs 1 <= m < n (m == n is verify_capelli)")
    _check_size(n, allow_large=True)
    conv = convention or load_convention("cauchy_binet")
    residual = _cauchy_binet_lhs(n, m, conv, perturb) - cauchy_binet_rhs(n, m)
    return VerificationReport(
        "cauchy_binet", n, residual.is_zero(), len(residual), m=m, pinned_convention=conv.describe()
    )


@_timed
def verify_turnbull(
    n: int, *, convention: Convention | None = None, allow_large: bool = False, perturb: int = 0
) -> VerificationReport:
    """Symmetric grid: col-det[S_ij + shift] == det(X) det((1 + delta_jk) d_jk)."""
    _check_size(n, allow_large)
    conv = convention or load_convention("turnbull")
    residual = _turnbull_lhs(n, conv, perturb) - turnbull_rhs(n)
    return VerificationReport(
        "turnbull", n, residual.is_zero(), len(residual), pinned_convention=conv.describe()
    )


@_timed
def verify_turnbull_lemma(n: int, *, allow_large: bool = False) -> VerificationReport:
    """Summed recursion on the symmetric grid, one equation per m in 1..n."""
    _check_size(n, allow_large)
    residual = 0

    def total(m: int) -> WeylElement:
        acc = WeylElement()
        for c in enumerate_configs(n, m):
            acc = acc + config_operator(c, m, Grid.SYMMETRIC) * c.sign()
        return acc

    sums = {m: total(m) for m in range(1, n + 2)}
    for m in range(1, n + 1):
        residual += len(sums[m + 1] - sums[m])
    return VerificationReport("turnbull_lemma", n, residual == 0, residual)


def cayley_factor(n: int, s: int) -> int:
    return prod(s + k for k in range(n))


@_timed
def verify_cayley(n: int, s: int, *, allow_large: bool = False, perturb: int = 0) -> VerificationReport:
    """det(d) applied to det(X)^s == s(s+1)...(s+n-1) det(X)^(s-1)."""
    if s < 1:
        raise ValueError("s must be at least 1")
    _check_size(n, allow_large)
    idx = range(1, n + 1)
    det_x = _x_det(idx, idx)
    lhs = _d_det(idx, idx)(det_x ** s)
    rhs = det_x ** (s - 1) * (cayley_factor(n, s) + perturb)
    residual = lhs - rhs
    return VerificationReport("cayley", n, residual.is_zero(), len(residual), s=s)


@_timed
def verify_dual_capelli(
    n: int,
    *,
    convention: Convention | None = None,
    allow_large: bool = False,
    perturb: int = 0,
    action_s: Sequence[int] = (1, 2, 3),
) -> VerificationReport:
    """col-det[d_ij + shift] == det(d) det(X), plus the action on det(X)^(s-1)."""
    _check_size(n, allow_large)
    conv = convention or load_convention("dual_capelli")
    lhs = _dual_lhs(n, conv, perturb)
    residual = len(lhs - dual_capelli_rhs(n))
    idx = range(1, n + 1)
    det_x = _x_det(idx, idx)
    for s in action_s:
        power = det_x ** (s - 1)
        residual += len(lhs(power) - power * cayley_factor(n, s))
    return VerificationReport(
        "dual_capelli", n, residual == 0, residual, pinned_convention=conv.describe()
    )


IDENTITIES = (
    "capelli",
    "theorem1",
    "cauchy_binet",
    "turnbull",
    "turnbull_lemma",
    "cayley",
    "dual_capelli",
)


def run_identity(
    identity: str,
    n: int,
    m: int | None = None,
    s: int | None = None,
    *,
    allow_large: bool = False,
    perturb: int = 0,
) -> VerificationReport:
    """Dispatch by name; used by the command line."""
    identity = identity.replace("-", "_")
    if identity == "capelli":
        return verify_capelli(n, allow_large=allow_large, perturb=perturb)
    if identity == "theorem1":
        return verify_theorem1(n, allow_large=allow_large)
    if identity == "cauchy_binet":
        if m is None:
            raise ValueError("cauchy_binet needs --m")
        return verify_cauchy_binet(n, m, perturb=perturb)
    if identity == "turnbull":
        return verify_turnbull(n, allow_large=allow_large, perturb=perturb)
    if identity == "turnbull_lemma":
        return verify_turnbull_lemma(n, allow_large=allow_large)
    if identity == "cayley":
        return verify_cayley(n, 1 if s is None else s, allow_large=allow_large, perturb=perturb)
    if identity == "dual_capelli":
        return verify_dual_capelli(n, allow_large=allow_large, perturb=perturb)
    raise ValueError(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")

