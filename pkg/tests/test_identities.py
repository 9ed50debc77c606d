import itertools
import json
import random

import pytest

from capelli import identities
from capelli.configs import enumerate_configs
from capelli.identities import (
    Convention,
    ConventionError,
    VerificationReport,
    capelli_lhs,
    capelli_lhs_reversed,
    capelli_rhs,
    cauchy_binet_rhs,
    dual_capelli_rhs,
    load_convention,
    pin_convention,
    turnbull_rhs,
    verify_capelli,
    verify_cauchy_binet,
    verify_cayley,
    verify_dual_capelli,
    verify_theorem1,
    verify_turnbull,
    verify_turnbull_lemma,
)
from capelli.polarized import config_operator
from capelli.polynomial import Polynomial, det_poly, grid_matrix, permutation_sign, xvar
from capelli.weyl import WeylElement, generator, monomials_up_to, weyl_apply


@pytest.mark.parametrize("n", [1, 2, 3])
def test_capelli(n):
    report = verify_capelli(n)
    assert report.passed and report.residual_terms == 0
    assert report.pinned_convention is None


def test_capelli_n1_is_trivial():
    x, d = WeylElement.x(xvar(1, 1)), WeylElement.d(xvar(1, 1))
    assert capelli_lhs(1) == capelli_rhs(1) == x * d


def test_size_gates():
    with pytest.raises(ValueError, match="allow_large"):
        verify_capelli(4)
    with pytest.raises(ValueError, match="beyond"):
        verify_capelli(5, allow_large=True)
    with pytest.raises(ValueError):
        verify_capelli(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reversed_presentation(n):
    assert capelli_lhs_reversed(n) == capelli_rhs(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_configuration_sum_is_capelli_lhs(n):
    total = WeylElement()
    for c in enumerate_configs(n, 1):
        total = total + config_operator(c, 1) * c.sign()
    assert total == capelli_lhs(n)


@pytest.mark.parametrize(
    "lhs,rhs,n",
    [
        (lambda: capelli_lhs(3), lambda: capelli_rhs(3), 3),
        (lambda: identities._turnbull_lhs(2, load_convention("turnbull")), lambda: turnbull_rhs(2), 2),
        (lambda: identities._dual_lhs(3, load_convention("dual_capelli")), lambda: dual_capelli_rhs(3), 3),
    ],
)
def test_action_oracle_agrees_on_random_monomials(lhs, rhs, n):
    a, b = lhs(), rhs()
    assert a == b
    rng = random.Random(n)
    pool = monomials_up_to(sorted(a.variables() | b.variables()), n)
    for mono in rng.choices(pool, k=50):
        p = Polynomial({mono: 1})
        assert weyl_apply(a, p) == weyl_apply(b, p)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_theorem1(n):
    assert verify_theorem1(n).passed
    assert verify_theorem1(n, variant="normal").passed
    assert verify_theorem1(n, variant="dual").passed


def test_cauchy_binet_2_1_by_hand():
    x11, x12 = WeylElement.x(xvar(1, 1)), WeylElement.x(xvar(1, 2))
    d11, d12 = WeylElement.d(xvar(1, 1)), WeylElement.d(xvar(1, 2))
    assert generator("D", 2, 1, 1) == x11 * d11 + x12 * d12 == cauchy_binet_rhs(2, 1)
    assert verify_cauchy_binet(2, 1).passed


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (3, 2)])
def test_cauchy_binet(n, m):
    report = verify_cauchy_binet(n, m)
    assert report.passed
    assert report.pinned_convention == "+(m-i), natural order"


def test_cauchy_binet_rejects_square():
    with pytest.raises(ValueError):
        verify_cauchy_binet(3, 3)


def test_cauchy_binet_n_minus_m_offset_fails():
    # an n - m shift on entry (1,1) does not survive at (2,1)
    conv = Convention("cauchy_binet", 1, "n-i")
    assert not verify_cauchy_binet(2, 1, convention=conv).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_turnbull(n):
    assert verify_turnbull(n).passed
    assert verify_turnbull_lemma(n).passed


def test_turnbull_n1():
    xs, ds = WeylElement.x(xvar(1, 1, True)), WeylElement.d(xvar(1, 1, True))
    assert turnbull_rhs(1) == xs * ds * 2 == generator("S", 1, 1, 1)


def test_turnbull_minus_sign_fails():
    assert not verify_turnbull(2, convention=Convention("turnbull", -1, "n-i")).passed


def _det_d_by_hand(n, p):
    """det(d) applied via explicit partial derivatives, no Weyl products."""
    total = Polynomial()
    for perm in itertools.permutations(range(1, n + 1)):
        term = p
        for col, row in enumerate(perm, start=1):
            term = term.diff(xvar(row, col))
        total = total + term * permutation_sign(perm)
    return total


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_cayley(n, s):
    assert verify_cayley(n, s).passed


def test_cayley_small_values():
    det2 = det_poly(grid_matrix(2, 2))
    assert _det_d_by_hand(2, det2) == Polynomial.constant(2)
    assert _det_d_by_hand(2, det2 ** 2) == det2 * 6
    x = Polynomial.variable(xvar(1, 1))
    for s in range(1, 5):
        assert _det_d_by_hand(1, x ** s) == x ** (s - 1) * s
    assert identities.cayley_factor(2, 2) == 6
    with pytest.raises(ValueError):
        verify_cayley(2, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_capelli(n):
    report = verify_dual_capelli(n)
    assert report.passed
    assert report.pinned_convention == "-(n-i), natural order"


def test_dual_capelli_n1():
    x, d = WeylElement.x(xvar(1, 1)), WeylElement.d(xvar(1, 1))
    assert generator("d", 1, 1, 1) == d * x == x * d + 1 == dual_capelli_rhs(1)


def test_dual_capelli_diagonal_action():
    lhs = identities._dual_lhs(2, load_convention("dual_capelli"))
    det2 = det_poly(grid_matrix(2, 2))
    assert weyl_apply(lhs, det2) == det2 * 6
    assert weyl_apply(lhs, Polynomial.constant(1)) == Polynomial.constant(2)


@pytest.mark.parametrize(
    "call",
    [
        lambda: verify_capelli(2, perturb=1),
        lambda: verify_cauchy_binet(3, 2, perturb=1),
        lambda: verify_turnbull(2, perturb=-1),
        lambda: verify_cayley(2, 2, perturb=1),
        lambda: verify_dual_capelli(2, perturb=1),
    ],
)
def test_perturbed_identities_fail(call):
    report = call()
    assert not report.passed
    assert report.residual_terms > 0


def test_pin_unique_survivors():
    conv = pin_convention("cauchy_binet", 3, 2, persist=False)
    assert (conv.offset_sign, conv.offset_family, conv.column_order) == (1, "m-i", "natural")
    classes = identities.search_conventions("cauchy_binet", 3, 2)
    assert list(classes) == [(1, 0)]
    assert pin_convention("turnbull", 2, persist=False).describe() == "+(n-i), natural order"
    assert pin_convention("dual_capelli", 2, persist=False).describe() == "-(n-i), natural order"


def test_conventions_stable_at_larger_n():
    for identity in ("turnbull", "dual_capelli"):
        assert pin_convention(identity, 3, persist=False) == pin_convention(identity, 2, persist=False)


def test_pin_fails_loudly(monkeypatch):
    monkeypatch.setattr(identities, "_candidate_residual", lambda *a: 1)
    with pytest.raises(ConventionError, match="found 0"):
        pin_convention("turnbull", 2, persist=False)
    monkeypatch.setattr(identities, "_candidate_residual", lambda *a: 0)
    with pytest.raises(ConventionError):
        pin_convention("turnbull", 2, persist=False)
    with pytest.raises(ValueError):
        pin_convention("capelli", 2)


def test_ledger_round_trip(empty_ledger):
    assert not empty_ledger.exists()
    conv = load_convention("turnbull")  # pins on demand
    entries = json.loads(empty_ledger.read_text())
    assert [e["identity"] for e in entries] == ["turnbull"]
    assert entries[0]["offset_values"] == {"1": 1, "2": 0}
    assert entries[0]["pinned_at"] == {"n": 2, "m": None}
    assert load_convention("turnbull") == conv
    pin_convention("turnbull", 3)
    assert len(json.loads(empty_ledger.read_text())) == 1


def test_report_json_round_trip():
    report = verify_cauchy_binet(3, 2)
    back = VerificationReport.from_dict(json.loads(report.to_json()))
    assert back == report
    with pytest.raises(ValueError):
        VerificationReport("capelli", 2, passed=True, residual_terms=3)
