import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfixpoint.fuzzy import (FuzzyMetric, TNormKind, absolute_difference,
                             audit_gv_axioms, audit_tnorm_axioms,
                             audit_tnorm_ordering, fuzzy_fixed_point,
                             fuzzy_membership, real_line_sampler, tnorm_eval)

unit = st.floats(0.0, 1.0)

LINE = FuzzyMetric(base_distance=absolute_difference)


# ------------------------------------------------------------------- t-norms

def test_tnorm_eval_known_values():
    assert tnorm_eval(TNormKind.MINIMUM, 0.3, 1.0) == 0.3
    assert tnorm_eval(TNormKind.LUKASIEWICZ, 0.5, 0.4) == 0.0
    assert tnorm_eval(TNormKind.PRODUCT, 0.5, 0.4) == pytest.approx(0.2, abs=1e-15)


def test_tnorm_eval_rejects_out_of_range():
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        tnorm_eval(TNormKind.PRODUCT, 1.2, 0.5)
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        tnorm_eval(TNormKind.MINIMUM, 0.5, -0.1)


@settings(max_examples=200)
@given(unit, unit, st.sampled_from(list(TNormKind)))
def test_tnorm_commutative_and_bounded(a, b, kind):
    ab = tnorm_eval(kind, a, b)
    assert ab == tnorm_eval(kind, b, a)
    assert 0.0 <= ab <= 1.0
    assert ab <= min(a, b) + 1e-15


def test_all_builtin_tnorms_pass_axiom_audit():
    for kind in TNormKind:
        report = audit_tnorm_axioms(kind, grid_resolution=21)
        assert report.passed, (kind, report.first_failure())


def test_broken_operation_fails_commutativity_with_witness():
    report = audit_tnorm_axioms(lambda a, b: np.asarray(a) * np.ones_like(b), 11)
    assert not report.passed
    failure = report.first_failure()
    assert failure.name == "commutativity"
    assert failure.witness is not None and "abs_difference" in failure.witness


def test_tnorm_ordering_on_grid():
    report = audit_tnorm_ordering(21)
    assert report.passed


def test_audit_rejects_small_grid():
    with pytest.raises(ValueError):
        audit_tnorm_axioms(TNormKind.PRODUCT, 4)


# --------------------------------------------------------------- membership

def test_membership_formula_values():
    assert fuzzy_membership(LINE, 1.5, 1.5, 1.0) == 1.0
    assert fuzzy_membership(LINE, 0.0, 1.0, 1.0) == 0.5
    assert fuzzy_membership(LINE, 0.0, 7.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        fuzzy_membership(LINE, 0.0, 1.0, -1.0)


@settings(max_examples=200)
@given(st.floats(-50, 50), st.floats(-50, 50), st.floats(1e-3, 1e3))
def test_membership_in_unit_interval(x, y, t):
    m = fuzzy_membership(LINE, x, y, t)
    assert 0.0 <= m <= 1.0
    if x == y:
        assert m == 1.0
    elif m == 1.0:
        # t/(t+d) saturates once d falls below the resolution of t
        assert abs(x - y) <= 1e-12 * t


# ---------------------------------------------------------------- gv axioms

def test_gv_axioms_line_carrier_all_tnorms():
    for kind in TNormKind:
        fm = FuzzyMetric(base_distance=absolute_difference, tnorm=kind)
        report = audit_gv_axioms(fm, real_line_sampler(), 32, 8, rng_seed=5)
        assert report.passed, (kind, report.first_failure())


def test_gv_axioms_detect_degenerate_distance():
    fm = FuzzyMetric(base_distance=lambda x, y: 0.0)
    report = audit_gv_axioms(fm, real_line_sampler(), 16, 8, rng_seed=0)
    assert not report.passed
    assert report.first_failure().name == "identity"


def test_gv_axioms_detect_nonmetric_triangle_violation():
    # squared distance violates the triangle inequality; under the minimum
    # t-norm the induced membership then breaks the transitivity axiom
    fm = FuzzyMetric(base_distance=lambda x, y: (x - y) ** 2,
                     tnorm=TNormKind.MINIMUM)
    report = audit_gv_axioms(fm, real_line_sampler(), 64, 8, rng_seed=0)
    assert not report.passed
    names = {c.name for c in report.checks if not c.passed}
    assert "tnorm_triangle" in names


def test_gv_axioms_validate_sample_counts():
    with pytest.raises(ValueError):
        audit_gv_axioms(LINE, real_line_sampler(), point_samples=5)
    with pytest.raises(ValueError):
        audit_gv_axioms(LINE, real_line_sampler(), point_samples=16, t_samples=2)


def test_gv_axioms_deterministic_per_seed():
    r1 = audit_gv_axioms(LINE, real_line_sampler(), 16, 8, rng_seed=9)
    r2 = audit_gv_axioms(LINE, real_line_sampler(), 16, 8, rng_seed=9)
    assert r1 == r2


# --------------------------------------------------------- fuzzy fixed point

def test_halving_map_condition_holds_with_equality():
    report = fuzzy_fixed_point(LINE, lambda x: x / 2, 0.5, 8.0, 1e-12, 10000,
                               point_sampler=real_line_sampler())
    assert report.converged
    assert abs(report.fixed_point) <= 1e-12
    assert report.condition.holds
    # scaling both distance and t by the same factor leaves t/(t+d) unchanged
    assert report.condition.max_abs_margin <= 1e-14


def test_identity_map_violates_condition_but_iterates():
    report = fuzzy_fixed_point(LINE, lambda x: x, 0.5, 3.0, 1e-12, 10,
                               point_sampler=real_line_sampler())
    assert report.converged
    assert report.iterations_used == 1
    assert report.fixed_point == 3.0
    assert not report.condition.holds
    assert report.condition.violations > 0
    assert report.condition.witness is not None


def test_fuzzy_fixed_point_validates_k():
    for bad in (0.0, 1.0, -0.3, 1.7):
        with pytest.raises(ValueError, match=r"k must lie in \(0, 1\)"):
            fuzzy_fixed_point(LINE, lambda x: x / 2, bad, 1.0,
                              point_sampler=real_line_sampler())


def test_fuzzy_fixed_point_needs_pairs_or_sampler():
    with pytest.raises(ValueError, match="condition_pairs or a point_sampler"):
        fuzzy_fixed_point(LINE, lambda x: x / 2, 0.5, 1.0)


def test_fuzzy_fixed_point_budget_exhaustion():
    report = fuzzy_fixed_point(LINE, lambda x: 0.99999 * x, 0.99999, 100.0,
                               1e-12, 10, point_sampler=real_line_sampler())
    assert not report.converged
    assert report.iterations_used == 10


def test_fuzzy_fixed_point_accepts_explicit_pairs():
    pairs = [(0.0, 1.0), (2.0, -3.0), (5.0, 5.0)]
    report = fuzzy_fixed_point(LINE, lambda x: x / 2, 0.5, 4.0,
                               condition_pairs=pairs, t_samples=5)
    assert report.condition.samples == len(pairs) * 5
    assert report.condition.holds
