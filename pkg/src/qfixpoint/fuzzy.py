"""Fuzzy-metric machinery: t-norms, graded membership, and the fuzzy contraction.

The membership function induced by a classical metric d is
M(x, y, t) = t / (t + d(x, y)) for t > 0 and M(x, y, 0) = 0.  The fuzzy
contraction condition audited here is M(f(x), f(y), k*t) >= M(x, y, t) for
a factor k in (0, 1); for the induced membership it is equivalent to
d(f(x), f(y)) <= k * d(x, y).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

import numpy as np

from .reports import AuditCheck, AxiomAuditReport

__all__ = [
    "TNormKind",
    "FuzzyMetric",
    "GSConditionAudit",
    "FuzzyFixedPointReport",
    "tnorm_eval",
    "audit_tnorm_axioms",
    "audit_tnorm_ordering",
    "fuzzy_membership",
    "audit_gv_axioms",
    "fuzzy_fixed_point",
    "absolute_difference",
    "real_line_sampler",
]

# comparisons among audited quantities tolerate roundoff at this scale;
# exact real-arithmetic identities (e.g. T(x,1) = x for the Lukasiewicz
# t-norm) fail by ~1 ulp in binary floating point
AUDIT_SLACK = 1e-12

T_RANGE = (1e-3, 1e3)


class TNormKind(str, Enum):
    MINIMUM = "minimum"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"


def _tnorm_fn(kind: TNormKind) -> Callable:
    if kind == TNormKind.MINIMUM:
        return np.minimum
    if kind == TNormKind.PRODUCT:
        return np.multiply
    if kind == TNormKind.LUKASIEWICZ:
        return lambda a, b: np.maximum(0.0, a + b - 1.0)
    raise ValueError(f"unknown t-norm kind: {kind!r}")


def tnorm_eval(tnorm: TNormKind, a: float, b: float) -> float:
    """Evaluate a t-norm at a pair of membership grades in [0, 1]."""
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError("t-norm arguments must lie in [0, 1]")
    return float(_tnorm_fn(TNormKind(tnorm))(a, b))


def audit_tnorm_axioms(tnorm, grid_resolution: int = 21) -> AxiomAuditReport:
    """Exhaustive grid audit of the four t-norm axioms.

    ``tnorm`` is a TNormKind or any callable on ndarray pairs, so the audit
    can also demonstrate failure on a deliberately broken operation.
    Commutativity and the identity element are checked on all grid pairs,
    associativity and monotonicity on all grid triples/pairs, each with
    AUDIT_SLACK tolerance.
    """
    if grid_resolution < 5:
        raise ValueError("grid_resolution must be at least 5")
    fn = _tnorm_fn(TNormKind(tnorm)) if isinstance(tnorm, (TNormKind, str)) else tnorm
    g = np.linspace(0.0, 1.0, grid_resolution)
    x = g[:, None, None]
    y = g[None, :, None]
    z = g[None, None, :]

    checks = []

    diff = np.abs(fn(x[:, :, 0], y[:, :, 0]) - fn(y[:, :, 0], x[:, :, 0]))
    checks.append(_grid_check("commutativity", diff, g, npairs=2))

    diff = np.abs(fn(x, fn(y, z)) - fn(fn(x, y), z))
    checks.append(_grid_check("associativity", diff, g, npairs=3))

    # along the sorted grid, T(x, .) must be nondecreasing
    vals = fn(x[:, :, 0], y[:, :, 0])
    drop = np.diff(vals, axis=1)
    witness = None
    bad = np.argwhere(drop < -AUDIT_SLACK)
    if bad.size:
        i, j = bad[0]
        witness = {"x": float(g[i]), "y": float(g[j]), "z": float(g[j + 1]),
                   "t_xy": float(vals[i, j]), "t_xz": float(vals[i, j + 1])}
    checks.append(AuditCheck(name="monotonicity", passed=not bad.size,
                             checked=vals.size - grid_resolution, witness=witness))

    diff = np.abs(fn(g, np.ones_like(g)) - g)
    checks.append(_grid_check("identity_element", diff, g, npairs=1))

    return AxiomAuditReport(target="tnorm-axioms",
                            passed=all(c.passed for c in checks), checks=tuple(checks))


def _grid_check(name, diff, g, npairs):
    idx = np.unravel_index(int(np.argmax(diff)), diff.shape)
    worst = float(diff[idx])
    witness = None
    if worst > AUDIT_SLACK:
        witness = {chr(ord("x") + i): float(g[j]) for i, j in enumerate(idx)}
        witness["abs_difference"] = worst
    return AuditCheck(name=name, passed=worst <= AUDIT_SLACK, checked=diff.size,
                      witness=witness)


def audit_tnorm_ordering(grid_resolution: int = 21) -> AxiomAuditReport:
    """Check lukasiewicz <= product <= minimum on an exhaustive grid."""
    if grid_resolution < 5:
        raise ValueError("grid_resolution must be at least 5")
    g = np.linspace(0.0, 1.0, grid_resolution)
    a = g[:, None]
    b = g[None, :]
    luk = np.maximum(0.0, a + b - 1.0)
    prod = a * b
    mini = np.minimum(a, b)
    checks = []
    for name, diff in (("lukasiewicz_le_product", luk - prod),
                       ("product_le_minimum", prod - mini)):
        checks.append(_grid_check(name, np.maximum(diff, 0.0), g, npairs=2))
    return AxiomAuditReport(target="tnorm-ordering",
                            passed=all(c.passed for c in checks), checks=tuple(checks))


@dataclass(frozen=True)
class FuzzyMetric:
    """Graded indistinguishability induced by a classical metric."""

    base_distance: Callable[[Any, Any], float]
    tnorm: TNormKind = TNormKind.PRODUCT


def fuzzy_membership(fm: FuzzyMetric, x, y, t: float) -> float:
    """Membership grade M(x, y, t) = t / (t + d(x, y)), with M(., ., 0) = 0."""
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    if t == 0.0:
        return 0.0
    d = fm.base_distance(x, y)
    if d < 0.0:
        raise ValueError("base_distance returned a negative value")
    return t / (t + d)


def audit_gv_axioms(fm: FuzzyMetric, point_sampler: Callable, point_samples: int = 64,
                    t_samples: int = 16, rng_seed: int = 0) -> AxiomAuditReport:
    """Randomized audit of the five fuzzy-metric axioms.

    ``point_sampler(rng)`` draws carrier points.  Axioms 1-4 (zero at t=0,
    identity, symmetry, t-norm triangle inequality) are checked on sampled
    pairs/triples with t, s drawn log-uniformly from T_RANGE.  Axiom 5
    (continuity in t) is probed per pair on a dense log-spaced t-grid:
    membership must be nondecreasing in t and small relative t-steps must
    produce membership changes below 1e-6.
    """
    if point_samples < 10:
        raise ValueError("point_samples must be at least 10")
    if t_samples < 5:
        raise ValueError("t_samples must be at least 5")
    rng = np.random.default_rng(rng_seed)
    pts = [point_sampler(rng) for _ in range(point_samples)]
    ts = 10.0 ** rng.uniform(math.log10(T_RANGE[0]), math.log10(T_RANGE[1]), t_samples)
    tri = rng.integers(0, point_samples, size=(point_samples, 3))
    tnorm = _tnorm_fn(fm.tnorm)

    checks = []

    witness = None
    count = 0
    for i in range(point_samples - 1):
        count += 1
        m0 = fuzzy_membership(fm, pts[i], pts[i + 1], 0.0)
        if m0 != 0.0 and witness is None:
            witness = {"x": pts[i], "y": pts[i + 1], "membership_at_0": float(m0)}
    checks.append(AuditCheck(name="zero_at_t0", passed=witness is None,
                             checked=count, witness=witness))

    witness = None
    count = 0
    for p in pts:
        for t in ts:
            count += 1
            m = fuzzy_membership(fm, p, p, float(t))
            if m != 1.0 and witness is None:
                witness = {"x": p, "t": float(t), "membership": float(m)}
    # distinct carrier points must never reach grade 1; this also catches
    # degenerate base distances that report 0 for distinct points
    for i in range(point_samples - 1):
        x, y = pts[i], pts[i + 1]
        if x == y:
            continue
        for t in ts:
            count += 1
            m = fuzzy_membership(fm, x, y, float(t))
            if m >= 1.0 and witness is None:
                witness = {"x": x, "y": y, "t": float(t), "membership": float(m)}
    checks.append(AuditCheck(name="identity", passed=witness is None,
                             checked=count, witness=witness))

    witness = None
    count = 0
    for i in range(point_samples - 1):
        x, y = pts[i], pts[i + 1]
        for t in ts:
            count += 1
            m_xy = fuzzy_membership(fm, x, y, float(t))
            m_yx = fuzzy_membership(fm, y, x, float(t))
            if m_xy != m_yx and witness is None:
                witness = {"x": x, "y": y, "t": float(t),
                           "m_xy": float(m_xy), "m_yx": float(m_yx)}
    checks.append(AuditCheck(name="symmetry", passed=witness is None,
                             checked=count, witness=witness))

    witness = None
    count = 0
    for ia, ib, ic in tri:
        x, y, z = pts[ia], pts[ib], pts[ic]
        t, s = 10.0 ** rng.uniform(math.log10(T_RANGE[0]), math.log10(T_RANGE[1]), 2)
        count += 1
        lhs = float(tnorm(fuzzy_membership(fm, x, y, t), fuzzy_membership(fm, y, z, s)))
        rhs = fuzzy_membership(fm, x, z, t + s)
        if lhs > rhs + AUDIT_SLACK and witness is None:
            witness = {"x": x, "y": y, "z": z, "t": float(t), "s": float(s),
                       "lhs": lhs, "rhs": float(rhs)}
    checks.append(AuditCheck(name="tnorm_triangle", passed=witness is None,
                             checked=count, witness=witness))

    grid = np.geomspace(T_RANGE[0], T_RANGE[1], 64)
    witness = None
    count = 0
    for i in range(point_samples - 1):
        x, y = pts[i], pts[i + 1]
        vals = [fuzzy_membership(fm, x, y, float(t)) for t in grid]
        for j in range(len(grid) - 1):
            count += 1
            if vals[j + 1] < vals[j] - AUDIT_SLACK and witness is None:
                witness = {"x": x, "y": y, "t": float(grid[j]),
                           "drop": float(vals[j] - vals[j + 1])}
        for t in grid:
            count += 1
            jump = abs(fuzzy_membership(fm, x, y, float(t) * (1.0 + 1e-6)) -
                       fuzzy_membership(fm, x, y, float(t)))
            if jump > 1e-6 and witness is None:
                witness = {"x": x, "y": y, "t": float(t), "jump": float(jump)}
    checks.append(AuditCheck(name="continuity_in_t", passed=witness is None,
                             checked=count, witness=witness,
                             detail="monotone on a log grid; 1e-6 relative-step probe"))

    return AxiomAuditReport(target="fuzzy-metric-axioms",
                            passed=all(c.passed for c in checks), checks=tuple(checks))


@dataclass(frozen=True)
class GSConditionAudit:
    """Sampled audit of the fuzzy contraction condition M(fx, fy, kt) >= M(x, y, t)."""

    samples: int
    violations: int
    min_margin: float
    max_abs_margin: float
    witness: dict | None
    holds: bool


@dataclass(frozen=True)
class FuzzyFixedPointReport:
    """Trace of the fuzzy contraction iteration plus its condition audit."""

    iterates: tuple
    step_distances: tuple[float, ...]
    fixed_point: Any
    converged: bool
    iterations_used: int
    k: float
    condition: GSConditionAudit


def fuzzy_fixed_point(fm: FuzzyMetric, f: Callable, k: float, start,
                      tolerance: float = 1e-12, max_iterations: int = 10000, *,
                      condition_pairs=None, point_sampler: Callable | None = None,
                      pair_samples: int = 200, t_samples: int = 16,
                      rng_seed: int = 0) -> FuzzyFixedPointReport:
    """Audit the fuzzy contraction condition, then iterate f to a fixed point.

    The condition M(f(x), f(y), k*t) >= M(x, y, t) is sampled on
    ``condition_pairs`` (or on pairs drawn via ``point_sampler``) with t
    log-uniform over T_RANGE; violations are reported but do not stop the
    iteration.  Iteration proceeds until consecutive iterates are within
    ``tolerance`` in the base distance.
    """
    if not 0.0 < k < 1.0:
        raise ValueError("k must lie in (0, 1)")
    if tolerance <= 0.0:
        raise ValueError("tolerance must be positive")
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")

    rng = np.random.default_rng(rng_seed)
    if condition_pairs is None:
        if point_sampler is None:
            raise ValueError("provide condition_pairs or a point_sampler")
        condition_pairs = [(point_sampler(rng), point_sampler(rng))
                           for _ in range(pair_samples)]

    samples = 0
    violations = 0
    min_margin = math.inf
    max_abs = 0.0
    witness = None
    for x, y in condition_pairs:
        fx, fy = f(x), f(y)
        tvals = 10.0 ** rng.uniform(math.log10(T_RANGE[0]), math.log10(T_RANGE[1]), t_samples)
        for t in tvals:
            t = float(t)
            margin = (fuzzy_membership(fm, fx, fy, k * t)
                      - fuzzy_membership(fm, x, y, t))
            samples += 1
            min_margin = min(min_margin, margin)
            max_abs = max(max_abs, abs(margin))
            if margin < -AUDIT_SLACK:
                violations += 1
                if witness is None:
                    witness = {"x": x, "y": y, "t": t, "margin": float(margin)}
    condition = GSConditionAudit(samples=samples, violations=violations,
                                 min_margin=float(min_margin), max_abs_margin=float(max_abs),
                                 witness=witness, holds=violations == 0)

    iterates = [start]
    steps: list[float] = []
    current = start
    converged = False
    for _ in range(max_iterations):
        nxt = f(current)
        steps.append(float(fm.base_distance(nxt, current)))
        iterates.append(nxt)
        current = nxt
        if steps[-1] <= tolerance:
            converged = True
            break

    return FuzzyFixedPointReport(
        iterates=tuple(iterates),
        step_distances=tuple(steps),
        fixed_point=current,
        converged=converged,
        iterations_used=len(steps),
        k=k,
        condition=condition,
    )


def absolute_difference(x: float, y: float) -> float:
    """The usual metric on the real line."""
    return abs(x - y)


def real_line_sampler(lo: float = -10.0, hi: float = 10.0) -> Callable:
    """Uniform carrier-point sampler for the real line."""
    def sample(rng: np.random.Generator) -> float:
        return float(rng.uniform(lo, hi))
    return sample
