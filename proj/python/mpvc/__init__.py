"""Programs with vanishing constraints: penalties, constraint qualifications, audits."""

import json as _json

from ._mpvc import (
    EvalError,
    InfeasiblePointError,
    InvalidArgument,
    ParseError,
    Problem,
    __version__,
    _analyze,
    _audit,
    _penalty_sweep,
    _scan_error_bound,
    _solve,
    dist_omega,
    load_problem,
    parse_problem,
)

__all__ = [
    "EvalError",
    "InfeasiblePointError",
    "InvalidArgument",
    "ParseError",
    "Problem",
    "__version__",
    "analyze",
    "audit",
    "classify",
    "dist_omega",
    "load_problem",
    "parse_problem",
    "penalty_sweep",
    "scan_error_bound",
    "solve",
]


def classify(problem, x, tol_active=1e-8):
    """Index sets at a feasible point (0-based indices)."""
    return _json.loads(problem._classify(list(x), tol_active))


def analyze(problem, x, directions=360, seed=7, tol_active=1e-8):
    """Constraint-qualification verdicts, certificates and the ACQ probe."""
    return _json.loads(_analyze(problem, list(x), directions, seed, tol_active))


def penalty_sweep(problem, x, alphas, seed=7):
    return _json.loads(_penalty_sweep(problem, list(x), list(alphas), seed))


def scan_error_bound(problem, x, radius=0.1, samples=500, seed=7):
    return _json.loads(_scan_error_bound(problem, list(x), radius, samples, seed))


def solve(problem, seed=7):
    return _json.loads(_solve(problem, seed))


def audit(instances=200, seed=7):
    return _json.loads(_audit(instances, seed))
