"""Numeric and exhaustive cross-checks for the symbolic verdicts.

Sampling one realization at a time can never certify a strong structural
property, so everything here is a consistency check, not a proof: when a
pattern is certified full row rank, every sampled realization must pass
the numeric rank test, and when a network is certified controllable,
every sampled realization must pass the Kalman rank test. A failure in
either direction is a defect (or a tolerance problem), never new
information about the pattern class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolated, BadShape
from .network import StructuredNetwork, validate
from .pattern import (
    SYMBOLS,
    PatternMatrix,
    block_diag,
    pat_add,
    pat_identity,
    sample_realization,
)
from .graph import is_full_row_rank


@dataclass(frozen=True)
class AuditConfig:
    """Trial count, base seed, and the relative singular-value threshold."""

    trials: int = 100
    seed: int = 0
    rank_tolerance: float = 1e-8

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if not 0.0 < self.rank_tolerance < 1.0:
            raise ValueError(
                f"rank_tolerance must lie in (0, 1), got {self.rank_tolerance}"
            )


@dataclass
class AuditOutcome:
    """Counters from an audit run; first_failure keeps the earliest witness."""

    trials_run: int = 0
    failures: int = 0
    first_failure: tuple[int, str] | None = None

    def record(self, trial: int, failure: str | None):
        self.trials_run += 1
        if failure is not None:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = (trial, failure)

    def to_dict(self) -> dict:
        return {
            "trials_run": self.trials_run,
            "failures": self.failures,
            "first_failure": (
                None
                if self.first_failure is None
                else {"trial": self.first_failure[0], "detail": self.first_failure[1]}
            ),
        }


def _numeric_rank(matrix: np.ndarray, tol: float) -> int:
    """Rank as the number of singular values above tol relative to the largest."""
    sigma = np.linalg.svd(matrix, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > tol * sigma[0]))


def _controllability_rank(a: np.ndarray, b: np.ndarray, tol: float) -> int:
    """Numeric rank of [B, AB, ..., A^(n-1) B] with per-column normalization.

    Normalizing the columns keeps the powers of A from drowning the early
    blocks, which matters once n grows past a handful of states.
    """
    n = a.shape[0]
    blocks = [b]
    current = b
    for _ in range(n - 1):
        current = a @ current
        blocks.append(current)
    ctrb = np.hstack(blocks)
    norms = np.linalg.norm(ctrb, axis=0)
    nonzero = norms > 0.0
    ctrb = ctrb.copy()
    ctrb[:, nonzero] /= norms[nonzero]
    return _numeric_rank(ctrb, tol)


def kalman_controllable(a, b, tol: float = 1e-8) -> bool:
    """Classical rank test: the pair (a, b) is controllable iff the
    controllability matrix has rank n."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"state matrix must be square, got shape {a.shape}")
    if b.ndim != 2 or b.shape[0] != a.shape[0]:
        raise ValueError(
            f"input matrix has shape {b.shape}, expected {a.shape[0]} rows"
        )
    return _controllability_rank(a, b, tol) == a.shape[0]


def audit_rank(m: PatternMatrix, cfg: AuditConfig) -> AuditOutcome:
    """Sample realizations of m and test numeric full row rank.

    When the coloring certifies full row rank, any failure here is an
    inconsistency; in the other direction a zero failure count proves
    nothing.
    """
    if m.rows > m.cols:
        raise BadShape(f"row-rank audit needs rows <= cols, got {m.shape}")
    outcome = AuditOutcome()
    for trial in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, trial])
        values = sample_realization(m, rng)
        rank = _numeric_rank(values, cfg.rank_tolerance)
        failure = None
        if rank < m.rows:
            failure = f"numeric row rank {rank} < {m.rows}"
        outcome.record(trial, failure)
    return outcome


def audit_network(network: StructuredNetwork, cfg: AuditConfig) -> AuditOutcome:
    """Sample full network realizations and run the Kalman test on each.

    Each trial draws A, B, C, W, H from their pattern classes with a seed
    derived from (cfg.seed, trial), forms A + B W C and B H numerically,
    and tests controllability. Trials are independent, so the outcome does
    not depend on execution order.
    """
    violations = validate(network)
    if violations:
        raise AssumptionViolated(violations)
    a_pat = block_diag([node.A for node in network.nodes])
    b_pat = block_diag([node.B for node in network.nodes])
    c_pat = block_diag([node.C for node in network.nodes])
    n = a_pat.rows
    outcome = AuditOutcome()
    for trial in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, trial])
        a = sample_realization(a_pat, rng)
        b = sample_realization(b_pat, rng)
        c = sample_realization(c_pat, rng)
        w = sample_realization(network.W, rng)
        h = sample_realization(network.H, rng)
        closed = a + b @ w @ c
        inputs = b @ h
        rank = _controllability_rank(closed, inputs, cfg.rank_tolerance)
        failure = None
        if rank < n:
            failure = f"controllability rank {rank} < {n}"
        outcome.record(trial, failure)
    return outcome


def enumerate_patterns(rows: int, cols: int):
    """Yield every rows-by-cols pattern matrix, 3^(rows*cols) in total."""
    for combo in itertools.product(SYMBOLS, repeat=rows * cols):
        yield PatternMatrix(
            tuple(combo[i * cols : (i + 1) * cols] for i in range(rows))
        )


def _violates_shift_exclusion(m: PatternMatrix) -> bool:
    plain, _ = is_full_row_rank(m)
    if not plain:
        return False
    shifted, _ = is_full_row_rank(pat_add(m, pat_identity(m.rows)))
    return shifted


def shift_exclusion_exhaustive(size: int) -> bool:
    """Check all square patterns of the given size (1 or 2): a pattern and
    its identity-shifted sum never both certify full row rank."""
    if size not in (1, 2):
        raise ValueError(f"exhaustive sweep supports sizes 1 and 2, got {size}")
    return not any(_violates_shift_exclusion(m) for m in enumerate_patterns(size, size))


def shift_exclusion_random(size: int, samples: int, seed: int = 0) -> bool:
    """Randomized extension of the exhaustive sweep to larger sizes."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        draws = rng.integers(0, 3, size=(size, size))
        m = PatternMatrix(tuple(tuple(SYMBOLS[v] for v in row) for row in draws))
        if _violates_shift_exclusion(m):
            return False
    return True
