"""Multistart damped Newton root-finding for the matrix equation.

The residual map is treated as a system over the 18 real coordinates
(real parts of the 9 entries first, then imaginary parts).  The map is
polynomial, hence holomorphic, so the real Jacobian is assembled from the
analytic complex Jacobian.  Starts are independent and seeded individually
from (master seed, start index); results do not depend on evaluation
order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mateq
from .linalg import Mat3

__all__ = [
    "SolveResult",
    "SurveyReport",
    "residual_jacobian",
    "newton_solve",
    "multistart",
]

DEFAULT_NEWTON_TOL = 1e-12
DEFAULT_MAX_ITER = 50
DEFAULT_RADIUS = 2.0
#: Tikhonov shift for least-squares steps at singular Jacobians
TIKHONOV_SHIFT = 1e-10
MIN_DAMPING = 2.0**-20
#: extra Newton steps taken after the tolerance is reached, pushing roots to
#: the attainable floor so downstream structural identities hold tightly
POLISH_STEPS = 4


@dataclass(frozen=True)
class SolveResult:
    A_final: Mat3
    residual_norm: float
    iterations: int
    converged: bool
    classification: mateq.ClassificationReport | None = None


@dataclass(frozen=True)
class SurveyReport:
    starts: int
    converged_count: int
    family_histogram: dict
    k_values: list
    failures: int


def _pack(A: np.ndarray) -> np.ndarray:
    return np.concatenate([A.real.ravel(), A.imag.ravel()])


def _unpack(x: np.ndarray) -> np.ndarray:
    return (x[:9] + 1j * x[9:]).reshape(3, 3)


def _adjugate_np(A: np.ndarray) -> np.ndarray:
    # 3x3 polynomial identity: A* = A^2 - tr(A) A + ((tr A)^2 - tr(A^2))/2 I
    t = np.trace(A)
    A2 = A @ A
    c1 = (t * t - np.trace(A2)) / 2
    return A2 - t * A + c1 * np.eye(3)


def _residual_np(A: np.ndarray) -> np.ndarray:
    t = np.trace(A) + 1
    return A.T @ (t * np.eye(3) - A) - _adjugate_np(A)


def _residual_flat(x: np.ndarray) -> np.ndarray:
    return _pack(_residual_np(_unpack(x)))


def _complex_jacobian(A: np.ndarray) -> np.ndarray:
    """9x9 complex Jacobian of A -> residual(A) in row-major entry order."""
    t = np.trace(A)
    I = np.eye(3)
    M = (t + 1) * I - A
    At = A.T
    J = np.zeros((9, 9), dtype=complex)
    for p in range(3):
        for q in range(3):
            E = np.zeros((3, 3))
            E[p, q] = 1.0
            dtr = 1.0 if p == q else 0.0
            d_main = E.T @ M + At @ (dtr * I - E)
            # from A* = A^2 - tr(A) A + c1 I with c1 = ((tr A)^2 - tr(A^2))/2
            dc1 = t * dtr - A[q, p]
            d_adj = E @ A + A @ E - dtr * A - t * E + dc1 * I
            J[:, 3 * p + q] = (d_main - d_adj).ravel()
    return J


def residual_jacobian(A: Mat3) -> np.ndarray:
    """18x18 real Jacobian of the residual in (real parts, imaginary parts)
    coordinates; matches central finite differences to 1e-5 relative."""
    Jc = _complex_jacobian(A.to_numpy())
    re, im = Jc.real, Jc.imag
    return np.block([[re, -im], [im, re]])


def newton_solve(
    A0: Mat3,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_NEWTON_TOL,
    classify_tol: float = mateq.DEFAULT_CLASSIFY_TOL,
) -> SolveResult:
    """Damped Newton iteration on the 18-dimensional real system.

    Steps fall back to Tikhonov-regularized normal equations when the
    Jacobian is singular (the solution variety is positive-dimensional
    along the parametrized family, so this happens at legitimate roots).
    Non-convergence is reported in the result, never raised.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = _pack(A0.to_numpy())
    iterations = 0
    fx = _residual_flat(x)
    norm = float(np.linalg.norm(fx))
    for _ in range(max_iter):
        if norm < tol:
            break
        x, fx, norm, accepted = _damped_step(x, fx, norm)
        iterations += 1
        if not accepted:
            break

    converged = norm < tol
    if converged:
        # polish: the structural identities of a root are only as tight as
        # the final residual, so drive it to the floor while steps keep paying
        for _ in range(POLISH_STEPS):
            if norm == 0.0:
                break
            x_new, f_new, n_new, accepted = _damped_step(x, fx, norm)
            if not accepted:
                break
            x, fx, norm = x_new, f_new, n_new
            iterations += 1
    A_final = Mat3.from_numpy(_unpack(x))
    classification = None
    if converged:
        try:
            classification = mateq.classify(A_final, tol=classify_tol)
        except (mateq.NotASolution, mateq.Inconclusive):
            classification = None
    return SolveResult(
        A_final=A_final,
        residual_norm=norm,
        iterations=iterations,
        converged=converged,
        classification=classification,
    )


def _damped_step(x: np.ndarray, fx: np.ndarray, norm: float):
    """One damped Newton step; returns (x, fx, norm, accepted)."""
    J = residual_jacobian(Mat3.from_numpy(_unpack(x)))
    sv = np.linalg.svd(J, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= 1e-12 * sv[0]:
        lhs = J.T @ J + TIKHONOV_SHIFT * np.eye(18)
        step = np.linalg.solve(lhs, -J.T @ fx)
    else:
        step = np.linalg.solve(J, -fx)
    lam = 1.0
    while lam >= MIN_DAMPING:
        x_new = x + lam * step
        f_new = _residual_flat(x_new)
        n_new = float(np.linalg.norm(f_new))
        if n_new < norm:
            return x_new, f_new, n_new, True
        lam *= 0.5
    return x, fx, norm, False


def _random_start(rng: np.random.Generator, radius: float) -> np.ndarray:
    # uniform over the complex disk of the given radius, per entry
    u = rng.random(size=(3, 3))
    theta = rng.random(size=(3, 3)) * 2 * np.pi
    r = radius * np.sqrt(u)
    return r * np.exp(1j * theta)


def multistart(
    n_starts: int,
    seed: int,
    radius: float = DEFAULT_RADIUS,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_NEWTON_TOL,
    classify_tol: float = mateq.DEFAULT_CLASSIFY_TOL,
) -> SurveyReport:
    """Run Newton from seeded random starts and tally the families found.

    Every converged point must classify into one of the five families;
    a converged point without a classification raises
    :class:`mateq.Inconclusive`, signalling a tolerance failure.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    histogram: dict[str, int] = {}
    k_values: list[complex] = []
    converged_count = 0
    failures = 0
    for index in range(n_starts):
        rng = np.random.default_rng([seed, index])
        A0 = Mat3.from_numpy(_random_start(rng, radius))
        result = newton_solve(A0, max_iter=max_iter, tol=tol, classify_tol=classify_tol)
        if not result.converged:
            failures += 1
            continue
        if result.classification is None:
            raise mateq.Inconclusive(
                f"converged point at start {index} failed to classify"
            )
        converged_count += 1
        tag = result.classification.tag
        name = tag.kind.value
        histogram[name] = histogram.get(name, 0) + 1
        if tag.kind == mateq.FamilyKind.K_FAMILY:
            k = tag.k
            k_values.append(k.to_complex() if hasattr(k, "to_complex") else complex(k))
    return SurveyReport(
        starts=n_starts,
        converged_count=converged_count,
        family_histogram=histogram,
        k_values=k_values,
        failures=failures,
    )
