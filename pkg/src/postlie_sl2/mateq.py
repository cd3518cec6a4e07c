"""The matrix equation A'((tr A + 1) I - A) = A* and its solution classes.

Provides the residual of the equation, the five canonical solution
families, the SO(3,C) congruence action, a congruence decision procedure
(invariant prefilter plus randomized witness search), and the classifier
that maps an arbitrary solution to its family.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import so3c
from .linalg import (
    EXACT,
    GaussianRational,
    Mat3,
    _Q,
    _floored_rank,
    _scalar_to_complex,
)

__all__ = [
    "FamilyKind",
    "FamilyTag",
    "ClassificationReport",
    "CongruenceVerdict",
    "NotASolution",
    "Inconclusive",
    "residual",
    "is_solution",
    "representative",
    "congruate",
    "rank2_identity_residual",
    "rank1_identity_residual",
    "classify",
    "congruence_test",
]

DEFAULT_SOLUTION_TOL = 1e-9
DEFAULT_CLASSIFY_TOL = 1e-6
DEFAULT_WITNESS_TOL = 1e-8
DEFAULT_BUDGET = 64
#: a prefilter mismatch must exceed this multiple of the tolerance
PREFILTER_MARGIN = 10.0
_K_SNAP_TOL = 1e-9
_K_SNAP_MAX_DEN = 32


class NotASolution(ValueError):
    """The matrix does not satisfy the matrix equation at the tolerance."""


class Inconclusive(ArithmeticError):
    """The rank/trace pattern matches no classification branch."""


class FamilyKind(enum.Enum):
    ZERO = "Zero"
    MINUS_IDENTITY = "MinusIdentity"
    TRACE_MINUS_2 = "TraceMinus2"
    K_FAMILY = "KFamily"
    NON_SYM_RANK1 = "NonSymRank1"


@dataclass(frozen=True)
class FamilyTag:
    """One of the five congruence classes; KFamily carries its parameter k."""

    kind: FamilyKind
    k: object | None = None

    def __post_init__(self):
        if (self.kind == FamilyKind.K_FAMILY) != (self.k is not None):
            raise ValueError("k is carried by KFamily tags and only by them")

    @classmethod
    def zero(cls):
        return cls(FamilyKind.ZERO)

    @classmethod
    def minus_identity(cls):
        return cls(FamilyKind.MINUS_IDENTITY)

    @classmethod
    def trace_minus_2(cls):
        return cls(FamilyKind.TRACE_MINUS_2)

    @classmethod
    def k_family(cls, k):
        if isinstance(k, (int, Fraction)) or type(k) is type(_Q(0)):
            k = GaussianRational(k)
        return cls(FamilyKind.K_FAMILY, k)

    @classmethod
    def non_sym_rank1(cls):
        return cls(FamilyKind.NON_SYM_RANK1)

    def close_to(self, other: "FamilyTag", tol: float) -> bool:
        if self.kind != other.kind:
            return False
        if self.kind != FamilyKind.K_FAMILY:
            return True
        return abs(_scalar_to_complex(self.k) - _scalar_to_complex(other.k)) <= tol


@dataclass(frozen=True)
class ClassificationReport:
    tag: FamilyTag
    residual_norm: float
    invariants_used: tuple
    witness: Mat3 | None = None


@dataclass(frozen=True)
class CongruenceVerdict:
    """Outcome of the congruence decision procedure.

    ``congruent`` carries a verified witness, ``not_congruent`` the name of
    the separating invariant, ``unknown`` the number of failed witness
    attempts.  Unknown is a value, not an error: the witness search is
    one-sided.
    """

    status: str
    witness: Mat3 | None = None
    separating_invariant: str | None = None
    attempts: int | None = None

    @classmethod
    def congruent(cls, T: Mat3):
        return cls("congruent", witness=T)

    @classmethod
    def not_congruent(cls, invariant: str):
        return cls("not_congruent", separating_invariant=invariant)

    @classmethod
    def unknown(cls, attempts: int):
        return cls("unknown", attempts=attempts)


# ---------------------------------------------------------------------------
# the equation


def residual(A: Mat3) -> Mat3:
    """A'((tr A + 1) I - A) - A*; zero exactly on matrices of PostLie products."""
    I = Mat3.identity_like(A)
    s = A.trace() + 1
    return A.transpose() @ (I.scale(s) - A) - A.adjugate()


def is_solution(A: Mat3, tol: float = DEFAULT_SOLUTION_TOL) -> bool:
    """Exact matrices: residual is exactly zero.  Floating: norm below ``tol``."""
    r = residual(A)
    if A.kind == EXACT:
        return r.is_zero()
    return r.frobenius_norm() < tol


def rank2_identity_residual(A: Mat3) -> Mat3:
    """(tr A + 1) A'A - A'A A; vanishes on every rank-2 solution."""
    ata = A.transpose() @ A
    s = A.trace() + 1
    return ata.scale(s) - ata @ A


def rank1_identity_residual(A: Mat3) -> Mat3:
    """(tr A + 1) A' - A'A; vanishes on every rank-1 solution."""
    s = A.trace() + 1
    return A.transpose().scale(s) - A.transpose() @ A


# ---------------------------------------------------------------------------
# representatives


def _gr(re, im=0) -> GaussianRational:
    return GaussianRational(_Q(*re) if isinstance(re, tuple) else re,
                            _Q(*im) if isinstance(im, tuple) else im)


def representative(tag: FamilyTag) -> Mat3:
    """The canonical matrix of the family, with exact entries.

    For a KFamily tag whose parameter is floating, the matrix is returned
    in floating form instead.
    """
    kind = tag.kind
    if kind == FamilyKind.ZERO:
        return Mat3.zero()
    if kind == FamilyKind.MINUS_IDENTITY:
        return -Mat3.identity()
    if kind == FamilyKind.TRACE_MINUS_2:
        p = _gr((-1, 2), (-1, 2))  # -(1+i)/2
        q = _gr((-1, 2), (1, 2))  # (i-1)/2
        return Mat3([[-1, 0, 0], [0, p, q], [0, p, q]])
    if kind == FamilyKind.K_FAMILY:
        k = tag.k
        if isinstance(k, GaussianRational):
            return Mat3(
                [
                    [k, 0, 0],
                    [0, _gr((-1, 2)), _gr(0, (1, 2))],
                    [0, _gr(0, (-1, 2)), _gr((-1, 2))],
                ]
            )
        kc = complex(k)
        return Mat3(
            [
                [kc, 0j, 0j],
                [0j, -0.5 + 0j, 0.5j],
                [0j, -0.5j, -0.5 + 0j],
            ]
        )
    if kind == FamilyKind.NON_SYM_RANK1:
        return Mat3(
            [
                [_gr((-1, 2), 1), _gr(1, (-1, 2)), 0],
                [_gr(1, (1, 2)), _gr((-1, 2), -1), 0],
                [0, 0, 0],
            ]
        )
    raise ValueError(f"unknown family kind {kind!r}")


def congruate(A: Mat3, T: Mat3, tol: float = DEFAULT_WITNESS_TOL) -> Mat3:
    """T' A T for T in SO(3,C); solutions map to solutions.

    Raises :class:`so3c.NotOrthogonal` when T fails membership at ``tol``.
    """
    if not so3c.is_special_orthogonal(T, tol):
        raise so3c.NotOrthogonal("congruate needs T in SO(3,C)")
    if A.kind != T.kind:
        A, T = A.to_floating(), T.to_floating()
    return T.transpose() @ A @ T


# ---------------------------------------------------------------------------
# congruence decision procedure


def _spectral_scale(A: Mat3) -> float:
    """max(largest singular value, 1); the floor for derived-rank thresholds."""
    return max(float(np.linalg.norm(A.to_numpy(), 2)), 1.0)


def _rank_of(M: Mat3, tol: float, floor: float) -> int:
    """Exact rank for exact matrices, scale-floored floating rank otherwise.

    The floor keeps ranks of derived matrices (A'A, sym(A) + I/2, and
    near-zero solutions) meaningful when they are mathematically zero but
    numerically noise; a bare relative threshold would count noise as full
    rank.
    """
    if M.kind == EXACT:
        return M.rank()
    return _floored_rank(M, tol, floor)


def _shifted_sym_rank(A: Mat3, tol: float) -> int:
    half = GaussianRational(_Q(1, 2)) if A.kind == EXACT else 0.5
    shifted = A.sym_part() + Mat3.identity_like(A).scale(half)
    return _rank_of(shifted, tol, _spectral_scale(A))


def _char_poly_mismatch(pa, pb, tol: float, exact: bool) -> bool:
    if exact:
        return pa != pb
    gap = max(abs(_scalar_to_complex(a) - _scalar_to_complex(b)) for a, b in zip(pa, pb))
    return gap > PREFILTER_MARGIN * tol


def _invariant_prefilter(A: Mat3, B: Mat3, tol: float) -> str | None:
    """Compare congruence invariants; return the name of the first one that
    separates A from B, or None.

    Congruence by T in SO(3,C) is an orthogonal similarity (T' = T^-1), so
    ranks and characteristic polynomials of A, A'A and sym(A) are all
    preserved.
    """
    exact = A.kind == EXACT and B.kind == EXACT
    if _rank_of(A, tol, 1.0) != _rank_of(B, tol, 1.0):
        return "rank(A)"
    ata = A.transpose() @ A
    btb = B.transpose() @ B
    # A'A is quadratic in A, so its rank threshold is floored at scale(A)^2
    if _rank_of(ata, tol, _spectral_scale(A) ** 2) != _rank_of(
        btb, tol, _spectral_scale(B) ** 2
    ):
        return "rank(A'A)"
    # rank(sym(A) + I/2) separates pairs the listed invariants cannot, e.g.
    # the two rank-1 families, which share all characteristic polynomials
    if _shifted_sym_rank(A, tol) != _shifted_sym_rank(B, tol):
        return "rank(sym(A)+I/2)"
    if _char_poly_mismatch(A.char_poly(), B.char_poly(), tol, exact):
        return "char_poly(A)"
    if _char_poly_mismatch(ata.char_poly(), btb.char_poly(), tol, exact):
        return "char_poly(A'A)"
    if _char_poly_mismatch(
        A.sym_part().char_poly(), B.sym_part().char_poly(), tol, exact
    ):
        return "char_poly(sym(A))"
    return None


def _nullspace_sylvester(Af: np.ndarray, Bf: np.ndarray) -> list[np.ndarray]:
    """Basis of {S : A S = S B} under row-major vectorization."""
    M = np.kron(Af, np.eye(3)) - np.kron(np.eye(3), Bf.T)
    _, sv, vh = np.linalg.svd(M)
    cutoff = 1e-10 * max(1.0, float(sv[0]) if sv.size else 1.0)
    basis = []
    for idx in range(9):
        if idx >= sv.size or sv[idx] <= cutoff:
            basis.append(vh[idx].conj().reshape(3, 3))
    return basis


def _upper_triangle(M: np.ndarray) -> np.ndarray:
    return np.array([M[0, 0], M[0, 1], M[0, 2], M[1, 1], M[1, 2], M[2, 2]])


def _orthogonality_newton(basis, coeffs, max_iter=60):
    """Gauss-Newton for S'S = I within span(basis); the map is holomorphic
    in the coefficients, so complex least-squares steps are exact Newton."""
    stack = np.stack(basis)
    c = coeffs

    def assemble(cv):
        return np.tensordot(cv, stack, axes=1)

    S = assemble(c)
    g = _upper_triangle(S.T @ S - np.eye(3))
    for _ in range(max_iter):
        if np.abs(g).max() < 1e-12:
            break
        J = np.stack(
            [_upper_triangle(N.T @ S + S.T @ N) for N in basis], axis=1
        )
        step, *_ = np.linalg.lstsq(J, -g, rcond=None)
        lam, improved = 1.0, False
        gnorm = np.linalg.norm(g)
        for _ in range(25):
            c_new = c + lam * step
            S_new = assemble(c_new)
            g_new = _upper_triangle(S_new.T @ S_new - np.eye(3))
            if np.linalg.norm(g_new) < gnorm:
                c, S, g = c_new, S_new, g_new
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    return S, float(np.abs(g).max())


def congruence_test(
    A: Mat3,
    B: Mat3,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    tol: float = DEFAULT_WITNESS_TOL,
) -> CongruenceVerdict:
    """Decide whether B = T' A T for some T in SO(3,C).

    Stage 1 compares congruence invariants (ranks of A, A'A and
    sym(A) + I/2, characteristic polynomials of A, A'A and sym(A)) and
    returns ``not_congruent`` on a mismatch beyond ten times ``tol``
    (exact mismatches in exact mode).  Stage 2 parametrizes the
    nullspace of S -> A S - S B and runs
    damped Gauss-Newton on S'S = I from ``budget`` seeded random starts; a
    verified witness gives ``congruent``, anything else ``unknown``.
    Witnesses satisfy T'T = I, det T = 1 and T' A T = B to ``tol``.
    """
    sep = _invariant_prefilter(A, B, tol)
    if sep is not None:
        return CongruenceVerdict.not_congruent(sep)

    Af, Bf = A.to_numpy(), B.to_numpy()
    if float(np.linalg.norm(Af - Bf)) <= tol:
        return CongruenceVerdict.congruent(Mat3.identity(exact=False))

    basis = _nullspace_sylvester(Af, Bf)
    if not basis:
        return CongruenceVerdict.unknown(0)

    for start in range(budget):
        rng = np.random.default_rng([seed, start])
        c0 = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        S0 = np.tensordot(c0, np.stack(basis), axes=1)
        scale = np.linalg.norm(S0)
        if scale < 1e-12:
            continue
        c0 *= math.sqrt(3.0) / scale
        S, defect = _orthogonality_newton(basis, c0)
        if defect > 1e-10:
            continue
        det = np.linalg.det(S)
        if abs(det + 1) <= tol:
            S = -S  # odd dimension: -S is orthogonal with determinant +1
            det = np.linalg.det(S)
        if abs(det - 1) > tol:
            continue
        if np.linalg.norm(S.T @ S - np.eye(3)) > tol:
            continue
        if np.linalg.norm(S.T @ Af @ S - Bf) > tol:
            continue
        return CongruenceVerdict.congruent(Mat3.from_numpy(S))
    return CongruenceVerdict.unknown(budget)


# ---------------------------------------------------------------------------
# classification


def _snap_small_rational(z: complex):
    """Return the nearest small rational as GaussianRational when z is
    within 1e-9 of one, otherwise the complex value unchanged."""
    parts = []
    for x in (z.real, z.imag):
        fr = Fraction(x).limit_denominator(_K_SNAP_MAX_DEN)
        if abs(float(fr) - x) > _K_SNAP_TOL:
            return complex(z)
        parts.append(fr)
    return GaussianRational(parts[0], parts[1])


def _extract_k(A: Mat3):
    """KFamily parameter k = tr(A) + 1."""
    t = A.trace() + 1
    if A.kind == EXACT:
        return t
    return _snap_small_rational(complex(t))


def classify(
    A: Mat3,
    tol: float = DEFAULT_CLASSIFY_TOL,
    find_witness: bool = False,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> ClassificationReport:
    """Map a solution of the matrix equation to its congruence class.

    The decision tree uses congruence invariants only: rank(A) splits the
    five families except for two ambiguous spots, which are resolved by
    rank(A'A) (trace -2, rank 2) and by rank(sym(A) + I/2) (rank 1).
    Raises :class:`NotASolution` when the residual exceeds ``tol`` and
    :class:`Inconclusive` when no branch matches, which cannot happen for
    true solutions.
    """
    exact = A.kind == EXACT
    res = residual(A)
    res_norm = res.frobenius_norm()
    if exact:
        if not res.is_zero():
            raise NotASolution("matrix equation residual is nonzero")
    elif res_norm >= tol:
        raise NotASolution(f"matrix equation residual {res_norm:.3e} exceeds {tol:.3e}")

    r = _rank_of(A, tol, 1.0)
    invariants = [("rank(A)", r)]

    tag = None
    if r == 0:
        tag = FamilyTag.zero()
    elif r == 3:
        tag = FamilyTag.minus_identity()
    elif r == 1:
        s = _shifted_sym_rank(A, tol)
        invariants.append(("rank(sym(A)+I/2)", s))
        if s == 1:
            tag = FamilyTag.k_family(GaussianRational(0) if exact else _snap_small_rational(0j))
        elif s == 2:
            tag = FamilyTag.non_sym_rank1()
    elif r == 2:
        t = A.trace()
        invariants.append(("tr(A)", t))
        if exact:
            at_minus_2 = t == GaussianRational(-2)
        else:
            at_minus_2 = abs(complex(t) + 2) <= tol
        if not at_minus_2:
            tag = FamilyTag.k_family(_extract_k(A))
        else:
            ata = A.transpose() @ A
            ra = _rank_of(ata, tol, _spectral_scale(A) ** 2)
            invariants.append(("rank(A'A)", ra))
            if ra == 2:
                tag = FamilyTag.trace_minus_2()
            elif ra == 1:
                tag = FamilyTag.k_family(_extract_k(A))
    if tag is None:
        raise Inconclusive(f"no branch matches invariants {invariants}")

    witness = None
    if find_witness:
        rep = representative(tag).to_floating()
        verdict = congruence_test(rep, A.to_floating(), budget=budget, seed=seed)
        if verdict.status == "congruent":
            witness = verdict.witness
    return ClassificationReport(
        tag=tag,
        residual_norm=float(res_norm),
        invariants_used=tuple(invariants),
        witness=witness,
    )
