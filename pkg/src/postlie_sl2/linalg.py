"""Scalar kernels and fixed-size complex matrix algebra (3x3 and 2x2).

Two scalar worlds coexist and never mix inside one matrix:

* exact     -- :class:`GaussianRational`, a complex number whose real and
               imaginary parts are arbitrary-precision rationals.  Every
               operation is exact; equality is mathematical equality.
* floating  -- the built-in ``complex``.  NaN and infinite entries are
               rejected when a matrix or vector is constructed.

Vectors are *row* coordinate vectors throughout: a linear map with matrix
``A`` sends ``v`` to ``v @ A``.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to use concurrently without locks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

try:  # gmpy2's mpq is a drop-in Fraction replacement, roughly 10x faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    _Q = Fraction

__all__ = [
    "GaussianRational",
    "IM",
    "Vec3",
    "Mat3",
    "Mat2",
    "JordanSignature",
    "RankMismatch",
    "IllConditioned",
    "eigenvalues",
    "jordan_signature",
    "rank1_factorization",
]

EXACT = "exact"
FLOATING = "floating"

#: relative threshold below which a singular value counts as zero
DEFAULT_RANK_TOL = 1e-8
#: eigenvalue clustering tolerance for Jordan signatures
DEFAULT_JORDAN_TOL = 1e-6
#: clusters closer than this multiple of the tolerance are ambiguous
JORDAN_AMBIGUITY_FACTOR = 10.0
#: floor on the clustering threshold, relative to the matrix scale: a
#: defective triple eigenvalue of a float64 matrix is only determined to
#: about (machine eps)**(1/3) ~ 6e-6, so finer clustering is meaningless
EIG_CLUSTER_FLOOR = 1e-4


class RankMismatch(ValueError):
    """The matrix does not have the rank required by the operation."""


class IllConditioned(ArithmeticError):
    """Eigenvalue clustering is ambiguous at the working tolerance."""


def _to_rational(value) -> _Q:
    """Coerce ``value`` to an exact rational, refusing floats outright."""
    if isinstance(value, (float, complex)):
        raise TypeError(f"exact scalars need rational components, got {value!r}")
    return _Q(value)


class GaussianRational:
    """Exact complex scalar ``re + im*sqrt(-1)`` with rational components.

    Components are kept in lowest terms with positive denominators by the
    underlying rational type; the field axioms hold exactly.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_rational(re)
        self.im = _to_rational(im)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (float, complex)):
            return None
        try:
            return GaussianRational(value)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    # -- comparisons / conversions --------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_squared(self):
        """``re**2 + im**2`` as an exact rational."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational('{self.re}', '{self.im}')"


#: the exact imaginary unit sqrt(-1)
IM = GaussianRational(0, 1)


def _coerce_scalars(values, where="entries"):
    """Normalize a flat scalar list to one kind; reject mixed or non-finite."""
    values = list(values)
    has_float = any(isinstance(v, (float, complex)) for v in values)
    has_exact = any(isinstance(v, (GaussianRational, Fraction)) for v in values)
    if not has_float and not has_exact:
        # plain ints also land here and default to the exact world
        has_exact = True
    if has_float and has_exact:
        raise ValueError(f"mixed exact and floating {where}")
    if has_float:
        out = []
        for v in values:
            z = complex(v)
            if not (cmath.isfinite(z)):
                raise ValueError(f"non-finite value in {where}: {v!r}")
            out.append(z)
        return tuple(out), FLOATING
    out = []
    for v in values:
        out.append(v if isinstance(v, GaussianRational) else GaussianRational(v))
    return tuple(out), EXACT


def _zero(kind):
    return GaussianRational(0) if kind == EXACT else 0j


def _one(kind):
    return GaussianRational(1) if kind == EXACT else 1 + 0j


def _scalar_to_complex(x) -> complex:
    return x.to_complex() if isinstance(x, GaussianRational) else complex(x)


def _scalar_abs(x) -> float:
    return abs(_scalar_to_complex(x))


class Vec3:
    """Row coordinate vector with three scalars of a single kind."""

    __slots__ = ("coords", "kind")

    def __init__(self, coords):
        cs = tuple(coords)
        if len(cs) != 3:
            raise ValueError("Vec3 needs exactly 3 coordinates")
        self.coords, self.kind = _coerce_scalars(cs, "coordinates")

    @classmethod
    def zero(cls, exact=True):
        return cls([0, 0, 0]) if exact else cls([0j, 0j, 0j])

    @classmethod
    def basis(cls, i, exact=True):
        """The i-th standard basis row vector, 0-indexed."""
        c = [0, 0, 0]
        c[i] = 1
        return cls(c) if exact else cls([complex(x) for x in c])

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other):
        return Vec3([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return Vec3([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Vec3([-a for a in self.coords])

    def scale(self, s):
        return Vec3([s * a for a in self.coords])

    def dot(self, other):
        x, y = self.coords, other.coords
        return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]

    def cross(self, other):
        """Cross product of the coordinate triples."""
        x, y = self.coords, other.coords
        return Vec3(
            [
                x[1] * y[2] - x[2] * y[1],
                x[2] * y[0] - x[0] * y[2],
                x[0] * y[1] - x[1] * y[0],
            ]
        )

    def __matmul__(self, A: "Mat3") -> "Vec3":
        """Row vector times matrix."""
        r = A.rows
        x = self.coords
        return Vec3(
            [
                x[0] * r[0][j] + x[1] * r[1][j] + x[2] * r[2][j]
                for j in range(3)
            ]
        )

    def is_zero(self) -> bool:
        if self.kind == EXACT:
            return not any(self.coords)
        return all(z == 0 for z in self.coords)

    def max_abs(self) -> float:
        return max(_scalar_abs(c) for c in self.coords)

    def to_floating(self) -> "Vec3":
        if self.kind == FLOATING:
            return self
        return Vec3([c.to_complex() for c in self.coords])

    def __eq__(self, other):
        if not isinstance(other, Vec3):
            return NotImplemented
        return self.kind == other.kind and self.coords == other.coords

    def __repr__(self):
        return f"Vec3({list(self.coords)!r})"


class _SquareMatrix:
    """Shared plumbing for the fixed-size matrix classes."""

    __slots__ = ("rows", "kind")
    _n = 0

    def __init__(self, rows):
        rows = [tuple(r) for r in rows]
        n = self._n
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"{type(self).__name__} needs {n}x{n} entries")
        flat, kind = _coerce_scalars([x for r in rows for x in r])
        self.rows = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
        self.kind = kind

    @classmethod
    def zero(cls, exact=True):
        z = 0 if exact else 0j
        return cls([[z] * cls._n for _ in range(cls._n)])

    @classmethod
    def identity(cls, exact=True):
        z, o = (0, 1) if exact else (0j, 1 + 0j)
        return cls([[o if i == j else z for j in range(cls._n)] for i in range(cls._n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return type(self)(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        return type(self)(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.rows])

    def scale(self, s):
        return type(self)([[s * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        n = self._n
        a, b = self.rows, other.rows
        return type(self)(
            [
                [sum((a[i][k] * b[k][j] for k in range(n)), _zero_like(a[i][0])) for j in range(n)]
                for i in range(n)
            ]
        )

    def transpose(self):
        n = self._n
        return type(self)([[self.rows[j][i] for j in range(n)] for i in range(n)])

    def trace(self):
        n = self._n
        t = self.rows[0][0]
        for i in range(1, n):
            t = t + self.rows[i][i]
        return t

    def is_zero(self) -> bool:
        if self.kind == EXACT:
            return not any(x for r in self.rows for x in r)
        return all(x == 0 for r in self.rows for x in r)

    def frobenius_norm(self) -> float:
        if self.kind == EXACT:
            s = sum((x.abs_squared() for r in self.rows for x in r), _Q(0))
            return math.sqrt(float(s))
        return math.sqrt(sum(abs(x) ** 2 for r in self.rows for x in r))

    def max_abs(self) -> float:
        return max(_scalar_abs(x) for r in self.rows for x in r)

    def to_floating(self):
        if self.kind == FLOATING:
            return self
        return type(self)([[x.to_complex() for x in r] for r in self.rows])

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[_scalar_to_complex(x) for x in r] for r in self.rows], dtype=complex
        )

    @classmethod
    def from_numpy(cls, arr) -> "_SquareMatrix":
        return cls([[complex(x) for x in row] for row in np.asarray(arr)])

    def close_to(self, other, tol: float) -> bool:
        a = self.to_numpy() - other.to_numpy()
        return float(np.sqrt((abs(a) ** 2).sum())) <= tol

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.kind == other.kind and self.rows == other.rows

    def __repr__(self):
        body = ", ".join(repr(list(r)) for r in self.rows)
        return f"{type(self).__name__}([{body}])"


def _zero_like(x):
    return GaussianRational(0) if isinstance(x, GaussianRational) else 0j


class Mat2(_SquareMatrix):
    """2x2 complex matrix over either scalar kind."""

    __slots__ = ()
    _n = 2

    def det(self):
        r = self.rows
        return r[0][0] * r[1][1] - r[0][1] * r[1][0]

    def inverse(self) -> "Mat2":
        d = self.det()
        r = self.rows
        if (self.kind == EXACT and not d) or (self.kind == FLOATING and d == 0):
            raise ZeroDivisionError("singular 2x2 matrix")
        return Mat2(
            [
                [r[1][1] / d, -r[0][1] / d],
                [-r[1][0] / d, r[0][0] / d],
            ]
        )


class Mat3(_SquareMatrix):
    """3x3 complex matrix over either scalar kind.

    Hosts the matrix operations the rest of the package is built on:
    transpose, adjugate, determinant, characteristic polynomial, rank and
    the symmetric/antisymmetric split.
    """

    __slots__ = ()
    _n = 3

    @classmethod
    def diag(cls, a, b, c):
        z = 0 if not isinstance(a, (float, complex)) else 0j
        return cls([[a, z, z], [z, b, z], [z, z, c]])

    @classmethod
    def identity_like(cls, other: "Mat3") -> "Mat3":
        return cls.identity(exact=other.kind == EXACT)

    def row(self, i) -> Vec3:
        return Vec3(self.rows[i])

    def det(self):
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def _cofactor(self, i, j):
        rs = [k for k in range(3) if k != i]
        cs = [k for k in range(3) if k != j]
        r = self.rows
        m = r[rs[0]][cs[0]] * r[rs[1]][cs[1]] - r[rs[0]][cs[1]] * r[rs[1]][cs[0]]
        return m if (i + j) % 2 == 0 else -m

    def adjugate(self) -> "Mat3":
        """Transpose of the cofactor matrix; ``A @ A.adjugate() == det(A) * I``."""
        return Mat3([[self._cofactor(j, i) for j in range(3)] for i in range(3)])

    def inverse(self) -> "Mat3":
        d = self.det()
        if (self.kind == EXACT and not d) or (self.kind == FLOATING and d == 0):
            raise ZeroDivisionError("singular 3x3 matrix")
        one = _one(self.kind)
        return self.adjugate().scale(one / d)

    def char_poly(self):
        """Coefficients ``(c2, c1, c0)`` of ``x^3 + c2 x^2 + c1 x + c0``."""
        return (-self.trace(), self.adjugate().trace(), -self.det())

    def sym_part(self) -> "Mat3":
        half = GaussianRational(_Q(1, 2)) if self.kind == EXACT else 0.5
        return (self + self.transpose()).scale(half)

    def antisym_part(self) -> "Mat3":
        half = GaussianRational(_Q(1, 2)) if self.kind == EXACT else 0.5
        return (self - self.transpose()).scale(half)

    def rank(self, tol: float | None = None) -> int:
        """Rank of the matrix.

        Exact matrices are row-reduced over the field (``tol`` must be 0 or
        omitted).  Floating matrices count singular values above
        ``tol * sigma_max`` with ``tol`` defaulting to 1e-8; the zero matrix
        has rank 0.
        """
        if self.kind == EXACT:
            if tol not in (None, 0, 0.0):
                raise ValueError("exact rank requires tol=0")
            return _exact_rank(self.rows)
        if tol is None:
            tol = DEFAULT_RANK_TOL
        sv = np.linalg.svd(self.to_numpy(), compute_uv=False)
        if sv[0] == 0.0:
            return 0
        return int((sv > tol * sv[0]).sum())


def _exact_rank(rows) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, n):
            if m[r][col]:
                f = m[r][col] / piv
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == n:
            break
    return rank


# ---------------------------------------------------------------------------
# eigenvalues and Jordan signatures


def eigenvalues(A: Mat3) -> tuple[complex, complex, complex]:
    """Roots of the characteristic polynomial of a floating matrix.

    Cardano's closed form followed by one Newton polish per root; multiple
    roots are returned with repetition.  Results are sorted by
    ``(real, imag)`` for determinism.
    """
    if A.kind != FLOATING:
        raise TypeError("eigenvalues needs a floating matrix; use to_floating()")
    c2, c1, c0 = (complex(c) for c in A.char_poly())
    roots = _cubic_roots(c2, c1, c0)

    def poly(x):
        return ((x + c2) * x + c1) * x + c0

    def dpoly(x):
        return (3 * x + 2 * c2) * x + c1

    polished = []
    for r in roots:
        d = dpoly(r)
        # skip the polish near multiple roots where the derivative vanishes
        if abs(d) > 1e-6 * (1.0 + abs(r)) ** 2:
            r = r - poly(r) / d
        polished.append(r)
    return tuple(sorted(polished, key=lambda z: (z.real, z.imag)))


def _cubic_roots(c2: complex, c1: complex, c0: complex):
    p = c1 - c2 * c2 / 3
    q = 2 * c2**3 / 27 - c2 * c1 / 3 + c0
    shift = -c2 / 3
    if p == 0 and q == 0:
        return [shift, shift, shift]
    disc = (q / 2) ** 2 + (p / 3) ** 3
    s = cmath.sqrt(disc)
    u3 = -q / 2 + s
    alt = -q / 2 - s
    if abs(alt) > abs(u3):  # avoid cancellation in the cube-root argument
        u3 = alt
    u = u3 ** (1 / 3)
    v = -p / (3 * u)
    w = complex(-0.5, math.sqrt(3) / 2)
    w2 = w * w
    return [u + v + shift, w * u + w2 * v + shift, w2 * u + w * v + shift]


@dataclass(frozen=True)
class JordanSignature:
    """Eigenvalues with descending Jordan block sizes, block sizes summing to 3.

    ``entries`` is a tuple of ``(eigenvalue, block_sizes)`` pairs sorted by
    ``(real, imag)`` of the eigenvalue.
    """

    entries: tuple

    def close_to(self, other: "JordanSignature", tol: float) -> bool:
        if len(self.entries) != len(other.entries):
            return False
        for (la, ba), (lb, bb) in zip(self.entries, other.entries):
            if ba != bb:
                return False
            if abs(_scalar_to_complex(la) - _scalar_to_complex(lb)) > tol:
                return False
        return True


def jordan_signature(A: Mat3, tol: float = DEFAULT_JORDAN_TOL, eigvals=None) -> JordanSignature:
    """Cluster the eigenvalues of ``A`` and determine Jordan block sizes.

    Block sizes for eigenvalue ``lam`` come from the ranks of
    ``(A - lam*I)**p`` for ``p = 1..multiplicity``.  Exact matrices are
    supported when all eigenvalues are Gaussian rational and passed in via
    ``eigvals``.

    The clustering threshold is the larger of ``tol`` and
    ``EIG_CLUSTER_FLOOR`` times the matrix scale, since eigenvalues of a
    floating matrix cannot be resolved below the defective-eigenvalue
    sensitivity of float64.  Raises :class:`IllConditioned` when two
    clusters are separated by less than ten times that threshold.
    """
    if A.kind == EXACT:
        if eigvals is None:
            raise TypeError("exact jordan_signature needs explicit eigenvalues")
        vals = [v if isinstance(v, GaussianRational) else GaussianRational(v) for v in eigvals]
        if len(vals) != 3:
            raise ValueError("need exactly 3 eigenvalues")
        clusters: dict = {}
        for v in vals:
            clusters.setdefault(v, []).append(v)
        items = [(lam, len(vs)) for lam, vs in clusters.items()]
        rank_tol = None
    else:
        vals = list(eigvals) if eigvals is not None else list(eigenvalues(A))
        if len(vals) != 3:
            raise ValueError("need exactly 3 eigenvalues")
        scale = max(1.0, float(np.linalg.norm(A.to_numpy(), 2)))
        eff_tol = max(tol, EIG_CLUSTER_FLOOR * scale)
        groups = _cluster(vals, eff_tol)
        gap = _min_intercluster_gap(groups)
        if gap < JORDAN_AMBIGUITY_FACTOR * eff_tol:
            raise IllConditioned(
                f"eigenvalue clusters separated by {gap:.3e} < "
                f"{JORDAN_AMBIGUITY_FACTOR * eff_tol:.3e}"
            )
        items = [(sum(g) / len(g), len(g)) for g in groups]
        rank_tol = tol

    entries = []
    for lam, mult in items:
        sizes = _block_sizes(A, lam, mult, rank_tol)
        entries.append((lam, sizes))
    entries.sort(key=lambda e: (_scalar_to_complex(e[0]).real, _scalar_to_complex(e[0]).imag))
    return JordanSignature(tuple(entries))


def _cluster(vals, tol):
    """Single-linkage clustering of up to three complex numbers."""
    groups = [[v] for v in vals]
    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if any(abs(a - b) <= tol for a in groups[i] for b in groups[j]):
                    groups[i].extend(groups[j])
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
    return groups


def _min_intercluster_gap(groups):
    gap = math.inf
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            for a in groups[i]:
                for b in groups[j]:
                    gap = min(gap, abs(a - b))
    return gap


def _floored_rank(M: Mat3, tol: float, floor: float) -> int:
    """Floating rank with the threshold floored at ``tol * floor``.

    Plain relative rank degenerates on matrices that are mathematically
    zero but numerically noise; the floor carries the scale of the object
    the matrix was derived from.
    """
    sv = np.linalg.svd(M.to_numpy(), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int((sv > tol * max(float(sv[0]), floor)).sum())


def _block_sizes(A: Mat3, lam, mult: int, rank_tol) -> tuple:
    shifted = A - Mat3.identity_like(A).scale(lam)
    ranks = [3]
    power = shifted
    if A.kind == FLOATING:
        # powers of a nilpotent part are numerically noise; floor the rank
        # threshold at the matching power of the shifted matrix's scale
        scale = max(float(np.linalg.norm(shifted.to_numpy(), 2)), 1.0)
        for p in range(1, mult + 1):
            ranks.append(_floored_rank(power, rank_tol, scale**p))
            power = power @ shifted
        return _sizes_from_ranks(ranks, mult, lam)
    for _ in range(mult):
        ranks.append(power.rank(rank_tol))
        power = power @ shifted
    return _sizes_from_ranks(ranks, mult, lam)


def _sizes_from_ranks(ranks, mult: int, lam) -> tuple:
    ge = [ranks[p - 1] - ranks[p] for p in range(1, mult + 1)]  # blocks of size >= p
    ge.append(0)
    sizes = []
    for p in range(1, mult + 1):
        sizes.extend([p] * (ge[p - 1] - ge[p]))
    sizes.sort(reverse=True)
    if sum(sizes) != mult or any(s <= 0 for s in sizes):
        raise IllConditioned(
            f"inconsistent block structure for eigenvalue {lam}: ranks {ranks}"
        )
    return tuple(sizes)


# ---------------------------------------------------------------------------
# rank-1 factorization


def rank1_factorization(A: Mat3, tol: float | None = None) -> tuple[Vec3, Vec3]:
    """Split a rank-1 matrix into ``A[i][j] = alpha[i] * beta[j]``.

    The first nonzero entry of ``alpha`` is normalized to 1.  Raises
    :class:`RankMismatch` when the rank is not 1 (or, for floating input,
    when the outer product fails to reproduce ``A`` to 1e-12 Frobenius).
    """
    r = A.rank(tol)
    if r != 1:
        raise RankMismatch(f"rank1_factorization needs rank 1, got {r}")
    if A.kind == EXACT:
        i0 = next(i for i in range(3) if any(A.rows[i]))
        j0 = next(j for j in range(3) if A.rows[i0][j])
        beta = Vec3(A.rows[i0])
        pivot = A.rows[i0][j0]
        alpha = Vec3([A.rows[i][j0] / pivot for i in range(3)])
        return alpha, beta

    arr = A.to_numpy()
    i0 = int(np.argmax([np.linalg.norm(arr[i]) for i in range(3)]))
    j0 = int(np.argmax(np.abs(arr[i0])))
    beta_np = arr[i0]
    alpha_np = arr[:, j0] / arr[i0, j0]
    # normalize the first non-negligible entry of alpha to exactly 1
    cutoff = 1e-12 * max(np.abs(alpha_np).max(), 1.0)
    i1 = int(np.argmax(np.abs(alpha_np) > cutoff))
    scale = alpha_np[i1]
    alpha_np = alpha_np / scale
    beta_np = beta_np * scale
    if np.linalg.norm(np.outer(alpha_np, beta_np) - arr) > 1e-12 * max(
        1.0, float(np.linalg.norm(arr))
    ):
        raise RankMismatch("matrix is not rank 1 to 1e-12")
    return Vec3([complex(x) for x in alpha_np]), Vec3([complex(x) for x in beta_np])
