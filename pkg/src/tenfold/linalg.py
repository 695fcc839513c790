"""Dense complex linear algebra foundation.

Provides the Hermitian eigensolver, Haar-distributed unitary sampling,
tolerance-based nullspaces and matrix predicates, and the deterministic
random-number streams used by every sampler in the package.

All tolerances are centralized here: ``TOL_INPUT`` for input validation,
``TOL_EIG`` for eigendecomposition residuals, and ``tol_unitary(n)`` for
unitarity checks.  Every operation accepts per-call overrides.
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import InputShapeError

TOL_INPUT = float(os.environ.get("TENFOLD_TOLERANCE", 1e-8))
TOL_EIG = 1e-10
TOL_DEDUP = 1e-8

_MASK64 = (1 << 64) - 1


def tol_unitary(n):
    """Unitarity tolerance, scaled with the matrix dimension."""
    return 1e-12 * np.sqrt(n)


def _splitmix64(x):
    """One round of the splitmix64 finalizer (stateless 64-bit mixer)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass
class RngStream:
    """Deterministic random stream with reproducible child derivation.

    Identical seeds give bit-identical output sequences.  Independent
    child streams are derived by mixing the parent seed with the child
    index, so parallel work never shares a stream.
    """

    seed: int
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.seed = int(self.seed) & _MASK64
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def child(self, index):
        """Derive the ``index``-th independent child stream."""
        return RngStream(_splitmix64(self.seed ^ _splitmix64(index + 1)))

    @property
    def generator(self):
        return self._gen

    def normal(self, size=None, scale=1.0):
        return self._gen.normal(0.0, scale, size=size)

    def complex_normal(self, size=None):
        """Standard complex normal entries, E|z|^2 = 1."""
        re = self._gen.normal(size=size)
        im = self._gen.normal(size=size)
        return (re + 1j * im) / np.sqrt(2.0)


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Ascending eigenvalues and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def frob(a):
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def is_hermitian(a, tol=TOL_INPUT):
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and \
        frob(a - a.conj().T) <= tol * max(1.0, frob(a))


def is_unitary(a, tol=None):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    n = a.shape[0]
    if tol is None:
        tol = max(tol_unitary(n), TOL_INPUT)
    return frob(a.conj().T @ a - np.eye(n)) <= tol


def is_symmetric(a, tol=TOL_INPUT):
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and \
        frob(a - a.T) <= tol * max(1.0, frob(a))


def is_skew(a, tol=TOL_INPUT):
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and \
        frob(a + a.T) <= tol * max(1.0, frob(a))


def eig_hermitian(h, tol_input=TOL_INPUT):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : ndarray
        Square matrix, Hermitian to ``tol_input`` (relative Frobenius).

    Returns
    -------
    HermitianEigenSystem
        Ascending real eigenvalues and unitary eigenvector matrix with
        reconstruction residual below ``TOL_EIG * ||h||_F``.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InputShapeError(f"expected a square matrix, got shape {h.shape}")
    if not is_hermitian(h, tol_input):
        raise InputShapeError("matrix is not Hermitian within tolerance "
                              f"{tol_input:g}")
    values, vectors = np.linalg.eigh(h)
    return HermitianEigenSystem(values=values, vectors=vectors)


def haar_unitary(n, rng):
    """Draw an n x n unitary from the Haar measure (CUE).

    A complex Ginibre matrix is orthonormalized and each column is
    rescaled by the phase of the corresponding R-diagonal entry; without
    that phase correction the output would not be Haar distributed.
    """
    if n < 1:
        raise InputShapeError("dimension must be at least 1")
    z = rng.complex_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def haar_orthogonal(n, rng, special=False):
    """Haar-distributed element of O(n), or of SO(n) if ``special``."""
    if n < 1:
        raise InputShapeError("dimension must be at least 1")
    z = rng.normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    q = q * np.sign(d)
    if special and np.linalg.det(q) < 0:
        q = q.copy()
        q[:, -1] = -q[:, -1]
    return q


def symplectic_form(n):
    """Standard symplectic form [[0, I], [-I, 0]] on C^(2n)."""
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def haar_symplectic_unitary(n2, rng, j=None):
    """Haar-distributed element of USp(n2) for even ``n2``.

    Columns of a quaternion Ginibre matrix are orthonormalized in
    quaternion arithmetic: each computed column v gets the partner
    -J conj(v), which keeps the result inside USp.  The quaternion
    structure may be supplied as ``j`` (defaults to the standard form).
    """
    if n2 < 2 or n2 % 2:
        raise InputShapeError("symplectic dimension must be even and >= 2")
    n = n2 // 2
    if j is None:
        j = symplectic_form(n)
        u = _haar_usp_standard(n, rng)
        return u
    # General j: conjugate a standard draw by the permutation relating j
    # to the standard form.
    perm = _symplectic_permutation(j)
    u = _haar_usp_standard(n, rng)
    return perm @ u @ perm.T


def _haar_usp_standard(n, rng):
    j = symplectic_form(n)
    m = rng.complex_normal((2 * n, 2 * n))
    m = 0.5 * (m + j @ m.conj() @ j.T)  # project onto quaternion matrices
    basis = []
    for k in range(n):
        v = m[:, k]
        for w in basis:
            v = v - w * (w.conj() @ v)
        v = v / np.linalg.norm(v)
        basis.append(v)
        basis.append(-j @ v.conj())
    cols = np.empty((2 * n, 2 * n), dtype=complex)
    for k in range(n):
        cols[:, k] = basis[2 * k]
        cols[:, n + k] = basis[2 * k + 1]
    return cols


def _symplectic_permutation(j):
    """Permutation P with P J_std P^T = j, for a ±1-paired form j."""
    j = np.asarray(j)
    n2 = j.shape[0]
    n = n2 // 2
    pairs = []
    seen = set()
    for a in range(n2):
        if a in seen:
            continue
        row = j[a]
        b = int(np.argmax(np.abs(row)))
        if abs(row[b] - 1.0) > 1e-12:
            raise InputShapeError("symplectic form must pair basis vectors "
                                  "with entries ±1")
        pairs.append((a, b))
        seen.update((a, b))
    if len(pairs) != n:
        raise InputShapeError("invalid symplectic form")
    p = np.zeros((n2, n2))
    for k, (a, b) in enumerate(pairs):
        p[a, k] = 1.0
        p[b, n + k] = 1.0
    return p


def nullspace(a, tol=TOL_INPUT):
    """Orthonormal basis of the numerical nullspace of ``a``.

    Returns the columns spanning {v : ||A v|| <= tol * ||A||_F * ||v||}
    as an (n, k) array; k may be zero.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise InputShapeError("nullspace expects a 2-d array")
    m, n = a.shape
    if m == 0 or n == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(a)
    cutoff = tol * np.linalg.norm(a)
    keep = np.ones(n, dtype=bool)
    keep[: len(s)] = s <= cutoff
    return vh[keep].conj().T
