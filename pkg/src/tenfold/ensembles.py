"""Gaussian and circular random-matrix ensembles for the ten classes.

Gaussian samples are drawn from the K-invariant measure with density
proportional to exp(-tr H^2 / (2 sigma^2)) on the class's Hamiltonian
space.  Construction is by orthogonal projection of an isotropic
Hermitian Gaussian onto the constrained subspace, so every structural
relation (reality, skewness, self-duality, block form) holds exactly by
assembly.  Nambu-type classes are assembled as

    H = [[W, Z], [Z^dag, -W^t]]

with W Hermitian and Z symmetric (C), skew (D), and W = 0 for the
time-reversal classes CI / DIII; the chiral classes are block
off-diagonal in the (p, q) grading.

Circular samples are Haar draws in the class's compact group pushed
through the Cartan embedding; for the group-type families the Haar draw
itself is the sample (CUE for class A).
"""

from dataclasses import dataclass

import numpy as np

from . import linalg, symspace
from .classifier import ClassLabel
from .errors import InputShapeError, UnsupportedFamilyError
from .linalg import symplectic_form

_NAMBU = ("C", "CI", "D", "DIII")
_CHIRAL = ("AIII", "BDI", "CII")


@dataclass(frozen=True, eq=False)
class EnsembleSpec:
    """Class label, variance and ensemble kind driving the samplers."""

    label: ClassLabel
    sigma: float = 1.0
    kind: str = "gaussian"

    def __post_init__(self):
        if self.sigma <= 0:
            raise InputShapeError("variance parameter must be positive")
        if self.kind not in ("gaussian", "circular"):
            raise InputShapeError(f"unknown ensemble kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class Constraint:
    """One defining relation: u conj(H) u^dag = sign H (anti-unitary
    conjugation) or u H u^dag = sign H (unitary conjugation)."""

    name: str
    u: np.ndarray
    antiunitary: bool
    sign: int

    def residual(self, h):
        if self.antiunitary:
            image = self.u @ np.conj(h) @ self.u.conj().T
        else:
            image = self.u @ h @ self.u.conj().T
        return linalg.frob(image - self.sign * h)


def class_constraints(lab):
    """Defining symmetry operators of the class in the sampler basis.

    These are the operators whose (anti-)commutation carves the class's
    Hamiltonian space out of the Hermitian matrices; every Gaussian
    sample satisfies them to machine precision.
    """
    f = lab.family
    n = lab.matrix_dim
    if f == "A":
        return ()
    if f == "AI":
        return (Constraint("T", np.eye(n), True, 1),)
    if f == "AII":
        return (Constraint("T", symplectic_form(n // 2), True, 1),)
    modes = lab.dims[0] if f in _NAMBU else None
    if f in _NAMBU:
        swap = np.zeros((n, n))
        swap[:modes, modes:] = np.eye(modes)
        swap[modes:, :modes] = np.eye(modes)
        j = symplectic_form(modes)
        if f == "D":
            return (Constraint("P", swap, True, -1),)
        if f == "DIII":
            return (Constraint("P", swap, True, -1),
                    Constraint("T", j, True, 1))
        if f == "C":
            return (Constraint("P", j, True, -1),)
        return (Constraint("P", j, True, -1),
                Constraint("T", swap, True, 1))
    p, q = lab.dims
    s = symspace.chiral_grading(p, q)
    if f == "AIII":
        return (Constraint("S", s, False, -1),)
    if f == "BDI":
        return (Constraint("S", s, False, -1),
                Constraint("T", np.eye(n), True, 1))
    return (Constraint("S", s, False, -1),
            Constraint("T", symspace.split_symplectic_form(p, q), True, 1))


def max_constraint_residual(lab, h):
    residuals = [c.residual(h) for c in class_constraints(lab)]
    return max(residuals) if residuals else 0.0


def _hermitian_gaussian(rng, n, sigma, size):
    shape = (n, n) if size is None else (size, n, n)
    m = sigma * (rng.normal(shape) + 1j * rng.normal(shape))
    return 0.5 * (m + np.conj(m.swapaxes(-1, -2)))


def _real_symmetric_gaussian(rng, n, sigma, size):
    shape = (n, n) if size is None else (size, n, n)
    m = sigma * rng.normal(shape)
    return (0.5 * (m + m.swapaxes(-1, -2))).astype(complex)


def _complex_block(rng, p, q, sigma, size):
    shape = (p, q) if size is None else (size, p, q)
    return sigma / np.sqrt(2.0) * (rng.normal(shape) + 1j * rng.normal(shape))


def _assemble_nambu(w, z):
    *lead, n, _ = w.shape
    h = np.zeros((*lead, 2 * n, 2 * n), dtype=complex)
    h[..., :n, :n] = w
    h[..., :n, n:] = z
    h[..., n:, :n] = np.conj(z.swapaxes(-1, -2))
    h[..., n:, n:] = -w.swapaxes(-1, -2)
    return h


def _assemble_chiral(b, p, q):
    *lead, _, _ = b.shape
    h = np.zeros((*lead, p + q, p + q), dtype=complex)
    h[..., :p, p:] = b
    h[..., p:, :p] = np.conj(b.swapaxes(-1, -2))
    return h


def sample_gaussian(spec, rng, size=None):
    """Draw from the Gaussian ensemble of ``spec.label``.

    Returns an (n, n) matrix, or a stacked (size, n, n) array when
    ``size`` is given.  Structural constraints hold exactly.
    """
    if spec.kind != "gaussian":
        raise InputShapeError("spec.kind must be 'gaussian'")
    lab, sigma = spec.label, spec.sigma
    f = lab.family
    if f == "A":
        return _hermitian_gaussian(rng, lab.dims[0], sigma, size)
    if f == "AI":
        return _real_symmetric_gaussian(rng, lab.dims[0], sigma, size)
    if f == "AII":
        n = lab.dims[0]
        j = symplectic_form(n // 2)
        h = _hermitian_gaussian(rng, n, sigma, size)
        dual = j @ np.conj(h) @ j.T
        return 0.5 * (h + dual)
    if f in _NAMBU:
        n = lab.dims[0]
        full = _hermitian_gaussian(rng, 2 * n, sigma, size)
        a = full[..., :n, :n]
        b = full[..., :n, n:]
        d = full[..., n:, n:]
        w = 0.5 * (a - d.swapaxes(-1, -2))
        if f in ("CI", "DIII"):
            w = np.zeros_like(w)
        if f in ("C", "CI"):
            z = 0.5 * (b + b.swapaxes(-1, -2))
        else:
            z = 0.5 * (b - b.swapaxes(-1, -2))
        return _assemble_nambu(w, z)
    p, q = lab.dims
    b = _complex_block(rng, p, q, sigma, size)
    if f == "BDI":
        b = b.real.astype(complex)
    elif f == "CII":
        jp = symplectic_form(p // 2)
        jq = symplectic_form(q // 2)
        b = 0.5 * (b + jp @ np.conj(b) @ jq.T)
    return _assemble_chiral(b, p, q)


def _haar_in_group(lab, rng):
    f = lab.family
    n = lab.matrix_dim
    if f in ("A", "AI", "AII", "AIII"):
        return linalg.haar_unitary(n, rng)
    if f == "BDI":
        return linalg.haar_orthogonal(n, rng).astype(complex)
    if f in ("D", "DIII"):
        return linalg.haar_orthogonal(n, rng, special=True).astype(complex)
    if f in ("C", "CI"):
        return linalg.haar_symplectic_unitary(n, rng)
    if f == "CII":
        p, q = lab.dims
        return linalg.haar_symplectic_unitary(
            n, rng, j=symspace.split_symplectic_form(p, q))
    raise UnsupportedFamilyError(f"no Haar measure implemented for {f}")


def sample_circular(spec, rng, size=None):
    """Draw from the circular ensemble of ``spec.label``.

    A Haar element u of the class's compact group is pushed through the
    Cartan embedding x = u tau(u^{-1}); the result satisfies
    tau(x) = x^{-1}.  For the group-type families A, C, D the Haar draw
    itself is returned (class A gives the CUE).
    """
    if spec.kind != "circular":
        raise InputShapeError("spec.kind must be 'circular'")
    pair = symspace.involution(spec.label)
    if size is not None:
        return np.stack([symspace.cartan_embed(_haar_in_group(
            spec.label, rng), pair) for _ in range(size)])
    return symspace.cartan_embed(_haar_in_group(spec.label, rng), pair)


def eigenvalues(h):
    """Ascending eigenvalues; batched over any leading axes."""
    return np.linalg.eigvalsh(h)


# ---------------------------------------------------------------------------
# Spectral statistics


@dataclass(frozen=True, eq=False)
class SpectralStats:
    """Consecutive-spacing ratio statistics of one or more spectra."""

    ratios: np.ndarray
    mean: float
    stderr: float
    dropped: int


def spacing_ratios(values, drop_tol=1e-12):
    """Ratios min(s_i, s_{i+1}) / max(s_i, s_{i+1}) of level spacings.

    ``values`` must be at least three ascending levels.  Spacings below
    ``drop_tol`` times the spectral range are dropped (and counted) so
    exact degeneracies do not poison the statistic.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 3:
        raise InputShapeError("need at least three levels")
    spacings = np.diff(values)
    if np.any(spacings < 0):
        raise InputShapeError("levels must be ascending")
    span = values[-1] - values[0]
    keep = spacings >= drop_tol * max(span, np.finfo(float).tiny)
    dropped = int(np.sum(~keep))
    s = spacings[keep]
    if s.size < 2:
        return SpectralStats(ratios=np.empty(0), mean=np.nan, stderr=np.nan,
                             dropped=dropped)
    r = np.minimum(s[:-1], s[1:]) / np.maximum(s[:-1], s[1:])
    mean = float(np.mean(r))
    stderr = float(np.std(r, ddof=1) / np.sqrt(r.size)) if r.size > 1 else 0.0
    return SpectralStats(ratios=r, mean=mean, stderr=stderr, dropped=dropped)


def pooled_spacing_ratios(spectra, drop_tol=1e-12):
    """Spacing-ratio statistics pooled over a stack of sorted spectra.

    Vectorized over the leading axis; the standard error treats the
    pooled ratios as independent, which is exact when each spectrum
    contributes a single ratio.
    """
    spectra = np.atleast_2d(np.asarray(spectra, dtype=float))
    if spectra.shape[1] < 3:
        raise InputShapeError("need at least three levels per spectrum")
    spacings = np.diff(spectra, axis=1)
    span = spectra[:, -1] - spectra[:, 0]
    good = spacings >= drop_tol * np.maximum(span, np.finfo(float).tiny)[:, None]
    pair_good = good[:, :-1] & good[:, 1:]
    r_all = np.minimum(spacings[:, :-1], spacings[:, 1:]) / \
        np.maximum(spacings[:, :-1], spacings[:, 1:])
    r = r_all[pair_good]
    dropped = int(np.sum(~good))
    mean = float(np.mean(r))
    stderr = float(np.std(r, ddof=1) / np.sqrt(r.size))
    return SpectralStats(ratios=r, mean=mean, stderr=stderr, dropped=dropped)


@dataclass(frozen=True, eq=False)
class Histogram:
    """Area-normalized eigenvalue density over a symmetric range."""

    centers: np.ndarray
    density: np.ndarray
    edges: np.ndarray
    width: float


def spectral_density(spectra, bins):
    """Normalized eigenvalue histogram over [-max|E|, +max|E|].

    ``spectra`` is a list of real spectra (or a stacked array); the
    histogram integrates to one.
    """
    if bins < 1:
        raise InputShapeError("need at least one bin")
    if isinstance(spectra, np.ndarray):
        pooled = spectra.ravel()
    else:
        if not spectra:
            raise InputShapeError("need at least one spectrum")
        pooled = np.concatenate([np.asarray(s, dtype=float).ravel()
                                 for s in spectra])
    if pooled.size == 0:
        raise InputShapeError("need at least one eigenvalue")
    vmax = float(np.max(np.abs(pooled)))
    if vmax == 0.0:
        vmax = 1.0
    edges = np.linspace(-vmax, vmax, bins + 1)
    counts, _ = np.histogram(pooled, bins=edges)
    width = edges[1] - edges[0]
    density = counts / (pooled.size * width)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return Histogram(centers=centers, density=density, edges=edges,
                     width=float(width))
