"""Unitary symmetry groups on V: closure, commutants, isotypic decomposition.

A ``GroupAction`` represents the unitary symmetry group in one of four
modes: an explicit finite group, a Lie algebra of anti-Hermitian
generators, the trivial group, or the built-in spin-1/2 tensor factor.
``isotypic_decompose`` splits V into sectors V_lambda ~ E_lambda (x)
R_lambda, one per isomorphism class of irreducible subrepresentation,
with the multiplicity factor E slow and the irreducible factor R fast
in the column ordering of the returned bases.

The decomposition is purely numerical: eigenspaces of a random Hermitian
commutant element resolve the multiplicity lines, and intertwiner
nullspaces decide which lines are isomorphic (the dimension of the
space of equivariant maps between two irreducibles is zero or one).
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (DegenerateDecompositionError, GroupTooLargeError,
                     InputShapeError, UnsupportedModeError)

MODE_FINITE = "finite-group"
MODE_LIE = "lie-algebra"
MODE_NONE = "none"
MODE_SPIN_HALF = "spin-half"

MAX_ORDER = 10_000

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class GroupAction:
    """A unitary symmetry group (or Lie algebra) acting on C^dim."""

    dim: int
    mode: str
    generators: tuple
    elements: tuple = ()

    def is_trivial(self, tol=None):
        """True when the action fixes every Hamiltonian (trivial group)."""
        tol = linalg.TOL_INPUT if tol is None else tol
        if self.mode == MODE_NONE:
            return True
        if self.mode == MODE_SPIN_HALF:
            return False
        eye = np.eye(self.dim)
        if self.mode == MODE_FINITE:
            return all(linalg.frob(g - eye) <= tol * self.dim
                       for g in self.elements)
        return all(linalg.frob(g) <= tol for g in self.generators)


@dataclass(frozen=True)
class IsotypicBlock:
    """One sector of the isotypic decomposition.

    ``factor_basis`` columns identify the sector with E (x) R; column
    j*d + k is the image of (e_j tensor r_k), so the multiplicity index
    is slow and the irreducible index fast.  ``gram`` is the Hermitian
    scalar product transferred to E in this basis.
    """

    label: int
    irrep_dim: int
    multiplicity: int
    projector: np.ndarray
    factor_basis: np.ndarray
    gram: np.ndarray

    @property
    def dim(self):
        return self.irrep_dim * self.multiplicity

    def rep_basis(self):
        """Orthonormal basis of the model copy of R inside V."""
        return self.factor_basis[:, : self.irrep_dim]

    def irrep_matrix(self, g):
        """Restriction of a symmetry operator to the model copy of R."""
        r = self.rep_basis()
        return r.conj().T @ g @ r

    def maps(self):
        """The E-basis as a list of isometries R -> V."""
        d = self.irrep_dim
        return [self.factor_basis[:, j * d:(j + 1) * d]
                for j in range(self.multiplicity)]


def trivial_action(dim):
    if dim < 1:
        raise InputShapeError("dimension must be at least 1")
    return GroupAction(dim=dim, mode=MODE_NONE, generators=())


def lie_algebra_action(generators, tol=None):
    """Action generated by anti-Hermitian matrices."""
    tol = linalg.TOL_INPUT if tol is None else tol
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise InputShapeError("lie-algebra mode needs at least one generator")
    dim = gens[0].shape[0]
    for i, g in enumerate(gens):
        if g.shape != (dim, dim):
            raise InputShapeError(f"generator {i} has shape {g.shape}, "
                                  f"expected ({dim}, {dim})")
        if linalg.frob(g + g.conj().T) > tol * max(1.0, linalg.frob(g)):
            raise InputShapeError(f"generator {i} is not anti-Hermitian")
    return GroupAction(dim=dim, mode=MODE_LIE, generators=tuple(gens))


def u1_charge_action(dim):
    """The U(1) particle-number action, generated by i * identity."""
    return lie_algebra_action([1j * np.eye(dim)])


def spin_half_action(dim):
    """Built-in spin-1/2 action on V = E (x) C^2 (E slow, spin fast)."""
    if dim < 2 or dim % 2:
        raise InputShapeError("spin-half mode needs an even dimension >= 2")
    m = dim // 2
    eye = np.eye(m)
    gens = tuple(np.kron(eye, 1j * s) for s in (PAULI_X, PAULI_Y, PAULI_Z))
    return GroupAction(dim=dim, mode=MODE_SPIN_HALF, generators=gens)


def close_group(generators, max_order=MAX_ORDER, tol_dedup=linalg.TOL_DEDUP,
                dim=None):
    """Multiplicative closure of unitary generators.

    Duplicates are detected at Frobenius distance ``tol_dedup``; the
    identity is always included (an empty generator list with explicit
    ``dim`` gives the order-1 group).  Raises ``GroupTooLargeError`` when
    the closure exceeds ``max_order`` elements.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if gens:
        dim = gens[0].shape[0]
    elif dim is None:
        raise InputShapeError("close_group needs generators or an explicit "
                              "dimension")
    for i, g in enumerate(gens):
        if g.ndim != 2 or g.shape != (dim, dim):
            raise InputShapeError(f"generator {i} has shape {g.shape}, "
                                  f"expected ({dim}, {dim})")
        if not linalg.is_unitary(g, max(tol_dedup, linalg.TOL_INPUT)):
            raise InputShapeError(f"generator {i} is not unitary")

    elements = [np.eye(dim, dtype=complex)]
    stack = np.eye(dim, dtype=complex)[None]

    def _find(candidate):
        d = np.linalg.norm(stack - candidate[None], axis=(1, 2))
        hits = np.nonzero(d <= tol_dedup)[0]
        return int(hits[0]) if hits.size else -1

    frontier = list(range(len(elements)))
    while frontier:
        new_frontier = []
        for idx in frontier:
            for g in gens:
                candidate = g @ elements[idx]
                if _find(candidate) < 0:
                    if len(elements) >= max_order:
                        raise GroupTooLargeError(
                            f"closure exceeded {max_order} elements")
                    elements.append(candidate)
                    stack = np.concatenate([stack, candidate[None]])
                    new_frontier.append(len(elements) - 1)
        frontier = new_frontier
    return GroupAction(dim=dim, mode=MODE_FINITE, generators=tuple(gens),
                       elements=tuple(elements))


def _unit_matrices(n):
    basis = []
    for k in range(n):
        for l in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[k, l] = 1.0
            basis.append(e)
    return basis


def commutant_basis(action, tol=None):
    """Frobenius-orthonormal basis of {X : [X, g] = 0 for all generators}.

    For a finite group the dimension equals the sum of squared
    multiplicities of the irreducible sectors.
    """
    tol = linalg.TOL_INPUT if tol is None else tol
    n = action.dim
    gens = [g for g in action.generators]
    if not gens:
        return _unit_matrices(n)
    eye = np.eye(n)
    rows = [np.kron(g, eye) - np.kron(eye, g.T) for g in gens]
    a = np.vstack(rows)
    scale = max(1.0, max(linalg.frob(g) for g in gens))
    _, s, vh = np.linalg.svd(a)
    keep = np.ones(n * n, dtype=bool)
    keep[: len(s)] = s <= tol * scale
    ns = vh[keep].conj().T
    return [ns[:, j].reshape(n, n) for j in range(ns.shape[1])]


def _hom_space(rep_a, rep_b, tol):
    """Orthonormal basis of {M : rep_b(g) M = M rep_a(g) for all g}.

    The singular-value cutoff is scaled by the generator norms, not by
    the stacked difference operator, which can be numerically zero when
    the two representations coincide exactly.
    """
    da = rep_a[0].shape[0]
    db = rep_b[0].shape[0]
    rows = [np.kron(gb, np.eye(da)) - np.kron(np.eye(db), ga.T)
            for ga, gb in zip(rep_a, rep_b)]
    a = np.vstack(rows)
    scale = max(1.0, max(linalg.frob(g) for g in rep_a + rep_b))
    _, s, vh = np.linalg.svd(a)
    keep = np.ones(da * db, dtype=bool)
    keep[: len(s)] = s <= tol * scale
    ns = vh[keep].conj().T
    return [ns[:, j].reshape(db, da) for j in range(ns.shape[1])]


def _single_block(dim, d, m):
    eye = np.eye(dim, dtype=complex)
    return [IsotypicBlock(label=0, irrep_dim=d, multiplicity=m,
                          projector=eye, factor_basis=eye,
                          gram=np.eye(m, dtype=complex))]


def isotypic_decompose(action, rng, tol=None, gap_tol=1e-6, retries=5):
    """Decompose V into isotypic sectors E_lambda (x) R_lambda.

    The eigenspaces of a random Hermitian element of the commutant are
    generically single copies of an irreducible; intertwiner nullspaces
    between them fix the isomorphism classes, and normalized intertwiners
    assemble the factor bases.  Retries with fresh randomness when the
    spectrum fails the health checks, and raises
    ``DegenerateDecompositionError`` when the retry budget is exhausted.
    """
    tol = linalg.TOL_INPUT if tol is None else tol
    n = action.dim
    if action.mode == MODE_NONE or action.is_trivial(tol):
        return _single_block(n, 1, n)
    if action.mode == MODE_SPIN_HALF:
        return _single_block(n, 2, n // 2)

    comm = commutant_basis(action, tol)
    last_error = None
    for attempt in range(retries):
        try:
            return _decompose_once(action, comm, rng.child(attempt), tol,
                                   gap_tol)
        except DegenerateDecompositionError as err:
            last_error = err
    raise DegenerateDecompositionError(
        f"no clean sector split after {retries} attempts: {last_error}")


def _decompose_once(action, comm, rng, tol, gap_tol):
    n = action.dim
    # Complex coefficients: the Hermitian part of a real span of the
    # commutant basis can be degenerate (conjugate characters collide).
    coeff = rng.complex_normal(len(comm))
    x = sum(c * b for c, b in zip(coeff, comm))
    x = 0.5 * (x + x.conj().T)
    evals, evecs = np.linalg.eigh(x)

    # Cluster eigenvalues: inside one irreducible line the eigenvalue is
    # exactly degenerate, so any gap above gap_tol separates lines.
    clusters = []
    start = 0
    for i in range(1, n + 1):
        if i == n or evals[i] - evals[i - 1] > gap_tol:
            clusters.append(evecs[:, start:i])
            start = i

    gens = list(action.generators)
    reps = [[q.conj().T @ g @ q for g in gens] for q in clusters]

    # Invariance check: generators must not leak out of any cluster.
    for q, rep in zip(clusters, reps):
        for g, r in zip(gens, rep):
            if linalg.frob(g @ q - q @ r) > 1e3 * tol * max(1.0, linalg.frob(g)):
                raise DegenerateDecompositionError(
                    "eigenspace of commutant element is not invariant")

    # Each cluster must be a single irreducible copy.
    for rep in reps:
        if len(_hom_space(rep, rep, tol)) != 1:
            raise DegenerateDecompositionError(
                "cluster is not irreducible (merged eigenvalues)")

    classes = []  # list of lists of cluster indices
    for idx in range(len(clusters)):
        placed = False
        for cls in classes:
            rep0 = reps[cls[0]]
            if reps[idx][0].shape != rep0[0].shape:
                continue
            if _hom_space(rep0, reps[idx], tol):
                cls.append(idx)
                placed = True
                break
        if not placed:
            classes.append([idx])

    blocks = []
    for label, cls in enumerate(classes):
        first = cls[0]
        q0 = clusters[first]
        d = q0.shape[1]
        maps = [q0]
        for idx in cls[1:]:
            hom = _hom_space(reps[first], reps[idx], tol)
            m = hom[0]
            scale = np.trace(m.conj().T @ m).real / d
            m = m / np.sqrt(scale)
            if linalg.frob(m.conj().T @ m - np.eye(d)) > 1e3 * tol:
                raise DegenerateDecompositionError(
                    "intertwiner failed to normalize to an isometry")
            maps.append(clusters[idx] @ m)
        fb = np.hstack(maps)
        mult = len(cls)
        proj = fb @ fb.conj().T
        for g in gens:
            gb = fb.conj().T @ g @ fb
            rho = gb[:d, :d]
            if linalg.frob(gb - np.kron(np.eye(mult), rho)) > \
                    1e3 * tol * max(1.0, linalg.frob(g)):
                raise DegenerateDecompositionError(
                    "factor basis failed the block-Kronecker test")
        blocks.append(IsotypicBlock(label=label, irrep_dim=d,
                                    multiplicity=mult, projector=proj,
                                    factor_basis=fb,
                                    gram=np.eye(mult, dtype=complex)))

    if sum(b.dim for b in blocks) != n:
        raise DegenerateDecompositionError("sector dimensions do not sum to "
                                           "the space dimension")
    return blocks


def transfer_hermitian(block, ambient=None, r=None):
    """Hermitian scalar product transferred to the multiplicity space E.

    ``gram[i, j] = <psi_i(r), psi_j(r)>_V / <r, r>_R`` evaluated on the
    stored E-basis; the result is independent of the choice of the
    nonzero vector ``r`` in R.
    """
    d = block.irrep_dim
    if r is None:
        r = np.zeros(d, dtype=complex)
        r[0] = 1.0
    r = np.asarray(r, dtype=complex)
    if r.shape != (d,):
        raise InputShapeError(f"r must be a vector of length {d}")
    rr = float(np.real(np.vdot(r, r)))
    if rr <= 0.0:
        raise InputShapeError("r must be nonzero")
    images = np.stack([psi @ r for psi in block.maps()], axis=1)
    if ambient is None:
        gram = images.conj().T @ images
    else:
        gram = images.conj().T @ np.asarray(ambient, dtype=complex) @ images
    return gram / rr


def fs_indicator(action, block, tol=None):
    """Frobenius-Schur indicator of the sector's irreducible.

    Averages the character at squared group elements; +1 for real type
    (a symmetric self-pairing exists), -1 for quaternionic type (skew
    self-pairing), 0 for complex type (no self-pairing).
    """
    if action.mode != MODE_FINITE:
        raise UnsupportedModeError("Frobenius-Schur indicator needs an "
                                   "explicit finite group")
    tol = linalg.TOL_INPUT if tol is None else tol
    r = block.rep_basis()
    total = 0.0 + 0.0j
    for g in action.elements:
        total += np.trace(r.conj().T @ (g @ g) @ r)
    value = total / len(action.elements)
    rounded = int(np.rint(value.real))
    if abs(value - rounded) > 1e-6 * len(action.elements) or \
            rounded not in (-1, 0, 1):
        raise DegenerateDecompositionError(
            f"indicator {value} did not round to -1, 0 or +1")
    return rounded


def self_duality_type(action, block, tol=None):
    """Symmetry type of the equivariant self-pairing R -> R*, if any.

    Returns +1 when a symmetric equivariant isomorphism onto the dual
    exists, -1 when it is skew, and 0 when R is not self-dual.  Works in
    every mode (the dual of a unitary or anti-Hermitian generator is its
    entrywise conjugate).
    """
    tol = linalg.TOL_INPUT if tol is None else tol
    rep = [block.irrep_matrix(g) for g in action.generators]
    if not rep:
        return 1
    dual = [g.conj() for g in rep]
    hom = _hom_space(rep, dual, tol)
    if not hom:
        return 0
    psi = hom[0]
    sym = linalg.frob(psi - psi.T)
    skew = linalg.frob(psi + psi.T)
    if sym <= tol * linalg.frob(psi):
        return 1
    if skew <= tol * linalg.frob(psi):
        return -1
    raise DegenerateDecompositionError("self-pairing is neither symmetric "
                                       "nor skew")
