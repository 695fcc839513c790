"""Small-N fermionic Fock space built densely, as a brute-force oracle.

The exterior algebra over C^N is realized on occupation bitstrings in
lexicographic order (bit k = occupation of mode k), with Jordan-Wigner
signs fixing the wedge ordering e_1 ^ e_2 ^ ... ascending.  This module
provides the canonical anti-commutation operators, wedge products,
particle-hole conjugation, quadratic Hamiltonians and the two-to-one
covering onto the orthogonal group of the Majorana span.

Everything here is dense and capped at N = 14 modes; scaling is a
non-goal, exactness is the point.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import linalg
from .antiunitary import AntiUnitaryOp
from .errors import InputShapeError, NotQuadraticError

MAX_MODES = 14


@dataclass(frozen=True, eq=False)
class FockSpace:
    """Dense exterior algebra over C^N with CAR operator matrices."""

    n_modes: int
    dim: int
    create: tuple
    annihilate: tuple
    occupation: np.ndarray  # particle number of each basis state

    @property
    def vacuum_index(self):
        return 0

    @property
    def top_index(self):
        """Index of the fully occupied state Omega = e_1 ^ ... ^ e_N."""
        return self.dim - 1

    def number_operator(self):
        return np.diag(self.occupation.astype(float)).astype(complex)

    def degree_projector(self, n):
        """Projector onto the n-particle subspace."""
        p = np.zeros((self.dim, self.dim))
        idx = np.nonzero(self.occupation == n)[0]
        p[idx, idx] = 1.0
        return p


def _popcount_below(state, mode):
    return int(state & ((1 << mode) - 1)).bit_count()


def build_fock(n_modes):
    """Construct creation/annihilation matrices for ``n_modes`` modes.

    a_k^dag acting on a bitstring with bit k clear picks up the sign
    (-1)^(number of occupied modes below k).
    """
    if not 1 <= n_modes <= MAX_MODES:
        raise InputShapeError(f"mode count must be in 1..{MAX_MODES}")
    dim = 1 << n_modes
    occupation = np.array([int(b).bit_count() for b in range(dim)])
    create = []
    for k in range(n_modes):
        mask = 1 << k
        a_dag = np.zeros((dim, dim), dtype=complex)
        for b in range(dim):
            if b & mask:
                continue
            sign = -1.0 if _popcount_below(b, k) % 2 else 1.0
            a_dag[b | mask, b] = sign
        create.append(a_dag)
    annihilate = [m.conj().T for m in create]
    return FockSpace(n_modes=n_modes, dim=dim, create=tuple(create),
                     annihilate=tuple(annihilate), occupation=occupation)


def majorana_basis(fock):
    """Hermitian Majorana operators c_1, ..., c_2N with {c_i, c_j} = 2 d_ij.

    Ordering: c_{2k} = a_k + a_k^dag and c_{2k+1} = i a_k - i a_k^dag for
    mode k (0-based).
    """
    out = []
    for a_dag, a in zip(fock.create, fock.annihilate):
        out.append(a + a_dag)
        out.append(1j * a - 1j * a_dag)
    return out


def _merge_sign(s_bits, t_bits):
    """Sign of reordering e_S ^ e_T into ascending order (disjoint S, T)."""
    sign = 1
    t = t_bits
    while t:
        mode = (t & -t).bit_length() - 1
        if int(s_bits >> (mode + 1)).bit_count() % 2:
            sign = -sign
        t &= t - 1
    return sign


def wedge(fock, psi, phi):
    """Wedge product of two Fock vectors in the occupation basis."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    out = np.zeros(fock.dim, dtype=complex)
    psi_nz = np.nonzero(psi)[0]
    phi_nz = np.nonzero(phi)[0]
    for s in psi_nz:
        for t in phi_nz:
            if int(s) & int(t):
                continue
            out[s | t] += _merge_sign(int(s), int(t)) * psi[s] * phi[t]
    return out


def particle_hole(fock):
    """Particle-hole conjugation C with (C psi) ^ psi' = <psi, psi'> Omega.

    C maps n particles to N - n holes; its square on the n-particle
    subspace is (-1)^(n (N - n)).  The phase of Omega is fixed to +1 on
    the all-ones bitstring.
    """
    dim = fock.dim
    full = fock.top_index
    u = np.zeros((dim, dim))
    for s in range(dim):
        sc = full ^ s
        u[sc, s] = _merge_sign(sc, s)
    return AntiUnitaryOp(u)


def lift_unitary(fock, s):
    """Functorial lift of a one-particle operator to the exterior algebra.

    The basis state e_S maps to (s e_{k_1}) ^ (s e_{k_2}) ^ ... with the
    modes of S ascending.
    """
    s = np.asarray(s, dtype=complex)
    n = fock.n_modes
    if s.shape != (n, n):
        raise InputShapeError(f"expected a {n} x {n} one-particle operator")
    columns_ops = [sum(s[k, j] * fock.create[k] for k in range(n))
                   for j in range(n)]
    out = np.zeros((fock.dim, fock.dim), dtype=complex)
    for b in range(fock.dim):
        vec = np.zeros(fock.dim, dtype=complex)
        vec[fock.vacuum_index] = 1.0
        modes = [k for k in range(n) if b & (1 << k)]
        for k in reversed(modes):
            vec = columns_ops[k] @ vec
        out[:, b] = vec
    return out


def lift_one_body(fock, w, z, tol=None):
    """Quadratic Hamiltonian sum W a^dag a + (Z a^dag a^dag + h.c.)/2.

    ``w`` must be Hermitian and ``z`` skew-symmetric (the pairing term is
    only well defined up to its antisymmetric part).
    """
    tol = linalg.TOL_INPUT if tol is None else tol
    n = fock.n_modes
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if w.shape != (n, n) or z.shape != (n, n):
        raise InputShapeError("W and Z must match the mode count")
    if not linalg.is_hermitian(w, tol):
        raise InputShapeError("W must be Hermitian")
    if not linalg.is_skew(z, tol):
        raise InputShapeError("Z must be skew-symmetric")
    h = np.zeros((fock.dim, fock.dim), dtype=complex)
    for k in range(n):
        for l in range(n):
            if w[k, l] != 0:
                h += w[k, l] * (fock.create[k] @ fock.annihilate[l])
            if z[k, l] != 0:
                h += 0.5 * z[k, l] * (fock.create[k] @ fock.create[l])
                h += 0.5 * np.conj(z[k, l]) * \
                    (fock.annihilate[l] @ fock.annihilate[k])
    return h


def nambu_generator(w, z):
    """Generator of the induced rotation of the Majorana span.

    Returns the real skew matrix A with U_t c_i U_t^{-1} =
    sum_j exp(tA)_{ji} c_j for U_t = exp(-i t H) and H the quadratic
    Hamiltonian built from (w, z).
    """
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    n = w.shape[0]
    # Action on the coefficient space of (a_1..a_N, a^dag_1..a^dag_N):
    # -i[H, a_m] = i sum_l W_ml a_l - i sum_k Z_km a^dag_k
    # -i[H, a^dag_m] = -i sum_l conj(Z)_ml a_l - i sum_k W_km a^dag_k
    g = np.zeros((2 * n, 2 * n), dtype=complex)
    g[:n, :n] = 1j * w.T
    g[n:, :n] = -1j * z
    g[:n, n:] = -1j * z.conj().T
    g[n:, n:] = -1j * w
    # Change of coefficient basis to interleaved Majoranas.
    t = np.zeros((2 * n, 2 * n), dtype=complex)
    for m in range(n):
        t[2 * m, m] = 0.5
        t[2 * m + 1, m] = -0.5j
        t[2 * m, n + m] = 0.5
        t[2 * m + 1, n + m] = 0.5j
    a = t @ g @ np.linalg.inv(t)
    if linalg.frob(a.imag) > 1e-12 * max(1.0, linalg.frob(a)):
        raise InputShapeError("Majorana generator failed to come out real")
    return a.real


@dataclass(frozen=True, eq=False)
class CoveringRecord:
    """Result of projecting a Fock evolution onto the Majorana rotation."""

    rotation: np.ndarray
    span_residual: float
    orthogonality_residual: float
    determinant: float
    generator_residual: float
    sign_invariant: bool


def covering_check(fock, h_fock, w, z, tol=1e-9):
    """Project U = exp(-i H) onto SO(2N) and compare with the generator.

    Computes the rotation M with U c_i U^{-1} = sum_j M_{ji} c_j, checks
    that M is special orthogonal, that it equals the exponential of the
    Majorana generator built from (w, z), and that -U induces exactly
    the same rotation (the covering is two-to-one).
    """
    c_ops = majorana_basis(fock)
    u = expm(-1j * np.asarray(h_fock, dtype=complex))

    def rotation_of(ev):
        ev_inv = ev.conj().T
        m = np.zeros((2 * fock.n_modes, 2 * fock.n_modes), dtype=complex)
        residual = 0.0
        for i, c in enumerate(c_ops):
            image = ev @ c @ ev_inv
            coeff = np.array([np.vdot(cj, image) for cj in c_ops]) / fock.dim
            recon = sum(cf * cj for cf, cj in zip(coeff, c_ops))
            residual = max(residual, linalg.frob(image - recon))
            m[:, i] = coeff
        return m, residual

    m, span_residual = rotation_of(u)
    if span_residual > tol * max(1.0, linalg.frob(m)):
        raise NotQuadraticError("conjugated Majorana operators leave the "
                                f"Majorana span (residual {span_residual:.3e})")
    if linalg.frob(m.imag) > tol:
        raise NotQuadraticError("induced rotation is not real")
    m = m.real
    n2 = m.shape[0]
    orth = linalg.frob(m.T @ m - np.eye(n2))
    det = float(np.linalg.det(m))
    gen = nambu_generator(w, z)
    gen_residual = linalg.frob(m - expm(gen))
    m_neg, _ = rotation_of(-u)
    sign_invariant = bool(np.array_equal(m, m_neg.real))
    return CoveringRecord(rotation=m, span_residual=span_residual,
                          orthogonality_residual=orth, determinant=det,
                          generator_residual=gen_residual,
                          sign_invariant=sign_invariant)


@dataclass(frozen=True, eq=False)
class TwistedTransferRecord:
    """Residuals of the particle-number-resolved transfer identity."""

    max_residual: float
    failures: tuple

    @property
    def passed(self):
        return not self.failures


def twisted_ph_transfer_check(fock, s, tol=1e-10):
    """Verify how twisted particle-hole conjugation transports a^dag.

    For C-tilde = C Lift(S) and every particle number n, checks the
    operator identity C-tilde a_k^dag = (-1)^(N - n + 1)
    (S a_k S^{-1}) C-tilde on the n-particle subspace, where S on the
    right acts through its Fock-space lift.
    """
    s = np.asarray(s, dtype=complex)
    n_modes = fock.n_modes
    if not linalg.is_unitary(s):
        raise InputShapeError("twist S must be unitary")
    if linalg.frob(s @ s - np.eye(n_modes)) > linalg.TOL_INPUT * n_modes:
        raise InputShapeError("twist S must be an involution")
    c_op = particle_hole(fock)
    s_fock = lift_unitary(fock, s)
    s_fock_inv = s_fock.conj().T
    u_ct = c_op.u @ np.conj(s_fock)
    failures = []
    worst = 0.0
    for n in range(n_modes + 1):
        proj = fock.degree_projector(n)
        sign = -1.0 if (n_modes - n + 1) % 2 else 1.0
        for k in range(n_modes):
            lhs = u_ct @ np.conj(fock.create[k] @ proj)
            rhs = sign * (s_fock @ fock.annihilate[k] @ s_fock_inv
                          @ u_ct @ proj)
            residual = linalg.frob(lhs - rhs)
            worst = max(worst, residual)
            if residual > tol:
                failures.append((n, k, residual))
    return TwistedTransferRecord(max_residual=worst, failures=tuple(failures))
