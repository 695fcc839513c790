"""Symmetry-class decision procedure.

``classify_threefold`` reduces a Hilbert-space setting (unitary group
G0, optional time reversal T) to per-sector Dyson classes A / AI / AII.
``classify_tenfold`` promotes a setting to Nambu space W = V + V* and
recognizes the canonical post-Dyson configurations, yielding one of the
ten Cartan families together with the compact symmetric space of
compatible time evolutions.

Pattern recognition is structural, not name-based: the trivial group,
the U(1) charge action, and "single quaternionic sector" are detected
from commutant data and self-duality types, so any unitary change of
basis of the input leaves the labels unchanged.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import grouprep, linalg
from .antiunitary import AntiUnitaryOp, parity, sector_action, transfer_T
from .errors import (InputShapeError, SymmetryConsistencyError,
                     UnsupportedConfigurationError)
from .grouprep import (GroupAction, MODE_FINITE, MODE_LIE, MODE_NONE,
                       MODE_SPIN_HALF, isotypic_decompose, self_duality_type,
                       spin_half_action, trivial_action, u1_charge_action)

FAMILIES = ("A", "AI", "AII", "C", "CI", "D", "DIII", "AIII", "BDI", "CII")
_CHIRAL = ("AIII", "BDI", "CII")


@dataclass(frozen=True, eq=False)
class ClassLabel:
    """A Cartan family with its block dimensions (N, or (p, q))."""

    family: str
    dims: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputShapeError(f"unknown family {self.family!r}")
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if self.family in _CHIRAL:
            if len(dims) != 2 or min(dims) < 0 or sum(dims) < 1:
                raise InputShapeError(f"{self.family} needs dims (p, q)")
            if self.family == "CII" and (dims[0] % 2 or dims[1] % 2):
                raise InputShapeError("CII needs even p and q")
        else:
            if len(dims) != 1 or dims[0] < 1:
                raise InputShapeError(f"{self.family} needs a single "
                                      "positive dimension")
            if self.family == "AII" and dims[0] % 2:
                raise InputShapeError("AII needs an even dimension")

    @property
    def matrix_dim(self):
        """Size of the Hamiltonian matrices of this class."""
        n = self.dims[0] if len(self.dims) == 1 else sum(self.dims)
        if self.family in ("C", "CI", "D", "DIII"):
            return 2 * n
        return n

    @property
    def space_name(self):
        return compatible_space(self).space_name

    def __eq__(self, other):
        return (isinstance(other, ClassLabel) and self.family == other.family
                and self.dims == other.dims)

    def __hash__(self):
        return hash((self.family, self.dims))

    def __str__(self):
        dims = ",".join(str(d) for d in self.dims)
        return f"{self.family}({dims})"


def label(family, *dims):
    """Shorthand constructor, e.g. ``label("AIII", 1, 2)``."""
    return ClassLabel(family=family, dims=tuple(dims))


@dataclass(frozen=True)
class CompatibleSpace:
    """Symmetric-space data of the compatible time evolutions."""

    space_name: str
    group: str
    subgroup: str
    form: str
    tangent_dim: int


def compatible_space(lab):
    """Group U, subgroup K and Hamiltonian block form for a class label.

    ``tangent_dim`` is the real dimension of the space of compatible
    Hamiltonians (the tangent space of U/K).
    """
    f = lab.family
    if f in _CHIRAL:
        p, q = lab.dims
        n = p + q
    else:
        n = lab.dims[0]
    if f == "A":
        return CompatibleSpace(f"U_{n}", f"U_{n}", "", "H complex Hermitian",
                               n * n)
    if f == "AI":
        return CompatibleSpace(f"U_{n}/O_{n}", f"U_{n}", f"O_{n}",
                               "H real symmetric", n * (n + 1) // 2)
    if f == "AII":
        return CompatibleSpace(f"U_{n}/USp_{n}", f"U_{n}", f"USp_{n}",
                               "H quaternion self-dual", n * (n - 1) // 2)
    if f == "C":
        return CompatibleSpace(f"USp_{2 * n}", f"USp_{2 * n}", "",
                               "W Hermitian, Z complex symmetric",
                               n * (2 * n + 1))
    if f == "CI":
        return CompatibleSpace(f"USp_{2 * n}/U_{n}", f"USp_{2 * n}",
                               f"U_{n}", "Z complex symmetric, W = 0",
                               n * (n + 1))
    if f == "D":
        return CompatibleSpace(f"SO_{2 * n}", f"SO_{2 * n}", "",
                               "W Hermitian, Z complex skew",
                               n * (2 * n - 1))
    if f == "DIII":
        return CompatibleSpace(f"SO_{2 * n}/U_{n}", f"SO_{2 * n}", f"U_{n}",
                               "Z complex skew, W = 0", n * (n - 1))
    p, q = lab.dims
    if f == "AIII":
        return CompatibleSpace(f"U_{n}/(U_{p} x U_{q})", f"U_{n}",
                               f"U_{p} x U_{q}",
                               f"Z complex {p} x {q}, W = 0", 2 * p * q)
    if f == "BDI":
        return CompatibleSpace(f"O_{n}/(O_{p} x O_{q})", f"O_{n}",
                               f"O_{p} x O_{q}",
                               f"Z real {p} x {q}, W = 0", p * q)
    return CompatibleSpace(f"USp_{n}/(USp_{p} x USp_{q})", f"USp_{n}",
                           f"USp_{p} x USp_{q}",
                           f"Z quaternion {p} x {q}, W = 0", p * q)


# ---------------------------------------------------------------------------
# Symmetry settings


@dataclass(frozen=True, eq=False)
class SymmetrySetting:
    """A full problem instance: space kind, G0 action, optional T and S.

    ``particle_hole`` stores the unitary involution S on V that twists
    particle-hole conjugation; the induced anti-unitary on W = V + V*
    exists only on settings of kind ``nambu`` (see ``build_nambu``).
    """

    kind: str
    dim: int
    g0: GroupAction
    time_reversal: AntiUnitaryOp = None
    particle_hole: np.ndarray = None
    charge_conjugation: AntiUnitaryOp = None
    base: "SymmetrySetting" = None
    tol: float = None

    @property
    def tolerance(self):
        return linalg.TOL_INPUT if self.tol is None else self.tol


def hilbert_setting(g0, time_reversal=None, particle_hole=None, tol=None):
    """Validated Hilbert-space setting."""
    setting = SymmetrySetting(kind="hilbert", dim=g0.dim, g0=g0,
                              time_reversal=time_reversal,
                              particle_hole=particle_hole, tol=tol)
    validate_setting(setting)
    return setting


def _real_span_residual(mats, target):
    """Distance of ``target`` from the real span of ``mats``."""
    a = np.stack([np.concatenate([m.real.ravel(), m.imag.ravel()])
                  for m in mats], axis=1)
    b = np.concatenate([target.real.ravel(), target.imag.ravel()])
    coeff, *_ = np.linalg.lstsq(a, b, rcond=None)
    return float(np.linalg.norm(a @ coeff - b))


def _closest_element(action, candidate, tol):
    for el in action.elements:
        if linalg.frob(el - candidate) <= tol * action.dim:
            return True
    return False


def _check_conjugation_symmetry(action, conjugate, what, tol):
    """Conjugation must map the G0 action into itself."""
    if action.mode in (MODE_NONE,):
        return
    if action.mode == MODE_FINITE:
        for g in action.generators:
            if not _closest_element(action, conjugate(g), tol):
                raise SymmetryConsistencyError(
                    f"{what} does not normalize the symmetry group")
    else:
        gens = list(action.generators)
        scale = max(linalg.frob(g) for g in gens)
        for g in gens:
            if _real_span_residual(gens, conjugate(g)) > tol * max(1.0, scale):
                raise SymmetryConsistencyError(
                    f"{what} does not normalize the symmetry algebra")


def validate_setting(setting):
    """Run the consistency checks a setting must satisfy."""
    tol = setting.tolerance
    n = setting.dim
    if setting.g0.dim != n:
        raise InputShapeError("G0 dimension does not match the setting")
    t = setting.time_reversal
    if t is not None:
        if t.dim != n:
            raise InputShapeError("time-reversal dimension mismatch")
        parity(t, tol)  # raises NotInvolutiveError when not an inversion
        _check_conjugation_symmetry(setting.g0, t.conjugate_linear,
                                    "time reversal", tol)
    s = setting.particle_hole
    if s is not None:
        s = np.asarray(s, dtype=complex)
        if s.shape != (n, n):
            raise InputShapeError("particle-hole involution shape mismatch")
        if not linalg.is_unitary(s, max(tol, linalg.tol_unitary(n))):
            raise InputShapeError("particle-hole twist S must be unitary")
        if linalg.frob(s @ s - np.eye(n)) > tol * n:
            raise SymmetryConsistencyError("S must be an involution")
        _check_conjugation_symmetry(setting.g0, lambda g: s @ g @ s.conj().T,
                                    "particle-hole twist", tol)
        if t is not None:
            if linalg.frob(s @ t.u - t.u @ np.conj(s)) > tol * n:
                raise SymmetryConsistencyError(
                    "S must commute with time reversal")


# ---------------------------------------------------------------------------
# Nambu space


def nambu_form(n):
    """Canonical symmetric bilinear form on W = V + V*."""
    q = np.zeros((2 * n, 2 * n))
    q[:n, n:] = np.eye(n)
    q[n:, :n] = np.eye(n)
    return q


def nambu_reality(n):
    """Anti-unitary real structure fixing the Majorana subspace of W."""
    return AntiUnitaryOp(nambu_form(n))


def _induced_unitary(g):
    """Action v + f -> g v + (g^{-1})^t f as a block matrix on W."""
    n = g.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = g
    out[n:, n:] = np.conj(g)
    return out


def _induced_algebra(x):
    n = x.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = x
    out[n:, n:] = -x.T
    return out


def build_nambu(setting):
    """Promote a Hilbert-space setting to Nambu space W = V + V*.

    Unitary symmetries act as g (x) (g^{-1})^t, time reversal is induced
    the same way on the dual, and the particle-hole twist S becomes the
    anti-unitary charge conjugation swapping V with V* (its overall
    alternating sign on Fock space cancels in every conjugation action
    and is dropped here).
    """
    if setting.kind != "hilbert":
        raise InputShapeError("build_nambu expects a hilbert-kind setting")
    n = setting.dim
    act = setting.g0
    if act.mode == MODE_FINITE:
        g0 = GroupAction(dim=2 * n, mode=MODE_FINITE,
                         generators=tuple(_induced_unitary(g)
                                          for g in act.generators),
                         elements=tuple(_induced_unitary(g)
                                        for g in act.elements))
    elif act.mode == MODE_NONE:
        g0 = trivial_action(2 * n)
    else:
        g0 = GroupAction(dim=2 * n, mode=MODE_LIE,
                         generators=tuple(_induced_algebra(x)
                                          for x in act.generators))
    t_w = None
    if setting.time_reversal is not None:
        u = setting.time_reversal.u
        blocks = np.zeros((2 * n, 2 * n), dtype=complex)
        blocks[:n, :n] = u
        blocks[n:, n:] = np.conj(u)
        t_w = AntiUnitaryOp(blocks)
    c_w = None
    if setting.particle_hole is not None:
        s = np.asarray(setting.particle_hole, dtype=complex)
        if linalg.frob(s @ s - np.eye(n)) > setting.tolerance * n:
            raise InputShapeError("S must be an involution")
        u = np.zeros((2 * n, 2 * n), dtype=complex)
        u[:n, n:] = s
        u[n:, :n] = np.conj(s)
        c_w = AntiUnitaryOp(u)
    return SymmetrySetting(kind="nambu", dim=2 * n, g0=g0,
                           time_reversal=t_w,
                           particle_hole=setting.particle_hole,
                           charge_conjugation=c_w, base=setting,
                           tol=setting.tol)


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True, eq=False)
class BlockEntry:
    """One classified sector: dimensions, class label, parities."""

    sector_labels: tuple
    irrep_dim: int
    multiplicity: int
    class_label: ClassLabel
    eps_t: int = None
    eps_alpha: int = None
    eps_beta: int = None

    def line(self):
        lam = ",".join(str(i) for i in self.sector_labels)
        return (f"lambda={lam} d={self.irrep_dim} m={self.multiplicity} "
                f"class={self.class_label.family} "
                f"space={self.class_label.space_name}")


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    """Per-sector class labels plus an echo of the classified setting."""

    mode: str
    dim: int
    entries: tuple

    def lines(self):
        return [e.line() for e in self.entries]

    def as_dict(self):
        return {
            "mode": self.mode,
            "dim": self.dim,
            "blocks": [
                {
                    "lambda": list(e.sector_labels),
                    "d": e.irrep_dim,
                    "m": e.multiplicity,
                    "class": e.class_label.family,
                    "dims": list(e.class_label.dims),
                    "space": e.class_label.space_name,
                    "eps_t": e.eps_t,
                    "eps_alpha": e.eps_alpha,
                    "eps_beta": e.eps_beta,
                }
                for e in self.entries
            ],
        }

    def families(self):
        return tuple(e.class_label.family for e in self.entries)


# ---------------------------------------------------------------------------
# Threefold classification


def classify_threefold(setting, rng=None):
    """Dyson classification of a Hilbert-space setting, sector by sector.

    Sectors without time reversal, and conjugate pairs of sectors that T
    exchanges, are class A; fixed sectors are AI or AII according to the
    parity of the transferred factor acting on the multiplicity space.
    Swapped pairs are reported once, with both sector labels listed.
    """
    if setting.kind != "hilbert":
        raise InputShapeError("threefold classification runs on the "
                              "Hilbert-space setting")
    rng = linalg.RngStream(0) if rng is None else rng
    blocks = isotypic_decompose(setting.g0, rng, tol=setting.tolerance)
    by_label = {b.label: b for b in blocks}
    t = setting.time_reversal
    entries = []
    if t is None:
        for b in blocks:
            entries.append(BlockEntry((b.label,), b.irrep_dim,
                                      b.multiplicity,
                                      label("A", b.multiplicity)))
        return ClassificationReport("threefold", setting.dim, tuple(entries))

    eps_t = parity(t, setting.tolerance)
    pairing = sector_action(t, blocks, setting.tolerance)
    for lam in pairing.fixed:
        b = by_label[lam]
        tt = transfer_T(b, t, setting.tolerance)
        family = "AI" if tt.eps_alpha == 1 else "AII"
        entries.append(BlockEntry((lam,), b.irrep_dim, b.multiplicity,
                                  label(family, b.multiplicity),
                                  eps_t=eps_t, eps_alpha=tt.eps_alpha,
                                  eps_beta=tt.eps_beta))
    for lam, mu in pairing.swapped:
        b, c = by_label[lam], by_label[mu]
        if b.multiplicity != c.multiplicity:
            raise SymmetryConsistencyError("swapped sectors with unequal "
                                           "multiplicity")
        entries.append(BlockEntry((lam, mu), b.irrep_dim, b.multiplicity,
                                  label("A", b.multiplicity), eps_t=eps_t))
    entries.sort(key=lambda e: e.sector_labels)
    return ClassificationReport("threefold", setting.dim, tuple(entries))


# ---------------------------------------------------------------------------
# Tenfold classification


def _is_u1_charge(action, tol):
    """True when the action is generated by i times the identity."""
    if action.mode != MODE_LIE:
        return False
    n = action.dim
    eye = np.eye(n)
    nontrivial = False
    for x in action.generators:
        z = np.trace(x) / n
        if linalg.frob(x - z * eye) > tol * max(1.0, linalg.frob(x)):
            return False
        if abs(z.real) > tol:
            return False
        if abs(z) > tol:
            nontrivial = True
    return nontrivial


def _diagnostics(trivial, u1, quaternionic, t, eps_t, has_c):
    parts = [
        f"G0 trivial: {trivial}",
        f"G0 U(1) charge: {u1}",
        f"G0 single quaternionic sector: {quaternionic}",
        f"T present: {t is not None}" + (f" (eps_T = {eps_t:+d})"
                                         if t is not None else ""),
        f"charge conjugation present: {has_c}",
    ]
    return "; ".join(parts)


def classify_tenfold(setting, rng=None):
    """Tenfold classification of a (promoted) Nambu-space setting.

    Supported configurations after G0 reduction: no symmetries (D),
    T with negative parity (DIII), a single quaternionic G0 sector
    (C, or CI with T), and a conserved U(1) charge with twisted
    particle-hole conjugation (AIII, or BDI / CII with T).  A conserved
    charge without particle-hole conjugation falls back to the Dyson
    classification.  Anything else raises
    ``UnsupportedConfigurationError`` with a pattern diagnostic.
    """
    rng = linalg.RngStream(0) if rng is None else rng
    base = setting if setting.kind == "hilbert" else setting.base
    if base is None:
        raise InputShapeError("nambu setting lacks its originating "
                              "hilbert setting")
    tol = base.tolerance
    n = base.dim
    g0 = base.g0
    t = base.time_reversal
    has_c = base.particle_hole is not None

    trivial = g0.is_trivial(tol)
    u1 = _is_u1_charge(g0, tol)
    eps_t = parity(t, tol) if t is not None else None

    quaternionic = False
    block = None
    if not trivial and not u1:
        blocks = isotypic_decompose(g0, rng, tol=tol)
        if len(blocks) == 1:
            block = blocks[0]
            quaternionic = self_duality_type(g0, block, tol) == -1

    if u1 and not has_c:
        fallback = classify_threefold(replace(base, particle_hole=None), rng)
        return ClassificationReport("tenfold", 2 * n, fallback.entries)

    if trivial and not has_c:
        if t is None:
            entry = BlockEntry((0,), 1, n, label("D", n))
        elif eps_t == -1:
            entry = BlockEntry((0,), 1, n, label("DIII", n), eps_t=eps_t)
        else:
            raise UnsupportedConfigurationError(
                "trivial G0 with positive-parity T is outside the decision "
                "table; " + _diagnostics(trivial, u1, quaternionic, t,
                                         eps_t, has_c))
        return ClassificationReport("tenfold", 2 * n, (entry,))

    if quaternionic and not has_c:
        m = block.multiplicity
        if t is None:
            entry = BlockEntry((0,), block.irrep_dim, m, label("C", m))
        elif eps_t == -1:
            tt = transfer_T(block, t, tol)
            if tt.eps_alpha != 1:
                raise UnsupportedConfigurationError(
                    "quaternionic sector with eps_alpha = -1 is outside the "
                    "decision table; " + _diagnostics(
                        trivial, u1, quaternionic, t, eps_t, has_c))
            entry = BlockEntry((0,), block.irrep_dim, m, label("CI", m),
                               eps_t=eps_t, eps_alpha=tt.eps_alpha,
                               eps_beta=tt.eps_beta)
        else:
            raise UnsupportedConfigurationError(
                "quaternionic sector with positive-parity T is outside the "
                "decision table; " + _diagnostics(trivial, u1, quaternionic,
                                                  t, eps_t, has_c))
        return ClassificationReport("tenfold", 2 * n, (entry,))

    if u1 and has_c:
        s = np.asarray(base.particle_hole, dtype=complex)
        eigs = np.linalg.eigvalsh(0.5 * (s + s.conj().T))
        p = int(np.sum(eigs > 0))
        q = n - p
        if t is None:
            entry = BlockEntry((0,), 1, n, label("AIII", p, q))
        elif eps_t == 1:
            entry = BlockEntry((0,), 1, n, label("BDI", p, q), eps_t=eps_t)
        else:
            entry = BlockEntry((0,), 1, n, label("CII", p, q), eps_t=eps_t)
        return ClassificationReport("tenfold", 2 * n, (entry,))

    raise UnsupportedConfigurationError(
        "unrecognized symmetry configuration; " +
        _diagnostics(trivial, u1, quaternionic, t, eps_t, has_c))


# ---------------------------------------------------------------------------
# Canonical settings for the ten families


def canonical_setting(lab):
    """The reference Hilbert-space setting whose classification is ``lab``.

    Used by the ensemble round-trip checks: a sample drawn for ``lab``
    satisfies every symmetry constraint of ``canonical_setting(lab)``.
    """
    f = lab.family
    if f in _CHIRAL:
        p, q = lab.dims
        n = p + q
    else:
        n = lab.dims[0]
    eye = np.eye(n)
    if f == "A":
        return hilbert_setting(u1_charge_action(n))
    if f == "AI":
        return hilbert_setting(u1_charge_action(n), AntiUnitaryOp(eye))
    if f == "AII":
        j = linalg.symplectic_form(n // 2)
        return hilbert_setting(u1_charge_action(n), AntiUnitaryOp(j))
    if f == "D":
        return hilbert_setting(trivial_action(n))
    if f == "DIII":
        if n % 2:
            raise InputShapeError("DIII canonical setting needs even N")
        j = linalg.symplectic_form(n // 2)
        return hilbert_setting(trivial_action(n), AntiUnitaryOp(j))
    if f == "C":
        return hilbert_setting(spin_half_action(2 * n))
    if f == "CI":
        u = np.kron(np.eye(n), 1j * grouprep.PAULI_Y)
        return hilbert_setting(spin_half_action(2 * n), AntiUnitaryOp(u))
    p, q = lab.dims
    s = np.diag(np.concatenate([np.ones(p), -np.ones(q)]))
    if f == "AIII":
        return hilbert_setting(u1_charge_action(n), particle_hole=s)
    if f == "BDI":
        return hilbert_setting(u1_charge_action(n), AntiUnitaryOp(eye),
                               particle_hole=s)
    u = np.zeros((n, n), dtype=complex)
    u[:p, :p] = linalg.symplectic_form(p // 2)
    u[p:, p:] = linalg.symplectic_form(q // 2)
    return hilbert_setting(u1_charge_action(n), AntiUnitaryOp(u),
                           particle_hole=s)
