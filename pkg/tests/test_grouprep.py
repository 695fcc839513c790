"""Tests for group closure, commutants and isotypic decomposition."""

import numpy as np
import pytest

import oracles
from tenfold import linalg
from tenfold.errors import (GroupTooLargeError, InputShapeError,
                            UnsupportedModeError)
from tenfold.grouprep import (PAULI_X, PAULI_Y, PAULI_Z, close_group,
                              commutant_basis, fs_indicator,
                              isotypic_decompose, lie_algebra_action,
                              self_duality_type, spin_half_action,
                              transfer_hermitian, trivial_action,
                              u1_charge_action)

Z3_SHIFT = np.roll(np.eye(3), 1, axis=0).astype(complex)
S3_CYCLE = Z3_SHIFT
S3_SWAP = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)


class TestCloseGroup:
    def test_dihedral_order_eight(self):
        group = close_group([PAULI_X, PAULI_Z])
        assert len(group.elements) == 8
        _assert_group_axioms(group)

    def test_quaternion_order_eight(self):
        group = close_group([1j * PAULI_X, 1j * PAULI_Z])
        assert len(group.elements) == 8
        _assert_group_axioms(group)
        # -1 is an element of Q8 but not of the dihedral realization
        assert any(np.allclose(e, -np.eye(2)) for e in group.elements)

    def test_empty_generators_identity_group(self):
        group = close_group([], dim=3)
        assert len(group.elements) == 1
        assert group.dim == 3

    def test_budget_enforced(self):
        theta = np.sqrt(2.0)
        rot = np.array([[np.cos(theta), -np.sin(theta)],
                        [np.sin(theta), np.cos(theta)]], dtype=complex)
        with pytest.raises(GroupTooLargeError):
            close_group([rot], max_order=64)

    def test_non_unitary_rejected(self):
        with pytest.raises(InputShapeError):
            close_group([np.diag([1.0, 2.0]).astype(complex)])


def _assert_group_axioms(group):
    els = group.elements
    for a in els:
        for b in els:
            prod = a @ b
            assert any(linalg.frob(prod - c) < 1e-8 for c in els)
        inv = a.conj().T
        assert any(linalg.frob(inv - c) < 1e-8 for c in els)


class TestCommutant:
    def test_trivial_group_full_matrix_algebra(self):
        basis = commutant_basis(trivial_action(3))
        assert len(basis) == 9

    def test_q8_irrep_scalars_only(self):
        group = close_group([1j * PAULI_X, 1j * PAULI_Z])
        basis = commutant_basis(group)
        assert len(basis) == 1
        b = basis[0]
        assert linalg.frob(b - b[0, 0] * np.eye(2)) < 1e-8

    def test_z3_regular_representation(self):
        group = close_group([Z3_SHIFT])
        assert len(commutant_basis(group)) == 3

    def test_frobenius_orthonormal(self):
        group = close_group([S3_CYCLE, S3_SWAP])
        basis = commutant_basis(group)
        gram = np.array([[np.vdot(a, b) for b in basis] for a in basis])
        assert np.allclose(gram, np.eye(len(basis)), atol=1e-10)

    def test_dimension_is_sum_of_squared_multiplicities(self, rng):
        group = close_group([S3_CYCLE, S3_SWAP])
        blocks = isotypic_decompose(group, rng)
        predicted = sum(b.multiplicity ** 2 for b in blocks)
        assert len(commutant_basis(group)) == predicted


class TestIsotypicDecompose:
    def test_trivial_group(self, rng):
        blocks = isotypic_decompose(trivial_action(5), rng)
        assert len(blocks) == 1
        assert (blocks[0].irrep_dim, blocks[0].multiplicity) == (1, 5)

    def test_s3_permutation_representation(self, rng):
        group = close_group([S3_CYCLE, S3_SWAP])
        blocks = isotypic_decompose(group, rng)
        shapes = sorted((b.irrep_dim, b.multiplicity) for b in blocks)
        assert shapes == [(1, 1), (2, 1)]

    def test_z3_regular_representation(self, rng):
        group = close_group([Z3_SHIFT])
        blocks = isotypic_decompose(group, rng)
        assert sorted((b.irrep_dim, b.multiplicity) for b in blocks) == \
            [(1, 1)] * 3

    def test_u1_charge_single_block(self, rng):
        blocks = isotypic_decompose(u1_charge_action(4), rng)
        assert [(b.irrep_dim, b.multiplicity) for b in blocks] == [(1, 4)]

    def test_spin_half_analytic(self, rng):
        blocks = isotypic_decompose(spin_half_action(6), rng)
        assert [(b.irrep_dim, b.multiplicity) for b in blocks] == [(2, 3)]

    def test_projector_resolution_and_orthogonality(self, rng):
        group = close_group([np.kron(S3_CYCLE, np.eye(2)),
                             np.kron(S3_SWAP, np.eye(2))])
        blocks = isotypic_decompose(group, rng)
        total = sum(b.projector for b in blocks)
        assert linalg.frob(total - np.eye(6)) < 1e-8
        for a in blocks:
            assert linalg.frob(a.projector @ a.projector - a.projector) < 1e-8
            assert linalg.is_hermitian(a.projector)
            for b in blocks:
                if a.label != b.label:
                    assert linalg.frob(a.projector @ b.projector) < 1e-8

    def test_projectors_commute_with_generators(self, rng):
        group = close_group([S3_CYCLE, S3_SWAP])
        blocks = isotypic_decompose(group, rng)
        for b in blocks:
            for g in group.generators:
                assert linalg.frob(g @ b.projector - b.projector @ g) < 1e-8

    def test_block_kronecker_structure(self, rng):
        # generators act as identity (x) irrep in the factor basis
        group = close_group([np.kron(np.eye(3), 1j * PAULI_X),
                             np.kron(np.eye(3), 1j * PAULI_Z)])
        blocks = isotypic_decompose(group, rng)
        assert len(blocks) == 1
        b = blocks[0]
        assert (b.irrep_dim, b.multiplicity) == (2, 3)
        for g in group.generators:
            gb = b.factor_basis.conj().T @ g @ b.factor_basis
            rho = gb[:2, :2]
            assert linalg.is_unitary(rho, 1e-8)
            assert linalg.frob(gb - np.kron(np.eye(3), rho)) < 1e-8

    def test_multiplicities_match_character_oracle(self, rng):
        # random stacked D4 representation, conjugated by a Haar unitary
        data = oracles.GROUPS["D4"]
        rep_gens = [np.zeros((0, 0), dtype=complex)] * 2
        pieces = {"triv": 2, "2d": 1, "rs-": 1}
        import scipy.linalg as sla
        gen_blocks = [[], []]
        for name, mult in pieces.items():
            for i, g in enumerate(data.irreps[name]):
                gen_blocks[i].append(np.kron(np.eye(mult), g))
        gens = [sla.block_diag(*blocks) for blocks in gen_blocks]
        w = linalg.haar_unitary(gens[0].shape[0], rng)
        group = close_group([w @ g @ w.conj().T for g in gens])
        blocks = isotypic_decompose(group, rng)
        got = sorted((b.irrep_dim, b.multiplicity) for b in blocks)
        _, rep_els = oracles.group_elements_in_rep(data, tuple(gens))
        mults = oracles.multiplicities_from_character(data, rep_els)
        expected = sorted(
            (data.irreps[n][0].shape[0], m) for n, m in mults.items() if m)
        assert got == expected


class TestTransferHermitian:
    def test_product_metric_gives_identity(self, rng):
        blocks = isotypic_decompose(spin_half_action(8), rng)
        gram = transfer_hermitian(blocks[0])
        assert np.allclose(gram, np.eye(4), atol=1e-10)

    def test_independent_of_r(self, rng):
        group = close_group([np.kron(np.eye(2), 1j * PAULI_X),
                             np.kron(np.eye(2), 1j * PAULI_Z)])
        blocks = isotypic_decompose(group, rng)
        b = blocks[0]
        r1 = rng.complex_normal(b.irrep_dim)
        r2 = rng.complex_normal(b.irrep_dim)
        g1 = transfer_hermitian(b, r=r1)
        g2 = transfer_hermitian(b, r=r2)
        assert linalg.frob(g1 - g2) < 1e-10

    def test_one_dimensional_r_restricts_ambient(self, rng):
        blocks = isotypic_decompose(trivial_action(3), rng)
        gram = transfer_hermitian(blocks[0])
        assert np.allclose(gram, np.eye(3), atol=1e-12)

    def test_zero_r_rejected(self, rng):
        blocks = isotypic_decompose(trivial_action(2), rng)
        with pytest.raises(InputShapeError):
            transfer_hermitian(blocks[0], r=np.zeros(1))


class TestFsIndicator:
    def test_trivial_irrep(self, rng):
        group = close_group([S3_CYCLE, S3_SWAP])
        blocks = isotypic_decompose(group, rng)
        one_dim = [b for b in blocks if b.irrep_dim == 1][0]
        assert fs_indicator(group, one_dim) == 1

    def test_quaternion_two_dim(self, rng):
        group = close_group([1j * PAULI_X, 1j * PAULI_Z])
        blocks = isotypic_decompose(group, rng)
        assert fs_indicator(group, blocks[0]) == -1

    def test_z3_complex_characters(self, rng):
        group = close_group([Z3_SHIFT])
        blocks = isotypic_decompose(group, rng)
        indicators = sorted(fs_indicator(group, b) for b in blocks)
        assert indicators == [0, 0, 1]

    def test_unsupported_mode(self, rng):
        action = spin_half_action(4)
        blocks = isotypic_decompose(action, rng)
        with pytest.raises(UnsupportedModeError):
            fs_indicator(action, blocks[0])

    @pytest.mark.parametrize("group_name", ["Z3", "S3", "D4", "Q8"])
    def test_matches_character_oracle_per_irrep(self, group_name, rng):
        data = oracles.GROUPS[group_name]
        for name, gens in data.irreps.items():
            dim = gens[0].shape[0]
            # build irrep (x) C^2 so multiplicity space is nontrivial
            lifted = [np.kron(np.eye(2), g) for g in gens]
            group = close_group(lifted)
            blocks = isotypic_decompose(group, rng)
            assert len(blocks) == 1
            assert blocks[0].irrep_dim == dim
            assert fs_indicator(group, blocks[0]) == \
                oracles.fs_indicator_oracle(data, name)

    @pytest.mark.parametrize("group_name", ["Z3", "S3", "D4", "Q8"])
    def test_agrees_with_self_duality_type(self, group_name, rng):
        data = oracles.GROUPS[group_name]
        for name, gens in data.irreps.items():
            group = close_group([np.kron(np.eye(2), g) for g in gens])
            blocks = isotypic_decompose(group, rng)
            assert self_duality_type(group, blocks[0]) == \
                fs_indicator(group, blocks[0])


class TestLieAlgebraMode:
    def test_generators_must_be_antihermitian(self):
        with pytest.raises(InputShapeError):
            lie_algebra_action([PAULI_X])

    def test_su2_algebra_decomposition(self, rng):
        gens = [np.kron(np.eye(2), 1j * s)
                for s in (PAULI_X, PAULI_Y, PAULI_Z)]
        action = lie_algebra_action(gens)
        blocks = isotypic_decompose(action, rng)
        assert [(b.irrep_dim, b.multiplicity) for b in blocks] == [(2, 2)]
        assert self_duality_type(action, blocks[0]) == -1

    def test_u1_with_distinct_charges_splits(self, rng):
        action = lie_algebra_action([1j * np.diag([1.0, 1.0, -1.0])])
        blocks = isotypic_decompose(action, rng)
        assert sorted((b.irrep_dim, b.multiplicity) for b in blocks) == \
            [(1, 1), (1, 2)]
