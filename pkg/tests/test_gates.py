import numpy as np
import pytest

from spinfanout.core import DiagonalOperator, compose, embed, equiv_up_to_global_phase
from spinfanout.gates import (
    cnot_from_cz,
    cz_from_ieq,
    fanout_reference,
    ieq_reference,
    ieq_restriction,
    parity_reference,
    standard_gate,
)
from spinfanout.hamiltonians import un


def is_permutation_matrix(mat):
    if not np.all((np.abs(mat) < 1e-14) | (np.abs(mat - 1) < 1e-14)):
        return False
    ones = np.abs(mat - 1) < 1e-14
    return bool(np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1))


class TestStandardGates:
    def test_s_sdag(self):
        prod = compose(standard_gate("S").unitary, standard_gate("Sdag").unitary)
        assert np.allclose(prod.entries, 1.0)

    def test_hadamard_on_zero(self):
        h = standard_gate("H").unitary.matrix
        assert np.allclose(h @ [1, 0], [1 / np.sqrt(2), 1 / np.sqrt(2)])
        assert np.allclose(h @ [0, 1], [1 / np.sqrt(2), -1 / np.sqrt(2)])

    def test_cz(self):
        assert np.allclose(standard_gate("CZ").unitary.entries, [1, 1, 1, -1])

    def test_all_unitary(self):
        for name in ("H", "X", "Z", "S", "SDAG", "CNOT", "CZ"):
            assert standard_gate(name).unitary.is_unitary(1e-12)

    def test_unknown(self):
        with pytest.raises(KeyError):
            standard_gate("T")


class TestFanoutReference:
    def test_two_qubits_is_cnot(self):
        # control defaults to the last qubit; relabel CNOT accordingly
        f = fanout_reference(2)
        cnot = embed(standard_gate("CNOT").unitary, [1, 0], 2)
        assert np.allclose(f.matrix, cnot.to_dense().matrix)

    def test_control_zero_is_noop(self):
        f = fanout_reference(3).matrix
        for x in range(4):  # inputs with control (qubit 2) clear
            col = f[:, x]
            assert col[x] == 1 and np.sum(np.abs(col)) == 1

    def test_copy_branch(self):
        # |b=1, targets 00> -> |b=1, targets 11>
        f = fanout_reference(3).matrix
        src = 0b100
        assert f[0b111, src] == 1

    def test_explicit_control_position(self):
        f = fanout_reference(3, control=0).matrix
        assert f[0b111, 0b001] == 1

    @pytest.mark.parametrize("m", range(2, 8))
    def test_permutation(self, m):
        assert is_permutation_matrix(fanout_reference(m).matrix)


class TestParityReference:
    def test_two_qubits_is_cnot(self):
        p = parity_reference(2)
        cnot = embed(standard_gate("CNOT").unitary, [0, 1], 2)
        assert np.allclose(p.matrix, cnot.to_dense().matrix)

    def test_even_parity_fixed(self):
        p = parity_reference(4).matrix
        src = 0b0011  # two ones among the sources, accumulator clear
        assert p[src, src] == 1

    def test_odd_parity_flips_accumulator(self):
        p = parity_reference(4).matrix
        src = 0b1001  # one source bit set, accumulator set
        assert p[0b0001, src] == 1

    @pytest.mark.parametrize("m", range(2, 8))
    def test_permutation(self, m):
        assert is_permutation_matrix(parity_reference(m).matrix)


class TestIeq:
    def test_entries(self):
        e = ieq_reference().entries
        assert e[0] == -1 and e[7] == -1
        assert np.all(e[1:7] == 1)

    def test_relative_sign(self):
        e = ieq_reference().entries
        assert e[0b010] / e[0] == -1

    def test_involution(self):
        prod = compose(ieq_reference(), ieq_reference())
        assert np.allclose(prod.entries, 1.0)

    def test_matches_three_qubit_evolution(self):
        rep = equiv_up_to_global_phase(ieq_reference(), un(3))
        assert rep.equivalent


class TestCzFromIeq:
    def test_restriction_is_cz(self):
        rep = cz_from_ieq()
        assert rep.equivalent and rep.max_deviation < 1e-12

    def test_hadamard_conjugation_gives_cnot(self):
        rep = cnot_from_cz()
        assert rep.equivalent and abs(rep.phase - 1) < 1e-12

    def test_complementary_block(self):
        # fixing the third qubit to |0> leaves a sign flip on |00> only
        assert np.allclose(ieq_restriction(0).entries, [-1, 1, 1, 1])


class TestFig3Conjugation:
    @pytest.mark.parametrize("m", range(2, 9))
    def test_hadamard_sandwich(self, m):
        h = standard_gate("H").unitary
        layer = DiagonalOperator.identity(m).to_dense()
        for q in range(m):
            layer = compose(embed(h, [q], m), layer)
        conj = compose(layer, compose(parity_reference(m), layer))
        assert np.max(np.abs(conj.to_dense().matrix - fanout_reference(m).matrix)) < 1e-10
