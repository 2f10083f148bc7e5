import math

import numpy as np
import pytest

from spinfanout.core import DenseOperator, DiagonalOperator
from spinfanout.explore import classify_parity_diagonal, default_time_grid, scan
from spinfanout.hamiltonians import build_hn, build_kn, build_l2, build_ring
from spinfanout.report import scan_result_json, scan_result_summary
from spinfanout.hamiltonians import un


class TestClassify:
    def test_un6_usable_plus(self):
        v = classify_parity_diagonal(un(6))
        assert v.parity_usable
        assert v.relative_phase == pytest.approx(math.pi / 2, abs=1e-9)

    def test_un8_usable_minus(self):
        v = classify_parity_diagonal(un(8))
        assert v.parity_usable
        assert v.relative_phase == pytest.approx(-math.pi / 2, abs=1e-9)

    def test_identity_not_usable(self):
        v = classify_parity_diagonal(DiagonalOperator.identity(3))
        assert v.is_diagonal and not v.parity_usable
        assert v.relative_phase == pytest.approx(0.0)

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_even_n_always_usable(self, n):
        assert classify_parity_diagonal(un(n)).parity_usable

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_odd_n_never_usable(self, n):
        assert not classify_parity_diagonal(un(n)).parity_usable

    def test_off_diagonal_detected(self):
        h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        v = classify_parity_diagonal(DenseOperator(1, h))
        assert not v.is_diagonal
        assert v.off_diag_max == pytest.approx(1 / np.sqrt(2))


class TestDefaultGrid:
    def test_contains_quarter_turns(self):
        grid = default_time_grid()
        assert any(abs(t - math.pi / 4) < 1e-12 for t in grid)
        assert any(abs(t - 3 * math.pi / 4) < 1e-12 for t in grid)

    def test_strictly_increasing_no_duplicates(self):
        grid = default_time_grid()
        diffs = np.diff(grid)
        assert np.all(diffs > 1e-12)


class TestScan:
    def test_hn6_at_quarter_pi(self):
        res = scan(build_hn(6), [math.pi / 4], hamiltonian_id="hn6")
        assert res.verdicts[0].parity_usable
        assert res.best_time == pytest.approx(math.pi / 4)

    def test_ring_scan_completes(self):
        res = scan(build_kn(build_ring(6, 1.0)), default_time_grid(), hamiltonian_id="ring6")
        assert len(res.verdicts) == len(res.times)
        assert all(v.is_diagonal for v in res.verdicts)  # ZZ couplings stay diagonal

    def test_l2_scan_completes(self):
        grid = [k * math.pi / 8 for k in range(1, 17)]
        res = scan(build_l2(4), grid, hamiltonian_id="l2")
        assert len(res.verdicts) == 16

    def test_determinism(self):
        grid = default_time_grid()[:64]
        a = scan(build_kn(build_ring(4, 1.0)), grid, hamiltonian_id="r")
        b = scan(build_kn(build_ring(4, 1.0)), grid, hamiltonian_id="r")
        assert scan_result_json(a) == scan_result_json(b)

    def test_diagonal_path_never_densifies(self, monkeypatch):
        def boom(self):
            raise AssertionError("diagonal scan must not densify")

        monkeypatch.setattr(DiagonalOperator, "to_dense", boom)
        res = scan(build_hn(8), default_time_grid()[:32], hamiltonian_id="hn8")
        assert len(res.verdicts) == 32

    def test_summary_output(self):
        res = scan(build_hn(6), [math.pi / 4, math.pi / 2], hamiltonian_id="hn6")
        text = scan_result_summary(res)
        assert "pi/4" in text and "parity-usable" in text
