import numpy as np
import pytest
import scipy.sparse as sp

from qmatreps.hilbert import Basis, TruncOp
from qmatreps.hilbert.truncop import SPARSE_MIN_DIM, kron_all, shift_op


def test_shift_and_adjoint():
    s = shift_op(4, [1.0, 2.0, 3.0, 4.0], 1)
    d = s.dense()
    assert d[1, 0] == 1.0 and d[3, 2] == 3.0
    assert np.array_equal(s.adjoint().dense(), d.conj().T)
    assert s.bandwidth == (1,)


def test_zero_operator_has_zero_bandwidth():
    z = TruncOp(Basis.product((5,)), np.zeros((5, 5)), (1,))
    assert z.bandwidth == (0,)


def test_kron_dims_and_values():
    a = shift_op(3, [1.0, 1.0, 1.0], 1)
    b = shift_op(2, [2.0, 3.0], 0)
    k = a.kron(b)
    assert k.dims == (3, 2)
    assert np.array_equal(k.dense(), np.kron(a.dense(), b.dense()))


def test_storage_switches_at_threshold():
    small = kron_all([TruncOp.identity(Basis.product((8,)))] * 2)
    big = kron_all([TruncOp.identity(Basis.product((8,)))] * 3)
    assert small.basis.size < SPARSE_MIN_DIM <= big.basis.size
    assert not small.is_sparse and big.is_sparse
    assert sp.issparse(big.mat)


def test_interior_margin():
    b = Basis.product((4, 5))
    idx = b.interior(np.array([1, 2]))
    lv = b.levels[idx]
    assert (lv[:, 0] < 3).all() and (lv[:, 1] < 3).all()
    assert len(idx) == 3 * 3


def test_mismatched_bases_rejected():
    a = TruncOp.identity(Basis.product((3,)))
    b = TruncOp.identity(Basis.product((4,)))
    with pytest.raises(ValueError):
        a + b
