import numpy as np
import pytest

from subrec import (
    DimensionMismatch,
    SubsystemDecomposition,
    embed_product,
    factor_on_range,
)
from subrec.linalg import dagger
from subrec.random_ops import haar_isometry, random_density


def test_validates_isometry():
    with pytest.raises(DimensionMismatch):
        SubsystemDecomposition(4, 1, 2, np.ones((4, 2)))
    with pytest.raises(DimensionMismatch):
        SubsystemDecomposition(4, 2, 4, np.zeros((4, 8)))


def test_projector_property():
    dec = SubsystemDecomposition(6, 1, 2, haar_isometry(6, 2, seed=0))
    p = dec.p_ab
    assert np.linalg.norm(p @ p - p) < 1e-12
    assert np.linalg.norm(p - dagger(p)) < 1e-12


def test_embed_trivial_decomposition_is_kron():
    dec = SubsystemDecomposition.trivial(2, 3)
    a = random_density(2, seed=1)
    b = random_density(3, seed=2)
    assert np.linalg.norm(embed_product(dec, a, b) - np.kron(a, b)) < 1e-12


def test_embed_subspace_preserves_trace():
    dec = SubsystemDecomposition(6, 1, 2, haar_isometry(6, 2, seed=3))
    b = random_density(2, seed=4)
    out = embed_product(dec, np.eye(1), b)
    assert abs(np.trace(out) - 1.0) < 1e-12
    # positivity preserved
    assert np.min(np.linalg.eigvalsh((out + dagger(out)) / 2)) > -1e-12
    # supported on the code subspace
    assert np.linalg.norm(out - dec.p_ab @ out @ dec.p_ab) < 1e-12


def test_embed_phase_flip_code_operator_form():
    w = np.zeros((4, 2), dtype=complex)
    w[0, 0] = 1.0
    w[3, 1] = 1.0
    dec = SubsystemDecomposition(4, 1, 2, w)
    sigma = np.array([[0.6, 0.2 - 0.1j], [0.2 + 0.1j, 0.4]])
    out = embed_product(dec, np.eye(1), sigma)
    # a|00><00| + b|00><11| + c|11><00| + d|11><11|
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = sigma[0, 0]
    expected[0, 3] = sigma[0, 1]
    expected[3, 0] = sigma[1, 0]
    expected[3, 3] = sigma[1, 1]
    assert np.linalg.norm(out - expected) < 1e-14


def test_factor_projector_gives_identity():
    dec = SubsystemDecomposition(8, 2, 2, haar_isometry(8, 4, seed=5))
    res = factor_on_range(dec, dec.p_ab)
    assert res.ok
    assert res.residual < 1e-12
    assert np.linalg.norm(res.factor - np.eye(2)) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_factor_construct_then_extract(seed):
    rng = np.random.default_rng(seed)
    dec = SubsystemDecomposition(8, 2, 2, haar_isometry(8, 4, rng))
    x0 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = dec.w @ np.kron(x0, np.eye(2)) @ dagger(dec.w)
    res = factor_on_range(dec, m)
    assert res.ok
    assert np.linalg.norm(res.factor - x0) < 1e-10


def test_factor_rejects_non_factorizable():
    dec = SubsystemDecomposition(8, 2, 2, haar_isometry(8, 4, seed=6))
    z = np.diag([1.0, -1.0]).astype(complex)
    m = dec.w @ np.kron(np.eye(2), z) @ dagger(dec.w)
    res = factor_on_range(dec, m)
    assert not res.ok
    # the whole operator is in the mismatch: residual ~ ||I (x) Z||_F
    assert abs(res.residual - np.linalg.norm(np.kron(np.eye(2), z))) < 1e-9


def test_factor_dimension_check():
    dec = SubsystemDecomposition.trivial(2, 2)
    with pytest.raises(DimensionMismatch):
        factor_on_range(dec, np.eye(5))


def test_subspace_constructor():
    vecs = [np.array([1, 0, 0, 0], dtype=complex),
            np.array([0, 0, 0, 1], dtype=complex)]
    dec = SubsystemDecomposition.from_subspace(4, vecs)
    assert dec.d_a == 1 and dec.d_b == 2
