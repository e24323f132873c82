"""Seeded random operators, states and channels for demos and tests."""

from __future__ import annotations

import numpy as np

from .channel import KrausChannel

__all__ = [
    "as_rng",
    "haar_unitary",
    "haar_isometry",
    "random_hermitian",
    "random_density",
    "random_projector",
    "random_channel",
    "random_unital_channel",
]


def as_rng(seed) -> np.random.Generator:
    """Pass Generators through, make one from anything else."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng, rows, cols):
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def haar_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary via phase-fixed QR of a Ginibre matrix."""
    rng = as_rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def haar_isometry(dim: int, cols: int, seed=None) -> np.ndarray:
    """Random isometry: the first ``cols`` columns of a Haar unitary."""
    if cols > dim:
        raise ValueError(f"cannot embed {cols} columns into dimension {dim}")
    return haar_unitary(dim, seed)[:, :cols]


def random_hermitian(dim: int, seed=None) -> np.ndarray:
    rng = as_rng(seed)
    z = _ginibre(rng, dim, dim)
    return (z + z.conj().T) / 2.0


def random_density(dim: int, seed=None, rank: int | None = None) -> np.ndarray:
    """Random density operator, full rank unless ``rank`` is given."""
    rng = as_rng(seed)
    g = _ginibre(rng, dim, rank or dim)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_projector(dim: int, rank: int, seed=None) -> np.ndarray:
    """Random rank-``rank`` orthogonal projector."""
    v = haar_isometry(dim, rank, seed)
    return v @ v.conj().T


def random_channel(dim: int, n_kraus: int, seed=None) -> KrausChannel:
    """Generic CPTP channel from a Haar-random Stinespring isometry."""
    v = haar_isometry(dim * n_kraus, dim, seed)
    kraus = [v[a * dim:(a + 1) * dim, :] for a in range(n_kraus)]
    return KrausChannel(kraus)


def random_unital_channel(dim: int, n_kraus: int, seed=None) -> KrausChannel:
    """Random mixture of Haar unitaries; unital and trace preserving."""
    rng = as_rng(seed)
    probs = rng.dirichlet(np.ones(n_kraus))
    kraus = [np.sqrt(p) * haar_unitary(dim, rng) for p in probs]
    return KrausChannel(kraus)
