"""Quantum channels in Kraus form and their superoperator matrices.

A channel is a trace-preserving completely positive map
``E(sigma) = sum_a E_a sigma E_a^dag`` given by a finite list of Kraus
operators.  The dual (adjoint) map has Kraus operators ``{E_a^dag}``;
it is trace preserving exactly when the channel is unital.  Channels
compare by action on an operator basis, never by Kraus lists, because
Kraus representations are only unique up to a unitary remixing.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotTracePreserving
from .linalg import DEFAULT_TOL, dagger, frobenius, unvec

__all__ = [
    "KrausChannel",
    "Superoperator",
    "dual",
    "compose",
    "to_superoperator",
    "fixed_point_basis",
    "channels_equal",
]


class KrausChannel:
    """A completely positive map as a finite list of d x d Kraus operators.

    Parameters
    ----------
    kraus : sequence of ndarray
        Nonempty list of square matrices, all of one dimension.
    require_tp : bool
        When True (default) construction fails with
        :class:`~subrec.errors.NotTracePreserving` unless
        ``sum_a E_a^dag E_a = I`` within tolerance.  Duals and other
        intermediate maps are built with ``require_tp=False``.
    tol : float
        Relative tolerance of the structural checks.
    """

    def __init__(self, kraus, require_tp: bool = True, tol: float = DEFAULT_TOL):
        ops = [np.asarray(k, dtype=complex) for k in kraus]
        if not ops:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise DimensionMismatch("Kraus operators must share one square shape")
            if not np.all(np.isfinite(k)):
                raise ValueError("Kraus operators must have finite entries")
        self.kraus = tuple(ops)
        self.dim = d
        self.tol = tol
        eye = np.eye(d)
        self.tp_defect = frobenius(sum(dagger(k) @ k for k in ops) - eye)
        self.unital_defect = frobenius(sum(k @ dagger(k) for k in ops) - eye)
        if require_tp and not self.is_trace_preserving:
            raise NotTracePreserving(
                f"sum E_a^dag E_a differs from identity by {self.tp_defect:.3e}")

    @property
    def m(self) -> int:
        """Number of Kraus operators."""
        return len(self.kraus)

    @property
    def is_trace_preserving(self) -> bool:
        return self.tp_defect <= self.tol * max(1.0, np.sqrt(self.dim))

    @property
    def is_unital(self) -> bool:
        """True when E(I) = I within tolerance."""
        return self.unital_defect <= self.tol * max(1.0, np.sqrt(self.dim))

    def apply(self, sigma: np.ndarray) -> np.ndarray:
        """E(sigma) = sum_a E_a sigma E_a^dag."""
        sigma = np.asarray(sigma, dtype=complex)
        if sigma.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"operator shape {sigma.shape} does not match dim {self.dim}")
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for k in self.kraus:
            out += k @ sigma @ dagger(k)
        return out

    def __call__(self, sigma: np.ndarray) -> np.ndarray:
        return self.apply(sigma)

    def __repr__(self):
        return f"KrausChannel(dim={self.dim}, m={self.m}, unital={self.is_unital})"


class Superoperator:
    """Matrix of a superoperator acting on column-stacked operators.

    With ``vec`` the column-stacking vectorization, the matrix of the
    Kraus map is ``sum_a conj(E_a) kron E_a`` and satisfies
    ``matrix @ vec(X) = vec(E(X))``.
    """

    def __init__(self, dim: int, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (dim * dim, dim * dim):
            raise DimensionMismatch(
                f"superoperator matrix must be {dim * dim} x {dim * dim}")
        self.dim = dim
        self.matrix = matrix

    def __repr__(self):
        return f"Superoperator(dim={self.dim})"


def dual(ch: KrausChannel) -> KrausChannel:
    """The adjoint map E^dag, with Kraus operators {E_a^dag}.

    Satisfies Tr(dual(ch)(sigma) tau) = Tr(sigma ch(tau)).  The result is
    trace preserving iff ``ch`` is unital, so no TP check is applied.
    """
    return KrausChannel([dagger(k) for k in ch.kraus], require_tp=False, tol=ch.tol)


def compose(f: KrausChannel, g: KrausChannel) -> KrausChannel:
    """The composition f∘g, i.e. ``sigma -> f(g(sigma))``."""
    if f.dim != g.dim:
        raise DimensionMismatch(f"dims differ: {f.dim} vs {g.dim}")
    kraus = [fa @ gb for fa in f.kraus for gb in g.kraus]
    return KrausChannel(kraus, require_tp=False, tol=max(f.tol, g.tol))


def to_superoperator(ch: KrausChannel) -> Superoperator:
    """Superoperator matrix of the channel (column-stacking convention)."""
    d = ch.dim
    mat = np.zeros((d * d, d * d), dtype=complex)
    for k in ch.kraus:
        mat += np.kron(k.conj(), k)
    return Superoperator(d, mat)


def fixed_point_basis(s: Superoperator, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) basis of the fixed-point set {X : E(X) = X}.

    Computed as the null space of (S - I); singular values below
    ``tol * max(1, s_max)`` are treated as zero.
    """
    d = s.dim
    delta = s.matrix - np.eye(d * d)
    _, sv, vh = np.linalg.svd(delta)
    smax = float(sv[0]) if sv.size else 0.0
    rank = int(np.sum(sv > tol * max(1.0, smax)))
    return [unvec(vh[i].conj(), d) for i in range(rank, d * d)]


def channels_equal(f: KrausChannel, g: KrausChannel, tol: float = DEFAULT_TOL) -> bool:
    """Equality of channel actions on a complete operator basis."""
    if f.dim != g.dim:
        return False
    sf = to_superoperator(f).matrix
    sg = to_superoperator(g).matrix
    return frobenius(sf - sg) <= tol * max(1.0, frobenius(sf))
