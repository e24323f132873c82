"""Unitarily correctable subsystems of a unital channel.

For unital noise the unitarily correctable subsystems are exactly the
noiseless subsystems of the composition of the channel with its dual.
The pipeline: compose E^dag ∘ E, enumerate its noiseless subsystems
from the fixed-point algebra, check each candidate's correctability for
E itself, build the recovery unitary, and upgrade it to a correction by
pairing the output C (x) B frame back onto A (x) B (possible exactly
because rank F_{C|A}(I_A) = rank I_A here).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraStructure, enumerate_noiseless
from .channel import KrausChannel, compose, dual
from .correctability import check_correctable
from .errors import NotUnital, PreconditionViolated
from .linalg import (
    DEFAULT_TOL,
    complete_to_unitary,
    dagger,
    frobenius,
    numeric_rank,
    operator_basis,
    vec,
)
from .recovery import construct_recovery
from .subsystem import SubsystemDecomposition, embed_product, factor_on_range

__all__ = ["UccSubsystem", "InternalContradiction", "UccReport",
           "find_ucc", "rank_support_equivalence"]


@dataclass
class UccSubsystem:
    """One unitarily correctable subsystem with its correction unitary."""

    decomposition: SubsystemDecomposition
    u_correction: np.ndarray
    residual: float
    f_a_superop: np.ndarray


@dataclass
class InternalContradiction:
    """Diagnostic: a noiseless subsystem of E^dag ∘ E failed a later check.

    Signals a numerical-tolerance inconsistency (near-degenerate
    channels straddling the tolerance), recorded in the report instead
    of silently dropping the candidate.
    """

    decomposition: SubsystemDecomposition
    stage: str
    detail: str
    residual: float


@dataclass
class UccReport:
    """Everything find_ucc learned about a unital channel."""

    subsystems: list[UccSubsystem]
    classical_sectors: list[tuple[int, int]]
    rank_diagnostics: list[tuple[int, int]]
    contradictions: list[InternalContradiction] = field(default_factory=list)
    structure: AlgebraStructure | None = None
    seed: int = 0


def _pair_frames_unitary(w_from: np.ndarray, w_to: np.ndarray, dim: int,
                         tol: float) -> np.ndarray:
    """Unitary sending the columns of w_from to the columns of w_to, in order."""
    v = np.zeros((dim, dim), dtype=complex)
    for j in range(w_from.shape[1]):
        v += np.outer(w_to[:, j], w_from[:, j].conj())
    return complete_to_unitary(v, dim, tol=max(100 * tol, 1e-7))


def find_ucc(ch: KrausChannel, seed: int = 0, tol: float = DEFAULT_TOL) -> UccReport:
    """Discover the unitarily correctable subsystems of a unital channel.

    Raises
    ------
    NotUnital
        If the channel is not unital (the characterization of unitary
        correctability via the dual composition needs unital noise).
    """
    if not ch.is_unital:
        raise NotUnital("UCC discovery requires a unital channel")
    composed = compose(dual(ch), ch)
    enumeration = enumerate_noiseless(composed, seed=seed, tol=tol)

    report = UccReport(
        subsystems=[], classical_sectors=list(enumeration.structure.classical_sectors),
        rank_diagnostics=[], structure=enumeration.structure, seed=seed)

    for dec in enumeration.subsystems:
        p_ab = dec.p_ab
        report.rank_diagnostics.append(
            (numeric_rank(ch.apply(p_ab), tol), numeric_rank(p_ab, tol)))

        cert = check_correctable(ch, dec, tol=tol)
        if not cert.passed:
            report.contradictions.append(InternalContradiction(
                dec, "check_correctable",
                "noiseless subsystem of E^dag∘E is not correctable for E",
                cert.residual))
            continue
        res = construct_recovery(ch, dec, cert, tol=tol)

        # unitary correctability needs rank F_{C|A}(I_A) = rank I_A
        rank_c = res.c_subsystem.d_a
        if rank_c != dec.d_a:
            report.contradictions.append(InternalContradiction(
                dec, "rank",
                f"dim C = {rank_c} differs from d_A = {dec.d_a}", float(rank_c)))
            continue

        v = _pair_frames_unitary(res.c_subsystem.w, dec.w, ch.dim, tol)
        u_corr = v @ res.u_recovery
        residual, f_a = _verify_unitary_correction(ch, dec, u_corr, tol)
        if residual > max(100 * tol, 1e-7):
            report.contradictions.append(InternalContradiction(
                dec, "verify", "correction residual above tolerance", residual))
            continue
        report.subsystems.append(UccSubsystem(dec, u_corr, residual, f_a))
    return report


def _verify_unitary_correction(ch, dec, u_corr, tol):
    """Residual of U ∘ E ∘ P_AB = F_A (x) id_B for the unitary correction."""
    d_a, d_b = dec.d_a, dec.d_b
    basis_a = operator_basis(d_a)
    extracted = []
    for sig_a in basis_a:
        out = u_corr @ ch.apply(embed_product(dec, sig_a, np.eye(d_b) / d_b)) @ dagger(u_corr)
        extracted.append(factor_on_range(dec, out, tol=tol).factor * d_b)
    residual = 0.0
    for idx, sig_a in enumerate(basis_a):
        for sig_b in operator_basis(d_b):
            lhs = u_corr @ ch.apply(embed_product(dec, sig_a, sig_b)) @ dagger(u_corr)
            rhs = embed_product(dec, extracted[idx], sig_b)
            residual = max(residual, frobenius(lhs - rhs))
    f_a = np.zeros((d_a * d_a, d_a * d_a), dtype=complex)
    for i in range(d_a):
        for j in range(d_a):
            f_a[:, i + d_a * j] = vec(extracted[i * d_a + j])
    return residual, f_a


def rank_support_equivalence(ch: KrausChannel, dec: SubsystemDecomposition,
                             tol: float = DEFAULT_TOL) -> tuple[bool, bool, bool]:
    """The three equivalent conditions for a correctable subsystem of unital noise.

    Returns ``(support_containment, rank_equality, fixed_point)`` where

    * support containment: supp(E^dag∘E(P_AB)) ⊆ supp(P_AB),
    * rank equality: rank(E(P_AB)) = rank(P_AB),
    * fixed point: E^dag∘E(P_AB) = P_AB.

    Raises
    ------
    NotUnital
        If the channel is not unital.
    PreconditionViolated
        If the decomposition fails the correctability check (the
        equivalence assumes a correctable subsystem).
    """
    if not ch.is_unital:
        raise NotUnital("the equivalence holds for unital channels")
    cert = check_correctable(ch, dec, tol=tol)
    if not cert.passed:
        raise PreconditionViolated(
            f"subsystem is not correctable (residual {cert.residual:.3e})")

    p = dec.p_ab
    composed = compose(dual(ch), ch)
    x = composed.apply(p)
    p_perp = np.eye(ch.dim) - p
    # numerically stable support-containment test for positive x
    leak = frobenius(p_perp @ x @ p_perp) + frobenius(p_perp @ x @ p)
    support_ok = leak <= tol * max(1.0, frobenius(x))

    rank_ok = numeric_rank(ch.apply(p), tol) == numeric_rank(p, tol)
    fixed_ok = frobenius(x - p) <= tol * max(1.0, frobenius(p))
    return support_ok, rank_ok, fixed_ok
