"""Superoperators, intermediate maps, Choi matrices and NCP witnesses.

The dynamical map Phi(p, 0) is represented as a matrix acting on
column-stacked states, S = sum_i conj(E_i) kron E_i. The propagator
between timelike parameters q <= p is

    Phi(p, q) = Phi(p, 0) Phi(q, 0)^{-1},

which for the qubit family is diagonal in the Pauli basis,
diag(1, lambda, lambda, lambda), with

    lambda(p, q) = (p (4 + 4 alpha - 3 alpha p) - 4)
                   / (4 q + 4 alpha q - 3 alpha q^2 - 4).

The denominator vanishes when the effective depolarizing probability
reaches 1 at q; that parameter value (``crossover_point``) is a genuine
singularity of the propagator and surfaces as :class:`SingularMapError`.

The Choi matrix of a map with superoperator S on an N-level system is
obtained by building U (S kron I_{N^2}) U with U the swap of the second
and third tensor factors, applying it to the vectorized projector onto
the maximally entangled state sum_i |ii>/sqrt(N), and devectorizing.
The map is completely positive iff the Choi matrix is positive
semidefinite; a trace norm above 1 therefore witnesses an NCP propagator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import matcore
from .channels import KrausSet, kappa, qubit_kraus, qudit_kraus
from .matcore import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SingularMapError,
    devectorize,
    hermitian_eigenvalues,
    kron,
    swap_permutation,
    trace_norm,
    vectorize,
)

__all__ = [
    "Superoperator",
    "ChoiMatrix",
    "LambdaRatio",
    "NcpWitness",
    "superoperator_of",
    "intermediate_map",
    "qudit_intermediate_map",
    "multiqubit_intermediate_map",
    "lambda_ratio",
    "qudit_transfer_ratio",
    "maximally_entangled_projector",
    "choi_of",
    "intermediate_choi",
    "choi_closed_form",
    "choi_eigenvalues_closed",
    "qudit_choi_eigenvalues",
    "crossover_point",
    "ncp_witness",
    "multiqubit_choi_trace_norm",
    "qudit_choi_trace_norm",
    "g_function",
    "bell_states",
    "bell_expectations",
    "pauli_transfer",
]

#: Width of the guard band around the singular parameter value; sweeps treat
#: grid points closer than this to the singularity as undefined samples.
SINGULARITY_GUARD = 1e-6


@dataclass(frozen=True)
class Superoperator:
    """Matrix representation of a channel on column-stacked operators."""

    matrix: np.ndarray = field(repr=False)
    dim: int

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        d2 = self.dim * self.dim
        if m.shape != (d2, d2):
            raise ValueError(f"superoperator for dimension {self.dim} must be {d2}x{d2}")
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "Superoperator") -> "Superoperator":
        if self.dim != other.dim:
            raise ValueError("superoperator dimensions differ")
        return Superoperator(self.matrix @ other.matrix, self.dim)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Action on an operator via vectorize / devectorize."""
        return devectorize(self.matrix @ vectorize(rho), self.dim)


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi matrix of a map on a ``dim``-level system (d^2 x d^2, trace 1).

    ``alpha``, ``q`` and ``p`` record the source parameters when the matrix
    came from the depolarizing intermediate map; they stay ``None`` for
    Choi matrices of generic superoperators.
    """

    matrix: np.ndarray = field(repr=False)
    dim: int
    alpha: float | None = None
    q: float | None = None
    p: float | None = None

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        d2 = self.dim * self.dim
        if m.shape != (d2, d2):
            raise ValueError(f"Choi matrix for dimension {self.dim} must be {d2}x{d2}")
        object.__setattr__(self, "matrix", m)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        """Real spectrum, ascending (the matrix is Hermitian by construction)."""
        return hermitian_eigenvalues(self.matrix)


class LambdaRatio(NamedTuple):
    """Shared Pauli eigenvalue of the qubit propagator, with its two factors."""

    value: float
    numerator: float
    denominator: float


class NcpWitness(NamedTuple):
    """Choi trace norm together with the NCP verdict it implies."""

    trace_norm: float
    is_ncp: bool


def superoperator_of(kraus: KrausSet) -> Superoperator:
    """Column-stacking superoperator S = sum_i conj(E_i) kron E_i.

    Satisfies S vec(rho) = vec(sum_i E_i rho E_i^dag).
    """
    d2 = kraus.dim * kraus.dim
    acc = np.zeros((d2, d2), dtype=complex)
    for op in kraus:
        acc += kron(op.conj(), op)
    return Superoperator(acc, kraus.dim)


def _check_pair(q: float, p: float) -> None:
    if not 0.0 <= q <= p <= 1.0:
        raise ValueError(f"intermediate parameters must satisfy 0 <= q <= p <= 1, got q={q}, p={p}")


def intermediate_map(
    alpha: float,
    q: float,
    p: float,
    kraus_builder: Callable[[float, float], KrausSet] = qubit_kraus,
) -> Superoperator:
    """Propagator Phi(p, q) = Phi(p, 0) Phi(q, 0)^{-1} as a superoperator.

    ``kraus_builder(alpha, p)`` must return the Kraus set of the one-step
    map; the default is the single-qubit family.

    Raises:
        SingularMapError: when Phi(q, 0) is not invertible (q at the
            crossover point of the family).
    """
    _check_pair(q, p)
    s_p = superoperator_of(kraus_builder(alpha, p))
    s_q = superoperator_of(kraus_builder(alpha, q))
    return Superoperator(s_p.matrix @ matcore.inverse(s_q.matrix), s_p.dim)


def qudit_intermediate_map(alpha: float, q: float, p: float, levels: int) -> Superoperator:
    """N-level specialization of :func:`intermediate_map`."""
    return intermediate_map(alpha, q, p, lambda a, t: qudit_kraus(a, t, levels))


def _grouped_slot_permutation(qubits: int) -> np.ndarray:
    """Map vec indices from per-qubit (col, row) pairs to grouped layout.

    The Kronecker power of single-qubit superoperators carries its 2n binary
    index slots interleaved as (col_1, row_1, ..., col_n, row_n), while the
    superoperator of the composite system orders them (col_1..col_n,
    row_1..row_n) under column stacking of 2^n x 2^n matrices.
    """
    n = int(qubits)
    axes = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    return np.arange(4**n).reshape([2] * (2 * n)).transpose(axes).reshape(-1)


def multiqubit_intermediate_map(alpha: float, q: float, p: float, qubits: int) -> Superoperator:
    """Propagator of the n-qubit tensor family.

    The n-qubit one-step superoperator is (up to the fixed slot reordering
    of :func:`_grouped_slot_permutation`) the n-fold Kronecker power of the
    single-qubit one, so its inverse factorizes per tensor slot and the
    propagator is the reordered Kronecker power of the single-qubit
    propagator. This avoids inverting the 4^n-dimensional matrix directly.
    """
    n = int(qubits)
    if n < 1:
        raise ValueError("qubits must be >= 1")
    single = intermediate_map(alpha, q, p)
    if n == 1:
        return single
    acc = single.matrix
    for _ in range(n - 1):
        acc = kron(acc, single.matrix)
    perm = _grouped_slot_permutation(n)
    return Superoperator(acc[np.ix_(perm, perm)], 2**n)


def lambda_ratio(alpha: float, q: float, p: float) -> LambdaRatio:
    """Closed-form Pauli eigenvalue lambda(p, q) of the qubit propagator.

    Equals (1 - k(p)) / (1 - k(q)) expressed over the common denominator 4;
    it is 1 - p at q = alpha = 0 and exactly 1 at p = q.

    Raises:
        SingularMapError: when the denominator vanishes (q at the singular
            parameter), matching the invertibility threshold of
            :func:`depolmark.matcore.inverse`.
    """
    _check_pair(q, p)
    num = p * (4 + 4 * alpha - 3 * alpha * p) - 4
    den = 4 * q + 4 * alpha * q - 3 * alpha * q * q - 4
    # |den|/4 = |1 - k(q)| is the smallest singular value of Phi(q, 0).
    if abs(den) / 4.0 <= matcore._SINGULAR_RTOL:
        raise SingularMapError(f"propagator undefined: q = {q} sits at the map singularity")
    return LambdaRatio(num / den, num, den)


def qudit_transfer_ratio(alpha: float, q: float, p: float, levels: int) -> float:
    """Shared non-identity transfer eigenvalue (1 - k(p)) / (1 - k(q)) for N levels."""
    _check_pair(q, p)
    g_p = 1.0 - kappa(alpha, p, levels)
    g_q = 1.0 - kappa(alpha, q, levels)
    if abs(g_q) <= matcore._SINGULAR_RTOL:
        raise SingularMapError(f"propagator undefined: q = {q} sits at the map singularity")
    return g_p / g_q


def maximally_entangled_projector(dim: int) -> np.ndarray:
    """Projector onto sum_i |ii>/sqrt(dim) of a dim x dim bipartite system."""
    psi = np.zeros(dim * dim, dtype=complex)
    for i in range(dim):
        psi[i * dim + i] = 1.0
    psi /= math.sqrt(dim)
    return np.outer(psi, psi.conj())


def choi_of(superop: Superoperator) -> ChoiMatrix:
    """Choi matrix of a map given its superoperator.

    Builds the composite operator U (S kron I_{d^2}) U, with U the swap of
    the second and third tensor factors, applies it to the vectorized
    maximally entangled projector and devectorizes the result. Since U is a
    symmetric permutation, the composite is assembled by permuting rows and
    columns instead of multiplying by the dense permutation matrix.
    """
    d = superop.dim
    perm = swap_permutation(d)
    composite = kron(superop.matrix, np.eye(d * d))[np.ix_(perm, perm)]
    chi_vec = composite @ vectorize(maximally_entangled_projector(d))
    return ChoiMatrix(devectorize(chi_vec, d * d), d)


def intermediate_choi(
    alpha: float, q: float, p: float, levels: int = 2, qubits: int = 1
) -> ChoiMatrix:
    """Choi matrix of the depolarizing propagator, parameters attached.

    Exactly one of ``levels > 2`` or ``qubits > 1`` may be used.
    """
    if levels > 2 and qubits > 1:
        raise ValueError("combined multi-level multi-qubit maps are not supported")
    if qubits > 1:
        superop = multiqubit_intermediate_map(alpha, q, p, qubits)
    elif levels > 2:
        superop = qudit_intermediate_map(alpha, q, p, levels)
    else:
        superop = intermediate_map(alpha, q, p)
    chi = choi_of(superop)
    return ChoiMatrix(chi.matrix, chi.dim, alpha=alpha, q=q, p=p)


def choi_closed_form(alpha: float, q: float, p: float) -> np.ndarray:
    """Closed-form (unit-trace) Choi matrix of the qubit propagator.

    In the computational product basis it is diagonal apart from the two
    corner entries:

        diag((1+l)/4, (1-l)/4, (1-l)/4, (1+l)/4),  corners l/2,

    with l = lambda(p, q). Its spectrum is 1/4 + (3/4) l once and
    1/4 - (1/4) l three times.
    """
    lam = lambda_ratio(alpha, q, p).value
    chi = np.zeros((4, 4), dtype=complex)
    chi[0, 0] = chi[3, 3] = (1 + lam) / 4.0
    chi[1, 1] = chi[2, 2] = (1 - lam) / 4.0
    chi[0, 3] = chi[3, 0] = lam / 2.0
    return chi


def choi_eigenvalues_closed(alpha: float, q: float, p: float) -> tuple:
    """Closed-form Choi spectrum (Lambda_I, Lambda_X, Lambda_Y, Lambda_Z).

    Lambda_I = 1/4 + (3/4) lambda and Lambda_i = 1/4 - (1/4) lambda; they
    always sum to 1 (trace preservation), and any negative entry flags an
    NCP propagator.
    """
    lam = lambda_ratio(alpha, q, p).value
    top = 0.25 + 0.75 * lam
    rest = 0.25 - 0.25 * lam
    return (top, rest, rest, rest)


def qudit_choi_eigenvalues(alpha: float, q: float, p: float, levels: int) -> tuple:
    """Choi spectrum of the N-level propagator as (top, rest).

    ``top`` = l + (1 - l)/N^2 has multiplicity 1 and ``rest`` = (1 - l)/N^2
    has multiplicity N^2 - 1, with l the shared transfer eigenvalue.
    """
    lam = qudit_transfer_ratio(alpha, q, p, levels)
    n2 = levels * levels
    return (lam + (1 - lam) / n2, (1 - lam) / n2)


def crossover_point(alpha: float, levels: int = 2) -> float | None:
    """Singular parameter value of the N-level family (the smaller root).

    Solves ((N^2-1)/N^2) alpha p^2 - (1 + alpha) p + 1 = 0, i.e. k(p) = 1,
    using the cancellation-free form 2 / ((1 + alpha) + sqrt(disc)). At this
    point the one-step map loses invertibility, the propagator eigenvalues
    cross, and the decay rate diverges.

    Returns ``None`` for alpha = 0: the root degenerates to the boundary
    p = 1 (and the companion root escapes to infinity), so the family has
    no interior singularity.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return None
    c = (levels * levels - 1) / (levels * levels)
    disc = (1 + alpha) ** 2 - 4 * c * alpha
    return 2.0 / ((1 + alpha) + math.sqrt(disc))


def ncp_witness(choi: ChoiMatrix) -> NcpWitness:
    """Trace-norm witness: ||chi||_1 = 1 for a CP map and > 1 otherwise."""
    norm = trace_norm(choi.matrix)
    return NcpWitness(norm, norm > 1.0 + 1e-10)


def multiqubit_choi_trace_norm(alpha: float, q: float, p: float, qubits: int) -> float:
    """Choi trace norm of the n-qubit propagator.

    The n-qubit Choi matrix is, up to a subsystem permutation, the n-fold
    Kronecker power of the single-qubit one, so its spectrum consists of
    products of single-qubit Choi eigenvalues and the trace norm is the
    n-th power of the single-qubit trace norm. The single-qubit spectrum is
    computed through the full superoperator/Choi pipeline.
    """
    n = int(qubits)
    if n < 1:
        raise ValueError("qubits must be >= 1")
    base = trace_norm(intermediate_choi(alpha, q, p).matrix)
    return float(base**n)


def qudit_choi_trace_norm(alpha: float, q: float, p: float, levels: int) -> float:
    """Choi trace norm of the N-level propagator via the full pipeline."""
    return trace_norm(intermediate_choi(alpha, q, p, levels=levels).matrix)


def g_function(alpha: float, q: float, qubits: int = 1) -> float:
    """Right derivative of the Choi trace norm at a vanishing step.

    g(q, alpha) = lim_{eps -> 0+} (||chi(alpha, q, q + eps)||_1 - 1) / eps,
    evaluated by a one-sided finite difference with eps = 1e-6 refined by
    Richardson extrapolation at eps/2. Negative values and values below the
    1e-8 noise floor of the difference quotient are clamped to 0. The limit
    is zero wherever the propagator stays CP and positive where CP
    divisibility breaks.

    Raises:
        SingularMapError: when q sits at the singular parameter value.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q must lie in [0, 1), got {q}")
    if qubits not in (1, 2):
        raise ValueError("the derivative witness is provided for 1 or 2 qubits")
    eps = 1e-6
    if q + eps > 1.0:
        raise ValueError(f"q = {q} leaves no room for the finite-difference step {eps}")

    def quotient(step: float) -> float:
        norm = multiqubit_choi_trace_norm(alpha, q, q + step, qubits)
        return (norm - 1.0) / step

    refined = 2.0 * quotient(eps / 2.0) - quotient(eps)
    return refined if refined > 1e-8 else 0.0


def bell_states() -> tuple:
    """The four Bell vectors in the fixed order (Phi+, Phi-, Psi+, Psi-)."""
    rt = 1.0 / math.sqrt(2.0)
    phi_plus = np.array([rt, 0, 0, rt], dtype=complex)
    phi_minus = np.array([rt, 0, 0, -rt], dtype=complex)
    psi_plus = np.array([0, rt, rt, 0], dtype=complex)
    psi_minus = np.array([0, rt, -rt, 0], dtype=complex)
    return (phi_plus, phi_minus, psi_plus, psi_minus)


def bell_expectations(choi: ChoiMatrix) -> np.ndarray:
    """Expectation values <b|chi|b> over the Bell basis (witness operators).

    For the qubit propagator the Phi+ expectation reproduces the Choi
    eigenvalue Lambda_I and the remaining three reproduce the degenerate
    Lambda_{X,Y,Z}.
    """
    if choi.dim != 2:
        raise ValueError("Bell-state expectations are defined for qubit Choi matrices")
    return np.array([float((b.conj() @ choi.matrix @ b).real) for b in bell_states()])


def pauli_transfer(superop: Superoperator) -> np.ndarray:
    """Real transfer matrix of a qubit superoperator in the Pauli basis.

    R_ij = (1/2) tr(sigma_i S(sigma_j)) over (I, X, Y, Z). Trace
    preservation forces the first row to (1, 0, 0, 0); for the depolarizing
    propagator the result is diag(1, lambda, lambda, lambda).
    """
    if superop.dim != 2:
        raise ValueError("the Pauli transfer matrix is defined for qubit superoperators")
    basis = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)
    out = np.empty((4, 4))
    for j, sig_j in enumerate(basis):
        image = superop.apply(sig_j)
        for i, sig_i in enumerate(basis):
            out[i, j] = 0.5 * float(np.trace(sig_i @ image).real)
    return out
