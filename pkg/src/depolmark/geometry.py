"""Geometric non-Markovianity diagnostics.

Three views of the same family:

* the affine Bloch map M with M_ij = tr(G_i Phi(G_j)) over the orthonormal
  qubit basis G = (I, X, Y, Z)/sqrt(2); for the depolarizing channel it is
  diag(1, lambda, lambda, lambda) with lambda(p) = (3/4) alpha p^2
  - alpha p - p + 1, so |det M| = |lambda|^3 measures the volume of
  reachable states;
* the N-level transfer matrix F built the same way from the basis
  {I/sqrt(N)} + generalized Gell-Mann operators (normalized to
  tr(G_m G_n) = 2 delta_mn) with an extra 1/N^2 prefactor; its trace norm
  shrinks monotonically for memoryless dynamics and turns upward past the
  singular parameter otherwise;
* the trajectory of the transfer eigenvalues (lambda_1, lambda_2,
  lambda_3) through the tetrahedron of completely positive unital Pauli
  maps, together with the log-derivative vector A(p) whose sign pattern
  decides CP divisibility point by point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate

from .channels import apply_channel, kappa, qubit_kraus, qudit_kraus
from .dynmaps import crossover_point
from .matcore import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, trace_norm
from .measures import MeasureValue

__all__ = [
    "AffineMap",
    "TrajectoryPoint",
    "bloch_basis",
    "bloch_contraction",
    "bloch_contraction_derivative",
    "affine_map_of",
    "volume_determinant",
    "volume_measure",
    "gell_mann_matrices",
    "f_matrix",
    "trajectory",
]

_QUAD_OPTS = dict(epsabs=1e-9, epsrel=1e-11, limit=200)

#: Transfer eigenvalues closer than this to zero make the log-derivative
#: vector undefined; such trajectory points are kept but marked singular.
_LAMBDA_FLOOR = 1e-12


@dataclass(frozen=True)
class AffineMap:
    """Real transfer matrix of a channel over a fixed Hermitian operator basis."""

    matrix: np.ndarray = field(repr=False)
    basis: tuple = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        object.__setattr__(self, "basis", tuple(self.basis))

    @property
    def trace_norm(self) -> float:
        return trace_norm(self.matrix)

    @property
    def block_trace_norm(self) -> float:
        """Trace norm of the lower block (the map on traceless operators).

        For a unital trace-preserving map the transfer matrix is block
        diagonal, 1 on the identity component and B on the rest; the volume
        rate of change is proportional to this block norm.
        """
        return trace_norm(self.matrix[1:, 1:])


@dataclass(frozen=True)
class TrajectoryPoint:
    """State of the parameter-space trajectory at one grid point.

    ``a_vector`` holds the log-derivative triple (lambda_i'/lambda_i) and is
    ``None`` where a transfer eigenvalue vanishes; such points keep their
    remaining data but cannot be classified as CP divisible (the propagator
    through them is undefined), so ``cp_divisible`` is False there.
    ``inequalities`` are the scalar products of the A vector with
    (-1, 1, 1), (1, -1, 1) and (1, 1, -1); CP divisibility requires all
    three to be nonpositive.
    """

    p: float
    lambdas: tuple
    abs_lambdas: tuple
    a_vector: tuple | None
    inequalities: tuple | None
    inside_tetrahedron: bool
    cp_divisible: bool


def bloch_basis() -> tuple:
    """Orthonormal qubit operator basis (I, X, Y, Z)/sqrt(2)."""
    rt = 1.0 / math.sqrt(2.0)
    return (rt * PAULI_I, rt * PAULI_X, rt * PAULI_Y, rt * PAULI_Z)


def bloch_contraction(alpha: float, p: float) -> float:
    """Shared Bloch contraction factor lambda(p) = 1 - k(p) of the qubit map."""
    return 1.0 - kappa(alpha, p, 2)


def bloch_contraction_derivative(alpha: float, p: float) -> float:
    """d lambda / dp = (3/2) alpha p - alpha - 1."""
    return 1.5 * alpha * p - alpha - 1.0


def affine_map_of(alpha: float, p: float) -> AffineMap:
    """Affine Bloch-vector map of the qubit channel, computed entrywise.

    Each entry is tr(G_i Phi(G_j)) with Phi applied through the Kraus
    machinery; for this family the result is diag(1, lambda, lambda,
    lambda).
    """
    basis = bloch_basis()
    kraus = qubit_kraus(alpha, p)
    images = [apply_channel(kraus, g, validate=False) for g in basis]
    m = np.empty((4, 4))
    for i, g_i in enumerate(basis):
        for j in range(4):
            m[i, j] = float(np.trace(g_i @ images[j]).real)
    return AffineMap(m, basis)


def volume_determinant(alpha: float, p: float) -> float:
    """Volume |det M| of the set of reachable Bloch vectors (= |lambda|^3).

    Shrinks monotonically for the memoryless channel and regrows past the
    singular parameter value when alpha > 0.
    """
    return float(abs(np.linalg.det(affine_map_of(alpha, p).matrix)))


def volume_measure(alpha: float) -> MeasureValue:
    """Volume-revival measure: integral of max(0, d||M||_1/dp) over [0, 1].

    ||M||_1 = 1 + 3 |lambda| grows only past the singular parameter value,
    so the integral equals 3 (|lambda(1)| - 0) = (3/4) alpha. The alpha = 0
    channel yields exactly 0.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return MeasureValue("Volume", alpha, 2, 0.0)

    def integrand(p: float) -> float:
        lam = bloch_contraction(alpha, p)
        if lam == 0.0:
            return 0.0
        return max(0.0, 3.0 * math.copysign(1.0, lam) * bloch_contraction_derivative(alpha, p))

    split = crossover_point(alpha, 2)
    head, _ = integrate.quad(integrand, 0.0, split, **_QUAD_OPTS)
    tail, _ = integrate.quad(integrand, split, 1.0, **_QUAD_OPTS)
    return MeasureValue("Volume", alpha, 2, float(head + tail))


def gell_mann_matrices(levels: int) -> list:
    """Generalized Gell-Mann matrices of dimension N, tr(G_m G_n) = 2 delta_mn.

    Ordered as symmetric and antisymmetric pairs for j < k (lexicographic),
    followed by the N - 1 diagonal operators. N = 2 reproduces the Pauli
    matrices (X, Y, then Z).
    """
    n = int(levels)
    if n < 2:
        raise ValueError("levels must be >= 2")
    result = []
    for j in range(n):
        for k in range(j + 1, n):
            sym = np.zeros((n, n), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            result.append(sym)
            asym = np.zeros((n, n), dtype=complex)
            asym[j, k] = -1j
            asym[k, j] = 1j
            result.append(asym)
    for l in range(1, n):
        diag = np.zeros(n, dtype=complex)
        diag[:l] = 1.0
        diag[l] = -l
        result.append(math.sqrt(2.0 / (l * (l + 1))) * np.diag(diag))
    return result


def f_matrix(alpha: float, p: float, levels: int) -> AffineMap:
    """Scaled N-level transfer matrix F_kl = (1/N^2) tr(G_k Phi(G_l)).

    The basis is I/sqrt(N) followed by the Gell-Mann operators in their
    native tr = 2 delta normalization, so the memoryless channel at p = 0
    gives (1/N^2) diag(1, 2, ..., 2). Supported for N in {3, 4}; the qubit
    case is covered by :func:`affine_map_of` in its orthonormal convention.
    """
    n = int(levels)
    if n not in (3, 4):
        raise ValueError(f"the scaled transfer matrix is provided for levels in (3, 4), got {n}")
    basis = [np.eye(n, dtype=complex) / math.sqrt(n)] + gell_mann_matrices(n)
    kraus = qudit_kraus(alpha, p, n)
    images = [apply_channel(kraus, g, validate=False) for g in basis]
    size = n * n
    m = np.empty((size, size))
    for i, g_i in enumerate(basis):
        for j in range(size):
            m[i, j] = float(np.trace(g_i @ images[j]).real) / size
    return AffineMap(m, basis)


def trajectory(alpha: float, p_grid: Sequence[float]) -> list:
    """Trace the transfer-eigenvalue trajectory over a parameter grid.

    For every grid point the shared eigenvalue lambda(p), its absolute
    value, the analytic log-derivative vector A(p) = lambda'/lambda
    (repeated on all three axes), the three divisibility inequalities and
    the tetrahedron membership test 1 +- lambda_3 >= |lambda_1 +- lambda_2|
    are evaluated. Grid points with lambda = 0 are retained with
    ``a_vector=None``.
    """
    points = []
    for p in p_grid:
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"grid values must lie in [0, 1], got {p}")
        lam = bloch_contraction(alpha, p)
        lambdas = (lam, lam, lam)
        abs_lambdas = (abs(lam), abs(lam), abs(lam))
        inside = (1.0 + lambdas[2] >= abs(lambdas[0] + lambdas[1]) - 1e-12) and (
            1.0 - lambdas[2] >= abs(lambdas[0] - lambdas[1]) - 1e-12
        )
        if abs(lam) <= _LAMBDA_FLOOR:
            points.append(TrajectoryPoint(p, lambdas, abs_lambdas, None, None, inside, False))
            continue
        a = bloch_contraction_derivative(alpha, p) / lam
        a_vector = (a, a, a)
        inequalities = (
            -a_vector[0] + a_vector[1] + a_vector[2],
            a_vector[0] - a_vector[1] + a_vector[2],
            a_vector[0] + a_vector[1] - a_vector[2],
        )
        divisible = all(v <= 1e-12 for v in inequalities)
        points.append(
            TrajectoryPoint(p, lambdas, abs_lambdas, a_vector, inequalities, inside, divisible)
        )
    return points
