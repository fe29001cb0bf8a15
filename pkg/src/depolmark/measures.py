"""Scalar non-Markovianity measures and witnesses.

Built on the survival factor G(p) = 1 - k(p) of the depolarizing family:

* canonical decay rate        gamma(p) = -G'(p)/G(p), divergent at the
  singular parameter value where G vanishes;
* normalized rate             gamma~(p) = -gamma/(1 - gamma) = G'/(G + G'),
  finite across the singularity;
* rate measure                integral of gamma~ over the negative-rate
  window [p_-, 1], with p_- the singular parameter value;
* distinguishability measure  integral of the positive part of the trace
  distance derivative for the antipodal |+>/|-> pair, which evaluates to
  alpha/4;
* memory witness              X = |s| + ||T||_1 from the Bloch-type
  decomposition of the propagator Choi matrix, equal to 3 |lambda(p, q)|.

All quadratures are adaptive with absolute tolerance 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .channels import apply_channel, kappa, qubit_kraus
from .dynmaps import crossover_point, intermediate_choi, lambda_ratio
from .matcore import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SingularRateError,
    kron,
    trace_norm,
)

__all__ = [
    "RateSample",
    "MeasureValue",
    "rate_sample",
    "decay_rate",
    "decay_rate_normalized",
    "hcla_measure",
    "hcla_closed_form",
    "qutrit_hcla_log_form",
    "trace_distance",
    "plus_minus_states",
    "plus_minus_trace_distance",
    "plus_minus_distance_derivative",
    "blp_measure",
    "blp_random_pair_search",
    "memory_witness_X",
    "memory_witness_closed",
]

_MEASURE_NAMES = frozenset({"HCLA", "HCLA_closed", "BLP", "Volume", "Memory"})

_QUAD_OPTS = dict(epsabs=1e-9, epsrel=1e-11, limit=200)


@dataclass(frozen=True)
class RateSample:
    """Decay rate and its normalized form at one parameter value."""

    p: float
    gamma: float
    gamma_normalized: float


@dataclass(frozen=True)
class MeasureValue:
    """One scalar non-Markovianity measure evaluated at fixed parameters."""

    name: str
    alpha: float
    levels: int
    value: float

    def __post_init__(self) -> None:
        if self.name not in _MEASURE_NAMES:
            raise ValueError(f"unknown measure name {self.name!r}; expected one of {sorted(_MEASURE_NAMES)}")


def _survival(alpha: float, p: float, levels: int) -> float:
    return 1.0 - kappa(alpha, p, levels)


def _survival_derivative(alpha: float, p: float, levels: int) -> float:
    c = (levels * levels - 1) / (levels * levels)
    return -(1.0 + alpha) + 2.0 * c * alpha * p


def decay_rate(alpha: float, p: float, levels: int = 2) -> float:
    """Canonical decay rate gamma(p) = -G'(p)/G(p) with G = 1 - k(p).

    For the qubit this is (4 + (4 - 6 p) alpha) / (4 + 3 alpha p^2
    - 4 p (1 + alpha)); at alpha = 0 it reduces to 1/(1 - p). The rate is
    positive while the channel keeps contracting and flips sign across the
    singular parameter value.

    Raises:
        SingularRateError: where G vanishes and the rate diverges.
    """
    g = _survival(alpha, p, levels)
    if abs(g) <= 1e-12:
        raise SingularRateError(f"decay rate diverges at p = {p} (survival factor vanished)")
    return -_survival_derivative(alpha, p, levels) / g


def decay_rate_normalized(alpha: float, p: float, levels: int = 2) -> float:
    """Normalized rate gamma~ = -gamma/(1 - gamma), simplified to G'/(G + G').

    The algebraic simplification cancels the pole of gamma, so the value is
    finite across the singular parameter (where it equals exactly 1). For
    the qubit it reads (4 + 4 alpha - 6 alpha p) / (4 p + 4 alpha
    - 2 alpha p - 3 alpha p^2), and 1/p at alpha = 0.

    Raises:
        ValueError: if the simplified denominator vanishes; for alpha in
            (0, 1] this cannot happen inside [0, 1].
    """
    num = _survival_derivative(alpha, p, levels)
    den = _survival(alpha, p, levels) + num
    if abs(den) <= 1e-12:
        raise ValueError(f"normalized rate undefined at p = {p}")
    return num / den


def rate_sample(alpha: float, p: float, levels: int = 2) -> RateSample:
    """Both rate views at one parameter value, for dataset assembly.

    Raises:
        SingularRateError: where the raw rate diverges.
    """
    return RateSample(p, decay_rate(alpha, p, levels), decay_rate_normalized(alpha, p, levels))


def hcla_measure(alpha: float, levels: int = 2) -> MeasureValue:
    """Negative-decay-rate measure: integral of gamma~ over [p_-, 1].

    ``p_-`` is the singular parameter value of the family
    (:func:`depolmark.dynmaps.crossover_point`); beyond it the canonical
    rate is negative and the normalized rate is positive. Evaluated by
    adaptive quadrature; alpha = 0 has no negative-rate window and yields
    exactly 0.
    """
    if alpha == 0.0:
        return MeasureValue("HCLA", alpha, levels, 0.0)
    lower = crossover_point(alpha, levels)
    value, _ = integrate.quad(lambda p: decay_rate_normalized(alpha, p, levels), lower, 1.0, **_QUAD_OPTS)
    return MeasureValue("HCLA", alpha, levels, float(value))


def hcla_closed_form(alpha: float) -> MeasureValue:
    """Antiderivative evaluation of the qubit normalized-rate integral.

    With den(p) = 4 p + 4 alpha - 2 alpha p - 3 alpha p^2 and
    s = sqrt(4 - 4 alpha + 13 alpha^2), the antiderivative is

        F(p) = ln|den(p)| + (6 alpha / s) artanh((3 alpha p + alpha - 2)/s)

    and the measure is F(1) - F(p_-). The logarithm is taken of the
    absolute value; the branch constant cancels between the endpoints.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return MeasureValue("HCLA_closed", alpha, 2, 0.0)
    s = math.sqrt(4.0 - 4.0 * alpha + 13.0 * alpha * alpha)

    def antiderivative(p: float) -> float:
        den = 4.0 * p + 4.0 * alpha - 2.0 * alpha * p - 3.0 * alpha * p * p
        return math.log(abs(den)) + (6.0 * alpha / s) * math.atanh((3.0 * alpha * p + alpha - 2.0) / s)

    lower = crossover_point(alpha, 2)
    return MeasureValue("HCLA_closed", alpha, 2, antiderivative(1.0) - antiderivative(lower))


def qutrit_hcla_log_form(alpha: float) -> float:
    """Plain-logarithm reference value for the qutrit rate integral.

    Evaluates ln(p) + ln(9 + 9 alpha - 8 p alpha) between the qutrit
    singular parameter and 1. This expression is NOT an antiderivative of
    the qutrit normalized rate (its derivative has the denominator
    9 p + 9 alpha p - 8 alpha p^2 instead of 9 p + 9 alpha - 7 alpha p
    - 8 alpha p^2), so it deviates from ``hcla_measure(alpha, levels=3)``.
    It is provided so datasets can report both values side by side; the
    quadrature value is the authoritative one.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return 0.0
    lower = crossover_point(alpha, 3)

    def log_form(p: float) -> float:
        return math.log(p) + math.log(abs(9.0 + 9.0 * alpha - 8.0 * p * alpha))

    return log_form(1.0) - log_form(lower)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance (1/2) ||a - b||_1 between two density matrices.

    Lies in [0, 1] and reaches 1 exactly for states with orthogonal
    support.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"state dimensions differ: {a.shape} vs {b.shape}")
    return 0.5 * trace_norm(a - b)


def plus_minus_states() -> tuple:
    """The antipodal pair |+><+| and |-><-| used by the distinguishability measure."""
    plus = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    minus = 0.5 * np.array([[1, -1], [-1, 1]], dtype=complex)
    return plus, minus


def plus_minus_trace_distance(alpha: float, p: float) -> float:
    """Trace distance of the evolved |+>/|-> pair in closed form.

    D(p) = (1/4) |4 + 3 alpha p^2 - 4 p (alpha + 1)| = |1 - k(p)|: the pair
    stays antipodal along x and the distance is the magnitude of the Bloch
    contraction factor.
    """
    return abs(4.0 + 3.0 * alpha * p * p - 4.0 * p * (alpha + 1.0)) / 4.0


def plus_minus_distance_derivative(alpha: float, p: float) -> float:
    """dD/dp of :func:`plus_minus_trace_distance` (zero at the kink)."""
    g = _survival(alpha, p, 2)
    if g == 0.0:
        return 0.0
    return math.copysign(1.0, g) * _survival_derivative(alpha, p, 2)


def blp_measure(alpha: float) -> MeasureValue:
    """Distinguishability-revival measure for the antipodal |+>/|-> pair.

    Integrates max(0, dD/dp) over [0, 1] by adaptive quadrature, splitting
    at the singular parameter value where the derivative changes sign. The
    revival window is (p_-, 1], giving D(1) - D(p_-) = alpha/4. The
    alpha = 0 channel contracts monotonically and yields exactly 0.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return MeasureValue("BLP", alpha, 2, 0.0)
    split = crossover_point(alpha, 2)
    integrand = lambda p: max(0.0, plus_minus_distance_derivative(alpha, p))
    head, _ = integrate.quad(integrand, 0.0, split, **_QUAD_OPTS)
    tail, _ = integrate.quad(integrand, split, 1.0, **_QUAD_OPTS)
    return MeasureValue("BLP", alpha, 2, float(head + tail))


def blp_random_pair_search(
    alpha: float, pairs: int = 200, grid_points: int = 201, seed: int = 7
) -> float:
    """Largest distinguishability revival over random antipodal Bloch pairs.

    Evidence (not proof) that the fixed |+>/|-> pair of
    :func:`blp_measure` is optimal: each sampled pair is evolved through
    the Kraus machinery on a p grid and the positive trace-distance
    increments are summed. By isotropy of the channel every antipodal pure
    pair attains the same revival, so the maximum matches alpha/4 up to
    grid error.
    """
    rng = np.random.default_rng(seed)
    grid = np.linspace(0.0, 1.0, grid_points)
    kraus_sets = [qubit_kraus(alpha, p) for p in grid]
    best = 0.0
    for _ in range(pairs):
        vec = rng.normal(size=3)
        vec /= np.linalg.norm(vec)
        bloch = vec[0] * PAULI_X + vec[1] * PAULI_Y + vec[2] * PAULI_Z
        rho_a = 0.5 * (np.eye(2) + bloch)
        rho_b = 0.5 * (np.eye(2) - bloch)
        dist = [trace_distance(apply_channel(k, rho_a), apply_channel(k, rho_b)) for k in kraus_sets]
        revival = sum(max(0.0, b - a) for a, b in zip(dist, dist[1:]))
        best = max(best, revival)
    return best


def _choi_bloch_parts(alpha: float, q: float, p: float) -> tuple:
    """Local Bloch vector s and correlation matrix T of the propagator Choi."""
    chi = intermediate_choi(alpha, q, p).matrix
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    s = np.array([float(np.trace(chi @ kron(np.eye(2), sig)).real) for sig in paulis])
    t = np.empty((3, 3))
    for i, sig_i in enumerate(paulis):
        for j, sig_j in enumerate(paulis):
            t[i, j] = float(np.trace(chi @ kron(sig_i, sig_j)).real)
    return s, t


def memory_witness_X(alpha: float, q: float, p: float) -> float:
    """Quantum-memory witness X = |s| + ||T||_1 of the propagator Choi matrix.

    ``s`` collects tr(chi (I kron sigma_i)) and T the correlations
    tr(chi (sigma_i kron sigma_j)). Values above 1 certify quantum
    correlations in the Choi state; a nonmonotonic rise of X along p
    signals quantum information backflow. Equals 3 |lambda(p, q)| for this
    family, which is cross-checked internally.

    Raises:
        SingularMapError: when q sits at the singular parameter value.
    """
    s, t = _choi_bloch_parts(alpha, q, p)
    direct = float(np.linalg.norm(s) + trace_norm(t))
    closed = memory_witness_closed(alpha, q, p)
    if abs(direct - closed) > 1e-8:
        raise ArithmeticError(
            f"witness routes disagree: direct {direct!r} vs closed {closed!r} at "
            f"(alpha={alpha}, q={q}, p={p})"
        )
    return direct


def memory_witness_closed(alpha: float, q: float, p: float) -> float:
    """Closed form 3 |lambda(p, q)| of the memory witness."""
    return 3.0 * abs(lambda_ratio(alpha, q, p).value)
