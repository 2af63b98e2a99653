"""Security quantities of the phase-keyed scheme, closed form and oracle.

The central objects are the trace distances an adversary can exploit:

* unencrypted: D = sqrt(1 - e^{-4 w |alpha|^2}) between two codewords
  that differ in w positions;
* encrypted: D = sum_k q_k sqrt(1 - A_k^2) over the residue-class blocks
  of the key-averaged state, with block weight q_k and block overlap A_k;
* their ratio R, which measures how much the encryption suppresses
  distinguishability.

Closed forms evaluate in O(E + d) time via total-photon-number residue
sums.  Every closed form has a brute-force companion here (dense or
support-basis density-matrix computation, tuple enumeration, numeric
pretty-good measurement) so the formulas are never trusted on their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import BitString, codeword_fock
from .fock import (
    coherent_fock,
    density_from_fock,
    occupation_array,
    total_photon_numbers,
    truncation_bound,
)

# Residue sums and limit series are truncated once the Poisson tail drops
# below this; the discarded mass sits far below every reported tolerance.
SERIES_TAIL_EPS = 1e-14

# Relative eigenvalue threshold for the pseudoinverse square root.
PGM_PINV_CUT = 1e-12


@dataclass(frozen=True)
class SecurityParams:
    """Scenario parameters: m modes, d keys, amplitude |alpha|, weight w.

    w is the Hamming weight of u XOR v for the codeword pair under attack.
    """

    m: int
    d: int
    abs_alpha: float
    w: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if self.abs_alpha < 0:
            raise ValueError("|alpha| must be nonnegative")
        if not 0 <= self.w <= self.m:
            raise ValueError("w must satisfy 0 <= w <= m")

    @property
    def E(self) -> float:
        return self.m * self.abs_alpha ** 2


@dataclass(frozen=True)
class PgmResult:
    a_plus: float
    a_minus: float
    p_same: float
    p_diff: float
    i_single: float
    i_total: float


@dataclass(frozen=True)
class SuppressionRatio:
    ratio: float
    encrypted: float
    unencrypted: float


def rank2_eigenvalues(C: float, cos_theta: float):
    """Nonzero eigenvalues of |x><x| - C|x><y| - C|y><x| + |y><y|.

    For unit vectors with real overlap <x|y> = cos_theta the two nonzero
    eigenvalues are (1 +- C)(1 -+ cos_theta).
    """
    if abs(cos_theta) > 1:
        raise ValueError("cos_theta must lie in [-1, 1]")
    return (1 + C) * (1 - cos_theta), (1 - C) * (1 + cos_theta)


def _poisson_terms(E: float, t_max: int) -> np.ndarray:
    terms = np.empty(t_max + 1)
    terms[0] = math.exp(-E)
    for t in range(t_max):
        terms[t + 1] = terms[t] * E / (t + 1)
    return terms


def _signed_terms(E: float, c: float, t_max: int) -> np.ndarray:
    # e^{-E} c^t / t!, signed when c < 0
    terms = np.empty(t_max + 1)
    terms[0] = math.exp(-E)
    for t in range(t_max):
        terms[t + 1] = terms[t] * c / (t + 1)
    return terms


def _class_sums(params: SecurityParams):
    """Residue-class sums (q_k, signed_k) for k = 0..d-1.

    Grouping the occupation tuples of a class by their total photon number
    t turns both the weight and the signed overlap sum into single Poisson
    series: q_k collects e^{-E} E^t / t! over t = k (mod d), the signed sum
    collects e^{-E} c^t / t! with c = (m - 2w)|alpha|^2.
    """
    E = params.E
    d = params.d
    q = np.zeros(d)
    s = np.zeros(d)
    if E == 0.0:
        q[0] = 1.0
        s[0] = 1.0
        return q, s
    c = (params.m - 2 * params.w) * params.abs_alpha ** 2
    t_max = truncation_bound(E, SERIES_TAIL_EPS)
    pois = _poisson_terms(E, t_max)
    signed = _signed_terms(E, c, t_max)
    for t in range(t_max + 1):
        q[t % d] += pois[t]
        s[t % d] += signed[t]
    return q, s


def qk_limit(params: SecurityParams, k: int) -> float:
    """Block weight for an unbounded key space: the Poisson(E) mass at k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    E = params.E
    if E == 0.0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(E) - E - math.lgamma(k + 1))


def ak_limit(params: SecurityParams, k: int) -> float:
    """Block overlap for an unbounded key space: ((m - 2w)/m)^k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    return ((params.m - 2 * params.w) / params.m) ** k


def qk_ak_finite(params: SecurityParams, k: int):
    """Finite-d block weight and overlap (q_k, A_k).

    A block whose weight underflows is reported absent as (0.0, 1.0); the
    conventional A keeps sqrt(1 - A^2) at zero for absent blocks.
    """
    if not 0 <= k < params.d:
        raise ValueError("k must satisfy 0 <= k < d")
    q, s = _class_sums(params)
    if q[k] < 1e-300:
        return 0.0, 1.0
    a = s[k] / q[k]
    return float(q[k]), float(min(1.0, max(-1.0, a)))


def qk_ak_enumeration(params: SecurityParams, n_max: int):
    """Brute-force (q, A) arrays by direct summation over occupation tuples.

    Slow companion to qk_ak_finite: enumerates every tuple z up to the
    cutoff, splits |b_z|^2 by total photon number mod d, and applies the
    sign pattern of a weight-w difference string.  Intended for m <= 3.
    """
    m, d = params.m, params.d
    psi = coherent_fock([params.abs_alpha] * m, n_max)
    weight2 = np.abs(psi.amps) ** 2
    occ = occupation_array(n_max, m)
    x = np.array([1] * params.w + [0] * (m - params.w), dtype=np.int64)
    signs = np.where((occ @ x) % 2 == 1, -1.0, 1.0)
    residues = total_photon_numbers(n_max, m) % d
    q = np.zeros(d)
    s = np.zeros(d)
    np.add.at(q, residues, weight2)
    np.add.at(s, residues, signs * weight2)
    a = np.ones(d)
    present = q >= 1e-300
    a[present] = s[present] / q[present]
    q[~present] = 0.0
    return q, a


def encrypted_trace_distance(params: SecurityParams) -> float:
    """Trace distance between key-averaged codewords differing in w bits.

    Sums q_k sqrt(1 - A_k^2) over the residue-class blocks at finite d.
    """
    q, s = _class_sums(params)
    total = 0.0
    for k in range(params.d):
        if q[k] < 1e-300:
            continue
        a = min(1.0, max(-1.0, s[k] / q[k]))
        total += q[k] * math.sqrt(max(0.0, 1.0 - a * a))
    return total


def encrypted_trace_distance_limit(params: SecurityParams) -> float:
    """The d -> infinity value: sum_{k>=1} e^{-E} E^k / k! sqrt(1 - r^{2k}).

    r = (m - 2w)/m; the k = 0 block never contributes since A_0 = 1.
    """
    E = params.E
    if E == 0.0 or params.w == 0:
        return 0.0
    r2 = ((params.m - 2 * params.w) / params.m) ** 2
    t_max = truncation_bound(E, SERIES_TAIL_EPS)
    pois = _poisson_terms(E, t_max)
    r2k = 1.0
    total = 0.0
    for k in range(1, t_max + 1):
        r2k *= r2
        total += pois[k] * math.sqrt(max(0.0, 1.0 - r2k))
    return total


def unencrypted_trace_distance(w: int, abs_alpha: float) -> float:
    """sqrt(1 - e^{-4 w |alpha|^2}), the plain codeword-pair distance."""
    if w < 0:
        raise ValueError("w must be nonnegative")
    return math.sqrt(-math.expm1(-4.0 * w * abs_alpha ** 2))


def suppression_ratio(params: SecurityParams) -> SuppressionRatio:
    """R = encrypted over unencrypted distance, with both parts reported.

    Undefined when the denominator vanishes (w = 0 or alpha = 0).
    """
    if params.w == 0 or params.abs_alpha == 0.0:
        raise ValueError("suppression ratio is undefined at w = 0 or alpha = 0")
    enc = encrypted_trace_distance(params)
    unenc = unencrypted_trace_distance(params.w, params.abs_alpha)
    return SuppressionRatio(ratio=enc / unenc, encrypted=enc, unencrypted=unenc)


def encrypted_distance_oracle(u: BitString, v: BitString, alpha: float, d: int,
                              n_max: int) -> float:
    """Brute-force trace distance between the key-averaged states of u and v.

    The difference of the two channel outputs is supported on the span of
    the 2d rotated codewords, so the Hermitian difference is eigensolved
    inside an orthonormal basis of that span.  This is exact for the
    truncated operators while never materializing the dense matrix, which
    keeps three-mode oracle runs cheap.
    """
    if len(u) != len(v):
        raise ValueError("bit strings must have equal length")
    m = len(u)
    t = total_photon_numbers(n_max, m)
    psi_u = codeword_fock(u, alpha, n_max).amps
    psi_v = codeword_fock(v, alpha, n_max).amps
    cols = np.empty((len(psi_u), 2 * d), dtype=complex)
    for k in range(d):
        phase = np.exp(-2j * math.pi * k / d * t)
        cols[:, 2 * k] = phase * psi_u
        cols[:, 2 * k + 1] = phase * psi_v
    basis, _ = np.linalg.qr(cols)
    proj = basis.conj().T @ cols
    delta = np.zeros((proj.shape[0], proj.shape[0]), dtype=complex)
    for k in range(d):
        gu = proj[:, 2 * k]
        gv = proj[:, 2 * k + 1]
        delta += np.outer(gu, gu.conj()) - np.outer(gv, gv.conj())
    delta /= d
    delta = 0.5 * (delta + delta.conj().T)
    lam = np.linalg.eigvalsh(delta)
    return 0.5 * float(np.abs(lam).sum())


def _binary_mutual_information(p: np.ndarray) -> float:
    """I(X;Y) in bits for uniform X over {0,1} and conditional matrix p[j, l]."""
    marg = 0.5 * p.sum(axis=1)
    total = 0.0
    for ell in range(2):
        for j in range(2):
            joint = 0.5 * p[j, ell]
            if joint > 0.0 and marg[j] > 0.0:
                total += joint * math.log2(p[j, ell] / marg[j])
    return total


def pgm_closed_form(abs_alpha: float, modes: int = 1) -> PgmResult:
    """Pretty-good-measurement statistics for the pair |alpha>, |-alpha>.

    a_pm = (1 pm e^{-2|alpha|^2})/2 are the eigenvalues of the equal
    mixture; the PGM identifies the state with probability
    (sqrt(a_+) + sqrt(a_-))^2 / 2, and the per-mode information is
    u^2 log2 u + v^2 log2 v with u, v = sqrt(a_+) pm sqrt(a_-).
    """
    B = math.exp(-2.0 * abs_alpha ** 2)
    a_plus = 0.5 * (1.0 + B)
    a_minus = 0.5 * (1.0 - B)
    u = math.sqrt(a_plus) + math.sqrt(a_minus)
    v = math.sqrt(a_plus) - math.sqrt(a_minus)
    p_same = 0.5 * u * u
    p_diff = 0.5 * v * v
    i_single = u * u * math.log2(u)
    if v > 0.0:
        i_single += v * v * math.log2(v)
    return PgmResult(a_plus=a_plus, a_minus=a_minus, p_same=p_same, p_diff=p_diff,
                     i_single=i_single, i_total=modes * i_single)


def pgm_numeric_oracle(abs_alpha: float, n_max: int) -> PgmResult:
    """Pretty-good measurement evaluated directly on truncated density matrices.

    Builds the equal mixture of |alpha><alpha| and |-alpha><-alpha|, forms
    the PGM elements through a pseudoinverse square root (relative cut
    1e-12), and checks they resolve the identity on the mixture's support
    to 1e-9 before reporting probabilities and mutual information.
    """
    rhos = [density_from_fock(coherent_fock([s * abs_alpha], n_max)).entries
            for s in (1.0, -1.0)]
    mix = 0.5 * (rhos[0] + rhos[1])
    lam, vec = np.linalg.eigh(mix)
    keep = lam > PGM_PINV_CUT * lam.max()
    inv_sqrt = (vec[:, keep] * (1.0 / np.sqrt(lam[keep]))) @ vec[:, keep].conj().T
    elements = [inv_sqrt @ (0.5 * rho) @ inv_sqrt for rho in rhos]
    support = vec[:, keep] @ vec[:, keep].conj().T
    defect = np.abs(elements[0] + elements[1] - support).max()
    if defect > 1e-9:
        raise ValueError(
            f"PGM elements miss the support projector by {defect:.3e}; "
            "pseudoinverse rank defect beyond tolerance")
    p = np.empty((2, 2))
    for j in range(2):
        for ell in range(2):
            p[j, ell] = float(np.trace(elements[j] @ rhos[ell]).real)
    i_single = _binary_mutual_information(p)
    a_sorted = np.sort(lam)
    return PgmResult(a_plus=float(a_sorted[-1]), a_minus=float(a_sorted[-2]),
                     p_same=float(p[0, 0]), p_diff=float(p[1, 0]),
                     i_single=i_single, i_total=i_single)
