"""Homomorphically allowed operations: passive linear optics and nonlinear phases.

Interferometers act on coherent codewords as a plain m x m matrix product
on the mode amplitudes.  Nonlinear phase gates are diagonal in the number
basis, multiplying the coefficient of |z> by exp(-i t sum_terms g prod_k
z_k^{n_k}); they require the Fock representation.  Both families conserve
total photon number, which is why they commute with the encryption
rotation and can run on ciphertexts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, logm

from .encoding import AmplitudeVector
from .fock import FockVector, coherent_coefficients, occupation_array, total_photon_numbers

UNITARITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Interferometer:
    """Passive linear-optical element: an m x m unitary on mode amplitudes."""

    u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        object.__setattr__(self, "u", u)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("interferometer matrix must be square")
        defect = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
        if defect > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary: max |u^dag u - 1| = {defect:.3e}")

    @property
    def modes(self) -> int:
        return self.u.shape[0]


@dataclass(frozen=True, eq=False)
class NonlinearPhaseSpec:
    """Number-diagonal evolution exp(-i t sum g prod_k n_k^{e_k}), hbar = 1.

    terms maps an exponent tuple (e_1, ..., e_m) to its real coupling g.
    The single-mode Kerr interaction is terms={(1,): -K, (2,): K}; the
    cross-Kerr gate on two modes is terms={(1, 1): K}.
    """

    terms: dict
    t: float = 1.0

    def __post_init__(self):
        cleaned = {}
        for exps, g in dict(self.terms).items():
            exps = tuple(int(e) for e in exps)
            if any(e < 0 for e in exps):
                raise ValueError("exponents must be nonnegative")
            if not any(exps):
                raise ValueError("each term needs at least one nonzero exponent")
            if not math.isfinite(float(g)):
                raise ValueError("couplings must be finite")
            cleaned[exps] = float(g)
        if not cleaned:
            raise ValueError("at least one term is required")
        lengths = {len(e) for e in cleaned}
        if len(lengths) != 1:
            raise ValueError("all exponent tuples must cover the same mode count")
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "t", float(self.t))

    @property
    def modes(self) -> int:
        return len(next(iter(self.terms)))


def apply_interferometer(u: Interferometer, v: AmplitudeVector) -> AmplitudeVector:
    """Coherent amplitudes transform linearly: amps' = u amps."""
    if u.modes != v.modes:
        raise ValueError("interferometer size must match the mode count")
    return AmplitudeVector(u.u @ v.amps)


def haar_random_unitary(m: int, seed) -> Interferometer:
    """Haar-distributed unitary from a seeded complex Gaussian matrix.

    QR with the R diagonal phases folded back in gives the uniform
    distribution; the result is deterministic per seed.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return Interferometer(q * (diag / np.abs(diag)))


def nonlinear_phase_evolve(spec: NonlinearPhaseSpec, psi: FockVector) -> FockVector:
    """Apply the diagonal phases exp(-i t phi(z)) to every amplitude.

    Phases are accumulated in double precision; 0^0 counts as 1 so a term
    ignoring a mode leaves that mode's vacuum component untouched.
    """
    if spec.modes != psi.modes:
        raise ValueError("phase specification must match the mode count")
    occ = occupation_array(psi.cutoff, psi.modes).astype(float)
    phi = np.zeros(len(psi.amps))
    for exps, g in spec.terms.items():
        term = np.full(len(psi.amps), g)
        for mode, e in enumerate(exps):
            if e == 1:
                term *= occ[:, mode]
            elif e > 1:
                term *= occ[:, mode] ** e
        phi += term
    return FockVector(cutoff=psi.cutoff, modes=psi.modes,
                      amps=psi.amps * np.exp(-1j * spec.t * phi))


def kerr_cat_reference(alpha: complex, n_max: int) -> FockVector:
    """Coherent state evolved under the pure n^2 phase at the cat point.

    Applies exp(-i (pi/2) n^2) to |alpha>, i.e. the quadratic Kerr phase
    evaluated at K t = pi/2.
    """
    n = np.arange(n_max + 1)
    amps = coherent_coefficients(alpha, n_max) * np.exp(-0.5j * math.pi * n ** 2)
    return FockVector(cutoff=n_max, modes=1, amps=amps)


def cat_state_target(alpha: complex, n_max: int) -> FockVector:
    """The balanced superposition (e^{-i pi/4}|alpha> + e^{i pi/4}|-alpha>)/sqrt(2)."""
    plus = coherent_coefficients(alpha, n_max)
    minus = coherent_coefficients(-alpha, n_max)
    amps = (np.exp(-0.25j * math.pi) * plus + np.exp(0.25j * math.pi) * minus) / math.sqrt(2)
    return FockVector(cutoff=n_max, modes=1, amps=amps)


def beamsplitter_fock(theta_bs: float, psi: FockVector) -> FockVector:
    """Two-mode rotation exp(theta (a^dag b - a b^dag)) in the number basis.

    Total photon number is conserved, so the rotation factors into one
    orthogonal block per total n; blocks clipped by the per-mode cutoff
    are rotated within the kept occupations, which preserves the norm but
    is only approximate for amplitudes at the cutoff edge.
    """
    if psi.modes != 2:
        raise ValueError("beamsplitter acts on exactly two modes")
    n_max = psi.cutoff
    amps = psi.amps.copy()
    for n in range(2 * n_max + 1):
        j_lo = max(0, n - n_max)
        j_hi = min(n, n_max)
        js = np.arange(j_lo, j_hi + 1)
        if len(js) < 2:
            continue
        gen = np.zeros((len(js), len(js)))
        for p, j in enumerate(js[:-1]):
            # <j+1, n-j-1| a^dag b |j, n-j> = sqrt((j+1)(n-j))
            g = math.sqrt((j + 1) * (n - j))
            gen[p + 1, p] = g
            gen[p, p + 1] = -g
        block = expm(theta_bs * gen)
        idx = js * (n_max + 1) + (n - js)
        amps[idx] = block @ amps[idx]
    return FockVector(cutoff=n_max, modes=2, amps=amps)


def interferometer_fock(u: Interferometer, psi: FockVector) -> FockVector:
    """Apply a passive m-mode unitary in the number basis.

    Lifts u = exp(-iH) through the quadratic Hamiltonian sum_jk H_jk
    a_j^dag a_k and exponentiates it per fixed-total-photon block.  As in
    beamsplitter_fock, blocks clipped by the cutoff stay unitary but only
    approximate the untruncated action near the edge.
    """
    m = psi.modes
    if u.modes != m:
        raise ValueError("interferometer size must match the mode count")
    h = 1j * logm(u.u)
    h = 0.5 * (h + h.conj().T)
    n_max = psi.cutoff
    occ = occupation_array(n_max, m)
    totals = total_photon_numbers(n_max, m)
    place = (n_max + 1) ** np.arange(m - 1, -1, -1)
    amps = psi.amps.copy()
    for n in range(int(totals.max()) + 1):
        idx = np.nonzero(totals == n)[0]
        local = {int(g): p for p, g in enumerate(idx)}
        hb = np.zeros((len(idx), len(idx)), dtype=complex)
        for p, g in enumerate(idx):
            z = occ[g]
            hb[p, p] += float(z @ np.real(np.diag(h)))
            for j in range(m):
                for k in range(m):
                    if j == k or z[k] == 0 or z[j] + 1 > n_max:
                        continue
                    target = int(g + place[j] - place[k])
                    hb[local[target], p] += h[j, k] * math.sqrt(z[k] * (z[j] + 1))
        block = expm(-1j * hb)
        amps[idx] = block @ amps[idx]
    return FockVector(cutoff=n_max, modes=m, amps=amps)
