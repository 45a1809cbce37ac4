"""Numerical modular-tensor-category data for sl(2) at level k.

Quantum 6j-symbols in the unitary normalisation, the F/R/G recoupling
tensors built from them, and the generalised modular pair (S^(p), T^(p))
acting on the self-coupling spaces Hom(p (x) i, i).  Arithmetic is
double-precision complex; levels are capped (default 48) because the
quantum-factorial ratios lose accuracy beyond desk scale, and every pair
is certified on construction by the braid-group relations

    (S T)^3 = S^2,      S^4 = theta_p^{-1} * Id,

with residuals stored on the object and a loud error when they exceed
tolerance (a convention bug, never a user error).

Label conventions: integer labels 0..k; 6j-symbols take the spin (half
label) values.  All self-couplings here are multiplicity-free, so no
degeneracy indices appear.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import RelationViolationError
from .qseries import fraction_to_str
from .sl2data import central_charge, conformal_weight, fusion_coefficient, multiplier, rho_t, xi_set

__all__ = [
    "DEFAULT_TOLERANCE",
    "DEFAULT_MAX_LEVEL",
    "MtcLevelData",
    "GenModularPair",
    "quantum_integer",
    "quantum_factorial",
    "six_j",
    "f_r_g_matrices",
    "adjoint_members",
    "gen_modular_pair",
    "irreducibility_probe",
    "compare_with_analytic",
    "s_k_report",
    "verlinde_fusion",
]

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_LEVEL = 48


def _e(x) -> complex:
    """e(x) = exp(2 pi i x)."""
    return cmath.exp(2j * cmath.pi * float(x))


def _check_level(k: int, max_level: int = DEFAULT_MAX_LEVEL) -> None:
    if k < 0:
        raise ValueError(f"level must be non-negative, got {k}")
    if k > max_level:
        raise ValueError(
            f"level {k} exceeds the precision guard {max_level}; "
            "raise max_level explicitly if you accept the trig error"
        )


def quantum_integer(k: int, n: int) -> float:
    """[n] = sin(pi n/(k+2)) / sin(pi/(k+2))."""
    return math.sin(math.pi * n / (k + 2)) / math.sin(math.pi / (k + 2))


def quantum_factorial(k: int, n: int, max_level: int = DEFAULT_MAX_LEVEL) -> float:
    """[n]! = prod_{m=1}^n [m], defined for 0 <= n <= k+1 ([k+2] = 0, so
    larger factorials are refused rather than silently zero)."""
    _check_level(k, max_level)
    if n < 0 or n > k + 1:
        raise ValueError(f"quantum factorial needs 0 <= n <= k+1 = {k + 1}, got {n}")
    out = 1.0
    for m in range(2, n + 1):
        out *= quantum_integer(k, m)
    return out


def _as_twice(x) -> int:
    """A half-integer as its doubled integer value."""
    d = Fraction(x) * 2
    if d.denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return int(d)


def _triad_ok_2(k: int, a2: int, b2: int, c2: int) -> bool:
    """Admissibility of a spin triad in doubled labels: triangle
    inequalities, integral sum, and sum <= k."""
    return (
        (a2 + b2 + c2) % 2 == 0
        and abs(a2 - b2) <= c2 <= a2 + b2
        and a2 + b2 + c2 <= 2 * k
    )


class _QNumbers:
    """Per-level tables of quantum integers and factorials, indexed by
    doubled arguments where half-integer values never occur."""

    def __init__(self, k: int):
        self.k = k
        self.qint = [quantum_integer(k, n) for n in range(k + 3)]
        fact = [1.0] * (k + 2)
        for n in range(2, k + 2):
            fact[n] = fact[n - 1] * self.qint[n]
        self.qfact = fact

    def fact2(self, n2: int) -> float:
        """[n]! with the argument given doubled (must be even, 0 <= n <= k+1)."""
        if n2 % 2 != 0:
            raise ValueError("quantum factorial of a genuine half-integer")
        n = n2 // 2
        if n < 0 or n > self.k + 1:
            raise ValueError(f"quantum factorial needs 0 <= n <= {self.k + 1}, got {n}")
        return self.qfact[n]


@lru_cache(maxsize=None)
def _qnumbers(k: int) -> _QNumbers:
    return _QNumbers(k)


def _delta2(q: _QNumbers, a2: int, b2: int, c2: int) -> float:
    return math.sqrt(
        q.fact2(-a2 + b2 + c2)
        * q.fact2(a2 - b2 + c2)
        * q.fact2(a2 + b2 - c2)
        / q.fact2(a2 + b2 + c2 + 2)
    )


def _six_j_2(k: int, a2: int, b2: int, e2: int, d2: int, c2: int, f2: int) -> float:
    """Unitary quantum 6j-symbol {a b e; d c f} in doubled labels.

    Summation runs z from the largest triad sum to the smallest of the
    quadrilateral sums and k ([k+2] = 0 kills anything beyond k).
    """
    q = _qnumbers(k)
    for triad in ((a2, b2, e2), (a2, c2, f2), (c2, e2, d2), (d2, b2, f2)):
        if not _triad_ok_2(k, *triad):
            raise ValueError(f"inadmissible spin triad {tuple(x / 2 for x in triad)} at level {k}")
    phase = (-1.0) ** ((a2 + b2 - c2 - d2 - 2 * e2) // 2)
    pref = (
        phase
        * math.sqrt(q.qint[e2 + 1] * q.qint[f2 + 1])
        * _delta2(q, a2, b2, e2)
        * _delta2(q, a2, c2, f2)
        * _delta2(q, c2, e2, d2)
        * _delta2(q, d2, b2, f2)
    )
    triad_sums = (a2 + b2 + e2, a2 + c2 + f2, b2 + d2 + f2, c2 + d2 + e2)
    quad_sums = (a2 + b2 + c2 + d2, a2 + d2 + e2 + f2, b2 + c2 + e2 + f2)
    z_lo2 = max(triad_sums)
    z_hi2 = min(min(quad_sums), 2 * k)
    total = 0.0
    for z2 in range(z_lo2, z_hi2 + 2, 2):
        term = ((-1.0) ** (z2 // 2)) * q.fact2(z2 + 2)
        denom = 1.0
        for t in triad_sums:
            denom *= q.fact2(z2 - t)
        for s in quad_sums:
            denom *= q.fact2(s - z2)
        total += term / denom
    return pref * total


def six_j(k: int, a, b, e, d, c, f, max_level: int = DEFAULT_MAX_LEVEL) -> float:
    """Quantum 6j-symbol {a b e; d c f} for half-integer spins at level k."""
    _check_level(k, max_level)
    return _six_j_2(k, *(_as_twice(x) for x in (a, b, e, d, c, f)))


@dataclass
class MtcLevelData:
    """Immutable-by-convention bundle of the level-k category data.

    f_tensor[(r,s,t,u,p,q)] is the recoupling coefficient from the tree
    r(st) with inner edge p to the tree (rs)t with inner edge q, both
    mapping to u; g_tensor has the inverse index convention (p couples
    (r,s), q couples (s,t)); r_tensor[(r,s,t)] is the braiding phase on
    the coupling r (x) s -> t.
    """

    level: int
    labels: tuple[int, ...]
    theta: tuple[complex, ...]
    zeta: complex
    s_char: np.ndarray
    qdim: np.ndarray
    global_dim_root: float
    f_tensor: dict[tuple[int, int, int, int, int, int], float] = field(repr=False)
    r_tensor: dict[tuple[int, int, int], complex] = field(repr=False)
    g_tensor: dict[tuple[int, int, int, int, int, int], complex] = field(repr=False)


def _admissible(k: int, a: int, b: int, c: int) -> bool:
    return fusion_coefficient(k, a, b, c) == 1


@lru_cache(maxsize=None)
def _level_constants(k: int):
    """(labels, theta, zeta, s_char, qdim, D) without any recoupling data;
    cheap at any level within the precision guard."""
    n = k + 2
    labels = tuple(range(k + 1))
    s_char = np.array(
        [
            [
                math.sqrt(2.0 / n) * math.sin(math.pi * (i + 1) * (j + 1) / n)
                for j in labels
            ]
            for i in labels
        ]
    )
    qdim = s_char[:, 0] / s_char[0, 0]
    global_dim_root = 1.0 / s_char[0, 0]
    theta = tuple(_e(conformal_weight(k, i)) for i in labels)
    zeta = _e(central_charge(k) / 24)
    return labels, theta, zeta, s_char, qdim, global_dim_root


def _r_phase(k: int, r: int, s: int, t: int) -> complex:
    h = conformal_weight(k, r) + conformal_weight(k, s) - conformal_weight(k, t)
    return ((-1.0) ** (r + s - t)) * _e(h / 2)


def _f_entry(k: int, r: int, s: int, t: int, u: int, p: int, q: int) -> float:
    """F^{(rst)u}_{pq} = {t/2 s/2 p/2; r/2 u/2 q/2}; caller guarantees
    admissibility."""
    return _six_j_2(k, t, s, p, r, u, q)


def _g_entry(k: int, i: int, j: int, kt: int, l: int, p: int, q: int) -> complex:
    """G^{(ijk)l}_{pq} = R^{(jk)q} R^{(iq)l} / (R^{(ij)p} R^{(pk)l}) * F^{(kji)l}_{pq}."""
    num = _r_phase(k, j, kt, q) * _r_phase(k, i, q, l)
    den = _r_phase(k, i, j, p) * _r_phase(k, p, kt, l)
    return num / den * _f_entry(k, kt, j, i, l, p, q)


@lru_cache(maxsize=None)
def f_r_g_matrices(k: int, max_level: int = DEFAULT_MAX_LEVEL) -> MtcLevelData:
    """All admissible F, R and G entries at level k, plus the character
    S-matrix, twists, quantum dimensions and the global dimension root.

    Full population walks every admissible index tuple, which grows like
    the sixth power of the level; fine at desk scale (the coherence tests
    run at k <= 10).  The modular pairs below fetch the few entries they
    need directly and stay fast at any guarded level.
    """
    _check_level(k, max_level)
    labels, theta, zeta, s_char, qdim, global_dim_root = _level_constants(k)

    r_tensor: dict[tuple[int, int, int], complex] = {}
    for r in labels:
        for s in labels:
            for t in labels:
                if _admissible(k, r, s, t):
                    r_tensor[(r, s, t)] = _r_phase(k, r, s, t)

    f_tensor: dict[tuple[int, int, int, int, int, int], float] = {}
    for r in labels:
        for s in labels:
            for t in labels:
                for p in labels:
                    if not _admissible(k, s, t, p):
                        continue
                    for u in labels:
                        if not _admissible(k, r, p, u):
                            continue
                        for q in labels:
                            if not (_admissible(k, r, s, q) and _admissible(k, q, t, u)):
                                continue
                            f_tensor[(r, s, t, u, p, q)] = _f_entry(k, r, s, t, u, p, q)

    g_tensor: dict[tuple[int, int, int, int, int, int], complex] = {}
    for (kk, jj, ii, ll, pp, qq), f_val in f_tensor.items():
        i, j, kt, l, p, q = ii, jj, kk, ll, pp, qq
        num = r_tensor[(j, kt, q)] * r_tensor[(i, q, l)]
        den = r_tensor[(i, j, p)] * r_tensor[(p, kt, l)]
        g_tensor[(i, j, kt, l, p, q)] = num / den * f_val
    return MtcLevelData(
        level=k,
        labels=labels,
        theta=theta,
        zeta=zeta,
        s_char=s_char,
        qdim=qdim,
        global_dim_root=global_dim_root,
        f_tensor=f_tensor,
        r_tensor=r_tensor,
        g_tensor=g_tensor,
    )


def adjoint_members(k: int) -> list[int]:
    """Labels p admitting a self-coupling Hom(p (x) i, i) != 0 for some i,
    found by a fusion sweep (the even labels, but computed, not assumed)."""
    _check_level(k)
    out = []
    for p in range(k + 1):
        if any(fusion_coefficient(k, p, i, i) == 1 for i in range(k + 1)):
            out.append(p)
    return out


@dataclass(frozen=True)
class GenModularPair:
    """The action of the once-punctured-torus mapping class group on the
    self-coupling spaces of p, in the basis {i : Hom(p (x) i, i) != 0}."""

    level: int
    p_label: int
    basis: tuple[int, ...]
    s_matrix: np.ndarray
    t_matrix: np.ndarray
    relation_residuals: dict[str, float]

    def to_json(self) -> dict:
        def cpx(z: complex) -> list[float]:
            return [float(z.real), float(z.imag)]

        return {
            "level": self.level,
            "p": self.p_label,
            "basis": list(self.basis),
            "s_matrix": [[cpx(z) for z in row] for row in self.s_matrix],
            "t_diagonal": [cpx(z) for z in np.diag(self.t_matrix)],
            "relation_residuals": {key: float(v) for key, v in self.relation_residuals.items()},
        }


def gen_modular_pair(
    k: int, p: int, tolerance: float = DEFAULT_TOLERANCE, max_level: int = DEFAULT_MAX_LEVEL
) -> GenModularPair:
    """Build (S^(p), T^(p)) from the categorical data and certify the
    relations (S T)^3 = S^2 and S^4 = theta_p^{-1} Id."""
    _check_level(k, max_level)
    if p % 2 != 0 or not 0 <= p <= k:
        raise ValueError(f"p must be an even label in 0..{k}, got {p}")
    labels, theta, zeta, _, qdim, global_dim_root = _level_constants(k)
    basis = tuple(i for i in labels if fusion_coefficient(k, p, i, i) == 1)
    if not basis:
        raise ValueError(f"label {p} has no self-couplings at level {k}")
    dim = len(basis)
    s = np.zeros((dim, dim), dtype=complex)
    for a, i in enumerate(basis):
        for b, j in enumerate(basis):
            acc = 0.0 + 0.0j
            for r in labels:
                if fusion_coefficient(k, i, j, r) != 1:
                    continue
                acc += (
                    theta[r]
                    / (theta[i] * theta[j])
                    * _g_entry(k, i, i, j, j, 0, r)
                    * _f_entry(k, i, i, j, j, r, 0)
                    * _g_entry(k, p, i, r, j, i, j)
                )
            s[a, b] = qdim[i] * qdim[j] / global_dim_root * acc
    t = np.diag([theta[i] / zeta for i in basis])

    st3 = np.linalg.matrix_power(s @ t, 3)
    s2 = s @ s
    res_braid = float(np.max(np.abs(st3 - s2)))
    s4 = s2 @ s2
    res_dehn = float(np.max(np.abs(s4 - np.eye(dim) / theta[p])))
    residuals = {"st_cubed_vs_s_squared": res_braid, "s_fourth_vs_inverse_twist": res_dehn}
    if res_braid > tolerance or res_dehn > tolerance:
        raise RelationViolationError(
            f"modular pair relations violated at level {k}, p={p}: {residuals}"
        )
    return GenModularPair(
        level=k,
        p_label=p,
        basis=basis,
        s_matrix=s,
        t_matrix=t,
        relation_residuals=residuals,
    )


def irreducibility_probe(
    pair: GenModularPair, multiplier_weight=0, tolerance: float = DEFAULT_TOLERANCE
) -> str:
    """Numerical irreducibility certificate: with distinct T-eigenvalues,
    any invariant subspace is spanned by basis vectors, and is ruled out
    if every proper non-empty subset couples to its complement through a
    non-negligible S-entry.  The multiplier weight is irrelevant to the
    existence of invariant subspaces (a scalar rescaling) and is accepted
    only for interface symmetry with the analytic side."""
    del multiplier_weight
    dim = len(pair.basis)
    if dim > 20:
        raise ValueError(f"refusing subset enumeration for basis size {dim} > 20")
    if dim == 1:
        return "irreducible"
    tdiag = np.diag(pair.t_matrix)
    for a in range(dim):
        for b in range(a + 1, dim):
            if abs(tdiag[a] - tdiag[b]) <= tolerance:
                return "inconclusive"
    indices = range(dim)
    for size in range(1, dim):
        for subset in combinations(indices, size):
            inside = set(subset)
            outside = [m for m in indices if m not in inside]
            coupled = any(
                abs(pair.s_matrix[o, i]) > tolerance for i in inside for o in outside
            )
            if not coupled:
                return "inconclusive"
    return "irreducible"


def compare_with_analytic(
    k: int, lam: int, tolerance: float = DEFAULT_TOLERANCE, max_level: int = DEFAULT_MAX_LEVEL
) -> dict:
    """Compare the categorical T^(lam), divided by the weight-h_lam
    multiplier value on T, against the analytic diagonal exponents
    e(r_mu); report per-entry residuals.  The S-side comparison is
    reported as data without asserting equality."""
    if lam % 2 != 0:
        raise ValueError(f"lambda must be even, got {lam}")
    pair = gen_modular_pair(k, lam, tolerance, max_level)
    sig = rho_t(k, lam)
    if list(pair.basis) != xi_set(k, lam):
        raise RelationViolationError("categorical basis disagrees with the label set")
    nu_t = _e(multiplier(sig.multiplier_weight, "T"))
    nu_s = _e(multiplier(sig.multiplier_weight, "S"))
    t_resid = {}
    tdiag = np.diag(pair.t_matrix)
    for (mu, r), t_entry in zip(zip(pair.basis, sig.t_exponents), tdiag):
        t_resid[mu] = float(abs(t_entry / nu_t - _e(r)))
    s_over_nu = pair.s_matrix / nu_s
    return {
        "level": k,
        "lambda": lam,
        "t_residuals": {int(mu): v for mu, v in t_resid.items()},
        "max_t_residual": max(t_resid.values()),
        "t_consistent": max(t_resid.values()) < tolerance,
        "s_over_nu": [[[float(z.real), float(z.imag)] for z in row] for row in s_over_nu],
        "nu_t_exponent": fraction_to_str(multiplier(sig.multiplier_weight, "T")),
        "nu_s_exponent": fraction_to_str(multiplier(sig.multiplier_weight, "S")),
    }


def s_k_report(k: int) -> dict:
    """The three competing values for the one-dimensional S^(k): the
    coupling-space computation, e(-3k/16) (the weight-3k/4 multiplier
    value on S), and e(-3k/32).  Reported, not adjudicated."""
    if k % 2 != 0:
        raise ValueError("the one-dimensional pair needs even k")
    pair = gen_modular_pair(k, k)
    computed = complex(pair.s_matrix[0, 0])
    return {
        "level": k,
        "computed": [computed.real, computed.imag],
        "e_minus_3k_16": [_e(Fraction(-3 * k, 16)).real, _e(Fraction(-3 * k, 16)).imag],
        "e_minus_3k_32": [_e(Fraction(-3 * k, 32)).real, _e(Fraction(-3 * k, 32)).imag],
    }


def verlinde_fusion(k: int, lam: int, mu: int, nu: int) -> float:
    """Fusion number from the character S-matrix:
    sum_m S_{lam,m} S_{mu,m} conj(S_{nu,m}) / S_{0,m}."""
    _check_level(k)
    for label in (lam, mu, nu):
        if not 0 <= label <= k:
            raise ValueError(f"label {label} out of range 0..{k}")
    labels, _, _, s, _, _ = _level_constants(k)
    return float(
        np.real(sum(s[lam, m] * s[mu, m] * np.conj(s[nu, m]) / s[0, m] for m in labels))
    )
