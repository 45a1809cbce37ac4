"""Representation-level classification of the modular-group actions.

Minimal admissible exponent sets, the weight lower bound, Hilbert-Poincare
graded dimensions of the cyclic operator modules, closed-form dimension
formulas for dimensions 1-3, the order of the diagonal T-action,
a sufficient irreducibility test via subproducts of T-eigenvalues, and a
rule engine for congruence/non-congruence verdicts.  The rule engine is
deliberately not a decision procedure: "undetermined" is a first-class
outcome carrying the identifier of the last rule consulted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import UnsupportedDimensionError
from .qseries import fraction_to_str
from .sl2data import RepSignature, rho_t

__all__ = [
    "AdmissibleSet",
    "CongruenceVerdict",
    "CONGRUENCE",
    "NONCONGRUENCE",
    "UNDETERMINED",
    "IRREDUCIBLE",
    "INCONCLUSIVE",
    "minimal_admissible_set",
    "weight_lower_bound",
    "hp_coefficient",
    "graded_dimension",
    "t_order",
    "irreducibility_subproduct_test",
    "congruence_classify",
    "prime_power_parameters",
    "prime_power_rule_applies",
    "NONCONGRUENCE_ORDER_BOUND",
]

CONGRUENCE = "congruence"
NONCONGRUENCE = "noncongruence"
UNDETERMINED = "undetermined"
IRREDUCIBLE = "irreducible"
INCONCLUSIVE = "inconclusive"

# 2^8 * 3^4 * 5^2 * 7^2; stored factored so divisibility tests are exact
# prime-power comparisons.
_ORDER_BOUND_FACTORS = {2: 8, 3: 4, 5: 2, 7: 2}
NONCONGRUENCE_ORDER_BOUND = 25401600


@dataclass(frozen=True)
class AdmissibleSet:
    """Exponents in [0,1) compatible with a (representation, multiplier)
    pair; the minimal admissible set is the unique such choice."""

    exponents: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"exponents": [fraction_to_str(x) for x in self.exponents]}


@dataclass(frozen=True)
class CongruenceVerdict:
    status: str
    congruence_level: int | None
    basis: str

    def __post_init__(self):
        if self.congruence_level is not None and self.status != CONGRUENCE:
            raise ValueError("congruence_level only accompanies a congruence verdict")

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "congruence_level": self.congruence_level,
            "basis": self.basis,
        }


def _frac_mod(x: Fraction, modulus: int) -> Fraction:
    return x - modulus * math.floor(x / modulus)


def minimal_admissible_set(sig: RepSignature, multiplier_weight) -> AdmissibleSet:
    """lam_j = frac(r_j + m/12) with m the cusp parameter of the weight-r
    multiplier system (its weight reduced into [0,12))."""
    m = _frac_mod(Fraction(multiplier_weight), 12)
    out = []
    for r in sig.t_exponents:
        x = r + m / 12
        out.append(x - math.floor(x))
    return AdmissibleSet(exponents=tuple(out))


def weight_lower_bound(exponents) -> Fraction:
    """12*(sum of exponents)/d + 1 - d."""
    exps = [Fraction(x) for x in exponents]
    if not exps:
        raise ValueError("need at least one exponent")
    d = len(exps)
    return Fraction(12) * sum(exps) / d + 1 - d


@lru_cache(maxsize=None)
def _hp_coefficients(d: int, count: int) -> tuple[int, ...]:
    """Coefficients of (1 - t^{2d}) / ((1-t^2)(1-t^4)(1-t^6))."""
    coeffs = [0] * count
    coeffs[0] = 1
    if 2 * d < count:
        coeffs[2 * d] = -1
    # divide by (1 - t^p) == multiply by the geometric series
    for p in (2, 4, 6):
        for n in range(p, count):
            coeffs[n] += coeffs[n - p]
    return tuple(coeffs)


def hp_coefficient(d: int, n: int) -> int:
    if d < 1:
        raise ValueError("rank d must be >= 1")
    if n < 0:
        raise ValueError("degree n must be >= 0")
    return _hp_coefficients(d, n + 1)[n]


def graded_dimension(k: int, lam: int, n: int) -> int:
    """Closed-form graded dimension of the space of forms obtained from
    grade-n insertions, for dimensions 1-3 (k at least 2/3/4 resp.)."""
    d = k - lam + 1
    if d not in (1, 2, 3):
        raise UnsupportedDimensionError(f"closed forms cover dimensions 1-3, got {d}")
    if k < d + 1:
        raise UnsupportedDimensionError(
            f"dimension-{d} closed form needs level k >= {d + 1}, got {k}"
        )
    if n < 0:
        raise ValueError("grade must be non-negative")
    if n % 2 == 1:
        return 0
    if d == 1:
        return n // 12 if n % 12 == 2 else n // 12 + 1
    if d == 2:
        return n // 6 + 1
    return n // 4 + 1


def t_order(k: int, lam: int) -> int:
    """Order of the diagonal T-action: lcm of the reduced denominators of
    its exponents."""
    sig = rho_t(k, lam)
    return math.lcm(*(r.denominator for r in sig.t_exponents))


def irreducibility_subproduct_test(sig: RepSignature) -> str:
    """Sufficient irreducibility criterion: if no non-empty proper subset
    of T-exponents sums to a multiple of 1/12, the representation is
    irreducible.  Inconclusive otherwise (the criterion is one-sided)."""
    d = sig.dimension
    if d > 20:
        raise ValueError(f"refusing subset enumeration for dimension {d} > 20")
    if d == 1:
        return IRREDUCIBLE
    exps = sig.t_exponents
    for size in range(1, d):
        for subset in combinations(exps, size):
            if (12 * sum(subset)).denominator == 1:
                return INCONCLUSIVE
    return IRREDUCIBLE


def prime_power_parameters(k: int) -> tuple[int, int] | None:
    """(p, t) with k + 2 = p^t for a prime p > 3, or None."""
    n = k + 2
    if n < 5:
        return None
    p = None
    m = n
    for cand in range(2, math.isqrt(n) + 1):
        if m % cand == 0:
            p = cand
            while m % cand == 0:
                m //= cand
            break
    if p is None:
        p, m = n, 1
    if m != 1:
        return None  # not a prime power
    if p <= 3:
        return None
    t = 0
    while n % p == 0:
        n //= p
        t += 1
    return (p, t)


def prime_power_rule_applies(k: int, lam: int) -> bool:
    """Level/weight part of the prime-power non-congruence rule: k = p^t-2
    with p > 3 prime, 2 <= lam <= k even, and t = 1 or lam + 1 > p^(t-2).
    The rule's conclusion is conditional on irreducibility."""
    if lam % 2 != 0 or not 2 <= lam <= k:
        return False
    params = prime_power_parameters(k)
    if params is None:
        return False
    p, t = params
    if t == 1:
        return True
    return lam + 1 > p ** (t - 2)


def _divides_order_bound(order: int) -> bool:
    m = order
    for p, e in _ORDER_BOUND_FACTORS.items():
        for _ in range(e):
            if m % p == 0:
                m //= p
    return m == 1


def congruence_classify(k: int, lam: int) -> CongruenceVerdict:
    """Rule engine, applied in order: dimension 1 (always congruence),
    dimension 2 (congruence, level 8 iff k = 2 mod 3 else 24), dimension 3
    (non-congruence iff the T-order does not divide 2^8 3^4 5^2 7^2),
    then the prime-power rule (non-congruence conditional on
    irreducibility).  Anything unmatched is undetermined."""
    if lam % 2 != 0:
        raise ValueError(f"lambda must be even, got {lam}")
    if not 0 <= lam <= k:
        raise ValueError(f"need 0 <= lambda <= k, got lambda={lam}, k={k}")
    d = k - lam + 1
    if d == 1:
        return CongruenceVerdict(CONGRUENCE, None, "thm-dim1")
    if d == 2:
        if k % 3 == 2:
            return CongruenceVerdict(CONGRUENCE, 8, "thm-dim2-level8")
        return CongruenceVerdict(CONGRUENCE, 24, "thm-dim2-level24")
    if d == 3:
        if not _divides_order_bound(t_order(k, lam)):
            return CongruenceVerdict(NONCONGRUENCE, None, "thm-dim3-order")
        return CongruenceVerdict(UNDETERMINED, None, "thm-dim3-order-divides")
    if prime_power_rule_applies(k, lam):
        try:
            certificate = irreducibility_subproduct_test(rho_t(k, lam))
        except ValueError:
            certificate = INCONCLUSIVE  # dimension too large to enumerate
        if certificate == IRREDUCIBLE:
            return CongruenceVerdict(NONCONGRUENCE, None, "thm-prime-power")
        return CongruenceVerdict(UNDETERMINED, None, "thm-prime-power-conditional")
    return CongruenceVerdict(UNDETERMINED, None, "no-rule")
