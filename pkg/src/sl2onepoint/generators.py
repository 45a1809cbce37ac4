"""Cyclic generators of the holomorphic form spaces in dimensions 1-3.

A single vector of q-series generates, under the modular-differential-
operator algebra, every form attached to insertions from the simple
module with finite weight lam = k, k-1 or k-2.  Dimension one is a pure
eta power; dimensions two and three are built from eta powers and
hypergeometric series evaluated at 1728/j, with the minimal-exponent
normal form {0, 1/4} resp. {0, (k+1)/(4(k+2)), 1/2} fixing all
parameters.  The irrational constants 1728^a coming from powers of J are
dropped: each component is normalised to leading coefficient 1, which an
intertwiner rescaling always permits, so the whole pipeline stays in
exact rationals.

The module also verifies the monic modular differential equations the
components satisfy, and checks the computed expansions against the
published five-coefficient tables embedded in ``data/published_tables.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import DegenerateMldeError, InternalInconsistencyError, UnsupportedDimensionError
from .qseries import (
    QExpansion,
    eisenstein,
    eta_power,
    fraction_from_str,
    fraction_to_str,
    j_inverse,
    modular_derivative,
    monomial,
    one,
    series_pow_rational,
)
from .sl2data import conformal_weight, leading_exponents, xi_set

__all__ = [
    "HypergeomSpec",
    "VvmfVector",
    "hypergeom_series",
    "cyclic_generator",
    "minimal_exponents",
    "generator_weight",
    "mlde_residual",
    "dim3_mlde_coefficients",
    "FixtureEntry",
    "FixtureReport",
    "table_fixture_check",
]


@dataclass(frozen=True)
class HypergeomSpec:
    """Parameters of a generalised hypergeometric series pFq."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in self.lower))
        for b in self.lower:
            if b.denominator == 1 and b <= 0:
                raise ValueError(f"lower parameter {b} is a non-positive integer")

    def coefficients(self, count: int) -> list[Fraction]:
        """First ``count`` series coefficients from the rising-factorial
        recurrence c_{n+1}/c_n = prod(a_i+n) / (prod(b_j+n) * (n+1))."""
        cs = [Fraction(1)]
        for n in range(count - 1):
            c = cs[-1]
            for a in self.upper:
                c *= a + n
            for b in self.lower:
                c /= b + n
            cs.append(c / (n + 1))
        return cs


def hypergeom_series(spec: HypergeomSpec, arg: QExpansion, order: int) -> QExpansion:
    """The composition F(arg) as a truncated series.

    ``arg`` must vanish at q = 0 (strictly positive leading exponent) so
    that only finitely many powers land below the truncation order.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    arg = arg.canonical()
    if arg.is_zero():
        return one(order)
    if arg.leading_exponent <= 0:
        raise ValueError(
            f"composition needs a strictly positive leading exponent, got {arg.leading_exponent}"
        )
    if arg.leading_exponent.denominator != 1:
        raise ValueError("composition argument must live in integer exponents")
    if arg.order < order:
        raise ValueError(
            f"argument is only valid to order {arg.order}, cannot compose to order {order}"
        )
    step = int(arg.leading_exponent)
    nterms = (order - 1) // step + 1
    coeffs = spec.coefficients(nterms)
    total = one(order)
    power = one(min(arg.order, order))
    for n in range(1, nterms):
        power = power * arg
        total = total + coeffs[n] * power
    return total.truncate(order)


@dataclass(frozen=True)
class VvmfVector:
    """A vector of trace-function expansions, one component per label mu
    in the self-coupling set of (level, weight_label)."""

    level: int
    weight_label: int
    components: tuple[tuple[int, QExpansion], ...]
    form_weight: Fraction

    @property
    def dimension(self) -> int:
        return len(self.components)

    def component(self, mu: int) -> QExpansion:
        for label, series in self.components:
            if label == mu:
                return series
        raise KeyError(f"no component with label {mu}")

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "weight_label": self.weight_label,
            "form_weight": fraction_to_str(self.form_weight),
            "components": [
                {"mu": mu, "series": series.to_json()} for mu, series in self.components
            ],
        }


def minimal_exponents(k: int, lam: int) -> list[Fraction]:
    """Leading exponents of the eta-rescaled generator: the minimal
    admissible set of the shifted multiplier pair."""
    d = k - lam + 1
    if d == 1:
        return [Fraction(0)]
    if d == 2:
        return [Fraction(0), Fraction(1, 4)]
    if d == 3:
        return [Fraction(0), Fraction(k + 1, 4 * (k + 2)), Fraction(1, 2)]
    raise UnsupportedDimensionError(f"no generator formula for dimension {d}")


def generator_weight(k: int, lam: int) -> Fraction:
    """Weight of the eta-rescaled cyclic generator: 12*(sum)/d + 1 - d on
    its minimal exponents."""
    exps = minimal_exponents(k, lam)
    d = len(exps)
    return Fraction(12) * sum(exps) / d + 1 - d


def _component_factors(lam_i: Fraction, others: list[Fraction]) -> tuple[Fraction, HypergeomSpec]:
    """J-exponent and hypergeometric parameters of one component of the
    rescaled generator, from its minimal exponents.

    Returns (c, spec) for the component eta^{2w} * J^{-c} * F(1/J).
    """
    if len(others) == 1:
        delta = lam_i - others[0]
        c = Fraction(6 * delta + 1, 12)
        upper = (c, c + Fraction(1, 3))
        lower = (delta + 1,)
    else:
        o1, o2 = others
        c = Fraction(4 * lam_i - 2 * o1 - 2 * o2 + 1, 6)
        upper = (c, c + Fraction(1, 3), c + Fraction(2, 3))
        lower = (lam_i - o1 + 1, lam_i - o2 + 1)
    return c, HypergeomSpec(upper, lower)


def cyclic_generator(k: int, lam: int, order: int) -> VvmfVector:
    """The normalised cyclic generator for (k, lam) with k-lam in {0,1,2}.

    Dimension 1 is eta^{3k/2}; dimensions 2 and 3 are realised as
    eta^E * q^c * v^c * F(1/J) per component, where v is the unit-constant
    part of 1728/(jq) and every factor has leading coefficient 1, so the
    result is already normalised.  Component leading exponents are checked
    against (2 mu^2 + 4 mu - k)/(8(k+2)).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if not 0 <= lam <= k:
        raise ValueError(f"need 0 <= lambda <= k, got lambda={lam}, k={k}")
    if lam % 2 != 0:
        raise ValueError(f"lambda must be even (no self-couplings otherwise), got {lam}")
    d = k - lam + 1
    if d not in (1, 2, 3):
        raise UnsupportedDimensionError(f"no generator formula for dimension {d}")

    mus = xi_set(k, lam)
    exps = leading_exponents(k, lam)
    form_weight = conformal_weight(k, lam) + Fraction(lam, 2)

    if d == 1:
        comp = eta_power(Fraction(3 * k, 2), order)
        _check_component(comp, exps[0])
        return VvmfVector(k, lam, ((mus[0], comp),), form_weight)

    lambdas = minimal_exponents(k, lam)
    w = generator_weight(k, lam)
    mu_min = exps[0]
    eta_expo = 24 * mu_min + 2 * w
    eta_part = eta_power(eta_expo, order)
    jinv = j_inverse(order)
    v_unit = QExpansion(0, tuple(c / 1728 for c in jinv.coeffs), order)

    components = []
    for i, (mu, lam_i) in enumerate(zip(mus, lambdas)):
        others = [x for j, x in enumerate(lambdas) if j != i]
        c, spec = _component_factors(lam_i, others)
        series = hypergeom_series(spec, jinv, order)
        comp = eta_part * monomial(c, order) * series_pow_rational(v_unit, c) * series
        _check_component(comp, exps[i])
        components.append((mu, comp))
    return VvmfVector(k, lam, tuple(components), form_weight)


def _check_component(comp: QExpansion, expected_exponent: Fraction) -> None:
    if comp.leading_exponent != expected_exponent:
        raise InternalInconsistencyError(
            f"component leading exponent {comp.leading_exponent} != expected {expected_exponent}"
        )
    if comp.coeffs[0] != 1:
        raise InternalInconsistencyError("component is not normalised to leading coefficient 1")


def _rescaled_components(k: int, lam: int, order: int) -> list[QExpansion]:
    """Generator components divided by eta^{24*mu_min}: weight-w forms with
    the minimal admissible exponents."""
    gen = cyclic_generator(k, lam, order)
    mu_min = gen.components[0][1].leading_exponent
    eta_down = eta_power(-24 * mu_min, order)
    return [eta_down * comp for _, comp in gen.components]


def mlde_residual(k: int, lam: int, order: int) -> list[QExpansion]:
    """Residuals of the monic modular differential equation annihilating
    the eta-rescaled generator components; identically zero when the
    construction is correct.

    Dimension 2: (D^2 - (25/4) eis_4) f at weight 1/2, the coefficient
    coming from 180*(lambda_1-lambda_2)^2 - 5 with exponents {0, 1/4}.
    Dimension 3: (D^3 + kappa_1 eis_4 D + kappa_2 eis_6) f at weight
    (k+1)/(k+2), with (kappa_1, kappa_2) solved exactly from the two
    lowest coefficients of the first component's residual.
    """
    d = k - lam + 1
    if d not in (2, 3):
        raise UnsupportedDimensionError(f"differential equation check covers dimensions 2-3, got {d}")
    if order < 4:
        raise ValueError("order must be >= 4")
    fs = _rescaled_components(k, lam, order)
    w = generator_weight(k, lam)

    if d == 2:
        kappa1 = Fraction(25, 4)
        e4 = eisenstein(4, order)
        out = []
        for f in fs:
            d2 = modular_derivative(modular_derivative(f, w), w + 2)
            out.append(d2 - kappa1 * (e4 * f).truncate(order - 2))
        return out

    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    A, B, C = [], [], []
    for f in fs:
        d1 = modular_derivative(f, w)
        d3 = modular_derivative(modular_derivative(d1, w + 2), w + 4)
        A.append(d3)
        B.append((e4 * d1).truncate(order - 3))
        C.append((e6 * f).truncate(order - 3))
    kappa1, kappa2 = _solve_mlde_coefficients(A[0], B[0], C[0])
    return [a + kappa1 * b + kappa2 * c for a, b, c in zip(A, B, C)]


def _solve_mlde_coefficients(a: QExpansion, b: QExpansion, c: QExpansion):
    det = b.coeffs[0] * c.coeffs[1] - b.coeffs[1] * c.coeffs[0]
    if det == 0:
        raise DegenerateMldeError("singular system for the differential-equation coefficients")
    kappa1 = (-a.coeffs[0] * c.coeffs[1] + a.coeffs[1] * c.coeffs[0]) / det
    kappa2 = (-b.coeffs[0] * a.coeffs[1] + b.coeffs[1] * a.coeffs[0]) / det
    return kappa1, kappa2


def dim3_mlde_coefficients(k: int, order: int = 8) -> tuple[Fraction, Fraction]:
    """The exact (kappa_1, kappa_2) of the third-order equation at level k."""
    if k % 2 != 0 or k < 2:
        raise ValueError("third-order equation lives at even k >= 2 with lambda = k-2")
    fs = _rescaled_components(k, k - 2, order)
    w = generator_weight(k, k - 2)
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    f = fs[0]
    d1 = modular_derivative(f, w)
    d3 = modular_derivative(modular_derivative(d1, w + 2), w + 4)
    return _solve_mlde_coefficients(
        d3, (e4 * d1).truncate(order - 3), (e6 * f).truncate(order - 3)
    )


# -- published-table fixtures -----------------------------------------


@dataclass(frozen=True)
class FixtureEntry:
    level: int
    mu: int
    expected_exponent: Fraction
    got_exponent: Fraction
    expected_coeffs: tuple[Fraction, ...]
    got_coeffs: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return (
            self.expected_exponent == self.got_exponent
            and self.expected_coeffs == self.got_coeffs
        )

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "mu": self.mu,
            "passed": self.passed,
            "expected_exponent": fraction_to_str(self.expected_exponent),
            "got_exponent": fraction_to_str(self.got_exponent),
            "expected_coeffs": [fraction_to_str(c) for c in self.expected_coeffs],
            "got_coeffs": [fraction_to_str(c) for c in self.got_coeffs],
        }


@dataclass(frozen=True)
class FixtureReport:
    table: str
    entries: tuple[FixtureEntry, ...]

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "all_passed": self.all_passed,
            "entries": [e.to_json() for e in self.entries],
        }


def _load_tables() -> dict:
    text = resources.files("sl2onepoint").joinpath("data/published_tables.json").read_text()
    return json.loads(text)


def table_fixture_check(which: str) -> FixtureReport:
    """Compare computed generators against the embedded five-coefficient
    expansion fixtures.  ``which`` is 'table1' (two components, odd k) or
    'table2' (three components, even k).  Mismatches are reported, not
    raised."""
    tables = _load_tables()
    if which not in ("table1", "table2"):
        raise ValueError(f"unknown table {which!r}; expected 'table1' or 'table2'")
    data = tables[which]
    shift = {"table1": 1, "table2": 2}[which]
    entries = []
    for k_str, comps in sorted(data.items(), key=lambda kv: int(kv[0])):
        k = int(k_str)
        gen = cyclic_generator(k, k - shift, 5)
        for mu_str, fixture in sorted(comps.items(), key=lambda kv: int(kv[0])):
            mu = int(mu_str)
            got = gen.component(mu)
            entries.append(
                FixtureEntry(
                    level=k,
                    mu=mu,
                    expected_exponent=fraction_from_str(fixture["exponent"]),
                    got_exponent=got.leading_exponent,
                    expected_coeffs=tuple(fraction_from_str(c) for c in fixture["coeffs"]),
                    got_coeffs=got.coeffs[:5],
                )
            )
    return FixtureReport(table=which, entries=tuple(entries))
