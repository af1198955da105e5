"""Model definition: coefficients, growth and disinfection families, initial data.

The model couples a bacteria density u and an infected-individual density v on
a moving interval (g(t), h(t)).  Between disinfection events the pair obeys

    u_t = d1 u_xx - a11 u + a12 v,
    v_t = d2 v_xx - a22 v + f(u),

with u = v = 0 at the fronts and Stefan-type front motion
h' = -mu1 u_x - mu2 v_x (same combination at g).  Every tau time units the
bacteria density is reset pointwise, u <- G(u), while v is untouched.

Growth f and disinfection response G are closed enumerations rather than
arbitrary callables so that f'(0), G'(0) and the quadratic lower-bound
constants are available in closed form; the eigenvalue routines depend on
exact slopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np

from .errors import ConfigurationError, PreconditionError

__all__ = [
    "LinearGrowth",
    "BevertonHoltGrowth",
    "GrowthFn",
    "IdentityImpulse",
    "LinearImpulse",
    "SaturatingImpulse",
    "ImpulseFn",
    "ModelParams",
    "InitialData",
    "AssumptionCheck",
    "ValidationReport",
    "eval_growth",
    "eval_impulse",
    "validate_assumptions",
    "density_bounds",
]


# ---------------------------------------------------------------------------
# growth family


@dataclass(frozen=True)
class LinearGrowth:
    """f(u) = p*u."""

    p: float

    kind = "linear"

    def __post_init__(self):
        if not self.p > 0:
            raise ConfigurationError(f"linear growth slope must be positive, got p={self.p}")

    def __call__(self, u):
        return self.p * u

    @property
    def slope_at_zero(self) -> float:
        return self.p

    @property
    def slope_at_infinity(self) -> float:
        """Limit of f(u)/u as u grows; equals the slope for the linear family."""
        return self.p

    def lower_bound_constants(self) -> tuple[float, float]:
        """(H, kappa) with f(u) >= f'(0)u - H u^kappa for all u >= 0.

        Any positive H works for a linear f; a fixed H keeps the validator
        deterministic.
        """
        return 1.0, 2.0


@dataclass(frozen=True)
class BevertonHoltGrowth:
    """f(u) = m*u / (a + u), saturating infection response."""

    m: float
    a: float

    kind = "beverton-holt"

    def __post_init__(self):
        if not (self.m > 0 and self.a > 0):
            raise ConfigurationError(
                f"Beverton-Holt growth needs m>0 and a>0, got m={self.m}, a={self.a}"
            )

    def __call__(self, u):
        return self.m * u / (self.a + u)

    @property
    def slope_at_zero(self) -> float:
        return self.m / self.a

    @property
    def slope_at_infinity(self) -> float:
        return 0.0

    def lower_bound_constants(self) -> tuple[float, float]:
        # m*u/(a+u) - [(m/a)u - (m/a^2)u^2] = m u^3 / (a^2 (a+u)) >= 0 on u >= 0
        return self.m / self.a**2, 2.0


GrowthFn = Union[LinearGrowth, BevertonHoltGrowth]


# ---------------------------------------------------------------------------
# disinfection (impulse) family


@dataclass(frozen=True)
class IdentityImpulse:
    """G(u) = u: explicit no-intervention mode."""

    kind = "identity"

    def __call__(self, u):
        return u

    @property
    def slope_at_zero(self) -> float:
        return 1.0

    @property
    def intensity(self) -> float:
        """Fraction of bacteria removed per event, linearized at zero density."""
        return 0.0

    def lower_bound_constants(self) -> tuple[float, float]:
        return 1.0, 2.0


@dataclass(frozen=True)
class LinearImpulse:
    """G(u) = rho*u with 0 < rho <= 1."""

    rho: float

    kind = "linear"

    def __post_init__(self):
        if not (0.0 < self.rho <= 1.0):
            raise ConfigurationError(f"linear impulse needs 0 < rho <= 1, got rho={self.rho}")

    def __call__(self, u):
        return self.rho * u

    @property
    def slope_at_zero(self) -> float:
        return self.rho

    @property
    def intensity(self) -> float:
        return 1.0 - self.rho

    def lower_bound_constants(self) -> tuple[float, float]:
        return 1.0, 2.0


@dataclass(frozen=True)
class SaturatingImpulse:
    """G(u) = c*u / (b + u) with 0 < c < b, so G(u) < u and G'(0) = c/b < 1."""

    c: float
    b: float

    kind = "saturating"

    def __post_init__(self):
        if not (0.0 < self.c < self.b):
            raise ConfigurationError(
                f"saturating impulse needs 0 < c < b, got c={self.c}, b={self.b}"
            )

    def __call__(self, u):
        return self.c * u / (self.b + u)

    @property
    def slope_at_zero(self) -> float:
        return self.c / self.b

    @property
    def intensity(self) -> float:
        return 1.0 - self.c / self.b

    def lower_bound_constants(self) -> tuple[float, float]:
        return self.c / self.b**2, 2.0


ImpulseFn = Union[IdentityImpulse, LinearImpulse, SaturatingImpulse]


def eval_growth(growth: GrowthFn, u):
    """Evaluate f(u); densities must be non-negative."""
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise PreconditionError("growth function is defined for non-negative densities only")
    out = growth(u)
    return float(out) if np.ndim(out) == 0 else out


def eval_impulse(impulse: ImpulseFn, u):
    """Evaluate G(u); densities must be non-negative."""
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise PreconditionError("impulse function is defined for non-negative densities only")
    out = impulse(u)
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# parameters and initial data


@dataclass(frozen=True)
class ModelParams:
    """All model coefficients.

    d1, d2      diffusion of bacteria / infecteds      (length^2 / time)
    a11, a22    decay of bacteria / infecteds          (1 / time)
    a12         bacteria growth fed by infecteds       (1 / time)
    mu1, mu2    expansion capacities in the front law  (length^2 / (time*density))
    h0          initial half-width of the interval     (length)
    tau         disinfection period                    (time)

    Construction enforces the structural sign conditions.  The admissibility
    of growth/impulse shapes and the asymptotic slope condition
    lim f(u)/u < a11*a22/a12 are checked by ``validate_assumptions`` so that
    inadmissible parameter sets can still be constructed and reported on.
    """

    d1: float
    d2: float
    a11: float
    a12: float
    a22: float
    mu1: float
    mu2: float
    h0: float
    tau: float
    growth: GrowthFn = field(default_factory=lambda: LinearGrowth(p=0.05))
    impulse: ImpulseFn = field(default_factory=IdentityImpulse)

    def __post_init__(self):
        positive = {
            "d1": self.d1,
            "d2": self.d2,
            "a11": self.a11,
            "a12": self.a12,
            "a22": self.a22,
            "h0": self.h0,
            "tau": self.tau,
        }
        bad = [k for k, v in positive.items() if not v > 0]
        if bad:
            raise ConfigurationError(f"fields must be strictly positive: {', '.join(bad)}")
        if self.mu1 < 0 or self.mu2 < 0:
            raise ConfigurationError("expansion capacities mu1, mu2 must be non-negative")
        if not self.mu1 + self.mu2 > 0:
            raise ConfigurationError("mu1 + mu2 must be positive: some species must push the front")

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class InitialData:
    """Initial density profiles on [-h0, h0], zero at the endpoints."""

    u0: Callable[[np.ndarray], np.ndarray]
    v0: Callable[[np.ndarray], np.ndarray]

    @classmethod
    def cos_quarter(cls, h0: float, amp_u: float, amp_v: float) -> "InitialData":
        """A*cos(pi*x/(2*h0)) humps, the standard smooth compactly supported seed."""
        if amp_u <= 0 or amp_v <= 0:
            raise ConfigurationError("cos-quarter amplitudes must be positive")
        half = float(h0)

        def u0(x):
            return amp_u * np.cos(np.pi * np.asarray(x, dtype=float) / (2 * half))

        def v0(x):
            return amp_v * np.cos(np.pi * np.asarray(x, dtype=float) / (2 * half))

        return cls(u0=u0, v0=v0)

    @classmethod
    def from_table(cls, x: np.ndarray, u: np.ndarray, v: np.ndarray) -> "InitialData":
        """Tabulated profiles; linear interpolation between samples."""
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
            raise ConfigurationError("tabulated x must be strictly increasing with >= 2 samples")
        if u.shape != x.shape or v.shape != x.shape:
            raise ConfigurationError("tabulated u, v must match the x sample count")
        return cls(
            u0=lambda q: np.interp(np.asarray(q, dtype=float), x, u),
            v0=lambda q: np.interp(np.asarray(q, dtype=float), x, v),
        )

    def scaled(self, factor_u: float, factor_v: float | None = None) -> "InitialData":
        """Pointwise rescaling, used by comparison tests and threshold searches."""
        fv = factor_u if factor_v is None else factor_v
        u0, v0 = self.u0, self.v0
        return InitialData(u0=lambda x: factor_u * u0(x), v0=lambda x: fv * v0(x))

    def sample(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        return np.asarray(self.u0(x), dtype=float), np.asarray(self.v0(x), dtype=float)


# ---------------------------------------------------------------------------
# assumption validation


@dataclass(frozen=True)
class AssumptionCheck:
    label: str
    passed: bool
    informational: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[AssumptionCheck, ...]

    @property
    def all_pass(self) -> bool:
        """True when no hard failure is present; informational flags do not count."""
        return all(c.passed or c.informational for c in self.checks)

    def failures(self) -> tuple[AssumptionCheck, ...]:
        return tuple(c for c in self.checks if not c.passed and not c.informational)

    def to_json_dict(self) -> dict:
        return {
            "all_pass": self.all_pass,
            "checks": [
                {
                    "label": c.label,
                    "passed": c.passed,
                    "informational": c.informational,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def validate_assumptions(
    params: ModelParams,
    init: InitialData | None,
    u_max: float = 100.0,
    n_samples: int = 1000,
) -> ValidationReport:
    """Check the admissibility conditions A1-A4 and report each one.

    Closed-form facts (slopes at zero, the asymptotic slope margin, the
    quadratic lower-bound constants) are evaluated exactly; shape conditions
    are sampled on a uniform grid of ``n_samples`` points in (0, u_max].
    Failures are reported, never raised.  A pure function of its inputs.
    """
    if not u_max > 0:
        raise PreconditionError("u_max must be positive")
    if n_samples < 2:
        raise PreconditionError("n_samples must be at least 2")

    checks: list[AssumptionCheck] = []
    us = np.linspace(u_max / n_samples, u_max, n_samples)

    # A1: initial profiles vanish at the endpoints and are positive inside.
    if init is not None:
        xs = np.linspace(-params.h0, params.h0, n_samples)
        u0, v0 = init.sample(xs)
        end_tol = 1e-9 * max(float(np.max(np.abs(u0))), float(np.max(np.abs(v0))), 1e-300)
        ends_ok = (
            abs(float(u0[0])) <= end_tol
            and abs(float(u0[-1])) <= end_tol
            and abs(float(v0[0])) <= end_tol
            and abs(float(v0[-1])) <= end_tol
        )
        interior_ok = bool(np.all(u0[1:-1] > 0) and np.all(v0[1:-1] > 0))
        checks.append(
            AssumptionCheck(
                "A1: initial data",
                ends_ok and interior_ok,
                False,
                "u0, v0 vanish at +-h0 and are positive inside"
                if ends_ok and interior_ok
                else "endpoint zeros or interior positivity violated",
            )
        )

    # A2: f(0)=0, f'(0)>0 hold by construction; sampled monotone decay of
    # f(u)/u plus the closed-form asymptotic slope margin.
    f = params.growth
    ratios = np.asarray(f(us)) / us
    non_increasing = bool(np.all(np.diff(ratios) <= 1e-15 * np.abs(ratios[:-1]) + 1e-300))
    slope_cap = params.a11 * params.a22 / params.a12
    slope_ok = f.slope_at_infinity < slope_cap
    checks.append(
        AssumptionCheck(
            "A2: growth function",
            non_increasing and slope_ok,
            False,
            f"limit of f(u)/u is {f.slope_at_infinity:.6g}, bound a11*a22/a12 = {slope_cap:.6g}"
            + ("" if non_increasing else "; f(u)/u not non-increasing on samples"),
        )
    )

    # A3: G(0)=0, G'(0)>0 by construction; sampled 0 < G(u) <= u and
    # non-decreasing G.  The identity response violates the strict
    # G(u)/u < 1 bound and is flagged informationally as no-intervention.
    G = params.impulse
    gvals = np.asarray(G(us))
    g_monotone = bool(np.all(np.diff(gvals) >= -1e-15 * np.abs(gvals[:-1])))
    g_bounded = bool(np.all(gvals <= us * (1 + 1e-15)) and np.all(gvals > 0))
    identity_like = isinstance(G, IdentityImpulse) or (
        isinstance(G, LinearImpulse) and G.rho == 1.0
    )
    if identity_like:
        checks.append(
            AssumptionCheck(
                "A3: impulse function",
                False,
                True,
                "no-intervention mode: G(u)/u = 1 violates the strict bound",
            )
        )
    else:
        strict = bool(np.all(gvals < us))
        checks.append(
            AssumptionCheck(
                "A3: impulse function",
                g_monotone and g_bounded and strict,
                False,
                "0 < G(u) < u and G non-decreasing on samples"
                if g_monotone and g_bounded and strict
                else "sampled impulse shape condition violated",
            )
        )

    # A4: rho(u) >= rho'(0)u - H u^kappa at every sample, for both families.
    ok4 = True
    details = []
    for name, fn in (("f", f), ("G", G)):
        H, kappa = fn.lower_bound_constants()
        slope = fn.slope_at_zero
        defect = np.asarray(fn(us)) - (slope * us - H * us**kappa)
        good = bool(np.all(defect >= -1e-12 * np.maximum(us, 1.0)))
        ok4 = ok4 and good
        details.append(f"{name}: H={H:.6g}, kappa={kappa:g}, {'ok' if good else 'violated'}")
    checks.append(AssumptionCheck("A4: lower-bound constants", ok4, False, "; ".join(details)))

    return ValidationReport(checks=tuple(checks))


def density_bounds(params: ModelParams, init: InitialData | None = None) -> tuple[float, float]:
    """Uniform supersolution constants (C2, C3) dominating (u, v) for all time.

    Built from the decoupled balance f(M) < a11*a22/(a12+eps)*M with a margin;
    requires the asymptotic slope condition, otherwise no uniform bound exists.
    When ``init`` is given the constants also dominate the initial data.
    """
    slope_inf = params.growth.slope_at_infinity
    cap = params.a11 * params.a22 / params.a12
    if slope_inf >= cap:
        raise ConfigurationError(
            "no uniform density bound: lim f(u)/u must stay below a11*a22/a12"
        )
    if slope_inf > 0:
        eps = min(params.a12 / 2, (params.a11 * params.a22 / slope_inf - params.a12) / 2)
    else:
        eps = params.a12 / 2
    target = params.a11 * params.a22 / (params.a12 + eps)

    # smallest M with f(M)/M below the target, per family
    g = params.growth
    if isinstance(g, LinearGrowth):
        m_shape = 0.0 if g.p < target else math.inf
    else:
        m_shape = max(0.0, g.m / target - g.a)
    if not math.isfinite(m_shape):
        raise ConfigurationError("growth slope exceeds the sustainable decay balance")

    m_init = 0.0
    if init is not None:
        xs = np.linspace(-params.h0, params.h0, 513)
        u0, v0 = init.sample(xs)
        m_init = max(float(np.max(u0)), (params.a12 + eps) / params.a11 * float(np.max(v0)))

    M = 1.1 * max(m_shape, m_init, 1.0)
    return M, params.a11 * M / (params.a12 + eps)
