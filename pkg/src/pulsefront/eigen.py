"""Principal eigenvalues of the impulsive time-periodic linearization.

On a frozen interval of length L the linearized pair separates into
X(x) * (Phi(t), Psi(t)) with X the Dirichlet ground mode, lambda0 = (pi/L)^2,
and the temporal pair obeying

    (Phi, Psi)' = (lambda*I + B) (Phi, Psi),        B = [[-d1*lambda0 - a11, a12 ],
                                                         [f'(0), -d2*lambda0 - a22]]

on one period, with the reset (Phi, Psi)(0+) = (G'(0)*Phi(0), Psi(0)) and
periodicity.  Two independent routes compute the principal eigenvalue:

monodromy
    Periodicity forces exp(-lambda*tau) to be the Perron root of
    M = exp(B*tau) @ diag(G'(0), 1); B is cooperative, so M is entrywise
    positive and the root is simple with a positive eigenvector.  This is
    the production path.

closed form
    Expanding in the eigenmodes of B (eigenvalues c1 > c2, both independent
    of lambda after the shift kappa_i = lambda + c_i) turns the period and
    reset conditions into the intersection of two rational curves in the
    mode-mixing unknown k; the admissible intersection (k0, y0) with
    0 < k0 < n11/n12 and 1 <= y0 gives lambda = ln(y0)/tau - c1.  Kept as an
    exercised cross-check of the reduction machinery.

Both routes report the same normalized temporal profile, so the uniform
envelope constants of ``eigenfunction_envelope_bounds`` apply to either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import NumericalError, PreconditionError
from .model import ModelParams

__all__ = [
    "EigenReport",
    "RobinEigenReport",
    "dirichlet_lambda0",
    "principal_eigenvalue_monodromy",
    "principal_eigenvalue_closed_form",
    "lambda_at_h0",
    "lambda_infinity",
    "lambda_front",
    "eigenfunction_envelope_bounds",
    "robin_eigen",
]

PROFILE_SAMPLES = 201


@dataclass(frozen=True)
class EigenReport:
    """Principal eigenvalue with the reduction intermediates.

    lam             the eigenvalue (1/time); negative means supercritical
    method          "monodromy" or "closed-form"
    lambda0         Dirichlet spatial eigenvalue (pi/L)^2, 0 for the whole line
    c1, c2          lambda-independent shifts, the eigenvalues of B
    k0, y0          mode mixing and period multiplier e^{(lam+c1)tau}
    phi_psi_profile samples (t, Phi(t), Psi(t)) on [0, tau]; the t = 0 row is
                    the post-reset state, the t = tau row the periodic one
    monodromy_matrix, eigenvector
                    exp(B*tau) @ D and its Perron eigenvector (monodromy route)
    """

    lam: float
    method: str
    lambda0: float
    c1: float
    c2: float
    k0: float
    y0: float
    phi_psi_profile: np.ndarray
    monodromy_matrix: np.ndarray | None = None
    eigenvector: np.ndarray | None = None

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "method": self.method,
            "lambda0": self.lambda0,
            "c1": self.c1,
            "c2": self.c2,
            "k0": self.k0,
            "y0": self.y0,
        }


@dataclass(frozen=True)
class RobinEigenReport:
    """Principal eigenpair of d*phi'' + phi'/2 + mu*phi = 0, phi'(0)=phi(1)=0."""

    mu0: float
    beta0: float
    x: np.ndarray
    phi0: np.ndarray


def dirichlet_lambda0(interval_length: float) -> float:
    """Ground Dirichlet eigenvalue (pi/L)^2 of -d^2/dx^2 on an interval of length L."""
    if not (math.isfinite(interval_length) and interval_length > 0):
        raise PreconditionError(f"interval length must be finite and positive, got {interval_length}")
    return (math.pi / interval_length) ** 2


def _slopes(params: ModelParams) -> tuple[float, float]:
    fp0 = params.growth.slope_at_zero
    gp0 = params.impulse.slope_at_zero
    return fp0, gp0


def _shifts(params: ModelParams, lambda0: float) -> tuple[float, float]:
    """Eigenvalues c1 > c2 of the cooperative matrix B; always real and distinct."""
    fp0, _ = _slopes(params)
    s = params.a22 + (params.d2 - params.d1) * lambda0 - params.a11
    root = math.sqrt(s * s + 4.0 * params.a12 * fp0)
    base = -(params.d1 + params.d2) * lambda0 - params.a11 - params.a22
    return (base + root) / 2.0, (base - root) / 2.0


def _cooperative_matrix(params: ModelParams, lambda0: float) -> np.ndarray:
    fp0, _ = _slopes(params)
    return np.array(
        [
            [-params.d1 * lambda0 - params.a11, params.a12],
            [fp0, -params.d2 * lambda0 - params.a22],
        ]
    )


def _expm2(B: np.ndarray, c1: float, c2: float, t: float) -> np.ndarray:
    # Lagrange form of the 2x2 exponential; c1 != c2 is guaranteed because
    # the discriminant contains 4*a12*f'(0) > 0.
    I = np.eye(2)
    return (math.exp(c1 * t) * (B - c2 * I) - math.exp(c2 * t) * (B - c1 * I)) / (c1 - c2)


def _profile(params: ModelParams, lambda0: float, lam: float, k0: float) -> np.ndarray:
    """Sampled (t, Phi, Psi) on [0, tau] in the standard normalization.

    Phi(t) = [a12 e^{k1 t} - n12 k0 e^{k2 t}] / (a12 f'(0) + n12^2), with
    n12 = a11 + d1*lambda0 + c1 and Psi the matching second component.
    """
    fp0, _ = _slopes(params)
    c1, c2 = _shifts(params, lambda0)
    n12 = params.a11 + params.d1 * lambda0 + c1
    det = params.a12 * fp0 + n12 * n12
    k1, k2 = lam + c1, lam + c2
    t = np.linspace(0.0, params.tau, PROFILE_SAMPLES)
    e1, e2 = np.exp(k1 * t), np.exp(k2 * t)
    phi = (params.a12 * e1 - n12 * k0 * e2) / det
    psi = (fp0 * k0 * e2 + n12 * e1) / det
    return np.column_stack([t, phi, psi])


def principal_eigenvalue_monodromy(params: ModelParams, interval_length: float) -> EigenReport:
    """Perron-root route: lambda = -ln r(exp(B*tau) @ diag(G'(0), 1)) / tau.

    ``interval_length`` may be ``math.inf``, in which case lambda0 = 0 exactly
    (the whole-line value needs no numerical limit).
    """
    if interval_length != math.inf and not interval_length > 0:
        raise PreconditionError(f"interval length must be positive or inf, got {interval_length}")
    lambda0 = 0.0 if interval_length == math.inf else dirichlet_lambda0(interval_length)

    fp0, gp0 = _slopes(params)
    if not gp0 > 0:
        raise PreconditionError("impulse slope G'(0) must be positive")
    B = _cooperative_matrix(params, lambda0)
    c1, c2 = _shifts(params, lambda0)
    M = _expm2(B, c1, c2, params.tau) @ np.diag([gp0, 1.0])
    tr = M[0, 0] + M[1, 1]
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    r = (tr + math.sqrt(tr * tr - 4.0 * det)) / 2.0
    lam = -math.log(r) / params.tau
    vec = np.array([M[0, 1], r - M[0, 0]])
    vec = vec / np.max(vec)

    # express the eigenpair in the closed-form parameterization for the report
    n12 = params.a11 + params.d1 * lambda0 + c1
    E = math.exp((c2 - c1) * params.tau)
    y0 = math.exp((lam + c1) * params.tau)
    if abs(1.0 - y0) < 1e-14:  # identity-slope reset: constant-in-time mode
        k0, y0 = 0.0, 1.0
    else:
        k0 = n12 * (y0 - 1.0) / (fp0 - fp0 * E * y0)
    return EigenReport(
        lam=lam,
        method="monodromy",
        lambda0=lambda0,
        c1=c1,
        c2=c2,
        k0=k0,
        y0=y0,
        phi_psi_profile=_profile(params, lambda0, lam, k0),
        monodromy_matrix=M,
        eigenvector=vec,
    )


def principal_eigenvalue_closed_form(params: ModelParams, interval_length: float) -> EigenReport:
    """Rational-curve intersection route on a finite interval.

    Bisects F(k) = (n11 - n12 k)/(n13 - n23 k) - (n12 + n21 k)/(n12 + n22 k)
    on the positivity window (0, (n11 - eps0)/n12), where a sign change is
    guaranteed; the bracket is shrunk to floating-point exhaustion so the
    cross-route agreement is limited only by conditioning, not by a stopping
    tolerance.
    """
    if not (math.isfinite(interval_length) and interval_length > 0):
        raise PreconditionError("closed-form route needs a finite positive interval length")
    fp0, gp0 = _slopes(params)
    if not (0.0 < gp0 <= 1.0):
        raise PreconditionError(f"closed-form route needs G'(0) in (0, 1], got {gp0}")

    lambda0 = dirichlet_lambda0(interval_length)
    c1, c2 = _shifts(params, lambda0)
    tau = params.tau
    E = math.exp((c2 - c1) * tau)

    n11 = params.a12
    n12 = params.a11 + params.d1 * lambda0 + c1
    n13 = gp0 * params.a12
    n21 = fp0
    n22 = fp0 * E
    n23 = gp0 * n12 * E

    if gp0 == 1.0:
        # the curves intersect at the window corner: constant-in-time mode
        k0, y0 = 0.0, 1.0
    else:

        def F(k: float) -> float:
            return (n11 - n12 * k) / (n13 - n23 * k) - (n12 + n21 * k) / (n12 + n22 * k)

        eps0 = min(n11 / 2.0, n11 * gp0 * (1.0 - math.exp(-2.0 * math.sqrt(params.a12 * fp0) * tau)))
        lo, hi = 0.0, (n11 - eps0) / n12
        flo, fhi = F(lo), F(hi)
        if not (flo > 0.0 and fhi < 0.0):
            raise NumericalError(
                "no admissible intersection in the positivity window "
                f"(F({lo:.3g})={flo:.3g}, F({hi:.3g})={fhi:.3g}); "
                "parameters outside the reduction's regime"
            )
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if not (lo < mid < hi):
                break
            if F(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        k0 = 0.5 * (lo + hi)
        y0 = (n12 + n21 * k0) / (n12 + n22 * k0)

    lam = math.log(y0) / tau - c1
    return EigenReport(
        lam=lam,
        method="closed-form",
        lambda0=lambda0,
        c1=c1,
        c2=c2,
        k0=k0,
        y0=y0,
        phi_psi_profile=_profile(params, lambda0, lam, k0),
    )


def lambda_at_h0(params: ModelParams) -> EigenReport:
    """Eigenvalue on the initial interval (-h0, h0)."""
    return principal_eigenvalue_monodromy(params, 2.0 * params.h0)


def lambda_infinity(params: ModelParams) -> EigenReport:
    """Whole-line eigenvalue, lambda0 = 0 exactly."""
    return principal_eigenvalue_monodromy(params, math.inf)


def lambda_front(params: ModelParams, g: float, h: float) -> EigenReport:
    """Eigenvalue on the current front interval (g, h); depends on h - g only."""
    if not g < h:
        raise PreconditionError(f"front interval needs g < h, got g={g}, h={h}")
    return principal_eigenvalue_monodromy(params, h - g)


def eigenfunction_envelope_bounds(params: ModelParams) -> tuple[float, float, float, float]:
    """Width-uniform envelope constants (alpha1, alpha2, beta1, beta2).

    For every interval at least as wide as the initial one, the normalized
    temporal profile satisfies alpha1 <= Phi(0), Phi(t) <= alpha2,
    beta1 <= Psi(0), Psi(t) <= beta2 on [0, tau].  All four are explicit in
    the coefficients and the initial-width spatial eigenvalue.
    """
    fp0, gp0 = _slopes(params)
    if not (0.0 < gp0 <= 1.0):
        raise PreconditionError("envelope bounds need G'(0) in (0, 1]")
    lam0_h0 = dirichlet_lambda0(2.0 * params.h0)
    root = math.sqrt(params.a12 * fp0)
    spread = 2.0 * root + params.a11 + params.a22 + (params.d1 + params.d2) * lam0_h0
    alpha2 = math.exp(spread * params.tau) / fp0
    beta2 = fp0 * alpha2 / params.a11
    q = params.a11 + params.a22 + (params.d1 + params.d2) * lam0_h0 + root
    denom = params.a12 * fp0 + q * q
    eps0 = min(params.a12 / 2.0, params.a12 * gp0 * (1.0 - math.exp(-2.0 * root * params.tau)))
    alpha1 = eps0 / denom
    beta1 = params.a11 / denom
    return alpha1, alpha2, beta1, beta2


def robin_eigen(d: float, nodes: int = 1001) -> RobinEigenReport:
    """Principal eigenpair of d*phi'' + phi'/2 + mu*phi = 0 with phi'(0)=phi(1)=0.

    With alpha = -1/(4d), the eigenvalue condition is tan(beta) = beta/alpha;
    the minimal positive root sits in (pi/2, pi) and yields the positive,
    strictly decreasing eigenfunction
    phi(x) = -e^{alpha x} sqrt(alpha^2 + beta0^2) sin(beta0 (x - 1)),
    returned sup-normalized.  mu0 follows from beta0 = sqrt(4 d mu0 - 1/4)/(2d).
    """
    if not d > 0:
        raise PreconditionError(f"diffusion coefficient must be positive, got d={d}")
    alpha = -1.0 / (4.0 * d)

    def crossing(beta: float) -> float:
        # tan(beta) = beta/alpha restated without the tangent pole
        return alpha * math.sin(beta) - beta * math.cos(beta)

    try:
        beta0 = brentq(crossing, math.pi / 2 + 1e-12, math.pi - 1e-12, xtol=1e-15, rtol=1e-15)
    except ValueError as exc:  # pragma: no cover - bracket is analytic
        raise NumericalError(f"eigenfrequency bracket failed for d={d}") from exc
    mu0 = d * beta0 * beta0 + 1.0 / (16.0 * d)

    x = np.linspace(0.0, 1.0, nodes)
    amp = math.sqrt(alpha * alpha + beta0 * beta0)
    phi = -np.exp(alpha * x) * amp * np.sin(beta0 * (x - 1.0))
    # phi is strictly decreasing, so the sup-norm is attained at x = 0
    phi0 = phi / phi[0]
    return RobinEigenReport(mu0=mu0, beta0=beta0, x=x, phi0=phi0)
