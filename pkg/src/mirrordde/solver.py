"""Closed-form solutions of the mirrored-time model and a numerical oracle.

The homogeneous model p'(t) = a p(-t) + b p(t) behaves like a second-order
equation in disguise: differentiating once and substituting the mirrored
relation gives p'' = (b**2 - a**2) p.  The sign of the discriminant
b**2 - a**2 therefore selects the character of the solution:

* exponential (b**2 > a**2): with r = sqrt(b**2 - a**2),

      p(t) = (p0 / 2r) * [(r + a + b) e^{rt} + (r - a - b) e^{-rt}]
           = p0 * (cosh(rt) + ((a + b)/r) sinh(rt)),

* degenerate (b**2 = a**2): the r -> 0 limit, p(t) = p0 (1 + (a + b) t),

* oscillatory (b**2 < a**2): with w = sqrt(a**2 - b**2),

      p(t) = p0 cos(wt) + p0 ((a + b)/w) sin(wt),

  which solves the equation but describes an influence that keeps changing
  sign, so it is flagged infeasible for the modelling domain.

All branches satisfy p(0) = p0 and p'(0) = (a + b) p0.

The oracle integrates the equivalent mirror system u' = b u + a v,
v' = -(b v + a u) with u(0) = v(0) = p0, where u(t) = p(t) and v(t) = p(-t);
it shares no code path with the closed forms beyond elementary arithmetic.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .core import (
    DEGENERACY_RTOL,
    ControlConfig,
    DdeParams,
    EtaArticleBased,
    EtaTimeExponential,
    Regime,
    RegimeTag,
    ThetaConstant,
    ThetaExponential,
    ThetaLinear,
)
from .errors import (
    NegativeInfluenceWarning,
    NonFiniteValue,
    OutOfRange,
    ResonantForcing,
    WrongRegime,
    ZeroCoefficient,
)
from .numerics import rk4_integrate, solve_2x2

#: Relative tolerance for the resonance guard on forcing rates.
RESONANCE_RTOL = 1e-12


def classify(params: DdeParams) -> Regime:
    """Classify a parameter pair by the sign of b**2 - a**2.

    The degenerate band |b**2 - a**2| <= 1e-12 * max(1, b**2 + a**2) absorbs
    rounding noise around the boundary; inside it r is reported as the tiny
    sqrt(|b**2 - a**2|) (exactly 0 when a = +-b exactly).
    """
    disc = params.discriminant
    tol = DEGENERACY_RTOL * max(1.0, params.b * params.b + params.a * params.a)
    r = math.sqrt(abs(disc))
    if abs(disc) <= tol:
        return Regime(tag=RegimeTag.DEGENERATE, r=r)
    if disc > 0.0:
        return Regime(tag=RegimeTag.EXPONENTIAL, r=r)
    return Regime(tag=RegimeTag.OSCILLATORY, r=r)


def _require_exponential(params: DdeParams, what: str) -> Regime:
    regime = classify(params)
    if regime.tag is not RegimeTag.EXPONENTIAL:
        raise WrongRegime(
            f"{what} requires the exponential regime (b**2 > a**2); "
            f"a={params.a!r}, b={params.b!r} is {regime.tag.value}"
        )
    return regime


def base_solution(params: DdeParams, t: float) -> float:
    """Homogeneous solution in the exponential regime.

    Evaluates p0 * (cosh(rt) + ((a+b)/r) sinh(rt)), the hyperbolic form of
    the two-mode solution; at t=0 this returns p0 exactly.  Raises
    :class:`WrongRegime` outside the exponential regime.
    """
    regime = _require_exponential(params, "base_solution")
    r = regime.r
    rt = r * t
    return params.p0 * (math.cosh(rt) + ((params.a + params.b) / r) * math.sinh(rt))


def degenerate_solution(params: DdeParams, t: float) -> float:
    """Boundary-case solution p0 * (1 + (a+b) t), the r -> 0 limit."""
    regime = classify(params)
    if regime.tag is not RegimeTag.DEGENERATE:
        raise WrongRegime(
            f"degenerate_solution requires b**2 = a**2; "
            f"a={params.a!r}, b={params.b!r} is {regime.tag.value}"
        )
    return params.p0 * (1.0 + (params.a + params.b) * t)


class OscillatoryValue(NamedTuple):
    """Value of the sign-changing branch plus its standing infeasibility flag."""

    value: float
    infeasible: bool


def oscillatory_solution(params: DdeParams, t: float) -> OscillatoryValue:
    """Oscillatory-branch value p0 cos(wt) + p0 ((a+b)/w) sin(wt).

    The returned flag is always True: a solution that oscillates through
    zero cannot describe a journal's influence, which is non-negative by
    nature.  The value is still computed so the branch can be inspected.
    """
    regime = classify(params)
    if regime.tag is not RegimeTag.OSCILLATORY:
        raise WrongRegime(
            f"oscillatory_solution requires b**2 < a**2; "
            f"a={params.a!r}, b={params.b!r} is {regime.tag.value}"
        )
    w = regime.r
    wt = w * t
    value = params.p0 * (math.cos(wt) + ((params.a + params.b) / w) * math.sin(wt))
    return OscillatoryValue(value=value, infeasible=True)


class GrowthKind(enum.Enum):
    EXPONENTIAL = "exponential"
    LINEAR = "linear"


class NonsymmetricValue(NamedTuple):
    value: float
    kind: GrowthKind


def nonsymmetric_solution(a_c: float, b_c: float, c_c: float,
                          p0: float, t: float) -> NonsymmetricValue:
    """Solution of the plain first-order model a_c * p' = b_c + c_c * p.

    For c_c != 0 the solution is the saturating/growing exponential

        p(t) = -b_c/c_c + (p0 + b_c/c_c) e^{(c_c/a_c) t},

    and for c_c = 0 it degrades gracefully to the linear ramp
    p0 + (b_c/a_c) t.  ``a_c = 0`` leaves no derivative to solve for and
    raises :class:`ZeroCoefficient`.
    """
    for name, v in (("a_c", a_c), ("b_c", b_c), ("c_c", c_c),
                    ("p0", p0), ("t", t)):
        if not math.isfinite(v):
            raise NonFiniteValue(f"{name} must be finite, got {v!r}")
    if a_c == 0.0:
        raise ZeroCoefficient("a_c must be nonzero in a_c * p' = b_c + c_c * p")
    if c_c == 0.0:
        return NonsymmetricValue(value=p0 + (b_c / a_c) * t,
                                 kind=GrowthKind.LINEAR)
    shift = b_c / c_c
    value = -shift + (p0 + shift) * math.exp((c_c / a_c) * t)
    return NonsymmetricValue(value=value, kind=GrowthKind.EXPONENTIAL)


def linear_growth_solution(a_c: float, b_c: float, c_c: float,
                           p0: float, t: float) -> float:
    """First-order (in time) picture of the nonsymmetric model's early growth.

    Expanding the exponential branch to first order around t=0 gives the
    straight line p0 + (b_c/a_c + (c_c/a_c) p0) t, exact when c_c = 0.
    """
    for name, v in (("a_c", a_c), ("b_c", b_c), ("c_c", c_c),
                    ("p0", p0), ("t", t)):
        if not math.isfinite(v):
            raise NonFiniteValue(f"{name} must be finite, got {v!r}")
    if a_c == 0.0:
        raise ZeroCoefficient("a_c must be nonzero in a_c * p' = b_c + c_c * p")
    return p0 + (b_c / a_c + (c_c / a_c) * p0) * t


# ---------------------------------------------------------------------------
# forced (controlled) solutions
# ---------------------------------------------------------------------------

def _check_resonance(params: DdeParams, config: ControlConfig) -> None:
    """Reject forcing rates whose square hits the discriminant b**2 - a**2.

    At such a rate the assumed particular form collapses onto a homogeneous
    mode and its coefficient would divide by zero.
    """
    disc = params.discriminant

    def resonant(rate: float) -> bool:
        gap = rate * rate - disc
        return abs(gap) <= RESONANCE_RTOL * max(1.0, rate * rate, abs(disc))

    theta = config.theta
    if isinstance(theta, ThetaExponential) and resonant(theta.rate):
        raise ResonantForcing(
            f"theta rate {theta.rate!r} squared coincides with "
            f"b**2 - a**2 = {disc!r}"
        )
    eta = config.eta
    if isinstance(eta, EtaTimeExponential) and resonant(eta.k1):
        raise ResonantForcing(
            f"eta rate {eta.k1!r} squared coincides with "
            f"b**2 - a**2 = {disc!r}"
        )


def _theta_particular(theta, params: DdeParams, t: float) -> float:
    a, b = params.a, params.b
    if isinstance(theta, ThetaConstant):
        return theta.value / (a - b)
    if isinstance(theta, ThetaLinear):
        return (theta.slope * t + theta.intercept) / (a - b)
    if isinstance(theta, ThetaExponential):
        A = theta.rate
        return (a + b) * math.exp(A * t) / (A * A - params.discriminant)
    raise TypeError(f"unsupported theta term: {theta!r}")


def _theta_particular_deriv(theta, params: DdeParams, t: float) -> float:
    a, b = params.a, params.b
    if isinstance(theta, ThetaConstant):
        return 0.0
    if isinstance(theta, ThetaLinear):
        return theta.slope / (a - b)
    if isinstance(theta, ThetaExponential):
        A = theta.rate
        return A * (a + b) * math.exp(A * t) / (A * A - params.discriminant)
    raise TypeError(f"unsupported theta term: {theta!r}")


def _theta_at_zero(theta) -> float:
    """theta(0), as it enters the first-order slope p'(0)."""
    if isinstance(theta, ThetaConstant):
        return theta.value
    if isinstance(theta, ThetaLinear):
        return theta.intercept
    if isinstance(theta, ThetaExponential):
        return 1.0
    raise TypeError(f"unsupported theta term: {theta!r}")


def _eta_particular(eta, params: DdeParams, t: float) -> float:
    if eta is None:
        return 0.0
    if isinstance(eta, EtaArticleBased):
        value = eta_article(eta.art, eta.alpha, params)
        return value / (params.a - params.b)
    if isinstance(eta, EtaTimeExponential):
        k, k1 = eta.k, eta.k1
        return k * math.exp(k1 * t) / (k1 * k1 - params.discriminant)
    raise TypeError(f"unsupported eta term: {eta!r}")


def _eta_particular_deriv(eta, params: DdeParams, t: float) -> float:
    if eta is None or isinstance(eta, EtaArticleBased):
        return 0.0
    if isinstance(eta, EtaTimeExponential):
        k, k1 = eta.k, eta.k1
        return k1 * k * math.exp(k1 * t) / (k1 * k1 - params.discriminant)
    raise TypeError(f"unsupported eta term: {eta!r}")


def _eta_at_zero(eta, params: DdeParams) -> float:
    """eta(0), as it enters the first-order slope p'(0).

    For the time-exponential pulse k e^{k1 t} the relevant first-order
    contribution is k/(a+b): the pulse enters the slope through the same
    (a+b) factor that scales the homogeneous slope, so dividing it out here
    keeps p'(0) = (a+b) p0 + theta(0) + eta(0) uniform across terms.
    """
    if eta is None:
        return 0.0
    if isinstance(eta, EtaArticleBased):
        return eta_article(eta.art, eta.alpha, params)
    if isinstance(eta, EtaTimeExponential):
        return eta.k / (params.a + params.b)
    raise TypeError(f"unsupported eta term: {eta!r}")


def eta_article(art: float, alpha: float, params: DdeParams) -> float:
    """Article-share external influence: exp(-art) + alpha * (a - b).

    ``art`` is the accepted-article fraction and must lie in [0, 1].
    """
    if not math.isfinite(art):
        raise NonFiniteValue(f"art must be finite, got {art!r}")
    if not math.isfinite(alpha):
        raise NonFiniteValue(f"alpha must be finite, got {alpha!r}")
    if not 0.0 <= art <= 1.0:
        raise OutOfRange(f"art must lie in [0, 1], got {art!r}")
    return math.exp(-art) + alpha * (params.a - params.b)


def control_solution(params: DdeParams, config: ControlConfig,
                     c1: float, c2: float, t: float) -> float:
    """Forced solution c1 e^{rt} + c2 e^{-rt} + particular terms.

    ``c1`` and ``c2`` are the homogeneous amplitudes (see
    :func:`initial_conditions_to_modes` for the pair matching given initial
    conditions).  Only defined in the exponential regime; resonant forcing
    rates raise before any evaluation.  If the assembled solution is
    negative at t=0, a :class:`NegativeInfluenceWarning` is emitted — the
    value is still returned.
    """
    for name, v in (("c1", c1), ("c2", c2), ("t", t)):
        if not math.isfinite(v):
            raise NonFiniteValue(f"{name} must be finite, got {v!r}")
    regime = _require_exponential(params, "control_solution")
    _check_resonance(params, config)
    r = regime.r

    def particular(at: float) -> float:
        return (_theta_particular(config.theta, params, at)
                + _eta_particular(config.eta, params, at))

    p_zero = c1 + c2 + particular(0.0)
    if p_zero < 0.0:
        warnings.warn(
            f"influence at t=0 is negative ({p_zero!r})",
            NegativeInfluenceWarning,
            stacklevel=2,
        )
    return c1 * math.exp(r * t) + c2 * math.exp(-r * t) + particular(t)


def initial_conditions_to_modes(params: DdeParams,
                                config: ControlConfig) -> tuple[float, float]:
    """Homogeneous amplitudes (c1, c2) matching the model's own initial data.

    The full solution must satisfy p(0) = p0 and the first-order slope
    p'(0) = (a+b) p0 + theta(0) + eta(0).  Subtracting the particular part
    P and its derivative at 0 leaves the 2x2 system

        c1 + c2       = p0    - P(0)
        r (c1 - c2)   = p'(0) - P'(0)

    solved here directly.  With no forcing this reproduces the two-mode
    amplitudes of the homogeneous solution, (p0/2r)(r + a + b) and
    (p0/2r)(r - a - b).
    """
    regime = _require_exponential(params, "initial_conditions_to_modes")
    _check_resonance(params, config)
    r = regime.r

    part0 = (_theta_particular(config.theta, params, 0.0)
             + _eta_particular(config.eta, params, 0.0))
    part0_d = (_theta_particular_deriv(config.theta, params, 0.0)
               + _eta_particular_deriv(config.eta, params, 0.0))
    slope0 = ((params.a + params.b) * params.p0
              + _theta_at_zero(config.theta)
              + _eta_at_zero(config.eta, params))
    return solve_2x2(1.0, 1.0, r, -r,
                     params.p0 - part0, slope0 - part0_d)


# ---------------------------------------------------------------------------
# numerical oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolutionSample:
    """One (t, p) sample of a trajectory."""

    t: float
    p: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and math.isfinite(self.p)):
            raise NonFiniteValue(
                f"sample ({self.t!r}, {self.p!r}) is not finite"
            )


def oracle_solution(params: DdeParams, t_max: float,
                    step: float) -> list[SolutionSample]:
    """Runge-Kutta reference trajectory on the symmetric window [-t_max, t_max].

    Integrates the mirror system u' = b u + a v, v' = -(b v + a u) with
    u(0) = v(0) = p0 forward to t_max; u(t) reproduces p(t) and v(t)
    reproduces p(-t), so one forward integration covers the whole window.
    Returns samples ordered by time with a single entry at t=0.
    """
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise ValueError(f"t_max must be positive, got {t_max!r}")
    a, b = params.a, params.b

    def rhs(y):
        u, v = y
        return (b * u + a * v, -(b * v + a * u))

    trajectory = rk4_integrate(rhs, (params.p0, params.p0), t_max, step)
    negatives = [SolutionSample(t=-t, p=state[1])
                 for t, state in trajectory[1:]]
    negatives.reverse()
    positives = [SolutionSample(t=t, p=state[0]) for t, state in trajectory]
    return negatives + positives
