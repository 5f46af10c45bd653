"""
Analytic bounds module.

Evaluates f_{s,t}(x) = 1 - x - [1 - (1 - x)/(s - t)]^t, locates its unique root
q_{s,t} in (0, 1) by certified bisection, checks the (6/7)(t/s) < q <= t/s
sandwich, expands p(x) = u^t f_{s,t}(x) over the integers and scans the ratio
q_{s,t}/(t/s).
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from pydantic import ValidationError
from scipy.optimize import brentq, minimize_scalar

from app.core.config import settings
from app.core.exceptions import (
    DomainError,
    InvalidParametersError,
    UnsupportedParametersError,
)
from app.schemas.bounds import (
    LEMMA_CONSTANT,
    BoundParams,
    IntPolynomial,
    LemmaBounds,
    LemmaCheck,
    QValue,
    RatioEntry,
    RatioReport,
    RootCertificate,
)

logger = logging.getLogger(__name__)

# Absolute float error of f per unit of t; below this the sign is decided exactly.
_ROUNDING_GUARD = 1e-14

# Bracket for the golden-section search on the limit curve; r(0.6) < r(0.05), r(0.95).
_LIMIT_BRACKET = (0.05, 0.6, 0.95)


def make_params(s: int, t: int) -> BoundParams:
    """
    Build validated bound parameters.

    Raises:
        InvalidParametersError: unless s > t > 0
    """
    try:
        return BoundParams(s=s, t=t)
    except ValidationError as e:
        logger.error(f"Invalid bound parameters s={s}, t={t}")
        raise InvalidParametersError(f"require integers s > t > 0, got s={s}, t={t}") from e


def _as_params(params: Union[BoundParams, Tuple[int, int]]) -> BoundParams:
    if isinstance(params, BoundParams):
        return params
    s, t = params
    return make_params(s, t)


def _f(params: BoundParams, x: float) -> float:
    return 1.0 - x - (1.0 - (1.0 - x) / params.u) ** params.t


def _exact_p(params: BoundParams, x: Fraction) -> Fraction:
    u, t = params.u, params.t
    return u ** t * (1 - x) - (u - 1 + x) ** t


def _sign_of_f(params: BoundParams, x: float) -> int:
    value = _f(params, x)
    if abs(value) > _ROUNDING_GUARD * (params.t + 2):
        return 1 if value > 0 else -1
    # p = u^t f has the same sign as f
    exact = _exact_p(params, Fraction(x))
    return (exact > 0) - (exact < 0)


def eval_f(params: Union[BoundParams, Tuple[int, int]], x: float) -> float:
    """
    Evaluate f_{s,t}(x) in floating point.

    Args:
        params: list sizes (s, t)
        x: a point of [0, 1]; points outside are rejected, not extrapolated

    Returns:
        float: 1 - x - (1 - (1 - x)/u)^t
    """
    params = _as_params(params)
    if not (0.0 <= x <= 1.0):
        raise InvalidParametersError(f"x must lie in [0, 1], got {x}")
    return _f(params, x)


def compute_q(
    params: Union[BoundParams, Tuple[int, int]],
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> QValue:
    """
    Find q_{s,t} by bisection on [0, 1].

    f is strictly decreasing with f(0) > 0 > f(1), so bisection keeps an exact
    sign bracket. Sign decisions whose float value is within rounding error of
    zero are settled with exact rational arithmetic on p(x) = u^t f(x).

    Args:
        params: list sizes (s, t)
        tol: bracket width to reach (defaults to settings.ROOT_TOL)
        max_iter: iteration cap (defaults to settings.ROOT_MAX_ITER)

    Returns:
        QValue: midpoint of the final bracket, the bracket and f at the midpoint
    """
    params = _as_params(params)
    tol = settings.ROOT_TOL if tol is None else tol
    max_iter = settings.ROOT_MAX_ITER if max_iter is None else max_iter
    if not tol > 0:
        raise InvalidParametersError(f"tol must be positive, got {tol}")

    lo, hi = 0.0, 1.0
    iterations = 0
    while iterations < max_iter and hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # float resolution reached before tol
            break
        if _sign_of_f(params, mid) >= 0:
            lo = mid
        else:
            hi = mid
        iterations += 1

    q = 0.5 * (lo + hi)
    result = QValue(
        params=params,
        q=q,
        bracket_lo=lo,
        bracket_hi=hi,
        residual=_f(params, q),
        iterations=iterations,
    )
    logger.debug(f"q_{{{params.s},{params.t}}} = {q:.12f} after {iterations} steps")
    return result


def check_lemma_bounds(params: Union[BoundParams, Tuple[int, int]]) -> LemmaBounds:
    """
    Check (6/7)(t/s) < q_{s,t} <= t/s.

    The upper bound is attained when t = 1 (q_{s,1} = 1/s), so it is tested up
    to the width of the root bracket.
    """
    params = _as_params(params)
    qv = compute_q(params, tol=1e-12)
    lower = float(LEMMA_CONSTANT) * params.v
    upper = params.v
    ok = qv.q > lower and qv.q <= upper + qv.width
    return LemmaBounds(
        params=params,
        q=qv.q,
        lower=lower,
        upper=upper,
        f_at_upper=_f(params, upper),
        ok=ok,
    )


def exp_bound_gap(params: Union[BoundParams, Tuple[int, int]]) -> Tuple[float, float]:
    """
    Return (f(cv), 1 - cv - exp(-v(1 - cv)/(1 - v))) with c = 6/7, v = t/s.

    The second value is a lower bound for the first, positive exactly when g(v) > 0.
    """
    params = _as_params(params)
    v = params.v
    cv = float(LEMMA_CONSTANT) * v
    gap = 1.0 - cv - math.exp(-v * (1.0 - cv) / (1.0 - v))
    return _f(params, cv), gap


def eval_g(v: float) -> LemmaCheck:
    """g(v) = ln(1 - cv) + v(1 - cv)/(1 - v) for 0 < v < 1."""
    if not (0.0 < v < 1.0):
        raise DomainError(f"g is defined for 0 < v < 1, got {v}")
    cv = float(LEMMA_CONSTANT) * v
    g_value = math.log1p(-cv) + v * (1.0 - cv) / (1.0 - v)
    return LemmaCheck(v=v, g_value=g_value)


def poly_coeffs(params: Union[BoundParams, Tuple[int, int]]) -> IntPolynomial:
    """
    Expand p(x) = u^t (1 - x) - (u - 1 + x)^t with exact integers.

    Args:
        params: list sizes with t > 1

    Returns:
        IntPolynomial: coefficients of x^0..x^t; the x^t coefficient is -1

    Raises:
        UnsupportedParametersError: if t <= 1
    """
    params = _as_params(params)
    u, t = params.u, params.t
    if t <= 1:
        raise UnsupportedParametersError(f"p(x) is only examined for t > 1, got t={t}")

    # (u - 1 + x)^t = sum_k C(t, k) (u - 1)^(t - k) x^k; Python gives 0 ** 0 == 1
    coefficients = [-math.comb(t, k) * (u - 1) ** (t - k) for k in range(t + 1)]
    coefficients[0] += u ** t
    coefficients[1] -= u ** t
    return IntPolynomial(coefficients=coefficients)


def root_certificate(qvalue: QValue) -> RootCertificate:
    """Evaluate p(x) exactly at both ends of the bracket of qvalue."""
    polynomial = poly_coeffs(qvalue.params)
    p_lo = polynomial.evaluate(Fraction(qvalue.bracket_lo))
    p_hi = polynomial.evaluate(Fraction(qvalue.bracket_hi))
    return RootCertificate(
        params=qvalue.params,
        polynomial=polynomial,
        lo=qvalue.bracket_lo,
        hi=qvalue.bracket_hi,
        p_lo_sign=(p_lo > 0) - (p_lo < 0),
        p_hi_sign=(p_hi > 0) - (p_hi < 0),
    )


def _ratio_row(s: int) -> List[RatioEntry]:
    row = []
    for t in range(1, s):
        qv = compute_q(BoundParams(s=s, t=t))
        row.append(RatioEntry(s=s, t=t, q=qv.q, ratio=qv.q * s / t))
    return row


def limit_root(v: float) -> float:
    """Unique w in (0, 1) with ln w = -v w/(1 - v)."""
    if not (0.0 < v < 1.0):
        raise DomainError(f"limit curve is defined for 0 < v < 1, got {v}")
    k = v / (1.0 - v)
    return brentq(lambda w: math.log(w) + k * w, 1e-300, 1.0, xtol=1e-15)


def limit_ratio(v: float) -> float:
    """r(v) = (1 - w(v))/v, the s -> infinity limit of q_{s,t}/(t/s) with t/s = v."""
    return (1.0 - limit_root(v)) / v


def ratio_scan(s_max: int, workers: Optional[int] = None) -> RatioReport:
    """
    Scan q_{s,t}/(t/s) over 0 < t < s <= s_max and minimise the limit curve.

    Args:
        s_max: largest s on the grid (at least 3)
        workers: process pool size; 1 computes in-process

    Returns:
        RatioReport: grid rows, grid minimum and the golden-section minimum of r(v)
    """
    if s_max < 3:
        raise InvalidParametersError(f"s_max must be at least 3, got {s_max}")
    workers = settings.MAX_WORKERS if workers is None else workers

    s_values = range(2, s_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_ratio_row, s_values))
    else:
        rows = [_ratio_row(s) for s in s_values]
    grid = [entry for row in rows for entry in row]
    argmin = min(grid, key=lambda entry: entry.ratio)

    res = minimize_scalar(
        limit_ratio,
        bracket=_LIMIT_BRACKET,
        method="golden",
        options={"xtol": 1e-9},
    )
    logger.info(
        f"Ratio scan to s={s_max}: grid min {argmin.ratio:.10f} at "
        f"(s={argmin.s}, t={argmin.t}), limit min {res.fun:.10f} at v={res.x:.6f}"
    )
    return RatioReport(
        s_max=s_max,
        grid=grid,
        grid_min=argmin.ratio,
        grid_argmin=argmin,
        limit_min=float(res.fun),
        limit_argmin_v=float(res.x),
    )
