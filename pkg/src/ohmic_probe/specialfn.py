"""Real-argument Euler gamma function.

Lanczos approximation (g = 7, nine coefficients) for x >= 0.5 and the
reflection formula below that, so negative non-integer arguments work.
"""
import math

from .errors import DomainError, PoleError

POLE_RADIUS = 1e-12

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _sinpi(x: float) -> float:
    # reduce exactly to [-1, 1] first so sin(pi*x) keeps relative accuracy near integers
    r = x - 2.0 * round(0.5 * x)
    return math.sin(math.pi * r)


def _lanczos(x: float) -> float:
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return math.exp(_HALF_LOG_2PI + (z + 0.5) * math.log(t) - t) * acc


def gamma_euler(x: float) -> float:
    """Euler gamma function, analytically continued to negative non-integers.

    Raises PoleError within 1e-12 of 0, -1, -2, ...
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"gamma_euler needs a finite argument, got {x!r}")
    nearest = round(x)
    if nearest <= 0 and abs(x - nearest) < POLE_RADIUS:
        raise PoleError(f"gamma_euler pole at x={x!r}")
    if x == nearest and 1 <= x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (_sinpi(x) * _lanczos(1.0 - x))
    return _lanczos(x)
