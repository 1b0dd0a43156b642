"""Entropy exponents, log-binomials and the binomial sandwich.

All exponents are in bits.  ``h_exponent`` is the limiting value of
``log2 |class(n, c)| / C(n, 2)`` for the induced-C5-free, perfect and
generalised split classes; ``r_rate`` is the saving per pair obtained when
both sides of a medium-density pair contain many induced P3 or anti-P3.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

EXACT_BINOMIAL_LIMIT = 10_000


class AdmissibilityWarning(UserWarning):
    """A formula was evaluated outside the interval where it is meaningful."""


@dataclass(frozen=True)
class ExponentReport:
    c: float
    value: float
    formula_id: str


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy needs 0 <= x <= 1, got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _open_unit(c, name: str) -> None:
    if not 0 < c < 1:
        raise ValueError(f"{name} is defined for 0 < c < 1, got {c}")


def h_exponent(c: float) -> float:
    _open_unit(c, "h")
    if c < 0.25:
        return binary_entropy(2 * c) / 2
    if c <= 0.75:
        return 0.5
    return binary_entropy(2 * c - 1) / 2


def _quartic(x):
    return x**4 * (1 - x) ** 4


def r_rate(c):
    """Piecewise ``R(.)/72`` with ``R(x) = x^4 (1-x)^4``.

    Rational input (``Fraction``/``int``) gives an exact ``Fraction``.
    """
    _open_unit(c, "r")
    if isinstance(c, Rational):
        c = Fraction(c)
        quarter = Fraction(1, 4)
        if c < quarter:
            inner = _quartic(2 * c)
        elif c <= 3 * quarter:
            inner = quarter**4
        else:
            inner = _quartic(2 * c - 1)
        return inner / 72
    if c < 0.25:
        inner = _quartic(2 * c)
    elif c <= 0.75:
        inner = 0.25**4
    else:
        inner = _quartic(2 * c - 1)
    return inner / 72


def h_minus_r(c: float) -> float:
    return h_exponent(c) - float(r_rate(c))


def subgraph_exponent(r: int, c: float) -> float:
    """``(r-2)/(r-1) * H(c (r-1)/(r-2))`` for graphs of chromatic number ``r``.

    Outside ``0 < c < (r-2)/(r-1)`` the limit is 0; that case returns 0.0 and
    emits an :class:`AdmissibilityWarning`.
    """
    if r < 3:
        raise ValueError("chromatic number must be at least 3")
    ratio = (r - 2) / (r - 1)
    if c <= 0:
        raise ValueError(f"density must be positive, got {c}")
    if c >= ratio:
        warnings.warn(
            f"c={c} >= {(r - 2)}/{(r - 1)}: exponent is 0 there", AdmissibilityWarning, stacklevel=2
        )
        return 0.0
    return ratio * binary_entropy(c / ratio)


def exponent_report(formula_id: str, c: float, **kwargs) -> ExponentReport:
    funcs = {
        "H": binary_entropy,
        "h": h_exponent,
        "r": lambda x: float(r_rate(x)),
        "h-r": h_minus_r,
        "subgraph": lambda x: subgraph_exponent(kwargs["r"], x),
    }
    return ExponentReport(float(c), funcs[formula_id](c), formula_id)


def log2_int(x: int) -> float:
    """log2 of a positive integer, accurate for arbitrarily large ``x``."""
    if x <= 0:
        raise ValueError("log2 of a non-positive integer")
    shift = max(x.bit_length() - 64, 0)
    return shift + math.log2(x >> shift)


def _log2_binomial_exact(m: int, k: int) -> float:
    return log2_int(math.comb(m, k))


def _log2_binomial_lgamma(m: int, k: int) -> float:
    return (math.lgamma(m + 1) - math.lgamma(k + 1) - math.lgamma(m - k + 1)) / math.log(2)


def log2_binomial(m: int, k: int) -> float:
    """``log2 C(m, k)``; exact integer arithmetic up to ``m = 10_000``, log-gamma beyond."""
    if m < 0 or k < 0:
        raise ValueError("log2_binomial needs non-negative arguments")
    if k > m:
        raise ValueError(f"k={k} exceeds m={m}")
    if k == 0 or k == m:
        return 0.0
    if m <= EXACT_BINOMIAL_LIMIT:
        return _log2_binomial_exact(m, k)
    return _log2_binomial_lgamma(m, k)


@dataclass(frozen=True)
class SandwichReport:
    holds: bool
    lower: float
    log2_binom: float
    upper: float
    deficit: float


def entropy_sandwich_check(m: int, c, gamma: float) -> SandwichReport:
    """Check ``m H(c) - gamma m <= log2 C(m, cm) <= m H(c)``.

    ``deficit`` is ``(m H(c) - log2 C(m, cm)) / m``.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if m <= 0:
        raise ValueError("m must be positive")
    k = Fraction(c) * m
    if k.denominator != 1:
        raise ValueError(f"c*m = {k} is not an integer")
    k = int(k)
    upper = m * binary_entropy(float(Fraction(c)))
    value = log2_binomial(m, k)
    lower = upper - gamma * m
    return SandwichReport(lower <= value <= upper, lower, value, upper, (upper - value) / m)


def binomial_upper_bound_exact(m: int, k: int, binom: int | None = None, powers=None) -> bool:
    """Exact integer form of ``C(m, k) <= 2^(m H(k/m))``.

    Equivalent to ``C(m, k) * k^k * (m-k)^(m-k) <= m^m`` (with ``0^0 = 1``).
    """
    if binom is None:
        binom = math.comb(m, k)
    if powers is None:
        return binom * k**k * (m - k) ** (m - k) <= m**m
    return binom * powers[k] * powers[m - k] <= powers[m]


def verify_upper_bound_up_to(max_m: int) -> list[tuple[int, int]]:
    """Return all ``(m, k)`` with ``m <= max_m`` violating the exact upper bound (expected empty)."""
    powers = [1] + [j**j for j in range(1, max_m + 1)]
    bad = []
    for m in range(1, max_m + 1):
        binom = 1
        for k in range(0, m // 2 + 1):  # symmetric in k <-> m-k
            if k:
                binom = binom * (m - k + 1) // k
            if not binomial_upper_bound_exact(m, k, binom, powers):
                bad.append((m, k))
    return bad
