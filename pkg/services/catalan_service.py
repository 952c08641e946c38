import logging
from fractions import Fraction
from math import factorial

import numpy as np

from models import DiscreteDistribution, Partition
from services.counting_service import count_syt_yf
from services.symbolic_service import moments

logger = logging.getLogger(__name__)

PI = np.pi
SQRT2 = np.sqrt(2.0)

# i -> oo limits of the scaled central moments of the entry of [1, i] on (n, n), n -> oo
SKEWNESS_LIMIT = float(2 * (5 * PI - 16) * SQRT2 / (3 * PI - 8) ** 1.5)
KURTOSIS_LIMIT = float((15 * PI ** 2 + 16 * PI - 192) / (3 * PI - 8) ** 2)
FIFTH_MOMENT_LIMIT = float(2 * (51 * PI ** 2 - 80 * PI - 256) * SQRT2 / (3 * PI - 8) ** 2.5)
SIXTH_MOMENT_LIMIT = float((105 * PI ** 3 + 648 * PI ** 2 - 2240 * PI - 2560) / (3 * PI - 8) ** 3)

META_LIMITS = {
    3: ('skewness', SKEWNESS_LIMIT, 0.10),
    4: ('kurtosis', KURTOSIS_LIMIT, 0.18),
    5: ('fifth_moment', FIFTH_MOMENT_LIMIT, 1.15),
    6: ('sixth_moment', SIXTH_MOMENT_LIMIT, 3.35),
}
EXPECTATION_TOLERANCE = 1e-3
APPROACH_POINTS = (50, 100, 200, 400)


def _central_binomial_ratio(i: int) -> Fraction:
    """(2i+1)! / (4^i i!^2)."""
    return Fraction(factorial(2 * i + 1), 4 ** i * factorial(i) ** 2)


def catalan_expectation(i: int) -> Fraction:
    """The limiting mean of the entry of [1, i]: 2i + 2 - 2 (2i+1)! / (4^i i!^2)."""
    if i < 1:
        raise ValueError('The column index must be at least 1')
    return 2 * i + 2 - 2 * _central_binomial_ratio(i)


def catalan_variance(i: int) -> Fraction:
    """The limiting variance of the entry of [1, i]: -4 c^2 - 2 c + 6i + 6 with c = (2i+1)!/(4^i i!^2)."""
    if i < 1:
        raise ValueError('The column index must be at least 1')
    c = _central_binomial_ratio(i)
    return -4 * c * c - 2 * c + 6 * i + 6


def catalan_limiting_occupancy(i: int) -> DiscreteDistribution:
    """The n -> oo law of the entry of [1, i] on (n, n) in closed form.

    Pr(T = i + b) = f^{(i-1, b)} (i + 1 - b) / 2^(i+b) for b = 0 .. i-1.
    """
    if i < 1:
        raise ValueError('The column index must be at least 1')
    law = {}
    for b in range(i):
        prefix = Partition(tuple(p for p in (i - 1, b) if p > 0))
        law[i + b] = Fraction(count_syt_yf(prefix) * (i + 1 - b), 2 ** (i + b))
    return DiscreteDistribution.from_mapping(law)


def catalan_expectation_asymptotic(i: int) -> float:
    """The expansion of catalan_expectation(i) in powers of i, truncated after i^(-5/2)."""
    root_pi = np.sqrt(PI)
    return float(2 * i + 2 - 4 / root_pi * i ** 0.5 - 3 / (2 * root_pi) * i ** -0.5
                 + 7 / (32 * root_pi) * i ** -1.5 - 9 / (256 * root_pi) * i ** -2.5)


def _scaled_moments(i: int) -> dict[int, float] | None:
    return moments(catalan_limiting_occupancy(i), kmax=6).scaled


def catalan_meta_limits_check(i_large: int) -> list[dict]:
    """Compares the statistics of the limiting law at i_large with their i -> oo values.

    Each entry reports the computed value, the target, the deviation and the tolerance. A
    statistic outside its tolerance is still accepted when its deviation shrinks steadily
    over i = 50, 100, 200, 400 (recorded as monotone_approach). Statistics of a point mass
    are marked not applicable.
    """
    mean = catalan_expectation(i_large)
    asymptotic = catalan_expectation_asymptotic(i_large)
    deviation = abs(float(mean) - asymptotic)
    report = [{
        'name': 'expectation',
        'computed': mean,
        'target_float': asymptotic,
        'deviation_float': deviation,
        'tolerance_float': EXPECTATION_TOLERANCE,
        'within': deviation < EXPECTATION_TOLERANCE,
        'applicable': True,
        'monotone_approach': None,
    }]

    scaled = _scaled_moments(i_large)
    approach = None
    for t, (name, target, tolerance) in META_LIMITS.items():
        if scaled is None:
            report.append({'name': name, 'computed_float': None, 'target_float': target, 'deviation_float': None,
                           'tolerance_float': tolerance, 'within': False, 'applicable': False,
                           'monotone_approach': None})
            continue
        deviation = abs(scaled[t] - target)
        within = deviation < tolerance
        monotone = None
        if not within:
            if approach is None:
                approach = {i: _scaled_moments(i) for i in APPROACH_POINTS}
            trail = [abs(approach[i][t] - target) for i in APPROACH_POINTS]
            monotone = all(a > b for a, b in zip(trail, trail[1:]))
            logger.info('%s misses its tolerance at i=%d; deviations %s', name, i_large, trail)
        report.append({'name': name, 'computed_float': scaled[t], 'target_float': target,
                       'deviation_float': deviation, 'tolerance_float': tolerance, 'within': within,
                       'applicable': True, 'monotone_approach': monotone})
    return report
