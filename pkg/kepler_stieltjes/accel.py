"""Kapteyn partial sums and the sequence transformations applied to them.

Index convention: sums[n] is the sum of the first n + 1 terms, so sums[0] = a_0 is the first
term. For the Kapteyn series a_n = z^m J_m(m eps)/m with m = n + 1. The remainder estimates of
the delta transformation are omega_n = a_(n+1) = sums[n+1] - sums[n].

"Order k" means delta_k^(0) (k + 2 sums) for Weniger and epsilon_2k (2k + 1 sums, last
antidiagonal) for Wynn.

The delta sum loses about six digits every ten orders to cancellation, so the Kapteyn terms and
both tables are carried in mpmath at config.RESUM_DPS digits. Only the finished estimates are
rounded to complex doubles.
"""

import cmath
import functools
import itertools
import math
import sys
import threading
from dataclasses import dataclass, field

import numpy as np
from mpmath.ctx_mp import MPContext

from kepler_stieltjes import config
from kepler_stieltjes.errors import DomainError, InsufficientDataError, RangeError
from kepler_stieltjes.kepler import mean_anomaly
from kepler_stieltjes.logger import logger
from kepler_stieltjes.schemas import MeanAnomaly, Method, OrbitParams, TransformKind
from kepler_stieltjes.watson import bessel_scaled

# Up to this order the delta transformation is evaluated from its explicit binomial sum
BINOMIAL_MAX_ORDER = 10

# Shared by every thread; only plain arithmetic runs in it, which never changes its precision.
_mp = MPContext()
_mp.dps = config.RESUM_DPS

# Special functions raise the precision of their context for a while, so they get their own.
_special_mp = MPContext()
_special_mp.dps = config.RESUM_DPS
_SPECIAL_LOCK = threading.Lock()

_DOUBLE_MAX = sys.float_info.max


def _to_complex(x) -> complex | None:
    if x is None:
        return None
    value = complex(x)
    return value if cmath.isfinite(value) else None


#
# Types
#


@dataclass(frozen=True)
class PartialSums:
    """Terms and running sums of a series.

    `terms` and `sums` are the complex double view. `exact_terms` holds the same terms in the
    working precision of the transformations, which only ever read that field.
    """

    terms: np.ndarray
    sums: np.ndarray
    exact_terms: tuple = field(default=(), repr=False, compare=False)

    @classmethod
    def from_exact_terms(cls, exact_terms) -> "PartialSums":
        exact_terms = tuple(_mp.mpc(t) for t in exact_terms)
        running = itertools.accumulate(exact_terms)
        return cls(
            terms=np.array([complex(t) for t in exact_terms], dtype=complex),
            sums=np.array([complex(s) for s in running], dtype=complex),
            exact_terms=exact_terms,
        )

    @classmethod
    def from_terms(cls, terms) -> "PartialSums":
        return cls.from_exact_terms(complex(t) for t in terms)

    @classmethod
    def from_sums(cls, sums) -> "PartialSums":
        # differences of doubles are exact at the working precision
        sums = [_mp.mpc(complex(s)) for s in sums]
        return cls.from_exact_terms(sums[:1] + [b - a for a, b in zip(sums, sums[1:])])

    def __len__(self):
        return len(self.sums)

    def scaled(self, c: complex) -> "PartialSums":
        c = _mp.mpc(complex(c))
        return PartialSums.from_exact_terms(c * t for t in self._working_terms())

    def _working_terms(self) -> list:
        if self.exact_terms:
            return list(self.exact_terms)
        return list(PartialSums.from_sums(self.sums).exact_terms)

    def working(self) -> tuple[list, list]:
        """(running sums, terms) in the working precision."""
        terms = self._working_terms()
        return list(itertools.accumulate(terms)), terms


@dataclass(frozen=True)
class TransformTable:
    """Triangular table of estimates, keyed by (n, k).

    For Wynn, column k holds epsilon_2k; odd columns are not kept. Entries lost to a breakdown
    are absent and listed in `breakdown`.
    """

    kind: TransformKind
    size: int  # number of input sums
    entries: dict[tuple[int, int], complex] = field(repr=False)
    breakdown: frozenset[tuple[int, int]] = frozenset()
    beta: float | None = None

    def get(self, n: int, k: int) -> complex | None:
        return self.entries.get((n, k))

    def column(self, k: int) -> dict[int, complex]:
        return {n: v for (n, kk), v in sorted(self.entries.items()) if kk == k}

    @property
    def max_order(self) -> int:
        if self.kind == TransformKind.weniger:
            return self.size - 2
        return (self.size - 1) // 2

    def _diagonal_index(self, k: int) -> tuple[int, int]:
        if self.kind == TransformKind.weniger:
            return 0, k
        return self.size - 1 - 2 * k, k

    def order(self, k: int) -> complex | None:
        """Estimate of order k, None when the entry broke down or is out of range."""
        if not 0 <= k <= self.max_order:
            return None
        return self.get(*self._diagonal_index(k))

    def diagonal(self) -> list[tuple[int, complex]]:
        """Valid (order, estimate) pairs in increasing order."""
        out = []
        for k in range(self.max_order + 1):
            value = self.order(k)
            if value is not None:
                out.append((k, value))
        return out


#
# Kapteyn series
#


@functools.lru_cache(maxsize=8192)
def _bessel_exact(m: int, eps: float):
    """J_m(m eps) at the working precision."""
    with _SPECIAL_LOCK:
        value = _special_mp.besselj(m, m * _special_mp.mpf(eps))
    return _mp.mpf(value)


def kapteyn_partial_sums(z: complex, orbit: OrbitParams, N: int) -> PartialSums:
    """First N terms of sum_m z^m J_m(m eps)/m, built at the working precision."""
    if int(N) != N or N < 1:
        raise DomainError("N", N, "N >= 1")
    z = complex(z)
    N = int(N)
    if z == 0 or orbit.degenerate:
        return PartialSums.from_terms(np.zeros(N, dtype=complex))

    z_exact = _mp.mpc(z)
    power = _mp.mpc(1)
    terms = []
    for m in range(1, N + 1):
        power *= z_exact
        term = power * _bessel_exact(m, orbit.eps) / m
        if abs(term) > _DOUBLE_MAX:
            with _SPECIAL_LOCK:
                log_magnitude = float(_special_mp.log(_special_mp.mpf(abs(term))))
            raise RangeError(m, log_magnitude)
        terms.append(term)
    return PartialSums.from_exact_terms(terms)


def kapteyn_coefficients(orbit: OrbitParams, N: int) -> np.ndarray:
    """(2/n) J_n(n eps) exp(-lambda n) for n = 1..N; the Bessel factors are memoised."""
    return np.array([2.0 * bessel_scaled(n, orbit) / n for n in range(1, N + 1)])


def series_order(orbit: OrbitParams, tol: float) -> int:
    """Smallest N whose tail sum_{n>N} (2/n) exp(lambda n) is below tol."""
    if tol <= 0.0:
        raise DomainError("tol", tol, "tol > 0")
    if orbit.degenerate:
        return 0
    if orbit.parabolic:
        raise DomainError("eps", orbit.eps, "eps < 1 for a tail-bounded Kapteyn series")

    q = math.exp(orbit.lam)
    for N in range(1, config.SERIES_MAX_ORDER + 1):
        if 2.0 * q ** (N + 1) / ((N + 1) * (1.0 - q)) <= tol:
            return N
    logger.warning(f"Kapteyn series for eps={orbit.eps} capped at {config.SERIES_MAX_ORDER} terms")
    return config.SERIES_MAX_ORDER


def kapteyn_s_series(
    orbit: OrbitParams, M: float | MeanAnomaly, N: int | None = None, tol: float = 1e-10
) -> complex:
    """Partial sum of SS(eps; M) = sum_{n<=N} (2/n) J_n(n eps) e^{inM}; Im gives S(eps; M)."""
    M = mean_anomaly(M)
    if N is None:
        N = series_order(orbit, tol)
    if orbit.degenerate or N == 0:
        return 0j

    n = np.arange(1, N + 1)
    with np.errstate(under="ignore"):
        terms = kapteyn_coefficients(orbit, N) * np.exp(orbit.lam * n) * np.exp(1j * n * M.M)
    terms = terms[::-1]
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


#
# Wynn epsilon
#


def wynn_epsilon(sums: PartialSums) -> TransformTable:
    """epsilon_(k+1)^(n) = epsilon_(k-1)^(n+1) + 1/(epsilon_k^(n+1) - epsilon_k^(n))."""
    size = len(sums)
    if size < 3:
        raise InsufficientDataError(f"Wynn epsilon needs at least 3 partial sums, got {size}")

    guard = config.BREAKDOWN_GUARD
    entries, breakdown = {}, set()
    running, _ = sums.working()
    previous = [_mp.zero] * (size + 1)  # epsilon_-1
    current = running  # epsilon_0
    for n, s in enumerate(current):
        entries[(n, 0)] = complex(s)

    for j in range(1, size):
        nxt = []
        for n in range(size - j):
            a, b, c = previous[n + 1], current[n], current[n + 1]
            if a is None or b is None or c is None or abs(c - b) < guard:
                nxt.append(None)
            else:
                nxt.append(a + 1 / (c - b))

            if j % 2 == 0:
                value = _to_complex(nxt[-1])
                if value is None:
                    breakdown.add((n, j // 2))
                else:
                    entries[(n, j // 2)] = value
        previous, current = current, nxt

    if breakdown:
        logger.debug(f"Wynn epsilon: {len(breakdown)} breakdown entries")
    return TransformTable(kind=TransformKind.wynn, size=size, entries=entries, breakdown=frozenset(breakdown))


#
# Weniger delta
#


def _pochhammer(x, k: int):
    return math.prod((x + i for i in range(k)), start=_mp.one)


def _exact_window(omega: list, n: int, k: int) -> int | None:
    """Index j of the first zero remainder in omega[n..n+k] when all later ones vanish too."""
    window = omega[n : n + k + 1]
    zeros = [j for j, w in enumerate(window) if w == 0]
    if not zeros:
        return None
    first = zeros[0]
    return first if all(w == 0 for w in window[first:]) else -1


def _delta_binomial(s: list, omega: list, beta, n: int, k: int):
    num, den = _mp.zero, _mp.zero
    for j in range(k + 1):
        if k == 0:
            weight = _mp.one
        else:
            ratio = _pochhammer(beta + n + j, k - 1) / _pochhammer(beta + n + k, k - 1)
            weight = (-1) ** j * math.comb(k, j) * ratio
        num += weight * s[n + j] / omega[n + j]
        den += weight / omega[n + j]
    return num, den


def _step(upper, lower, coef):
    if upper is None or lower is None:
        return None
    return upper - coef * lower


def weniger_delta(sums: PartialSums, beta: float = config.WENIGER_BETA) -> TransformTable:
    """Weniger's delta transformation with remainder estimates omega_n = a_(n+1).

    delta_k^(n) = sum_j (-1)^j C(k,j) [(beta+n+j)_(k-1) / (beta+n+k)_(k-1)] s_(n+j)/omega_(n+j)
                  / (same with s replaced by 1)

    Orders up to BINOMIAL_MAX_ORDER use the sum above, higher orders the three-term recurrence
    X_(k+1)^(n) = X_k^(n+1) - (beta+n+k)(beta+n+k-1) / ((beta+n+2k)(beta+n+2k-1)) X_k^(n)
    on numerator and denominator separately.
    """
    if beta <= 0.0:
        raise DomainError("beta", beta, "beta > 0")
    size = len(sums)
    if size < 2:
        raise InsufficientDataError(f"Weniger delta needs at least 2 partial sums, got {size}")

    s, terms = sums.working()
    omega = terms[1:]
    b = _mp.mpf(beta)
    guard = config.BREAKDOWN_GUARD
    entries, breakdown = {}, set()

    # None marks a zero remainder; every entry it reaches is settled by _exact_window
    num = [None if w == 0 else v / w for v, w in zip(s, omega)]
    den = [None if w == 0 else 1 / w for w in omega]

    for k in range(size - 1):
        for n in range(size - 1 - k):
            j = _exact_window(omega, n, k)
            if j is not None:
                if j >= 0:
                    # the series terminates inside the window: the partial sum is exact
                    entries[(n, k)] = complex(s[n + j])
                else:
                    breakdown.add((n, k))
                continue

            if k <= BINOMIAL_MAX_ORDER:
                p, q = _delta_binomial(s, omega, b, n, k)
            else:
                p, q = num[n], den[n]
            value = _to_complex(p / q) if q is not None and abs(q) >= guard else None
            if value is None:
                breakdown.add((n, k))
            else:
                entries[(n, k)] = value

        if k + 1 >= size - 1:
            break
        if k == 0:
            coefs = [_mp.one] * (len(num) - 1)
        else:
            coefs = [
                (b + i + k) * (b + i + k - 1) / ((b + i + 2 * k) * (b + i + 2 * k - 1))
                for i in range(len(num) - 1)
            ]
        num = [_step(num[i + 1], num[i], c) for i, c in enumerate(coefs)]
        den = [_step(den[i + 1], den[i], c) for i, c in enumerate(coefs)]

    if breakdown:
        logger.debug(f"Weniger delta: {len(breakdown)} breakdown entries")
    return TransformTable(
        kind=TransformKind.weniger, size=size, entries=entries, breakdown=frozenset(breakdown), beta=beta
    )


#
# Estimates
#


def best_estimate(table: TransformTable) -> tuple[complex, float]:
    """Highest valid diagonal entry and |last - previous| as its error estimate."""
    diagonal = table.diagonal()
    if len(diagonal) < 2:
        raise InsufficientDataError(f"{table.kind.value} table has {len(diagonal)} valid diagonal entries")
    (_, previous), (_, last) = diagonal[-2], diagonal[-1]
    return last, abs(last - previous)


def transform(sums: PartialSums, method: Method | str, beta: float = config.WENIGER_BETA) -> TransformTable:
    method = Method(method)
    if method == Method.weniger:
        return weniger_delta(sums, beta)
    if method == Method.wynn:
        return wynn_epsilon(sums)
    raise DomainError("method", method.value, "weniger or wynn")


def sums_needed(order: int, method: Method | str) -> int:
    return order + 2 if Method(method) == Method.weniger else 2 * order + 1


def table_row_index(row: int) -> int:
    """Partial-sum index j listed on row `row` of a resum table, next to delta_(j+1)^(0).

    Row 1 holds the first term (j = 0); every later row k holds j = k, the sum of k + 1 terms.
    """
    if int(row) != row or row < 1:
        raise DomainError("row", row, "row >= 1")
    return 0 if row == 1 else int(row)


def resum_s(
    orbit: OrbitParams,
    M: float | MeanAnomaly,
    order: int,
    method: Method | str = Method.weniger,
    beta: float = config.WENIGER_BETA,
) -> complex:
    """Resummed SS(eps; M) from the Kapteyn partial sums at z = e^{iM}."""
    if order < 1:
        raise DomainError("order", order, "order >= 1")
    M = mean_anomaly(M)
    sums = kapteyn_partial_sums(cmath.exp(1j * M.M), orbit, sums_needed(order, method))
    table = transform(sums, method, beta)
    value = table.order(order)
    if value is None:
        raise InsufficientDataError(
            f"{Method(method).value} order {order} broke down at eps={orbit.eps}, M={M.M}"
        )
    return 2.0 * value
