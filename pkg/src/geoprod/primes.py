"""Prime-number specialization: sieve, factorization, greatest-prime-order
enumeration, the generalized Moebius function, and the prime-ratio
extension of a function.

Greatest-prime order (GPO) lists 1 first, then the positive integers
grouped by greatest prime factor with groups in increasing prime order;
inside a group integers appear in increasing numeric order.  A group is
truncated by a budget on the total prime-exponent sum, which matches the
per-subset depth budget of the sampling engine exactly.

The sieve is built once and shared read-only; all other state is local.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    DegenerateRatioError,
    DivergentProductError,
    GeoprodError,
    RatioConstraintError,
)
from .functions import AnalyticFunctionModel, evaluate
from .sampling import RatioSchedule, TruncationSpec

__all__ = [
    "Factorization",
    "GpoBounds",
    "MuStarTerm",
    "factorize",
    "gpo_enumerate",
    "moebius",
    "moebius_limit_deviation",
    "moebius_star",
    "mu_partial_sums",
    "mu_star_partial_sums",
    "mu_star_terms",
    "mu_star_terms_up_to",
    "nth_prime",
    "prime_extend",
    "prime_pi",
    "primes_up_to",
]

MAX_PRIME_INDEX = 100_000
_MAX_SIEVE = 4_000_000
_MAX_GPO_TERMS = 20_000_000

_primes: list[int] = []
_sieve_limit = 0


def _ensure_sieve(limit: int) -> None:
    global _primes, _sieve_limit
    if limit <= _sieve_limit:
        return
    limit = max(limit, 2 * _sieve_limit, 1 << 10)
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    _primes = [i for i, is_p in enumerate(flags) if is_p]
    _sieve_limit = limit


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    if limit > _MAX_SIEVE:
        raise ValueError(f"sieve limit {limit} out of supported range (<= {_MAX_SIEVE})")
    _ensure_sieve(max(limit, 2))
    return _primes[: bisect.bisect_right(_primes, limit)]


def nth_prime(k: int) -> int:
    """The k-th prime (1-based): nth_prime(1) = 2."""
    if k < 1:
        raise ValueError(f"prime index must be a positive integer, got {k}")
    if k > MAX_PRIME_INDEX:
        raise ValueError(f"prime index {k} out of sieve range (<= {MAX_PRIME_INDEX})")
    if len(_primes) < k:
        bound = 50 if k < 6 else int(k * (math.log(k) + math.log(math.log(k)))) + 10
        _ensure_sieve(bound)
    return _primes[k - 1]


def prime_pi(x: int) -> int:
    """Number of primes <= x."""
    if x < 2:
        return 0
    if x > _MAX_SIEVE:
        raise ValueError(f"argument {x} out of sieve range (<= {_MAX_SIEVE})")
    _ensure_sieve(x)
    return bisect.bisect_right(_primes, x)


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization: sorted (prime, multiplicity) pairs."""

    n: int
    prime_powers: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.prime_powers)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_powers)

    @property
    def exponent_sum(self) -> int:
        return sum(e for _, e in self.prime_powers)


def factorize(n: int) -> Factorization:
    """Factor n >= 1 by trial division (n = 1 has the empty factorization)."""
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    original = n
    if n == 1:
        return Factorization(1, ())
    root = math.isqrt(n)
    if root > _MAX_SIEVE:
        raise ValueError(f"{original} is too large for trial-division factoring")
    _ensure_sieve(max(root, 2))
    powers = []
    for p in _primes:
        if p > root:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            powers.append((p, e))
            root = math.isqrt(n)
    if n > 1:
        powers.append((n, 1))
    return Factorization(original, tuple(powers))


def moebius(n: int) -> int:
    """Classical Moebius function: 0 unless n is squarefree, else (-1)**omega."""
    fz = factorize(n)
    if any(e > 1 for _, e in fz.prime_powers):
        return 0
    return -1 if fz.omega % 2 else 1


def _root_log(p: int, k: int, s: complex) -> complex:
    """Principal log of (p**(s*k) - 1)**(1/k), safe for large |Re(s)|."""
    a = complex(s) * (k * math.log(p))
    if a.real > 0:
        # p**(s k) - 1 = p**(s k) (1 - p**(-s k)); the second factor is tame.
        rem = 1 - cmath.exp(-a)
        if abs(rem) < 1e-12:
            raise DegenerateRatioError(f"{p}**(s*{k}) = 1 for s = {s!r}")
        w = a + cmath.log(rem)
    else:
        v = cmath.exp(a) - 1
        if abs(v) < 1e-12:
            raise DegenerateRatioError(f"{p}**(s*{k}) = 1 for s = {s!r}")
        w = cmath.log(v)
    return complex(w.real, math.remainder(w.imag, math.tau)) / k


def moebius_star(n: int, s: complex) -> complex:
    """Generalized Moebius function mu*(n, s).

    (-1)**omega(n) times the product over prime divisors p of the
    principal root (p**(s*pi(p)) - 1)**(1/pi(p)), divided by n**s; the
    magnitudes are handled in log space, so large Re(s) cannot overflow.
    mu*(1, s) = 1 by definition.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n == 1:
        return 1 + 0j
    s = complex(s)
    fz = factorize(n)
    root_sum = 0j
    log_n = 0.0
    for p, e in fz.prime_powers:
        root_sum += _root_log(p, prime_pi(p), s)
        log_n += e * math.log(p)
    w = root_sum - s * log_n
    if w.real > 709.0:
        raise DivergentProductError(
            f"|mu*({n}, {s!r})| = exp({w.real:.3g}) overflows double precision"
        )
    return (-1) ** fz.omega * cmath.exp(w)


def moebius_limit_deviation(n: int, s: float) -> float:
    """|mu*(n, s) - mu(n)| for real s; decreases toward 0 as s grows."""
    return abs(moebius_star(n, float(s)) - moebius(n))


@dataclass(frozen=True)
class GpoBounds:
    """Truncation of greatest-prime order: prime factors among the first
    ``max_prime_index`` primes and total exponent sum at most
    ``max_exponent_sum``."""

    max_prime_index: int
    max_exponent_sum: int

    def __post_init__(self):
        if self.max_prime_index < 1 or self.max_exponent_sum < 1:
            raise ValueError("GPO bounds must be positive integers")
        terms = math.comb(self.max_exponent_sum + self.max_prime_index, self.max_prime_index)
        if terms > _MAX_GPO_TERMS:
            raise ValueError(f"bounds enumerate ~{terms} integers; keep it under {_MAX_GPO_TERMS}")


@dataclass(frozen=True)
class MuStarTerm:
    """One greatest-prime-ordered term of the generalized Moebius sum."""

    n: int
    s: complex
    value: complex
    omega: int


def _sorted_group(m: int, budget: int) -> list[tuple[int, tuple[int, ...]]]:
    """Members of the greatest-prime group of p_m within the exponent
    budget, as (n, exponent-tuple) pairs sorted by n."""
    ps = [nth_prime(i) for i in range(1, m + 1)]
    out: list[tuple[int, tuple[int, ...]]] = []
    exps = [0] * m

    def descend(i: int, remaining: int, value: int) -> None:
        if i == m - 1:
            v = value
            for e in range(1, remaining + 1):
                v *= ps[i]
                exps[i] = e
                out.append((v, tuple(exps)))
            exps[i] = 0
            return
        exps[i] = 0
        descend(i + 1, remaining, value)
        v = value
        for e in range(1, remaining):  # reserve >= 1 for the greatest prime
            v *= ps[i]
            exps[i] = e
            descend(i + 1, remaining - e, v)
        exps[i] = 0

    descend(0, budget, 1)
    out.sort()
    return out


def gpo_enumerate(bounds: GpoBounds) -> Iterator[int]:
    """Positive integers in greatest-prime order within the bounds; 1 first."""
    yield 1
    for m in range(1, bounds.max_prime_index + 1):
        for n, _ in _sorted_group(m, bounds.max_exponent_sum):
            yield n


def _mu_from_exps(exps) -> int:
    omega = 0
    for e in exps:
        if e > 1:
            return 0
        if e:
            omega += 1
    return -1 if omega % 2 else 1


def mu_star_terms(s: complex, bounds: GpoBounds) -> Iterator[MuStarTerm]:
    """Generalized Moebius terms in greatest-prime order, n = 1 included."""
    s = complex(s)
    yield MuStarTerm(1, s, 1 + 0j, 0)
    root_logs = [_root_log(nth_prime(i), i, s) for i in range(1, bounds.max_prime_index + 1)]
    log_ps = [math.log(nth_prime(i)) for i in range(1, bounds.max_prime_index + 1)]
    for m in range(1, bounds.max_prime_index + 1):
        for n, exps in _sorted_group(m, bounds.max_exponent_sum):
            omega = 0
            log_n = 0.0
            root_sum = 0j
            for i, e in enumerate(exps):
                if e:
                    omega += 1
                    log_n += e * log_ps[i]
                    root_sum += root_logs[i]
            value = (-1) ** omega * cmath.exp(root_sum - s * log_n)
            yield MuStarTerm(n, s, value, omega)


def mu_star_partial_sums(s: complex, bounds: GpoBounds) -> Iterator[tuple[int, complex]]:
    """Running sums of mu*(n, s) over the GPO enumeration; the magnitude of
    the final sum is the identity defect at these bounds."""
    running = 0j
    for term in mu_star_terms(s, bounds):
        running += term.value
        yield term.n, running


def mu_partial_sums(bounds: GpoBounds) -> Iterator[tuple[int, int]]:
    """Running sums of the classical mu(n) over the GPO enumeration."""
    running = 1
    yield 1, running
    for m in range(1, bounds.max_prime_index + 1):
        for n, exps in _sorted_group(m, bounds.max_exponent_sum):
            running += _mu_from_exps(exps)
            yield n, running


def mu_star_terms_up_to(s: complex, n_limit: int) -> Iterator[MuStarTerm]:
    """Terms for every n <= n_limit, in greatest-prime order."""
    if n_limit < 1:
        raise ValueError(f"n_limit must be positive, got {n_limit}")
    max_index = prime_pi(n_limit)
    if max_index == 0:
        yield MuStarTerm(1, complex(s), 1 + 0j, 0)
        return
    budget = max(1, int(math.log2(n_limit)))
    bounds = GpoBounds(max_index, budget)
    for term in mu_star_terms(s, bounds):
        if term.n <= n_limit:
            yield term


def prime_extend(
    f: AnalyticFunctionModel,
    z: complex,
    s: complex,
    bounds: GpoBounds,
    cross_check: bool = True,
):
    """Reconstruct f(z) from the prime-ratio product.

    Every integer n >= 2 within the bounds contributes the factor
    ``f(coefficient * z)`` with exponent (-1)**(omega(n) - 1), where the
    coefficient is the mu*(n, s) product without its sign.  The same value
    is obtained from the generic engine with the prime-power ratio
    schedule r_k = p_k**s and a matching depth budget; ``cross_check``
    recomputes it that way and insists the two bookkeepings agree.
    """
    from .extension import ExtensionResult, extend

    s = complex(s)
    z = complex(z)
    two_s = 2**s
    if not abs(two_s) > 1:
        raise RatioConstraintError(f"|2**s| must exceed 1, got s = {s!r}")
    if two_s.real < 0.5 - 1e-12:
        raise RatioConstraintError(f"Re(2**s) = {two_s.real!r} < 1/2 for s = {s!r}")

    M, E = bounds.max_prime_index, bounds.max_exponent_sum
    root_logs = [_root_log(nth_prime(i), i, s) for i in range(1, M + 1)]
    log_ps = [math.log(nth_prime(i)) for i in range(1, M + 1)]
    running = 0j
    partials = []
    for m in range(1, M + 1):
        for _, exps in _sorted_group(m, E):
            omega = 0
            log_n = 0.0
            root_sum = 0j
            for i, e in enumerate(exps):
                if e:
                    omega += 1
                    log_n += e * log_ps[i]
                    root_sum += root_logs[i]
            coefficient = cmath.exp(root_sum - s * log_n)
            sign = 1 if omega % 2 else -1  # exponent (-1)**(omega - 1)
            running += sign * cmath.log(evaluate(f, coefficient * z))
        if abs(running.real) > 709.0:
            raise DivergentProductError(
                f"prime product log-magnitude {running.real:.3g} after group {m}"
            )
        partials.append((m, cmath.exp(running)))
    value = partials[-1][1]

    spec = TruncationSpec(
        tuple(range(1, M + 1)),
        E,
        RatioSchedule.prime_power(s, entire_function_mode=f.is_entire),
    )
    if cross_check:
        engine_value = extend(f, z, spec).value
        scale = max(abs(value), abs(engine_value))
        if scale and abs(engine_value - value) / scale > 1e-10:
            raise GeoprodError(
                "prime-order product disagrees with the generic engine: "
                f"{value!r} vs {engine_value!r}"
            )
    reference = evaluate(f, z)
    return ExtensionResult(
        value=value,
        group_partials=tuple(partials),
        spec=spec,
        reference=reference,
        relative_error=abs(value - reference) / abs(reference),
    )
