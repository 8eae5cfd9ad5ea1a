"""Supersingular-prime censuses for rational elliptic curves.

For y² = x³ + ax + b and a good prime p ≥ 5, the Frobenius trace is
a_p = p + 1 − #E(F_p) = −Σ_{x mod p} χ(x³+ax+b) with χ the quadratic
character mod p, and the reduction is supersingular exactly when
a_p = 0 (p | a_p plus the Hasse bound |a_p| ≤ 2√p force this for
p ≥ 5).  The censuses below count supersingular primes for one curve
and simultaneous supersingular primes for a pair, with counts sampled
at log-spaced checkpoints and the count/log log x ratio reported as a
diagnostic, never asserted.

Primes 2 and 3 and primes dividing the discriminant are excluded
throughout: additive and small primes are filtered by the discriminant
proxy rather than conductor computation.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

EXCLUSION_NOTE = "primes 2, 3 and primes dividing the discriminant excluded"


class BadReductionError(ValueError):
    """The prime is below 5 or divides the curve discriminant."""


class NotPrimeError(ValueError):
    """A prime was required."""


@dataclass(frozen=True)
class CurveQ:
    """y² = x³ + a·x + b over the rationals; must be nonsingular."""

    a: int
    b: int

    def __post_init__(self):
        if self.disc == 0:
            raise ValueError(
                f"singular curve: a={self.a}, b={self.b} has zero discriminant"
            )

    @property
    def disc(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def good_reduction(self, p: int) -> bool:
        return p >= 5 and self.disc % p != 0

    def label(self) -> str:
        return f"y^2=x^3{self.a:+d}x{self.b:+d}"


@dataclass(frozen=True)
class CensusRecord:
    p: int
    a_p: int | None
    supersingular: bool
    good_reduction: bool


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(x: int) -> list[int]:
    """All primes ≤ x by a boolean sieve."""
    if x < 2:
        return []
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def _chi_table(p: int) -> np.ndarray:
    """Quadratic character values chi[v] for v in 0..p-1."""
    chi = np.full(p, -1, dtype=np.int64)
    xs = np.arange(p, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    chi[0] = 0
    return chi


def _curve_values(curve: CurveQ, p: int, xs: np.ndarray) -> np.ndarray:
    a = curve.a % p
    b = curve.b % p
    return (((xs * xs) % p) * xs + a * xs + b) % p


def _check_prime(p: int, curve: CurveQ) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p < 5 or curve.disc % p == 0:
        raise BadReductionError(
            f"p={p}: excluded ({EXCLUSION_NOTE})"
        )


def trace_ap(curve: CurveQ, p: int) -> int:
    """a_p = p + 1 − #E(F_p), via the quadratic character sum."""
    _check_prime(p, curve)
    xs = np.arange(p, dtype=np.int64)
    chi = _chi_table(p)
    return int(-chi[_curve_values(curve, p, xs)].sum())


def is_supersingular(curve: CurveQ, p: int) -> bool:
    return trace_ap(curve, p) == 0


def census_record(curve: CurveQ, p: int) -> CensusRecord:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if not curve.good_reduction(p):
        return CensusRecord(p=p, a_p=None, supersingular=False,
                            good_reduction=False)
    ap = trace_ap(curve, p)
    return CensusRecord(p=p, a_p=ap, supersingular=(ap == 0),
                        good_reduction=True)


def _scan_supersingular(curves, x_max: int) -> list[list[int]]:
    """Per-curve sorted supersingular prime lists, sharing per-prime work."""
    out: list[list[int]] = [[] for _ in curves]
    for p in primes_up_to(x_max):
        if p < 5:
            continue
        xs = None
        chi = None
        for i, curve in enumerate(curves):
            if curve.disc % p == 0:
                continue
            if xs is None:
                xs = np.arange(p, dtype=np.int64)
                chi = _chi_table(p)
            ap = int(-chi[_curve_values(curve, p, xs)].sum())
            if ap == 0:
                out[i].append(p)
    return out


def census_single(curve: CurveQ, x_max: int) -> list[int]:
    """Sorted supersingular primes ≤ x_max with good reduction."""
    if x_max < 5:
        raise ValueError("x_max must be at least 5")
    return _scan_supersingular([curve], x_max)[0]


def checkpoint_list(x_max: int, n: int = 20) -> list[int]:
    """About n log-spaced integers ending at x_max (first ≥ 10)."""
    if n <= 1 or x_max <= 10:
        return [x_max]
    pts = {
        min(x_max, max(10, round(10.0 * (x_max / 10.0) ** (i / (n - 1)))))
        for i in range(n)
    }
    pts.add(x_max)
    return sorted(pts)


@dataclass(frozen=True)
class CensusSummary:
    curve1: tuple[int, int]
    curve2: tuple[int, int]
    x_max: int
    checkpoints: tuple[int, ...]
    single_counts: tuple[tuple[int, ...], tuple[int, ...]]
    pair_counts: tuple[int, ...]
    loglog_x: tuple[float, ...]
    loglog_ratio: tuple[float, ...]
    ss_primes1: tuple[int, ...]
    ss_primes2: tuple[int, ...]
    pair_primes: tuple[int, ...]
    exclusions: str

    def validate(self) -> None:
        for k, x in enumerate(self.checkpoints):
            s1, s2, pr = (self.single_counts[0][k], self.single_counts[1][k],
                          self.pair_counts[k])
            if pr > min(s1, s2):
                raise AssertionError(
                    f"pair count {pr} exceeds min single count at x={x}"
                )
            if k and (s1 < self.single_counts[0][k - 1]
                      or s2 < self.single_counts[1][k - 1]
                      or pr < self.pair_counts[k - 1]):
                raise AssertionError(f"counts decreased at x={x}")

    def csv_text(self) -> str:
        lines = ["x,pi_E1,pi_E2,pi_pair,loglog_x,ratio"]
        for k, x in enumerate(self.checkpoints):
            lines.append(
                f"{x},{self.single_counts[0][k]},{self.single_counts[1][k]},"
                f"{self.pair_counts[k]},{self.loglog_x[k]:.6f},"
                f"{self.loglog_ratio[k]:.6f}"
            )
        return "\n".join(lines) + "\n"


def census_pair(curve1: CurveQ, curve2: CurveQ, x_max: int,
                checkpoints: int = 20) -> CensusSummary:
    """Pair census: primes where both curves are supersingular.

    The pair list excludes primes dividing either discriminant; each
    single list excludes only its own curve's bad primes.
    """
    if x_max < 5:
        raise ValueError("x_max must be at least 5")
    ss1, ss2 = _scan_supersingular([curve1, curve2], x_max)
    both = sorted(set(ss1) & set(ss2))
    pair = [p for p in both
            if curve1.disc % p != 0 and curve2.disc % p != 0]
    cps = checkpoint_list(x_max, checkpoints)
    c1 = tuple(bisect_right(ss1, x) for x in cps)
    c2 = tuple(bisect_right(ss2, x) for x in cps)
    cp = tuple(bisect_right(pair, x) for x in cps)
    llx = tuple(math.log(math.log(x)) for x in cps)
    ratio = tuple(c / l for c, l in zip(cp, llx))
    summary = CensusSummary(
        curve1=(curve1.a, curve1.b),
        curve2=(curve2.a, curve2.b),
        x_max=x_max,
        checkpoints=tuple(cps),
        single_counts=(c1, c2),
        pair_counts=cp,
        loglog_x=llx,
        loglog_ratio=ratio,
        ss_primes1=tuple(ss1),
        ss_primes2=tuple(ss2),
        pair_primes=tuple(pair),
        exclusions=EXCLUSION_NOTE,
    )
    summary.validate()
    return summary


def heuristic_density(p: int, f: int) -> Fraction:
    """Naive supersingular density at a place of residue degree f:
    within 1e-12 of 1/√p for f=1; exactly 1/p for f ≥ 2."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if f < 1:
        raise ValueError("f must be at least 1")
    if f >= 2:
        return Fraction(1, p)
    scale = 10**12
    return Fraction(scale, math.isqrt(p * scale * scale))
