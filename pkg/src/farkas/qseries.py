"""Truncated q-expansions of the divisor-sum generating functions.

Provides the weight-one delta series attached to a character, the three
weight-two divisor-sum series (with their exact constant-term
conventions), the generalized Bernoulli number B_{2,psi} via Cohen's
divisor-sum formula, and exact Cauchy products.

Coefficients are exact Gaussian rationals.  For the long verification
sweeps there is an integer fast path: for n >= 1 all delta coefficients
of an order-dividing-4 character are Gaussian integers, so the
convolution tails run on int64 numpy arrays and only the constant-term
cross terms touch Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import DirichletCharacter
from .foundations import GaussianRational, divisors, is_prime, kronecker, sigma1

# d(n) <= 128 for n <= 1e6, so int64 dots of length <= 1e6 cannot overflow
_MAX_FAST_N = 1_000_000


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion: coefficients c(0..N), exact."""

    coefficients: tuple[GaussianRational, ...]

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> GaussianRational:
        if not 0 <= n <= self.truncation:
            raise IndexError(
                f"coefficient index {n} outside truncation range 0..{self.truncation}"
            )
        return self.coefficients[n]

    def __mul__(self, other: "QSeries") -> "QSeries":
        return cauchy_product(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if self.truncation != other.truncation:
            raise ValueError("truncation orders differ")
        return QSeries(
            tuple(a - b for a, b in zip(self.coefficients, other.coefficients))
        )

    def scale(self, c) -> "QSeries":
        return QSeries(tuple(a * c for a in self.coefficients))

    def conj(self) -> "QSeries":
        return QSeries(tuple(a.conj() for a in self.coefficients))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)


def cauchy_product(a: QSeries, b: QSeries) -> QSeries:
    """Exact product of truncated series; (A*B)(n) uses only indices <= n."""
    if a.truncation != b.truncation:
        raise ValueError(
            f"truncation orders differ: {a.truncation} vs {b.truncation}"
        )
    ca, cb = a.coefficients, b.coefficients
    out = [
        sum((ca[j] * cb[n - j] for j in range(n + 1)), GaussianRational())
        for n in range(len(ca))
    ]
    return QSeries(tuple(out))


def from_ints(values, constant=None) -> QSeries:
    """Build a QSeries from integer coefficients (optional exact c(0))."""
    coeffs = [GaussianRational(Fraction(int(v))) for v in values]
    if constant is not None:
        c0 = constant
        if not isinstance(c0, GaussianRational):
            c0 = GaussianRational(Fraction(c0))
        coeffs[0] = c0
    return QSeries(tuple(coeffs))


# ---------------------------------------------------------------------
# delta series
# ---------------------------------------------------------------------

def delta_constant(chi: DirichletCharacter) -> GaussianRational:
    """delta_chi(0) = -(1/2p) * sum_{a=1}^{p-1} chi(a) a, exact in Q(i)."""
    if chi.is_trivial():
        raise ValueError("delta constant is defined for non-trivial characters only")
    p = chi.p
    total = GaussianRational()
    for a in range(1, p):
        total = total + chi.value(a) * a
    return total * Fraction(-1, 2 * p)


def delta_coefficient(chi: DirichletCharacter, n: int) -> GaussianRational:
    """delta_chi(n) = sum_{d | n} chi(d), for n >= 1."""
    if n < 1:
        raise ValueError("delta_coefficient expects n >= 1")
    total = GaussianRational()
    for d in divisors(n):
        total = total + chi.value(d)
    return total


def delta_series(chi: DirichletCharacter, N: int) -> QSeries:
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    coeffs = [delta_constant(chi)]
    coeffs.extend(delta_coefficient(chi, n) for n in range(1, N + 1))
    return QSeries(tuple(coeffs))


def delta_int_arrays(chi: DirichletCharacter, N: int) -> tuple[np.ndarray, np.ndarray]:
    """(re, im) int64 arrays of delta_chi(n) for n in 1..N (index 0 is zero)."""
    if N > _MAX_FAST_N:
        raise ValueError(f"fast path capped at N = {_MAX_FAST_N}")
    re = np.zeros(N + 1, dtype=np.int64)
    im = np.zeros(N + 1, dtype=np.int64)
    p = chi.p
    for d in range(1, N + 1):
        if d % p == 0:
            continue
        v = chi.value(d)
        if v.re:
            re[d::d] += int(v.re)
        if v.im:
            im[d::d] += int(v.im)
    return re, im


# ---------------------------------------------------------------------
# weight-two divisor sums
# ---------------------------------------------------------------------

def sigma_prime(p: int, n: int) -> int:
    """sigma'_p(n) = sum of divisors of n not divisible by p (n >= 1)."""
    if n < 1:
        raise ValueError("sigma_prime expects n >= 1")
    return sum(d for d in divisors(n) if d % p != 0)


def sigma_tilde(p: int, n: int) -> int:
    """sigma~_p(n) = sum_{d|n} (p/d) d (n >= 1)."""
    if n < 1:
        raise ValueError("sigma_tilde expects n >= 1")
    return sum(kronecker(p, d) * d for d in divisors(n))


def sigma_hat(p: int, n: int) -> int:
    """sigma^_p(n) = sum_{d|n} (p/d) (n/d) (n >= 1)."""
    if n < 1:
        raise ValueError("sigma_hat expects n >= 1")
    return sum(kronecker(p, d) * (n // d) for d in divisors(n))


def sigma_prime_values(p: int, N: int) -> np.ndarray:
    """int64 array of sigma'_p(n), n in 1..N (index 0 is zero)."""
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        if d % p != 0:
            out[d::d] += d
    return out


def sigma_tilde_values(p: int, N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        k = kronecker(p, d)
        if k:
            out[d::d] += k * d
    return out


def sigma_hat_values(p: int, N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        k = kronecker(p, d)
        if k:
            out[d::d] += k * np.arange(1, N // d + 1, dtype=np.int64)
    return out


def sigma_prime_series(p: int, N: int) -> QSeries:
    """sigma'_p series with c(0) = (p-1)/24."""
    return from_ints(sigma_prime_values(p, N)[: N + 1], constant=Fraction(p - 1, 24))


def sigma_tilde_series(p: int, N: int) -> QSeries:
    """sigma~_p series with c(0) = -B_{2,psi}/4."""
    c0 = -bernoulli_B2_psi(p) / 4
    return from_ints(sigma_tilde_values(p, N)[: N + 1], constant=c0)


def sigma_hat_series(p: int, N: int) -> QSeries:
    """sigma^_p series with c(0) = 0."""
    return from_ints(sigma_hat_values(p, N)[: N + 1], constant=Fraction(0))


def bernoulli_B2_psi(p: int) -> Fraction:
    """B_{2,psi} for the quadratic character mod p, via Cohen's formula.

    B_{2,psi} = (2/5) * sum over s of sigma((p - s**2)/4), the sum running
    over all integers s (positive and negative counted separately) for
    which (p - s**2)/4 is a positive integer; for p = 1 (mod 4) these are
    exactly the odd s with s**2 <= p - 4.
    """
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"B_2,psi requires a prime p = 1 (mod 4), got {p}")
    total = 0
    s = 1
    while s * s <= p - 4:
        total += 2 * sigma1((p - s * s) // 4)
        s += 2
    return Fraction(2 * total, 5)


# ---------------------------------------------------------------------
# convolutions F and H
# ---------------------------------------------------------------------

class Convolver:
    """Exact F_chi / H_chi evaluation with an int64 tail fast path."""

    def __init__(self, chi: DirichletCharacter):
        self.chi = chi
        self.d0 = delta_constant(chi)
        self.d0_conj = self.d0.conj()
        self._re = np.zeros(1, dtype=np.int64)
        self._im = np.zeros(1, dtype=np.int64)
        self._capacity = 0

    def ensure(self, n: int) -> None:
        if n > self._capacity:
            cap = max(n, 2 * self._capacity, 1024)
            self._re, self._im = delta_int_arrays(self.chi, cap)
            self._capacity = cap

    def delta(self, n: int) -> GaussianRational:
        if n == 0:
            return self.d0
        self.ensure(n)
        return GaussianRational(
            Fraction(int(self._re[n])), Fraction(int(self._im[n]))
        )

    def _tails(self, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        a = self._re[1:n]
        b = self._im[1:n]
        ar = self._re[n - 1:0:-1]
        br = self._im[n - 1:0:-1]
        return a, b, ar, br

    def F(self, n: int) -> GaussianRational:
        """F_chi(n) = sum_{j=0}^{n} delta_chi(j) delta_chibar(n-j)."""
        if n < 0:
            raise ValueError("F expects n >= 0")
        if n == 0:
            return self.d0 * self.d0_conj
        self.ensure(n)
        a, b, ar, br = self._tails(n)
        tail = GaussianRational(
            Fraction(int(a @ ar) + int(b @ br)),
            Fraction(int(b @ ar) - int(a @ br)),
        )
        dn = self.delta(n)
        return tail + self.d0 * dn.conj() + dn * self.d0_conj

    def H(self, n: int) -> GaussianRational:
        """H_chi(n) = sum_{j=0}^{n} delta_chi(j) delta_chi(n-j)."""
        if n < 0:
            raise ValueError("H expects n >= 0")
        if n == 0:
            return self.d0 * self.d0
        self.ensure(n)
        a, b, ar, br = self._tails(n)
        tail = GaussianRational(
            Fraction(int(a @ ar) - int(b @ br)),
            Fraction(int(a @ br) + int(b @ ar)),
        )
        return tail + self.d0 * self.delta(n) * 2


_convolvers: dict[DirichletCharacter, Convolver] = {}


def convolver(chi: DirichletCharacter) -> Convolver:
    if chi not in _convolvers:
        _convolvers[chi] = Convolver(chi)
    return _convolvers[chi]


def convolution_F(chi: DirichletCharacter, n: int) -> GaussianRational:
    return convolver(chi).F(n)


def convolution_H(chi: DirichletCharacter, n: int) -> GaussianRational:
    return convolver(chi).H(n)
