"""Dirichlet characters modulo a prime.

A character is stored as a single exponent e against a fixed primitive
root g: chi(g) = zeta_{p-1}**e.  Evaluation goes through the discrete
logarithm table, and all general-order manipulation is exponent
arithmetic mod p-1; values only materialize as Gaussian rationals when
the order divides 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .foundations import (
    FOURTH_ROOTS,
    ZERO,
    GaussianRational,
    discrete_log_table,
    is_prime,
    primitive_root,
)


@dataclass(frozen=True)
class DirichletCharacter:
    """chi mod p with chi(g) = zeta_{p-1}**e for the primitive root g."""

    p: int
    g: int
    e: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"modulus must be an odd prime, got {self.p}")
        discrete_log_table(self.p, self.g)  # validates g
        if not 0 <= self.e <= self.p - 2:
            raise ValueError(f"exponent {self.e} out of range [0, {self.p - 2}]")

    # -- group structure ----------------------------------------------

    @property
    def order(self) -> int:
        return (self.p - 1) // gcd(self.e, self.p - 1)

    def is_even(self) -> bool:
        return self.e % 2 == 0

    def parity(self) -> str:
        return "even" if self.is_even() else "odd"

    def is_trivial(self) -> bool:
        return self.e == 0

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.p, self.g, (self.p - 1 - self.e) % (self.p - 1))

    def power(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.p, self.g, (k * self.e) % (self.p - 1))

    # -- evaluation ---------------------------------------------------

    def t_exponent(self, d: int) -> int:
        """The exponent t with chi(d) = zeta_{p-1}**t, for p not dividing d."""
        if d % self.p == 0:
            raise ValueError(f"{d} is divisible by the modulus {self.p}")
        dlog = discrete_log_table(self.p, self.g)[d % self.p]
        return (self.e * dlog) % (self.p - 1)

    def value(self, a: int) -> GaussianRational:
        """chi(a) as an exact Gaussian rational; requires order | 4."""
        if a % self.p == 0:
            return ZERO
        t = self.t_exponent(a)
        quarter, rem = divmod(4 * t, self.p - 1)
        if rem != 0:
            raise ValueError(
                f"character of order {self.order} takes values outside Q(i)"
            )
        return FOURTH_ROOTS[quarter % 4]

    def label(self) -> str:
        return f"chi[p={self.p},g={self.g},e={self.e}]"


def trivial_character(p: int) -> DirichletCharacter:
    return DirichletCharacter(p, primitive_root(p), 0)


def quadratic_character(p: int) -> DirichletCharacter:
    """The non-trivial real character mod p (the Kronecker symbol for p odd)."""
    return DirichletCharacter(p, primitive_root(p), (p - 1) // 2)


def quartic_pair(p: int) -> tuple[DirichletCharacter, DirichletCharacter]:
    """The two exact-order-4 characters mod p, for p = 5 (mod 8).

    The first component is the canonical choice with chi(2) = +i (the
    Kronecker symbol forces chi(2) in {i, -i}); the second is its
    conjugate.
    """
    if p % 8 != 5 or not is_prime(p):
        raise ValueError(f"quartic pair requires a prime p = 5 (mod 8), got {p}")
    g = primitive_root(p)
    chi = DirichletCharacter(p, g, (p - 1) // 4)
    if chi.value(2) != FOURTH_ROOTS[1]:
        chi = chi.conj()
    assert chi.value(2) == FOURTH_ROOTS[1]
    return chi, chi.conj()


def canonical_quartic(p: int, sign: int = +1) -> DirichletCharacter:
    """The quartic character with chi(2) = sign * i."""
    chi, chibar = quartic_pair(p)
    if sign == +1:
        return chi
    if sign == -1:
        return chibar
    raise ValueError("sign must be +1 or -1")


def all_characters(p: int, g: int | None = None) -> list[DirichletCharacter]:
    """The full cyclic character group mod p, ordered by exponent."""
    if g is None:
        g = primitive_root(p)
    return [DirichletCharacter(p, g, e) for e in range(p - 1)]
