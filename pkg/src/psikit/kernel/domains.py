"""Coefficient domains: the integers, the rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs, trial division below."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


class Domain:
    """A coefficient domain. Instances are immutable and compare by value."""

    is_field = False
    characteristic = 0
    tag = "?"

    def convert(self, value):
        raise NotImplementedError

    def reduce(self, value):
        return value

    def div(self, a, b):
        raise ZeroDivisionError

    def inv(self, a):
        return self.div(1, a)

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))


class IntegerRing(Domain):
    tag = "Int"

    def convert(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return value.numerator
        return int(value)

    def __repr__(self):
        return "ZZ"


class RationalField(Domain):
    tag = "Rat"
    is_field = True

    def convert(self, value):
        return Fraction(value)

    def div(self, a, b):
        return Fraction(a) / b

    def __repr__(self):
        return "QQ"


class PrimeField(Domain):
    tag = "ModP"
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.p = p

    def convert(self, value):
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, value):
        return value % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return a * pow(b, -1, self.p) % self.p

    def __repr__(self):
        return f"Fp({self.p})"


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_base(text: str) -> Domain:
    text = text.strip()
    if text == "ZZ":
        return ZZ
    if text == "QQ":
        return QQ
    if text.startswith("Fp(") and text.endswith(")"):
        return GF(int(text[3:-1]))
    raise ValueError(f"unknown base {text!r}")
