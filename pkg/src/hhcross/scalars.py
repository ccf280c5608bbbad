"""Prime field arithmetic and roots of unity.

Scalars are plain Python ints reduced to [0, p).  A FieldCtx records the
prime p together with the root-of-unity data every eigenframe computation
needs: the order N (the exponent of the acting group) and a fixed primitive
N-th root zeta.  zeta is pinned deterministically as g0^((p-1)/N) where g0
is the smallest primitive root mod p, so identical inputs always produce
identical frames downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, NotPrime, OutOfRange, RootUnavailable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    k = max(n, 2)
    while not is_prime(k):
        k += 1
    return k


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at the scales used here."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primitive_root(p: int) -> int:
    """Smallest primitive root mod a prime p."""
    if p == 2:
        return 1
    qs = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise NotPrime(f"no primitive root found; {p} is not prime")


def scalar_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class FieldCtx:
    """Immutable field context: prime p, root order N, primitive N-th root zeta."""

    p: int
    N: int
    zeta: int

    def inv(self, a: int) -> int:
        return scalar_inverse(a, self.p)

    def root_power(self, j: int) -> int:
        return pow(self.zeta, j, self.p)


def make_field_ctx(p: int, N: int) -> FieldCtx:
    """Build a FieldCtx, checking p prime and N | p-1.

    N = 1 is allowed (trivial group); zeta is then 1.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if not isinstance(N, int) or N < 1:
        raise OutOfRange(f"root order N must be a positive integer, got {N}")
    if (p - 1) % N != 0:
        raise RootUnavailable(f"N = {N} does not divide p - 1 = {p - 1}")
    zeta = pow(primitive_root(p), (p - 1) // N, p)
    # zeta has exact order N by construction; assert the cheap direction.
    assert pow(zeta, N, p) == 1
    return FieldCtx(p=p, N=N, zeta=zeta)


def factorial_inverse(k: int, p: int) -> int:
    """Inverse of k! mod p; raises if p <= k (factorial divisible by p)."""
    from .errors import FactorialNotInvertible

    if k >= p:
        raise FactorialNotInvertible(f"{k}! is 0 mod {p}")
    acc = 1
    for i in range(2, k + 1):
        acc = acc * i % p
    return scalar_inverse(acc, p)
