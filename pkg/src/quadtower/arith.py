"""Exact integer utilities: Kronecker symbols, factorization, prime discriminants."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundExceeded, NotFundamental

DEFAULT_FACTOR_BOUND = 1 << 40

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n within the toolkit's working range."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers by the standard extension."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # Factor out powers of 2 from n.
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol (a/n) for odd n > 0 by quadratic reciprocity.
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def factor(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> list[int]:
    """Prime factors of n >= 1 with multiplicity, sorted; trial division."""
    if n < 1:
        raise ValueError(f"factor requires n >= 1, got {n}")
    if n > bound:
        raise BoundExceeded(f"{n} exceeds factoring bound {bound}")
    out: list[int] = []
    for p in (2, 3):
        while n % p == 0:
            out.append(p)
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out.append(p)
                n //= p
        f += 6
    if n > 1:
        out.append(n)
    return out


def squarefree(n: int) -> bool:
    if n < 0:
        n = -n
    fs = factor(n)
    return len(set(fs)) == len(fs)


def is_fundamental(d: int) -> bool:
    """True iff d is a fundamental discriminant (including d = 1)."""
    if d == 0:
        return False
    if d % 4 == 1 or d % 4 == -3:
        return squarefree(d)
    if d % 16 in (8, 12):
        return squarefree(d // 4)
    return False


@dataclass(frozen=True, order=True)
class PrimeDiscriminant:
    """A fundamental discriminant divisible by exactly one prime."""

    value: int

    def __post_init__(self) -> None:
        v = self.value
        ok = v in (-4, 8, -8) or (
            is_fundamental(v) and abs(v) % 2 == 1 and is_prime(abs(v))
        )
        if not ok:
            raise NotFundamental(f"{v} is not a prime discriminant")

    @property
    def prime(self) -> int:
        return 2 if self.value in (-4, 8, -8) else abs(self.value)


def odd_prime_discriminant(p: int) -> PrimeDiscriminant:
    """p* = (-1)^((p-1)/2) p for an odd prime p."""
    return PrimeDiscriminant(p if p % 4 == 1 else -p)


def prime_discriminants(d: int) -> frozenset[PrimeDiscriminant]:
    """Unique factorization of a fundamental discriminant into prime discriminants."""
    if not is_fundamental(d):
        raise NotFundamental(f"{d} is not a fundamental discriminant")
    if d == 1:
        return frozenset()
    parts: list[PrimeDiscriminant] = []
    rest = d
    for p in sorted(set(factor(abs(d)))):
        if p == 2:
            continue
        pd = odd_prime_discriminant(p)
        parts.append(pd)
        rest //= pd.value
    if rest != 1:
        parts.append(PrimeDiscriminant(rest))
    return frozenset(parts)
