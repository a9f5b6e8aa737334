"""Class groups, principality tests, and fundamental units via binary quadratic forms.

Negative discriminants get the full class group with composition; positive
discriminants get narrow-class counts and principality via cycles of reduced
indefinite forms under the rho operator.  Everything is exact integer
arithmetic on fundamental discriminants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .arith import factor, is_fundamental
from .errors import (
    BoundExceeded,
    DiscriminantMismatch,
    InertPrime,
    NotFundamental,
    SquareDiscriminant,
)
from . import arith

DEFAULT_ENUM_BOUND = 10**7


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True, order=True)
class QuadForm:
    """Integral binary quadratic form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, x: int, p: int, y: int, q: int) -> "QuadForm":
        """Act by the unimodular matrix [[x, p], [y, q]] on the right."""
        if x * q - y * p != 1:
            raise ValueError("matrix is not unimodular")
        a, b, c = self.a, self.b, self.c
        a2 = self.value(x, y)
        c2 = self.value(p, q)
        b2 = 2 * a * x * p + b * (x * q + y * p) + 2 * c * y * q
        return QuadForm(a2, b2, c2)


@dataclass(frozen=True)
class AbelianType:
    """Invariant factors of a finite abelian 2-group, nonincreasing 2-powers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        for i, p in enumerate(self.parts):
            if p < 2 or p & (p - 1):
                raise ValueError(f"part {p} is not a 2-power >= 2")
            if i and self.parts[i - 1] < p:
                raise ValueError("parts must be nonincreasing")

    @classmethod
    def of(cls, *parts: int) -> "AbelianType":
        """Build from factors in any order; trivial factors are dropped."""
        return cls(tuple(sorted((p for p in parts if p != 1), reverse=True)))

    @property
    def order(self) -> int:
        n = 1
        for p in self.parts:
            n *= p
        return n

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def abelian_type_from_counts(counts: list[int]) -> AbelianType:
    """Invariant factors of an abelian 2-group from its power-torsion counts.

    counts[j] = number of elements x with x^(2^j) = identity; counts[0] = 1.
    """
    ranks = [c.bit_length() - 1 for c in counts]
    parts: list[int] = []
    for j in range(1, len(ranks)):
        # Number of invariant factors exactly 2^j.
        exactly = (ranks[j] - ranks[j - 1]) - (
            (ranks[j + 1] - ranks[j]) if j + 1 < len(ranks) else 0
        )
        parts.extend([1 << j] * exactly)
    return AbelianType(tuple(sorted(parts, reverse=True)))


@dataclass(frozen=True)
class Unit:
    """Fundamental solution of x^2 - d y^2 = 4 * norm."""

    x: int
    y: int
    norm: int


def principal_form(d: int) -> QuadForm:
    """The principal form of discriminant d: (1, d mod 2, ...) for d < 0,
    (1, b0, ...) with the largest b0 <= sqrt(d) of correct parity for d > 0."""
    if d < 0:
        b = d & 1
    else:
        s = isqrt(d)
        b = s if (s - d) % 2 == 0 else s - 1
    return QuadForm(1, b, (b * b - d) // 4)


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------

def _reduce_definite(f: QuadForm) -> QuadForm:
    d = f.disc
    a, b, c = f.a, f.b, f.c
    if a < 0:
        a, c = -a, -c  # positive definite representative
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            k = (a - b) // (2 * a)  # shift b into (-a, a]
            b += 2 * a * k
            c = (b * b - d) // (4 * a)
            continue
        break
    if b < 0 and a == c:
        b = -b
    return QuadForm(a, b, c)


def _is_reduced_indef(d: int, f: QuadForm) -> bool:
    a, b = f.a, f.b
    if b <= 0 or b * b >= d:
        return False
    t = 2 * abs(a)
    return (t + b) ** 2 > d and (t - b) ** 2 < d


def _rho(d: int, f: QuadForm) -> QuadForm:
    """One step of the rho operator, normalizing toward/along the cycle."""
    c = f.c
    ac = abs(c)
    s = isqrt(d)
    r = (-f.b) % (2 * ac)
    if ac > s:
        b2 = r if r <= ac else r - 2 * ac
    else:
        b2 = s - ((s - r) % (2 * ac))
    return QuadForm(c, b2, (b2 * b2 - d) // (4 * c))


def reduce_form(f: QuadForm) -> QuadForm:
    """Gauss reduction: unique reduced form (definite) or a reduced form in
    the cycle of f (indefinite)."""
    d = f.disc
    if d == 0 or (d > 0 and _is_square(d)):
        raise SquareDiscriminant(f"discriminant {d} is zero or a square")
    if d < 0:
        return _reduce_definite(f)
    g = f
    while not _is_reduced_indef(d, g):
        g = _rho(d, g)
    return g


def _cycle(d: int, f: QuadForm) -> list[QuadForm]:
    """The rho-cycle of a reduced indefinite form."""
    start = f
    out = [start]
    g = _rho(d, start)
    while g != start:
        out.append(g)
        g = _rho(d, g)
    return out


# ---------------------------------------------------------------------------
# Composition (negative and positive discriminants alike)
# ---------------------------------------------------------------------------

def _coprime_representation(f: QuadForm, modulus: int) -> QuadForm:
    """Equivalent form whose leading coefficient is coprime to modulus."""
    if gcd(f.a, modulus) == 1:
        return f
    box = 1
    while box <= 64:
        for x in range(-box, box + 1):
            for y in range(-box, box + 1):
                if gcd(x, y) != 1:
                    continue
                v = f.value(x, y)
                if v != 0 and gcd(v, modulus) == 1:
                    # Extend (x, y) to a unimodular matrix.
                    _, u, w = _ext_gcd(x, y)
                    return f.transform(x, -w, y, u)
        box *= 2
    raise ArithmeticError("no coprime represented value found")  # pragma: no cover


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition; returns a reduced representative of the product class."""
    d = f.disc
    if d != g.disc:
        raise DiscriminantMismatch(f"{f.disc} != {g.disc}")
    g2 = _coprime_representation(g, 2 * f.a)
    a1, b1 = f.a, f.b
    a2, b2 = g2.a, g2.b
    # Concordant forms: B == b1 mod 2 a1, B == b2 mod 2 a2, gcd(a1, a2) = 1.
    m1, m2 = 2 * a1, 2 * a2
    gg, u, _ = _ext_gcd(m1 // 2, m2 // 2)
    assert gg == 1
    # CRT for moduli 2 a1 and 2 a2 sharing the factor 2 (b1, b2 same parity).
    k = ((b2 - b1) // 2 * u) % a2
    B = b1 + m1 * k
    a3 = a1 * a2
    return reduce_form(QuadForm(a3, B, (B * B - d) // (4 * a3)))


def form_pow(f: QuadForm, k: int) -> QuadForm:
    d = f.disc
    r = reduce_form(principal_form(d))
    base = reduce_form(f)
    if k < 0:
        base = reduce_form(QuadForm(base.a, -base.b, base.c))
        k = -k
    while k:
        if k & 1:
            r = compose(r, base)
        base = compose(base, base)
        k >>= 1
    return r


# ---------------------------------------------------------------------------
# Class groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassGroup:
    """Form class group of a fundamental discriminant.

    Negative disc: `classes` are the unique reduced representatives and
    composition closes on them.  Positive disc: `classes` are one reduced
    form per narrow class (cycle representatives); no group law exposed.
    """

    disc: int
    classes: tuple[QuadForm, ...]
    abelian_type: AbelianType | None = field(default=None)

    @property
    def h(self) -> int:
        return len(self.classes)


def _reduced_definite_forms(d: int) -> list[QuadForm]:
    out = []
    amax = isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            out.append(QuadForm(a, b, c))
    return out


def _reduced_indefinite_forms(d: int) -> list[QuadForm]:
    out = []
    s = isqrt(d)
    for b in range(1, s + 1):
        if (b - d) % 2:
            continue
        prod4 = d - b * b  # = -4ac > 0
        if prod4 == 0:
            continue
        assert prod4 % 4 == 0
        prod = prod4 // 4  # = -ac = |a| |c|
        for aa in _divisors(prod):
            if (2 * aa + b) ** 2 > d and (2 * aa - b) ** 2 < d:
                out.append(QuadForm(aa, b, -(prod // aa)))
                out.append(QuadForm(-aa, b, prod // aa))
    return out


def _divisors(n: int) -> list[int]:
    ds = [1]
    for p in sorted(set(factor(n))):
        e = 0
        nn = n
        while nn % p == 0:
            nn //= p
            e += 1
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _sylow2_type(classes: list[QuadForm], d: int) -> AbelianType:
    h = len(classes)
    odd = h
    while odd % 2 == 0:
        odd //= 2
    ident = reduce_form(principal_form(d))
    sylow = {form_pow(f, odd) for f in classes}
    # counts[j] = #{x in Sylow_2 : x^(2^j) = 1}
    counts = [1]
    cur = list(sylow)
    while counts[-1] < len(sylow):
        cur = [compose(g, g) for g in cur]
        counts.append(sum(1 for g in cur if g == ident))
    return abelian_type_from_counts(counts)


def class_group(d: int, bound: int = DEFAULT_ENUM_BOUND) -> ClassGroup:
    """Full class group (negative d) or narrow cycle representatives (positive d)."""
    if not is_fundamental(d):
        raise NotFundamental(f"{d} is not a fundamental discriminant")
    if abs(d) > bound:
        raise BoundExceeded(f"|{d}| exceeds enumeration bound {bound}")
    if d < 0:
        classes = _reduced_definite_forms(d)
        return ClassGroup(d, tuple(classes), _sylow2_type(classes, d))
    forms = _reduced_indefinite_forms(d)
    seen: set[QuadForm] = set()
    reps: list[QuadForm] = []
    for f in forms:
        if f in seen:
            continue
        cyc = _cycle(d, f)
        seen.update(cyc)
        reps.append(f)
    return ClassGroup(d, tuple(reps), None)


def two_part(g: ClassGroup) -> tuple[int, AbelianType | None]:
    """(2-part of h, invariant factors of the 2-Sylow for negative disc)."""
    h2 = 1
    hh = g.h
    while hh % 2 == 0:
        hh //= 2
        h2 *= 2
    return h2, g.abelian_type


def prime_form(d: int, ell: int) -> QuadForm:
    """A form (ell, b, c) of discriminant d representing a prime ideal above ell."""
    if arith.kronecker(d, ell) == -1:
        raise InertPrime(f"{ell} is inert in discriminant {d}")
    for b in range(0, 2 * ell + 1):
        if (b - d) % 2 == 0 and (b * b - d) % (4 * ell) == 0:
            return QuadForm(ell, b, (b * b - d) // (4 * ell))
    raise InertPrime(f"no form of discriminant {d} with leading coefficient {ell}")


def is_principal(d: int, f: QuadForm, narrow: bool = True) -> bool:
    """Principality of the class of f: reduce-and-compare for d < 0, principal
    cycle membership (narrow) for d > 0; wide sense adds the (-1, b0, *) cycle."""
    if f.disc != d:
        raise DiscriminantMismatch(f"form discriminant {f.disc} != {d}")
    r = reduce_form(f)
    if d < 0:
        return r == reduce_form(principal_form(d))
    p = reduce_form(principal_form(d))
    cyc = set(_cycle(d, p))
    if r in cyc:
        return True
    if narrow:
        return False
    b0 = p.b
    neg = reduce_form(QuadForm(-1, b0, (d - b0 * b0) // 4))
    return r in set(_cycle(d, neg))


def fundamental_unit(d: int) -> Unit:
    """Minimal unit > 1 of discriminant d as a solution of x^2 - d y^2 = +-4,
    computed from the automorph matrix of the principal cycle."""
    p = reduce_form(principal_form(d))
    # Accumulate the rho-step matrices [[0, -1], [1, s]], s = (b + b') / (2c).
    m11, m12, m21, m22 = 1, 0, 0, 1
    g = p
    while True:
        g2 = _rho(d, g)
        s = (g.b + g2.b) // (2 * g.c)
        m11, m12, m21, m22 = m12, -m11 + s * m12, m22, -m21 + s * m22
        g = g2
        if g == p:
            break
    t = abs(m11 + m22)
    u = abs(m21)
    assert t * t - d * u * u == 4
    x = isqrt(t - 2) if t >= 2 else 0
    if x > 0 and x * x == t - 2 and u % x == 0:
        y = u // x
        if x * x - d * y * y == -4:
            return Unit(x, y, -1)
    return Unit(t, u, 1)


def wide_h2(d: int, bound: int = DEFAULT_ENUM_BOUND) -> int:
    """2-part of the ordinary (wide) class number of a real quadratic field."""
    g = class_group(d, bound)
    h2, _ = two_part(g)
    if fundamental_unit(d).norm == 1:
        h2 //= 2
        if h2 == 0:
            h2 = 1
    return max(h2, 1)
