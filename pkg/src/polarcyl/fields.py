"""Exact coefficient fields: Q, F_p, F_p[x]/(h) and quadratic extensions.

Every field hands out ``Elt`` values that support the usual operators and
compare equal to plain integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt
from typing import Optional


class Elt:
    __slots__ = ("F", "v")

    def __init__(self, F: "Field", v):
        self.F = F
        self.v = v

    def _co(self, o) -> Optional["Elt"]:
        try:
            return self.F(o)
        except TypeError:
            return None

    def __add__(self, o):
        o = self._co(o)
        return NotImplemented if o is None else Elt(self.F, self.F._add(self.v, o.v))

    def __sub__(self, o):
        o = self._co(o)
        return NotImplemented if o is None else Elt(self.F, self.F._sub(self.v, o.v))

    def __mul__(self, o):
        o = self._co(o)
        return NotImplemented if o is None else Elt(self.F, self.F._mul(self.v, o.v))

    def __truediv__(self, o):
        o = self._co(o)
        return NotImplemented if o is None else self * o.inverse()

    def __radd__(self, o):
        return self.F(o) + self

    def __rsub__(self, o):
        return self.F(o) - self

    def __rmul__(self, o):
        return self.F(o) * self

    def __rtruediv__(self, o):
        return self.F(o) / self

    def __neg__(self):
        return Elt(self.F, self.F._neg(self.v))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.F.one, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "Elt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Elt(self.F, self.F._inv(self.v))

    def is_zero(self) -> bool:
        return self.F._is_zero(self.v)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        o = self._co(o)
        return o is not None and self.F._is_zero(self.F._sub(self.v, o.v))

    def __hash__(self):
        return hash((hash(self.F), self.F._key(self.v)))

    def __repr__(self):
        return self.F._str(self.v)

    __str__ = __repr__


class Field:
    characteristic: int = 0
    order: Optional[int] = None

    @property
    def zero(self) -> Elt:
        return self(0)

    @property
    def one(self) -> Elt:
        return self(1)

    def __call__(self, x) -> Elt:
        if isinstance(x, Elt):
            if x.F is self or x.F == self:
                return x if x.F is self else Elt(self, x.v)
            return self._lift(x)
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Elt(self, self._from_rational(Fraction(x)))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def _lift(self, x: Elt) -> Elt:
        raise TypeError(f"cannot coerce an element of {x.F} into {self}")

    def _key(self, v):
        return v

    def sqrt(self, a) -> Optional[Elt]:
        raise NotImplementedError

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def random(self, rng: random.Random) -> Elt:
        raise NotImplementedError


class Rationals(Field):
    def __eq__(self, o):
        return isinstance(o, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def _from_rational(self, q):
        return q

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _str(self, a):
        return str(a)

    def sqrt(self, a) -> Optional[Elt]:
        q = self(a).v
        if q < 0:
            return None
        n, d = isqrt(q.numerator), isqrt(q.denominator)
        if n * n != q.numerator or d * d != q.denominator:
            return None
        return self(Fraction(n, d))

    def random(self, rng: random.Random) -> Elt:
        return self(rng.randint(-9, 9))


QQ = Rationals()


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = self.characteristic = self.order = p

    def __eq__(self, o):
        return isinstance(o, PrimeField) and o.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def _from_rational(self, q):
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} has no image mod {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _str(self, a):
        return str(a)

    def sqrt(self, a) -> Optional[Elt]:
        return _tonelli_shanks(self(a))

    def random(self, rng: random.Random) -> Elt:
        return self(rng.randrange(self.p))


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class ExtensionField(Field):
    """F_p[x]/(h) for a monic irreducible h of degree k >= 2."""

    def __init__(self, base: PrimeField, modulus: list[int]):
        h = [c % base.p for c in modulus]
        if len(h) < 3 or h[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 2 (low to high coefficients)")
        self.base = base
        self.h = tuple(h)
        self.k = len(h) - 1
        self.characteristic = base.p
        self.order = base.p ** self.k

    def __eq__(self, o):
        return isinstance(o, ExtensionField) and o.base == self.base and o.h == self.h

    def __hash__(self):
        return hash(("GFext", self.base.p, self.h))

    def __repr__(self):
        return f"GF({self.base.p}^{self.k})"

    @property
    def generator(self) -> Elt:
        return Elt(self, (0, 1) + (0,) * (self.k - 2))

    def _from_rational(self, q):
        return (self.base._from_rational(q),) + (0,) * (self.k - 1)

    def _lift(self, x: Elt) -> Elt:
        if x.F == self.base:
            return Elt(self, (x.v,) + (0,) * (self.k - 1))
        return super()._lift(x)

    def _add(self, a, b):
        p = self.base.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.base.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.base.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        p, k, h = self.base.p, self.k, self.h
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for j in range(k):
                    prod[d - k + j] -= c * h[j]
        return tuple(c % p for c in prod[:k])

    def _inv(self, a):
        return (Elt(self, a) ** (self.order - 2)).v

    def _is_zero(self, a):
        return not any(a)

    def _str(self, a):
        terms = [f"{c}*g^{i}" if i else str(c) for i, c in enumerate(a) if c]
        return " + ".join(terms) or "0"

    def sqrt(self, a) -> Optional[Elt]:
        return _tonelli_shanks(self(a))

    def random(self, rng: random.Random) -> Elt:
        return Elt(self, tuple(rng.randrange(self.base.p) for _ in range(self.k)))


class QuadraticExtension(Field):
    """K(sqrt(d)) for a non-square d of K; elements are a + b sqrt(d)."""

    def __init__(self, K: Field, d):
        d = K(d)
        if K.sqrt(d) is not None:
            raise ValueError(f"{d} is a square in {K}")
        self.K = K
        self.d = d
        self.characteristic = K.characteristic
        self.order = None if K.order is None else K.order ** 2

    def __eq__(self, o):
        return isinstance(o, QuadraticExtension) and o.K == self.K and o.d == self.d

    def __hash__(self):
        return hash(("quad", hash(self.K), hash(self.d)))

    def __repr__(self):
        return f"{self.K}(sqrt({self.d}))"

    @property
    def root(self) -> Elt:
        return Elt(self, (self.K.zero, self.K.one))

    def _from_rational(self, q):
        return (self.K(q), self.K.zero)

    def _lift(self, x: Elt) -> Elt:
        return Elt(self, (self.K(x), self.K.zero))

    def _key(self, v):
        return (self.K._key(v[0].v), self.K._key(v[1].v))

    def _add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def _sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def _neg(self, a):
        return (-a[0], -a[1])

    def _mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def _inv(self, a):
        n = (a[0] * a[0] - self.d * a[1] * a[1]).inverse()
        return (a[0] * n, -a[1] * n)

    def _is_zero(self, a):
        return a[0].is_zero() and a[1].is_zero()

    def _str(self, a):
        return f"({a[0]}) + ({a[1]})*sqrt({self.d})"

    def sqrt(self, a) -> Optional[Elt]:
        # (x + y s)^2 = a + b s  <=>  x^2 + d y^2 = a, 2xy = b
        a0, b0 = self(a).v
        K, half = self.K, self.K(Fraction(1, 2))
        if b0.is_zero():
            x = K.sqrt(a0)
            if x is not None:
                return Elt(self, (x, K.zero))
            y = K.sqrt(a0 / self.d)
            return None if y is None else Elt(self, (K.zero, y))
        s = K.sqrt(a0 * a0 - self.d * b0 * b0)
        if s is None:
            return None
        for sign in (1, -1):
            x = K.sqrt((a0 + sign * s) * half)
            if x is not None and not x.is_zero():
                return Elt(self, (x, b0 * half / x))
        return None

    def random(self, rng: random.Random) -> Elt:
        return Elt(self, (self.K.random(rng), self.K.random(rng)))


def _tonelli_shanks(a: Elt) -> Optional[Elt]:
    F = a.F
    q = F.order
    if a.is_zero():
        return a
    if q % 2 == 0:
        return a ** (q // 2)
    if a ** ((q - 1) // 2) != 1:
        return None
    s, m = 0, q - 1
    while m % 2 == 0:
        s, m = s + 1, m // 2
    rng = random.Random(q)
    while True:
        z = F.random(rng)
        if z and z ** ((q - 1) // 2) != 1:
            break
    c, x, t, e = z ** m, a ** ((m + 1) // 2), a ** m, s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2, i = t2 * t2, i + 1
        b = c ** (1 << (e - i - 1))
        x, c, e = x * b, b * b, i
        t = t * c
    return x


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
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


def parse_field(spec: str) -> Field:
    """'q' for the rationals, 'p:<prime>' for a prime field."""
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return QQ
    if spec.startswith("p:"):
        return GF(int(spec[2:]))
    raise ValueError(f"unknown field {spec!r}; use q or p:<prime>")
