"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored as its coordinate vector over the power basis
``1, z, ..., z^(phi(n)-1)`` of Q(z), z = exp(2*pi*i/n), after reduction
modulo the n-th cyclotomic polynomial.  Conductors are never minimised; two
values are compared after lifting both to the lcm of their conductors.

>>> r2 = parse_cyclo("E(8)+E(8)^7")
>>> r2 * r2 == 2
True
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Cyclotomic",
    "CycloSyntaxError",
    "ConductorError",
    "parse_cyclo",
    "add",
    "sub",
    "mul",
    "neg",
    "conjugate",
    "cyclotomic_polynomial",
    "to_rational_vector",
    "from_rational_vector",
    "euler_phi",
    "root_of_unity",
]


class CycloSyntaxError(ValueError):
    """Malformed cyclotomic expression; ``position`` is the 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class ConductorError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    sign, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            sign = -sign
        p += 1
    if m > 1:
        sign = -sign
    return sign


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, list(_cyclotomic_poly(d)))
    return tuple(poly)


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_polynomial(8)
    [1, 0, 0, 0, 1]
    """
    return list(_cyclotomic_poly(n))


def _reduce(poly: Sequence, n: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in z (coefficients lowest first) modulo Phi_n."""
    phi = _cyclotomic_poly(n)
    deg = len(phi) - 1
    work = [Fraction(c) for c in poly]
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            work[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    work[i - deg + j] -= c * phi[j]
    work.extend([Fraction(0)] * (deg - len(work)))
    return tuple(work[:deg])


def _power_poly(n: int, e: int) -> list[int]:
    e %= n
    poly = [0] * (e + 1)
    poly[e] = 1
    return poly


class Cyclotomic:
    """Immutable element of Q(zeta_n) in canonical power-basis form."""

    __slots__ = ("_n", "_coeffs")

    def __init__(self, conductor: int, coeffs: Iterable = (0,)):
        if conductor < 1:
            raise ConductorError("conductor must be a positive integer")
        self._n = conductor
        self._coeffs = _reduce(list(coeffs), conductor)

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj._n = conductor
        obj._coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, q, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [Fraction(q)])

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def lift(self, m: int) -> "Cyclotomic":
        """Re-express in Q(zeta_m); the conductor must divide m."""
        n = self._n
        if m % n:
            raise ConductorError(f"conductor {n} does not divide {m}")
        if m == n:
            return self
        step = m // n
        poly = [Fraction(0)] * (step * (len(self._coeffs) - 1) + 1)
        for i, c in enumerate(self._coeffs):
            poly[i * step] = c
        return Cyclotomic._raw(m, _reduce(poly, m))

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._coeffs[0]

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(zeta_n)/Q}(self) / phi(n); independent of the chosen conductor."""
        n = self._n
        total = Fraction(0)
        for j, c in enumerate(self._coeffs):
            if c:
                m = n // gcd(j, n)
                total += c * Fraction(_mobius(m), euler_phi(m))
        return total

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self._n)
        return sum(float(c) * z**i for i, c in enumerate(self._coeffs))

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(1, (Fraction(other),))
        return None

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        m = _lcm(self._n, other._n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic._raw(a._n, tuple(x + y for x, y in zip(a._coeffs, b._coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self._n, tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            q = other._coeffs[0]
            return Cyclotomic._raw(self._n, tuple(c * q for c in self._coeffs))
        if self.is_rational():
            q = self._coeffs[0]
            return Cyclotomic._raw(other._n, tuple(c * q for c in other._coeffs))
        a, b = self._common(other)
        prod = [Fraction(0)] * (len(a._coeffs) + len(b._coeffs) - 1)
        for i, x in enumerate(a._coeffs):
            if x:
                for j, y in enumerate(b._coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._raw(a._n, _reduce(prod, a._n))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Cyclotomic._raw(self._n, _reduce([1], self._n))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        n = self._n
        poly = [Fraction(0)] * n
        for i, c in enumerate(self._coeffs):
            poly[(-i) % n] += c
        return Cyclotomic._raw(n, _reduce(poly, n))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a._coeffs == b._coeffs

    def __hash__(self):
        return hash(self.normalized_trace())

    def __repr__(self):
        return f"Cyclotomic({self._n}, {[str(c) for c in self._coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            root = f"E({self._n})" + (f"^{i}" if i > 1 else "")
            if c == 1:
                terms.append(root)
            elif c == -1:
                terms.append("-" + root)
            else:
                terms.append(f"{c}*{root}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k."""
    if n < 1:
        raise ConductorError("E(n) needs n >= 1")
    return Cyclotomic._raw(n, _reduce(_power_poly(n, k), n))


def add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def sub(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a - b


def mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def neg(a: Cyclotomic) -> Cyclotomic:
    return -a


def conjugate(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def to_rational_vector(a: Cyclotomic, m: int) -> list[Fraction]:
    """Coordinates of ``a`` over the power basis of Q(zeta_m)."""
    if m < 1 or m % a.conductor:
        raise ConductorError(f"conductor {a.conductor} does not divide {m}")
    return list(a.lift(m).coeffs)


def from_rational_vector(coords: Sequence, m: int) -> Cyclotomic:
    if len(coords) != euler_phi(m):
        raise ValueError(f"expected {euler_phi(m)} coordinates for conductor {m}")
    return Cyclotomic(m, coords)


class _Parser:
    # expr := term (('+'|'-') term)* ; term := factor ('*' factor)*
    # factor := rational | root | '(' expr ')' | '-' factor
    # root := 'E(' uint ')' ('^' int)? ; rational := int ('/' uint)?

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.conductor = 1

    def error(self, msg: str, pos: int | None = None):
        raise CycloSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def signed_int(self) -> int:
        sign = 1
        while self.peek() in "+-" and self.peek():
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        return sign * self.uint()

    def parse(self) -> Cyclotomic:
        value = self.expr()
        if self.peek():
            if self.peek() == "/":
                self.error("division is not supported")
            self.error("unexpected character")
        return value

    def expr(self) -> Cyclotomic:
        value = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Cyclotomic:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> Cyclotomic:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch == "E":
            return self.root()
        if ch.isdigit():
            return self.rational()
        self.error("unexpected end of input" if not ch else f"unexpected {ch!r}")

    def root(self) -> Cyclotomic:
        self.pos += 1
        self.expect("(")
        start = self.pos
        n = self.uint()
        if n == 0:
            self.error("E(0) is undefined", start)
        self.expect(")")
        k = 1
        if self.peek() == "^":
            self.pos += 1
            k = self.signed_int()
        self.conductor = _lcm(self.conductor, n)
        return root_of_unity(n, k)

    def rational(self) -> Cyclotomic:
        num = self.uint()
        if self.peek() == "/":
            self.pos += 1
            if not self.peek().isdigit():
                self.error("division is not supported")
            den = self.uint()
            if den == 0:
                self.error("zero denominator")
            return Cyclotomic._raw(1, (Fraction(num, den),))
        return Cyclotomic._raw(1, (Fraction(num),))


def parse_cyclo(text: str) -> Cyclotomic:
    """Parse an ``E(n)``-style expression such as ``"-E(8)+E(8)^3"``.

    The result carries the lcm of all conductors named in the expression.
    """
    parser = _Parser(text)
    value = parser.parse()
    return value.lift(_lcm(value.conductor, parser.conductor))
