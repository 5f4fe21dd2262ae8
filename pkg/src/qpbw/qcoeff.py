"""Exact Laurent polynomials in ``q`` over the rationals.

Coefficients are stored as ``int`` whenever possible and as
:class:`fractions.Fraction` otherwise, which keeps the common case (all
catalog constants live in ``Z[q, q^-1]``) fast.  The module also provides the
balanced q-integers, q-factorials and q-binomials, and a reduced rational
function layer used by the row-reduction code.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when a Laurent polynomial quotient does not exist."""


class DivisionByZero(ZeroDivisionError):
    pass


class InvalidArgument(ValueError):
    pass


def _norm(c) -> Rational:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    """An immutable element of ``Q[q, q^-1]``.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs sorted by
    exponent with no zero coefficients.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            acc: dict[int, Rational] = {}
            for e, c in terms:
                acc[e] = acc.get(e, 0) + c
            items = acc.items()
        self.terms = tuple(sorted((int(e), _norm(c)) for e, c in items if c != 0))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls._raw(((0, _norm(c)),) if c != 0 else ())

    @classmethod
    def monomial(cls, c: Rational, e: int) -> "LaurentPoly":
        return cls._raw(((e, _norm(c)),) if c != 0 else ())

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- basic queries -------------------------------------------------
    def as_dict(self) -> dict[int, Rational]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True for ``±q^k`` (the units used by generator maps and bicharacters)."""
        return len(self.terms) == 1 and self.terms[0][1] in (1, -1)

    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return self.terms[0][0]

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def leading_coefficient(self) -> Rational:
        return self.terms[-1][1]

    def coefficient(self, e: int) -> Rational:
        for k, c in self.terms:
            if k == e:
                return c
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return LaurentPoly._raw(tuple(sorted((e, _norm(c)) for e, c in acc.items())))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return LaurentPoly._raw(tuple((e, _norm(c * other)) for e, c in self.terms))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        if len(other.terms) == 1:
            (f, d), = other.terms
            return LaurentPoly._raw(tuple((e + f, _norm(c * d)) for e, c in self.terms))
        if len(self.terms) == 1:
            return other * self
        acc: dict[int, Rational] = {}
        for e, c in self.terms:
            for f, d in other.terms:
                acc[e + f] = acc.get(e + f, 0) + c * d
        return LaurentPoly._raw(tuple(sorted((e, _norm(c)) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise InvalidArgument("negative powers only exist for monomials")
            (e, c), = self.terms
            return LaurentPoly.monomial(Fraction(1) / Fraction(c) ** (-k), e * k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Rational) -> "LaurentPoly":
        return self * c

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q^k``."""
        return LaurentPoly._raw(tuple((e + k, c) for e, c in self.terms))

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial ``c q^k``; the only invertible elements."""
        if not self.is_monomial():
            raise NotDivisible(f"{self} is not a unit of Q[q, q^-1]")
        return self ** -1

    def bar(self) -> "LaurentPoly":
        """The involution ``q -> q^-1``."""
        return LaurentPoly._raw(tuple(sorted((-e, c) for e, c in self.terms)))

    def evaluate(self, x: Rational) -> Fraction:
        """Specialize ``q = x``; only used by property tests."""
        x = Fraction(x)
        if x == 0 and self.terms and self.terms[0][0] < 0:
            raise DivisionByZero("cannot evaluate negative powers at q = 0")
        return sum((Fraction(c) * x ** e for e, c in self.terms), Fraction(0))

    # -- serialization -------------------------------------------------
    def to_triples(self) -> list[list[int]]:
        out = []
        for e, c in self.terms:
            c = Fraction(c)
            out.append([e, c.numerator, c.denominator])
        return out

    @classmethod
    def from_triples(cls, triples) -> "LaurentPoly":
        return cls({int(e): Fraction(int(a), int(b)) for e, a, b in triples})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in reversed(self.terms):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


ZERO = LaurentPoly._raw(())
ONE = LaurentPoly._raw(((0, 1),))
Q = LaurentPoly._raw(((1, 1),))
QINV = LaurentPoly._raw(((-1, 1),))
QHAT = LaurentPoly._raw(((-1, -1), (1, 1)))


def qpow(k: int) -> LaurentPoly:
    return LaurentPoly._raw(((k, 1),))


def signed_qpow(base_sign: int, k: int) -> LaurentPoly:
    """``(sign * q)^k`` for ``k >= 0``; ``(-q)^k`` when ``base_sign = -1``."""
    if k < 0:
        raise InvalidArgument("exponent must be non-negative")
    return LaurentPoly._raw(((k, base_sign ** k),))


# -- one-variable polynomial helpers (coefficient lists, low degree first) --

def _to_poly(p: LaurentPoly) -> tuple[int, list]:
    """Split ``p = q^v * P(q)`` with ``P(0) != 0``."""
    v = p.terms[0][0]
    top = p.terms[-1][0]
    coeffs: list = [Fraction(0)] * (top - v + 1)
    for e, c in p.terms:
        coeffs[e - v] = Fraction(c)
    return v, coeffs


def _from_poly(coeffs: list, shift: int = 0) -> LaurentPoly:
    return LaurentPoly({i + shift: c for i, c in enumerate(coeffs) if c})


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        quot[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
        _trim(a)
    return quot, a


def _poly_gcd(a: list, b: list) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``b * c == a`` in ``Q[q, q^-1]``."""
    if b.is_zero():
        raise DivisionByZero("division by the zero Laurent polynomial")
    if a.is_zero():
        return ZERO
    if b.is_monomial():
        return a * b.inverse()
    va, pa = _to_poly(a)
    vb, pb = _to_poly(b)
    # pb(0) != 0, so pb is coprime to q and divisibility is decided in Q[q].
    quot, rem = _poly_divmod(pa, pb)
    if rem:
        raise NotDivisible(f"({a}) is not divisible by ({b})")
    return _from_poly(quot, va - vb)


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic polynomial gcd, with the unit ``q^k`` factors discarded."""
    if a.is_zero() and b.is_zero():
        return ZERO
    pa = _to_poly(a)[1] if a else []
    pb = _to_poly(b)[1] if b else []
    return _from_poly(_poly_gcd(pa, pb))


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise InvalidArgument(f"unknown operation {op!r}")


# -- q-quantities --------------------------------------------------------

def q_int(n: int) -> LaurentPoly:
    """Balanced q-integer ``(q^n - q^-n) / (q - q^-1)``."""
    if n < 0:
        raise InvalidArgument("q-integers are defined for n >= 0")
    return exact_divide(qpow(n) - qpow(-n), QHAT)


def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise InvalidArgument("q-factorials are defined for n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


def q_binomial(n: int, k: int) -> LaurentPoly:
    if not 0 <= k <= n:
        raise InvalidArgument(f"q-binomial needs 0 <= k <= n, got ({n}, {k})")
    return exact_divide(q_factorial(n), q_factorial(k) * q_factorial(n - k))


def q_quantity(kind: str, *args: int) -> LaurentPoly:
    if kind == "int":
        return q_int(*args)
    if kind == "factorial":
        return q_factorial(*args)
    if kind == "binomial":
        return q_binomial(*args)
    raise InvalidArgument(f"unknown q-quantity {kind!r}")


# -- rational functions --------------------------------------------------

class RationalFunctionQ:
    """Reduced element of ``Q(q)``.

    Canonical form: the denominator is a monic polynomial in ``q`` with a
    nonzero constant term, coprime to the (Laurent) numerator.  Zero is
    ``0/1``.  Two rational functions are equal iff their canonical forms are.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        self.num, self.den = _rf_canonical(num, den)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunctionQ":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunctionQ):
            try:
                other = RationalFunctionQ(LaurentPoly.coerce(other))
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _rf(other)
        return RationalFunctionQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_rf(other))

    def __rsub__(self, other):
        return _rf(other) - self

    def __mul__(self, other):
        other = _rf(other)
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunctionQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def to_laurent(self) -> LaurentPoly:
        """Return the Laurent polynomial this equals, if any."""
        if self.den != ONE:
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def is_laurent(self) -> bool:
        return self.den == ONE

    def evaluate(self, x: Rational) -> Fraction:
        return self.num.evaluate(x) / self.den.evaluate(x)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _rf(x) -> RationalFunctionQ:
    if isinstance(x, RationalFunctionQ):
        return x
    return RationalFunctionQ(LaurentPoly.coerce(x))


def _rf_canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return ZERO, ONE
    vn, pn = _to_poly(num)
    vd, pd = _to_poly(den)
    g = _poly_gcd(pn, pd)
    if len(g) > 1:
        pn, r1 = _poly_divmod(pn, g)
        pd, r2 = _poly_divmod(pd, g)
        assert not r1 and not r2
    lead = pd[-1]
    pn = [c / lead for c in pn]
    pd = [c / lead for c in pd]
    return _from_poly(pn, vn - vd), _from_poly(pd)


def rf_reduce(r: RationalFunctionQ) -> RationalFunctionQ:
    return RationalFunctionQ(r.num, r.den)
