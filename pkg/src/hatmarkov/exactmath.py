"""Exact arithmetic in Q(phi, xi).

phi is the golden ratio and xi = exp(i*pi/3).  Every point of the geometry
is a QuarticNumber (a + b*phi) + (c + d*phi)*xi with rational a, b, c, d.
Real and imaginary parts live in Q(phi) and Q(phi)*sqrt(3), so all the
orientation predicates we need reduce to signs of elements of Q(phi),
which are decided with integer arithmetic only.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

Rational = Union[int, Fraction]

PHI_FLOAT = (1 + 5 ** 0.5) / 2
SQRT3_FLOAT = 3 ** 0.5

# phi and sqrt(3) as integers scaled by 2**_FIX, used for correctly rounded
# float conversion of elements with large coefficients.
_FIX = 256
_PHI_FIX = (1 << _FIX) + math.isqrt(5 << (2 * _FIX)) >> 1
_SQRT3_FIX = math.isqrt(3 << (2 * _FIX))


@contextmanager
def _ivprec(prec: int):
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        yield mpmath.iv
    finally:
        mpmath.iv.prec = old


def _sgn(n) -> int:
    return (n > 0) - (n < 0)


def sign_qphi(x, y) -> int:
    """Exact sign of x + y*phi for rationals (or ints) x, y."""
    if y == 0:
        return _sgn(x)
    if x == 0:
        return _sgn(y)
    if (x > 0) == (y > 0):
        return _sgn(x)
    # opposite signs: compare through the norm x^2 + xy - y^2
    n = x * x + x * y - y * y
    if y > 0:
        return 1 if n < 0 else -1
    return 1 if n > 0 else -1


def _normalize(nums, den):
    if den < 0:
        nums = [-n for n in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums = [n // g for n in nums]
        den //= g
    return nums, den


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QPhi:
    """Element (x + y*phi)/den of Q(phi) with integer x, y, den."""

    __slots__ = ("x", "y", "den")

    def __init__(self, x: Rational = 0, y: Rational = 0, den: int = 1):
        if isinstance(x, int) and isinstance(y, int):
            (x, y), den = _normalize([x, y], den)
        else:
            fx, fy = _as_fraction(x) / den, _as_fraction(y) / den
            den = fx.denominator * fy.denominator // math.gcd(fx.denominator, fy.denominator)
            (x, y), den = _normalize([fx.numerator * (den // fx.denominator),
                                      fy.numerator * (den // fy.denominator)], den)
        self.x = x
        self.y = y
        self.den = den

    @classmethod
    def _raw(cls, x: int, y: int, den: int) -> QPhi:
        obj = object.__new__(cls)
        (obj.x, obj.y), obj.den = _normalize([x, y], den)
        return obj

    @property
    def a(self) -> Fraction:
        return Fraction(self.x, self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.y, self.den)

    def __add__(self, o):
        o = _qphi(o)
        if o is NotImplemented:
            return o
        return QPhi._raw(self.x * o.den + o.x * self.den, self.y * o.den + o.y * self.den,
                         self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QPhi._raw(-self.x, -self.y, self.den)

    def __sub__(self, o):
        o = _qphi(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = _qphi(o)
        if o is NotImplemented:
            return o
        bd = self.y * o.y
        return QPhi._raw(self.x * o.x + bd, self.x * o.y + self.y * o.x + bd, self.den * o.den)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm (x + y phi)(x + y - y phi)."""
        return Fraction(self.x * self.x + self.x * self.y - self.y * self.y, self.den * self.den)

    def galois(self) -> QPhi:
        return QPhi._raw(self.x + self.y, -self.y, self.den)

    def inverse(self) -> QPhi:
        n = self.x * self.x + self.x * self.y - self.y * self.y
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(phi)")
        # 1/((x + y phi)/den) = den * galois / n
        return QPhi._raw((self.x + self.y) * self.den, -self.y * self.den, n)

    def __truediv__(self, o):
        o = _qphi(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return _qphi(o) * self.inverse()

    def sign(self) -> int:
        return sign_qphi(self.x, self.y)

    def __eq__(self, o):
        o = _qphi(o)
        if o is NotImplemented:
            return False
        return self.x == o.x and self.y == o.y and self.den == o.den

    def __hash__(self):
        return hash((self.x, self.y, self.den))

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __float__(self):
        return float(Fraction(self.x * (1 << _FIX) + self.y * _PHI_FIX, self.den << _FIX))

    def floor(self) -> int:
        m = math.floor(float(self))
        # float is correctly rounded up to tiny error; repair exactly
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m

    def __repr__(self):
        return f"QPhi({self.a}, {self.b})"


def _qphi(o):
    if isinstance(o, QPhi):
        return o
    if isinstance(o, (int, Fraction)):
        f = Fraction(o)
        return QPhi._raw(f.numerator, 0, f.denominator)
    return NotImplemented


class RealQuartic:
    """Real number p + q*phi + (r + s*phi)*sqrt(3) with rational p, q, r, s."""

    __slots__ = ("alpha", "beta")

    def __init__(self, p: Rational = 0, q: Rational = 0, r: Rational = 0, s: Rational = 0):
        self.alpha = QPhi(p, q)
        self.beta = QPhi(r, s)

    @classmethod
    def from_parts(cls, alpha: QPhi, beta: QPhi) -> RealQuartic:
        obj = object.__new__(cls)
        obj.alpha = alpha
        obj.beta = beta
        return obj

    @property
    def p(self) -> Fraction:
        return self.alpha.a

    @property
    def q(self) -> Fraction:
        return self.alpha.b

    @property
    def r(self) -> Fraction:
        return self.beta.a

    @property
    def s(self) -> Fraction:
        return self.beta.b

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.p, self.q, self.r, self.s)

    def __add__(self, o):
        o = _rq(o)
        return RealQuartic.from_parts(self.alpha + o.alpha, self.beta + o.beta)

    __radd__ = __add__

    def __neg__(self):
        return RealQuartic.from_parts(-self.alpha, -self.beta)

    def __sub__(self, o):
        return self + (-_rq(o))

    def __rsub__(self, o):
        return _rq(o) - self

    def __mul__(self, o):
        o = _rq(o)
        return RealQuartic.from_parts(self.alpha * o.alpha + 3 * (self.beta * o.beta),
                                      self.alpha * o.beta + self.beta * o.alpha)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = _rq(o)
        return self.alpha == o.alpha and self.beta == o.beta

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __float__(self):
        return float(self.alpha) + float(self.beta) * SQRT3_FLOAT

    def interval(self, prec: int = 128):
        with _ivprec(prec):
            phi = (1 + mpmath.iv.sqrt(5)) / 2
            r3 = mpmath.iv.sqrt(3)
            p, q, r, s = (_ivfrac(t) for t in self.coeffs)
            return p + q * phi + (r + s * phi) * r3

    def __repr__(self):
        return f"RealQuartic({self.p}, {self.q}, {self.r}, {self.s})"


def _ivfrac(t: Fraction):
    return mpmath.iv.mpf(t.numerator) / t.denominator


def _rq(o) -> RealQuartic:
    if isinstance(o, RealQuartic):
        return o
    if isinstance(o, QPhi):
        return RealQuartic.from_parts(o, QPhi())
    return RealQuartic(o)


def sign_exact(x: RealQuartic) -> int:
    """Sign of x by the two-stage squaring over Q(phi); no floating point."""
    sa, sb = x.alpha.sign(), x.beta.sign()
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # alpha and beta*sqrt(3) have opposite signs: compare alpha^2 with 3 beta^2
    d = x.alpha * x.alpha - 3 * (x.beta * x.beta)
    return sa * d.sign()


def sign(x: RealQuartic) -> int:
    """Exact sign in {-1, 0, 1}.

    The squaring procedure costs a handful of integer products, which is
    cheaper than any interval evaluation, so no floating filter is used.
    """
    return sign_exact(x)


class QuarticNumber:
    """(a + b*phi) + (c + d*phi)*xi stored over a common positive denominator."""

    __slots__ = ("n", "den", "_c")

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0):
        fr = [_as_fraction(t) for t in (a, b, c, d)]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fr]
        self.n, self.den = _normalize(nums, den)
        self.n = tuple(self.n)
        self._c = None

    @classmethod
    def _raw(cls, nums, den) -> QuarticNumber:
        obj = object.__new__(cls)
        nums, den = _normalize(list(nums), den)
        obj.n = tuple(nums)
        obj.den = den
        obj._c = None
        return obj

    @classmethod
    def from_parts(cls, re_part: QPhi, xi_part: QPhi) -> QuarticNumber:
        """Build A + C*xi from A, C in Q(phi)."""
        den = re_part.den * xi_part.den // math.gcd(re_part.den, xi_part.den)
        ka, kc = den // re_part.den, den // xi_part.den
        return cls._raw((re_part.x * ka, re_part.y * ka, xi_part.x * kc, xi_part.y * kc), den)

    @classmethod
    def grid(cls, a: int, b: int) -> QuarticNumber:
        """The grid point a + b*xi."""
        return cls._raw((a, 0, b, 0), 1)

    @property
    def a(self) -> Fraction:
        return Fraction(self.n[0], self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.n[1], self.den)

    @property
    def c(self) -> Fraction:
        return Fraction(self.n[2], self.den)

    @property
    def d(self) -> Fraction:
        return Fraction(self.n[3], self.den)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def re_part(self) -> QPhi:
        """The Q(phi) part A in A + C*xi."""
        return QPhi._raw(self.n[0], self.n[1], self.den)

    def xi_part(self) -> QPhi:
        return QPhi._raw(self.n[2], self.n[3], self.den)

    def real(self) -> QPhi:
        """Re = A + C/2."""
        a, b, c, d = self.n
        return QPhi._raw(2 * a + c, 2 * b + d, 2 * self.den)

    def imag_over_sqrt3(self) -> QPhi:
        """Im / sqrt(3) = C/2."""
        return QPhi._raw(self.n[2], self.n[3], 2 * self.den)

    def imag(self) -> RealQuartic:
        return RealQuartic.from_parts(QPhi(), self.imag_over_sqrt3())

    def is_zero(self) -> bool:
        return not any(self.n)

    def __add__(self, o):
        o = _qn(o)
        if o is NotImplemented:
            return o
        if o.den == self.den:
            return QuarticNumber._raw([p + q for p, q in zip(self.n, o.n)], self.den)
        return QuarticNumber._raw([p * o.den + q * self.den for p, q in zip(self.n, o.n)],
                                  self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(QuarticNumber)
        obj.n = tuple(-t for t in self.n)
        obj.den = self.den
        obj._c = None
        return obj

    def __sub__(self, o):
        o = _qn(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = _qn(o)
        if o is NotImplemented:
            return o
        a, b, c, d = self.n
        e, f, g, h = o.n
        # (A + C xi)(E + G xi) = AE - CG + (AG + CE + CG) xi, phi^2 = phi + 1
        ae = (a * e + b * f, a * f + b * e + b * f)
        cg = (c * g + d * h, c * h + d * g + d * h)
        ag = (a * g + b * h, a * h + b * g + b * h)
        ce = (c * e + d * f, c * f + d * e + d * f)
        return QuarticNumber._raw((ae[0] - cg[0], ae[1] - cg[1],
                                   ag[0] + ce[0] + cg[0], ag[1] + ce[1] + cg[1]),
                                  self.den * o.den)

    __rmul__ = __mul__

    def conj(self) -> QuarticNumber:
        # A + C*conj(xi) = (A + C) - C xi
        a, b, c, d = self.n
        return QuarticNumber._raw((a + c, b + d, -c, -d), self.den)

    def abs2(self) -> QPhi:
        """|z|^2 = A^2 + AC + C^2, an element of Q(phi)."""
        A, C = self.re_part(), self.xi_part()
        return A * A + A * C + C * C

    def inverse(self) -> QuarticNumber:
        n = self.abs2()
        if n.sign() == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.conj() * QuarticNumber.from_parts(n.inverse(), QPhi())

    def __truediv__(self, o):
        o = _qn(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return _qn(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        o = _qn(o)
        if o is NotImplemented:
            return False
        return self.n == o.n and self.den == o.den

    def __hash__(self):
        return hash((self.n, self.den))

    def __complex__(self):
        if self._c is None:
            a, b, c, d = self.n
            re = Fraction((2 * a + c) * (1 << _FIX) + (2 * b + d) * _PHI_FIX, self.den << (_FIX + 1))
            im = Fraction((c * (1 << _FIX) + d * _PHI_FIX) * _SQRT3_FIX, self.den << (2 * _FIX + 1))
            self._c = complex(float(re), float(im))
        return self._c

    def __repr__(self):
        return "QuarticNumber({}, {}, {}, {})".format(*(str(t) for t in self.coeffs))


def _qn(o):
    if isinstance(o, QuarticNumber):
        return o
    if isinstance(o, (int, Fraction)):
        f = Fraction(o)
        return QuarticNumber._raw((f.numerator, 0, 0, 0), f.denominator)
    if isinstance(o, QPhi):
        return QuarticNumber._raw((o.x, o.y, 0, 0), o.den)
    return NotImplemented


ZERO = QuarticNumber()
ONE = QuarticNumber(1)
PHI = QuarticNumber(0, 1)
XI = QuarticNumber(0, 0, 1)
PHI2 = PHI * PHI


def mul(x: QuarticNumber, y: QuarticNumber) -> QuarticNumber:
    return x * y


def cross(p: QuarticNumber, q: QuarticNumber) -> QPhi:
    """Im(conj(p) q) / sqrt(3): the 2D cross product up to the factor sqrt(3)."""
    # conj(A + C xi)(E + G xi) has xi-part A G - C E (the C G terms cancel)
    A, C = p.re_part(), p.xi_part()
    E, G = q.re_part(), q.xi_part()
    return (A * G - C * E) * QPhi(Fraction(1, 2))


def orient(a: QuarticNumber, b: QuarticNumber, c: QuarticNumber) -> int:
    """+1 if a, b, c turn counterclockwise, -1 clockwise, 0 collinear."""
    return cross(b - a, c - a).sign()


def dot(p: QuarticNumber, q: QuarticNumber) -> QPhi:
    """Re(conj(p) q)."""
    A, C = p.re_part(), p.xi_part()
    E, G = q.re_part(), q.xi_part()
    # Re(conj(p) q) = AE + (AG + CE)/2 + CG
    return A * E + (A * G + C * E) * QPhi(Fraction(1, 2)) + C * G


@dataclass(frozen=True)
class ComplexInterval:
    re: object
    im: object

    def contains(self, z: complex) -> bool:
        return z.real in self.re and z.imag in self.im

    @property
    def width(self) -> float:
        return float(max(self.re.delta, self.im.delta))


def embed(x: QuarticNumber, precision: int = 53) -> ComplexInterval:
    """Certified rectangle around the complex value of x."""
    if precision < 32:
        raise ValueError("precision must be at least 32 bits")
    if x.is_zero():
        return ComplexInterval(mpmath.iv.mpf(0), mpmath.iv.mpf(0))
    with _ivprec(precision + 16):
        phi = (1 + mpmath.iv.sqrt(5)) / 2
        half_r3 = mpmath.iv.sqrt(3) / 2
        a, b, c, d = (_ivfrac(t) for t in x.coeffs)
        cc = c + d * phi
        re = a + b * phi + cc / 2
        im = cc * half_r3
        return ComplexInterval(+re, +im)


class Lattice:
    """The lattice spanned by u and v."""

    def __init__(self, u: QuarticNumber, v: QuarticNumber):
        self.u = u
        self.v = v
        self._cuv = cross(u, v)
        if self._cuv.sign() == 0:
            raise ValueError("lattice generators are dependent")

    def covolume(self) -> RealQuartic:
        """|Im(conj(u) v)| as an exact element of Q(phi)*sqrt(3)."""
        c = self._cuv if self._cuv.sign() > 0 else -self._cuv
        return RealQuartic.from_parts(QPhi(), c)

    def coords(self, z: QuarticNumber) -> tuple[QPhi, QPhi]:
        """Real coordinates (s, t) with z = s*u + t*v."""
        return cross(z, self.v) / self._cuv, cross(self.u, z) / self._cuv

    def point(self, m: int, n: int) -> QuarticNumber:
        return self.u * m + self.v * n

    def conj(self) -> Lattice:
        return Lattice(self.u.conj(), self.v.conj())

    def __eq__(self, o):
        return isinstance(o, Lattice) and self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"Lattice({self.u!r}, {self.v!r})"


U = PHI2 + XI
V = XI * U
LAMBDA = Lattice(U, V)


def reduce_mod(z: QuarticNumber, L: Lattice = LAMBDA) -> tuple[QuarticNumber, tuple[int, int]]:
    """Representative of z in the half-open cell {s u + t v : 0 <= s, t < 1}."""
    s, t = L.coords(z)
    m, n = s.floor(), t.floor()
    if m == 0 and n == 0:
        return z, (0, 0)
    return z - L.u * m - L.v * n, (m, n)


def root_of_unity(k: int) -> QuarticNumber:
    """xi**k for any integer k."""
    return _XI_POWERS[k % 6]


_XI_POWERS = [ONE]
for _ in range(5):
    _XI_POWERS.append(_XI_POWERS[-1] * XI)


def parse_quartic(text: str) -> QuarticNumber:
    """Parse 'a,b,c,d' with rational entries like 1/3."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected four comma separated rationals, got {text!r}")
    return QuarticNumber(*(Fraction(p) for p in parts))


def format_quartic(z: QuarticNumber) -> str:
    return ",".join(str(t) for t in z.coeffs)
