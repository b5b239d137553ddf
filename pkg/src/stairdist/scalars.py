"""Extended real scalars: exact rationals plus +inf / -inf.

Finite values are plain fractions.Fraction; the two infinities are the
singletons INF and NINF below.  Arithmetic saturates (a + inf = inf) except
that opposite infinities cancel to 0, which is the convention needed when a
diagonal line degenerates to a corner of the extended plane.
"""

from fractions import Fraction


class _Infinite:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return isinstance(other, _Infinite) and other.sign == self.sign

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("extended-real", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinite):
            return self.sign < other.sign
        return self.sign < 0

    def __le__(self, other):
        if isinstance(other, _Infinite):
            return self.sign <= other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Infinite):
            return self.sign > other.sign
        return self.sign > 0

    def __ge__(self, other):
        if isinstance(other, _Infinite):
            return self.sign >= other.sign
        return self.sign > 0

    def __neg__(self):
        return NINF if self.sign > 0 else INF

    def __pos__(self):
        return self

    def __abs__(self):
        return INF

    def __add__(self, other):
        if isinstance(other, _Infinite) and other.sign != self.sign:
            return Fraction(0)
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, _Infinite) else Fraction(0))

    def __rsub__(self, other):
        return -self

    def __mul__(self, other):
        if isinstance(other, _Infinite):
            return INF if self.sign == other.sign else NINF
        if other == 0:
            return Fraction(0)
        return self if other > 0 else -self

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by finite nonzero scalars is meaningful here
        if isinstance(other, _Infinite):
            raise ZeroDivisionError("inf / inf")
        return self if other > 0 else -self

    def __rtruediv__(self, other):
        return Fraction(0)

    def __float__(self):
        return float("inf") if self.sign > 0 else float("-inf")


INF = _Infinite(1)
NINF = _Infinite(-1)


class Dual:
    """A first-order infinitesimal perturbation a + b*eps of a rational.

    Ordering is lexicographic, so Dual(a, 1) behaves like "just above a" and
    Dual(a, -1) like "just below a".  Evaluating a piecewise computation at
    such a point yields the exact one-sided limit in the real part.
    Arithmetic drops eps^2 terms; results with zero eps part collapse back
    to plain Fraction so mixed knot sets stay consistent.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __repr__(self):
        return "Dual(%s, %s)" % (self.a, self.b)

    @staticmethod
    def _parts(x):
        if isinstance(x, Dual):
            return x.a, x.b
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return None

    def __eq__(self, other):
        p = Dual._parts(other)
        return p is not None and (self.a, self.b) == p

    def __ne__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return (self.a, self.b) != p

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return (self.a, self.b) < p

    def __le__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return (self.a, self.b) <= p

    def __gt__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return (self.a, self.b) > p

    def __ge__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return (self.a, self.b) >= p

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if (self.a, self.b) < (0, 0) else self

    def __add__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return _mk_dual(self.a + p[0], self.b + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return _mk_dual(self.a - p[0], self.b - p[1])

    def __rsub__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return _mk_dual(p[0] - self.a, p[1] - self.b)

    def __mul__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        return _mk_dual(self.a * c, self.a * d + self.b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        if c != 0:
            return _mk_dual(self.a / c, (self.b * c - self.a * d) / (c * c))
        if d == 0:
            raise ZeroDivisionError("division by zero dual")
        if self.a != 0:
            raise ZeroDivisionError("finite part divided by an infinitesimal")
        return Fraction(self.b / d)

    def __rtruediv__(self, other):
        p = Dual._parts(other)
        if p is None:
            return NotImplemented
        return _mk_dual(p[0], p[1]).__truediv__(self) if isinstance(other, Dual) else Dual(p[0], p[1]).__truediv__(self)

    def __float__(self):
        return float(self.a)

    @property
    def real(self):
        return self.a


def _mk_dual(a, b):
    return Fraction(a) if b == 0 else Dual(a, b)


def real_part(x):
    """The standard part of a scalar: strips any infinitesimal component."""
    if isinstance(x, Dual):
        return x.a
    return x


def is_inf(x):
    return isinstance(x, _Infinite)


def is_finite(x):
    return not isinstance(x, _Infinite)


def ext(x):
    """Coerce a user-supplied number into an extended real."""
    if isinstance(x, (_Infinite, Fraction, Dual)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x == float("inf"):
            return INF
        if x == float("-inf"):
            return NINF
        if x != x:
            raise ValueError("nan is not an extended real")
        try:
            return Fraction(str(x))
        except ValueError:
            return Fraction(x)
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return INF
        if s == "-inf":
            return NINF
        return Fraction(x)
    raise TypeError("cannot interpret %r as an extended real" % (x,))


def as_float(x):
    return float(x)


def fmt(x):
    """Exact string form: 'p/q', an integer string, or 'inf'/'-inf'."""
    if is_inf(x):
        return repr(x)
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)
