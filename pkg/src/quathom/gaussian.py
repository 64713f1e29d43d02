"""Exact Gaussian-rational scalars: a + b*i with a, b arbitrary-precision rationals.

This is the coefficient field of the exact backend.  Values are immutable and
hashable; arithmetic never leaves the field, so every exact computation in the
toolkit is reproducible bit-for-bit.
"""

from fractions import Fraction

from .errors import FieldClosureError


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- coercion ----------------------------------------------------------

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return NotImplemented

    @classmethod
    def from_value(cls, value):
        """Coerce ints, Fractions, and Gaussian rationals; reject floats."""
        coerced = cls._coerce(value)
        if coerced is NotImplemented:
            raise FieldClosureError(
                "cannot represent %r exactly as a Gaussian rational" % (value,)
            )
        return coerced

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        denom = other.re * other.re + other.im * other.im
        if denom == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / denom,
            (self.im * other.re - self.re * other.im) / denom,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- predicates and conversions ---------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self):
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return "GaussianRational(%r, %r)" % (str(self.re), str(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = "%s*i" % self.im
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        part = "i" if mag == 1 else "%s*i" % mag
        return "%s%s%s" % (self.re, sign, part)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def coerce_scalar(value, field):
    """Coerce ``value`` into the coefficient field tagged ``field``.

    ``field`` is ``"exact"`` (Gaussian rationals) or ``"float"`` (complex).
    """
    if field == "exact":
        return GaussianRational.from_value(value)
    if field == "float":
        if isinstance(value, GaussianRational):
            return complex(value)
        return complex(value)
    raise ValueError("unknown field tag %r" % (field,))
