"""Exact scalar types beyond plain rationals.

Plain rationals are ``fractions.Fraction``.  On top of that we need

* Gaussian rationals ``a + b*i`` so that sign operators with values in the
  fourth roots of unity stay exact, and
* Laurent polynomials in one variable ``z`` over Q, the coefficient ring
  of the polynomial loop-group models.
"""

from __future__ import annotations

from fractions import Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class GaussianRational:
    """a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def i() -> "GaussianRational":
        return GaussianRational(0, 1)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def one_norm(self) -> Fraction:
        return abs(self.re) + abs(self.im)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"({self.re}+{self.im}i)"


def fourth_root_power(k: int) -> GaussianRational:
    """i**k, exact."""
    return (
        GaussianRational(1),
        GaussianRational.i(),
        GaussianRational(-1),
        GaussianRational(0, -1),
    )[k % 4]


class LaurentScalar:
    """Laurent polynomial in z over Q, stored as {exponent: coefficient}.

    Zero coefficients are never stored; the zero polynomial is the empty
    dict.  Exponents may be negative.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = as_fraction(v)
                if v:
                    c[int(k)] = v
        self.c = c

    @staticmethod
    def const(v) -> "LaurentScalar":
        return LaurentScalar({0: v})

    @staticmethod
    def z(k: int = 1, coeff=1) -> "LaurentScalar":
        return LaurentScalar({k: coeff})

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentScalar.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self.c)
        for k, v in o.c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            elif k in c:
                del c[k]
        out = LaurentScalar()
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentScalar()
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentScalar()
            out = LaurentScalar()
            out.c = {k: v * other for k, v in self.c.items()}
            return out
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        c: dict[int, Fraction] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                s = c.get(k, 0) + v1 * v2
                if s:
                    c[k] = s
                elif k in c:
                    del c[k]
        out = LaurentScalar()
        out.c = c
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __bool__(self):
        return bool(self.c)

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def monomial(self) -> tuple[int, Fraction]:
        """(exponent, coefficient) of a monomial; raises otherwise."""
        if not self.is_monomial():
            raise ValueError(f"not a monomial: {self!r}")
        [(k, v)] = self.c.items()
        return k, v

    def inverse(self) -> "LaurentScalar":
        """Inverse of a unit, i.e. of a monomial c*z^k."""
        k, v = self.monomial()
        return LaurentScalar({-k: Fraction(1) / v})

    def one_norm(self) -> Fraction:
        return sum((abs(v) for v in self.c.values()), Fraction(0))

    def __call__(self, zval):
        """Evaluate at a nonzero number."""
        return sum(v * zval**k for k, v in self.c.items())

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k in sorted(self.c):
            v = self.c[k]
            if k == 0:
                terms.append(f"{v}")
            elif k == 1:
                terms.append(f"{v}*z")
            else:
                terms.append(f"{v}*z^{k}")
        return " + ".join(terms)
