"""Dense exact matrices over Q, Q(i) and Laurent polynomials.

All matrices are square and immutable after construction.  Rational
matrices are stored as flat integer grids over one shared positive
denominator so the hot products can run through the integer kernel
(compiled when available, see ``trigcasimir._kernel``).  Gaussian and
Laurent matrices take slower generic paths; they only appear in the small
group models.

Everything here is pure: no operation mutates its inputs, so values can
be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import _kernel
from .scalars import GaussianRational, LaurentScalar


class ScalarTypeMismatch(TypeError):
    pass


class NonNilpotentError(ValueError):
    pass


def _lcm(a, b):
    return a // gcd(a, b) * b


class ExactMatrix:
    """Square matrix with uniform exact scalar type.

    kind 'q': entries Fraction, stored (num flat ints, den)
    kind 'g': entries GaussianRational, stored (re ints, im ints, den)
    kind 'l': entries LaurentScalar, stored as objects
    """

    __slots__ = ("n", "kind", "num", "re", "im", "den", "ent")

    def __init__(self, n, kind, *, num=None, re=None, im=None, den=1, ent=None):
        self.n = n
        self.kind = kind
        self.num = num
        self.re = re
        self.im = im
        self.den = den
        self.ent = ent

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "ExactMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        flat = [x for r in rows for x in r]
        if any(isinstance(x, LaurentScalar) for x in flat):
            ent = [
                x if isinstance(x, LaurentScalar) else LaurentScalar.const(x)
                for x in flat
            ]
            return ExactMatrix(n, "l", ent=ent)
        if any(isinstance(x, GaussianRational) for x in flat):
            gs = [
                x if isinstance(x, GaussianRational) else GaussianRational(x)
                for x in flat
            ]
            den = 1
            for g in gs:
                den = _lcm(den, _lcm(g.re.denominator, g.im.denominator))
            re = [int(g.re * den) for g in gs]
            im = [int(g.im * den) for g in gs]
            re_im, d = _kernel.normalize(re + im, den)
            m = n * n
            return ExactMatrix(n, "g", re=re_im[:m], im=re_im[m:], den=d)
        fs = [Fraction(x) for x in flat]
        den = 1
        for f in fs:
            den = _lcm(den, f.denominator)
        num = [int(f * den) for f in fs]
        num, den = _kernel.normalize(num, den)
        return ExactMatrix(n, "q", num=num, den=den)

    @staticmethod
    def identity(n, kind="q") -> "ExactMatrix":
        if kind == "q":
            num = [0] * (n * n)
            for i in range(n):
                num[i * n + i] = 1
            return ExactMatrix(n, "q", num=num, den=1)
        if kind == "g":
            m = ExactMatrix.identity(n, "q")
            return m.to_gaussian()
        if kind == "l":
            return ExactMatrix.identity(n, "q").to_laurent()
        raise ValueError(kind)

    @staticmethod
    def zeros(n, kind="q") -> "ExactMatrix":
        if kind == "q":
            return ExactMatrix(n, "q", num=[0] * (n * n), den=1)
        if kind == "g":
            return ExactMatrix(n, "g", re=[0] * (n * n), im=[0] * (n * n), den=1)
        if kind == "l":
            return ExactMatrix(n, "l", ent=[LaurentScalar() for _ in range(n * n)])
        raise ValueError(kind)

    @staticmethod
    def from_entries(n, entries, kind="q") -> "ExactMatrix":
        """Build from {(i, j): value} sparse dict."""
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        if kind != "q":
            return ExactMatrix.from_rows(rows).promote(kind)
        return ExactMatrix.from_rows(rows)

    # -- conversions ---------------------------------------------------

    def to_gaussian(self) -> "ExactMatrix":
        if self.kind == "g":
            return self
        if self.kind != "q":
            raise ScalarTypeMismatch("only rational matrices promote to gaussian")
        return ExactMatrix(
            self.n, "g", re=list(self.num), im=[0] * (self.n * self.n), den=self.den
        )

    def to_laurent(self) -> "ExactMatrix":
        if self.kind == "l":
            return self
        if self.kind != "q":
            raise ScalarTypeMismatch("only rational matrices promote to laurent")
        den = self.den
        ent = [LaurentScalar.const(Fraction(v, den)) for v in self.num]
        return ExactMatrix(self.n, "l", ent=ent)

    def promote(self, kind) -> "ExactMatrix":
        if kind == self.kind:
            return self
        if kind == "g":
            return self.to_gaussian()
        if kind == "l":
            return self.to_laurent()
        raise ScalarTypeMismatch(f"cannot promote {self.kind} to {kind}")

    def to_numpy(self):
        import numpy as np

        n = self.n
        if self.kind == "q":
            a = np.array(
                [float(v) for v in self.num], dtype=np.complex128
            ) / float(self.den)
        elif self.kind == "g":
            a = (
                np.array([float(v) for v in self.re], dtype=np.complex128)
                + 1j * np.array([float(v) for v in self.im], dtype=np.complex128)
            ) / float(self.den)
        else:
            raise ScalarTypeMismatch("laurent matrices have no numeric image")
        return a.reshape(n, n)

    # -- access --------------------------------------------------------

    def entry(self, i, j):
        k = i * self.n + j
        if self.kind == "q":
            return Fraction(self.num[k], self.den)
        if self.kind == "g":
            return GaussianRational(
                Fraction(self.re[k], self.den), Fraction(self.im[k], self.den)
            )
        return self.ent[k]

    def rows(self):
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def key(self):
        """Hashable identity key (used for group closure by matrix equality)."""
        if self.kind == "q":
            return ("q", self.n, self.den, tuple(self.num))
        if self.kind == "g":
            return ("g", self.n, self.den, tuple(self.re), tuple(self.im))
        return ("l", self.n, tuple(tuple(sorted(e.c.items())) for e in self.ent))

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, ExactMatrix):
            raise ScalarTypeMismatch(f"expected ExactMatrix, got {type(other)}")
        if other.kind != self.kind:
            raise ScalarTypeMismatch(f"scalar kinds differ: {self.kind} vs {other.kind}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        return self._lincomb(other, Fraction(1), Fraction(1))

    def __sub__(self, other):
        return self._lincomb(other, Fraction(1), Fraction(-1))

    def _lincomb(self, other, p: Fraction, q: Fraction) -> "ExactMatrix":
        self._check(other)
        n = self.n
        if self.kind == "q":
            num, den = _kernel.mat_lincomb(
                n, self.num, self.den, other.num, other.den,
                p.numerator, p.denominator, q.numerator, q.denominator,
            )
            return ExactMatrix(n, "q", num=num, den=den)
        if self.kind == "g":
            re, dr = _kernel.mat_lincomb(
                n, self.re, self.den, other.re, other.den,
                p.numerator, p.denominator, q.numerator, q.denominator,
            )
            im, di = _kernel.mat_lincomb(
                n, self.im, self.den, other.im, other.den,
                p.numerator, p.denominator, q.numerator, q.denominator,
            )
            d = _lcm(dr, di)
            re = [v * (d // dr) for v in re]
            im = [v * (d // di) for v in im]
            return ExactMatrix(n, "g", re=re, im=im, den=d)
        ent = [a * p + b * q for a, b in zip(self.ent, other.ent)]
        return ExactMatrix(n, "l", ent=ent)

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, s) -> "ExactMatrix":
        n = self.n
        if isinstance(s, int):
            s = Fraction(s)
        if self.kind == "q":
            if not isinstance(s, Fraction):
                raise ScalarTypeMismatch("rational matrix scaled by non-rational")
            num, den = _kernel.normalize(
                [v * s.numerator for v in self.num], self.den * s.denominator
            )
            return ExactMatrix(n, "q", num=num, den=den)
        if self.kind == "g":
            if isinstance(s, Fraction):
                s = GaussianRational(s)
            if not isinstance(s, GaussianRational):
                raise ScalarTypeMismatch("gaussian matrix scaled by bad scalar")
            d = s.re.denominator * s.im.denominator // gcd(
                s.re.denominator, s.im.denominator
            )
            a, b = int(s.re * d), int(s.im * d)
            re = [a * x - b * y for x, y in zip(self.re, self.im)]
            im = [a * y + b * x for x, y in zip(self.re, self.im)]
            both, den = _kernel.normalize(re + im, self.den * d)
            m = n * n
            return ExactMatrix(n, "g", re=both[:m], im=both[m:], den=den)
        if isinstance(s, Fraction):
            s = LaurentScalar.const(s)
        if not isinstance(s, LaurentScalar):
            raise ScalarTypeMismatch("laurent matrix scaled by bad scalar")
        return ExactMatrix(n, "l", ent=[e * s for e in self.ent])

    def __mul__(self, other):
        self._check(other)
        n = self.n
        if self.kind == "q":
            num, den = _kernel.mat_mul(n, self.num, self.den, other.num, other.den)
            return ExactMatrix(n, "q", num=num, den=den)
        if self.kind == "g":
            # (a+bi)(c+di): re = ac - bd, im = ad + bc
            ac, d1 = _kernel.mat_mul(n, self.re, self.den, other.re, other.den)
            bd, d2 = _kernel.mat_mul(n, self.im, self.den, other.im, other.den)
            ad, d3 = _kernel.mat_mul(n, self.re, self.den, other.im, other.den)
            bc, d4 = _kernel.mat_mul(n, self.im, self.den, other.re, other.den)
            re, dr = _kernel.mat_lincomb(n, ac, d1, bd, d2, 1, 1, -1, 1)
            im, di = _kernel.mat_lincomb(n, ad, d3, bc, d4, 1, 1, 1, 1)
            d = _lcm(dr, di)
            return ExactMatrix(
                n, "g",
                re=[v * (d // dr) for v in re],
                im=[v * (d // di) for v in im],
                den=d,
            )
        ent = [LaurentScalar() for _ in range(n * n)]
        for i in range(n):
            for k in range(n):
                a = self.ent[i * n + k]
                if not a:
                    continue
                for j in range(n):
                    b = other.ent[k * n + j]
                    if b:
                        ent[i * n + j] = ent[i * n + j] + a * b
        return ExactMatrix(n, "l", ent=ent)

    def __pow__(self, k: int) -> "ExactMatrix":
        if k < 0:
            raise ValueError("negative powers not supported; invert explicitly")
        out = ExactMatrix.identity(self.n, self.kind)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.kind != other.kind or self.n != other.n:
            return False
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def transpose(self) -> "ExactMatrix":
        n = self.n
        return ExactMatrix.from_rows(
            [[self.entry(j, i) for j in range(n)] for i in range(n)]
        )

    def trace(self):
        t = self.entry(0, 0)
        for i in range(1, self.n):
            t = t + self.entry(i, i)
        return t

    def apply(self, vec):
        """Matrix times column vector (list of scalars)."""
        n = self.n
        if len(vec) != n:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(n):
            s = None
            for j in range(n):
                e = self.entry(i, j)
                if not e:
                    continue
                t = e * vec[j]
                s = t if s is None else s + t
            if s is None:
                s = self.entry(0, 0) * 0 if self.kind != "q" else Fraction(0)
            out.append(s)
        return out

    # -- predicates and norms -------------------------------------------

    def is_zero(self) -> bool:
        if self.kind == "q":
            return not any(self.num)
        if self.kind == "g":
            return not any(self.re) and not any(self.im)
        return not any(self.ent)

    def max_abs(self):
        """Largest entry magnitude: |.| on Q, one-norms on Q(i) and Laurent."""
        if self.kind == "q":
            m = max(abs(v) for v in self.num)
            return Fraction(m, self.den)
        if self.kind == "g":
            m = max(abs(a) + abs(b) for a, b in zip(self.re, self.im))
            return Fraction(m, self.den)
        return max((e.one_norm() for e in self.ent), default=Fraction(0))

    def is_diagonal(self) -> bool:
        n = self.n
        return all(
            not self.entry(i, j) for i in range(n) for j in range(n) if i != j
        )

    def __repr__(self):
        return f"ExactMatrix({self.n}x{self.n}, {self.kind})"


# -- free operations ----------------------------------------------------


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product, row-major pair indexing, left factor most significant."""
    if a.kind != b.kind:
        raise ScalarTypeMismatch(f"scalar kinds differ: {a.kind} vs {b.kind}")
    na, nb = a.n, b.n
    n = na * nb
    rows = [[None] * n for _ in range(n)]
    for i1 in range(na):
        for j1 in range(na):
            x = a.entry(i1, j1)
            for i2 in range(nb):
                for j2 in range(nb):
                    rows[i1 * nb + i2][j1 * nb + j2] = x * b.entry(i2, j2)
    return ExactMatrix.from_rows(rows)


def embed_factor(x: ExactMatrix, slot: int, arity: int, factor_dims=None) -> ExactMatrix:
    """x acting in tensor slot ``slot`` (1-based), identity elsewhere."""
    if factor_dims is None:
        factor_dims = [x.n] * arity
    if not 1 <= slot <= arity:
        raise ValueError(f"slot {slot} out of range 1..{arity}")
    if len(factor_dims) != arity:
        raise ValueError("factor_dims length must equal arity")
    if factor_dims[slot - 1] != x.n:
        raise ValueError(
            f"dimension mismatch: operator is {x.n}, slot holds {factor_dims[slot - 1]}"
        )
    out = x
    for d in factor_dims[: slot - 1][::-1]:
        out = kron(ExactMatrix.identity(d, x.kind), out)
    for d in factor_dims[slot:]:
        out = kron(out, ExactMatrix.identity(d, x.kind))
    return out


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a * b - b * a


def max_abs(a: ExactMatrix):
    return a.max_abs()


def nilpotent_exp(a: ExactMatrix) -> ExactMatrix:
    """exp(a) = sum a^j/j! for nilpotent a, exact.

    Raises NonNilpotentError if a^n != 0 (n the dimension).
    """
    out = ExactMatrix.identity(a.n, a.kind)
    term = ExactMatrix.identity(a.n, a.kind)
    fact = 1
    for j in range(1, a.n + 1):
        term = term * a
        if term.is_zero():
            return out
        fact *= j
        out = out + term.scale(Fraction(1, fact))
    raise NonNilpotentError(f"matrix is not nilpotent within degree {a.n}")


def exp_pi_i_diag(entries) -> ExactMatrix:
    """exp(pi*i*h) for diagonal h with entries in (1/2)Z: a diagonal sign
    matrix over the Gaussian rationals with entries i**(2*h_k)."""
    from .scalars import fourth_root_power

    n = len(entries)
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    for k, d in enumerate(entries):
        d = Fraction(d)
        if (2 * d).denominator != 1:
            raise ValueError("diagonal entries must be half-integers")
        rows[k][k] = fourth_root_power(int(2 * d))
    return ExactMatrix.from_rows(rows)


# -- exact Gaussian elimination over Q -----------------------------------


def rational_rref(rows):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rational_nullspace(rows):
    """Basis of the right nullspace of a rational matrix (rows x cols)."""
    if not rows:
        return []
    ncols = len(rows[0])
    rref, pivots = rational_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


def rational_solve(rows, rhs):
    """One solution of A x = b over Q, or None if inconsistent."""
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    rref, pivots = rational_rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][ncols]
    return x


def rational_det(mat: ExactMatrix) -> Fraction:
    """Determinant of a rational ExactMatrix by fraction-free elimination."""
    if mat.kind != "q":
        raise ScalarTypeMismatch("rational_det needs a rational matrix")
    n = mat.n
    m = [[mat.entry(i, j) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        pv = m[c][c]
        det *= pv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det
