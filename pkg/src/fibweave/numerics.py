"""Arbitrary-precision complex scalars, 2x2 matrices and phase diagonals.

Everything here is a plain immutable value: no global precision state is
consulted or mutated.  Scalars carry their own precision in bits and mixed
expressions are evaluated at the larger of the two operand precisions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

import numpy as np
from mpmath import libmp
from mpmath.libmp import (
    fzero,
    fone,
    from_float,
    from_int,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_cos,
    mpf_div,
    mpf_hypot,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_shift,
    mpf_sin,
    mpf_sqrt,
    mpf_sub,
    to_float,
)

_RND = libmp.round_nearest

MIN_PRECISION_BITS = 53
DEFAULT_PRECISION_BITS = 256


class BigComplex:
    """Immutable complex number backed by raw mpf component tuples."""

    __slots__ = ("re", "im", "precision_bits")

    def __init__(self, re, im=fzero, precision_bits=DEFAULT_PRECISION_BITS):
        if precision_bits < MIN_PRECISION_BITS:
            raise ValueError(
                f"precision_bits must be >= {MIN_PRECISION_BITS}, got {precision_bits}"
            )
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "precision_bits", precision_bits)

    def __setattr__(self, name, value):
        raise AttributeError("BigComplex is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def from_complex(cls, z, precision_bits=DEFAULT_PRECISION_BITS):
        z = complex(z)
        return cls(from_float(z.real), from_float(z.imag), precision_bits)

    @classmethod
    def from_int(cls, n, precision_bits=DEFAULT_PRECISION_BITS):
        return cls(from_int(n), fzero, precision_bits)

    @classmethod
    def zero(cls, precision_bits=DEFAULT_PRECISION_BITS):
        return cls(fzero, fzero, precision_bits)

    @classmethod
    def one(cls, precision_bits=DEFAULT_PRECISION_BITS):
        return cls(fone, fzero, precision_bits)

    # -- conversion ---------------------------------------------------

    def to_complex(self):
        return complex(to_float(self.re), to_float(self.im))

    def __complex__(self):
        return self.to_complex()

    def __float__(self):
        return to_float(self.re)

    def mag(self):
        """|z| as a raw mpf tuple at this value's precision."""
        return mpf_hypot(self.re, self.im, self.precision_bits, _RND)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BigComplex):
            return other
        if isinstance(other, int):
            return BigComplex(from_int(other), fzero, self.precision_bits)
        if isinstance(other, float):
            return BigComplex(from_float(other), fzero, self.precision_bits)
        if isinstance(other, complex):
            return BigComplex.from_complex(other, self.precision_bits)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision_bits, other.precision_bits)
        return BigComplex(
            mpf_add(self.re, other.re, p, _RND),
            mpf_add(self.im, other.im, p, _RND),
            p,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision_bits, other.precision_bits)
        return BigComplex(
            mpf_sub(self.re, other.re, p, _RND),
            mpf_sub(self.im, other.im, p, _RND),
            p,
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision_bits, other.precision_bits)
        w = p + 10
        ac = mpf_mul(self.re, other.re, w, _RND)
        bd = mpf_mul(self.im, other.im, w, _RND)
        ad = mpf_mul(self.re, other.im, w, _RND)
        bc = mpf_mul(self.im, other.re, w, _RND)
        return BigComplex(mpf_sub(ac, bd, p, _RND), mpf_add(ad, bc, p, _RND), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision_bits, other.precision_bits)
        w = p + 10
        den = mpf_add(
            mpf_mul(other.re, other.re, w, _RND),
            mpf_mul(other.im, other.im, w, _RND),
            w,
            _RND,
        )
        ac = mpf_mul(self.re, other.re, w, _RND)
        bd = mpf_mul(self.im, other.im, w, _RND)
        bc = mpf_mul(self.im, other.re, w, _RND)
        ad = mpf_mul(self.re, other.im, w, _RND)
        return BigComplex(
            mpf_div(mpf_add(ac, bd, w, _RND), den, p, _RND),
            mpf_div(mpf_sub(bc, ad, w, _RND), den, p, _RND),
            p,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return BigComplex(mpf_neg(self.re), mpf_neg(self.im), self.precision_bits)

    def conjugate(self):
        return BigComplex(self.re, mpf_neg(self.im), self.precision_bits)

    def __abs__(self):
        return BigComplex(self.mag(), fzero, self.precision_bits)

    def __eq__(self, other):
        if isinstance(other, (int, float, complex, BigComplex)):
            other = self._coerce(other)
            return mpf_cmp(self.re, other.re) == 0 and mpf_cmp(self.im, other.im) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"BigComplex({self.to_complex()!r} @ {self.precision_bits}b)"


def big_pi(precision_bits=DEFAULT_PRECISION_BITS):
    return BigComplex(mpf_pi(precision_bits + 10), fzero, precision_bits)


def big_sqrt(x, precision_bits=DEFAULT_PRECISION_BITS):
    """Square root of a nonnegative real (int, float or real BigComplex)."""
    if isinstance(x, BigComplex):
        t, p = x.re, max(precision_bits, x.precision_bits)
    elif isinstance(x, int):
        t, p = from_int(x), precision_bits
    else:
        t, p = from_float(float(x)), precision_bits
    return BigComplex(mpf_sqrt(t, p, _RND), fzero, p)


def exp_i_pi(frac, precision_bits=DEFAULT_PRECISION_BITS):
    """e^{i pi * frac} for a rational (or float) multiple of pi."""
    frac = Fraction(frac).limit_denominator(10**12) if not isinstance(frac, Fraction) else frac
    w = precision_bits + 20
    theta = mpf_mul(
        mpf_div(from_int(frac.numerator), from_int(frac.denominator), w, _RND),
        mpf_pi(w),
        w,
        _RND,
    )
    return BigComplex(
        mpf_cos(theta, precision_bits, _RND),
        mpf_sin(theta, precision_bits, _RND),
        precision_bits,
    )


class Mat2:
    """Immutable 2x2 matrix over BigComplex entries."""

    __slots__ = ("a00", "a01", "a10", "a11")

    def __init__(self, a00, a01, a10, a11):
        for name, v in (("a00", a00), ("a01", a01), ("a10", a10), ("a11", a11)):
            if not isinstance(v, BigComplex):
                raise TypeError(f"{name} must be BigComplex, got {type(v).__name__}")
            object.__setattr__(self, name, v)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def from_rows(cls, rows, precision_bits=DEFAULT_PRECISION_BITS):
        (a, b), (c, d) = rows
        conv = lambda z: z if isinstance(z, BigComplex) else BigComplex.from_complex(z, precision_bits)
        return cls(conv(a), conv(b), conv(c), conv(d))

    @classmethod
    def identity(cls, precision_bits=DEFAULT_PRECISION_BITS):
        one = BigComplex.one(precision_bits)
        zero = BigComplex.zero(precision_bits)
        return cls(one, zero, zero, one)

    @property
    def precision_bits(self):
        return max(
            self.a00.precision_bits,
            self.a01.precision_bits,
            self.a10.precision_bits,
            self.a11.precision_bits,
        )

    def entry(self, i, j):
        return (self.a00, self.a01, self.a10, self.a11)[2 * i + j]

    def __matmul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a00 * other.a00 + self.a01 * other.a10,
            self.a00 * other.a01 + self.a01 * other.a11,
            self.a10 * other.a00 + self.a11 * other.a10,
            self.a10 * other.a01 + self.a11 * other.a11,
        )

    def __mul__(self, scalar):
        return Mat2(self.a00 * scalar, self.a01 * scalar, self.a10 * scalar, self.a11 * scalar)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a00 + other.a00,
            self.a01 + other.a01,
            self.a10 + other.a10,
            self.a11 + other.a11,
        )

    def __sub__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a00 - other.a00,
            self.a01 - other.a01,
            self.a10 - other.a10,
            self.a11 - other.a11,
        )

    def dagger(self):
        return Mat2(
            self.a00.conjugate(),
            self.a10.conjugate(),
            self.a01.conjugate(),
            self.a11.conjugate(),
        )

    def trace(self):
        return self.a00 + self.a11

    def det(self):
        return self.a00 * self.a11 - self.a01 * self.a10

    def to_numpy(self):
        return np.array(
            [
                [self.a00.to_complex(), self.a01.to_complex()],
                [self.a10.to_complex(), self.a11.to_complex()],
            ]
        )

    def unitarity_defect(self):
        """max-entry magnitude of U^dag U - I, as a raw mpf tuple."""
        r = self.dagger() @ self
        worst = fzero
        for i in range(2):
            for j in range(2):
                e = r.entry(i, j)
                if i == j:
                    e = e - 1
                m = e.mag()
                if mpf_cmp(m, worst) > 0:
                    worst = m
        return worst

    def is_unitary(self, tol_bits=20):
        """True when the unitarity defect is below 2^-(precision-tol_bits)."""
        thresh = mpf_shift(fone, -(self.precision_bits - tol_bits))
        return mpf_cmp(self.unitarity_defect(), thresh) < 0

    def __repr__(self):
        return f"Mat2({self.to_numpy().tolist()} @ {self.precision_bits}b)"


class PhaseDiag:
    """diag(1, e^{i pi n/d}) with the exponent kept as an exact fraction."""

    __slots__ = ("exponent",)

    def __init__(self, numerator, denominator=1):
        object.__setattr__(self, "exponent", Fraction(numerator, denominator))

    def __setattr__(self, name, value):
        raise AttributeError("PhaseDiag is immutable")

    @property
    def numerator(self):
        return self.exponent.numerator

    @property
    def denominator(self):
        return self.exponent.denominator

    def __mul__(self, other):
        if not isinstance(other, PhaseDiag):
            return NotImplemented
        return PhaseDiag(self.exponent + other.exponent)

    def inverse(self):
        return PhaseDiag(-self.exponent)

    def __eq__(self, other):
        if not isinstance(other, PhaseDiag):
            return NotImplemented
        return (self.exponent - other.exponent) % 2 == 0

    def __hash__(self):
        return hash(self.exponent % 2)

    def to_mat2(self, precision_bits=DEFAULT_PRECISION_BITS):
        one = BigComplex.one(precision_bits)
        zero = BigComplex.zero(precision_bits)
        return Mat2(one, zero, zero, exp_i_pi(self.exponent, precision_bits))

    def to_numpy(self):
        return np.diag([1.0, np.exp(1j * math.pi * float(self.exponent))])

    def __repr__(self):
        return f"PhaseDiag({self.numerator}/{self.denominator})"


def _phase_gap(u, v, phi):
    d = u - np.exp(1j * phi) * v
    return 0.5 * np.linalg.norm(d)


def proj_distance(u, v, grid=64, tol=1e-14):
    """Distance between 2x2 matrices up to a global phase.

    Minimises 0.5 * ||U - e^{i phi} V||_F over the phase with a coarse grid
    followed by golden-section refinement.  This is a pseudometric: matrices
    differing only by a global phase are at distance zero.
    """
    if isinstance(u, Mat2):
        u = u.to_numpy()
    if isinstance(v, Mat2):
        v = v.to_numpy()
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    phis = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    vals = [_phase_gap(u, v, p) for p in phis]
    k = int(np.argmin(vals))
    step = 2.0 * math.pi / grid
    a, b = phis[k] - step, phis[k] + step
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = _phase_gap(u, v, c), _phase_gap(u, v, d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = _phase_gap(u, v, c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = _phase_gap(u, v, d)
    return _phase_gap(u, v, 0.5 * (a + b))
