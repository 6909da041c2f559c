"""Zeta and L-data for the spinorial classes and the weight-1/2 identity.

With q = p^(2n) and tau = -p^n, the spin representation has Frobenius
eigenvalues +-sqrt(tau), so its zeta function in T = q^(-s) collects into

    Z(rho_spin, T) = 1/((1 - sqrt(-p^n) T)(1 + sqrt(-p^n) T)) = 1/(1 + p^n T^2),

while H^1 of any curve in the class has both eigenvalues -p^n:

    Z(H^1, T) = (1 + p^n T)^2.

Hence L(E, s) = 1/(1 + q^(1/2 - s))^2 and L(rho_spin, s) = 1/(1 + q^(1/2 - 2s)),
and the half-substitution gives the exact identity

    L(E, s) = L(rho_spin, s/2)^2.

Everything here is exact rational-function arithmetic in Z[T]; numeric
L-values are a secondary check done in high-precision floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

import mpmath

from . import quat
from .arith import Rat, is_prime, ternary_represents
from .errors import NotPrime, ZeroInput

#: working precision for numeric L-values; well beyond the 1e-12 tolerance
NUMERIC_DPS = 40

IntPoly = tuple[int, ...]


def _trim(c: tuple[int, ...]) -> IntPoly:
    n = len(c)
    while n > 1 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def poly_add(f: IntPoly, g: IntPoly) -> IntPoly:
    n = max(len(f), len(g))
    return _trim(
        tuple(
            (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
            for i in range(n)
        )
    )


def poly_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _trim(tuple(out))


def poly_eval(f: IntPoly, t: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(f):
        out = out * t + c
    return out


def _content(f: IntPoly) -> int:
    g = 0
    for c in f:
        g = gcd(g, abs(c))
    return g or 1

def _poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Monic-free gcd in Z[T]: Euclid over Q, then primitive integer scaling."""
    a = [Fraction(c) for c in f]
    b = [Fraction(c) for c in g]
    while any(c != 0 for c in b):
        # a mod b
        a = a[:]
        while len(a) >= len(b) and any(c != 0 for c in a):
            if a[-1] == 0:
                a.pop()
                continue
            coef = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i in range(len(b)):
                a[shift + i] -= coef * b[i]
            a.pop()
        if not a:
            a = [Fraction(0)]
        a, b = b, a
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = _trim(tuple(int(c * den) for c in a))
    cont = _content(ints)
    out = tuple(c // cont for c in ints)
    if out[-1] < 0:
        out = tuple(-c for c in out)
    return out


def poly_str(f: IntPoly, var: str = "T") -> str:
    if all(c == 0 for c in f):
        return "0"
    parts = []
    for e, c in enumerate(f):
        if c == 0:
            continue
        if e == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            pow_ = var if e == 1 else f"{var}^{e}"
            term = ("-" if c < 0 else "") + mag + pow_
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return "".join(parts)


@dataclass(frozen=True)
class RationalFunction:
    """num/den in lowest terms over Z[T].

    Normalization: gcd(num, den) = 1, both primitive up to a single rational
    unit carried on the numerator content, and den has positive leading
    coefficient.  Construction from any integer-coefficient pair reduces to
    this form, so equality is plain field equality in Q(T).
    """

    num: IntPoly
    den: IntPoly

    def __post_init__(self):
        num, den = _trim(tuple(self.num)), _trim(tuple(self.den))
        if all(c == 0 for c in den):
            raise ZeroInput("zero denominator")
        if all(c == 0 for c in num):
            object.__setattr__(self, "num", (0,))
            object.__setattr__(self, "den", (1,))
            return
        g = _poly_gcd(num, den)
        if len(g) > 1 or g[0] != 1:
            num = _poly_divexact(num, g)
            den = _poly_divexact(den, g)
        c = gcd(_content(num), _content(den))
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
        if den[-1] < 0:
            num = tuple(-x for x in num)
            den = tuple(-x for x in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            poly_mul(self.num, other.num), poly_mul(self.den, other.den)
        )

    def reciprocal(self) -> "RationalFunction":
        return RationalFunction(self.den, self.num)

    def evaluate(self, t: Rat) -> Fraction:
        t = Fraction(t)
        den = poly_eval(self.den, t)
        if den == 0:
            raise ZeroDivisionError(f"pole at {t}")
        return poly_eval(self.num, t) / den

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def __str__(self) -> str:
        ns, ds = poly_str(self.num), poly_str(self.den)
        if self.den == (1,):
            return ns
        if len(self.num) > 1:
            ns = f"({ns})"
        return f"{ns}/({ds})"


def _poly_divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    """f // g assuming exact divisibility over Q, result scaled to Z."""
    a = [Fraction(c) for c in f]
    out = [Fraction(0)] * (len(f) - len(g) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = a[k + len(g) - 1] / Fraction(g[-1])
        out[k] = coef
        for i in range(len(g)):
            a[k + i] -= coef * g[i]
    assert all(c == 0 for c in a), "inexact polynomial division"
    den = 1
    for c in out:
        den = den * c.denominator // gcd(den, c.denominator)
    return _trim(tuple(int(c * den) for c in out))


def _check_pn(p: int, n: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")


def zeta_spin(p: int, n: int) -> RationalFunction:
    """Z(rho_spin, T) = 1/(1 + p^n T^2): reciprocal roots +-sqrt(-p^n)."""
    _check_pn(p, n)
    return RationalFunction((1,), (1, 0, p**n))


def zeta_h1(p: int, n: int) -> RationalFunction:
    """Z(H^1 of the tau = -p^n class, T) = (1 + p^n T)^2."""
    _check_pn(p, n)
    lin = (1, p**n)
    return RationalFunction(poly_mul(lin, lin), (1,))


@dataclass(frozen=True)
class IdentityProof:
    """Both sides of L(E, s) = L(rho_spin, s/2)^2 as elements of Q(U), U = q^-s.

    `vacuous` records whether the spinorial class tau = -p^n actually admits
    an arithmetic spin structure; the polynomial identity holds regardless,
    but only carries spin content when it does.
    """

    p: int
    n: int
    lhs: RationalFunction
    rhs: RationalFunction
    holds: bool
    vacuous: bool


def verify_identity_exact(p: int, n: int) -> IdentityProof:
    """Build both sides of the identity independently and compare exactly.

    In U = q^-s: L(E, s) = 1/Z-numerator = 1/(1 + p^n U)^2 from zeta_h1,
    while L(rho_spin, s/2) = 1/(1 + q^(1/2) q^-s) = 1/(1 + p^n U), squared.
    """
    _check_pn(p, n)
    lhs = zeta_h1(p, n).reciprocal()
    half = RationalFunction((1,), (1, p**n))
    rhs = half * half
    vacuous = False
    if n % 2 == 0:
        B = quat.b_p_infty(p)
        vacuous = not ternary_represents(B.pure_norm_coefficients(), 1)
    return IdentityProof(p, n, lhs, rhs, lhs == rhs, vacuous)


Real = Union[Fraction, mpmath.mpf]


def q_power(p: int, n: int, e: Fraction) -> Real:
    """q^e for q = p^(2n): exact Fraction when 2n*e is integral, else mpf."""
    e2 = Fraction(e) * 2 * n
    if e2.denominator == 1:
        return Fraction(p) ** int(e2)
    with mpmath.workdps(NUMERIC_DPS):
        return mpmath.power(p, mpmath.mpf(e2.numerator) / e2.denominator)


@dataclass(frozen=True)
class LValues:
    """Numeric (or exact, when possible) L-values at a rational s."""

    s: Fraction
    l_curve: Real          # L(E, s)
    l_spin: Real           # L(rho_spin, s)
    l_spin_half: Real      # L(rho_spin, s/2)
    l_spin_half_sq: Real   # L(rho_spin, s/2)^2


def l_values(p: int, n: int, s: Rat) -> LValues:
    """Evaluate L(E, s), L(rho_spin, s) and L(rho_spin, s/2)^2.

    Exact rational answers are returned whenever q^(1/2 - s) resp.
    q^(1/2 - 2s) is rational; otherwise mpf at NUMERIC_DPS digits.
    """
    _check_pn(p, n)
    s = Fraction(s)

    def inv(x):
        one = Fraction(1) if isinstance(x, Fraction) else mpmath.mpf(1)
        return one / (one + x)

    le = inv(q_power(p, n, Fraction(1, 2) - s)) ** 2
    lspin = inv(q_power(p, n, Fraction(1, 2) - 2 * s))
    lhalf = inv(q_power(p, n, Fraction(1, 2) - s))
    return LValues(s, le, lspin, lhalf, lhalf**2)


GaussianInt = tuple[Fraction, Fraction]  # re + im*i
GaussPoly = tuple[GaussianInt, ...]


def _gauss_mul_poly(f: GaussPoly, g: GaussPoly) -> GaussPoly:
    out = [(Fraction(0), Fraction(0)) for _ in range(len(f) + len(g) - 1)]
    for a, (ar, ai) in enumerate(f):
        for b, (br, bi) in enumerate(g):
            re, im = out[a + b]
            out[a + b] = (re + ar * br - ai * bi, im + ar * bi + ai * br)
    return tuple(out)


@dataclass(frozen=True)
class GaussianFactorization:
    """1 + p^n T^2 = (1 + i sqrt(p^n) T)(1 - i sqrt(p^n) T) over Q(i), in V.

    Stated in V = p^(n/2) T = q^(1/4 - s): the factors are 1 +- iV and the
    product is 1 + V^2, whose V^2 -> q^(1/2 - 2s) substitution is the
    L(rho_spin, s) denominator.
    """

    p: int
    n: int
    factors: tuple[GaussPoly, GaussPoly]
    product: IntPoly


def factor_over_gaussians(p: int, n: int) -> GaussianFactorization:
    """Split the spin zeta denominator into the two Gaussian linear factors."""
    _check_pn(p, n)
    one = (Fraction(1), Fraction(0))
    plus_i = (Fraction(0), Fraction(1))
    minus_i = (Fraction(0), Fraction(-1))
    f1: GaussPoly = (one, plus_i)    # 1 + iV
    f2: GaussPoly = (one, minus_i)   # 1 - iV
    prod = _gauss_mul_poly(f1, f2)
    assert all(im == 0 for _, im in prod)
    rational = _trim(tuple(int(re) for re, _ in prod))
    assert rational == (1, 0, 1)  # 1 + V^2
    return GaussianFactorization(p, n, (f1, f2), rational)
