"""Orthogonal involutions on quaternion algebras and their even Clifford data.

An orthogonal involution on B is sigma = int(u) o gamma with u pure and
invertible, determined by u up to a nonzero rational scalar.  Its
discriminant is the square class

    disc(sigma) = -Nrd(u)  in  Q*/Q*^2,

and involutions on a fixed B are isomorphic iff their discriminants agree.
The even Clifford algebra of (B, sigma) is the quadratic etale algebra
K = Q[x]/(x^2 - delta) with delta = disc(sigma).  The similitude groups sit
in the Kummer square

    1 -> mu_2 -> GSpin = Res_{K/Q} Gm --z -> z^2--> GO+ = K* -> K*/K*^2,

so an element t of GO+(Q) lifts to GSpin(Q) iff t is a square in K; the
connecting map sends t to its class in K*/K*^2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Union

from .arith import Rat, squarefree_part
from .errors import (
    AlgebraMismatch,
    DeltaMismatch,
    NotInvertible,
    NotPure,
    NotSimilitude,
    NotUnit,
    ZeroInput,
)
from .quat import Quaternion, QuaternionAlgebra


def _fraction_sqrt(r: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None."""
    if r < 0:
        return None
    num = _int_sqrt(r.numerator)
    den = _int_sqrt(r.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_sqrt(n: int) -> Optional[int]:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class QuadraticEtale:
    """K = Q[x]/(x^2 - delta) with delta the canonical squarefree representative.

    A field when delta != 1, split (Q x Q with zero divisors) when delta = 1.
    """

    delta: int

    def __post_init__(self):
        if self.delta == 0:
            raise ZeroInput("delta must be nonzero")
        if squarefree_part(self.delta) != self.delta:
            raise DeltaMismatch(f"{self.delta} is not squarefree")

    def element(self, c: Rat, d: Rat = 0) -> "EtaleElement":
        return EtaleElement(self, Fraction(c), Fraction(d))

    @property
    def one(self) -> "EtaleElement":
        return self.element(1)

    @property
    def x(self) -> "EtaleElement":
        return self.element(0, 1)

    def is_split(self) -> bool:
        return self.delta == 1

    def is_imaginary(self) -> bool:
        return self.delta < 0

    def sqrt_rational(self, t: Rat) -> Optional["EtaleElement"]:
        """A square root in K of a nonzero rational t, or None.

        t is a square in K iff t or t/delta is a square in Q.  The returned
        representative has positive leading coordinate (c > 0, or d > 0 for
        the purely x-proportional root); the other root is its negative.
        """
        t = Fraction(t)
        if t == 0:
            raise ZeroInput("0 has the trivial root")
        c = _fraction_sqrt(t)
        if c is not None:
            return self.element(c)
        d = _fraction_sqrt(t / self.delta)
        if d is not None:
            return self.element(0, d)
        return None

    def sqrt(self, z: Union["EtaleElement", Rat]) -> Optional["EtaleElement"]:
        """A square root of z in K, or None.

        For z = c + d*x with d != 0, (e + f*x)^2 = z forces
        e^2 = (c + sqrt(c^2 - delta*d^2))/2 for one of the two sign choices,
        with f = d/(2e); both conditions are exact rational-square tests.
        """
        if not isinstance(z, EtaleElement):
            return self.sqrt_rational(z)
        if z.ring != self:
            raise DeltaMismatch(f"{z.ring} vs {self}")
        if z.d == 0:
            return self.sqrt_rational(z.c) if z.c != 0 else self.element(0)
        disc = z.c * z.c - self.delta * z.d * z.d  # = Norm(z)
        root = _fraction_sqrt(disc)
        if root is None:
            return None
        for branch in (root, -root):
            e2 = (z.c + branch) / 2
            e = _fraction_sqrt(e2)
            if e is not None and e != 0:
                return self.element(e, z.d / (2 * e))
        return None

    def is_square(self, z: Union["EtaleElement", Rat]) -> bool:
        """Triviality of the class of z in K*/K*^2 (the Kummer connecting map)."""
        return self.sqrt(z) is not None

    def to_json(self) -> dict:
        return {"delta": self.delta}

    def __str__(self) -> str:
        return f"Q[x]/(x^2 - ({self.delta}))"


@dataclass(frozen=True)
class EtaleElement:
    """c + d*x in a fixed QuadraticEtale ring."""

    ring: QuadraticEtale
    c: Fraction
    d: Fraction

    def _same(self, other: "EtaleElement") -> None:
        if self.ring != other.ring:
            raise DeltaMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.element(other)
        if not isinstance(other, EtaleElement):
            return NotImplemented
        self._same(other)
        return EtaleElement(self.ring, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return EtaleElement(self.ring, -self.c, -self.d)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.element(other)
        if not isinstance(other, EtaleElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return EtaleElement(self.ring, c * self.c, c * self.d)
        if not isinstance(other, EtaleElement):
            return NotImplemented
        self._same(other)
        delta = self.ring.delta
        return EtaleElement(
            self.ring,
            self.c * other.c + delta * self.d * other.d,
            self.c * other.d + self.d * other.c,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "EtaleElement":
        """The nontrivial K/Q automorphism x -> -x."""
        return EtaleElement(self.ring, self.c, -self.d)

    def norm(self) -> Fraction:
        """N_{K/Q}(z) = c^2 - delta*d^2."""
        return self.c * self.c - self.ring.delta * self.d * self.d

    def trace(self) -> Fraction:
        return 2 * self.c

    def is_unit(self) -> bool:
        return self.norm() != 0

    def inverse(self) -> "EtaleElement":
        n = self.norm()
        if n == 0:
            raise NotUnit(f"{self} has norm 0")
        return self.conjugate() * (1 / n)

    def is_rational(self) -> bool:
        return self.d == 0

    def square(self) -> "EtaleElement":
        return self * self

    def to_json(self) -> list[str]:
        return [str(self.c), str(self.d)]

    def __str__(self) -> str:
        if self.d == 0:
            return str(self.c)
        if abs(self.d) == 1:
            xterm = "x" if self.d > 0 else "-x"
        else:
            xterm = f"{self.d}*x"
        if self.c == 0:
            return xterm
        sign = "+" if not xterm.startswith("-") else ""
        return f"{self.c}{sign}{xterm}"


def _normalize_pure(u: Quaternion) -> Quaternion:
    """Scale u to primitive integer coordinates with positive first nonzero one."""
    coords = (u.x1, u.x2, u.x3)
    den = 1
    for c in coords:
        den = lcm(den, c.denominator)
    nums = [int(c * den) for c in coords]
    g = gcd(gcd(abs(nums[0]), abs(nums[1])), abs(nums[2]))
    nums = [n // g for n in nums]
    lead = next(n for n in nums if n != 0)
    if lead < 0:
        nums = [-n for n in nums]
    return u.algebra.element(0, *nums)


@dataclass(frozen=True)
class OrthogonalInvolution:
    """sigma = int(u) o gamma for a pure invertible u, up to scaling of u.

    u is stored in its canonical scaling (primitive integer coordinates,
    first nonzero one positive), so dataclass equality is equality of
    involutions.
    """

    algebra: QuaternionAlgebra
    u: Quaternion

    def __post_init__(self):
        if self.u.algebra != self.algebra:
            raise AlgebraMismatch("u must live in the declared algebra")
        if not self.u.is_pure():
            raise NotPure(f"u = {self.u} is not pure (Trd != 0)")
        if self.u.reduced_norm() == 0:
            raise NotInvertible(f"u = {self.u} has reduced norm 0")
        object.__setattr__(self, "u", _normalize_pure(self.u))

    @classmethod
    def from_u(cls, u: Quaternion) -> "OrthogonalInvolution":
        return cls(u.algebra, u)

    def apply(self, x: Quaternion) -> Quaternion:
        """sigma(x) = u * gamma(x) * u^-1."""
        if x.algebra != self.algebra:
            raise AlgebraMismatch("x lives in a different algebra")
        return self.u * x.conjugate() * self.u.inverse()

    def discriminant(self) -> int:
        """disc(sigma) = -Nrd(u) as a canonical squarefree integer.

        Invariant under rescaling u since Nrd is multiplicative and scalars
        have square norm.
        """
        return squarefree_part(-self.u.reduced_norm())

    def is_isomorphic_to(self, other: "OrthogonalInvolution") -> bool:
        """Isomorphism of involutions on the same algebra = equal discriminants."""
        if self.algebra != other.algebra:
            raise AlgebraMismatch("involutions live on different algebras")
        return self.discriminant() == other.discriminant()

    def clifford_algebra(self) -> QuadraticEtale:
        """The even Clifford algebra K = Q[x]/(x^2 - disc(sigma))."""
        return QuadraticEtale(self.discriminant())

    def clifford_embedding(self) -> Quaternion:
        """The image of x in B: u rescaled so that its square is exactly delta.

        u^2 = -Nrd(u) for pure u, and -Nrd(u)/delta is a positive rational
        square, so a rational rescaling lands on u'^2 = delta.
        """
        delta = self.discriminant()
        ratio = -self.u.reduced_norm() / delta
        s = _fraction_sqrt(ratio)
        assert s is not None  # ratio is a square by construction of delta
        return self.u * (1 / s)

    def embed(self, z: EtaleElement) -> Quaternion:
        """Ring embedding K -> B sending x to the rescaled u."""
        if z.ring.delta != self.discriminant():
            raise DeltaMismatch("element lives in a different Clifford algebra")
        return self.algebra.scalar(z.c) + self.clifford_embedding() * z.d

    def multiplier(self, g: Quaternion) -> Fraction:
        """mu(g) with sigma(g)*g = mu(g)*1; raises NotSimilitude otherwise."""
        if g.algebra != self.algebra:
            raise AlgebraMismatch("g lives in a different algebra")
        prod = self.apply(g) * g
        if not prod.is_scalar():
            raise NotSimilitude(f"sigma(g)g is not scalar for g = {g}")
        mu = prod.scalar_part()
        if mu == 0:
            raise NotInvertible(f"g = {g} is not invertible")
        return mu

    def is_similitude(self, g: Quaternion) -> bool:
        try:
            self.multiplier(g)
        except (NotSimilitude, NotInvertible):
            return False
        return True

    def is_proper_similitude(self, g: Quaternion) -> bool:
        """Similitude with Nrd(g) = mu(g); these form GO+ = Q(u)*."""
        try:
            mu = self.multiplier(g)
        except (NotSimilitude, NotInvertible):
            return False
        return g.reduced_norm() == mu

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "disc": self.discriminant()}

    def __str__(self) -> str:
        return f"int({self.u}) o gamma on {self.algebra}"


def covering_map(z: EtaleElement) -> EtaleElement:
    """GSpin -> GO+ under the identifications above: z -> z^2.

    Defined on units of K; 2:1 onto its image with kernel {+1,-1} on
    rational points when K is a field.
    """
    if not z.is_unit():
        raise NotUnit(f"{z} is not a unit of {z.ring}")
    return z.square()


def spinor_norm_is_trivial(z: Union[EtaleElement, Rat], K: QuadraticEtale) -> bool:
    """Whether z in GO+(Q) = K* lies in the image of GSpin(Q) = K*.

    This is triviality of the connecting-map class in K*/K*^2, i.e. z being
    a square in K.
    """
    return K.is_square(z)


_KINDS = frozenset({"GO", "O", "GO+", "O+", "GSpin", "Spin", "SpecialClifford"})


@dataclass(frozen=True)
class GroupDescriptor:
    """A similitude or spin group attached to (B, sigma), as predicates.

    No element lists are stored.  GO and O test quaternions through sigma;
    the remaining kinds live on the even Clifford side and test units of K
    (GO+, GSpin and SpecialClifford are the full unit group, O+ and Spin the
    norm-one subgroup).
    """

    kind: str
    sigma: OrthogonalInvolution
    clifford: QuadraticEtale = field(init=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        object.__setattr__(self, "clifford", self.sigma.clifford_algebra())

    def contains(self, g: Union[Quaternion, EtaleElement]) -> bool:
        if self.kind in ("GO", "O"):
            if not isinstance(g, Quaternion):
                raise TypeError("GO/O membership tests quaternions")
            if not self.sigma.is_similitude(g):
                return False
            return self.kind == "GO" or self.sigma.multiplier(g) == 1
        if isinstance(g, Quaternion):
            # proper similitudes of B are exactly the units of Q(u) = K
            if self.kind == "GO+":
                return self.sigma.is_proper_similitude(g)
            raise TypeError(f"{self.kind} membership tests Clifford units")
        if g.ring != self.clifford:
            raise DeltaMismatch("element lives in a different Clifford algebra")
        if self.kind in ("GO+", "GSpin", "SpecialClifford"):
            return g.is_unit()
        return g.norm() == 1  # O+, Spin

    def __str__(self) -> str:
        return f"{self.kind}({self.sigma})"


def groups_of(sigma: OrthogonalInvolution) -> dict[str, GroupDescriptor]:
    """All attached group descriptors, keyed by kind."""
    return {kind: GroupDescriptor(kind, sigma) for kind in sorted(_KINDS)}


def random_involution(
    B: QuaternionAlgebra, rng: random.Random, size: int = 9
) -> OrthogonalInvolution:
    """A random orthogonal involution on B, for sampling-based tests."""
    while True:
        coords = [Fraction(rng.randint(-size, size)) for _ in range(3)]
        if all(c == 0 for c in coords):
            continue
        u = B.element(0, *coords)
        if u.reduced_norm() != 0:
            return OrthogonalInvolution(B, u)
