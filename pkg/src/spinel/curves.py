"""Brute-force elliptic curve counts over small finite fields.

This is the experimental side of the package: everything here is direct
computation (point counts, census of traces, pointwise Frobenius checks),
used to cross-check the isogeny classification and the spinorial classes
without going through any of that theory.

F_{p^a} is realized as F_p[x]/(m(x)) for the lexicographically smallest
monic irreducible m (coefficients compared constant term first), so all
field data is deterministic and reproducible.  Elements are ints in
[0, q), encoding coefficient vectors in base p, constant term last digit;
small fields get full multiplication tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .arith import is_prime
from .errors import FieldTooLarge, NotPrime, PrecheckFailed, SearchExhausted

#: refuse brute force beyond this field size
DEFAULT_FIELD_CAP = 10_000

#: build full add/mul tables when q is at most this
_TABLE_CAP = 256


def _poly_divides(d: tuple[int, ...], f: tuple[int, ...], p: int) -> bool:
    """Does monic d divide monic f in F_p[x]?  Coefficients ascending."""
    rem = list(f)
    while len(rem) >= len(d):
        c = rem[-1] % p
        if c:
            shift = len(rem) - len(d)
            for i, dc in enumerate(d):
                rem[shift + i] = (rem[shift + i] - c * dc) % p
        rem.pop()
    return all(c % p == 0 for c in rem)


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    for coeffs in product(range(p), repeat=deg):
        yield coeffs + (1,)


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    deg = len(m) - 1
    if m[0] == 0:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            if _poly_divides(cand, m, p):
                return False
    return True


def _smallest_modulus(p: int, a: int) -> tuple[int, ...]:
    """First irreducible monic of degree a, coefficients (c0,...,c_{a-1}) in lex order."""
    for tail in product(range(p), repeat=a):
        m = tail + (1,)
        if _is_irreducible(m, p):
            return tail
    raise AssertionError("irreducible polynomials of every degree exist")


class FiniteField:
    """F_{p^a} with int-encoded elements and exact table-driven arithmetic."""

    def __init__(self, p: int, a: int = 1):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if a < 1:
            raise ValueError("a must be positive")
        self.p = p
        self.a = a
        self.q = p**a
        self.modulus = _smallest_modulus(p, a)  # x^a + sum modulus[i] x^i
        self._mul_table: Optional[list] = None
        self._add_table: Optional[list] = None
        if self.q <= _TABLE_CAP:
            self._build_tables()

    def decode(self, u: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.a):
            out.append(u % self.p)
            u //= self.p
        return tuple(out)

    def encode(self, coeffs: tuple[int, ...]) -> int:
        u = 0
        for c in reversed(coeffs):
            u = u * self.p + c % self.p
        return u

    def from_int(self, c: int) -> int:
        """The image of the integer constant c."""
        return c % self.p

    def elements(self) -> range:
        return range(self.q)

    def _add_raw(self, u: int, v: int) -> int:
        cu, cv = self.decode(u), self.decode(v)
        return self.encode(tuple((a + b) % self.p for a, b in zip(cu, cv)))

    def _mul_raw(self, u: int, v: int) -> int:
        cu, cv = self.decode(u), self.decode(v)
        prod = [0] * (2 * self.a - 1)
        for i, ci in enumerate(cu):
            if ci:
                for j, cj in enumerate(cv):
                    prod[i + j] += ci * cj
        # fold down with x^a = -modulus
        for deg in range(2 * self.a - 2, self.a - 1, -1):
            c = prod[deg] % self.p
            prod[deg] = 0
            if c:
                for i, mc in enumerate(self.modulus):
                    prod[deg - self.a + i] -= c * mc
        return self.encode(tuple(c % self.p for c in prod[: self.a]))

    def _build_tables(self) -> None:
        q = self.q
        self._add_table = [[self._add_raw(u, v) for v in range(q)] for u in range(q)]
        self._mul_table = [[self._mul_raw(u, v) for v in range(q)] for u in range(q)]

    def add(self, u: int, v: int) -> int:
        if self._add_table is not None:
            return self._add_table[u][v]
        return self._add_raw(u, v)

    def mul(self, u: int, v: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[u][v]
        return self._mul_raw(u, v)

    def neg(self, u: int) -> int:
        return self.encode(tuple((-c) % self.p for c in self.decode(u)))

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg(v))

    def pow(self, u: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(u), -e)
        out = self.from_int(1)
        base = u
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("0 is not invertible")
        return self.pow(u, self.q - 2)

    def sqrt_counts(self) -> list[int]:
        """counts[v] = #{w : w^2 = v}; cached."""
        counts = getattr(self, "_sqrt_counts", None)
        if counts is None:
            counts = [0] * self.q
            for w in range(self.q):
                counts[self.mul(w, w)] += 1
            self._sqrt_counts = counts
        return counts

    def sqrt_lists(self) -> dict[int, list[int]]:
        """v -> all square roots of v; cached."""
        lists = getattr(self, "_sqrt_lists", None)
        if lists is None:
            lists = {}
            for w in range(self.q):
                lists.setdefault(self.mul(w, w), []).append(w)
            self._sqrt_lists = lists
        return lists

    def artin_schreier_image(self) -> frozenset[int]:
        """{z^2 + z} for char 2; solvability set of y^2 + y = d."""
        image = getattr(self, "_as_image", None)
        if image is None:
            image = frozenset(
                self.add(self.mul(z, z), z) for z in range(self.q)
            )
            self._as_image = image
        return image

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.a, self.modulus) == (other.p, other.a, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.a, self.modulus))

    def __str__(self) -> str:
        return f"F_{self.q}"


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, nonsingular, over F."""

    field: FiniteField
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant() == 0:
            raise ValueError("singular Weierstrass equation")

    def _b_invariants(self) -> tuple[int, int, int, int]:
        F = self.field
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        m, add = F.mul, F.add
        c = F.from_int
        b2 = add(m(a1, a1), m(c(4), a2))
        b4 = add(m(c(2), a4), m(a1, a3))
        b6 = add(m(a3, a3), m(c(4), a6))
        b8 = add(
            add(m(m(a1, a1), a6), m(c(4), m(a2, a6))),
            add(
                F.neg(m(m(a1, a3), a4)),
                add(m(a2, m(a3, a3)), F.neg(m(a4, a4))),
            ),
        )
        return b2, b4, b6, b8

    def discriminant(self) -> int:
        F = self.field
        m, add, neg = F.mul, F.add, F.neg
        c = F.from_int
        b2, b4, b6, b8 = self._b_invariants()
        t1 = neg(m(m(b2, b2), b8))
        t2 = neg(m(c(8), m(b4, m(b4, b4))))
        t3 = neg(m(c(27), m(b6, b6)))
        t4 = m(c(9), m(b2, m(b4, b6)))
        return add(add(t1, t2), add(t3, t4))

    def rhs(self, x: int) -> int:
        """x^3 + a2 x^2 + a4 x + a6."""
        F = self.field
        x2 = F.mul(x, x)
        return F.add(
            F.add(F.mul(x2, x), F.mul(self.a2, x2)),
            F.add(F.mul(self.a4, x), self.a6),
        )

    def is_short(self) -> bool:
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    def to_json(self) -> list[list[int]]:
        F = self.field
        return [list(F.decode(c)) for c in (self.a1, self.a2, self.a3, self.a4, self.a6)]

    def __str__(self) -> str:
        F = self.field
        return (
            f"[{','.join(str(F.decode(c)) for c in (self.a1, self.a2, self.a3, self.a4, self.a6))}]"
            f" over {F}"
        )


def _check_cap(F: FiniteField, cap: int) -> None:
    if F.q > cap:
        raise FieldTooLarge(f"q = {F.q} exceeds brute-force cap {cap}")


def count_points(E: WeierstrassCurve, cap: int = DEFAULT_FIELD_CAP) -> int:
    """#E(F_q) including the point at infinity, by direct enumeration.

    Odd characteristic: complete the square, (2y + a1 x + a3)^2 = 4*rhs + h^2,
    and read solution counts off the squares table.  Characteristic 2: for
    h = a1 x + a3 nonzero substitute y = h z to reach z^2 + z = rhs/h^2 and
    use the Artin-Schreier image; h = 0 leaves the bijective y -> y^2.
    """
    F = E.field
    _check_cap(F, cap)
    n = 1
    if F.p == 2:
        image = F.artin_schreier_image()
        for x in F.elements():
            h = F.add(F.mul(E.a1, x), E.a3)
            d = E.rhs(x)
            if h == 0:
                n += 1
            else:
                h2i = F.inv(F.mul(h, h))
                n += 2 if F.mul(d, h2i) in image else 0
        return n
    counts = F.sqrt_counts()
    four = F.from_int(4)
    for x in F.elements():
        h = F.add(F.mul(E.a1, x), E.a3)
        disc = F.add(F.mul(four, E.rhs(x)), F.mul(h, h))
        n += counts[disc]
    return n


def trace_of(E: WeierstrassCurve, cap: int = DEFAULT_FIELD_CAP) -> int:
    return E.field.q + 1 - count_points(E, cap)


def is_supersingular(E: WeierstrassCurve, cap: int = DEFAULT_FIELD_CAP) -> bool:
    """p divides the trace; over F_p (p >= 5) equivalent to trace = 0."""
    return trace_of(E, cap) % E.field.p == 0


def _census_traces_char2(F: FiniteField) -> set[int]:
    q = F.q
    image = F.artin_schreier_image()
    mul, add = F.mul, F.add
    traces = set()
    xs = list(F.elements())
    x2 = [mul(x, x) for x in xs]
    x3 = [mul(x2[x], x) for x in xs]
    for a2 in F.elements():
        for a4 in F.elements():
            for a6 in F.elements():
                d = [add(add(x3[x], mul(a2, x2[x])), add(mul(a4, x), a6)) for x in xs]
                for a1 in F.elements():
                    a1x = [mul(a1, x) for x in xs]
                    for a3 in F.elements():
                        try:
                            E = WeierstrassCurve(F, a1, a2, a3, a4, a6)
                        except ValueError:
                            continue
                        n = 1
                        for x in xs:
                            h = add(a1x[x], a3)
                            if h == 0:
                                n += 1
                            elif mul(d[x], F.inv(mul(h, h))) in image:
                                n += 2
                        traces.add(q + 1 - n)
    return traces


def _census_traces_char3(F: FiniteField) -> set[int]:
    # every char-3 curve is isomorphic to y^2 = x^3 + a2 x^2 + a4 x + a6
    q = F.q
    counts = F.sqrt_counts()
    mul, add = F.mul, F.add
    traces = set()
    xs = list(F.elements())
    x2 = [mul(x, x) for x in xs]
    x3 = [mul(x2[x], x) for x in xs]
    for a2 in F.elements():
        g2 = [add(x3[x], mul(a2, x2[x])) for x in xs]
        for a4 in F.elements():
            g4 = [add(g2[x], mul(a4, x)) for x in xs]
            for a6 in F.elements():
                try:
                    E = WeierstrassCurve(F, 0, a2, 0, a4, a6)
                except ValueError:
                    continue
                # 4*rhs + h^2 = rhs in char 3 with a1 = a3 = 0
                n = 1
                for x in xs:
                    n += counts[add(g4[x], a6)]
                traces.add(q + 1 - n)
    return traces


def _census_traces_large_char(F: FiniteField) -> set[int]:
    # p >= 5: short form y^2 = x^3 + Ax + B covers every class
    q = F.q
    counts = F.sqrt_counts()
    mul, add = F.mul, F.add
    c4, c27 = F.from_int(4), F.from_int(27)
    traces = set()
    xs = list(F.elements())
    x3 = [mul(mul(x, x), x) for x in xs]
    for A in F.elements():
        g = [add(x3[x], mul(A, x)) for x in xs]
        a3term = mul(c4, mul(A, mul(A, A)))
        for B in F.elements():
            if add(a3term, mul(c27, mul(B, B))) == 0:
                continue
            n = 1
            for x in xs:
                n += counts[add(g[x], B)]
            traces.add(q + 1 - n)
    return traces


def trace_census(F: FiniteField, cap: int = DEFAULT_FIELD_CAP) -> set[int]:
    """{q + 1 - #E(F_q) : E nonsingular Weierstrass over F_q}.

    Point counts are isomorphism invariants, so the scan runs over a reduced
    family covering all isomorphism classes: the general five-coefficient
    form in characteristic 2, y^2 = cubic with the x^2 term in
    characteristic 3, and the short form for p >= 5.
    """
    _check_cap(F, cap)
    if F.p == 2:
        return _census_traces_char2(F)
    if F.p == 3:
        return _census_traces_char3(F)
    return _census_traces_large_char(F)


# short-form group law, p >= 5; points are (x, y) pairs or None for infinity

Point = Optional[tuple[int, int]]


def _require_short(E: WeierstrassCurve) -> None:
    if E.field.p < 5 or not E.is_short():
        raise PrecheckFailed("group law implemented for short form, p >= 5 only")


def point_neg(E: WeierstrassCurve, P: Point) -> Point:
    if P is None:
        return None
    x, y = P
    return (x, E.field.neg(y))


def point_add(E: WeierstrassCurve, P: Point, Q: Point) -> Point:
    """Chord-tangent addition."""
    _require_short(E)
    F = E.field
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and F.add(y1, y2) == 0:
        return None
    if P == Q:
        num = F.add(F.mul(F.from_int(3), F.mul(x1, x1)), E.a4)
        den = F.mul(F.from_int(2), y1)
    else:
        num = F.sub(y2, y1)
        den = F.sub(x2, x1)
    lam = F.mul(num, F.inv(den))
    x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
    y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
    return (x3, y3)


def point_mul(E: WeierstrassCurve, m: int, P: Point) -> Point:
    """[m]P by double and add; negative m through the involution."""
    if m < 0:
        return point_mul(E, -m, point_neg(E, P))
    out: Point = None
    base = P
    while m:
        if m & 1:
            out = point_add(E, out, base)
        base = point_add(E, base, base)
        m >>= 1
    return out


def curve_points(E: WeierstrassCurve, cap: int = DEFAULT_FIELD_CAP) -> list[Point]:
    """All points of E(F_q), infinity first.  Short form only."""
    _require_short(E)
    _check_cap(E.field, cap)
    F = E.field
    roots = F.sqrt_lists()
    pts: list[Point] = [None]
    for x in F.elements():
        for y in roots.get(E.rhs(x), ()):
            pts.append((x, y))
    return pts


def _reduced_family(F: FiniteField) -> Iterator[tuple[int, int, int, int, int]]:
    if F.p == 2:
        yield from product(F.elements(), repeat=5)
    elif F.p == 3:
        for a2, a4, a6 in product(F.elements(), repeat=3):
            yield (0, a2, 0, a4, a6)
    else:
        for a4, a6 in product(F.elements(), repeat=2):
            yield (0, 0, 0, a4, a6)


def find_trace_zero_curve(p: int, cap: int = DEFAULT_FIELD_CAP) -> WeierstrassCurve:
    """First curve over F_p with exactly p + 1 points, in scan order."""
    F = FiniteField(p, 1)
    _check_cap(F, cap)
    for coeffs in _reduced_family(F):
        try:
            E = WeierstrassCurve(F, *coeffs)
        except ValueError:
            continue
        if count_points(E, cap) == p + 1:
            return E
    raise SearchExhausted(f"no supersingular curve over F_{p}")


def find_q14_curve(p: int, cap: int = DEFAULT_FIELD_CAP) -> WeierstrassCurve:
    """A curve over F_{p^2} with (p+1)^2 points, i.e. Frobenius scalar -p.

    A trace-zero curve over F_p has Frobenius eigenvalues +-i*sqrt(p), so
    its base change to F_{p^2} has trace -2p and (p+1)^2 points; the count
    is re-verified directly.  Falls back to scanning F_{p^2} families if the
    base-change route somehow fails, and raising SearchExhausted after that
    would falsify the classification.
    """
    F2 = FiniteField(p, 2)
    _check_cap(F2, cap)
    target = (p + 1) ** 2
    try:
        E0 = find_trace_zero_curve(p, cap)
    except SearchExhausted:
        E0 = None
    if E0 is not None:
        # constants embed as themselves under the int encoding
        E = WeierstrassCurve(F2, E0.a1, E0.a2, E0.a3, E0.a4, E0.a6)
        if count_points(E, cap) == target:
            return E
    for coeffs in _reduced_family(F2):
        try:
            E = WeierstrassCurve(F2, *coeffs)
        except ValueError:
            continue
        if count_points(E, cap) == target:
            return E
    raise SearchExhausted(f"no curve with {target} points over F_{p**2}")


def verify_frobenius_scalar(E: WeierstrassCurve, cap: int = DEFAULT_FIELD_CAP) -> bool:
    """Check (x^q, y^q) = [-p]P for every rational point of E/F_{p^2}.

    This certifies the Frobenius endomorphism acts as the scalar -p on the
    whole group E(F_{p^2}), which is (Z/(p+1))^2, not merely that the trace
    is -2p.  Preconditions: short form, p >= 5, field F_{p^2}, (p+1)^2
    points.
    """
    _require_short(E)
    F = E.field
    if F.a != 2:
        raise PrecheckFailed("expected a quadratic field F_{p^2}")
    if count_points(E, cap) != (F.p + 1) ** 2:
        raise PrecheckFailed("curve is not in the tau = -p class")
    q = F.q
    for P in curve_points(E, cap):
        if P is None:
            continue
        x, y = P
        frob = (F.pow(x, q), F.pow(y, q))
        if frob != point_mul(E, -F.p, P):
            return False
    return True
