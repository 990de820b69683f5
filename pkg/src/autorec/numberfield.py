"""Exact arithmetic in cyclotomic fields.

The field Q(w), w = exp(2*pi*i/n), is represented on the power basis
1, w, ..., w^(phi(n)-1).  Coordinates are rational numbers and reduction
happens modulo the n-th cyclotomic polynomial Phi_n, so everything in
this module is exact.  Floating point enters only through complex_embed,
which exists for sanity checks and reports, never for decisions inside
the exact pipeline.

Elements of different conductors may be mixed freely; they are lifted to
the compositum Q(zeta_lcm) on demand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional

import mpmath


# ----------------------------------------------------------------------
# small integer helpers


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as a list of (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_prime_power(n: int) -> Optional[tuple[int, int]]:
    """Return (p, a) when n = p^a with a >= 1, otherwise None."""
    fac = factorize(n) if n > 1 else []
    if len(fac) == 1:
        return fac[0]
    return None


def multiplicative_order(k: int, n: int) -> int:
    """Least s >= 1 with k^s = 1 mod n.  Requires gcd(k, n) = 1."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(k, n) != 1:
        raise ValueError(f"gcd({k}, {n}) != 1, no multiplicative order")
    if n == 1:
        return 1
    s = 1
    acc = k % n
    while acc != 1:
        acc = (acc * k) % n
        s += 1
    return s


def coset_reps(k: int, n: int) -> list[int]:
    """Smallest positive representatives of (Z/nZ)^* modulo <k>, ascending.

    The first representative is always 1.  Requires gcd(k, n) = 1.
    """
    if math.gcd(k, n) != 1:
        raise ValueError(f"gcd({k}, {n}) != 1")
    if n == 1:
        return [1]
    seen = set()
    reps = []
    for u in range(1, n):
        if math.gcd(u, n) != 1 or u in seen:
            continue
        reps.append(u)
        v = u
        while v not in seen:
            seen.add(v)
            v = (v * k) % n
    return reps


def _num(c):
    """Normalize a coefficient: Fractions with denominator 1 become ints."""
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"rational coefficient expected, got {type(c).__name__}")


# ----------------------------------------------------------------------
# univariate polynomials over Q


class RatPoly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_num(Fraction(c) if not isinstance(c, (int, Fraction)) else c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, e: int, c=1) -> "RatPoly":
        return cls([0] * e + [c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, RatPoly) else RatPoly([-other]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if not isinstance(other, RatPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        """Exact polynomial division over Q."""
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        lead = Fraction(other.coeffs[-1])
        db = other.degree
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = _num(c / lead)
                q[i - db] = f
                for j, cb in enumerate(other.coeffs):
                    rem[i - db + j] -= f * cb
        return RatPoly(q), RatPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate by Horner's rule; works for rationals and field elements."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_power(self, e: int) -> "RatPoly":
        """The polynomial p(x^e)."""
        if e < 1:
            raise ValueError("exponent must be >= 1")
        out = [0] * (e * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            if c:
                out[e * i] = c
        return RatPoly(out)

    def truncate(self, n: int) -> "RatPoly":
        """Drop every term of degree >= n."""
        return RatPoly(self.coeffs[:n])

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def pretty(self, var: str = "x") -> str:
        return _pretty_terms(self.coeffs, var)

    def __repr__(self):
        return f"RatPoly({self.pretty()})"


def _pretty_terms(coeffs, var: str) -> str:
    """Human form of a coefficient sequence, constant term first."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            pw = var if i == 1 else f"{var}^{i}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def rat_poly_xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = RatPoly([1]), RatPoly()
    t0, t1 = RatPoly(), RatPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


# ----------------------------------------------------------------------
# cyclotomic polynomials

_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def _int_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials; den must be monic."""
    assert den[-1] == 1
    num = list(num)
    db = len(den) - 1
    q = [0] * (len(num) - db)
    for i in range(len(num) - 1, db - 1, -1):
        c = num[i]
        if c:
            q[i - db] = c
            for j, cb in enumerate(den):
                num[i - db + j] -= c * cb
    assert all(c == 0 for c in num[:db]), "division was not exact"
    return q


def cyclotomic_int(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n.

    Built one prime at a time: Phi_1 = x - 1, then for a new prime p,
    Phi_(mp)(x) = Phi_m(x^p) / Phi_m(x); finally Phi_n(x) =
    Phi_rad(x^(n/rad)).  Much cheaper than dividing x^n - 1 by every
    proper divisor's factor when n has large prime parts.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    got = _CYCLO_CACHE.get(n)
    if got is not None:
        return got
    if n == 1:
        poly = (-1, 1)
    else:
        f = [-1, 1]
        rad = 1
        for p, _ in factorize(n):
            rad *= p
            sub = [0] * ((len(f) - 1) * p + 1)
            for i, c in enumerate(f):
                sub[i * p] = c
            f = _int_divexact(sub, tuple(f))
        stretch = n // rad
        if stretch > 1:
            out = [0] * ((len(f) - 1) * stretch + 1)
            for i, c in enumerate(f):
                out[i * stretch] = c
            f = out
        poly = tuple(f)
    _CYCLO_CACHE[n] = poly
    return poly


def cyclotomic_poly(n: int) -> RatPoly:
    """The n-th cyclotomic polynomial Phi_n over Q."""
    return RatPoly(cyclotomic_int(n))


# ----------------------------------------------------------------------
# the field


_FIELD_CACHE: dict[int, "CycloField"] = {}


def cyclo_field(conductor: int) -> "CycloField":
    """Shared CycloField instance for the given conductor."""
    fld = _FIELD_CACHE.get(conductor)
    if fld is None:
        fld = CycloField(conductor)
        _FIELD_CACHE[conductor] = fld
    return fld


class CycloField:
    """Q(zeta_n) on the power basis 1, w, ..., w^(phi(n)-1)."""

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        self.conductor = conductor
        self.modulus_int = cyclotomic_int(conductor)
        self.phi = len(self.modulus_int) - 1
        # x^j mod Phi_n for j = 0, 1, ...; grown on demand up to 2*phi
        self._xpow: list[tuple[int, ...]] = []

    def __repr__(self):
        return f"CycloField({self.conductor})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("CycloField", self.conductor))

    # -- basis tables

    def xpow(self, j: int) -> tuple[int, ...]:
        """Coordinates of x^j mod Phi_n; j is taken modulo n."""
        j %= self.conductor
        tab = self._xpow
        if not tab:
            tab.append(tuple([1] + [0] * (self.phi - 1)) if self.phi > 1 else (1,))
        while len(tab) <= j:
            prev = tab[-1]
            shifted = [0] + list(prev)
            lead = shifted.pop()
            if lead:
                mod = self.modulus_int
                for t in range(self.phi):
                    shifted[t] -= lead * mod[t]
            tab.append(tuple(shifted))
        return tab[j]

    def reduce(self, coeffs: Iterable) -> tuple:
        """Reduce an arbitrary coefficient list mod Phi_n to phi coordinates.

        Exponents >= n are first folded with x^n = 1, which keeps the
        numbers small when the input came from a cyclic-convolution
        computation mod x^n - 1.
        """
        n, phi = self.conductor, self.phi
        cs = [_num(c) for c in coeffs]
        if len(cs) > n:
            folded = [0] * n
            for i, c in enumerate(cs):
                if c:
                    folded[i % n] += c
            cs = folded
        low = self.modulus_int[:phi]
        for i in range(len(cs) - 1, phi - 1, -1):
            c = cs[i]
            if c:
                cs[i] = 0
                lo = i - phi
                cs[lo:i] = [a - c * b for a, b in zip(cs[lo:i], low)]
        cs = cs[:phi]
        cs += [0] * (phi - len(cs))
        return tuple(_num(c) for c in cs)

    # -- constructors

    def element(self, coeffs: Iterable) -> "CycloElement":
        """Element with the given coefficients over powers of w (any length)."""
        return CycloElement(self, self.reduce(coeffs))

    def zero(self) -> "CycloElement":
        return CycloElement(self, (0,) * self.phi)

    def one(self) -> "CycloElement":
        return self.from_rational(1)

    def from_rational(self, q) -> "CycloElement":
        return CycloElement(self, (_num(Fraction(q)),) + (0,) * (self.phi - 1))

    def omega(self) -> "CycloElement":
        return self.omega_power(1)

    def omega_power(self, j: int) -> "CycloElement":
        return CycloElement(self, self.xpow(j))

    def coerce(self, v) -> "CycloElement":
        if isinstance(v, CycloElement):
            if v.field.conductor == self.conductor:
                return v
            if self.conductor % v.field.conductor == 0:
                return _lift(v, self)
            raise ValueError(
                f"cannot coerce conductor {v.field.conductor} into {self.conductor}"
            )
        if isinstance(v, (int, Fraction)):
            return self.from_rational(v)
        raise TypeError(f"cannot coerce {type(v).__name__} into {self!r}")


def _lift(a: "CycloElement", big: CycloField) -> "CycloElement":
    """Embed a into the larger field; zeta_small = zeta_big^(L/small)."""
    step = big.conductor // a.field.conductor
    out = [0] * big.phi
    for i, c in enumerate(a.coords):
        if c:
            xp = big.xpow(i * step)
            for t in range(big.phi):
                if xp[t]:
                    out[t] += c * xp[t]
    return CycloElement(big, tuple(_num(c) for c in out))


def common_field(f1: CycloField, f2: CycloField) -> CycloField:
    """The compositum Q(zeta_lcm) of two cyclotomic fields."""
    return cyclo_field(math.lcm(f1.conductor, f2.conductor))


class CycloElement:
    """An element of a cyclotomic field, exact power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CycloField, coords: tuple):
        if len(coords) != field.phi:
            raise ValueError("coordinate length does not match the field degree")
        self.field = field
        self.coords = coords

    # -- coercion

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            return self, self.field.from_rational(other)
        if isinstance(other, CycloElement):
            if other.field.conductor == self.field.conductor:
                return self, other
            big = common_field(self.field, other.field)
            return big.coerce(self), big.coerce(other)
        return None

    # -- ring operations

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloElement(a.field, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.field, tuple(-x for x in self.coords))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloElement(a.field, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.field, tuple(_num(c * other) for c in self.coords))
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        ca, cb = a.coords, b.coords
        out = [0] * (2 * len(ca) - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        out[i + j] += x * y
        return CycloElement(a.field, a.field.reduce(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        fld = self.field
        g, s, _ = rat_poly_xgcd(RatPoly(self.coords), RatPoly(fld.modulus_int))
        if g.degree != 0:
            raise ArithmeticError("cyclotomic modulus is not irreducible?")
        inv = s * (Fraction(1) / Fraction(g.coeffs[0]))
        return fld.element(inv.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(1, 1) / other
            return CycloElement(self.field, tuple(_num(c * q) for c in self.coords))
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        acc = self.field.one()
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # -- predicates

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, CycloElement):
            pair = self._pair(other)
            a, b = pair
            return a.coords == b.coords
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field.conductor, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Optional[Fraction]:
        return Fraction(self.coords[0]) if self.is_rational() else None

    def conjugate(self) -> "CycloElement":
        """Complex conjugation, i.e. the Galois map w -> w^(-1)."""
        return GaloisMap(self.field, -1)(self)

    def pretty(self, var: str = "w") -> str:
        return _pretty_terms(self.coords, var)

    def __repr__(self):
        return f"<{self.pretty()} in Q(zeta_{self.field.conductor})>"


class GaloisMap:
    """The automorphism psi_m of Q(zeta_n) with psi_m(w) = w^m, gcd(m, n) = 1."""

    def __init__(self, field: CycloField, m: int):
        self.field = field
        if math.gcd(m, field.conductor) != 1:
            raise ValueError(f"gcd({m}, {field.conductor}) != 1: not an automorphism")
        self.m = m % field.conductor if field.conductor > 1 else 0

    def __call__(self, a: CycloElement) -> CycloElement:
        fld = self.field
        a = fld.coerce(a)
        out = [0] * fld.phi
        for i, c in enumerate(a.coords):
            if c:
                xp = fld.xpow(i * self.m)
                for t in range(fld.phi):
                    if xp[t]:
                        out[t] += c * xp[t]
        return CycloElement(fld, tuple(_num(c) for c in out))

    def __repr__(self):
        return f"GaloisMap(w -> w^{self.m} on Q(zeta_{self.field.conductor}))"


def galois_apply(a: CycloElement, m: int) -> CycloElement:
    """psi_m(a): the Galois automorphism w -> w^m applied to a."""
    return GaloisMap(a.field, m)(a)


def gaussian_period(field: CycloField, k: int, j: int) -> CycloElement:
    """The Gaussian period eta_j = sum of w^(j * k^i) over i < ord_k."""
    n = field.conductor
    s0 = multiplicative_order(k, n)
    out = [0] * field.phi
    e = j % n
    for _ in range(s0):
        xp = field.xpow(e)
        for t in range(field.phi):
            out[t] += xp[t]
        e = (e * k) % n
    return CycloElement(field, tuple(out))


# ----------------------------------------------------------------------
# rationality and numeric embedding


class Rationality:
    """Outcome of the exact rationality test for a field element."""

    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value: Optional[Fraction]):
        self.kind = kind  # "integer" | "rational" | "irrational"
        self.value = value

    def __repr__(self):
        return f"Rationality({self.kind}, {self.value})"

    def __eq__(self, other):
        return (
            isinstance(other, Rationality)
            and other.kind == self.kind
            and other.value == self.value
        )


def rationality(a: CycloElement) -> Rationality:
    """Classify a as integer, non-integer rational, or irrational.

    On the power basis an element is rational exactly when every
    coordinate above the constant one vanishes.
    """
    v = a.rational_value()
    if v is None:
        return Rationality("irrational", None)
    if v.denominator == 1:
        return Rationality("integer", v)
    return Rationality("rational", v)


def complex_embed(a: CycloElement, digits: int = 15) -> mpmath.mpc:
    """Numeric value of a under w -> exp(2*pi*i/n), at the given precision.

    For sanity checks and reports only.
    """
    with mpmath.workdps(digits):
        n = a.field.conductor
        w = mpmath.e ** (2j * mpmath.pi / n)
        acc = mpmath.mpc(0)
        for c in reversed(a.coords):
            acc = acc * w + (mpmath.mpf(c.numerator) / c.denominator
                             if isinstance(c, Fraction) else mpmath.mpf(c))
        return acc


# ----------------------------------------------------------------------
# exact linear algebra over a field
#
# Entries may be CycloElements, Fractions or ints, mixed; all that is
# used is +, -, *, /, and comparison with zero.


def _div(c, piv):
    """Exact division; int/int must not fall into float arithmetic."""
    if isinstance(c, int) and isinstance(piv, int):
        return _num(Fraction(c, piv))
    return c / piv


def solve_exact(rows: list[list], rhs: list) -> Optional[list]:
    """One exact solution of (rows) * x = rhs, or None when inconsistent.

    The system may be overdetermined; free variables are set to zero.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(ncols):
        sel = None
        for i in range(row, m):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        piv = aug[row][col]
        aug[row] = [_div(c, piv) for c in aug[row]]
        for i in range(m):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [c - f * d for c, d in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if aug[i][ncols] != 0:
            return None
    x = [0] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return x


def nullspace(rows: list[list]) -> list[list]:
    """A basis of the right nullspace of the matrix, exact."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    pivots = []
    row = 0
    for col in range(ncols):
        sel = None
        for i in range(row, m):
            if a[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        piv = a[row][col]
        a[row] = [_div(c, piv) for c in a[row]]
        for i in range(m):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [c - f * d for c, d in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, col in enumerate(pivots):
            v[col] = -a[i][fc]
        basis.append(v)
    return basis
