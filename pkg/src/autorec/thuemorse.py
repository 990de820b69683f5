"""Exact analysis of Thue-Morse partial sums at roots of unity.

T(n; x) = sum of (-1)^(binary weight of m) x^m over m < n satisfies
T(2^s n; x) = T(n; x^(2^s)) T(2^s; x), so at a root of unity w of odd
conductor r0 the single number T(2^s0; w), s0 the order of 2 mod r0,
controls the whole recurrence.  This module computes that coefficient
exactly, classifies its value (integer p, purely imaginary i*sqrt(p),
unit +-1, real non-integer), tabulates the classification over ranges
of conductors, and demonstrates the companion recurrence for the sum
over odd-weight m only.

All classification is done twice: predicted from the arithmetic of
(r0, s0, phi) and measured from the exact value; a disagreement would
falsify a theorem, so it raises instead of being reported as data.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import AutorecError
from .numberfield import (
    CycloElement,
    RatPoly,
    cyclo_field,
    euler_phi,
    is_prime_power,
    multiplicative_order,
    rationality,
)
from .recurrence import RootSpec

CASE_PRIME_POWER_PRIMITIVE = "PrimePowerPrimitiveRoot"
CASE_PRIME_POWER_HALF_ODD = "PrimePowerHalfOdd"
CASE_TWO_FACTOR_UNIT = "TwoFactorUnit"
CASE_TWO_FACTOR_REAL = "TwoFactorRealNonInt"
CASE_OTHER = "Other"


def tm_term(m: int) -> int:
    """(-1)^(number of ones in the binary expansion of m)."""
    return -1 if bin(m).count("1") % 2 else 1


def tm_poly(n: int) -> RatPoly:
    """T(n; x) as an exact polynomial."""
    return RatPoly([tm_term(m) for m in range(n)])


def tm_identities_check(n_max: int, s_max: int) -> bool:
    """Verify the four classical T(n; x) identities exactly.

    (i)   T(2n; x) = (1 - x) T(n; x^2)
    (ii)  T(2^s; x) = product of (1 - x^(2^i)) over i < s
    (iii) T(2^s n; x) = T(n; x^(2^s)) T(2^s; x)
    (iv)  x^(2^s - 1) T(2^s; 1/x) = (-1)^s T(2^s; x)

    Returns True; a failure (impossible unless the code is wrong) raises
    with the identity label and the offending (n, s).
    """
    one_minus_x = RatPoly([1, -1])
    for n in range(1, n_max + 1):
        if tm_poly(2 * n) != one_minus_x * tm_poly(n).substitute_power(2):
            raise AutorecError(f"identity (i) fails at n = {n}")
    for s in range(s_max + 1):
        t = tm_poly(2 ** s)
        prod = RatPoly([1])
        for i in range(s):
            prod = prod * (RatPoly([1]) - RatPoly.monomial(2 ** i))
        if t != prod:
            raise AutorecError(f"identity (ii) fails at s = {s}")
        rev = RatPoly(list(t.coeffs[::-1]))
        if rev != (t if s % 2 == 0 else -t):
            raise AutorecError(f"identity (iv) fails at s = {s}")
        for n in range(1, n_max + 1):
            lhs = tm_poly(2 ** s * n)
            rhs = tm_poly(n).substitute_power(2 ** s) * t
            if lhs != rhs:
                raise AutorecError(f"identity (iii) fails at n = {n}, s = {s}")
    return True


# ----------------------------------------------------------------------
# the coefficient T(2^s0; w)


def _tm_cyclic(r0: int, e: int = 1) -> list[int]:
    """Integer vector of prod (1 - x^(2^i e)) mod x^r0 - 1, i < ord_2(r0)."""
    vec = [0] * r0
    vec[0] = 1
    s0 = multiplicative_order(2, r0)
    j = e % r0
    for _ in range(s0):
        rot = vec[r0 - j:] + vec[:r0 - j] if j else vec[:]
        vec = [a - b for a, b in zip(vec, rot)]
        j = (j * 2) % r0
    return vec


def tm_coefficient(r0: int, e: int = 1) -> CycloElement:
    """T(2^s0; w) for w = zeta_r0^e, with s0 the order of 2 mod cond(w).

    The product is accumulated modulo x^r0 - 1 (one shift-and-subtract
    per factor) and reduced modulo the cyclotomic polynomial at the end.
    The pair (r0, e) is normalized to the actual conductor first, so
    gcd(e, r0) > 1 is allowed; e = 0 gives T(2; 1) = 0.
    """
    if r0 < 3 or r0 % 2 == 0:
        raise AutorecError("conductor must be odd and at least 3")
    e %= r0
    if e == 0:
        return cyclo_field(1).zero()
    g = math.gcd(e, r0)
    rr, ee = r0 // g, e // g
    field = cyclo_field(rr)
    return field.element(_tm_cyclic(rr, ee))


class TmClassification:
    """Exact value of T(2^s0; w) together with its classification."""

    def __init__(self, r0, s0, phi, case, value, is_real, is_imaginary, rat, abs_square):
        self.r0 = r0
        self.s0 = s0
        self.phi = phi
        self.case = case
        self.value = value
        self.is_real = is_real
        self.is_imaginary = is_imaginary
        self.rationality = rat
        self.abs_square = abs_square  # value * conj(value) when computed

    def integer_value(self) -> Optional[int]:
        q = self.value.rational_value()
        return int(q) if q is not None and q.denominator == 1 else None

    def to_json_dict(self) -> dict:
        iv = self.integer_value()
        return {
            "r0": self.r0,
            "s0": self.s0,
            "phi": self.phi,
            "case": self.case,
            "value": iv if iv is not None else self.value.pretty(),
            "is_real": self.is_real,
            "is_imaginary": self.is_imaginary,
            "abs_square": str(self.abs_square) if self.abs_square is not None else None,
        }

    def __repr__(self):
        return f"TmClassification(r0={self.r0}, case={self.case}, value={self.value.pretty()})"


def tm_classify(r0: int) -> TmClassification:
    """Classify T(2^s0; w), w = zeta_r0, cross-checking theory vs value.

    Predictions (realness from the parity of s0, integer p at prime
    powers with 2 a primitive root, i*sqrt(p) in the half-odd case,
    units and real non-integers at several prime factors) are recomputed
    from the exact value; any mismatch raises.
    """
    if r0 < 3 or r0 % 2 == 0:
        raise AutorecError("conductor must be odd and at least 3")
    s0 = multiplicative_order(2, r0)
    phi = euler_phi(r0)
    field = cyclo_field(r0)
    vec = _tm_cyclic(r0)
    value = field.element(vec)
    conj = field.element([vec[0]] + vec[:0:-1])
    psi2 = field.element(_permute_cyclic(vec, 2))
    if psi2 != value:
        raise AutorecError(f"value not invariant under psi_2 at r0 = {r0}")

    is_real = value == conj
    is_imag = conj == -value
    if is_real != (s0 % 2 == 0) or (s0 % 2 == 1 and not is_imag):
        raise AutorecError(f"realness contradicts the parity of s0 at r0 = {r0}")

    rat = rationality(value)
    pp = is_prime_power(r0)
    abs_square = None
    if pp is not None:
        p, _ = pp
        if s0 == phi:
            case = CASE_PRIME_POWER_PRIMITIVE
            if value.rational_value() != p:
                raise AutorecError(f"expected the prime {p} at r0 = {r0}")
        else:
            if rat.kind != "irrational":
                raise AutorecError(f"unexpected rational value at prime power r0 = {r0}")
            if 2 * s0 == phi and s0 % 2 == 1:
                case = CASE_PRIME_POWER_HALF_ODD
                abs_square = (value * conj).rational_value()
                if abs_square != p:
                    raise AutorecError(f"expected |T|^2 = {p} at r0 = {r0}")
            else:
                case = CASE_OTHER
    else:
        q = value.rational_value()
        if q is not None and q not in (1, -1):
            raise AutorecError(f"integer value {q} other than a unit at r0 = {r0}")
        if s0 % 2 == 0 and pow(2, s0 // 2, r0) == r0 - 1:
            case = CASE_TWO_FACTOR_REAL
            if not is_real or q is not None:
                raise AutorecError(f"expected a real non-integer at r0 = {r0}")
        elif s0 % 2 == 0 and 2 * s0 == phi:
            case = CASE_TWO_FACTOR_UNIT
            if q not in (1, -1):
                raise AutorecError(f"expected a unit at r0 = {r0}")
        else:
            case = CASE_OTHER
    return TmClassification(r0, s0, phi, case, value, is_real, is_imag, rat, abs_square)


def _permute_cyclic(vec: list[int], m: int) -> list[int]:
    """x -> x^m on a vector mod x^r - 1 (exponent indices times m)."""
    r = len(vec)
    out = [0] * r
    for j, c in enumerate(vec):
        if c:
            out[(j * m) % r] += c
    return out


# ----------------------------------------------------------------------
# scanning many conductors


ROW_ONE = "one"
ROW_MINUS_ONE = "minus_one"
ROW_NONINTEGER = "noninteger"
COL_PHI_EQ = "phi_eq_2s0"
COL_PHI_GT = "phi_gt_2s0"

_ROWS = (ROW_ONE, ROW_MINUS_ONE, ROW_NONINTEGER)
_COLS = (COL_PHI_EQ, COL_PHI_GT)


class TmTable:
    """Counts of T(2^s0; w) classes over scanned conductors.

    Rows split by value (1, -1, non-integer), columns by whether
    phi(r0) = 2 s0 or phi(r0) > 2 s0.  Only conductors with s0 even and
    2^(s0/2) not congruent to -1 are tabulated: the others have a value
    that is forced purely imaginary or real non-integral, and both
    exclusion counts are kept alongside.
    """

    def __init__(self, bound, method, cells, considered, in_set, odd_s0, forced_real):
        self.bound = bound
        self.method = method
        self.cells = cells  # dict row -> dict col -> count
        self.considered = considered
        self.in_set = in_set
        self.excluded_odd_s0 = odd_s0
        self.excluded_forced_real = forced_real

    def row_total(self, row: str) -> int:
        return sum(self.cells[row].values())

    def col_total(self, col: str) -> int:
        return sum(self.cells[row][col] for row in _ROWS)

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound,
            "method": self.method,
            "considered": self.considered,
            "in_set": self.in_set,
            "excluded_odd_s0": self.excluded_odd_s0,
            "excluded_forced_real": self.excluded_forced_real,
            "cells": {r: dict(self.cells[r]) for r in _ROWS},
            "row_totals": {r: self.row_total(r) for r in _ROWS},
            "col_totals": {c: self.col_total(c) for c in _COLS},
        }

    def pretty(self) -> str:
        labels = {
            ROW_ONE: "T = 1",
            ROW_MINUS_ONE: "T = -1",
            ROW_NONINTEGER: "T not integer",
        }
        head = f"{'':16}{'phi = 2 s0':>12}{'phi > 2 s0':>12}{'total':>10}"
        lines = [head]
        for r in _ROWS:
            lines.append(
                f"{labels[r]:16}{self.cells[r][COL_PHI_EQ]:>12}"
                f"{self.cells[r][COL_PHI_GT]:>12}{self.row_total(r):>10}"
            )
        lines.append(
            f"{'total':16}{self.col_total(COL_PHI_EQ):>12}"
            f"{self.col_total(COL_PHI_GT):>12}{self.in_set:>10}"
        )
        lines.append(
            f"scanned {self.considered} odd conductors with >= 2 prime factors"
            f" up to {self.bound}; excluded {self.excluded_odd_s0} with odd s0"
            f" and {self.excluded_forced_real} forced real non-integers"
        )
        return "\n".join(lines)


def _scan_exact(r0: int):
    """Classify one conductor for the table; exact arithmetic only."""
    s0 = multiplicative_order(2, r0)
    phi = euler_phi(r0)
    if s0 % 2:
        return (r0, "odd_s0")
    if pow(2, s0 // 2, r0) == r0 - 1:
        field = cyclo_field(r0)
        vec = _tm_cyclic(r0)
        red = field.reduce(vec)
        rev = field.reduce([vec[0]] + vec[:0:-1])
        if red != rev or not any(red[1:]):
            raise AutorecError(f"forced real non-integer fails at r0 = {r0}")
        return (r0, "forced_real")
    field = cyclo_field(r0)
    red = field.reduce(_tm_cyclic(r0))
    if any(red[1:]):
        row = ROW_NONINTEGER
    else:
        q = red[0]
        if q not in (1, -1):
            raise AutorecError(f"non-unit integer {q} at r0 = {r0}")
        row = ROW_ONE if q == 1 else ROW_MINUS_ONE
    col = COL_PHI_EQ if phi == 2 * s0 else COL_PHI_GT
    return (r0, (row, col))


def _scan_numeric(r0: int):
    """Classify one conductor by a double-precision product.

    Powers of w are recomputed from the exponent each step (no error
    compounding), and the running product is carried as a mantissa times
    a power of two because the partial products can swing far outside
    double range even when the final value is a unit.  Classification
    restores the exponent first; a result too close to the decision
    boundary is redone in high-precision arithmetic, so it never
    silently guesses.
    """
    s0 = multiplicative_order(2, r0)
    phi = euler_phi(r0)
    if s0 % 2:
        return (r0, "odd_s0")
    if pow(2, s0 // 2, r0) == r0 - 1:
        return (r0, "forced_real")
    tau = 2.0 * math.pi / r0
    z = 1.0 + 0.0j
    exp2 = 0
    j = 1
    cos, sin = math.cos, math.sin
    for _ in range(s0):
        a = tau * j
        z *= complex(1.0 - cos(a), -sin(a))
        j = (j * 2) % r0
        m = abs(z.real) + abs(z.imag)
        if m > 1e200 or (m and m < 1e-200):
            sc = 512 if m > 1.0 else -512
            z *= 2.0 ** (-sc)
            exp2 += sc
    if abs(math.log2(abs(z)) + exp2) > 1.0:
        row = ROW_NONINTEGER
    else:
        v = complex(math.ldexp(z.real, exp2), math.ldexp(z.imag, exp2))
        near = min(abs(v - 1.0), abs(v + 1.0))
        if near < 1e-6:
            row = ROW_ONE if abs(v - 1.0) < abs(v + 1.0) else ROW_MINUS_ONE
        elif near > 1e-3:
            row = ROW_NONINTEGER
        else:
            row = _numeric_recheck(r0, s0)
    col = COL_PHI_EQ if phi == 2 * s0 else COL_PHI_GT
    return (r0, (row, col))


def _numeric_recheck(r0: int, s0: int) -> str:
    with mpmath.workdps(60):
        z = mpmath.mpc(1)
        j = 1
        for _ in range(s0):
            z *= 1 - mpmath.e ** (2j * mpmath.pi * j / r0)
            j = (j * 2) % r0
        if abs(z - 1) < mpmath.mpf(10) ** -30:
            return ROW_ONE
        if abs(z + 1) < mpmath.mpf(10) ** -30:
            return ROW_MINUS_ONE
        if min(abs(z - 1), abs(z + 1)) < mpmath.mpf(10) ** -6:
            raise AutorecError(f"numeric classification ambiguous at r0 = {r0}")
        return ROW_NONINTEGER


def tm_table(
    bound: int,
    jobs: Optional[int] = None,
    method: str = "exact",
    progress: bool = False,
) -> TmTable:
    """Scan odd conductors with >= 2 distinct prime factors up to bound.

    method "exact" decides every value in the cyclotomic field (the
    reference pipeline; comfortable into the low thousands); "numeric"
    uses guarded floating products and suits much larger bounds.  jobs
    spreads the scan over worker processes; the merge is deterministic
    because results are keyed by conductor.
    """
    if bound < 15:
        raise AutorecError("bound must be at least 15, the smallest valid conductor")
    if method not in ("exact", "numeric"):
        raise AutorecError(f"unknown method {method!r}")
    targets = [r0 for r0 in range(15, bound + 1, 2) if is_prime_power(r0) is None]
    worker = _scan_exact if method == "exact" else _scan_numeric
    if jobs is not None and jobs > 1 and len(targets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(targets) // (8 * jobs))
            results = list(pool.map(worker, targets, chunksize=chunk))
    else:
        results = []
        for i, r0 in enumerate(targets):
            results.append(worker(r0))
            if progress and i % 1000 == 999:
                print(f"scan: {i + 1}/{len(targets)} conductors done", file=sys.stderr, flush=True)
    cells = {r: {c: 0 for c in _COLS} for r in _ROWS}
    odd_s0 = forced_real = in_set = 0
    for _, outcome in sorted(results):
        if outcome == "odd_s0":
            odd_s0 += 1
        elif outcome == "forced_real":
            forced_real += 1
        else:
            row, col = outcome
            cells[row][col] += 1
            in_set += 1
    if cells[ROW_NONINTEGER][COL_PHI_EQ]:
        raise AutorecError("a non-integer landed in the phi = 2 s0 column")
    return TmTable(bound, method, cells, len(targets), in_set, odd_s0, forced_real)


def find_unit_coefficient(limit: int = 500) -> Optional[int]:
    """Smallest odd conductor with T(2^s0; w) exactly 1, if any <= limit."""
    for r0 in range(3, limit + 1, 2):
        field = cyclo_field(r0)
        red = field.reduce(_tm_cyclic(r0))
        if not any(red[1:]) and red[0] == 1:
            return r0
    return None


# ----------------------------------------------------------------------
# the odd-weight companion sum


class TildeReport:
    """Outcome of the two odd-weight-sum identities."""

    def __init__(self, r0, e, s, c_value, n_max):
        self.r0 = r0
        self.e = e
        self.s = s
        self.c_value = c_value
        self.n_max = n_max
        self.polynomial_identity_ok = False
        self.root_identity_ok = False
        self.first_failure = None

    @property
    def c_is_one(self) -> bool:
        return self.c_value.rational_value() == 1

    def to_json_dict(self) -> dict:
        q = self.c_value.rational_value()
        return {
            "r0": self.r0,
            "e": self.e,
            "s": self.s,
            "c": str(q) if q is not None else self.c_value.pretty(),
            "c_is_one": self.c_is_one,
            "two_term": self.c_is_one,
            "polynomial_identity_ok": self.polynomial_identity_ok,
            "root_identity_ok": self.root_identity_ok,
            "n_max": self.n_max,
            "first_failure": self.first_failure,
        }


def tilde_demo(root: RootSpec, n_max: int) -> TildeReport:
    """Check both identities for the sum over odd-weight m only.

    With S(n; x) = 1 + x + ... + x^(n-1) and the odd-weight partial sum
    U(n; x) = sum of x^m over m < n with odd binary weight:

        2 U(n; x) = S(n; x) - T(n; x)            (polynomial identity)
        U(2^s n; w) = C U(n; w) + (1 - C)(w^n - 1) / (2 (w - 1))

    where C = T(2^s; w).  When C = 1 the second relation collapses to a
    genuine two-term recurrence U(2^s n; w) = U(n; w).
    """
    if root.r0 == 1:
        raise AutorecError("the affine identity needs a nontrivial root of unity")
    if root.k != 2:
        raise AutorecError("the odd-weight sum is specific to base 2")
    r0, s = root.r0, root.s
    field = root.field
    base = tm_coefficient(r0, root.primitive_exponent)
    c_value = base ** (s // root.s0)
    report = TildeReport(r0, root.primitive_exponent, s, c_value, n_max)

    for n in range(1, n_max + 1):
        u = RatPoly([1 if tm_term(m) < 0 else 0 for m in range(n)])
        if u + u != RatPoly([1] * n) - tm_poly(n):
            report.first_failure = ("polynomial", n)
            return report
    report.polynomial_identity_ok = True

    # running residue-class sums give U(m; w) for every needed argument
    step = 2 ** s
    top = step * n_max
    need = set(range(1, n_max + 1)) | {step * n for n in range(1, n_max + 1)}
    values = {}
    vec = [0] * r0
    for m in range(top):
        if tm_term(m) < 0:
            vec[m % r0] += 1
        if (m + 1) in need:
            values[m + 1] = vec[:]
    ee = root.primitive_exponent
    uvals = {
        n: field.element(_spread(v, ee, r0)) for n, v in values.items()
    }
    w = root.omega
    half = Fraction(1, 2)
    inv = (w - field.one()).inverse()
    wn = field.one()
    for n in range(1, n_max + 1):
        wn = wn * w
        lhs = uvals[step * n]
        rhs = c_value * uvals[n] + (field.one() - c_value) * (wn - field.one()) * inv * half
        if lhs != rhs:
            report.first_failure = ("root", n)
            return report
    report.root_identity_ok = True
    return report


def _spread(vec: list[int], e: int, r0: int) -> list[int]:
    """Bucket vector for residues j becomes exponents j*e of zeta_r0."""
    out = [0] * r0
    for j, c in enumerate(vec):
        if c:
            out[(j * e) % r0] += c
    return out
