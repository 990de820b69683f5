"""Recurrences for partial sums of automatic sequences at roots of unity.

For a k-automatic sequence a(n) with partial sum polynomial
A(n; x) = sum of a(m) x^m over m < n, and a root of unity w = zeta_r^e
with gcd(k, r) = 1, the characteristic polynomial of the reduced
transition product M-hat(k^s; w) yields coefficients C_0, ..., C_l with

    sum over m of C_m(w) A(k^(m s) n; w) = 0        for all n >= 1,

where s is a multiple of the multiplicative order of k modulo the
conductor r0 of w.  Products over Galois cosets turn these into integer
recurrences whenever the reduced matrix has rational entries.

Verification is independent of the synthesis route: partial sums are
re-evaluated directly from the sequence, with equal-length digit blocks
grouped so that astronomically large arguments k^(ms) n stay exact and
cheap.  Everything is computed over Q; floating point never enters.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .errors import AutorecError, BudgetError
from .automaton import (
    FORWARD,
    Dfao,
    expansion,
    prune_inaccessible,
    reverse_dfao,
    sequence_term,
)
from .numberfield import (
    CycloElement,
    CycloField,
    GaloisMap,
    coset_reps,
    cyclo_field,
    factorize,
    gaussian_period,
    multiplicative_order,
    solve_exact,
)
from .polymatrix import (
    LEFT,
    RIGHT,
    PolyMatrix,
    reduced_matrix,
    span_analysis,
    transition_matrix,
)


# ----------------------------------------------------------------------
# root specifications


class RootSpec:
    """A root of unity w = zeta_r^e paired with a step exponent s.

    The conductor r0 = r / gcd(r, e) is the order of w; s must be a
    positive multiple of s0, the multiplicative order of k mod r0, so
    that k^s fixes w under m -> w^(k^s m).  gcd(k, r) = 1 is required.
    """

    def __init__(self, k: int, r: int, e: int = 1, s: Optional[int] = None):
        if r < 1:
            raise AutorecError("root order r must be positive")
        if math.gcd(k, r) != 1:
            raise AutorecError(f"gcd(k, r) = gcd({k}, {r}) != 1")
        self.k = k
        self.r = r
        self.e = e % r
        g = math.gcd(r, self.e)
        self.r0 = r // g if self.e else 1
        self.primitive_exponent = (self.e // g) % self.r0 if self.e else 0
        self.s0 = multiplicative_order(k, self.r0)
        self.s = self.s0 if s is None else s
        if self.s < 1 or self.s % self.s0:
            raise AutorecError(
                f"step s = {self.s} must be a positive multiple of s0 = {self.s0}"
            )

    @property
    def field(self) -> CycloField:
        return cyclo_field(self.r0)

    @property
    def omega(self) -> CycloElement:
        return self.field.omega_power(self.primitive_exponent)

    def __repr__(self):
        return f"RootSpec(k={self.k}, r={self.r}, e={self.e}, r0={self.r0}, s={self.s})"


# ----------------------------------------------------------------------
# recurrences


class Recurrence:
    """sum over m of coefficients[m] * A(k^(m s) n; w) = 0 for n >= 1."""

    def __init__(self, k: int, root: RootSpec, coefficients, provenance: str):
        self.k = k
        self.root = root
        self.coefficients = tuple(coefficients)
        if not self.coefficients or self.coefficients[-1].is_zero():
            raise AutorecError("leading recurrence coefficient must be nonzero")
        self.provenance = provenance
        self.verified_to: Optional[int] = None

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def integer_coefficients(self) -> Optional[list[int]]:
        out = []
        for c in self.coefficients:
            q = c.rational_value()
            if q is None or q.denominator != 1:
                return None
            out.append(int(q))
        return out

    def pretty(self) -> str:
        k, s = self.k, self.root.s
        parts = []
        for m in range(self.order, -1, -1):
            c = self.coefficients[m]
            if c.is_zero():
                continue
            arg = "n" if m == 0 else f"{k}^{m * s} n"
            q = c.rational_value()
            if q is not None:
                mag = abs(q)
                body = f"A({arg})" if mag == 1 else f"{mag}*A({arg})"
                neg = q < 0
            else:
                body = f"({c.pretty()})*A({arg})"
                neg = False
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts) + " = 0"

    def to_json_dict(self) -> dict:
        root = self.root
        return {
            "k": self.k,
            "r": root.r,
            "e": root.e,
            "r0": root.r0,
            "s": root.s,
            "order": self.order,
            "provenance": self.provenance,
            "coefficients": [
                {"coords": [str(Fraction(c)) for c in coeff.coords], "pretty": coeff.pretty()}
                for coeff in self.coefficients
            ],
            "verified_to": self.verified_to,
        }

    def __repr__(self):
        return f"Recurrence(order={self.order}, {self.pretty()})"


class VerificationReport:
    """Outcome of re-checking a recurrence against direct partial sums."""

    def __init__(self, n_max: int, all_zero: bool, first_failure: Optional[int]):
        self.n_max = n_max
        self.all_zero = all_zero
        self.first_failure = first_failure

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "all_zero": self.all_zero,
            "first_failure": self.first_failure,
        }

    def __repr__(self):
        return (
            f"VerificationReport(n_max={self.n_max}, all_zero={self.all_zero}, "
            f"first_failure={self.first_failure})"
        )


# ----------------------------------------------------------------------
# scalar matrices over a cyclotomic field


def char_poly(rows, field: CycloField) -> list[CycloElement]:
    """Characteristic polynomial coefficients of a scalar matrix.

    Returns (c_0, ..., c_d) with det(y I - M) = sum c_m y^m, constant
    term first and c_d = 1, by the Faddeev-LeVerrier recursion (exact;
    the only divisions are by the integers 2, ..., d).
    """
    n = len(rows)
    a = [[field.coerce(v) for v in row] for row in rows]
    if any(len(row) != n for row in a):
        raise AutorecError("matrix must be square")
    zero, one = field.zero(), field.one()
    cs = [one]  # coefficient of y^n
    m = a
    c = -_trace(m, field)
    cs.append(c)
    for j in range(2, n + 1):
        m = _mat_mul(_add_diag(m, c, field), a, field)
        # careful with order: same result either side for M_j = A (M_(j-1) + c I)
        c = -_trace(m, field) / j
        cs.append(c)
    cs.reverse()
    return cs


def minimal_poly(rows, field: CycloField) -> list[CycloElement]:
    """Monic minimal polynomial via the kernel of the power stack.

    Flattened powers I, M, M^2, ... are appended until they become
    linearly dependent; the first dependence gives the coefficients.
    """
    n = len(rows)
    a = [[field.coerce(v) for v in row] for row in rows]
    powers = [_identity(n, field)]
    while True:
        t = len(powers)
        flat_cols = [_flatten(p) for p in powers]
        target = _flatten(_mat_mul(powers[-1], a, field) if t > 1 else a)
        rows_ls = [[flat_cols[c][i] for c in range(t)] for i in range(n * n)]
        sol = solve_exact(rows_ls, target)
        if sol is not None:
            coeffs = [-field.coerce(v) for v in sol] + [field.one()]
            return coeffs
        powers.append(_mat_mul(powers[-1], a, field) if t > 1 else a)
        if len(powers) > n + 1:
            raise AutorecError("minimal polynomial search exceeded the dimension")


def _identity(n, field):
    one, zero = field.one(), field.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _trace(m, field):
    acc = field.zero()
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc


def _add_diag(m, c, field):
    out = [list(r) for r in m]
    for i in range(len(m)):
        out[i][i] = out[i][i] + c
    return out


def _mat_mul(a, b, field):
    n = len(a)
    zero = field.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for t in range(n):
                x = a[i][t]
                if not x.is_zero():
                    acc = acc + x * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def _flatten(m):
    return [v for row in m for v in row]


# ----------------------------------------------------------------------
# evaluating the ordered matrix product at a root of unity
#
# The whole product is first accumulated modulo x^r0 - 1 (exponents of x
# only matter mod r0 once x is a root of unity of order r0), then the
# resulting cyclic vectors are reduced modulo the cyclotomic polynomial.
# The cyclic stage is independent of which primitive root is meant, so
# it is cached and shared across all exponents e.


def _cyc_add_scaled(dst: list, src: list, shift: int, c) -> None:
    """dst[(shift + j) % r] += c * src[j], in place."""
    r = len(dst)
    shift %= r
    cut = r - shift
    if c == 1:
        dst[shift:] = [x + y for x, y in zip(dst[shift:], src[:cut])]
        if shift:
            dst[:shift] = [x + y for x, y in zip(dst[:shift], src[cut:])]
    else:
        dst[shift:] = [x + c * y for x, y in zip(dst[shift:], src[:cut])]
        if shift:
            dst[:shift] = [x + c * y for x, y in zip(dst[:shift], src[cut:])]


def _entry_scalars(p, rational_mode: bool):
    """Sparse (exponent, coefficient) view of a CycloPoly entry."""
    out = []
    for i, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        if rational_mode:
            q = c.rational_value()
            out.append((i, int(q) if q.denominator == 1 else q))
        else:
            out.append((i, c))
    return out


_PRODUCT_CACHE: dict = {}


def _product_mod_cyclic(mhat: PolyMatrix, k: int, s: int, r0: int, side: str):
    """Ordered product of digit-substituted copies of mhat, mod x^r0 - 1.

    Entries come back as dense length-r0 vectors of rationals (or of
    output-field elements when the outputs are irrational).
    """
    key = (mhat, k, s, r0, side)
    got = _PRODUCT_CACHE.get(key)
    if got is not None:
        return got
    d = mhat.dim
    rational_mode = mhat.field.conductor == 1
    zero = 0 if rational_mode else mhat.field.zero()

    sparse = [[_entry_scalars(mhat.entry(i, j), rational_mode) for j in range(d)] for i in range(d)]

    def factor(power):  # exponents of M(x^(k^i)) folded mod r0
        return [
            [[((e * power) % r0, c) for e, c in cell] for cell in row] for row in sparse
        ]

    acc = None
    power = 1
    for step in range(s):
        fac = factor(power)
        power = (power * k) % r0
        if acc is None:
            acc = [[_dense_from_sparse(cell, r0, zero) for cell in row] for row in fac]
            continue
        new = [[[zero] * r0 for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(d):
                dst = new[i][j]
                for t in range(d):
                    if side == LEFT:
                        pairs, vec = fac[i][t], acc[t][j]
                    else:
                        pairs, vec = fac[t][j], acc[i][t]
                    for e, c in pairs:
                        _cyc_add_scaled(dst, vec, e, c)
        acc = new
    if acc is None:  # s = 0 never happens for valid RootSpecs, but stay total
        acc = [
            [_dense_from_sparse([(0, 1)] if i == j else [], r0, zero) for j in range(d)]
            for i in range(d)
        ]
    _PRODUCT_CACHE[key] = acc
    return acc


def _dense_from_sparse(pairs, r0, zero):
    vec = [zero] * r0
    for e, c in pairs:
        vec[e % r0] = vec[e % r0] + c
    return vec


def _lift_vector(vec, out_conductor: int, r0: int, prim_e: int, L: int) -> list:
    """Length-L rational vector for sum_j vec[j] * w^j, w = zeta_r0^prim_e.

    Entries of vec are rationals (out_conductor 1) or output-field
    elements; both unfold into powers of zeta_L.
    """
    coords = [0] * L
    step = (L // r0) * prim_e
    if out_conductor == 1:
        for j, sc in enumerate(vec):
            if sc:
                coords[(j * step) % L] += sc
    else:
        lift = L // out_conductor
        for j, sc in enumerate(vec):
            if isinstance(sc, (int, Fraction)):
                if sc:
                    coords[(j * step) % L] += sc
                continue
            for i, ci in enumerate(sc.coords):
                if ci:
                    coords[(i * lift + j * step) % L] += ci
    return coords


def reduced_product_at_root(mhat: PolyMatrix, root: RootSpec, side: str):
    """M-hat(k^s; w) (Left) or its Right mirror, as a scalar matrix."""
    r0 = root.r0
    mo = mhat.field.conductor
    L = math.lcm(mo, r0)
    K = cyclo_field(L)
    vecs = _product_mod_cyclic(mhat, root.k, root.s, r0, side)
    return [
        [K.element(_lift_vector(vec, mo, r0, root.primitive_exponent, L)) for vec in row]
        for row in vecs
    ], K


# ----------------------------------------------------------------------
# synthesis


def _prepare(a: Dfao):
    ap = prune_inaccessible(a)
    span = span_analysis(ap)
    mhat = reduced_matrix(transition_matrix(ap), span)
    side = LEFT if ap.direction == FORWARD else RIGHT
    return ap, span, mhat, side


def synthesize(a: Dfao, root: RootSpec, use_minimal: bool = False) -> Recurrence:
    """Recurrence for A(n; w) out of the reduced transition product.

    The coefficients are those of the characteristic polynomial of
    M-hat(k^s; w); with use_minimal the minimal polynomial is taken
    instead, which can shorten the recurrence.
    """
    if root.k != a.base:
        raise AutorecError(f"root was built for k = {root.k}, automaton has base {a.base}")
    _, _, mhat, side = _prepare(a)
    scal, field = reduced_product_at_root(mhat, root, side)
    coeffs = minimal_poly(scal, field) if use_minimal else char_poly(scal, field)
    return Recurrence(a.base, root, coeffs, "min_poly" if use_minimal else "char_poly")


# ----------------------------------------------------------------------
# direct partial sums


def partial_sum_value(a: Dfao, n: int, root: RootSpec) -> CycloElement:
    """A(n; w) = sum of a(m) w^m over m < n, by direct summation.

    The running power of w is updated incrementally.  Fine for moderate
    n; the verifier uses block sums instead so that huge n stay cheap.
    """
    w = root.omega
    field = w.field
    acc = field.zero()
    p = field.one()
    for m in range(n):
        acc = acc + sequence_term(a, m) * p
        p = p * w
    return acc


class BlockSums:
    """Exact residue-class partial sums of an automatic sequence.

    bucket_vector(N)[j] = sum of a(m) over m < N with m = j mod r0,
    valid for arbitrarily large N: words of equal length are grouped,
    and one table per word length propagates (state, value residue)
    weights, so the cost per call is O(len(digits of N)^2) small vector
    operations rather than O(N).
    """

    def __init__(self, a: Dfao, r0: int):
        self.a = a
        self.r0 = r0
        mo = a.output_field.conductor
        self._rational = mo == 1
        if self._rational:
            z = 0
            self._outs = [
                int(q) if q.denominator == 1 else q
                for q in (v.rational_value() for v in a.outputs)
            ]
        else:
            z = a.output_field.zero()
            self._outs = list(a.outputs)
        self._zero = z
        self._kpow = [1 % r0]
        self._tables = []  # per free-suffix length
        self._buckets: dict[int, list] = {}

    def _kp(self, i: int) -> int:
        while len(self._kpow) <= i:
            self._kpow.append((self._kpow[-1] * self.a.base) % self.r0)
        return self._kpow[i]

    def _ensure(self, length: int) -> None:
        a, r0 = self.a, self.r0
        k, d = a.base, a.size
        tabs = self._tables
        if not tabs:
            if a.direction == FORWARD:
                base = [[self._zero] * r0 for _ in range(d)]
                for q in range(d):
                    base[q][0] = self._outs[q]
            else:
                base = [[0] * r0 for _ in range(d)]
                base[0][0] = 1
            tabs.append(base)
        while len(tabs) <= length:
            lv = len(tabs) - 1
            shift_unit = self._kp(lv)
            prev = tabs[-1]
            if a.direction == FORWARD:
                cur = [[self._zero] * r0 for _ in range(d)]
                for q in range(d):
                    dst = cur[q]
                    for dig in range(k):
                        _cyc_add_scaled(dst, prev[a.delta[q][dig]], (dig * shift_unit) % r0, 1)
            else:
                cur = [[0] * r0 for _ in range(d)]
                for q in range(d):
                    src = prev[q]
                    for dig in range(k):
                        _cyc_add_scaled(cur[a.delta[q][dig]], src, (dig * shift_unit) % r0, 1)
            tabs.append(cur)

    def bucket_vector(self, n: int) -> list:
        """Residue-class sums over m < n; cached per n."""
        got = self._buckets.get(n)
        if got is not None:
            return got
        a, r0 = self.a, self.r0
        k = a.base
        vec = [self._zero] * r0
        if n >= 1:
            # m = 0 reads the empty word
            vec[0] = vec[0] + self._outs[0]
        digits = expansion(n, k)
        t = len(digits)
        if t:
            self._ensure(t - 1)
        fwd = a.direction == FORWARD
        if fwd:
            self._fill_forward(vec, digits)
        else:
            self._fill_backward(vec, digits)
        self._buckets[n] = vec
        return vec

    def _fill_forward(self, vec, digits):
        a, r0 = self.a, self.r0
        k = a.base
        t = len(digits)
        tabs = self._tables
        # full blocks: words of length ell < t, leading digit nonzero
        for ell in range(1, t):
            unit = self._kp(ell - 1)
            for dig in range(1, k):
                _cyc_add_scaled(vec, tabs[ell - 1][a.delta[0][dig]], (dig * unit) % r0, 1)
        # the top block: proper prefixes of the digit string of n
        state = 0
        val = 0
        for i, ni in enumerate(digits):
            free = t - i - 1
            unit = self._kp(free)
            lo = 1 if i == 0 else 0
            for dig in range(lo, ni):
                shift = ((val * k + dig) * unit) % r0
                _cyc_add_scaled(vec, tabs[free][a.delta[state][dig]], shift, 1)
            state = a.delta[state][ni]
            val = (val * k + ni) % r0

    def _fill_backward(self, vec, digits):
        a, r0 = self.a, self.r0
        k, d = a.base, a.size
        t = len(digits)
        tabs = self._tables
        outs = self._outs
        for ell in range(1, t):
            unit = self._kp(ell - 1)
            tab = tabs[ell - 1]
            for q in range(d):
                src = tab[q]
                if not any(src):
                    continue
                for dig in range(1, k):
                    _cyc_add_scaled(vec, src, (dig * unit) % r0, outs[a.delta[q][dig]])
        # suffix maps: maps[i](q) = state after reading digits[:i] reversed from q
        cur = list(range(d))
        maps = [cur]
        for ni in digits[:-1]:
            cur = [cur[a.delta[q][ni]] for q in range(d)]
            maps.append(cur)
        # note maps[i] corresponds to the prefix digits[:i] read in reverse:
        # maps[i][q] = delta(q, reverse(digits[:i]))
        val = 0
        for i, ni in enumerate(digits):
            free = t - i - 1
            unit = self._kp(free)
            tab = tabs[free]
            mp = maps[i]
            lo = 1 if i == 0 else 0
            for dig in range(lo, ni):
                shift = ((val * k + dig) * unit) % r0
                for q in range(d):
                    src = tab[q]
                    if not any(src):
                        continue
                    _cyc_add_scaled(vec, src, shift, outs[mp[a.delta[q][dig]]])
            val = (val * k + ni) % r0


_BLOCK_CACHE: dict = {}


def block_sums(a: Dfao, r0: int) -> BlockSums:
    """Shared BlockSums instance per automaton and conductor."""
    key = (a.to_text(), r0)
    got = _BLOCK_CACHE.get(key)
    if got is None:
        got = BlockSums(a, r0)
        _BLOCK_CACHE[key] = got
    return got


def partial_sum_fast(a: Dfao, n: int, root: RootSpec) -> CycloElement:
    """A(n; w) through the block evaluator; exact for huge n."""
    vec = block_sums(a, root.r0).bucket_vector(n)
    mo = a.output_field.conductor
    L = math.lcm(mo, root.r0)
    K = cyclo_field(L)
    return K.element(_lift_vector(vec, mo, root.r0, root.primitive_exponent, L))


# ----------------------------------------------------------------------
# verification


def verify(
    rec: Recurrence,
    a: Dfao,
    n_max: int,
    budget: Optional[int] = None,
) -> VerificationReport:
    """Re-check the recurrence against directly computed partial sums.

    For every n up to n_max the residual sum of C_m(w) A(k^(ms) n; w) is
    evaluated exactly and compared with zero.  The budget, when given,
    caps the number of elementary block operations and aborts with a
    BudgetError instead of running without bound.
    """
    if rec.k != a.base:
        raise AutorecError("recurrence and automaton disagree on the base k")
    root = rec.root
    r0 = root.r0
    mo = a.output_field.conductor
    L = math.lcm(mo, r0)
    K = cyclo_field(L)
    cs = [K.coerce(c).coords for c in rec.coefficients]
    blocks = block_sums(a, r0)
    step = root.k ** root.s
    work = 0
    first_failure = None
    for n in range(1, n_max + 1):
        acc = [0] * L
        arg = n
        for coords in cs:
            vec = blocks.bucket_vector(arg)
            lifted = _lift_vector(vec, mo, r0, root.primitive_exponent, L)
            for i, ci in enumerate(coords):
                if ci:
                    _cyc_add_scaled(acc, lifted, i, ci)
            work += L + arg.bit_length()
            arg *= step
        if budget is not None and work > budget:
            raise BudgetError(
                f"verification budget exhausted at n = {n} ({work} > {budget} units)"
            )
        if any(K.reduce(acc)):
            first_failure = n
            break
    return VerificationReport(n_max, first_failure is None, first_failure)


# ----------------------------------------------------------------------
# integer recurrences via coset products


def integer_recurrence(a: Dfao, root: RootSpec) -> Recurrence:
    """Multiply the recurrence over Galois coset representatives.

    Requires every entry of the reduced matrix to have rational
    coefficients; then each coefficient of the product over psi_u of the
    characteristic polynomial is rational, and after clearing one common
    denominator, integral.
    """
    _, _, mhat, side = _prepare(a)
    for row in mhat.rows:
        for p in row:
            for c in p.coeffs:
                if c.rational_value() is None:
                    raise AutorecError(
                        "integer recurrences need a reduced matrix with rational entries"
                    )
    base_rec = synthesize(a, root)
    field = root.field
    reps = coset_reps(root.k, root.r0)
    prod = [field.one()]
    for u in reps:
        psi = GaloisMap(field, u)
        factor = [psi(field.coerce(c)) for c in base_rec.coefficients]
        new = [field.zero()] * (len(prod) + len(factor) - 1)
        for i, p in enumerate(prod):
            if p.is_zero():
                continue
            for j, f in enumerate(factor):
                if not f.is_zero():
                    new[i + j] = new[i + j] + p * f
        prod = new
    rat = []
    for c in prod:
        q = c.rational_value()
        if q is None:
            raise AutorecError(
                "coset product produced an irrational coefficient; "
                "this contradicts the Galois argument and indicates a bug"
            )
        rat.append(q)
    den = math.lcm(*(q.denominator for q in rat))
    one_field = cyclo_field(1)
    coeffs = [one_field.from_rational(q * den) for q in rat]
    rec = Recurrence(a.base, root, coeffs, "integer_product")
    return rec


class GaloisReport:
    """Invariance of the recurrence coefficients under psi_k."""

    def __init__(self, all_invariant, primitive_root_case, entries):
        self.all_invariant = all_invariant
        self.primitive_root_case = primitive_root_case
        self.entries = entries  # per coefficient: dict

    def to_json_dict(self) -> dict:
        return {
            "all_invariant": self.all_invariant,
            "primitive_root_case": self.primitive_root_case,
            "coefficients": self.entries,
        }


def galois_invariance_report(rec: Recurrence) -> GaloisReport:
    """Check psi_k(C_m) = C_m and expand in Gaussian periods when possible.

    For squarefree conductors the Gaussian periods eta_u over the coset
    representatives u form a basis of the fixed field of psi_k, so every
    invariant coefficient gets rational period coordinates.  For a
    prime-power conductor with k a primitive root the fixed field is Q
    itself and all coefficients must be rational.
    """
    root = rec.root
    field = root.field
    r0 = root.r0
    psi = GaloisMap(field, rec.k % r0) if r0 > 1 else None
    reps = coset_reps(rec.k, r0)
    squarefree = all(e == 1 for _, e in factorize(r0))
    periods = [gaussian_period(field, rec.k, u) for u in reps] if squarefree and r0 > 1 else None
    entries = []
    all_inv = True
    for c in rec.coefficients:
        c = field.coerce(c)
        inv = True if psi is None else psi(c) == c
        all_inv = all_inv and inv
        entry = {
            "invariant": inv,
            "rational": str(c.rational_value()) if c.rational_value() is not None else None,
        }
        if periods is not None and inv:
            rows = [[Fraction(p.coords[i]) for p in periods] for i in range(field.phi)]
            sol = solve_exact(rows, [Fraction(x) for x in c.coords])
            entry["period_coords"] = None if sol is None else [str(Fraction(v)) for v in sol]
        entries.append(entry)
    return GaloisReport(all_inv, len(reps) == 1, entries)


# ----------------------------------------------------------------------
# dimensions


def lmin_bound(a: Dfao) -> int:
    """Upper bound for the minimal recurrence length: the span rank."""
    return span_analysis(prune_inaccessible(a)).rank


class DimReport:
    def __init__(self, forward_dim, backward_dim, forward_states, backward_states):
        self.forward_dim = forward_dim
        self.backward_dim = backward_dim
        self.forward_states = forward_states
        self.backward_states = backward_states

    def to_json_dict(self) -> dict:
        return {
            "forward_dim": self.forward_dim,
            "backward_dim": self.backward_dim,
            "forward_states": self.forward_states,
            "backward_states": self.backward_states,
        }

    def __repr__(self):
        return (
            f"DimReport(forward_dim={self.forward_dim}, backward_dim={self.backward_dim})"
        )


def dim_experiment(a: Dfao, cap: int = 100000) -> DimReport:
    """Span ranks of the machine and of its direction reversal."""
    rev = reverse_dfao(a, cap)
    fwd_machine = a if a.direction == FORWARD else rev
    bwd_machine = rev if a.direction == FORWARD else a
    fp = prune_inaccessible(fwd_machine)
    bp = prune_inaccessible(bwd_machine)
    return DimReport(
        span_analysis(fp).rank,
        span_analysis(bp).rank,
        fp.size,
        bp.size,
    )
