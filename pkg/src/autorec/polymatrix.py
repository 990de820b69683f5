"""Polynomial transition matrices and the span analysis of state functions.

For an automaton with states q_0, ..., q_(d-1) the transition matrix is

    m_ij(x) = sum of x^a over the digits a with delta(q_i, a) = q_j.

Ordered products of digit-substituted copies encode reading words most
significant digit first (Left) or least significant digit first (Right).
The span analysis finds, by exact linear algebra over the output field,
which state functions f_i(w) = output(delta(q_i, w)) are redundant; the
resulting relations compress the matrix to the reduced system that the
recurrence synthesis works on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import AutorecError
from .automaton import Dfao
from .numberfield import (
    CycloElement,
    CycloField,
    common_field,
    solve_exact,
)

LEFT = "left"
RIGHT = "right"


# ----------------------------------------------------------------------
# polynomials with cyclotomic coefficients


class CycloPoly:
    """Dense univariate polynomial over a cyclotomic field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: Iterable = ()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, field: CycloField, e: int, c=1) -> "CycloPoly":
        return cls(field, [0] * e + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> CycloElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def _pair(self, other):
        if isinstance(other, (int, Fraction, CycloElement)):
            other = CycloPoly(self.field, [other])
        if not isinstance(other, CycloPoly):
            return None
        if other.field.conductor == self.field.conductor:
            return self, other
        big = common_field(self.field, other.field)
        return (
            CycloPoly(big, self.coeffs),
            CycloPoly(big, other.coeffs),
        )

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.field.conductor, self.coeffs))

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        ca, cb = list(a.coeffs), list(b.coeffs)
        if len(ca) < len(cb):
            ca, cb = cb, ca
        for i, c in enumerate(cb):
            ca[i] = ca[i] + c
        return CycloPoly(a.field, ca)

    __radd__ = __add__

    def __neg__(self):
        return CycloPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloElement)):
            return CycloPoly(self.field, [c * other for c in self.coeffs])
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.is_zero() or b.is_zero():
            return CycloPoly(a.field)
        out = [a.field.zero()] * (a.degree + b.degree + 1)
        for i, ca in enumerate(a.coeffs):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b.coeffs):
                if not cb.is_zero():
                    out[i + j] = out[i + j] + ca * cb
        return CycloPoly(a.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if isinstance(other, (int, Fraction, CycloElement)):
            other = CycloPoly(self.field, [other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a, b = self._pair(other)
        rem = list(a.coeffs)
        db = b.degree
        lead_inv = b.coeffs[-1].inverse()
        q = [a.field.zero()] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c.is_zero():
                f = c * lead_inv
                q[i - db] = f
                for j, cb in enumerate(b.coeffs):
                    rem[i - db + j] = rem[i - db + j] - f * cb
        return CycloPoly(a.field, q), CycloPoly(a.field, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def substitute_power(self, e: int) -> "CycloPoly":
        """p(x^e)."""
        if e < 1:
            raise ValueError("exponent must be >= 1")
        if self.is_zero():
            return self
        out = [self.field.zero()] * (e * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                out[e * i] = c
        return CycloPoly(self.field, out)

    def truncate(self, n: int) -> "CycloPoly":
        return CycloPoly(self.field, self.coeffs[:n])

    def __call__(self, x):
        acc = x - x if isinstance(x, CycloElement) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pretty(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            q = c.rational_value()
            pw = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if q is not None:
                mag = abs(q)
                coef = "" if (mag == 1 and pw) else str(mag)
                body = coef + ("*" if coef and pw else "") + pw
                negative = q < 0
            else:
                body = f"({c.pretty()})" + (f"*{pw}" if pw else "")
                negative = False
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"CycloPoly({self.pretty()})"


# ----------------------------------------------------------------------
# matrices of polynomials


class PolyMatrix:
    """Square matrix of CycloPoly entries over one field."""

    __slots__ = ("field", "rows")

    def __init__(self, field: CycloField, rows):
        rows = tuple(
            tuple(r if isinstance(r, CycloPoly) else CycloPoly(field, [r]) for r in row)
            for row in rows
        )
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise AutorecError("matrix must be square")
        self.field = field
        self.rows = rows

    @classmethod
    def identity(cls, field: CycloField, n: int) -> "PolyMatrix":
        one = CycloPoly(field, [1])
        zero = CycloPoly(field)
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> CycloPoly:
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.dim == other.dim and all(
            self.rows[i][j] == other.rows[i][j]
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def __hash__(self):
        return hash((self.field.conductor, self.rows))

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise AutorecError("dimension mismatch")
        n = self.dim
        zero = CycloPoly(self.field)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for t in range(n):
                    a = self.rows[i][t]
                    b = other.rows[t][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.field, out)

    def substitute_power(self, e: int) -> "PolyMatrix":
        return PolyMatrix(
            self.field, [[p.substitute_power(e) for p in row] for row in self.rows]
        )

    def truncate_entries(self, n: int) -> "PolyMatrix":
        return PolyMatrix(self.field, [[p.truncate(n) for p in row] for row in self.rows])

    def eval_at(self, x: CycloElement) -> list[list[CycloElement]]:
        return [[p(x) for p in row] for row in self.rows]

    def trace(self) -> CycloPoly:
        acc = CycloPoly(self.field)
        for i in range(self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def char_poly(self) -> list[CycloPoly]:
        """Coefficients (c_0, ..., c_d) of det(y I - M), constant first.

        Faddeev-LeVerrier over the polynomial ring; division only by
        integers, so everything stays exact.
        """
        n = self.dim
        coeffs = [CycloPoly(self.field, [1])]  # leading coefficient of y^n
        m = PolyMatrix.identity(self.field, n)
        cur = self
        for j in range(1, n + 1):
            mj = cur * m if j > 1 else cur
            c = mj.trace() * Fraction(-1, j)
            coeffs.append(c)
            if j < n:
                m = _add_scalar(mj, c)
        coeffs.reverse()
        return coeffs

    def det_cofactor(self) -> CycloPoly:
        """Determinant by cofactor expansion; an independent small-d route."""
        return _det_cofactor(self.rows, self.field)

    def pretty(self, var: str = "x") -> str:
        cells = [[p.pretty(var) for p in row] for row in self.rows]
        width = max((len(c) for row in cells for c in row), default=0)
        return "\n".join(
            "[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells
        )

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "conductor": self.field.conductor,
            "entries": [[p.pretty() for p in row] for row in self.rows],
        }

    def __repr__(self):
        return f"PolyMatrix(dim={self.dim})\n{self.pretty()}"


def _add_scalar(m: PolyMatrix, c: CycloPoly) -> PolyMatrix:
    rows = [list(r) for r in m.rows]
    for i in range(m.dim):
        rows[i][i] = rows[i][i] + c
    return PolyMatrix(m.field, rows)


def _det_cofactor(rows, field) -> CycloPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = CycloPoly(field)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [
            [rows[i][t] for t in range(n) if t != j] for i in range(1, n)
        ]
        term = rows[0][j] * _det_cofactor(minor, field)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


# ----------------------------------------------------------------------
# transition matrices


def transition_matrix(a: Dfao) -> PolyMatrix:
    """M(x) with m_ij(x) = sum of x^digit over transitions q_i -> q_j."""
    field = a.output_field
    d = a.size
    rows = []
    for i in range(d):
        coeffs = [[0] * a.base for _ in range(d)]
        for dig in range(a.base):
            coeffs[a.delta[i][dig]][dig] = 1
        rows.append([CycloPoly(field, cs) for cs in coeffs])
    return PolyMatrix(field, rows)


def power_product(m: PolyMatrix, k: int, t: int, side: str) -> PolyMatrix:
    """The ordered product encoding words of length t.

    Left ordering  M(k^t; x)   = M(x^(k^(t-1))) ... M(x^k) M(x)
    Right ordering M^R(k^t; x) = M(x) M(x^k) ... M(x^(k^(t-1)))
    t = 0 gives the identity.
    """
    if side not in (LEFT, RIGHT):
        raise AutorecError(f"side must be {LEFT!r} or {RIGHT!r}")
    if t < 0:
        raise AutorecError("t must be nonnegative")
    acc = PolyMatrix.identity(m.field, m.dim)
    for i in range(t):
        factor = m.substitute_power(k**i) if i else m
        acc = factor * acc if side == LEFT else acc * factor
    return acc


def truncate(m: PolyMatrix, n: int) -> PolyMatrix:
    """M(n; x): drop all terms of degree >= n from M(k^t; x).

    The caller passes the full product for the block length t that
    matches n, i.e. k^(t-1) + 1 <= n <= k^t; n = 1 goes with t = 0.
    """
    if n < 1:
        raise AutorecError("truncation length must be positive")
    return m.truncate_entries(n)


# ----------------------------------------------------------------------
# span analysis


class SpanAnalysis:
    """Exact linear structure of the state functions f_i.

    witness_words   one word per distinct state tuple found by the
                    breadth-first closure of (q_0, ..., q_(d-1))
    tuple_table     f_i evaluated at the witness words, one row per word
    rank            dimension of span{f_0, ..., f_(d-1)}
    generators      greedy-leftmost spanning prefix; always contains 0
    alphas          for each non-generator p the coefficients of
                    f_p = sum_j alphas[p][j] f_(generators[j])
    """

    def __init__(self, field, witness_words, tuples, tuple_table, rank, generators, alphas):
        self.field = field
        self.witness_words = witness_words
        self.tuples = tuples
        self.tuple_table = tuple_table
        self.rank = rank
        self.generators = generators
        self.alphas = alphas

    def check_relation(self, rel: dict[int, CycloElement]) -> bool:
        """Does sum_i rel[i] * f_i vanish on every witness word?"""
        for row in self.tuple_table:
            acc = self.field.zero()
            for i, c in rel.items():
                acc = acc + row[i] * c
            if not acc.is_zero():
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "witness_words": ["".join(map(str, w)) for w in self.witness_words],
            "rank": self.rank,
            "generators": list(self.generators),
            "relations": {
                str(p): [c.pretty() for c in coeffs] for p, coeffs in self.alphas.items()
            },
        }

    def __repr__(self):
        return (
            f"SpanAnalysis(rank={self.rank}, generators={self.generators}, "
            f"{len(self.witness_words)} witness words)"
        )


def span_analysis(a: Dfao) -> SpanAnalysis:
    """Breadth-first tuple closure plus exact column reduction.

    Starting from the identity tuple (q_0, ..., q_(d-1)), every digit is
    applied coordinatewise until no new tuple appears.  Evaluating the
    outputs along the witness word of each tuple gives a table whose
    column space is in exact bijection with span{f_i}; the greedy
    leftmost spanning set always keeps state 0 so the partial sums of the
    induced sequence stay expressible.
    """
    d = a.size
    start = tuple(range(d))
    index = {start: 0}
    tuples = [start]
    words = [()]
    pos = 0
    while pos < len(tuples):
        tp = tuples[pos]
        for dig in range(a.base):
            nt = tuple(a.delta[q][dig] for q in tp)
            if nt not in index:
                index[nt] = len(tuples)
                tuples.append(nt)
                words.append(words[pos] + (dig,))
        pos += 1

    field = a.output_field
    table = [[a.outputs[q] for q in tp] for tp in tuples]
    cols = [[row[j] for row in table] for j in range(d)]

    pivots: list[int] = []
    exprs: dict[int, list] = {}
    for j in range(d):
        if pivots:
            sol = solve_exact([[cols[p][r] for p in pivots] for r in range(len(tuples))], cols[j])
        else:
            sol = [] if all(v.is_zero() for v in cols[j]) else None
        if sol is None:
            pivots.append(j)
        else:
            exprs[j] = sol

    generators = pivots if 0 in pivots else [0] + pivots
    gpos = {g: t for t, g in enumerate(generators)}
    alphas = {}
    for p in range(d):
        if p in gpos:
            continue
        coeffs = [field.zero()] * len(generators)
        # an expression only involves pivots found before its column;
        # later generators implicitly get coefficient zero
        for t, c in enumerate(exprs[p]):
            coeffs[gpos[pivots[t]]] = field.coerce(c)
        alphas[p] = tuple(coeffs)
    return SpanAnalysis(field, tuple(words), tuple(tuples), table, len(pivots), generators, alphas)


def reduced_matrix(m: PolyMatrix, span: SpanAnalysis) -> PolyMatrix:
    """Compress M(x) onto the generator states.

    Row i, column j of the result is m_ij + sum over dependent states p
    of alpha_pj m_ip, with i, j running over the generators.
    """
    gens = span.generators
    rows = []
    for gi in gens:
        row = []
        for b, gj in enumerate(gens):
            acc = m.entry(gi, gj)
            for p, coeffs in span.alphas.items():
                c = coeffs[b]
                if not c.is_zero():
                    acc = acc + m.entry(gi, p) * c
            row.append(acc)
        rows.append(row)
    return PolyMatrix(m.field, rows)
