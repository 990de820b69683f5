"""Shared fixtures and exact-arithmetic test helpers."""

import random
from fractions import Fraction
from itertools import product as iproduct

import pytest

from autorec.automaton import load_builtin, pattern_dfao, PatternSpec, word_value
from autorec.numberfield import CycloField
from autorec.polymatrix import CycloPoly, LEFT


@pytest.fixture(scope="session")
def tm():
    return load_builtin("thue_morse")


@pytest.fixture(scope="session")
def rs():
    return load_builtin("rudin_shapiro")


@pytest.fixture(scope="session")
def bs():
    return load_builtin("baum_sweet")


@pytest.fixture(scope="session")
def pat11():
    """Counts overlapping '11' blocks in binary expansions, modulo signs."""
    return pattern_dfao(PatternSpec(2, (1, 1), 2))


@pytest.fixture(scope="session")
def shipped(tm, rs, bs, pat11):
    return [("thue_morse", tm), ("rudin_shapiro", rs), ("baum_sweet", bs), ("pattern_11_mod_2", pat11)]


def random_element(field: CycloField, rng: random.Random, height: int = 9):
    """Uniform small-height element: random Fraction coordinates."""
    coords = [
        Fraction(rng.randint(-height, height), rng.randint(1, 4))
        for _ in range(field.phi)
    ]
    return field.element(coords)


def random_word(rng: random.Random, k: int, max_len: int = 8) -> tuple:
    return tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len)))


def poly_divides(small, big, field) -> bool:
    """Exact synthetic division test, coefficients constant-first."""
    small = list(small)
    rem = list(big)
    while small and small[-1].is_zero():
        small.pop()
    if not small:
        return False
    lead = small[-1].inverse()
    while len(rem) >= len(small):
        c = rem[-1] * lead
        off = len(rem) - len(small)
        for i, s in enumerate(small):
            rem[off + i] = rem[off + i] - c * s
        rem.pop()
    return all(c.is_zero() for c in rem)


def occurrences(v: tuple, word: tuple) -> int:
    """Overlapping occurrences of the block v inside word, by direct scan."""
    hits = 0
    for i in range(len(word) - len(v) + 1):
        if word[i : i + len(v)] == v:
            hits += 1
    return hits


def t_for(n: int, k: int) -> int:
    """Smallest word length t with k^t >= n."""
    t = 0
    while k**t < n:
        t += 1
    return t


def partial_sum_poly(a, span, n: int, t: int, side: str) -> list:
    """Components of the length-t word-enumeration sum vector.

    Entry for generator i is sum over words w of length t whose value is
    below n of f_i(w) x^(value), where the value reads w most significant
    digit first on the left side and least significant first on the right.
    All k^t words are scanned, leading zeros included.
    """
    k = a.base
    field = a.output_field
    out = []
    for i in span.generators:
        coeffs = [field.zero()] * max(1, n)
        for w in iproduct(range(k), repeat=t):
            val = word_value(w if side == LEFT else w[::-1], k)
            if val <= n - 1:
                coeffs[val] = coeffs[val] + a.state_output(a.run(i, w))
        out.append(CycloPoly(field, coeffs))
    return out
