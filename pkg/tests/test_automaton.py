"""DFAO parsing, semantics, reversal, and the pattern-counting builder."""

import random

import pytest

from autorec.automaton import (
    FORWARD,
    Dfao,
    PatternSpec,
    add_initial_state,
    builtin_names,
    check_symmetry,
    expansion,
    load_builtin,
    parse_dfao,
    pattern_dfao,
    prune_inaccessible,
    reverse_dfao,
    sequence_term,
    sequence_terms,
    word_value,
)
from autorec.errors import AutorecError, ParseError
from autorec.numberfield import cyclo_field
from conftest import occurrences


# ----------------------------------------------------------------------
# direct definitions of the three shipped sequences, used as oracles


def tm_direct(n: int) -> int:
    return -1 if bin(n).count("1") % 2 else 1


def rs_direct(n: int) -> int:
    return -1 if occurrences((1, 1), tuple(expansion(n, 2))) % 2 else 1


def bs_direct(n: int) -> int:
    if n == 0:
        return 1
    runs = [len(r) for r in bin(n)[2:].split("1") if r]
    return 0 if any(r % 2 for r in runs) else 1


# ----------------------------------------------------------------------
# digits


def test_expansion_and_word_value_round_trip():
    rng = random.Random(3)
    for _ in range(300):
        k = rng.randint(2, 7)
        n = rng.randrange(10**6)
        w = expansion(n, k)
        assert word_value(w, k) == n
        if n:
            assert w[0] != 0
    assert expansion(0, 2) == ()
    assert expansion(11, 2) == (1, 0, 1, 1)


# ----------------------------------------------------------------------
# parsing and serialization


def test_parse_round_trip_builtins():
    for name in builtin_names():
        a = load_builtin(name)
        again = parse_dfao(a.to_text())
        assert again == a
        assert again.to_text() == a.to_text()


def test_builtin_names_are_the_shipped_three():
    assert builtin_names() == ["baum_sweet", "rudin_shapiro", "thue_morse"]
    with pytest.raises(AutorecError):
        load_builtin("no_such_machine")


def test_parse_accepts_comments_and_blank_lines():
    a = parse_dfao(
        """
        # a one-state machine emitting 1 forever
        base: 2
        direction: forward
        states: q
        output: q = 1
        delta: q 0 -> q
        delta: q 1 -> q
        """
    )
    assert a.size == 1
    assert [v.rational_value() for v in sequence_terms(a, 5)] == [1] * 5


def test_parse_value_forms():
    a = parse_dfao(
        "base: 2\ndirection: forward\nstates: p q r\n"
        "output: p = -2/3\noutput: q = zeta(3)^2\noutput: r = zeta(4)^2\n"
        + "".join(f"delta: {s} {d} -> p\n" for s in "pqr" for d in "01")
    )
    f3 = cyclo_field(3)
    assert a.outputs[1] == f3.omega_power(2)
    # zeta(4)^2 = -1 collapses to the rationals
    assert a.outputs[2].rational_value() == -1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("base: 1\ndirection: forward\nstates: q\noutput: q = 1\n", "base"),
        ("base: 2\ndirection: up\nstates: q\noutput: q = 1\n", "direction"),
        ("base: 2\ndirection: forward\nstates: q q\noutput: q = 1\n", "duplicate"),
        (
            "base: 2\ndirection: forward\nstates: q\noutput: q = 1\n"
            "delta: q 2 -> q\ndelta: q 0 -> q\n",
            "digit",
        ),
        (
            "base: 2\ndirection: forward\nstates: q\noutput: q = 1\ndelta: q 0 -> q\n",
            "missing",
        ),
        (
            "base: 2\ndirection: forward\nstates: q\ndelta: q 0 -> q\ndelta: q 1 -> q\n",
            "output",
        ),
    ],
)
def test_parse_rejects_malformed_input(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_dfao(text)
    assert fragment in str(info.value).lower()


def test_parse_error_reports_line_numbers():
    bad = "base: 2\ndirection: forward\nstates: q\noutput: q = ?\n"
    with pytest.raises(ParseError) as info:
        parse_dfao(bad)
    assert info.value.line == 4


def test_json_export_mirrors_text_fields(tm):
    d = tm.to_json_dict()
    assert d["base"] == 2
    assert d["direction"] == FORWARD
    assert d["states"] == list(tm.states)
    assert len(d["delta"]) == 2 * tm.size


# ----------------------------------------------------------------------
# sequence semantics


def test_shipped_sequences_match_direct_definitions(tm, rs, bs):
    for n in range(2**10):
        assert sequence_term(tm, n).rational_value() == tm_direct(n), n
        assert sequence_term(rs, n).rational_value() == rs_direct(n), n
        assert sequence_term(bs, n).rational_value() == bs_direct(n), n


def test_first_terms_frozen(tm, rs, bs):
    want_tm = [1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1, -1, 1, -1, -1, 1]
    want_rs = [1, 1, 1, -1, 1, 1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1]
    want_bs = [1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1]
    assert [v.rational_value() for v in sequence_terms(tm, 16)] == want_tm
    assert [v.rational_value() for v in sequence_terms(rs, 16)] == want_rs
    assert [v.rational_value() for v in sequence_terms(bs, 16)] == want_bs


def test_leading_zero_insensitivity(tm, rs):
    # both machines fix the start state on digit 0, so padding the
    # expansion with leading zeros cannot change the result
    for a in (tm, rs):
        assert a.delta[0][0] == 0
        for n in range(2**10):
            w = expansion(n, 2)
            padded = (0, 0, 0) + w
            assert a.run(0, padded) == a.run(0, w)


def test_sequence_term_zero_is_initial_output(tm, bs):
    assert sequence_term(tm, 0) == tm.state_output(0)
    assert sequence_term(bs, 0) == bs.state_output(0)


# ----------------------------------------------------------------------
# reversal


def test_reverse_flips_direction_and_preserves_sequence(tm, rs, bs):
    for a in (tm, rs, bs):
        rev = reverse_dfao(a)
        assert rev.direction != a.direction
        for n in range(2**12):
            assert sequence_term(rev, n) == sequence_term(a, n), n


def test_reverse_twice_preserves_sequence(tm):
    back = reverse_dfao(tm)
    fwd = reverse_dfao(back)
    assert fwd.direction == tm.direction
    for n in range(2**10):
        assert sequence_term(fwd, n) == sequence_term(tm, n)


def test_reverse_state_cap():
    with pytest.raises(AutorecError):
        reverse_dfao(load_builtin("rudin_shapiro"), cap=2)


# ----------------------------------------------------------------------
# structural transforms


def test_prune_inaccessible_preserves_sequence(tm):
    # graft an unreachable state onto the transition table
    padded = Dfao(
        tm.base,
        tm.direction,
        tm.states + ("limbo",),
        tm.outputs + (cyclo_field(1).from_rational(17),),
        tuple(tm.delta) + ((2, 2),),
    )
    pruned = prune_inaccessible(padded)
    assert pruned.size == tm.size
    for n in range(2**12):
        assert sequence_term(pruned, n) == sequence_term(tm, n)


def test_add_initial_state_preserves_sequence(rs):
    aug = add_initial_state(rs)
    assert aug.size == rs.size + 1
    # the fresh start state absorbs leading zeros and is unreachable
    # from the copied states
    assert aug.delta[0][0] == 0
    assert all(row[d] != 0 for row in aug.delta[1:] for d in range(aug.base))
    assert aug.run(0, (0, 0, 0, 1)) == aug.run(0, (1,))
    for n in range(2**12):
        assert sequence_term(aug, n) == sequence_term(rs, n)


# ----------------------------------------------------------------------
# pattern-counting machines


def test_pattern_spec_validation():
    with pytest.raises(AutorecError):
        PatternSpec(1, (0,), 2)
    with pytest.raises(AutorecError):
        PatternSpec(2, (), 2)
    with pytest.raises(AutorecError):
        PatternSpec(2, (0, 2), 2)
    with pytest.raises(AutorecError):
        PatternSpec(2, (1,), 0)


def test_pattern_eleven_mod_two_is_second_shipped_sequence(rs, pat11):
    # counting '11' blocks mod 2 with sign is exactly the fourth shipped
    # sequence's defining rule, so the two machines must agree
    for n in range(2**12):
        assert sequence_term(pat11, n) == sequence_term(rs, n), n


def test_pattern_counts_against_direct_scan():
    rng = random.Random(20)
    for trial in range(20):
        k = rng.randint(2, 4)
        v = tuple(rng.randrange(k) for _ in range(rng.randint(1, 4)))
        m = rng.randint(2, 5)
        spec = PatternSpec(k, v, m)
        a = pattern_dfao(spec)
        field = cyclo_field(m)
        for n in range(2**11):
            hits = occurrences(v, tuple(expansion(n, k)))
            want = field.omega_power(hits) if m > 2 else field.from_rational((-1) ** hits)
            assert sequence_term(a, n) == want, (trial, spec, n)


def test_pattern_machine_shape():
    # states track the KMP prefix length, so |v| + 1 prefix classes
    # crossed with the m residue classes bounds the machine size
    spec = PatternSpec(2, (1, 0, 1), 3)
    a = pattern_dfao(spec)
    assert a.direction == FORWARD
    assert a.size <= (len(spec.v) + 1) * spec.m
    f3 = cyclo_field(3)
    seen = {sequence_term(a, n) for n in range(2**10)}
    assert seen == {f3.one(), f3.omega(), f3.omega_power(2)}


# ----------------------------------------------------------------------
# symmetry checker


def test_symmetry_swap_on_two_state_machine(tm):
    rep = check_symmetry(tm, {0: 1, 1: 0}, 0)
    assert rep.commutes
    assert rep.period == 2
    # f_0 + f_1 = 0 on every reachable state
    assert rep.relations
    span_zero = [rel for rel in rep.relations if set(rel) == {0, 1}]
    assert span_zero


def test_symmetry_failure_is_witnessed(rs):
    rep = check_symmetry(rs, {0: 1, 1: 0, 2: 3, 3: 2}, 0)
    assert not rep.commutes
    state, digit = rep.failure
    img = {0: 1, 1: 0, 2: 3, 3: 2}
    assert rs.delta[img[state]][digit] != img[rs.delta[state][digit]]


def test_symmetry_domain_must_be_closed(tm):
    with pytest.raises(AutorecError):
        check_symmetry(tm, {0: 0}, 0)
