import pytest

from ksctx.errors import ParseError, ScenarioError
from ksctx.scenario import (Context, ContextualVariable, Observable, Party, Scenario,
                            builtin_chsh, contextual_variables, format_scenario, parse_scenario)


def names(s):
    return [v.name for v in contextual_variables(s)]


def test_builtin_chsh_shape(chsh):
    assert len(chsh.observables) == 4
    assert len(chsh.contexts) == 4
    assert len(contextual_variables(chsh)) == 8
    assert 2 ** len(chsh.variables) == 256


def test_builtin_chsh_functional_signs(chsh):
    coeffs = {(c.left.label, c.right.label): k for c, k in chsh.functional}
    assert coeffs == {("a", "b"): 1, ("a", "b'"): 1, ("a'", "b"): 1, ("a'", "b'"): -1}


def test_canonical_order_matches_table_columns(chsh):
    assert names(chsh) == ["a_b", "a_b'", "a'_b", "a'_b'", "b_a", "b_a'", "b'_a", "b'_a'"]


def test_single_context(single):
    assert names(single) == ["a_b", "b_a"]


def test_one_variable_per_partner():
    s = parse_scenario("""
        observable Left a
        observable Left a'
        observable Right b'
        context a b'
        context a' b'
    """)
    bprime = [v.name for v in s.variables if v.base.label == "b'"]
    assert bprime == ["b'_a", "b'_a'"]


def test_variable_count_is_sum_of_partner_counts(chsh):
    partners = {}
    for c in chsh.contexts:
        partners.setdefault(c.left, set()).add(c.right)
        partners.setdefault(c.right, set()).add(c.left)
    assert len(chsh.variables) == sum(len(p) for p in partners.values())
    assert len(chsh.variables) == 2 * len(chsh.contexts)


def test_order_is_stable():
    assert format_scenario(builtin_chsh()) == format_scenario(builtin_chsh())
    assert names(builtin_chsh()) == names(builtin_chsh())


def test_roundtrip_text_format(chsh):
    assert parse_scenario(format_scenario(chsh)) == chsh


def test_parser_comments_and_blank_lines():
    s = parse_scenario("# header\n\nobservable Left x  # trailing\nobservable Right y\ncontext x y\n")
    assert names(s) == ["x_y", "y_x"]
    assert s.functional == ()


@pytest.mark.parametrize("text, line", [
    ("observable Left a\nobservable Right b\ncontext a b c\n", 3),
    ("observable Middle a\n", 1),
    ("observable Left a\ncontext a b\n", 2),
    ("observable Left a\nobservable Right b\nfunctional a b 2\n", 3),
    ("frobnicate\n", 1),
])
def test_parser_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_scenario(text)
    assert info.value.line == line


def test_three_way_context_rejected():
    with pytest.raises(ParseError, match="three or more"):
        parse_scenario("observable Left a\nobservable Right b\nobservable Right c\ncontext a b c\n")


def test_functional_must_use_declared_context():
    with pytest.raises(ParseError):
        parse_scenario("observable Left a\nobservable Right b\nfunctional a b +1\n")


def test_duplicate_contexts_rejected():
    a, b = Observable(Party.LEFT, "a"), Observable(Party.RIGHT, "b")
    with pytest.raises(ScenarioError):
        Scenario((a, b), (Context(a, b), Context(a, b)), ())


def test_same_party_variable_rejected():
    a, a2 = Observable(Party.LEFT, "a"), Observable(Party.LEFT, "a'")
    with pytest.raises(ScenarioError):
        ContextualVariable(a, a2)
    with pytest.raises(ScenarioError):
        Context(a, a2)
