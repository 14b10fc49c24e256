import random

import pytest

from conftest import ALL_INSTANCES
from sgident.errors import AlgebraError
from sgident.polynomials import (
    Equivalent,
    FormalPolynomial,
    NotEquivalent,
    NotFalsified,
    Variable,
    ZERO_POLYNOMIAL,
    _sampled,
    build_f,
    build_f_canonical,
    evaluate,
    functionally_equivalent,
)
from sgident.semirings import BOOL, MAXPLUS, NAT, semiring_from_spec
from sgident.words import scattered_multiplicity, words_up_to


def poly(d):
    return FormalPolynomial.from_dict(d)


def mono(*pairs):
    return tuple(sorted((Variable(s, i), e) for s, i, e in pairs))


def test_build_f_empty_word_is_the_content_monomial():
    p = build_f_canonical("", "aab")
    assert p == poly({mono(("a", 1, 2), ("b", 1, 1)): 1})
    assert p.render() == "x(a,1)^2*x(b,1)"


def test_build_f_tight_embedding_is_the_constant_one():
    p = build_f_canonical("ab", "ab")
    assert p == poly({(): 1})
    assert p.render() == "1"


def test_build_f_two_embeddings():
    p = build_f_canonical("a", "aa")
    assert p == poly({mono(("a", 1, 1)): 1, mono(("a", 2, 1)): 1})
    assert p.render() == "x(a,1) + x(a,2)"


def test_build_f_zero_iff_not_a_subword():
    assert build_f_canonical("ab", "aab").is_zero() is False
    assert build_f_canonical("ba", "aab").is_zero() is True
    for w in words_up_to("ab", 6):
        for u in words_up_to("ab", 3):
            assert build_f_canonical(u, w).is_zero() == (
                scattered_multiplicity(u, w) == 0
            )


def test_build_f_path_validation():
    with pytest.raises(ValueError):
        build_f("ab", (1, 2), "abab", 4)  # wrong path length
    with pytest.raises(ValueError):
        build_f("ab", (2, 2, 3), "abab", 4)  # not strictly increasing
    with pytest.raises(ValueError):
        build_f("ab", (1, 2, 5), "abab", 4)  # vertex out of range
    with pytest.raises(ValueError):
        build_f("abab", (1, 2, 3, 4, 5), "abab", 4)  # u too long for n


def test_build_f_paths_only_relabel_variables():
    w = "abab"
    for u in ("a", "ab", "ba"):
        canonical = build_f_canonical(u, w)
        rho = tuple(v + 2 for v in range(1, len(u) + 2))
        shifted = build_f(u, rho, w, 8)
        relabeled = {
            tuple(
                sorted((Variable(var.letter, var.vertex + 2), e) for var, e in m)
            ): c
            for m, c in canonical.terms
        }
        assert shifted == poly(relabeled)


def test_evaluate_examples():
    assert evaluate(ZERO_POLYNOMIAL, {}, BOOL) == BOOL.zero
    square = poly({mono(("a", 1, 2)): 1})
    assert evaluate(square, {Variable("a", 1): MAXPLUS.val(3)}, MAXPLUS) == MAXPLUS.val(6)
    two_terms = poly({mono(("a", 1, 1)): 1, mono(("a", 2, 1)): 1})
    assignment = {Variable("a", 1): BOOL.one, Variable("a", 2): BOOL.one}
    assert evaluate(two_terms, assignment, BOOL) == BOOL.one


def test_evaluate_missing_binding():
    p = poly({mono(("a", 1, 1)): 1})
    with pytest.raises(AlgebraError):
        evaluate(p, {}, BOOL)


def test_counting_interpretation_over_naturals():
    ones = {
        Variable(s, v): NAT.val(1) for s in "ab" for v in range(1, 5)
    }
    for w in words_up_to("ab", 8)[:120]:
        for u in words_up_to("ab", 3):
            p = build_f_canonical(u, w)
            needed = {var: ones[var] for var in p.variables()}
            assert evaluate(p, needed, NAT) == NAT.val(scattered_multiplicity(u, w))


def test_identical_forms_are_equivalent_for_any_instance():
    p = build_f_canonical("ab", "abab")
    for S in ALL_INSTANCES.values():
        assert isinstance(functionally_equivalent(p, p, S), Equivalent)


def test_boolean_exhaustive_equivalence():
    x = poly({mono(("a", 1, 1)): 1})
    x_squared = poly({mono(("a", 1, 2)): 1})
    result = functionally_equivalent(x, x_squared, BOOL)
    assert isinstance(result, Equivalent) and result.method == "exhaustive"


def test_boolean_inequivalence_yields_lexicographically_first_witness():
    x = poly({mono(("a", 1, 1)): 1})
    y = poly({mono(("b", 1, 1)): 1})
    result = functionally_equivalent(x, y, BOOL)
    assert isinstance(result, NotEquivalent)
    # carrier order is (0, 1): the first distinguishing assignment is a=0, b=1
    assert result.witness[Variable("a", 1)] == BOOL.zero
    assert result.witness[Variable("b", 1)] == BOOL.one


def test_tropical_absorption_is_not_falsified():
    # x^2 + x + 1 and x^2 + 1 define the same max-plus function: x can never
    # exceed both x^2 and 1
    v = Variable("a", 1)
    with_middle = poly({(): 1, ((v, 1),): 1, ((v, 2),): 1})
    without = poly({(): 1, ((v, 2),): 1})
    result = functionally_equivalent(with_middle, without, MAXPLUS, budget=512)
    assert isinstance(result, NotFalsified)
    assert result.samples == 512


def test_sampling_over_naturals_finds_a_witness():
    v = Variable("a", 1)
    x_plus_x = poly({((v, 1),): 2})
    x = poly({((v, 1),): 1})
    result = functionally_equivalent(x_plus_x, x, NAT)
    assert isinstance(result, NotEquivalent)
    assert result.lhs_value != result.rhs_value


def test_sampling_never_contradicts_exhaustion_over_bool():
    rng = random.Random(5)
    pool = words_up_to("ab", 5)
    for _ in range(40):
        w, v = rng.choice(pool), rng.choice(pool)
        u = rng.choice(("", "a", "b", "ab"))
        p, q = build_f_canonical(u, w), build_f_canonical(u, v)
        exhaustive = functionally_equivalent(p, q, BOOL)
        variables = sorted(set(p.variables()) | set(q.variables()))
        sampled = _sampled(p, q, BOOL, variables, 4096, seed=9)
        if isinstance(exhaustive, Equivalent):
            assert not isinstance(sampled, NotEquivalent)
        if isinstance(sampled, NotEquivalent):
            assert isinstance(exhaustive, NotEquivalent)


def test_variable_universe_must_cover_polynomials():
    p = poly({mono(("a", 1, 1)): 1})
    q = poly({mono(("b", 1, 1)): 1})
    with pytest.raises(AlgebraError):
        functionally_equivalent(p, q, BOOL, variables=[Variable("a", 1)])


def test_finite_fallback_to_sampling_when_too_many_assignments():
    trunc = semiring_from_spec("nat:2,3")
    a, b = Variable("a", 1), Variable("b", 1)
    p = poly({((a, 1),): 1})
    q = poly({((b, 1),): 1})
    result = functionally_equivalent(p, q, trunc, exhaustive_cap=3, budget=64)
    assert isinstance(result, NotEquivalent)


def test_rendering_is_stable_and_sorted():
    p = build_f_canonical("ab", "abab")
    assert p.render() == "x(a,1)*x(b,1) + x(a,2)*x(b,2) + x(a,3)*x(b,3)"
    assert ZERO_POLYNOMIAL.render() == "0"
    with_coeff = poly({(): 3, mono(("a", 2, 1)): 2})
    assert with_coeff.render() == "3 + 2*x(a,2)"


def test_coefficient_cap():
    p = poly({mono(("a", 1, 1)): 5, (): 2})
    capped = p.cap()
    assert capped == poly({mono(("a", 1, 1)): 1, (): 1})
