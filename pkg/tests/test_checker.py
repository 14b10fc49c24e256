import random

import pytest

from sgident.checker import (
    assert_balanced_guard,
    check_Rn,
    check_Un,
    check_Un_idempotent,
    check_UT,
    path_morphism,
    requires_balanced,
    run_check,
    same_variety_Un,
)
from sgident.errors import UnsupportedStructureError
from sgident.matrices import is_unitriangular
from sgident.monoids import BruteForceHolds, brute_force_identity, enumerate_unitriangular
from sgident.semirings import (
    BOOL,
    DIAMOND,
    INTERVAL01,
    MAXPLUS,
    MINPLUS01INF,
    NAT,
    semiring_from_spec,
)
from sgident.words import Identity

ABAB = Identity.parse("abab=abba")
ADJAN = Identity.parse("xyyxxyxyyx=xyyxyxxyyx")


def test_unitriangular_check_examples():
    assert check_Un(ABAB, 3, BOOL).is_holds
    nat_verdict = check_Un(ABAB, 3, NAT)
    assert nat_verdict.is_fails and nat_verdict.distinguishing_u == "ab"
    by_u = {e["u"]: e for e in nat_verdict.evidence}
    assert by_u["ab"]["lhs_multiplicity"] == 3
    assert by_u["ab"]["rhs_multiplicity"] == 2
    bool4 = check_Un(ABAB, 4, BOOL)
    assert bool4.is_fails
    # the shortest separating subword at this size has length 3
    assert len(bool4.distinguishing_u) == 3


def test_unitriangular_idempotent_check_matches():
    assert check_Un_idempotent(ABAB, 3).is_holds
    assert check_Un_idempotent(ABAB, 4).is_fails
    assert check_Un_idempotent(Identity.parse("x=xx"), 2).is_holds
    assert check_Un_idempotent(Identity.parse("x=xx"), 3).is_fails
    with pytest.raises(UnsupportedStructureError):
        check_Un_idempotent(ABAB, 3, NAT)


def test_triangular_check_examples():
    assert check_UT(Identity.parse("xy=yx"), 1, BOOL).is_holds
    assert check_UT(Identity.parse("xy=yx"), 1, NAT).is_holds
    assert check_UT(Identity.parse("xy=yx"), 2, BOOL).is_fails
    assert check_UT(ABAB, 3, BOOL).is_fails  # diagonal freedom separates the sides
    assert check_UT(Identity.parse("abab=abab"), 3, BOOL).is_holds


def test_triangular_check_over_the_tropical_instance():
    verdict = check_UT(ADJAN, 2, MAXPLUS, budget=256)
    assert verdict.outcome == "undetermined"
    assert verdict.sampling["inconclusive_u"] == ["x", "y"]
    assert check_UT(ADJAN, 3, MAXPLUS, budget=256).is_fails
    assert check_UT(ADJAN, 2, BOOL).is_holds


def test_fails_witnesses_reverify_by_multiplication():
    cases = [
        (check_Un(ABAB, 3, NAT), ABAB),
        (check_Un(ABAB, 4, BOOL), ABAB),
        (check_Un_idempotent(Identity.parse("x=xx"), 3), Identity.parse("x=xx")),
        (check_UT(Identity.parse("xy=yx"), 2, BOOL), Identity.parse("xy=yx")),
        (check_UT(ABAB, 3, NAT, budget=512), ABAB),
    ]
    for verdict, ident in cases:
        assert verdict.is_fails
        phi = verdict.witness
        i, j = verdict.witness_entry
        assert phi.apply(ident.lhs).entry(i, j) != phi.apply(ident.rhs).entry(i, j)


def test_unitriangular_witness_lands_in_the_unit_diagonal_monoid():
    verdict = check_Un(ABAB, 3, NAT)
    for image in verdict.witness.images.values():
        assert is_unitriangular(image)


def test_path_morphism_length_guard():
    with pytest.raises(ValueError):
        path_morphism("abc", "abc", 3, BOOL)


def test_reflexive_check():
    assert check_Rn(ABAB, 3, MINPLUS01INF).is_holds
    verdict = check_Rn(ABAB, 4, INTERVAL01)
    assert verdict.is_fails
    i, j = verdict.witness_entry
    phi = verdict.witness
    assert phi.apply(ABAB.lhs).entry(i, j) != phi.apply(ABAB.rhs).entry(i, j)
    assert check_Rn(ABAB, 3, BOOL, verify_samples=200).sampling["agreements"] == 200
    with pytest.raises(UnsupportedStructureError):
        check_Rn(ABAB, 3, NAT)
    with pytest.raises(UnsupportedStructureError):
        check_Rn(ABAB, 3, MAXPLUS)  # idempotent but without a top element


def test_reflexive_check_agrees_with_the_idempotent_criterion(identity_corpus):
    rng = random.Random(13)
    for ident in rng.sample(identity_corpus, 30):
        a = check_Rn(ident, 3, BOOL, verify_samples=50).outcome
        b = check_Un_idempotent(ident, 3).outcome
        assert a == b


def test_monotonicity_in_n(identity_corpus):
    rng = random.Random(17)
    for ident in rng.sample(identity_corpus, 40):
        failed = False
        for n in (2, 3, 4):
            verdict = check_Un(ident, n, BOOL)
            if failed:
                assert verdict.is_fails, ident
            failed = failed or verdict.is_fails


def test_triangular_holds_implies_unit_diagonal_holds(identity_corpus):
    trunc = semiring_from_spec("nat:2,3")
    rng = random.Random(19)
    for ident in rng.sample(identity_corpus, 60):
        for S in (BOOL, trunc):
            if check_UT(ident, 3, S).is_holds:
                assert check_Un(ident, 3, S).is_holds, (ident, S.name)


def test_unit_diagonal_checker_agrees_with_brute_force(identity_corpus):
    monoid = enumerate_unitriangular(3, BOOL)
    rng = random.Random(23)
    for ident in rng.sample(identity_corpus, 60):
        expected = isinstance(brute_force_identity(ident, monoid), BruteForceHolds)
        assert check_Un(ident, 3, BOOL).is_holds == expected, ident


def test_cross_instance_verdicts_coincide_for_matching_arithmetic(identity_corpus):
    aligned = (BOOL, INTERVAL01, MINPLUS01INF, DIAMOND, MAXPLUS)
    rng = random.Random(29)
    for ident in rng.sample(identity_corpus, 50):
        outcomes = {check_Un(ident, 3, S).outcome for S in aligned}
        assert len(outcomes) == 1, ident


def test_requires_balanced_declarations():
    assert requires_balanced(NAT)
    assert requires_balanced(MAXPLUS)
    assert requires_balanced(MINPLUS01INF)
    assert requires_balanced(INTERVAL01)
    assert not requires_balanced(BOOL)
    assert not requires_balanced(DIAMOND)
    assert not requires_balanced(semiring_from_spec("nat:2,3"))


def test_balanced_guard():
    xx = Identity.parse("x=xx")
    verdict = check_UT(xx, 2, NAT)
    assert verdict.is_fails
    assert_balanced_guard(xx, 2, NAT, verdict, monoid="ut")  # fails: nothing to guard
    assert_balanced_guard(ABAB, 3, NAT, check_Un(ABAB, 3, NAT), monoid="u")
    # a fabricated holds verdict on an unbalanced identity must trip the guard
    from sgident.checker import Verdict, HOLDS
    from sgident.errors import InternalConsistencyError

    fake = Verdict(HOLDS, "subword-multiplicities")
    with pytest.raises(InternalConsistencyError):
        assert_balanced_guard(xx, 2, NAT, fake, monoid="u")
    # over an idempotent instance an unbalanced identity may genuinely hold
    assert check_Un(xx, 2, MAXPLUS).is_holds
    assert_balanced_guard(xx, 2, MAXPLUS, check_Un(xx, 2, MAXPLUS), monoid="u")


def test_same_variety():
    assert same_variety_Un(BOOL, INTERVAL01)
    assert same_variety_Un(BOOL, MAXPLUS)
    assert not same_variety_Un(NAT, BOOL)
    assert same_variety_Un(
        semiring_from_spec("nat:2,3"), semiring_from_spec("nat:2,3")
    )
    assert not same_variety_Un(semiring_from_spec("nat:2,3"), semiring_from_spec("nat:1,3"))


def test_run_check_reports():
    report = run_check("u", ABAB, 3, BOOL, seed=1)
    payload = report.to_dict()
    assert payload["verdict"]["outcome"] == "holds"
    assert payload["identity"] == "abab=abba"
    assert "elapsed_ms" in payload
    assert "elapsed_ms" not in report.to_dict(stable=True)
    fails = run_check("r", ABAB, 4, INTERVAL01)
    assert fails.verdict.is_fails
    witness = fails.verdict.to_dict()["witness"]
    assert set(witness["images"]) == {"a", "b"}
    with pytest.raises(ValueError):
        run_check("m", ABAB, 3, BOOL)
