"""Property checkers against hand-computed verdicts and witnesses."""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import (
    fr,
    pi_violating_hvm,
    point_mass_model,
    single_site_third_model,
    two_site_sites,
)

from hvw import (
    EmpiricalModel,
    HiddenVariableModel,
    InputError,
    Permutation,
    PropertyId,
    Site,
    bell_model,
    check_exchangeability,
    check_lambda_independence,
    check_locality,
    check_non_contextuality,
    check_outcome_independence,
    check_parameter_independence,
    check_property,
    check_single_valuedness,
    check_strong_determinism,
    check_weak_determinism,
    construct_e1,
    construct_e2,
    construct_sv,
    epr_escape_hvm,
    epr_model,
    generate_random_model,
    grid_sites,
    ks_model,
    random_strategy_mixture,
)

ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Single-valuedness


def test_sv_holds_on_single_state_model():
    assert check_single_valuedness(construct_sv(epr_model())).holds


def test_sv_fails_on_two_state_model():
    verdict = check_single_valuedness(epr_escape_hvm())
    assert not verdict.holds
    assert verdict.witness is not None
    assert verdict.witness.lhs == 2
    assert verdict.witness.rhs == 1
    assert verdict.witness.where == ("l1", "l2")


def test_sv_fails_on_e1_of_epr_with_four_states():
    hidden = construct_e1(epr_model())
    assert len(hidden.lambda_set) == 4
    verdict = check_single_valuedness(hidden)
    assert not verdict.holds
    assert verdict.witness.lhs == 4


# ---------------------------------------------------------------------------
# Lambda independence


def test_lambda_independence_holds_on_escape():
    assert check_lambda_independence(epr_escape_hvm()).holds


def test_lambda_independence_holds_on_e2_of_bell():
    assert check_lambda_independence(construct_e2(bell_model())).holds


def test_lambda_independence_fails_on_e1_of_bell():
    verdict = check_lambda_independence(construct_e1(bell_model()))
    assert not verdict.holds
    witness = verdict.witness
    assert witness is not None
    assert len(witness.where) == 1
    assert witness.lhs != witness.rhs


def test_lambda_independence_single_context_is_vacuous():
    assert check_lambda_independence(construct_e1(epr_model())).holds


# ---------------------------------------------------------------------------
# Strong and weak determinism


def test_strong_determinism_holds_on_e1():
    assert check_strong_determinism(construct_e1(epr_model())).holds
    assert check_strong_determinism(construct_e1(bell_model())).holds


def test_strong_determinism_fails_on_sv_of_epr():
    verdict = check_strong_determinism(construct_sv(epr_model()))
    assert not verdict.holds
    witness = verdict.witness
    assert witness.lhs == fr("1/2")
    assert witness.rhs == ONE
    assert witness.where == ("a", "A", "l0")


def test_strong_determinism_holds_on_point_mass():
    assert check_strong_determinism(construct_sv(point_mass_model())).holds


def test_weak_determinism_holds_on_e2():
    assert check_weak_determinism(construct_e2(bell_model())).holds


def test_weak_determinism_fails_on_sv_of_epr():
    verdict = check_weak_determinism(construct_sv(epr_model()))
    assert not verdict.holds
    witness = verdict.witness
    assert witness.lhs == fr("1/2")
    assert witness.rhs == ONE
    assert witness.where == ("l0",)


def test_weak_without_strong_determinism():
    """e2 on a correlated model pins joint outcomes without pinning per-site responses."""
    hidden = construct_e2(bell_model())
    assert check_weak_determinism(hidden).holds
    assert not check_strong_determinism(hidden).holds


# ---------------------------------------------------------------------------
# Outcome independence


def test_outcome_independence_fails_on_sv_of_epr():
    verdict = check_outcome_independence(construct_sv(epr_model()))
    assert not verdict.holds
    witness = verdict.witness
    assert witness.lhs == 0
    assert witness.rhs == fr("1/2")
    assert witness.where == ("a", "l0")


def test_outcome_independence_holds_on_escape():
    assert check_outcome_independence(epr_escape_hvm()).holds


def test_outcome_independence_holds_on_e1():
    assert check_outcome_independence(construct_e1(bell_model())).holds


def test_outcome_independence_single_site_is_vacuous():
    assert check_outcome_independence(construct_sv(single_site_third_model())).holds


# ---------------------------------------------------------------------------
# Parameter independence


def test_parameter_independence_holds_on_sv_of_bell():
    """Every context leaves each site's marginal at 1/2, so sv stays parameter independent."""
    assert check_parameter_independence(construct_sv(bell_model())).holds


def test_parameter_independence_holds_on_e1():
    assert check_parameter_independence(construct_e1(bell_model())).holds


def test_parameter_independence_fails_with_known_witness():
    verdict = check_parameter_independence(pi_violating_hvm())
    assert not verdict.holds
    witness = verdict.witness
    assert witness.lhs == ONE
    assert witness.rhs == fr("3/4")
    assert witness.where == ("X", "l")


# ---------------------------------------------------------------------------
# Locality


def test_locality_holds_on_escape():
    assert check_locality(epr_escape_hvm()).holds


def test_locality_fails_on_sv_of_epr():
    verdict = check_locality(construct_sv(epr_model()))
    assert not verdict.holds
    witness = verdict.witness
    assert witness.lhs == 0
    assert witness.rhs == fr("1/4")
    assert witness.where == ("l0",)


def test_locality_agrees_with_oi_and_pi():
    """Locality must coincide with the conjunction of its two factor properties."""
    cases: list[HiddenVariableModel] = [
        epr_escape_hvm(),
        pi_violating_hvm(),
        construct_sv(epr_model()),
        construct_sv(bell_model()),
        construct_e1(bell_model()),
        construct_e2(epr_model()),
    ]
    for seed in range(24):
        cases.append(generate_random_model(seed, grid_sites(2, 2, 2), lambda_size=2))
    for hidden in cases:
        local = check_locality(hidden).holds
        oi = check_outcome_independence(hidden).holds
        pi = check_parameter_independence(hidden).holds
        assert local == (oi and pi)


# ---------------------------------------------------------------------------
# Non-contextuality


def test_non_contextuality_holds_on_bell():
    assert check_non_contextuality(bell_model()).holds


def test_non_contextuality_single_context_is_vacuous():
    assert check_non_contextuality(point_mass_model()).holds


def test_non_contextuality_fails_on_orthogonality_table():
    verdict = check_non_contextuality(ks_model())
    assert not verdict.holds
    witness = verdict.witness
    assert witness.where == ("A", "E2")
    assert witness.lhs == ONE
    assert witness.rhs == 0


def test_non_contextuality_detects_marginal_shift():
    sites = two_site_sites()
    weights = {
        (("0", "0"), ("M1", "M1")): fr("1/2"),
        (("0", "1"), ("M1", "M2")): fr("1/4"),
        (("1", "0"), ("M1", "M2")): fr("1/4"),
    }
    verdict = check_non_contextuality(EmpiricalModel(sites, weights))
    assert not verdict.holds
    assert verdict.witness.where == ("X", "M1")
    assert verdict.witness.lhs == ONE
    assert verdict.witness.rhs == fr("1/2")


# ---------------------------------------------------------------------------
# Exchangeability


def test_exchangeability_holds_on_bell():
    assert check_exchangeability(bell_model()).holds


def test_exchangeability_holds_on_orthogonality_table():
    assert check_exchangeability(ks_model()).holds


def test_exchangeability_rejects_heterogeneous_sites():
    with pytest.raises(InputError):
        check_exchangeability(epr_model())


def test_exchangeability_fails_on_asymmetric_outcomes():
    sites = two_site_sites()
    model = EmpiricalModel(sites, {(("0", "1"), ("M1", "M1")): ONE})
    verdict = check_exchangeability(model)
    assert not verdict.holds
    witness = verdict.witness
    assert witness.lhs == ONE
    assert witness.rhs == 0
    assert witness.where == ("(1 0)",)


def test_exchangeability_fails_on_null_context_mismatch():
    sites = two_site_sites()
    model = EmpiricalModel(sites, {(("0", "0"), ("M1", "M2")): ONE})
    verdict = check_exchangeability(model)
    assert not verdict.holds
    witness = verdict.witness
    assert "after permuting sites" in witness.rhs_desc
    assert witness.rhs == 0


def test_exchangeability_single_site_is_vacuous():
    assert check_exchangeability(single_site_third_model()).holds


# ---------------------------------------------------------------------------
# Dispatch


def test_check_property_accepts_names_and_ids():
    escape = epr_escape_hvm()
    by_name = check_property(escape, "locality")
    by_id = check_property(escape, PropertyId.LOCALITY)
    assert by_name.holds and by_id.holds


def test_check_property_rejects_unknown_name():
    with pytest.raises(InputError) as exc:
        check_property(epr_model(), "determinism")
    assert "single-valuedness" in str(exc.value)
    assert "exchangeability" in str(exc.value)


def test_check_property_guards_hidden_properties():
    with pytest.raises(InputError):
        check_property(epr_model(), "locality")
    with pytest.raises(InputError):
        check_property(bell_model(), PropertyId.SINGLE_VALUEDNESS)


def test_check_property_projects_hidden_models_for_empirical_properties():
    assert check_property(epr_escape_hvm(), "non-contextuality").holds
    verdict = check_property(construct_sv(ks_model()), "non-contextuality")
    assert not verdict.holds
    assert verdict.witness.where == ("A", "E2")


# ---------------------------------------------------------------------------
# Permutations


def test_permutation_rejects_non_bijections():
    with pytest.raises(InputError):
        Permutation((0, 0))
    with pytest.raises(InputError):
        Permutation((1, 2))


def test_permutation_apply_and_describe():
    perm = Permutation((1, 0, 2))
    assert perm.apply(("x", "y", "z")) == ("y", "x", "z")
    assert perm.describe() == "(1 0 2)"
    with pytest.raises(InputError):
        perm.apply(("x", "y"))


# ---------------------------------------------------------------------------
# Implication spot checks


def test_implications_on_assorted_models():
    cases: list[HiddenVariableModel] = [
        epr_escape_hvm(),
        construct_sv(epr_model()),
        construct_e1(bell_model()),
        construct_e2(bell_model()),
        pi_violating_hvm(),
    ]
    for seed in range(20):
        cases.append(generate_random_model(seed, grid_sites(2, 2, 2), lambda_size=seed % 3 + 1))
    for hidden in cases:
        sv = check_single_valuedness(hidden).holds
        li = check_lambda_independence(hidden).holds
        sd = check_strong_determinism(hidden).holds
        wd = check_weak_determinism(hidden).holds
        oi = check_outcome_independence(hidden).holds
        pi = check_parameter_independence(hidden).holds
        assert not sv or li
        assert not sd or wd
        assert not wd or oi
        assert not sd or pi


def test_strategy_mixtures_satisfy_the_local_bundle():
    """Mixtures of deterministic strategies are the textbook local models."""
    sites = grid_sites(2, 2, 2)
    for seed in range(10):
        hidden = random_strategy_mixture(seed, sites)
        assert check_strong_determinism(hidden).holds
        assert check_lambda_independence(hidden).holds
        assert check_locality(hidden).holds
        assert check_weak_determinism(hidden).holds
        assert check_outcome_independence(hidden).holds
        assert check_parameter_independence(hidden).holds
