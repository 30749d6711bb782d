"""No-go verifiers: canonical models, both impossibility routes per argument."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest

from conftest import fr

from hvw import (
    BellCertificate,
    BellReport,
    EprReport,
    Event,
    InputError,
    KsColoring,
    KsParityReport,
    KsReport,
    KsTable,
    PolytopeResult,
    SizeGuardError,
    bell_certificate,
    bell_model,
    bell_pi_escape,
    canonical_model,
    check_lambda_independence,
    check_locality,
    count_deterministic_strategies,
    enumerate_deterministic_strategies,
    epr_model,
    equivalent_empirical,
    grid_sites,
    ks_coloring_candidates,
    ks_model,
    ks_parity_certificate,
    ks_search_colorings,
    ks_table,
    local_polytope_feasibility,
    project_to_empirical,
    random_strategy_mixture,
    verify_bell,
    verify_epr,
    verify_ks,
)

ONE = Fraction(1)


def json_round_trip(report, cls):
    data = json.loads(json.dumps(report.to_dict()))
    return cls.from_dict(data)


# ---------------------------------------------------------------------------
# Canonical models


def test_epr_model_predictions():
    e = epr_model()
    given = Event(measurements={"a": "A", "b": "B"})
    assert e.cond_prob(Event(outcomes={"a": "+_a"}), given) == fr("1/2")
    pinned = Event(measurements={"a": "A", "b": "B"}, outcomes={"b": "+_b"})
    assert e.cond_prob(Event(outcomes={"a": "+_a"}), pinned) == 0
    assert e.context_weights() == {("A", "B"): ONE}


def test_bell_model_predictions():
    e = bell_model()
    assert len(e.context_weights()) == 9
    assert set(e.context_weights().values()) == {fr("1/9")}
    same = Event(measurements={"A": "2", "B": "2"})
    assert e.cond_prob(Event(outcomes={"A": "+", "B": "+"}), same) == 0
    crossed = Event(measurements={"A": "1", "B": "3"})
    assert e.cond_prob(Event(outcomes={"A": "-", "B": "-"}), crossed) == fr("3/8")


def test_ks_model_structure():
    e = ks_model()
    weights = e.context_weights()
    assert len(weights) == 216
    assert set(weights.values()) == {fr("1/216")}
    dist = e.outcome_distribution(("E1", "E2", "E3", "E4"))
    assert dist == {("1", "0", "0", "0"): ONE}
    for context, mass in weights.items():
        d = e.outcome_distribution(context)
        ((outcome, p),) = d.items()
        assert p == ONE
        assert sum(1 for a in outcome if a == "1") == 1


def test_canonical_model_lookup():
    assert canonical_model("epr").weights == epr_model().weights
    assert canonical_model("bell").weights == bell_model().weights
    with pytest.raises(InputError):
        canonical_model("chsh")


# ---------------------------------------------------------------------------
# Deterministic strategies


def test_strategy_counts():
    assert count_deterministic_strategies(bell_model().sites) == 64
    assert count_deterministic_strategies(grid_sites(1, 1, 2)) == 2
    assert count_deterministic_strategies(grid_sites(2, 2, 2)) == 16


def test_strategy_enumeration_order_and_responses():
    sites = bell_model().sites
    strategies = enumerate_deterministic_strategies(sites)
    assert len(strategies) == 64
    assert strategies[0].responses == (("+", "+", "+"), ("+", "+", "+"))
    assert strategies[-1].responses == (("-", "-", "-"), ("-", "-", "-"))
    assert len({s.responses for s in strategies}) == 64

    middle = strategies[13]
    assert middle.outcome_for(sites, ("2", "3")) == (
        middle.responses[0][1],
        middle.responses[1][2],
    )
    described = strategies[0].describe(sites)
    assert "A[1->+ 2->+ 3->+]" in described


def test_strategy_enumeration_guard():
    with pytest.raises(SizeGuardError):
        enumerate_deterministic_strategies(ks_model().sites)


# ---------------------------------------------------------------------------
# Local polytope membership


def rebuild_rows(model, strategies):
    """Row order is the documented one: sorted contexts x all outcomes, then total."""
    contexts = sorted(model.context_weights(), key=model.context_sort_key)
    outcomes = list(model.outcome_tuples())
    rows = []
    rhs = []
    for context in contexts:
        distribution = model.outcome_distribution(context)
        for outcome in outcomes:
            rows.append(
                [
                    ONE if strategy.outcome_for(model.sites, context) == outcome else Fraction(0)
                    for strategy in strategies
                ]
            )
            rhs.append(distribution.get(outcome, Fraction(0)))
    rows.append([ONE] * len(strategies))
    rhs.append(ONE)
    return rows, rhs


def test_bell_is_outside_the_polytope():
    result = local_polytope_feasibility(bell_model())
    assert not result.feasible
    assert result.strategy_count == 64
    assert len(result.row_labels) == 9 * 4 + 1
    assert result.row_labels[-1] == "total probability"
    assert result.row_labels[0] == "p(A=+, B=+ | A=1, B=1)"
    assert result.certificate is not None and len(result.certificate) == 37
    assert result.strategy_weights is None and result.hvm is None


def test_bell_farkas_certificate_rechecked_from_scratch():
    """Rebuild the equation system from public pieces and recheck the certificate."""
    from hvw import verify_farkas

    model = bell_model()
    result = local_polytope_feasibility(model)
    strategies = enumerate_deterministic_strategies(model.sites)
    rows, rhs = rebuild_rows(model, strategies)
    assert len(rows) == len(result.row_labels)
    assert verify_farkas(rows, rhs, list(result.certificate))


def test_uniform_quarter_is_inside(uniform_quarter):
    result = local_polytope_feasibility(uniform_quarter)
    assert result.feasible
    assert result.hvm is not None
    total = sum((w for _, w in result.strategy_weights), Fraction(0))
    assert total == 1
    assert check_lambda_independence(result.hvm).holds
    assert check_locality(result.hvm).holds
    assert equivalent_empirical(uniform_quarter, result.hvm).holds


def test_all_pairs_anticorrelation_is_inside(all_pairs_anticorrelation):
    result = local_polytope_feasibility(all_pairs_anticorrelation)
    assert result.feasible
    assert check_lambda_independence(result.hvm).holds
    assert check_locality(result.hvm).holds
    assert equivalent_empirical(all_pairs_anticorrelation, result.hvm).holds


def test_feasible_point_satisfies_rebuilt_system(uniform_quarter):
    from hvw import verify_solution

    result = local_polytope_feasibility(uniform_quarter)
    strategies = enumerate_deterministic_strategies(uniform_quarter.sites)
    rows, rhs = rebuild_rows(uniform_quarter, strategies)
    x = [Fraction(0)] * len(strategies)
    for index, weight in result.strategy_weights:
        x[index] = weight
    assert verify_solution(rows, rhs, x)


def test_epr_anticorrelation_alone_is_inside():
    result = local_polytope_feasibility(epr_model())
    assert result.feasible
    assert equivalent_empirical(epr_model(), result.hvm).holds


def test_strategy_mixtures_project_inside():
    for seed in range(12):
        hidden = random_strategy_mixture(seed, grid_sites(2, 2, 2))
        assert local_polytope_feasibility(project_to_empirical(hidden)).feasible
    for seed in range(3):
        hidden = random_strategy_mixture(seed, bell_model().sites)
        assert local_polytope_feasibility(project_to_empirical(hidden)).feasible


def test_polytope_result_round_trips(uniform_quarter):
    infeasible = local_polytope_feasibility(bell_model())
    assert json_round_trip(infeasible, PolytopeResult) == infeasible
    feasible = local_polytope_feasibility(uniform_quarter)
    assert json_round_trip(feasible, PolytopeResult) == feasible


def test_polytope_rejects_hidden_models():
    from hvw import epr_escape_hvm

    with pytest.raises(InputError):
        local_polytope_feasibility(epr_escape_hvm())


# ---------------------------------------------------------------------------
# The anti-correlation argument


def test_verify_epr_reproduces_the_conflict():
    report = verify_epr()
    assert report.marginal == fr("1/2")
    assert report.pinned_by_partner == ONE
    assert not report.oi_single_state.holds
    assert report.escape_sd.holds
    assert report.escape_li.holds
    assert report.escape_oi.holds
    assert report.escape_equivalent.holds
    assert report.confirmed


def test_epr_report_round_trips():
    report = verify_epr()
    assert json_round_trip(report, EprReport) == report


def test_epr_report_is_deterministic():
    assert verify_epr() == verify_epr()


# ---------------------------------------------------------------------------
# The three-direction argument


def test_bell_certificate_equations():
    cert = bell_certificate()
    by_pair = {(eq.i, eq.j): eq for eq in cert.equations}
    assert set(by_pair) == {(1, 2), (2, 3), (3, 1)}
    assert by_pair[(1, 2)].atoms == (4, 8, 2, 6)
    assert by_pair[(2, 3)].atoms == (5, 6, 3, 4)
    assert by_pair[(3, 1)].atoms == (2, 3, 5, 8)
    for eq in cert.equations:
        assert eq.plus_plus == fr("3/8")
        assert eq.minus_minus == fr("3/8")
        assert eq.rhs == fr("3/4")


def test_bell_certificate_aggregate():
    cert = bell_certificate()
    assert cert.atoms_counted_twice
    assert cert.aggregate_atoms == (2, 3, 4, 5, 6, 8)
    assert cert.aggregate_value == fr("9/8")
    assert cert.impossible


def test_bell_certificate_is_deterministic():
    assert bell_certificate() == bell_certificate()
    assert json_round_trip(bell_certificate(), BellCertificate) == bell_certificate()


def test_bell_escape_keeps_pi_but_not_oi():
    escape = bell_pi_escape()
    assert escape.li.holds
    assert escape.pi.holds
    assert not escape.oi.holds
    assert escape.conditional_with_partner == ONE
    assert escape.conditional_alone == fr("1/2")
    assert escape.confirmed


def test_verify_bell_routes():
    cert_only = verify_bell("certificate")
    assert cert_only.certificate is not None and cert_only.polytope is None
    assert cert_only.confirmed

    poly_only = verify_bell("polytope")
    assert poly_only.certificate is None and poly_only.polytope is not None
    assert not poly_only.polytope.feasible
    assert poly_only.confirmed

    both = verify_bell("both")
    assert both.certificate is not None and both.polytope is not None
    assert both.confirmed

    with pytest.raises(InputError):
        verify_bell("chsh")


def test_bell_report_round_trips():
    report = verify_bell("both")
    assert json_round_trip(report, BellReport) == report


# ---------------------------------------------------------------------------
# The orthogonality-table argument


def test_ks_table_shape():
    table = ks_table()
    assert len(table.columns) == 9
    assert table.height == 4
    assert len(table.labels()) == 18
    assert all(count == 2 for _, count in table.label_counts())


def test_ks_table_validation():
    with pytest.raises(InputError):
        KsTable(())
    with pytest.raises(InputError):
        KsTable((("a", "b"), ("c",)))
    with pytest.raises(InputError):
        KsTable((("a", "a"),))
    with pytest.raises(InputError):
        KsTable((("a", ""),))


def test_full_table_admits_no_coloring():
    table = ks_table()
    assert ks_coloring_candidates(table) == 4**9 == 262_144
    assert ks_search_colorings(table) == []


def test_single_column_has_height_many_colorings():
    table = KsTable((("a", "b", "c", "d"),))
    found = ks_search_colorings(table)
    assert len(found) == 4
    for coloring in found:
        assert coloring.is_valid_for(table)
        assert sum(coloring.as_dict().values()) == 1


def test_two_overlapping_columns_match_brute_force():
    table = KsTable((("a", "b", "c", "d"), ("a", "e", "f", "g")))
    found = ks_search_colorings(table)
    labels = table.labels()
    brute = 0
    for bits in itertools.product((0, 1), repeat=len(labels)):
        values = dict(zip(labels, bits))
        if all(sum(values[l] for l in column) == 1 for column in table.columns):
            brute += 1
    assert brute == 10
    assert len(found) == brute
    assert len({c.assignment for c in found}) == brute
    for coloring in found:
        assert coloring.is_valid_for(table)


def test_coloring_validity_checks():
    table = KsTable((("a", "b"),))
    good = KsColoring((("a", 1), ("b", 0)))
    bad = KsColoring((("a", 0), ("b", 0)))
    missing = KsColoring((("a", 1),))
    assert good.is_valid_for(table)
    assert not bad.is_valid_for(table)
    assert not missing.is_valid_for(table)


def test_coloring_search_guards():
    with pytest.raises(SizeGuardError):
        ks_search_colorings(ks_table(), guard=1000)
    wide = KsTable((tuple(f"x{i}" for i in range(31)),))
    with pytest.raises(SizeGuardError):
        ks_search_colorings(wide)


def test_parity_certificate_on_the_full_table():
    report = ks_parity_certificate(ks_table())
    assert report.all_counts_even
    assert report.column_count == 9
    assert report.column_count_odd
    assert report.verdict == "impossible"
    assert report.conclusive


def test_parity_certificate_undecided_cases():
    odd_occurrence = ks_parity_certificate(KsTable((("a", "b"),)))
    assert not odd_occurrence.all_counts_even
    assert odd_occurrence.verdict == "undecided"
    assert not odd_occurrence.conclusive

    even_columns = ks_parity_certificate(KsTable((("a", "b"), ("a", "b"))))
    assert even_columns.all_counts_even
    assert not even_columns.column_count_odd
    assert even_columns.verdict == "undecided"


def test_verify_ks_routes():
    both = verify_ks("both")
    assert both.exchangeability.holds
    assert both.winner_pattern_ok
    assert not both.non_contextuality.holds
    assert both.non_contextuality.witness.where == ("A", "E2")
    assert both.coloring_candidates == 262_144
    assert both.coloring_count == 0
    assert both.parity is not None and both.parity.conclusive
    assert both.confirmed

    coloring_only = verify_ks("coloring")
    assert coloring_only.parity is None
    assert coloring_only.coloring_count == 0
    assert coloring_only.confirmed

    parity_only = verify_ks("parity")
    assert parity_only.coloring_candidates is None
    assert parity_only.parity.conclusive
    assert parity_only.confirmed

    with pytest.raises(InputError):
        verify_ks("graph")


def test_ks_report_round_trips():
    report = verify_ks("both")
    assert json_round_trip(report, KsReport) == report
    parity = ks_parity_certificate(ks_table())
    assert json_round_trip(parity, KsParityReport) == parity
