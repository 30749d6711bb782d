"""Canonical models and mechanical impossibility arguments.

Three classic obstruction patterns, each verified by exact computation:

* `verify_epr`: on the two-site anti-correlated model, a single-valued
  completion must give its one hidden state the empirical 1/2 marginal while
  the partner's outcome pins it to 1, so outcome independence fails; a two
  hidden-state completion satisfies strong determinism, lambda-independence,
  and outcome independence instead.
* `verify_bell`: the three-direction anti-correlation model. The certificate
  route derives three equations over the eight deterministic joint response
  types whose right-hand sides sum past total probability; the polytope route
  proves by exact linear programming that no mixture of the 64 deterministic
  strategies reproduces the table, returning an independently rechecked
  Farkas certificate.
* `verify_ks`: the 18-label, 9-column orthogonality table. The coloring route
  exhaustively checks all winner patterns and finds no consistent
  one-winner-per-column labeling; the parity route counts label occurrences
  (all even) against the odd column count.

`local_polytope_feasibility` is the general membership test behind the Bell
polytope route and works on any empirical model: feasible inputs come back
with an explicit lambda-independent, local hidden-variable model.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .constructions import construct_sv
from .errors import InputError, SizeGuardError
from .linprog import feasible_point, verify_farkas, verify_solution
from .modelio import model_from_dict, model_to_dict
from .models import (
    DEFAULT_GUARD,
    ONE,
    ZERO,
    EmpiricalModel,
    Event,
    HiddenVariableModel,
    PropertyVerdict,
    Site,
    describe_context,
    describe_outcome,
    equivalent_empirical,
)
from .properties import (
    check_exchangeability,
    check_lambda_independence,
    check_locality,
    check_non_contextuality,
    check_outcome_independence,
    check_parameter_independence,
    check_strong_determinism,
)


def _fraction_list(values: Sequence[Fraction]) -> list[str]:
    return [str(v) for v in values]


# ---------------------------------------------------------------------------
# Canonical models


def epr_model() -> EmpiricalModel:
    """Two sites, one measurement each, perfectly anti-correlated outcomes."""
    half = Fraction(1, 2)
    sites = (
        Site("a", ("A",), ("+_a", "-_a")),
        Site("b", ("B",), ("+_b", "-_b")),
    )
    return EmpiricalModel(
        sites,
        {
            (("+_a", "-_b"), ("A", "B")): half,
            (("-_a", "+_b"), ("A", "B")): half,
        },
    )


def epr_escape_hvm() -> HiddenVariableModel:
    """Two equally weighted hidden states, each pinning one joint outcome."""
    half = Fraction(1, 2)
    sites = (
        Site("a", ("A",), ("+_a", "-_a")),
        Site("b", ("B",), ("+_b", "-_b")),
    )
    return HiddenVariableModel(
        sites,
        ("l1", "l2"),
        {
            (("+_a", "-_b"), ("A", "B"), "l1"): half,
            (("-_a", "+_b"), ("A", "B"), "l2"): half,
        },
    )


def bell_model() -> EmpiricalModel:
    """Two sites sharing three measurement directions, contexts weighted 1/9.

    Equal directions anti-correlate perfectly; unequal directions agree with
    probability 3/4, split evenly between the two agreeing outcomes.
    """
    directions = ("1", "2", "3")
    marks = ("+", "-")
    sites = (Site("A", directions, marks), Site("B", directions, marks))
    same = {("+", "-"): Fraction(1, 2), ("-", "+"): Fraction(1, 2)}
    different = {
        ("+", "+"): Fraction(3, 8),
        ("+", "-"): Fraction(1, 8),
        ("-", "+"): Fraction(1, 8),
        ("-", "-"): Fraction(3, 8),
    }
    ninth = Fraction(1, 9)
    weights: dict = {}
    for i in directions:
        for j in directions:
            table = same if i == j else different
            for outcome, p in table.items():
                weights[(outcome, (i, j))] = ninth * p
    return EmpiricalModel(sites, weights)


_KS_COLUMNS: tuple[tuple[str, str, str, str], ...] = (
    ("E1", "E2", "E3", "E4"),
    ("E1", "E5", "E6", "E7"),
    ("E8", "E9", "E3", "E10"),
    ("E8", "E11", "E7", "E12"),
    ("E2", "E5", "E13", "E14"),
    ("E9", "E11", "E14", "E15"),
    ("E16", "E17", "E4", "E10"),
    ("E16", "E18", "E6", "E12"),
    ("E17", "E18", "E13", "E15"),
)


def ks_model() -> EmpiricalModel:
    """Four homogeneous sites over labels E1..E18 with one-winner contexts.

    The support has one context per (column, slot assignment) pair: each of
    the 9 columns is distributed over the 4 sites in all 24 ways, uniformly
    weighted 1/216, and the site holding the column's first label outputs 1
    while the rest output 0.
    """
    labels = tuple(f"E{i}" for i in range(1, 19))
    marks = ("0", "1")
    sites = tuple(Site(name, labels, marks) for name in ("A", "B", "C", "D"))
    weight = Fraction(1, 216)
    weights: dict = {}
    for column in _KS_COLUMNS:
        for image in itertools.permutations(range(4)):
            context: list[str] = [""] * 4
            for k, slot in enumerate(image):
                context[slot] = column[k]
            outcome = ["0"] * 4
            outcome[image[0]] = "1"
            weights[(tuple(outcome), tuple(context))] = weight
    return EmpiricalModel(sites, weights)


def canonical_model(name: str) -> EmpiricalModel:
    """Look up one of the built-in models: epr, bell, or ks."""
    builders = {"epr": epr_model, "bell": bell_model, "ks": ks_model}
    try:
        return builders[name]()
    except KeyError:
        raise InputError(f"unknown canonical model {name!r}; expected epr, bell, or ks") from None


# ---------------------------------------------------------------------------
# Deterministic strategies and the local polytope


@dataclass(frozen=True)
class DeterministicStrategy:
    """One total response per site: responses[i][k] answers measurement k of site i."""

    responses: tuple[tuple[str, ...], ...]

    def outcome_for(self, sites: Sequence[Site], context: Sequence[str]) -> tuple[str, ...]:
        return tuple(
            self.responses[i][sites[i].measurements.index(m)] for i, m in enumerate(context)
        )

    def describe(self, sites: Sequence[Site]) -> str:
        parts = []
        for site, answers in zip(sites, self.responses):
            inner = " ".join(f"{m}->{a}" for m, a in zip(site.measurements, answers))
            parts.append(f"{site.name}[{inner}]")
        return " ".join(parts)


def count_deterministic_strategies(sites: Sequence[Site]) -> int:
    return math.prod(len(site.outcomes) ** len(site.measurements) for site in sites)


def enumerate_deterministic_strategies(
    sites: Sequence[Site], guard: int = DEFAULT_GUARD
) -> list[DeterministicStrategy]:
    """All per-site response functions, in a fixed lexicographic order."""
    sites = tuple(sites)
    total = count_deterministic_strategies(sites)
    if total > guard:
        raise SizeGuardError("deterministic strategy enumeration", total, guard)
    per_site = [
        list(itertools.product(site.outcomes, repeat=len(site.measurements))) for site in sites
    ]
    return [DeterministicStrategy(combo) for combo in itertools.product(*per_site)]


@dataclass(frozen=True)
class PolytopeResult:
    """Outcome of the deterministic-mixture membership test.

    Feasible: `strategy_weights` lists (strategy index, weight) for the
    mixture and `hvm` is the witness model built from it. Infeasible:
    `certificate` holds one rational per equation row, rechecked to satisfy
    y.A >= 0 and y.b < 0.
    """

    feasible: bool
    strategy_count: int
    row_labels: tuple[str, ...]
    strategy_weights: tuple[tuple[int, Fraction], ...] | None = None
    certificate: tuple[Fraction, ...] | None = None
    hvm: HiddenVariableModel | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "polytope-membership",
            "feasible": self.feasible,
            "strategy_count": self.strategy_count,
            "row_labels": list(self.row_labels),
            "strategy_weights": None
            if self.strategy_weights is None
            else [[index, str(weight)] for index, weight in self.strategy_weights],
            "certificate": None if self.certificate is None else _fraction_list(self.certificate),
            "hvm": None if self.hvm is None else model_to_dict(self.hvm),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PolytopeResult":
        weights = data.get("strategy_weights")
        certificate = data.get("certificate")
        hvm = data.get("hvm")
        return cls(
            feasible=bool(data["feasible"]),
            strategy_count=int(data["strategy_count"]),
            row_labels=tuple(data["row_labels"]),
            strategy_weights=None
            if weights is None
            else tuple((int(i), Fraction(w)) for i, w in weights),
            certificate=None if certificate is None else tuple(Fraction(v) for v in certificate),
            hvm=None if hvm is None else model_from_dict(hvm),  # type: ignore[arg-type]
        )


def _mixture_hvm(
    e: EmpiricalModel,
    strategies: Sequence[DeterministicStrategy],
    mixture: Sequence[tuple[int, Fraction]],
) -> HiddenVariableModel:
    context_weights = e.context_weights()
    labels = tuple(f"s{index}" for index, _ in mixture)
    weights: dict = {}
    for index, x in mixture:
        lam = f"s{index}"
        strategy = strategies[index]
        for context, mass in context_weights.items():
            outcome = strategy.outcome_for(e.sites, context)
            weights[(outcome, context, lam)] = weights.get((outcome, context, lam), ZERO) + mass * x
    return HiddenVariableModel(e.sites, labels, weights)


def local_polytope_feasibility(
    model: EmpiricalModel, guard: int = DEFAULT_GUARD
) -> PolytopeResult:
    """Can any mixture of deterministic strategies reproduce the model?

    Builds the exact equality system (one row per non-null context and
    outcome tuple, plus normalization) over all deterministic strategies and
    solves it with nonnegative weights. Either answer is rechecked by direct
    arithmetic before being returned.
    """
    if not isinstance(model, EmpiricalModel):
        raise InputError("local_polytope_feasibility expects an empirical model")
    strategies = enumerate_deterministic_strategies(model.sites, guard)
    contexts = sorted(model.context_weights(), key=model.context_sort_key)
    outcomes = list(model.outcome_tuples())
    behavior = [
        [strategy.outcome_for(model.sites, context) for context in contexts]
        for strategy in strategies
    ]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    labels: list[str] = []
    for ci, context in enumerate(contexts):
        distribution = model.outcome_distribution(context)
        for outcome in outcomes:
            rows.append([ONE if behavior[si][ci] == outcome else ZERO for si in range(len(strategies))])
            rhs.append(distribution.get(outcome, ZERO))
            labels.append(
                f"p({describe_outcome(model.sites, outcome)} | {describe_context(model.sites, context)})"
            )
    rows.append([ONE] * len(strategies))
    rhs.append(ONE)
    labels.append("total probability")

    x, y = feasible_point(rows, rhs)
    if x is not None:
        if not verify_solution(rows, rhs, x):
            raise AssertionError("solver returned a point that fails direct recheck")
        mixture = tuple((i, w) for i, w in enumerate(x) if w)
        hvm = _mixture_hvm(model, strategies, mixture)
        return PolytopeResult(
            feasible=True,
            strategy_count=len(strategies),
            row_labels=tuple(labels),
            strategy_weights=mixture,
            hvm=hvm,
        )
    assert y is not None
    if not verify_farkas(rows, rhs, y):
        raise AssertionError("solver returned a certificate that fails direct recheck")
    return PolytopeResult(
        feasible=False,
        strategy_count=len(strategies),
        row_labels=tuple(labels),
        certificate=tuple(y),
    )


def random_strategy_mixture(
    seed: int,
    sites: Sequence[Site],
    max_components: int = 4,
    guard: int = DEFAULT_GUARD,
) -> HiddenVariableModel:
    """Seeded random mixture of deterministic strategies, uniform over contexts.

    By construction the result is lambda-independent, strongly deterministic,
    and local; useful as a feasible control for the membership test.
    """
    sites = tuple(sites)
    rng = random.Random(seed)
    strategies = enumerate_deterministic_strategies(sites, guard)
    k = rng.randint(1, max(1, min(max_components, len(strategies))))
    indices = sorted(rng.sample(range(len(strategies)), k))
    parts = [rng.randint(1, 8) for _ in indices]
    total = sum(parts)
    contexts = list(itertools.product(*(site.measurements for site in sites)))
    context_mass = Fraction(1, len(contexts))
    weights: dict = {}
    for index, part in zip(indices, parts):
        lam = f"s{index}"
        x = Fraction(part, total)
        for context in contexts:
            outcome = strategies[index].outcome_for(sites, context)
            weights[(outcome, context, lam)] = context_mass * x
    return HiddenVariableModel(sites, tuple(f"s{i}" for i in indices), weights)


# ---------------------------------------------------------------------------
# The two-site anti-correlation obstruction


@dataclass(frozen=True)
class EprReport:
    """Single-valued completions of the anti-correlated model break outcome independence."""

    marginal: Fraction
    pinned_by_partner: Fraction
    oi_single_state: PropertyVerdict
    escape_sd: PropertyVerdict
    escape_li: PropertyVerdict
    escape_oi: PropertyVerdict
    escape_equivalent: PropertyVerdict
    confirmed: bool

    def to_dict(self) -> dict:
        return {
            "kind": "epr-report",
            "marginal": str(self.marginal),
            "pinned_by_partner": str(self.pinned_by_partner),
            "oi_single_state": self.oi_single_state.to_dict(),
            "escape_sd": self.escape_sd.to_dict(),
            "escape_li": self.escape_li.to_dict(),
            "escape_oi": self.escape_oi.to_dict(),
            "escape_equivalent": self.escape_equivalent.to_dict(),
            "confirmed": self.confirmed,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "EprReport":
        return cls(
            marginal=Fraction(data["marginal"]),
            pinned_by_partner=Fraction(data["pinned_by_partner"]),
            oi_single_state=PropertyVerdict.from_dict(data["oi_single_state"]),
            escape_sd=PropertyVerdict.from_dict(data["escape_sd"]),
            escape_li=PropertyVerdict.from_dict(data["escape_li"]),
            escape_oi=PropertyVerdict.from_dict(data["escape_oi"]),
            escape_equivalent=PropertyVerdict.from_dict(data["escape_equivalent"]),
            confirmed=bool(data["confirmed"]),
        )


def verify_epr() -> EprReport:
    """Recompute the single-valued obstruction and its two-state escape."""
    e = epr_model()
    single = construct_sv(e)
    lam = single.lambda_set[0]
    context = Event(measurements={"a": "A", "b": "B"}, hidden=lam)
    marginal = single.cond_prob(Event(outcomes={"a": "+_a"}), context)
    pinned = single.cond_prob(
        Event(outcomes={"a": "+_a"}),
        Event(measurements={"a": "A", "b": "B"}, outcomes={"b": "-_b"}, hidden=lam),
    )
    oi_single = check_outcome_independence(single)

    escape = epr_escape_hvm()
    escape_sd = check_strong_determinism(escape)
    escape_li = check_lambda_independence(escape)
    escape_oi = check_outcome_independence(escape)
    escape_equivalent = equivalent_empirical(e, escape)
    confirmed = (
        marginal == Fraction(1, 2)
        and pinned == 1
        and marginal != pinned
        and not oi_single.holds
        and escape_sd.holds
        and escape_li.holds
        and escape_oi.holds
        and escape_equivalent.holds
    )
    return EprReport(
        marginal=marginal,
        pinned_by_partner=pinned,
        oi_single_state=oi_single,
        escape_sd=escape_sd,
        escape_li=escape_li,
        escape_oi=escape_oi,
        escape_equivalent=escape_equivalent,
        confirmed=confirmed,
    )


# ---------------------------------------------------------------------------
# The three-direction obstruction


_K_SETS: tuple[frozenset[int], ...] = (
    frozenset({1, 4, 5, 8}),
    frozenset({1, 2, 5, 6}),
    frozenset({1, 2, 3, 4}),
)
_L_SETS: tuple[frozenset[int], ...] = (
    frozenset({2, 3, 6, 7}),
    frozenset({3, 4, 7, 8}),
    frozenset({5, 6, 7, 8}),
)


@dataclass(frozen=True)
class CertificateEquation:
    """One agreement equation: p of its atoms equals the empirical agreement rate."""

    i: int
    j: int
    atoms: tuple[int, ...]
    plus_plus: Fraction
    minus_minus: Fraction

    @property
    def rhs(self) -> Fraction:
        return self.plus_plus + self.minus_minus

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "atoms": list(self.atoms),
            "plus_plus": str(self.plus_plus),
            "minus_minus": str(self.minus_minus),
            "rhs": str(self.rhs),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CertificateEquation":
        return cls(
            i=int(data["i"]),
            j=int(data["j"]),
            atoms=tuple(int(a) for a in data["atoms"]),
            plus_plus=Fraction(data["plus_plus"]),
            minus_minus=Fraction(data["minus_minus"]),
        )


@dataclass(frozen=True)
class BellCertificate:
    """Three equations over eight response atoms that cannot all hold.

    Atoms 1..8 are the joint deterministic response types compatible with
    perfect anti-correlation on equal directions: atom k fixes the first
    site's answer to each direction (and thereby the second site's). k_sets
    and l_sets list, per direction, the atoms answering + at the first and
    second site respectively. Each equation equates the probability of its
    atom set with an empirically fixed agreement rate; summing all three
    counts each appearing atom exactly twice, so the atom probabilities would
    have to total `aggregate_value`, which exceeds 1.
    """

    k_sets: tuple[tuple[int, ...], ...]
    l_sets: tuple[tuple[int, ...], ...]
    equations: tuple[CertificateEquation, ...]
    aggregate_atoms: tuple[int, ...]
    atoms_counted_twice: bool
    aggregate_value: Fraction
    impossible: bool

    def to_dict(self) -> dict:
        return {
            "kind": "bell-certificate",
            "k_sets": [list(s) for s in self.k_sets],
            "l_sets": [list(s) for s in self.l_sets],
            "equations": [eq.to_dict() for eq in self.equations],
            "aggregate_atoms": list(self.aggregate_atoms),
            "atoms_counted_twice": self.atoms_counted_twice,
            "aggregate_value": str(self.aggregate_value),
            "impossible": self.impossible,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "BellCertificate":
        return cls(
            k_sets=tuple(tuple(int(a) for a in s) for s in data["k_sets"]),
            l_sets=tuple(tuple(int(a) for a in s) for s in data["l_sets"]),
            equations=tuple(CertificateEquation.from_dict(eq) for eq in data["equations"]),
            aggregate_atoms=tuple(int(a) for a in data["aggregate_atoms"]),
            atoms_counted_twice=bool(data["atoms_counted_twice"]),
            aggregate_value=Fraction(data["aggregate_value"]),
            impossible=bool(data["impossible"]),
        )


def bell_certificate() -> BellCertificate:
    """Derive the three-equation counting argument from the model's own table."""
    e = bell_model()
    equations = []
    for i, j in ((1, 2), (2, 3), (3, 1)):
        atoms = tuple(sorted(_K_SETS[i - 1] & _L_SETS[j - 1])) + tuple(
            sorted(_L_SETS[i - 1] & _K_SETS[j - 1])
        )
        given = Event(measurements={"A": str(i), "B": str(j)})
        plus_plus = e.cond_prob(Event(outcomes={"A": "+", "B": "+"}), given)
        minus_minus = e.cond_prob(Event(outcomes={"A": "-", "B": "-"}), given)
        equations.append(
            CertificateEquation(i=i, j=j, atoms=atoms, plus_plus=plus_plus, minus_minus=minus_minus)
        )
    counts = Counter(atom for eq in equations for atom in eq.atoms)
    atoms_counted_twice = all(count == 2 for count in counts.values())
    total = sum((eq.rhs for eq in equations), ZERO)
    aggregate_value = total / 2
    return BellCertificate(
        k_sets=tuple(tuple(sorted(s)) for s in _K_SETS),
        l_sets=tuple(tuple(sorted(s)) for s in _L_SETS),
        equations=tuple(equations),
        aggregate_atoms=tuple(sorted(counts)),
        atoms_counted_twice=atoms_counted_twice,
        aggregate_value=aggregate_value,
        impossible=atoms_counted_twice and aggregate_value > 1,
    )


@dataclass(frozen=True)
class BellEscapeReport:
    """The single-state completion keeps lambda-independence and parameter
    independence while failing outcome independence."""

    li: PropertyVerdict
    pi: PropertyVerdict
    oi: PropertyVerdict
    conditional_with_partner: Fraction
    conditional_alone: Fraction
    confirmed: bool

    def to_dict(self) -> dict:
        return {
            "kind": "bell-escape",
            "li": self.li.to_dict(),
            "pi": self.pi.to_dict(),
            "oi": self.oi.to_dict(),
            "conditional_with_partner": str(self.conditional_with_partner),
            "conditional_alone": str(self.conditional_alone),
            "confirmed": self.confirmed,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "BellEscapeReport":
        return cls(
            li=PropertyVerdict.from_dict(data["li"]),
            pi=PropertyVerdict.from_dict(data["pi"]),
            oi=PropertyVerdict.from_dict(data["oi"]),
            conditional_with_partner=Fraction(data["conditional_with_partner"]),
            conditional_alone=Fraction(data["conditional_alone"]),
            confirmed=bool(data["confirmed"]),
        )


def bell_pi_escape() -> BellEscapeReport:
    """Check which properties survive on the single-state completion."""
    h = construct_sv(bell_model())
    lam = h.lambda_set[0]
    li = check_lambda_independence(h)
    pi = check_parameter_independence(h)
    oi = check_outcome_independence(h)
    with_partner = h.cond_prob(
        Event(outcomes={"A": "+"}),
        Event(measurements={"A": "1", "B": "1"}, outcomes={"B": "-"}, hidden=lam),
    )
    alone = h.cond_prob(
        Event(outcomes={"A": "+"}), Event(measurements={"A": "1", "B": "1"}, hidden=lam)
    )
    confirmed = li.holds and pi.holds and not oi.holds and with_partner != alone
    return BellEscapeReport(
        li=li,
        pi=pi,
        oi=oi,
        conditional_with_partner=with_partner,
        conditional_alone=alone,
        confirmed=confirmed,
    )


@dataclass(frozen=True)
class BellReport:
    """Combined result of the requested impossibility routes."""

    certificate: BellCertificate | None
    polytope: PolytopeResult | None
    escape: BellEscapeReport
    confirmed: bool

    def to_dict(self) -> dict:
        return {
            "kind": "bell-report",
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "polytope": None if self.polytope is None else self.polytope.to_dict(),
            "escape": self.escape.to_dict(),
            "confirmed": self.confirmed,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "BellReport":
        certificate = data.get("certificate")
        polytope = data.get("polytope")
        return cls(
            certificate=None if certificate is None else BellCertificate.from_dict(certificate),
            polytope=None if polytope is None else PolytopeResult.from_dict(polytope),
            escape=BellEscapeReport.from_dict(data["escape"]),
            confirmed=bool(data["confirmed"]),
        )


def verify_bell(method: str = "both", guard: int = DEFAULT_GUARD) -> BellReport:
    """Run the certificate route, the polytope route, or both."""
    if method not in ("certificate", "polytope", "both"):
        raise InputError(f"unknown method {method!r}; expected certificate, polytope, or both")
    certificate = bell_certificate() if method in ("certificate", "both") else None
    polytope = (
        local_polytope_feasibility(bell_model(), guard) if method in ("polytope", "both") else None
    )
    escape = bell_pi_escape()
    confirmed = escape.confirmed
    if certificate is not None:
        confirmed = confirmed and certificate.impossible
    if polytope is not None:
        confirmed = confirmed and not polytope.feasible
    return BellReport(certificate=certificate, polytope=polytope, escape=escape, confirmed=confirmed)


# ---------------------------------------------------------------------------
# The orthogonality-table obstruction


@dataclass(frozen=True)
class KsTable:
    """Columns of measurement labels; a coloring must pick one winner per column."""

    columns: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        columns = tuple(tuple(column) for column in self.columns)
        if not columns:
            raise InputError("a table needs at least one column")
        heights = {len(column) for column in columns}
        if heights == {0} or len(heights) != 1:
            raise InputError("all columns must share one nonzero height")
        for column in columns:
            for label in column:
                if not isinstance(label, str) or not label:
                    raise InputError(f"bad label {label!r} in column {column}")
            if len(set(column)) != len(column):
                raise InputError(f"duplicate label within column {column}")
        object.__setattr__(self, "columns", columns)

    @property
    def height(self) -> int:
        return len(self.columns[0])

    def labels(self) -> tuple[str, ...]:
        """Distinct labels in first-appearance order."""
        return tuple(dict.fromkeys(itertools.chain.from_iterable(self.columns)))

    def label_counts(self) -> tuple[tuple[str, int], ...]:
        counts = Counter(itertools.chain.from_iterable(self.columns))
        return tuple((label, counts[label]) for label in self.labels())

    def to_dict(self) -> dict:
        return {"kind": "ks-table", "columns": [list(column) for column in self.columns]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "KsTable":
        return cls(tuple(tuple(column) for column in data["columns"]))


def ks_table() -> KsTable:
    """The canonical 9-column, 18-label table behind `ks_model`."""
    return KsTable(_KS_COLUMNS)


@dataclass(frozen=True)
class KsColoring:
    """A 0/1 value per label, in the table's label order."""

    assignment: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.assignment)

    def is_valid_for(self, table: KsTable) -> bool:
        values = self.as_dict()
        try:
            return all(sum(values[label] for label in column) == 1 for column in table.columns)
        except KeyError:
            return False

    def to_dict(self) -> dict:
        return {"kind": "ks-coloring", "assignment": [[label, value] for label, value in self.assignment]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "KsColoring":
        return cls(tuple((label, int(value)) for label, value in data["assignment"]))


def ks_coloring_candidates(table: KsTable) -> int:
    """Size of the winner-pattern space the search enumerates."""
    return table.height ** len(table.columns)


def ks_search_colorings(table: KsTable, guard: int = DEFAULT_GUARD) -> list[KsColoring]:
    """Exhaustively enumerate winner patterns; keep the globally consistent ones.

    A pattern picks one winner per column. It is consistent exactly when every
    label of every column is in the winner set precisely if it is that
    column's winner; consistent patterns correspond one-to-one with valid
    colorings (winner labels get 1, all others 0).
    """
    if not isinstance(table, KsTable):
        raise InputError("ks_search_colorings expects a KsTable")
    labels = table.labels()
    if len(labels) > 30:
        raise SizeGuardError("coloring search label set", len(labels), 30)
    candidates = ks_coloring_candidates(table)
    if candidates > guard:
        raise SizeGuardError("coloring candidate enumeration", candidates, guard)

    bit = {label: 1 << k for k, label in enumerate(labels)}
    column_masks = []
    winner_masks = []
    for column in table.columns:
        mask = 0
        for label in column:
            mask |= bit[label]
        column_masks.append(mask)
        winner_masks.append(tuple(bit[label] for label in column))

    n_columns = len(table.columns)
    found = []
    for choice in itertools.product(*winner_masks):
        union = 0
        for winner in choice:
            union |= winner
        for ci in range(n_columns):
            if column_masks[ci] & union != choice[ci]:
                break
        else:
            found.append(
                KsColoring(tuple((label, 1 if bit[label] & union else 0) for label in labels))
            )
    return found


@dataclass(frozen=True)
class KsParityReport:
    """Occurrence counts versus column count: all even against odd is conclusive."""

    label_counts: tuple[tuple[str, int], ...]
    column_count: int
    all_counts_even: bool
    column_count_odd: bool
    verdict: str

    @property
    def conclusive(self) -> bool:
        return self.verdict == "impossible"

    def to_dict(self) -> dict:
        return {
            "kind": "ks-parity",
            "label_counts": [[label, count] for label, count in self.label_counts],
            "column_count": self.column_count,
            "all_counts_even": self.all_counts_even,
            "column_count_odd": self.column_count_odd,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "KsParityReport":
        return cls(
            label_counts=tuple((label, int(count)) for label, count in data["label_counts"]),
            column_count=int(data["column_count"]),
            all_counts_even=bool(data["all_counts_even"]),
            column_count_odd=bool(data["column_count_odd"]),
            verdict=data["verdict"],
        )


def ks_parity_certificate(table: KsTable) -> KsParityReport:
    """Counting argument: a valid coloring marks one winner per column, so the
    winners' occurrence total is odd when the column count is odd; but if every
    label occurs an even number of times, any label subset has even total."""
    if not isinstance(table, KsTable):
        raise InputError("ks_parity_certificate expects a KsTable")
    counts = table.label_counts()
    all_even = all(count % 2 == 0 for _, count in counts)
    odd_columns = len(table.columns) % 2 == 1
    verdict = "impossible" if (all_even and odd_columns) else "undecided"
    return KsParityReport(
        label_counts=counts,
        column_count=len(table.columns),
        all_counts_even=all_even,
        column_count_odd=odd_columns,
        verdict=verdict,
    )


@dataclass(frozen=True)
class KsReport:
    """Combined result of the requested table obstruction routes."""

    exchangeability: PropertyVerdict
    winner_pattern_ok: bool
    non_contextuality: PropertyVerdict
    coloring_candidates: int | None
    coloring_count: int | None
    parity: KsParityReport | None
    confirmed: bool

    def to_dict(self) -> dict:
        return {
            "kind": "ks-report",
            "exchangeability": self.exchangeability.to_dict(),
            "winner_pattern_ok": self.winner_pattern_ok,
            "non_contextuality": self.non_contextuality.to_dict(),
            "coloring_candidates": self.coloring_candidates,
            "coloring_count": self.coloring_count,
            "parity": None if self.parity is None else self.parity.to_dict(),
            "confirmed": self.confirmed,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "KsReport":
        parity = data.get("parity")
        candidates = data.get("coloring_candidates")
        count = data.get("coloring_count")
        return cls(
            exchangeability=PropertyVerdict.from_dict(data["exchangeability"]),
            winner_pattern_ok=bool(data["winner_pattern_ok"]),
            non_contextuality=PropertyVerdict.from_dict(data["non_contextuality"]),
            coloring_candidates=None if candidates is None else int(candidates),
            coloring_count=None if count is None else int(count),
            parity=None if parity is None else KsParityReport.from_dict(parity),
            confirmed=bool(data["confirmed"]),
        )


def verify_ks(method: str = "both", guard: int = DEFAULT_GUARD) -> KsReport:
    """Check the canonical table model and run the requested obstruction routes."""
    if method not in ("coloring", "parity", "both"):
        raise InputError(f"unknown method {method!r}; expected coloring, parity, or both")
    e = ks_model()
    exchangeability = check_exchangeability(e)
    pattern_ok = True
    for context in sorted(e.context_weights(), key=e.context_sort_key):
        distribution = e.outcome_distribution(context)
        if len(distribution) != 1:
            pattern_ok = False
            break
        ((outcome, p),) = distribution.items()
        if p != 1 or sum(1 for a in outcome if a == "1") != 1:
            pattern_ok = False
            break
    non_contextuality = check_non_contextuality(e)

    table = ks_table()
    candidates = count = None
    if method in ("coloring", "both"):
        candidates = ks_coloring_candidates(table)
        count = len(ks_search_colorings(table, guard))
    parity = ks_parity_certificate(table) if method in ("parity", "both") else None

    confirmed = exchangeability.holds and pattern_ok and not non_contextuality.holds
    if count is not None:
        confirmed = confirmed and count == 0
    if parity is not None:
        confirmed = confirmed and parity.conclusive
    return KsReport(
        exchangeability=exchangeability,
        winner_pattern_ok=pattern_ok,
        non_contextuality=non_contextuality,
        coloring_candidates=candidates,
        coloring_count=count,
        parity=parity,
        confirmed=confirmed,
    )
