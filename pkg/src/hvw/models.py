"""Finite probability models over measurement scenarios, with exact weights.

Two model kinds share one vocabulary. An *empirical model* assigns an exact
rational weight to each pair (outcome tuple, context), where a context picks
one measurement per site and an outcome tuple picks one outcome per site. A
*hidden-variable model* additionally carries a finite set of hidden states and
weights triples (outcome tuple, context, hidden state). All weights are
nonnegative `fractions.Fraction` values summing to exactly 1; nothing in this
package ever rounds.

Events are partial assignments (some sites' outcomes, some sites'
measurements, optionally a hidden state). `event_prob` and `cond_prob` give
exact unconditional and conditional probabilities, and the module-level
`equivalent_*` functions decide whether two models make identical predictions:
the same non-null contexts and the same conditional outcome distributions on
each of them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .errors import (
    InputError,
    ModelFormatError,
    NegativeWeightError,
    NullConditioningError,
    SignatureMismatchError,
    UnknownLabelError,
    WeightSumError,
)

OutcomeTuple = tuple[str, ...]
Context = tuple[str, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

# Ceiling on enumerations (deterministic strategies, coloring candidates,
# constructed hidden-state sets). Overridable per call and via the CLI.
DEFAULT_GUARD = 10**6


def _as_fraction(value: object, where: object) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"weight at {where!r} is a float; weights must be exact rationals")
    try:
        return Fraction(value)  # type: ignore[arg-type]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"weight at {where!r} is not a rational: {value!r}") from exc


def _unique_labels(labels: Sequence[str], what: str) -> tuple[str, ...]:
    out = tuple(labels)
    if not out:
        raise InputError(f"{what} must not be empty")
    for label in out:
        if not isinstance(label, str) or not label:
            raise InputError(f"{what} contains a non-string or empty label: {label!r}")
    if len(set(out)) != len(out):
        raise InputError(f"{what} contains duplicate labels: {out}")
    return out


@dataclass(frozen=True)
class Site:
    """One party in a scenario: a name, its measurements, its outcomes."""

    name: str
    measurements: tuple[str, ...]
    outcomes: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise InputError(f"site name must be a nonempty string, got {self.name!r}")
        object.__setattr__(self, "measurements", _unique_labels(self.measurements, f"site {self.name}: measurements"))
        object.__setattr__(self, "outcomes", _unique_labels(self.outcomes, f"site {self.name}: outcomes"))


@dataclass(frozen=True)
class Event:
    """A partial assignment: outcomes and measurements by site name.

    `outcomes` and `measurements` map site names to labels; `hidden` pins the
    hidden state (hidden-variable models only). Empty event = sure event.
    """

    outcomes: Mapping[str, str] = field(default_factory=dict)
    measurements: Mapping[str, str] = field(default_factory=dict)
    hidden: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", dict(self.outcomes))
        object.__setattr__(self, "measurements", dict(self.measurements))


def merge_events(first: Event, second: Event) -> Event | None:
    """Conjunction of two events, or None if they contradict each other."""
    outcomes = dict(second.outcomes)
    for name, label in first.outcomes.items():
        if outcomes.get(name, label) != label:
            return None
        outcomes[name] = label
    measurements = dict(second.measurements)
    for name, label in first.measurements.items():
        if measurements.get(name, label) != label:
            return None
        measurements[name] = label
    hidden = first.hidden
    if hidden is None:
        hidden = second.hidden
    elif second.hidden is not None and second.hidden != hidden:
        return None
    return Event(outcomes=outcomes, measurements=measurements, hidden=hidden)


@dataclass(frozen=True)
class Witness:
    """Two event descriptions whose probabilities disagree."""

    lhs_desc: str
    rhs_desc: str
    lhs: Fraction
    rhs: Fraction
    where: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.lhs == self.rhs:
            raise ValueError("witness values must genuinely differ")

    def describe(self) -> str:
        return f"{self.lhs_desc} = {self.lhs} but {self.rhs_desc} = {self.rhs}"

    def to_dict(self) -> dict:
        return {
            "lhs_desc": self.lhs_desc,
            "rhs_desc": self.rhs_desc,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "where": list(self.where),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Witness":
        return cls(
            lhs_desc=data["lhs_desc"],
            rhs_desc=data["rhs_desc"],
            lhs=Fraction(data["lhs"]),
            rhs=Fraction(data["rhs"]),
            where=tuple(data.get("where", ())),
        )


@dataclass(frozen=True)
class PropertyVerdict:
    """Outcome of one property check: holds, or fails with a witness."""

    holds: bool
    witness: Witness | None = None

    def __post_init__(self) -> None:
        if self.holds and self.witness is not None:
            raise ValueError("a holding verdict must not carry a witness")
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict must carry a witness")

    def describe(self) -> str:
        if self.holds:
            return "holds"
        assert self.witness is not None
        return f"fails: {self.witness.describe()}"

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PropertyVerdict":
        witness = data.get("witness")
        return cls(
            holds=bool(data["holds"]),
            witness=None if witness is None else Witness.from_dict(witness),
        )


def describe_context(sites: Sequence[Site], context: Context) -> str:
    return ", ".join(f"{s.name}={m}" for s, m in zip(sites, context))


def describe_outcome(sites: Sequence[Site], outcome: OutcomeTuple) -> str:
    return ", ".join(f"{s.name}={a}" for s, a in zip(sites, outcome))


class _BaseModel:
    """Shared site bookkeeping, validation, and event probabilities."""

    def __init__(self, sites: Sequence[Site]) -> None:
        sites = tuple(sites)
        if not sites:
            raise InputError("a model needs at least one site")
        for site in sites:
            if not isinstance(site, Site):
                raise InputError(f"expected a Site, got {site!r}")
        names = [site.name for site in sites]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate site names: {names}")
        self.sites: tuple[Site, ...] = sites
        self._site_index = {site.name: i for i, site in enumerate(sites)}
        self._meas_index = tuple({m: i for i, m in enumerate(site.measurements)} for site in sites)
        self._out_index = tuple({a: i for i, a in enumerate(site.outcomes)} for site in sites)

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    def site_index(self, name: str) -> int:
        try:
            return self._site_index[name]
        except KeyError:
            raise UnknownLabelError(f"unknown site name: {name!r}") from None

    def context_tuples(self) -> Iterator[Context]:
        """All contexts in canonical (declared-label lexicographic) order."""
        return itertools.product(*(site.measurements for site in self.sites))

    def outcome_tuples(self) -> Iterator[OutcomeTuple]:
        """All outcome tuples in canonical order."""
        return itertools.product(*(site.outcomes for site in self.sites))

    def n_context_tuples(self) -> int:
        return math.prod(len(site.measurements) for site in self.sites)

    def n_outcome_tuples(self) -> int:
        return math.prod(len(site.outcomes) for site in self.sites)

    def context_sort_key(self, context: Context) -> tuple[int, ...]:
        return tuple(self._meas_index[i][m] for i, m in enumerate(context))

    def outcome_sort_key(self, outcome: OutcomeTuple) -> tuple[int, ...]:
        return tuple(self._out_index[i][a] for i, a in enumerate(outcome))

    def check_context(self, context: Sequence[str]) -> Context:
        """Validate and canonicalize a context, one measurement per site."""
        context = tuple(context)
        if len(context) != self.n_sites:
            raise ModelFormatError(f"context {context} does not have one entry per site")
        for i, label in enumerate(context):
            if label not in self._meas_index[i]:
                raise UnknownLabelError(f"unknown measurement {label!r} at site {self.sites[i].name!r}")
        return context

    def check_outcome_tuple(self, outcome: Sequence[str]) -> OutcomeTuple:
        """Validate and canonicalize an outcome tuple, one outcome per site."""
        outcome = tuple(outcome)
        if len(outcome) != self.n_sites:
            raise ModelFormatError(f"outcome tuple {outcome} does not have one entry per site")
        for i, label in enumerate(outcome):
            if label not in self._out_index[i]:
                raise UnknownLabelError(f"unknown outcome {label!r} at site {self.sites[i].name!r}")
        return outcome

    def _event_constraints(self, event: Event) -> tuple[dict[int, str], dict[int, str]]:
        outcome_by_index: dict[int, str] = {}
        for name, label in event.outcomes.items():
            i = self.site_index(name)
            if label not in self._out_index[i]:
                raise UnknownLabelError(f"unknown outcome {label!r} at site {name!r}")
            outcome_by_index[i] = label
        measurement_by_index: dict[int, str] = {}
        for name, label in event.measurements.items():
            i = self.site_index(name)
            if label not in self._meas_index[i]:
                raise UnknownLabelError(f"unknown measurement {label!r} at site {name!r}")
            measurement_by_index[i] = label
        return outcome_by_index, measurement_by_index

    def cond_prob(self, target: Event, given: Event) -> Fraction:
        """Exact conditional probability of `target` given `given`."""
        denominator = self.event_prob(given)
        if denominator == 0:
            raise NullConditioningError(f"conditioning event has probability 0: {given}")
        merged = merge_events(target, given)
        numerator = ZERO if merged is None else self.event_prob(merged)
        return numerator / denominator

    def event_prob(self, event: Event) -> Fraction:  # pragma: no cover - abstract
        raise NotImplementedError


class EmpiricalModel(_BaseModel):
    """A weight for every (outcome tuple, context) pair, summing to 1.

    Treat instances as immutable; aggregate views are cached on first use.
    """

    def __init__(
        self,
        sites: Sequence[Site],
        weights: Mapping[tuple[Sequence[str], Sequence[str]], object],
    ) -> None:
        super().__init__(sites)
        cleaned: dict[tuple[OutcomeTuple, Context], Fraction] = {}
        total = ZERO
        for key, raw in weights.items():
            try:
                outcome_part, context_part = key
            except (TypeError, ValueError) as exc:
                raise ModelFormatError(f"weight key {key!r} is not an (outcome, context) pair") from exc
            outcome = self.check_outcome_tuple(outcome_part)
            context = self.check_context(context_part)
            value = _as_fraction(raw, key)
            if value < 0:
                raise NegativeWeightError((outcome, context), value)
            total += value
            if value:
                cleaned[(outcome, context)] = value
        if total != 1:
            raise WeightSumError(total)
        self._weights = cleaned
        self._ctx_mass: dict[Context, Fraction] | None = None
        self._by_context: dict[Context, dict[OutcomeTuple, Fraction]] | None = None
        self._dist_cache: dict[Context, Mapping[OutcomeTuple, Fraction]] = {}

    @property
    def weights(self) -> Mapping[tuple[OutcomeTuple, Context], Fraction]:
        """Read-only support of the joint weight table (zero entries omitted)."""
        return MappingProxyType(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmpiricalModel):
            return NotImplemented
        return self.sites == other.sites and self._weights == other._weights

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"EmpiricalModel({len(self.sites)} sites, support {len(self._weights)})"

    def event_prob(self, event: Event) -> Fraction:
        """Exact probability that every constraint in `event` is realized."""
        if event.hidden is not None:
            raise InputError("empirical models have no hidden states to condition on")
        outcome_by_index, measurement_by_index = self._event_constraints(event)
        total = ZERO
        for (outcome, context), weight in self._weights.items():
            if all(outcome[i] == a for i, a in outcome_by_index.items()) and all(
                context[i] == m for i, m in measurement_by_index.items()
            ):
                total += weight
        return total

    def context_weights(self) -> Mapping[Context, Fraction]:
        """Marginal weight of each non-null context."""
        if self._ctx_mass is None:
            mass: dict[Context, Fraction] = {}
            for (_, context), weight in self._weights.items():
                mass[context] = mass.get(context, ZERO) + weight
            self._ctx_mass = mass
        return MappingProxyType(self._ctx_mass)

    def _context_table(self) -> dict[Context, dict[OutcomeTuple, Fraction]]:
        if self._by_context is None:
            table: dict[Context, dict[OutcomeTuple, Fraction]] = {}
            for (outcome, context), weight in self._weights.items():
                table.setdefault(context, {})[outcome] = weight
            self._by_context = table
        return self._by_context

    def outcome_distribution(self, context: Sequence[str]) -> Mapping[OutcomeTuple, Fraction]:
        """Conditional outcome distribution on a non-null context (sparse)."""
        context = self.check_context(context)
        cached = self._dist_cache.get(context)
        if cached is not None:
            return cached
        mass = self.context_weights().get(context, ZERO)
        if mass == 0:
            raise NullConditioningError(f"context {context} has probability 0")
        dist = MappingProxyType({o: w / mass for o, w in self._context_table()[context].items()})
        self._dist_cache[context] = dist
        return dist


class HiddenVariableModel(_BaseModel):
    """A weight for every (outcome tuple, context, hidden state), summing to 1.

    Treat instances as immutable; aggregate views are cached on first use.
    """

    def __init__(
        self,
        sites: Sequence[Site],
        lambda_set: Sequence[str],
        weights: Mapping[tuple[Sequence[str], Sequence[str], str], object],
    ) -> None:
        super().__init__(sites)
        self.lambda_set: tuple[str, ...] = _unique_labels(lambda_set, "hidden state set")
        self._lambda_index = {lam: i for i, lam in enumerate(self.lambda_set)}
        cleaned: dict[tuple[OutcomeTuple, Context, str], Fraction] = {}
        total = ZERO
        for key, raw in weights.items():
            try:
                outcome_part, context_part, lam = key
            except (TypeError, ValueError) as exc:
                raise ModelFormatError(f"weight key {key!r} is not an (outcome, context, hidden) triple") from exc
            outcome = self.check_outcome_tuple(outcome_part)
            context = self.check_context(context_part)
            if lam not in self._lambda_index:
                raise UnknownLabelError(f"unknown hidden state {lam!r}")
            value = _as_fraction(raw, key)
            if value < 0:
                raise NegativeWeightError((outcome, context, lam), value)
            total += value
            if value:
                cleaned[(outcome, context, lam)] = value
        if total != 1:
            raise WeightSumError(total)
        self._weights = cleaned
        self._ctx_mass: dict[Context, Fraction] | None = None
        self._ctx_lam_mass: dict[tuple[Context, str], Fraction] | None = None
        self._by_context: dict[Context, dict[OutcomeTuple, Fraction]] | None = None
        self._by_context_lambda: dict[tuple[Context, str], dict[OutcomeTuple, Fraction]] | None = None
        self._site_meas_mass: dict[tuple[int, str, str], Fraction] | None = None
        self._site_out_mass: dict[tuple[int, str, str, str], Fraction] | None = None
        self._dist_cache: dict[object, Mapping[OutcomeTuple, Fraction]] = {}

    @property
    def weights(self) -> Mapping[tuple[OutcomeTuple, Context, str], Fraction]:
        """Read-only support of the joint weight table (zero entries omitted)."""
        return MappingProxyType(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HiddenVariableModel):
            return NotImplemented
        return (
            self.sites == other.sites
            and self.lambda_set == other.lambda_set
            and self._weights == other._weights
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"HiddenVariableModel({len(self.sites)} sites, "
            f"{len(self.lambda_set)} hidden states, support {len(self._weights)})"
        )

    def check_lambda(self, lam: str) -> str:
        if lam not in self._lambda_index:
            raise UnknownLabelError(f"unknown hidden state {lam!r}")
        return lam

    def event_prob(self, event: Event) -> Fraction:
        """Exact probability that every constraint in `event` is realized."""
        outcome_by_index, measurement_by_index = self._event_constraints(event)
        hidden = None if event.hidden is None else self.check_lambda(event.hidden)
        total = ZERO
        for (outcome, context, lam), weight in self._weights.items():
            if hidden is not None and lam != hidden:
                continue
            if all(outcome[i] == a for i, a in outcome_by_index.items()) and all(
                context[i] == m for i, m in measurement_by_index.items()
            ):
                total += weight
        return total

    def context_weights(self) -> Mapping[Context, Fraction]:
        """Marginal weight of each non-null context (hidden states summed out)."""
        if self._ctx_mass is None:
            mass: dict[Context, Fraction] = {}
            for (_, context, _), weight in self._weights.items():
                mass[context] = mass.get(context, ZERO) + weight
            self._ctx_mass = mass
        return MappingProxyType(self._ctx_mass)

    def context_lambda_weights(self) -> Mapping[tuple[Context, str], Fraction]:
        """Joint weight of each (context, hidden state) pair with positive mass."""
        if self._ctx_lam_mass is None:
            mass: dict[tuple[Context, str], Fraction] = {}
            for (_, context, lam), weight in self._weights.items():
                key = (context, lam)
                mass[key] = mass.get(key, ZERO) + weight
            self._ctx_lam_mass = mass
        return MappingProxyType(self._ctx_lam_mass)

    def lambda_distribution(self, context: Sequence[str]) -> Mapping[str, Fraction]:
        """Conditional distribution of the hidden state on a non-null context."""
        context = self.check_context(context)
        mass = self.context_weights().get(context, ZERO)
        if mass == 0:
            raise NullConditioningError(f"context {context} has probability 0")
        dist: dict[str, Fraction] = {}
        for (ctx, lam), weight in self.context_lambda_weights().items():
            if ctx == context:
                dist[lam] = weight / mass
        return dist

    def _context_table(self) -> dict[Context, dict[OutcomeTuple, Fraction]]:
        if self._by_context is None:
            table: dict[Context, dict[OutcomeTuple, Fraction]] = {}
            for (outcome, context, _), weight in self._weights.items():
                row = table.setdefault(context, {})
                row[outcome] = row.get(outcome, ZERO) + weight
            self._by_context = table
        return self._by_context

    def _context_lambda_table(self) -> dict[tuple[Context, str], dict[OutcomeTuple, Fraction]]:
        if self._by_context_lambda is None:
            table: dict[tuple[Context, str], dict[OutcomeTuple, Fraction]] = {}
            for (outcome, context, lam), weight in self._weights.items():
                table.setdefault((context, lam), {})[outcome] = weight
            self._by_context_lambda = table
        return self._by_context_lambda

    def outcome_distribution(
        self, context: Sequence[str], lam: str | None = None
    ) -> Mapping[OutcomeTuple, Fraction]:
        """Conditional outcome distribution given a context, optionally a state."""
        context = self.check_context(context)
        key: object = context if lam is None else (context, self.check_lambda(lam))
        cached = self._dist_cache.get(key)
        if cached is not None:
            return cached
        if lam is None:
            mass = self.context_weights().get(context, ZERO)
            row = self._context_table().get(context)
        else:
            mass = self.context_lambda_weights().get((context, lam), ZERO)
            row = self._context_lambda_table().get((context, lam))
        if mass == 0 or row is None:
            raise NullConditioningError(f"conditioning event {key} has probability 0")
        dist = MappingProxyType({o: w / mass for o, w in row.items()})
        self._dist_cache[key] = dist
        return dist

    def site_measurement_mass(self) -> Mapping[tuple[int, str, str], Fraction]:
        """Joint mass of (measurement chosen at site i, hidden state) pairs.

        Keyed by (site index, measurement label, hidden state); everything at
        the other sites is summed out. Positive entries only.
        """
        if self._site_meas_mass is None:
            mass: dict[tuple[int, str, str], Fraction] = {}
            for (_, context, lam), weight in self._weights.items():
                for i, m in enumerate(context):
                    key = (i, m, lam)
                    mass[key] = mass.get(key, ZERO) + weight
            self._site_meas_mass = mass
        return MappingProxyType(self._site_meas_mass)

    def site_outcome_mass(self) -> Mapping[tuple[int, str, str, str], Fraction]:
        """Joint mass of (measurement at site i, its outcome, hidden state).

        Keyed by (site index, measurement, outcome, hidden state), other sites
        summed out. Positive entries only.
        """
        if self._site_out_mass is None:
            mass: dict[tuple[int, str, str, str], Fraction] = {}
            for (outcome, context, lam), weight in self._weights.items():
                for i, m in enumerate(context):
                    key = (i, m, outcome[i], lam)
                    mass[key] = mass.get(key, ZERO) + weight
            self._site_out_mass = mass
        return MappingProxyType(self._site_out_mass)


def project_to_empirical(hvm: HiddenVariableModel) -> EmpiricalModel:
    """Sum the hidden states out of a hidden-variable model."""
    if not isinstance(hvm, HiddenVariableModel):
        raise InputError("project_to_empirical expects a hidden-variable model")
    joint: dict[tuple[OutcomeTuple, Context], Fraction] = {}
    for (outcome, context, _), weight in hvm.weights.items():
        key = (outcome, context)
        joint[key] = joint.get(key, ZERO) + weight
    return EmpiricalModel(hvm.sites, joint)


def _prediction_agreement(left: _BaseModel, right: _BaseModel) -> PropertyVerdict:
    if left.sites != right.sites:
        raise SignatureMismatchError("models do not share the same site signature")
    left_ctx = left.context_weights()  # type: ignore[attr-defined]
    right_ctx = right.context_weights()  # type: ignore[attr-defined]
    contexts = sorted(set(left_ctx) | set(right_ctx), key=left.context_sort_key)
    for context in contexts:
        left_mass = left_ctx.get(context, ZERO)
        right_mass = right_ctx.get(context, ZERO)
        ctx_desc = describe_context(left.sites, context)
        if (left_mass == 0) != (right_mass == 0):
            return PropertyVerdict(
                False,
                Witness(
                    lhs_desc=f"left p({ctx_desc})",
                    rhs_desc=f"right p({ctx_desc})",
                    lhs=left_mass,
                    rhs=right_mass,
                    where=tuple(context),
                ),
            )
        if left_mass == 0:
            continue
        left_dist = left.outcome_distribution(context)  # type: ignore[attr-defined]
        right_dist = right.outcome_distribution(context)  # type: ignore[attr-defined]
        for outcome in sorted(set(left_dist) | set(right_dist), key=left.outcome_sort_key):
            left_p = left_dist.get(outcome, ZERO)
            right_p = right_dist.get(outcome, ZERO)
            if left_p != right_p:
                out_desc = describe_outcome(left.sites, outcome)
                return PropertyVerdict(
                    False,
                    Witness(
                        lhs_desc=f"left p({out_desc} | {ctx_desc})",
                        rhs_desc=f"right p({out_desc} | {ctx_desc})",
                        lhs=left_p,
                        rhs=right_p,
                        where=tuple(context) + tuple(outcome),
                    ),
                )
    return PropertyVerdict(True)


def equivalent_empirical(empirical: EmpiricalModel, hvm: HiddenVariableModel) -> PropertyVerdict:
    """Do an empirical model and a hidden-variable model predict alike?

    Same non-null contexts and same conditional outcome distributions on each.
    On failure the witness names the first disagreement in canonical
    (context, outcome) order.
    """
    if not isinstance(empirical, EmpiricalModel):
        raise InputError("equivalent_empirical expects an empirical model first")
    if not isinstance(hvm, HiddenVariableModel):
        raise InputError("equivalent_empirical expects a hidden-variable model second")
    return _prediction_agreement(empirical, hvm)


def equivalent_hvm(first: HiddenVariableModel, second: HiddenVariableModel) -> PropertyVerdict:
    """Do two hidden-variable models predict alike (hidden states summed out)?"""
    if not isinstance(first, HiddenVariableModel) or not isinstance(second, HiddenVariableModel):
        raise InputError("equivalent_hvm expects two hidden-variable models")
    return _prediction_agreement(first, second)


def equivalent_models(left: _BaseModel, right: _BaseModel) -> PropertyVerdict:
    """Prediction agreement for any combination of model kinds."""
    if not isinstance(left, _BaseModel) or not isinstance(right, _BaseModel):
        raise InputError("equivalent_models expects two models")
    return _prediction_agreement(left, right)
