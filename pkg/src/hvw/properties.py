"""Property checks for finite models.

Seven checks apply to hidden-variable models:

* single-valuedness: exactly one hidden state.
* lambda-independence: the hidden state's conditional distribution is the
  same on every non-null context.
* strong determinism: given the hidden state, each site's outcome is a
  deterministic function of that site's own measurement.
* weak determinism: given the hidden state and the full context, the joint
  outcome tuple is deterministic.
* outcome independence: given context and hidden state, each site's outcome
  is conditionally independent of the other sites' outcomes. Checked in two
  equivalent forms (conditioning on partner outcomes, and factorization into
  site marginals); both are evaluated and must agree.
* parameter independence: given the hidden state, a site's outcome
  distribution depends only on that site's own measurement, not on the rest
  of the context.
* locality: given context and hidden state, the joint outcome distribution
  factors into per-site response distributions that depend only on each
  site's own measurement.

Two apply to empirical models:

* non-contextuality: a site's observed marginal for a measurement is the
  same in every non-null context containing it.
* exchangeability: permuting the sites (all sites must share identical
  measurement and outcome label lists) leaves every prediction unchanged.

Each check returns a `PropertyVerdict`; a failing verdict carries the first
violation found in a fixed canonical scan order, with exact values on both
sides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InputError
from .models import (
    ONE,
    ZERO,
    EmpiricalModel,
    HiddenVariableModel,
    PropertyVerdict,
    Site,
    Witness,
    describe_context,
    describe_outcome,
    project_to_empirical,
)


class PropertyId(Enum):
    """Stable names for every checkable property."""

    SINGLE_VALUEDNESS = "single-valuedness"
    LAMBDA_INDEPENDENCE = "lambda-independence"
    STRONG_DETERMINISM = "strong-determinism"
    WEAK_DETERMINISM = "weak-determinism"
    OUTCOME_INDEPENDENCE = "outcome-independence"
    PARAMETER_INDEPENDENCE = "parameter-independence"
    LOCALITY = "locality"
    NON_CONTEXTUALITY = "non-contextuality"
    EXCHANGEABILITY = "exchangeability"


HIDDEN_MODEL_PROPERTIES = frozenset(
    {
        PropertyId.SINGLE_VALUEDNESS,
        PropertyId.LAMBDA_INDEPENDENCE,
        PropertyId.STRONG_DETERMINISM,
        PropertyId.WEAK_DETERMINISM,
        PropertyId.OUTCOME_INDEPENDENCE,
        PropertyId.PARAMETER_INDEPENDENCE,
        PropertyId.LOCALITY,
    }
)

EMPIRICAL_MODEL_PROPERTIES = frozenset(
    {PropertyId.NON_CONTEXTUALITY, PropertyId.EXCHANGEABILITY}
)


@dataclass(frozen=True)
class Permutation:
    """A bijection on site indices; image[i] is where site i is sent."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(len(self.image))):
            raise InputError(f"not a permutation of 0..{len(self.image) - 1}: {self.image}")

    def apply(self, values: Sequence[str]) -> tuple[str, ...]:
        """Reorder a per-site tuple: entry i moves to position image[i]."""
        if len(values) != len(self.image):
            raise InputError(f"cannot apply a {len(self.image)}-site permutation to {values!r}")
        moved: list[str | None] = [None] * len(self.image)
        for i, j in enumerate(self.image):
            moved[j] = values[i]
        return tuple(moved)  # type: ignore[arg-type]

    def describe(self) -> str:
        return "(" + " ".join(str(j) for j in self.image) + ")"


def _require_hidden(model: object, name: str) -> HiddenVariableModel:
    if not isinstance(model, HiddenVariableModel):
        raise InputError(f"{name} applies to hidden-variable models")
    return model


def _require_empirical(model: object, name: str) -> EmpiricalModel:
    if not isinstance(model, EmpiricalModel):
        raise InputError(f"{name} applies to empirical models")
    return model


def _sorted_context_lambda(h: HiddenVariableModel) -> list[tuple[tuple[str, ...], str]]:
    lambda_rank = {lam: i for i, lam in enumerate(h.lambda_set)}
    return sorted(
        h.context_lambda_weights(),
        key=lambda key: (h.context_sort_key(key[0]), lambda_rank[key[1]]),
    )


def check_single_valuedness(model: HiddenVariableModel) -> PropertyVerdict:
    """Exactly one hidden state."""
    h = _require_hidden(model, "single-valuedness")
    if len(h.lambda_set) == 1:
        return PropertyVerdict(True)
    return PropertyVerdict(
        False,
        Witness(
            lhs_desc="number of hidden states",
            rhs_desc="number allowed by single-valuedness",
            lhs=Fraction(len(h.lambda_set)),
            rhs=ONE,
            where=h.lambda_set[:2],
        ),
    )


def check_lambda_independence(model: HiddenVariableModel) -> PropertyVerdict:
    """The hidden state's distribution is the same on every non-null context."""
    h = _require_hidden(model, "lambda-independence")
    contexts = sorted(h.context_weights(), key=h.context_sort_key)
    dists = [h.lambda_distribution(c) for c in contexts]
    for i in range(len(contexts)):
        for j in range(i + 1, len(contexts)):
            for lam in h.lambda_set:
                left = dists[i].get(lam, ZERO)
                right = dists[j].get(lam, ZERO)
                if left != right:
                    return PropertyVerdict(
                        False,
                        Witness(
                            lhs_desc=f"p(λ={lam} | {describe_context(h.sites, contexts[i])})",
                            rhs_desc=f"p(λ={lam} | {describe_context(h.sites, contexts[j])})",
                            lhs=left,
                            rhs=right,
                            where=(lam,),
                        ),
                    )
    return PropertyVerdict(True)


def check_strong_determinism(model: HiddenVariableModel) -> PropertyVerdict:
    """Given the hidden state, each site responds to its own measurement deterministically."""
    h = _require_hidden(model, "strong-determinism")
    meas_mass = h.site_measurement_mass()
    out_mass = h.site_outcome_mass()
    for i, site in enumerate(h.sites):
        for m in site.measurements:
            for lam in h.lambda_set:
                total = meas_mass.get((i, m, lam), ZERO)
                if total == 0:
                    continue
                if any(out_mass.get((i, m, a, lam), ZERO) == total for a in site.outcomes):
                    continue
                for a in site.outcomes:
                    value = out_mass.get((i, m, a, lam), ZERO)
                    if ZERO < value < total:
                        return PropertyVerdict(
                            False,
                            Witness(
                                lhs_desc=f"p({site.name}={a} | {site.name}={m}, λ={lam})",
                                rhs_desc="the point mass required by strong determinism",
                                lhs=value / total,
                                rhs=ONE,
                                where=(site.name, m, lam),
                            ),
                        )
    return PropertyVerdict(True)


def check_weak_determinism(model: HiddenVariableModel) -> PropertyVerdict:
    """Given context and hidden state, the whole outcome tuple is determined."""
    h = _require_hidden(model, "weak-determinism")
    for context, lam in _sorted_context_lambda(h):
        dist = h.outcome_distribution(context, lam)
        if any(p == 1 for p in dist.values()):
            continue
        for outcome in sorted(dist, key=h.outcome_sort_key):
            return PropertyVerdict(
                False,
                Witness(
                    lhs_desc=(
                        f"p({describe_outcome(h.sites, outcome)} | "
                        f"{describe_context(h.sites, context)}, λ={lam})"
                    ),
                    rhs_desc="the point mass required by weak determinism",
                    lhs=dist[outcome],
                    rhs=ONE,
                    where=(lam,),
                ),
            )
    return PropertyVerdict(True)


def _site_marginals(
    sites: tuple[Site, ...], dist: dict | object
) -> list[dict[str, Fraction]]:
    marginals: list[dict[str, Fraction]] = [dict() for _ in sites]
    for outcome, p in dist.items():  # type: ignore[union-attr]
        for i, a in enumerate(outcome):
            marginals[i][a] = marginals[i].get(a, ZERO) + p
    return marginals


def _oi_conditional_form(h: HiddenVariableModel) -> PropertyVerdict:
    for context, lam in _sorted_context_lambda(h):
        dist = h.outcome_distribution(context, lam)
        ctx_desc = describe_context(h.sites, context)
        marginals = _site_marginals(h.sites, dist)
        for i, site in enumerate(h.sites):
            rest_index = [
                {a: k for k, a in enumerate(other.outcomes)}
                for j, other in enumerate(h.sites)
                if j != i
            ]
            rest_mass: dict[tuple[str, ...], Fraction] = {}
            for outcome, p in dist.items():
                rest = outcome[:i] + outcome[i + 1 :]
                rest_mass[rest] = rest_mass.get(rest, ZERO) + p
            for rest in sorted(
                rest_mass, key=lambda r: tuple(idx[a] for idx, a in zip(rest_index, r))
            ):
                denominator = rest_mass[rest]
                others = [s for j, s in enumerate(h.sites) if j != i]
                rest_desc = ", ".join(f"{s.name}={a}" for s, a in zip(others, rest))
                for a in site.outcomes:
                    joint = dist.get(rest[:i] + (a,) + rest[i:], ZERO)
                    left = joint / denominator
                    right = marginals[i].get(a, ZERO)
                    if left != right:
                        return PropertyVerdict(
                            False,
                            Witness(
                                lhs_desc=f"p({site.name}={a} | {ctx_desc}, {rest_desc}, λ={lam})",
                                rhs_desc=f"p({site.name}={a} | {ctx_desc}, λ={lam})",
                                lhs=left,
                                rhs=right,
                                where=(site.name, lam),
                            ),
                        )
    return PropertyVerdict(True)


def _oi_product_form(h: HiddenVariableModel) -> PropertyVerdict:
    for context, lam in _sorted_context_lambda(h):
        dist = h.outcome_distribution(context, lam)
        ctx_desc = describe_context(h.sites, context)
        marginals = _site_marginals(h.sites, dist)
        for outcome in itertools.product(*(site.outcomes for site in h.sites)):
            left = dist.get(outcome, ZERO)
            right = ONE
            for i, a in enumerate(outcome):
                right *= marginals[i].get(a, ZERO)
            if left != right:
                return PropertyVerdict(
                    False,
                    Witness(
                        lhs_desc=(
                            f"p({describe_outcome(h.sites, outcome)} | {ctx_desc}, λ={lam})"
                        ),
                        rhs_desc="the product of its per-site marginals",
                        lhs=left,
                        rhs=right,
                        where=(lam,),
                    ),
                )
    return PropertyVerdict(True)


def check_outcome_independence(model: HiddenVariableModel) -> PropertyVerdict:
    """Given context and hidden state, sites' outcomes are independent.

    Evaluates both the partner-conditioning form and the product form; the two
    are equivalent for finite models and the check insists they agree. The
    returned witness, if any, comes from the partner-conditioning form.
    """
    h = _require_hidden(model, "outcome-independence")
    conditional = _oi_conditional_form(h)
    product = _oi_product_form(h)
    if conditional.holds != product.holds:
        raise AssertionError(
            "outcome-independence forms disagree: "
            f"conditional={conditional.describe()} product={product.describe()}"
        )
    return conditional


def check_parameter_independence(model: HiddenVariableModel) -> PropertyVerdict:
    """A site's response given the hidden state ignores the partners' measurements."""
    h = _require_hidden(model, "parameter-independence")
    meas_mass = h.site_measurement_mass()
    out_mass = h.site_outcome_mass()
    for context, lam in _sorted_context_lambda(h):
        dist = h.outcome_distribution(context, lam)
        ctx_desc = describe_context(h.sites, context)
        marginals = _site_marginals(h.sites, dist)
        for i, site in enumerate(h.sites):
            m = context[i]
            site_total = meas_mass[(i, m, lam)]
            for a in site.outcomes:
                left = marginals[i].get(a, ZERO)
                right = out_mass.get((i, m, a, lam), ZERO) / site_total
                if left != right:
                    return PropertyVerdict(
                        False,
                        Witness(
                            lhs_desc=f"p({site.name}={a} | {ctx_desc}, λ={lam})",
                            rhs_desc=f"p({site.name}={a} | {site.name}={m}, λ={lam})",
                            lhs=left,
                            rhs=right,
                            where=(site.name, lam),
                        ),
                    )
    return PropertyVerdict(True)


def check_locality(model: HiddenVariableModel) -> PropertyVerdict:
    """Joint outcomes factor into per-site responses to own measurements."""
    h = _require_hidden(model, "locality")
    meas_mass = h.site_measurement_mass()
    out_mass = h.site_outcome_mass()
    for context, lam in _sorted_context_lambda(h):
        dist = h.outcome_distribution(context, lam)
        ctx_desc = describe_context(h.sites, context)
        factors = [
            {
                a: out_mass.get((i, m, a, lam), ZERO) / meas_mass[(i, m, lam)]
                for a in site.outcomes
            }
            for i, (site, m) in enumerate(zip(h.sites, context))
        ]
        for outcome in itertools.product(*(site.outcomes for site in h.sites)):
            left = dist.get(outcome, ZERO)
            right = ONE
            for i, a in enumerate(outcome):
                right *= factors[i][a]
            if left != right:
                return PropertyVerdict(
                    False,
                    Witness(
                        lhs_desc=(
                            f"p({describe_outcome(h.sites, outcome)} | {ctx_desc}, λ={lam})"
                        ),
                        rhs_desc="the product of per-site responses to own measurements",
                        lhs=left,
                        rhs=right,
                        where=(lam,),
                    ),
                )
    return PropertyVerdict(True)


def check_non_contextuality(model: EmpiricalModel) -> PropertyVerdict:
    """A measurement's observed marginal is the same in every context containing it."""
    e = _require_empirical(model, "non-contextuality")
    contexts = sorted(e.context_weights(), key=e.context_sort_key)
    marginal_cache: dict[tuple[str, ...], list[dict[str, Fraction]]] = {}

    def marginals(context: tuple[str, ...]) -> list[dict[str, Fraction]]:
        got = marginal_cache.get(context)
        if got is None:
            got = _site_marginals(e.sites, e.outcome_distribution(context))
            marginal_cache[context] = got
        return got

    for i, site in enumerate(e.sites):
        for m in site.measurements:
            relevant = [c for c in contexts if c[i] == m]
            for k in range(len(relevant)):
                for l in range(k + 1, len(relevant)):
                    left_marg = marginals(relevant[k])[i]
                    right_marg = marginals(relevant[l])[i]
                    for a in site.outcomes:
                        left = left_marg.get(a, ZERO)
                        right = right_marg.get(a, ZERO)
                        if left != right:
                            return PropertyVerdict(
                                False,
                                Witness(
                                    lhs_desc=(
                                        f"q({site.name}={a} | "
                                        f"{describe_context(e.sites, relevant[k])})"
                                    ),
                                    rhs_desc=(
                                        f"q({site.name}={a} | "
                                        f"{describe_context(e.sites, relevant[l])})"
                                    ),
                                    lhs=left,
                                    rhs=right,
                                    where=(site.name, m),
                                ),
                            )
    return PropertyVerdict(True)


def check_exchangeability(model: EmpiricalModel) -> PropertyVerdict:
    """Permuting the sites leaves every prediction unchanged.

    Requires homogeneous sites: every site must declare the same measurement
    list and the same outcome list, otherwise the permuted predictions are not
    even comparable and an input error is raised.
    """
    e = _require_empirical(model, "exchangeability")
    first = e.sites[0]
    for site in e.sites[1:]:
        if site.measurements != first.measurements or site.outcomes != first.outcomes:
            raise InputError(
                "exchangeability requires all sites to share identical measurement "
                f"and outcome label lists; {site.name!r} differs from {first.name!r}"
            )
    ctx_weights = e.context_weights()
    contexts = sorted(ctx_weights, key=e.context_sort_key)
    for image in itertools.permutations(range(e.n_sites)):
        if image == tuple(range(e.n_sites)):
            continue
        perm = Permutation(image)
        for context in contexts:
            moved_ctx = perm.apply(context)
            ctx_desc = describe_context(e.sites, context)
            moved_ctx_desc = describe_context(e.sites, moved_ctx)
            if moved_ctx not in ctx_weights:
                return PropertyVerdict(
                    False,
                    Witness(
                        lhs_desc=f"q({ctx_desc})",
                        rhs_desc=f"q({moved_ctx_desc}) after permuting sites by {perm.describe()}",
                        lhs=ctx_weights[context],
                        rhs=ZERO,
                        where=(perm.describe(),),
                    ),
                )
            dist = e.outcome_distribution(context)
            moved_dist = e.outcome_distribution(moved_ctx)
            for outcome in sorted(dist, key=e.outcome_sort_key):
                moved_outcome = perm.apply(outcome)
                left = dist[outcome]
                right = moved_dist.get(moved_outcome, ZERO)
                if left != right:
                    return PropertyVerdict(
                        False,
                        Witness(
                            lhs_desc=(
                                f"q({describe_outcome(e.sites, outcome)} | {ctx_desc})"
                            ),
                            rhs_desc=(
                                f"q({describe_outcome(e.sites, moved_outcome)} | "
                                f"{moved_ctx_desc}) after permuting sites by {perm.describe()}"
                            ),
                            lhs=left,
                            rhs=right,
                            where=(perm.describe(),),
                        ),
                    )
    return PropertyVerdict(True)


_CHECKERS: dict[PropertyId, Callable] = {
    PropertyId.SINGLE_VALUEDNESS: check_single_valuedness,
    PropertyId.LAMBDA_INDEPENDENCE: check_lambda_independence,
    PropertyId.STRONG_DETERMINISM: check_strong_determinism,
    PropertyId.WEAK_DETERMINISM: check_weak_determinism,
    PropertyId.OUTCOME_INDEPENDENCE: check_outcome_independence,
    PropertyId.PARAMETER_INDEPENDENCE: check_parameter_independence,
    PropertyId.LOCALITY: check_locality,
    PropertyId.NON_CONTEXTUALITY: check_non_contextuality,
    PropertyId.EXCHANGEABILITY: check_exchangeability,
}


def check_property(
    model: EmpiricalModel | HiddenVariableModel, prop: PropertyId | str
) -> PropertyVerdict:
    """Dispatch a property check by id or by its string name.

    Hidden-model properties require a hidden-variable model. The two
    empirical properties accept either kind; a hidden-variable model is
    checked through its observable projection.
    """
    if isinstance(prop, str):
        try:
            prop = PropertyId(prop)
        except ValueError:
            names = ", ".join(p.value for p in PropertyId)
            raise InputError(f"unknown property {prop!r}; expected one of: {names}") from None
    if prop in HIDDEN_MODEL_PROPERTIES and not isinstance(model, HiddenVariableModel):
        raise InputError(
            f"property {prop.value!r} needs a hidden-variable model, not an empirical one"
        )
    if prop in EMPIRICAL_MODEL_PROPERTIES and isinstance(model, HiddenVariableModel):
        model = project_to_empirical(model)
    return _CHECKERS[prop](model)
