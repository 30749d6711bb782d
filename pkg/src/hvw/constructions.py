"""Canonical hidden-variable completions of an empirical model.

Three constructions, each reproducing the input's predictions exactly:

* e1: one hidden state per cell of the full (outcome tuple, context) grid.
  The state remembers the whole table entry, so each site's response is a
  deterministic function of its own measurement (strong determinism).
* e2: hidden states 0..L-1 with L the least common multiple of all
  conditional-probability denominators. Within each non-null context the
  states are split into consecutive blocks, one per supported outcome tuple,
  of size proportional to its conditional probability. The state distribution
  is uniform on every context (lambda-independence) and each (context, state)
  pins a single outcome tuple (weak determinism).
* sv: a single hidden state carrying the empirical weights unchanged
  (single-valuedness).
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from .errors import InputError, SizeGuardError
from .models import (
    DEFAULT_GUARD,
    EmpiricalModel,
    HiddenVariableModel,
    project_to_empirical,
)


class ConstructionMethod(Enum):
    """The three completion strategies, by their short command names."""

    E1_STRONG_DETERMINISTIC = "e1"
    E2_WEAK_DET_LAMBDA_INDEP = "e2"
    SV_SINGLE_VALUED = "sv"


def _require_empirical(model: object, name: str) -> EmpiricalModel:
    if not isinstance(model, EmpiricalModel):
        raise InputError(f"{name} expects an empirical model")
    return model


def construct_e1(model: EmpiricalModel, guard: int = DEFAULT_GUARD) -> HiddenVariableModel:
    """Completion whose hidden states enumerate the full prediction grid.

    The state labeled "o1,..,on|m1,..,mn" has weight q(outcomes, context) and
    forces exactly that context and outcome tuple.
    """
    e = _require_empirical(model, "construct_e1")
    size = e.n_outcome_tuples() * e.n_context_tuples()
    if size > guard:
        raise SizeGuardError("e1 hidden state set", size, guard)
    labels = []
    for outcome in e.outcome_tuples():
        for context in e.context_tuples():
            labels.append(",".join(outcome) + "|" + ",".join(context))
    weights = {
        (outcome, context, ",".join(outcome) + "|" + ",".join(context)): value
        for (outcome, context), value in e.weights.items()
    }
    return HiddenVariableModel(e.sites, labels, weights)


def construct_e2(model: EmpiricalModel, guard: int = DEFAULT_GUARD) -> HiddenVariableModel:
    """Completion with uniformly distributed states and per-state point outcomes.

    |hidden states| is exactly the least common multiple of the denominators
    of all conditional outcome probabilities over non-null contexts. The
    output keeps the input's context marginal (a null context stays null, so
    equivalence is preserved), and the hidden state is uniform and independent
    of the context, which is what makes lambda independence hold.
    """
    e = _require_empirical(model, "construct_e2")
    context_weights = e.context_weights()
    contexts = sorted(context_weights, key=e.context_sort_key)
    denominators = [1]
    for context in contexts:
        denominators.extend(p.denominator for p in e.outcome_distribution(context).values())
    size = math.lcm(*denominators)
    if size > guard:
        raise SizeGuardError("e2 hidden state set", size, guard)
    labels = tuple(str(i) for i in range(size))
    weights: dict = {}
    for context in contexts:
        share = context_weights[context] / size
        distribution = e.outcome_distribution(context)
        start = 0
        for outcome in sorted(distribution, key=e.outcome_sort_key):
            block = distribution[outcome] * size
            assert block.denominator == 1
            for state in range(start, start + block.numerator):
                weights[(outcome, context, labels[state])] = share
            start += block.numerator
        assert start == size
    return HiddenVariableModel(e.sites, labels, weights)


def construct_sv(model: EmpiricalModel) -> HiddenVariableModel:
    """Completion with a single hidden state carrying the weights unchanged."""
    e = _require_empirical(model, "construct_sv")
    label = "l0"
    weights = {(outcome, context, label): value for (outcome, context), value in e.weights.items()}
    return HiddenVariableModel(e.sites, (label,), weights)


def construct(
    model: EmpiricalModel, method: ConstructionMethod, guard: int = DEFAULT_GUARD
) -> HiddenVariableModel:
    """Dispatch one of the three completions."""
    if not isinstance(method, ConstructionMethod):
        raise InputError(f"unknown construction method: {method!r}")
    if method is ConstructionMethod.E1_STRONG_DETERMINISTIC:
        return construct_e1(model, guard)
    if method is ConstructionMethod.E2_WEAK_DET_LAMBDA_INDEP:
        return construct_e2(model, guard)
    return construct_sv(model)


def reconstruct_hvm(
    model: HiddenVariableModel, method: ConstructionMethod, guard: int = DEFAULT_GUARD
) -> HiddenVariableModel:
    """Project a hidden-variable model and rebuild it with a chosen completion.

    The output predicts exactly like the input but carries the completion's
    guaranteed properties.
    """
    if not isinstance(model, HiddenVariableModel):
        raise InputError("reconstruct_hvm expects a hidden-variable model")
    return construct(project_to_empirical(model), method, guard)
