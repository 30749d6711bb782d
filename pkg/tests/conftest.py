"""Shared fixtures: small models, the two polytope controls, a CLI runner."""

from __future__ import annotations

import contextlib
import io
from fractions import Fraction

import pytest

from hvw import EmpiricalModel, HiddenVariableModel, Site, bell_model
from hvw.cli import main


def fr(text: str) -> Fraction:
    return Fraction(text)


@pytest.fixture
def cli():
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""

    def run(*args: str) -> tuple[int, str, str]:
        out = io.StringIO()
        err = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(args))
        return code, out.getvalue(), err.getvalue()

    return run


def two_site_sites() -> tuple[Site, Site]:
    return (
        Site("X", ("M1", "M2"), ("0", "1")),
        Site("Y", ("M1", "M2"), ("0", "1")),
    )


@pytest.fixture
def uniform_quarter() -> EmpiricalModel:
    """Bell-shaped model with every conditional equal to 1/4.

    This is the behavior of two independent fair coins, so it must be inside
    the deterministic-mixture polytope.
    """
    sites = bell_model().sites
    weights = {}
    for i in "123":
        for j in "123":
            for a in "+-":
                for b in "+-":
                    weights[((a, b), (i, j))] = Fraction(1, 36)
    return EmpiricalModel(sites, weights)


@pytest.fixture
def all_pairs_anticorrelation() -> EmpiricalModel:
    """Bell-shaped model that anti-correlates on every context pair.

    Realized by flipping one coin to decide which site answers + everywhere,
    so it must be inside the deterministic-mixture polytope.
    """
    sites = bell_model().sites
    weights = {}
    for i in "123":
        for j in "123":
            weights[(("+", "-"), (i, j))] = Fraction(1, 18)
            weights[(("-", "+"), (i, j))] = Fraction(1, 18)
    return EmpiricalModel(sites, weights)


def point_mass_model() -> EmpiricalModel:
    """Single context, single certain outcome."""
    sites = (Site("X", ("M",), ("u", "v")), Site("Y", ("N",), ("u", "v")))
    return EmpiricalModel(sites, {(("u", "v"), ("M", "N")): Fraction(1)})


def single_site_third_model() -> EmpiricalModel:
    """One site, one measurement, outcome weights 1/3 and 2/3."""
    site = Site("X", ("A",), ("a1", "a2"))
    return EmpiricalModel(
        (site,), {(("a1",), ("A",)): Fraction(1, 3), (("a2",), ("A",)): Fraction(2, 3)}
    )


def pi_violating_hvm() -> HiddenVariableModel:
    """Two sites, one hidden state; X's marginal shifts with Y's setting."""
    sites = (Site("X", ("M",), ("0", "1")), Site("Y", ("N1", "N2"), ("0", "1")))
    weights = {
        (("0", "0"), ("M", "N1"), "l"): Fraction(1, 2),
        (("0", "0"), ("M", "N2"), "l"): Fraction(1, 4),
        (("1", "0"), ("M", "N2"), "l"): Fraction(1, 4),
    }
    return HiddenVariableModel(sites, ("l",), weights)
