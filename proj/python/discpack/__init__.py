"""Bounds on the maximal density of binary disc packings."""

import json

from . import _core
from ._core import (
    DomainError,
    Error,
    FormatError,
    InitialBoundsInvalid,
    InvalidPacking,
    NoSolution,
    best_upper,
    blind_bound,
    builtin_recipes,
    closed_form_841,
    closed_form_r6,
    delta1,
    find_delta,
    florian_bound,
    lipschitz_envelope,
    lower_bound,
    r8,
    r_blind,
    ratios,
    sweep,
)


def eval_flow(recipe, r):
    """Density and domain (as a dict) of a flow recipe at ratio r."""
    density, domain = _core.eval_flow(recipe, r)
    return density, json.loads(domain)


def interstitial(r):
    density, domain = _core.interstitial(r)
    return density, json.loads(domain)


def certify(certifier, lo, hi, delta=None, max_depth=40):
    """Proof trace of delta(rho) <= delta over [lo, hi], as a dict."""
    return json.loads(_core.certify(certifier, lo, hi, delta, max_depth))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
