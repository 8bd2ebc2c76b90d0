"""Exact bad-reduction bounds for genus-3 CM curves."""
import json

from . import _core
from ._core import (
    CmboundError,
    assemble,
    certified_good,
    hyperelliptic_j,
    picard_invariants,
    rational_reconstruct,
    threshold,
)

VERBS = (
    "analyze-field",
    "find-mu",
    "bound",
    "verify-quat-cert",
    "curve-invariants",
    "certify-classpoly",
)


def run(verb, data, mode="", precision_bits=128, denominator_bound=None, effort=2000000, B=None):
    """Run a CLI verb on a JSON-compatible object; returns (exit_code, report)."""
    text = data if isinstance(data, str) else json.dumps(data)
    code, report = _core.run(verb, text, mode, precision_bits, denominator_bound, effort, B)
    return code, json.loads(report)


def analyze_field(poly, **kw):
    return run("analyze-field", {"poly": list(poly)}, **kw)[1]


def find_mu(poly, basis=None, den=1, mode="exhaustive", **kw):
    order = {"poly": list(poly)}
    if basis is not None:
        order["basis"] = basis
        order["den"] = den
    return run("find-mu", order, mode=mode, **kw)[1]


__all__ = [
    "CmboundError",
    "VERBS",
    "analyze_field",
    "assemble",
    "certified_good",
    "find_mu",
    "hyperelliptic_j",
    "picard_invariants",
    "rational_reconstruct",
    "run",
    "threshold",
]
