"""The JSON structure report for a single loop."""

from __future__ import annotations

import json

from .bruck import bruck_report, is_uniquely_2_divisible
from .inner import is_automorphic, mlt_order
from .loop import FiniteLoop, exponent, is_commutative, is_power_associative
from .structure import center, commutant, nilpotency_class, nucleus, upper_central_series


def bruck_applicable(Q: FiniteLoop) -> bool:
    return is_commutative(Q) and is_automorphic(Q) and is_uniquely_2_divisible(Q)


def structure_report(Q: FiniteLoop, mlt: bool = False) -> dict:
    pa = is_power_associative(Q)
    series = upper_central_series(Q)
    cls = nilpotency_class(Q)
    out = {
        "order": Q.n,
        "commutative": is_commutative(Q),
        "power_associative": pa,
        "automorphic": is_automorphic(Q),
        "exponent": exponent(Q) if pa else None,
        "nuclei": {k: list(nucleus(Q, k)) for k in ("left", "middle", "right", "full")},
        "commutant": list(commutant(Q)),
        "center": list(center(Q)),
        "upper_central_series": {"sizes": [len(s) for s in series],
                                 "sets": [list(s) for s in series]},
        "nilpotency_class": cls if cls is not None else "not_nilpotent",
    }
    if mlt:
        out["mlt_order"] = mlt_order(Q)
    if bruck_applicable(Q):
        out["bruck"] = bruck_report(Q)
    return out


def dumps(obj) -> str:
    """Key-sorted JSON, the fixed format for every report."""
    return json.dumps(obj, sort_keys=True, indent=2)
