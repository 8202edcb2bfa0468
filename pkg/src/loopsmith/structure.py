"""Nuclei, commutant, center and the upper central series."""

from __future__ import annotations

import numpy as np

from .errors import InternalDisagreement, NotNormal
from .inner import inn_fixed_points
from .loop import ElementSet, FiniteLoop, associator_mask, element_set, quotient_map

NUCLEUS_KINDS = ("left", "middle", "right", "full")


def _nuclei_masks(Q: FiniteLoop) -> dict[str, np.ndarray]:
    def compute():
        n = Q.n
        left = np.zeros(n, dtype=bool)
        middle = np.ones(n, dtype=bool)
        right = np.ones(n, dtype=bool)
        step = max(1, (1 << 21) // (n * n))
        for start in range(0, n, step):
            stop = min(n, start + step)
            m = associator_mask(Q, range(start, stop))   # [x, y, z]
            left[start:stop] = m.all(axis=(1, 2))
            middle &= m.all(axis=(0, 2))
            right &= m.all(axis=(0, 1))
        return {"left": left, "middle": middle, "right": right,
                "full": left & middle & right}
    return Q.cached("nuclei", compute)


def nucleus(Q: FiniteLoop, kind: str = "full") -> ElementSet:
    if kind not in NUCLEUS_KINDS:
        raise ValueError(f"kind must be one of {NUCLEUS_KINDS}, got {kind!r}")
    return element_set(np.nonzero(_nuclei_masks(Q)[kind])[0])


def commutant(Q: FiniteLoop) -> ElementSet:
    t = Q.table
    return element_set(np.nonzero((t == t.T).all(axis=1))[0])


def center(Q: FiniteLoop) -> ElementSet:
    """Center computed both as Fix(Inn Q) and as N(Q) & C(Q); the two must agree."""
    def compute():
        fixed = inn_fixed_points(Q)
        nc = element_set(set(nucleus(Q, "full")) & set(commutant(Q)))
        if fixed != nc:
            raise InternalDisagreement(f"Fix(Inn Q) = {fixed} but N & C = {nc}")
        return fixed
    return Q.cached("center", compute)


def upper_central_series(Q: FiniteLoop) -> list[ElementSet]:
    """Z_0 < Z_1 < ... up to the first term that repeats (included once)."""
    def compute():
        series: list[ElementSet] = [(0,)]
        while True:
            try:
                quo, coset_of = quotient_map(Q, series[-1])
            except NotNormal as exc:
                raise InternalDisagreement(f"center term is not normal: {exc}") from exc
            zq = np.zeros(quo.n, dtype=bool)
            zq[list(center(quo))] = True
            nxt = element_set(np.nonzero(zq[coset_of])[0])
            if nxt == series[-1]:
                return series
            series.append(nxt)
    return Q.cached("ucs", compute)


def nilpotency_class(Q: FiniteLoop) -> int | None:
    """Least c with Z_c = Q, or None when the series stalls below Q."""
    series = upper_central_series(Q)
    if len(series[-1]) != Q.n:
        return None
    return len(series) - 1


def is_centrally_nilpotent(Q: FiniteLoop) -> bool:
    return nilpotency_class(Q) is not None


def commuting_left_translations(Q: FiniteLoop) -> ElementSet:
    """Elements a with L_a L_x = L_x L_a for every x."""
    t = Q.table
    # u L_a L_x = x(a u), u L_x L_a = a(x u); compare at [a, x, u]
    lhs = t[np.arange(Q.n)[None, :, None], t[:, None, :]]
    rhs = t[np.arange(Q.n)[:, None, None], t[None, :, :]]
    return element_set(np.nonzero((lhs == rhs).all(axis=(1, 2)))[0])
