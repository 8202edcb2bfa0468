"""Loop isomorphism by backtracking over images of a small generating set.

A partial map is extended to the whole subloop generated by the elements
mapped so far (closure under multiplication is enough in a finite loop), so
each choice of generator image either dies quickly or pins down the map on
a large subloop. Candidate images are restricted to elements with the same
isomorphism-invariant signature.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import CeilingExceeded
from .gf import Mat2, anisotropic_matrices, check_prime, plane_of, plane_type
from .inner import t_maps
from .loop import (FiniteLoop, associator_mask, element_orders, exponent, is_commutative,
                   is_power_associative, subloop_generated)
from .perm import Perm
from .qa import QAParams, qa_loop
from .structure import center, commutant, nucleus

DEFAULT_QA_CEILING = 5


@dataclass(frozen=True)
class Fingerprint:
    order: int
    commutative: bool
    exponent: int | None
    element_orders: tuple[int, ...] | None
    nuclei_sizes: tuple[int, int, int]
    commutant_size: int
    center_size: int
    t_fixed_points: tuple[int, ...]
    associative_triples: int
    associator_profile: tuple[int, ...]


def _assoc_counts(Q: FiniteLoop) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    def compute():
        n = Q.n
        left = np.zeros(n, dtype=np.int64)
        mid = np.zeros(n, dtype=np.int64)
        right = np.zeros(n, dtype=np.int64)
        step = max(1, (1 << 21) // (n * n))
        for start in range(0, n, step):
            stop = min(n, start + step)
            m = associator_mask(Q, range(start, stop))
            left[start:stop] = m.sum(axis=(1, 2))
            mid += m.sum(axis=(0, 2))
            right += m.sum(axis=(0, 1))
        return left, mid, right
    return Q.cached("assoc_counts", compute)


def fingerprint(Q: FiniteLoop) -> Fingerprint:
    def compute():
        pa = is_power_associative(Q)
        left, _, _ = _assoc_counts(Q)
        fix = (t_maps(Q) == np.arange(Q.n)).sum(axis=1)
        return Fingerprint(
            order=Q.n,
            commutative=is_commutative(Q),
            exponent=exponent(Q) if pa else None,
            element_orders=tuple(sorted(element_orders(Q))) if pa else None,
            nuclei_sizes=tuple(len(nucleus(Q, k)) for k in ("left", "middle", "right")),
            commutant_size=len(commutant(Q)),
            center_size=len(center(Q)),
            t_fixed_points=tuple(sorted(fix.tolist())),
            associative_triples=int(left.sum()),
            associator_profile=tuple(sorted(left.tolist())),
        )
    return Q.cached("fingerprint", compute)


def element_signatures(Q: FiniteLoop) -> list[tuple]:
    """Per-element invariants preserved by every isomorphism."""
    def compute():
        t = Q.table
        pa = is_power_associative(Q)
        orders = element_orders(Q) if pa else [-1] * Q.n
        fix_t = (t_maps(Q) == np.arange(Q.n)).sum(axis=1)
        comm = (t == t.T).sum(axis=1)
        left, mid, right = _assoc_counts(Q)
        sq = t[np.arange(Q.n), np.arange(Q.n)]
        return [(orders[x], int(fix_t[x]), int(comm[x]), int(left[x]), int(mid[x]),
                 int(right[x]), int(sq[x] == 0), len(subloop_generated(Q, (x,))))
                for x in range(Q.n)]
    return Q.cached("signatures", compute)


def generating_set(Q: FiniteLoop) -> list[int]:
    """Greedy small generating set; ties prefer elements with rare signatures."""
    sigs = element_signatures(Q)
    freq = Counter(sigs)
    gens: list[int] = []
    current: tuple[int, ...] = (0,)
    while len(current) < Q.n:
        best = None
        for x in range(Q.n):
            if x in current:
                continue
            size = len(subloop_generated(Q, current + (x,)))
            key = (-size, freq[sigs[x]], x)
            if best is None or key < best[0]:
                best = (key, x)
        gens.append(best[1])
        current = subloop_generated(Q, gens)
    return gens


class _Matcher:
    def __init__(self, Q1: FiniteLoop, Q2: FiniteLoop):
        self.Q1, self.Q2 = Q1, Q2
        s1, s2 = element_signatures(Q1), element_signatures(Q2)
        ids: dict[tuple, int] = {}
        self.cls1 = np.array([ids.setdefault(s, len(ids)) for s in s1])
        self.cls2 = np.array([ids.setdefault(s, len(ids)) for s in s2])
        self.gens = generating_set(Q1)

    def extend(self, f: np.ndarray, x: int, y: int) -> np.ndarray | None:
        """Extend partial map f (-1 = unmapped) by x -> y and close; None on conflict."""
        n = self.Q1.n
        t1, t2 = self.Q1.table, self.Q2.table
        f = f.copy()
        if f[x] >= 0:
            return f if f[x] == y else None
        f[x] = y
        while True:
            dom = np.nonzero(f >= 0)[0]
            img = f[dom]
            if np.bincount(img, minlength=n).max() > 1:
                return None
            if (self.cls1[dom] != self.cls2[img]).any():
                return None
            p1 = t1[np.ix_(dom, dom)].ravel()
            p2 = t2[np.ix_(img, img)].ravel()
            known = f[p1] >= 0
            if (f[p1[known]] != p2[known]).any():
                return None
            fresh = ~known
            if not fresh.any():
                return f
            f[p1[fresh]] = p2[fresh]
            if (f[p1] != p2).any():
                return None

    def search(self) -> np.ndarray | None:
        n = self.Q1.n
        f = np.full(n, -1)
        f[0] = 0
        return self._level(0, f)

    def _level(self, i: int, f: np.ndarray) -> np.ndarray | None:
        if i == len(self.gens):
            return f if (f >= 0).all() else None
        g = self.gens[i]
        if f[g] >= 0:
            return self._level(i + 1, f)
        used = np.zeros(self.Q2.n, dtype=bool)
        used[f[f >= 0]] = True
        for c in np.nonzero((self.cls2 == self.cls1[g]) & ~used)[0]:
            f2 = self.extend(f, g, int(c))
            if f2 is None:
                continue
            found = self._level(i + 1, f2)
            if found is not None:
                return found
        return None


def are_isomorphic(Q1: FiniteLoop, Q2: FiniteLoop) -> Perm | None:
    """An isomorphism Q1 -> Q2 as a permutation (x -> image), or None."""
    if Q1.n != Q2.n or fingerprint(Q1) != fingerprint(Q2):
        return None
    f = _Matcher(Q1, Q2).search()
    if f is None:
        return None
    assert np.array_equal(f[Q1.table], Q2.table[np.ix_(f, f)]), "witness is not a homomorphism"
    return Perm(tuple(int(v) for v in f))


@dataclass
class QAClass:
    representative: Mat2
    plane_type: int
    members: list[Mat2]
    loop: FiniteLoop

    def as_dict(self) -> dict:
        return {"representative": self.representative.format(),
                "type": self.plane_type,
                "members": len(self.members)}


def classify_qa(p: int, ceiling: int = DEFAULT_QA_CEILING) -> list[QAClass]:
    """Partition all anisotropic A in GL(2, p) by isomorphism of Q(A).

    Raises AssertionError if a class mixes plane types.
    """
    check_prime(p)
    if p > ceiling:
        raise CeilingExceeded(f"p = {p} exceeds the classification ceiling {ceiling}")
    classes: list[QAClass] = []
    for A in anisotropic_matrices(p):
        Q = qa_loop(QAParams(p, A))
        t = plane_type(A)
        for cls in classes:
            if are_isomorphic(cls.loop, Q) is not None:
                assert cls.plane_type == t, (
                    f"{A.format()} (type {t}) is isomorphic to "
                    f"{cls.representative.format()} (type {cls.plane_type})")
                cls.members.append(A)
                break
        else:
            classes.append(QAClass(A, t, [A], Q))
    return classes


def planes(p: int) -> dict[frozenset, list[Mat2]]:
    """Anisotropic matrices grouped by the plane they span with I."""
    out: dict[frozenset, list[Mat2]] = {}
    for A in anisotropic_matrices(p):
        out.setdefault(plane_of(A), []).append(A)
    return out
