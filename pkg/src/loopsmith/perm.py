"""Permutations acting on the right, and permutation group orders.

``compose(f, g)`` applies ``f`` first and then ``g``, so products of
translations read left to right: ``compose(L_x, L_y)`` sends ``u`` to
``y*(x*u)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeMismatch


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __invert__(self) -> "Perm":
        return invert(self)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else invert(self)
        out = Perm.identity(self.degree)
        for _ in range(abs(k)):
            out = compose(out, base)
        return out

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def format(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"

    def __str__(self):
        return self.format()


def _check_degree(*perms: Perm) -> int:
    degrees = {p.degree for p in perms}
    if len(degrees) > 1:
        raise DegreeMismatch(f"degrees differ: {sorted(degrees)}")
    return degrees.pop()


def compose(f: Perm, g: Perm) -> Perm:
    _check_degree(f, g)
    gi = g.images
    return Perm(tuple(gi[i] for i in f.images))


def invert(f: Perm) -> Perm:
    out = [0] * f.degree
    for i, j in enumerate(f.images):
        out[j] = i
    return Perm(tuple(out))


def fixed_points(f: Perm) -> tuple[int, ...]:
    return tuple(i for i, j in enumerate(f.images) if i == j)


# Stabilizer chains work on bare tuples for speed.

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple([q[i] for i in p])


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class StabilizerChain:
    """Deterministic Schreier-Sims: base, strong generators and transversals.

    Level ``i`` holds the generators of the pointwise stabilizer of
    ``base[:i]`` and a transversal mapping each point of the orbit of
    ``base[i]`` to a group element sending ``base[i]`` there.
    """

    def __init__(self, gens: Iterable[Sequence[int]], degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.level_gens: list[list[tuple]] = []
        self.transversals: list[dict[int, tuple]] = []
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)}, expected {degree}")
        self._build([g for g in gens if g != self.identity])

    def _moved_point(self, g: tuple) -> int:
        return next(i for i, j in enumerate(g) if i != j)

    def _orbit(self, level: int) -> None:
        b = self.base[level]
        trans = {b: self.identity}
        queue = deque([b])
        gens = self.level_gens[level]
        while queue:
            pt = queue.popleft()
            u = trans[pt]
            for g in gens:
                q = g[pt]
                if q not in trans:
                    trans[q] = _mul(u, g)
                    queue.append(q)
        self.transversals[level] = trans

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.level_gens.append([])
        self.transversals.append({point: self.identity})

    def strip(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        h = g
        for j in range(start, len(self.base)):
            beta = h[self.base[j]]
            u = self.transversals[j].get(beta)
            if u is None:
                return h, j
            h = _mul(h, _inv(u))
        return h, len(self.base)

    def _build(self, gens: list[tuple]) -> None:
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._add_level(self._moved_point(g))
        for i in range(len(self.base)):
            self.level_gens[i] = [g for g in gens
                                  if all(g[b] == b for b in self.base[:i])]
            self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            restart_at = self._check_level(i)
            if restart_at is None:
                i -= 1
            else:
                i = restart_at

    def _check_level(self, i: int) -> int | None:
        trans = self.transversals[i]
        for beta, u in list(trans.items()):
            for x in self.level_gens[i]:
                ux = _mul(u, x)
                schreier = _mul(ux, _inv(trans[ux[self.base[i]]]))
                if schreier == self.identity:
                    continue
                h, j = self.strip(schreier, i + 1)
                if j < len(self.base) or h != self.identity:
                    if j == len(self.base):
                        self._add_level(self._moved_point(h))
                    for level in range(i + 1, j + 1):
                        self.level_gens[level].append(h)
                        self._orbit(level)
                    return j
        return None

    def order(self) -> int:
        out = 1
        for trans in self.transversals:
            out *= len(trans)
        return out

    def contains(self, g: Sequence[int]) -> bool:
        h, j = self.strip(tuple(g))
        return j == len(self.base) and h == self.identity


def _as_tuples(gens) -> tuple[list[tuple], int]:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    tuples = [g.images if isinstance(g, Perm) else tuple(int(i) for i in g) for g in gens]
    degrees = {len(t) for t in tuples}
    if len(degrees) > 1:
        raise DegreeMismatch(f"degrees differ: {sorted(degrees)}")
    return tuples, degrees.pop()


def group_order(gens) -> int:
    tuples, degree = _as_tuples(gens)
    return StabilizerChain(tuples, degree).order()


def closure_order(gens, limit: int = 10**6) -> int:
    """Order by enumerating the whole group; slow, used as an oracle."""
    tuples, degree = _as_tuples(gens)
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in tuples:
            h = _mul(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > limit:
                    raise ValueError(f"group has more than {limit} elements")
                queue.append(h)
    return len(seen)
