"""Finite loops given by Cayley tables.

Elements are the integers ``0..n-1`` and the identity is always element 0.
A table entry ``table[x, y]`` is the product ``x*y``. Subsets of a loop are
passed around as sorted tuples of element indices.
"""

from __future__ import annotations

import math
from functools import reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (IllDefined, NoIdentity, NotASubloop, NotLatin, NotNormal,
                     OrderUndefined, TableFormatError)

MAX_ORDER = 512

ElementSet = tuple[int, ...]


def element_set(items: Iterable[int]) -> ElementSet:
    return tuple(sorted({int(i) for i in items}))


def _inverse_rows(table: np.ndarray) -> np.ndarray:
    """inv[x, w] = z with table[x, z] = w (rows are permutations)."""
    n = table.shape[0]
    inv = np.empty_like(table)
    rows = np.arange(n)[:, None]
    inv[rows, table] = np.arange(n)[None, :]
    return inv


class FiniteLoop:
    """A validated Cayley table with identity 0.

    ``relabeling`` is set when :meth:`from_table` had to move the identity to
    index 0: ``relabeling[new] == old``.
    """

    __slots__ = ("table", "n", "relabeling", "_cache")

    def __init__(self, table, relabeling: tuple[int, ...] | None = None, *, check: bool = True):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotLatin(f"table must be a nonempty square array, got shape {t.shape}")
        n = t.shape[0]
        if n > MAX_ORDER:
            raise ValueError(f"order {n} exceeds the ceiling {MAX_ORDER}")
        if check:
            _check_latin(t)
            ident = np.arange(n)
            if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
                raise NoIdentity("element 0 is not a two-sided identity")
        t.setflags(write=False)
        self.table = t
        self.n = n
        self.relabeling = relabeling
        self._cache = {}

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]]) -> "FiniteLoop":
        t = np.array(rows, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotLatin("table must be a nonempty square array")
        _check_latin(t)
        n = t.shape[0]
        ident = np.arange(n)
        e = next((i for i in range(n)
                  if np.array_equal(t[i], ident) and np.array_equal(t[:, i], ident)), None)
        if e is None:
            raise NoIdentity("no two-sided identity element")
        if e == 0:
            return cls(t, check=False)
        # swap e and 0
        old_of_new = list(range(n))
        old_of_new[0], old_of_new[e] = e, 0
        old_of_new = np.array(old_of_new)
        new_of_old = np.argsort(old_of_new)
        relabeled = new_of_old[t[np.ix_(old_of_new, old_of_new)]]
        return cls(relabeled, relabeling=tuple(int(i) for i in old_of_new), check=False)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, FiniteLoop) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteLoop(n={self.n})"

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def cached(self, key, compute):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = compute()
            return value

    @property
    def ldiv(self) -> np.ndarray:
        """ldiv[x, y] = x\\y."""
        def compute():
            a = _inverse_rows(self.table)
            a.setflags(write=False)
            return a
        return self.cached("ldiv", compute)

    @property
    def rdiv(self) -> np.ndarray:
        """rdiv[x, y] = y/x, the z with z*x = y."""
        def compute():
            a = _inverse_rows(np.ascontiguousarray(self.table.T))
            a.setflags(write=False)
            return a
        return self.cached("rdiv", compute)

    @property
    def inverse(self) -> np.ndarray:
        """Left inverse x\\1 for every x."""
        return self.ldiv[:, 0]

    def elements(self) -> ElementSet:
        return tuple(range(self.n))


def _check_latin(t: np.ndarray) -> None:
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise NotLatin(f"entries must lie in 0..{n - 1}")
    srt = np.sort(t, axis=1)
    bad = np.nonzero((srt != np.arange(n)).any(axis=1))[0]
    if bad.size:
        raise NotLatin(f"row {int(bad[0])} repeats an entry")
    srt = np.sort(t, axis=0)
    bad = np.nonzero((srt != np.arange(n)[:, None]).any(axis=0))[0]
    if bad.size:
        raise NotLatin(f"column {int(bad[0])} repeats an entry")


def divide(Q: FiniteLoop, x: int, y: int, side: str = "left") -> int:
    """Left: the z with x*z = y. Right: the z with z*x = y."""
    if side == "left":
        return int(Q.ldiv[x, y])
    if side == "right":
        return int(Q.rdiv[x, y])
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def power(Q: FiniteLoop, x: int, k: int) -> int:
    """x^k by x^k = x * x^(k-1); negative k uses the left inverse of x."""
    if k < 0:
        x, k = int(Q.inverse[x]), -k
    row = Q.table[x]
    r = 0
    for _ in range(k):
        r = int(row[r])
    return r


def is_commutative(Q: FiniteLoop) -> bool:
    return bool(np.array_equal(Q.table, Q.table.T))


def associator_mask(Q: FiniteLoop, rows=None) -> np.ndarray:
    """mask[i, y, z] is True when (x y) z == x (y z), x = rows[i] (default: all x)."""
    t = Q.table
    xs = np.arange(Q.n) if rows is None else np.asarray(rows)
    lhs = t[t[xs]]                      # (xy)z: t[t[x, y], z]
    rhs = t[xs][:, t]                   # x(yz): t[x, t[y, z]]
    return lhs == rhs


def is_associative(Q: FiniteLoop) -> bool:
    def compute():
        for start in range(0, Q.n, 64):
            if not associator_mask(Q, range(start, min(Q.n, start + 64))).all():
                return False
        return True
    return Q.cached("associative", compute)


def _closure(Q: FiniteLoop, mask: np.ndarray) -> np.ndarray:
    t, ld, rd = Q.table, Q.ldiv, Q.rdiv
    while True:
        s = np.nonzero(mask)[0]
        sub = np.ix_(s, s)
        new = np.zeros_like(mask)
        new[t[sub]] = True
        new[ld[sub]] = True
        new[rd[sub]] = True
        if not (new & ~mask).any():
            return mask
        mask = mask | new


def subloop_generated(Q: FiniteLoop, S: Iterable[int]) -> ElementSet:
    mask = np.zeros(Q.n, dtype=bool)
    mask[0] = True
    mask[list(S)] = True
    return tuple(int(i) for i in np.nonzero(_closure(Q, mask))[0])


def is_subloop(Q: FiniteLoop, S: Iterable[int]) -> bool:
    S = element_set(S)
    return 0 in S and subloop_generated(Q, S) == S


def restrict(Q: FiniteLoop, S: Sequence[int]) -> FiniteLoop:
    """The subloop on S, relabeled by position in sorted S."""
    S = element_set(S)
    if not is_subloop(Q, S):
        raise NotASubloop(f"{S} is not a subloop")
    pos = np.full(Q.n, -1)
    pos[list(S)] = np.arange(len(S))
    return FiniteLoop(pos[Q.table[np.ix_(S, S)]])


def is_power_associative(Q: FiniteLoop) -> bool:
    def compute():
        for x in range(Q.n):
            S = subloop_generated(Q, (x,))
            if len(S) > 1 and not is_associative(restrict(Q, S)):
                return False
        return True
    return Q.cached("power_associative", compute)


def element_order(Q: FiniteLoop, x: int) -> int:
    if not is_power_associative(Q):
        raise OrderUndefined("loop is not power-associative")
    row = Q.table[x]
    r, k = int(row[0]), 1
    while r != 0:
        r, k = int(row[r]), k + 1
    return k


def element_orders(Q: FiniteLoop) -> list[int]:
    return Q.cached("orders", lambda: [element_order(Q, x) for x in range(Q.n)])


def exponent(Q: FiniteLoop) -> int:
    return reduce(math.lcm, element_orders(Q), 1)


def is_normal(Q: FiniteLoop, S: Iterable[int]) -> bool:
    """Invariance of the subloop S under every standard inner generator."""
    from .inner import inner_generator_arrays

    S = element_set(S)
    if not is_subloop(Q, S):
        raise NotASubloop(f"{S} is not a subloop")
    if len(S) in (1, Q.n):
        return True
    mask = np.zeros(Q.n, dtype=bool)
    mask[list(S)] = True
    idx = np.array(S)
    for _, perms in inner_generator_arrays(Q):
        if not mask[perms[:, idx]].all():
            return False
    return True


def quotient_map(Q: FiniteLoop, N: Iterable[int]) -> tuple[FiniteLoop, np.ndarray]:
    """Quotient by a normal subloop, with ``coset_of[x]`` giving the coset of x.

    Cosets are numbered by their smallest element, so the coset of the
    identity is 0.
    """
    N = element_set(N)
    if not is_normal(Q, N):
        raise NotNormal(f"{N} is not a normal subloop")
    n = Q.n
    coset_of = np.full(n, -1)
    idx = np.array(N)
    count = 0
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        members = Q.table[x, idx]
        if (coset_of[members] >= 0).any():
            raise IllDefined(f"coset of {x} overlaps an earlier coset")
        coset_of[members] = count
        count += 1
    reps = np.array([int(np.nonzero(coset_of == c)[0][0]) for c in range(count)])
    qt = coset_of[Q.table[np.ix_(reps, reps)]]
    if not np.array_equal(coset_of[Q.table], qt[np.ix_(coset_of, coset_of)]):
        raise IllDefined("coset multiplication depends on representatives")
    return FiniteLoop(qt), coset_of


def quotient(Q: FiniteLoop, N: Iterable[int]) -> FiniteLoop:
    return quotient_map(Q, N)[0]


def cyclic_group(n: int) -> FiniteLoop:
    r = np.arange(n)
    return FiniteLoop((r[:, None] + r[None, :]) % n)


def direct_product(*loops: FiniteLoop) -> FiniteLoop:
    """Product with element (x1, ..., xk) encoded mixed-radix, last factor fastest."""
    t = loops[0].table
    for other in loops[1:]:
        m = other.n
        t = (t[:, None, :, None] * m + other.table[None, :, None, :]).reshape(t.shape[0] * m, -1)
    return FiniteLoop(t)


def from_function(n: int, op) -> FiniteLoop:
    return FiniteLoop([[op(x, y) for y in range(n)] for x in range(n)])


def is_homomorphism(Q1: FiniteLoop, Q2: FiniteLoop, f) -> bool:
    f = np.asarray(f)
    return bool(np.array_equal(f[Q1.table], Q2.table[np.ix_(f, f)]))


# Canonical table files: first line n, then n rows of n indices; '#' lines are comments.

def parse_table(text: str) -> FiniteLoop:
    if text and not text.endswith("\n"):
        raise TableFormatError("missing trailing newline", text.count("\n") + 1)
    rows: list[list[int]] = []
    n = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            if not s and n is not None and len(rows) < n:
                raise TableFormatError("blank line inside table", lineno)
            continue
        try:
            values = [int(tok) for tok in s.split()]
        except ValueError:
            raise TableFormatError(f"non-integer token in {s!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] <= 0:
                raise TableFormatError("first line must be the order n", lineno)
            n = values[0]
            if n > MAX_ORDER:
                raise TableFormatError(f"order {n} exceeds the ceiling {MAX_ORDER}", lineno)
            continue
        if len(rows) == n:
            raise TableFormatError("more rows than the declared order", lineno)
        if len(values) != n:
            raise TableFormatError(f"expected {n} entries, got {len(values)}", lineno)
        if any(v < 0 or v >= n for v in values):
            raise TableFormatError(f"entries must lie in 0..{n - 1}", lineno)
        rows.append(values)
    if n is None:
        raise TableFormatError("empty table file")
    if len(rows) != n:
        raise TableFormatError(f"expected {n} rows, got {len(rows)}")
    t = np.array(rows)
    ident = np.arange(n)
    if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
        raise NoIdentity("element 0 must be the identity in a table file")
    return FiniteLoop(t)


def format_table(Q: FiniteLoop, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(Q.n))
    lines.extend(" ".join(str(int(v)) for v in row) for row in Q.table)
    return "\n".join(lines) + "\n"


def read_table(path) -> FiniteLoop:
    return parse_table(Path(path).read_text())


def write_table(Q: FiniteLoop, path, comment: str | None = None) -> None:
    Path(path).write_text(format_table(Q, comment))
