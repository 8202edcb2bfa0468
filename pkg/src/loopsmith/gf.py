"""Arithmetic over GF(p), quadratic residues and 2x2 matrices.

Everything here works with plain Python integers; primes are limited to
``p < 2**16`` so products never leave native range.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} exceeds the supported ceiling {MAX_PRIME}")
    return p


def primes_below(n: int) -> list[int]:
    return [q for q in range(2, n) if is_prime(q)]


@dataclass(frozen=True)
class Fp:
    """An element of the prime field GF(p)."""

    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"moduli differ: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return Fp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return Fp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return Fp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return Fp(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"


class ResidueClass(enum.Enum):
    ZERO = "zero"
    RESIDUE = "residue"
    NONRESIDUE = "nonresidue"


@lru_cache(maxsize=None)
def squares(p: int) -> frozenset[int]:
    """Nonzero squares mod p, by exhaustive squaring."""
    check_prime(p)
    return frozenset((b * b) % p for b in range(1, p))


def _value(a, p: int | None) -> tuple[int, int]:
    if isinstance(a, Fp):
        return a.value, a.p
    if p is None:
        raise TypeError("p is required when a is a plain int")
    check_prime(p)
    return a % p, p


def legendre_class(a, p: int | None = None) -> ResidueClass:
    value, p = _value(a, p)
    if value == 0:
        return ResidueClass.ZERO
    return ResidueClass.RESIDUE if value in squares(p) else ResidueClass.NONRESIDUE


def euler_class(a, p: int | None = None) -> ResidueClass:
    """Same classification via Euler's criterion (p = 2 handled separately)."""
    value, p = _value(a, p)
    if value == 0:
        return ResidueClass.ZERO
    if p == 2:
        return ResidueClass.RESIDUE
    return ResidueClass.RESIDUE if pow(value, (p - 1) // 2, p) == 1 else ResidueClass.NONRESIDUE


def residues(p: int) -> list[int]:
    return sorted(squares(p))


def nonresidues(p: int) -> list[int]:
    sq = squares(p)
    return [a for a in range(1, p) if a not in sq]


def is_residue(a: int, p: int) -> bool:
    return legendre_class(a, p) is ResidueClass.RESIDUE


def is_nonresidue(a: int, p: int) -> bool:
    return legendre_class(a, p) is ResidueClass.NONRESIDUE


def perron_counts(p: int, a) -> tuple[int, int]:
    """Return ``(|(R+a) & R|, |(R+a) & N|)`` where R is residues plus zero."""
    a, p = _value(a, p)
    if a == 0:
        raise ValueError("a must be nonzero")
    r_set = squares(p) | {0}
    shifted = {(r + a) % p for r in r_set}
    n_set = set(nonresidues(p))
    return len(shifted & r_set), len(shifted & n_set)


def perron_closed_form(p: int) -> tuple[int, int]:
    """Counts predicted for odd p: (k, k) if p = 4k-1 and (k+1, k) if p = 4k+1."""
    check_prime(p)
    if p == 2:
        raise ValueError("closed form needs an odd prime")
    if p % 4 == 3:
        k = (p + 1) // 4
        return k, k
    k = (p - 1) // 4
    return k + 1, k


def additive_witness(p: int) -> tuple[int, int, int]:
    """Smallest (a, b, c) with a a nonresidue, b, c, b-a residues, c-a a nonresidue."""
    check_prime(p)
    if p < 5:
        raise ValueError("needs p >= 5")
    for a in nonresidues(p):
        for b in residues(p):
            if not is_residue(b - a, p):
                continue
            for c in residues(p):
                if is_nonresidue(c - a, p):
                    return a, b, c
    raise AssertionError(f"no additive witness for p={p}")  # pragma: no cover


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over GF(p), entries row-major: [[a1, a2], [a3, a4]]."""

    a1: int
    a2: int
    a3: int
    a4: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        for name in ("a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, int(getattr(self, name)) % self.p)

    @classmethod
    def identity(cls, p: int) -> "Mat2":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def zero(cls, p: int) -> "Mat2":
        return cls(0, 0, 0, 0, p)

    @classmethod
    def scalar(cls, c: int, p: int) -> "Mat2":
        return cls(c, 0, 0, c, p)

    @classmethod
    def from_rows(cls, rows, p: int) -> "Mat2":
        (a1, a2), (a3, a4) = rows
        return cls(a1, a2, a3, a4, p)

    @classmethod
    def parse(cls, text: str, p: int) -> "Mat2":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 'a1,a2,a3,a4', got {text!r}")
        return cls(*(int(s) for s in parts), p)

    def format(self) -> str:
        return f"{self.a1},{self.a2},{self.a3},{self.a4}"

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a1, self.a2), (self.a3, self.a4)

    def _same(self, other: "Mat2"):
        if other.p != self.p:
            raise ValueError(f"moduli differ: {self.p} vs {other.p}")

    def __add__(self, other: "Mat2") -> "Mat2":
        self._same(other)
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)), self.p)

    def __sub__(self, other: "Mat2") -> "Mat2":
        self._same(other)
        return Mat2(*(x - y for x, y in zip(self.entries, other.entries)), self.p)

    def __neg__(self) -> "Mat2":
        return Mat2(*(-x for x in self.entries), self.p)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        self._same(other)
        a1, a2, a3, a4 = self.entries
        b1, b2, b3, b4 = other.entries
        return Mat2(a1 * b1 + a2 * b3, a1 * b2 + a2 * b4,
                    a3 * b1 + a4 * b3, a3 * b2 + a4 * b4, self.p)

    def scale(self, c: int) -> "Mat2":
        return Mat2(*(c * x for x in self.entries), self.p)

    def trace(self) -> int:
        return (self.a1 + self.a4) % self.p

    def det(self) -> int:
        return (self.a1 * self.a4 - self.a2 * self.a3) % self.p

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError(f"singular matrix {self.format()} mod {self.p}")
        di = pow(d, -1, self.p)
        return Mat2(self.a4 * di, -self.a2 * di, -self.a3 * di, self.a1 * di, self.p)

    def row_times(self, x: tuple[int, int]) -> tuple[int, int]:
        """Row vector ``x`` multiplied on the left: ``x @ self``."""
        x1, x2 = x
        p = self.p
        return (x1 * self.a1 + x2 * self.a3) % p, (x1 * self.a2 + x2 * self.a4) % p

    def __repr__(self):
        return f"Mat2([[{self.a1},{self.a2}],[{self.a3},{self.a4}]] mod {self.p})"


def all_matrices(p: int):
    check_prime(p)
    for e in itertools.product(range(p), repeat=4):
        yield Mat2(*e, p)


def char_poly_has_root(A: Mat2) -> bool:
    t, d, p = A.trace(), A.det(), A.p
    return any((lam * lam - t * lam + d) % p == 0 for lam in range(p))


def is_anisotropic(A: Mat2) -> bool:
    """True iff the plane spanned by I and A has no nonzero isotropic vector."""
    return not char_poly_has_root(A)


def is_anisotropic_plane_bruteforce(A: Mat2) -> bool:
    p = A.p
    for lam, mu in itertools.product(range(p), repeat=2):
        if (lam, mu) == (0, 0):
            continue
        if (Mat2.scalar(lam, p) + A.scale(mu)).det() == 0:
            return False
    return True


def plane_type(A: Mat2) -> int:
    if not is_anisotropic(A):
        raise ValueError(f"{A!r} does not span an anisotropic plane with I")
    if A.trace() == 0:
        return 1
    return 2 if is_residue(A.det(), A.p) else 3


def m_matrix(a: int, b: int, p: int) -> Mat2:
    """The matrix [[-b, 1], [a, -b]]."""
    return Mat2(-b, 1, a, -b, p)


def type_exists(p: int, t: int) -> bool:
    if t == 1:
        return p != 2
    if t == 2:
        return p != 3
    if t == 3:
        return p != 2
    raise ValueError(f"plane type must be 1, 2 or 3, got {t!r}")


def type_witness(p: int, t: int) -> Mat2 | None:
    """Smallest anisotropic matrix of the given type, or None if none exists.

    Candidates [[-b, 1], [a, -b]] with a a nonresidue are tried first, in
    lexicographic (a, b) order; a full scan of GL(2, p) is the fallback.
    """
    check_prime(p)
    if t not in (1, 2, 3):
        raise ValueError(f"plane type must be 1, 2 or 3, got {t!r}")
    for a in nonresidues(p):
        for b in range(p):
            A = m_matrix(a, b, p)
            if is_anisotropic(A) and plane_type(A) == t:
                return A
    for A in all_matrices(p):
        if A.is_invertible() and is_anisotropic(A) and plane_type(A) == t:
            return A
    return None


def anisotropic_matrices(p: int) -> list[Mat2]:
    """All A in GL(2, p) whose plane with I is anisotropic, lexicographic order."""
    return [A for A in all_matrices(p) if A.is_invertible() and is_anisotropic(A)]


def plane_of(A: Mat2) -> frozenset[tuple[int, int, int, int]]:
    p = A.p
    return frozenset((Mat2.scalar(lam, p) + A.scale(mu)).entries
                     for lam in range(p) for mu in range(p))
