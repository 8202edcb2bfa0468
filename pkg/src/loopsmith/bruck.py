"""The Bruck loop associated with a uniquely 2-divisible commutative automorphic loop.

The new operation is ``x o y = [x^-1 \\ (x y^2)]^(1/2) = [(y^2) P_x]^(1/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AipFailure, BolFailure, FactorizationMismatch, IdentityFailure, NotDivisible
from .inner import l_maps, p_maps, p_maps_alt, squares
from .loop import FiniteLoop, element_set, exponent, ElementSet
from .perm import Perm
from .structure import center, commutant, nucleus, upper_central_series


@dataclass(frozen=True)
class SqrtTable:
    loop: FiniteLoop
    sqrt: np.ndarray          # sqrt[x*x] == x

    def __call__(self, x: int) -> int:
        return int(self.sqrt[x])


def unique_2_divisible(Q: FiniteLoop) -> SqrtTable:
    """Square roots when squaring is a bijection; raises NotDivisible otherwise."""
    sq = squares(Q)
    seen = {}
    for x, s in enumerate(sq.tolist()):
        if s in seen:
            raise NotDivisible((seen[s], x, s))
        seen[s] = x
    root = np.empty(Q.n, dtype=np.int64)
    root[sq] = np.arange(Q.n)
    root.setflags(write=False)
    return SqrtTable(Q, root)


def is_uniquely_2_divisible(Q: FiniteLoop) -> bool:
    return len(set(squares(Q).tolist())) == Q.n


def p_map(Q: FiniteLoop, x: int) -> Perm:
    a, b = p_maps(Q)[x], p_maps_alt(Q)[x]
    if not np.array_equal(a, b):
        u = int(np.nonzero(a != b)[0][0])
        raise FactorizationMismatch(
            f"P_{x}: L_x L_(x^-1)^-1 and L_(x^-1)^-1 L_x differ at {u}")
    return Perm(tuple(int(v) for v in a))


def bruck_table(Q: FiniteLoop, S: SqrtTable) -> np.ndarray:
    sq = squares(Q)
    # x o y = sqrt(x^-1 \ (x y^2))
    return S.sqrt[Q.ldiv[Q.inverse[:, None], Q.table[:, sq]]]


def bol_witness(B: FiniteLoop) -> tuple[int, int, int] | None:
    """(x, y, z) violating (x o (y o x)) o z = x o (y o (x o z))."""
    t = B.table
    x = np.arange(B.n)[:, None, None]
    y = np.arange(B.n)[None, :, None]
    z = np.arange(B.n)[None, None, :]
    for start in range(0, B.n, 32):
        xs = x[start:start + 32]
        lhs = t[t[xs, t[y, xs]], z]
        rhs = t[xs, t[y, t[xs, z]]]
        bad = lhs != rhs
        if bad.any():
            i, j, k = np.argwhere(bad)[0]
            return int(i) + start, int(j), int(k)
    return None


def aip_witness(B: FiniteLoop) -> tuple[int, int] | None:
    inv = B.inverse
    bad = inv[B.table] != B.table[np.ix_(inv, inv)]
    if bad.any():
        return tuple(int(i) for i in np.argwhere(bad)[0])
    return None


def powers_witness(Q: FiniteLoop, B: FiniteLoop, top: int | None = None) -> tuple[int, int] | None:
    """(x, k) where the k-th powers in Q and B differ (0 <= k <= top)."""
    top = exponent(Q) if top is None else top
    rq = np.zeros(Q.n, dtype=np.int64)
    rb = np.zeros(B.n, dtype=np.int64)
    ar = np.arange(Q.n)
    for k in range(top + 1):
        bad = rq != rb
        if bad.any():
            return int(np.nonzero(bad)[0][0]), k
        rq = Q.table[ar, rq]
        rb = B.table[ar, rb]
    return None


def bruck_associate(Q: FiniteLoop, S: SqrtTable | None = None) -> FiniteLoop:
    """The loop (Q, o); Bol, AIP and power coincidence are checked on construction."""
    S = unique_2_divisible(Q) if S is None else S
    B = FiniteLoop(bruck_table(Q, S))
    w = bol_witness(B)
    if w is not None:
        raise BolFailure(w)
    w = aip_witness(B)
    if w is not None:
        raise AipFailure(w)
    w = powers_witness(Q, B)
    if w is not None:
        raise IdentityFailure("power coincidence", w)
    return B


def left_power_alternative_witness(B: FiniteLoop, top: int) -> tuple[int, int] | None:
    """(x, k) where (L_x)^k != L_{x^k} in B, 0 <= k <= top."""
    t = B.table
    ar = np.arange(B.n)
    for x in range(B.n):
        acc = ar.copy()
        xk = 0
        for k in range(top + 1):
            if not np.array_equal(acc, t[xk]):
                return x, k
            acc = t[x, acc]
            xk = int(t[x, xk])
    return None


def p_commuting(Q: FiniteLoop) -> ElementSet:
    """Elements a with P_a P_x = P_x P_a for all x."""
    P = p_maps(Q)
    # u P_a P_x at [a, x, u] is P[x, P[a, u]]; u P_x P_a is P[a, P[x, u]]
    ar = np.arange(Q.n)
    ax = P[ar[None, :, None], P[:, None, :]]
    xa = P[ar[:, None, None], P[None, :, :]]
    return element_set(np.nonzero((ax == xa).all(axis=(1, 2)))[0])


def verify_centers_theorem(Q: FiniteLoop, B: FiniteLoop | None = None) -> dict:
    """Compare the upper central series of (Q, .) and (Q, o) term by term."""
    B = bruck_associate(Q) if B is None else B
    sq = upper_central_series(Q)
    sb = upper_central_series(B)
    zb = center(B)
    c_nr = element_set(set(commutant(B)) & set(nucleus(B, "right")))
    pc = p_commuting(Q)
    checks = {
        "series_equal": sq == sb,
        "center_is_p_commuting": zb == pc,
        "center_dot_in_p_commuting": set(center(Q)) <= set(pc),
        "center_is_commutant_and_right_nucleus": zb == c_nr,
        "left_and_middle_nuclei_are_center": nucleus(B, "left") == nucleus(B, "middle") == zb,
        "left_power_alternative": left_power_alternative_witness(B, exponent(Q)) is None,
    }
    return {
        "series_dot": [list(s) for s in sq],
        "series_circ": [list(s) for s in sb],
        "checks": checks,
        "ok": all(checks.values()),
    }


def verify_section4_suite(Q: FiniteLoop, B: FiniteLoop | None = None) -> dict:
    """Identities that hold for every a in Z(Q, o) and every x; witnesses on failure.

    Checked: x L_{a\\x,a} = x L_{a\\x^-1,a};  (a\\x) L_{a\\x^-1,a} = (x\\a)^-1;
    x^-1 . x P_a = a^2;  L_a = L_a (in o);  L_a^k = L_{a^k};  P_{xa} = P_x P_a;
    a^2 in Z(Q, .);  Z(Q, o) in Z(Q, .).
    """
    B = bruck_associate(Q) if B is None else B
    t, ld, inv = Q.table, Q.ldiv, Q.inverse
    L = l_maps(Q)
    P = p_maps(Q)
    sq = squares(Q)
    zq = set(center(Q))
    zb = center(B)
    top = exponent(Q)
    xs = np.arange(Q.n)
    failures: dict[str, tuple] = {}

    def fail(name, witness):
        failures.setdefault(name, witness)

    for a in zb:
        adx = ld[a, xs]
        adxi = ld[a, inv]
        m = L[adx, a, xs] != L[adxi, a, xs]
        if m.any():
            fail("483", (a, int(xs[m][0])))
        m = L[adxi, a, adx] != inv[ld[xs, a]]
        if m.any():
            fail("489", (a, int(xs[m][0])))
        m = t[inv, P[a]] != sq[a]
        if m.any():
            fail("ugh", (a, int(xs[m][0])))
        m = t[a] != B.table[a]
        if m.any():
            fail("L_a equals circle translation", (a, int(xs[m][0])))
        acc, ak = xs.copy(), 0
        for k in range(top + 1):
            if not np.array_equal(acc, t[ak]):
                fail("poweralt", (a, k))
                break
            acc, ak = t[a, acc], int(t[a, ak])
        # y P_{xa} = y P_x P_a at [x, y]
        m = P[t[xs, a]] != P[a][P]
        if m.any():
            x, y = np.argwhere(m)[0]
            fail("Ps", (a, int(x), int(y)))
        if int(sq[a]) not in zq:
            fail("square in center", (a,))
        if a not in zq:
            fail("Z(o) in Z(.)", (a,))
    return {
        "center_circ": list(zb),
        "vacuous": len(zb) == 1,
        "failures": {k: list(v) for k, v in failures.items()},
        "ok": not failures,
    }


def bruck_report(Q: FiniteLoop) -> dict:
    """Summary for loops that are commutative, automorphic and uniquely 2-divisible."""
    S = unique_2_divisible(Q)
    B = FiniteLoop(bruck_table(Q, S))
    bol_ok = bol_witness(B) is None
    aip_ok = aip_witness(B) is None
    powers_ok = powers_witness(Q, B) is None
    out = {"bol_ok": bol_ok, "aip_ok": aip_ok, "powers_match": powers_ok}
    if bol_ok and aip_ok and powers_ok:
        out["centers_theorem_ok"] = verify_centers_theorem(Q, B)["ok"]
        out["section4_suite_ok"] = verify_section4_suite(Q, B)["ok"]
    else:
        out["centers_theorem_ok"] = False
        out["section4_suite_ok"] = False
    return out
