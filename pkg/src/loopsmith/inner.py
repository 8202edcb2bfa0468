"""Translations, standard inner mappings and automorphism checks.

Inner mapping generators (right action, ``u`` is the argument):

* ``u T_x = x \\ (u x)``
* ``u L_{x,y} = (y x) \\ (y (x u))``
* ``u R_{x,y} = ((u x) y) / (x y)``

Generators are materialized as integer arrays, one row per permutation,
because loops of order 125 have more than 31 000 of them.
"""

from __future__ import annotations

import numpy as np

from .loop import FiniteLoop, element_set, ElementSet
from .perm import Perm, group_order


def translation(Q: FiniteLoop, x: int, side: str = "left") -> Perm:
    if side == "left":
        return Perm(tuple(int(v) for v in Q.table[x]))
    if side == "right":
        return Perm(tuple(int(v) for v in Q.table[:, x]))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def t_maps(Q: FiniteLoop) -> np.ndarray:
    """Row x is T_x."""
    def compute():
        n = Q.n
        a = Q.ldiv[np.arange(n)[:, None], Q.table.T]
        a.setflags(write=False)
        return a
    return Q.cached("T", compute)


def l_maps(Q: FiniteLoop) -> np.ndarray:
    """Entry [x, y] is the permutation L_{x,y}."""
    def compute():
        t, ld = Q.table, Q.ldiv
        n = Q.n
        yxu = t[np.arange(n)[None, :, None], t[:, None, :]]     # y(xu) at [x, y, u]
        a = ld[t.T[:, :, None], yxu]
        a.setflags(write=False)
        return a
    return Q.cached("L", compute)


def r_maps(Q: FiniteLoop) -> np.ndarray:
    """Entry [x, y] is the permutation R_{x,y}."""
    def compute():
        t, rd = Q.table, Q.rdiv
        n = Q.n
        uxy = t[t.T[:, None, :], np.arange(n)[None, :, None]]   # (ux)y at [x, y, u]
        a = rd[t[:, :, None], uxy]
        a.setflags(write=False)
        return a
    return Q.cached("R", compute)


def inner_generator_arrays(Q: FiniteLoop) -> list[tuple[str, np.ndarray]]:
    """``[("T", (n, n)), ("L", (n*n, n)), ("R", (n*n, n))]``.

    Row ``x*n + y`` of the L and R blocks is ``L_{x,y}`` / ``R_{x,y}``.
    """
    n = Q.n
    return [("T", t_maps(Q)),
            ("L", l_maps(Q).reshape(n * n, n)),
            ("R", r_maps(Q).reshape(n * n, n))]


def _tag(kind: str, row: int, n: int) -> tuple:
    if kind == "T":
        return ("T", row)
    return (kind, row // n, row % n)


def inner_generators(Q: FiniteLoop) -> list[tuple[tuple, Perm]]:
    out = []
    for kind, perms in inner_generator_arrays(Q):
        assert (perms[:, 0] == 0).all(), f"some {kind} generator moves the identity"
        out.extend((_tag(kind, i, Q.n), Perm(tuple(int(v) for v in row)))
                   for i, row in enumerate(perms))
    return out


def is_automorphism(Q: FiniteLoop, f) -> bool:
    f = np.asarray(f.images if isinstance(f, Perm) else f)
    if f.shape != (Q.n,) or sorted(f.tolist()) != list(range(Q.n)):
        return False
    t = Q.table
    return bool(np.array_equal(f[t], t[np.ix_(f, f)]))


def first_non_automorphism(perms: np.ndarray, Q: FiniteLoop, batch: int = 64) -> tuple[int, int, int] | None:
    """(row, u, v) with (uv)f != uf vf for f = perms[row], or None."""
    t = Q.table
    # equal rows give equal answers; check each distinct permutation once, in row order
    _, first = np.unique(perms, axis=0, return_index=True)
    rows = np.sort(first)
    for start in range(0, len(rows), batch):
        G = perms[rows[start:start + batch]]
        lhs = G[:, t]                                  # (uv)f
        rhs = t[G[:, :, None], G[:, None, :]]          # uf * vf
        bad = lhs != rhs
        if bad.any():
            k, u, v = np.argwhere(bad)[0]
            return int(rows[start + k]), int(u), int(v)
    return None


def automorphic_witness(Q: FiniteLoop) -> tuple | None:
    """First standard inner generator failing to be an automorphism, or None."""
    for kind, perms in inner_generator_arrays(Q):
        bad = first_non_automorphism(perms, Q)
        if bad is not None:
            row, u, v = bad
            return _tag(kind, row, Q.n) + (u, v)
    return None


def is_automorphic(Q: FiniteLoop) -> bool:
    return Q.cached("automorphic", lambda: automorphic_witness(Q) is None)


def translations(Q: FiniteLoop) -> list[tuple]:
    t = Q.table
    rows = [tuple(int(v) for v in t[x]) for x in range(Q.n)]
    cols = [tuple(int(v) for v in t[:, x]) for x in range(Q.n)]
    return rows + cols


def mlt_order(Q: FiniteLoop) -> int:
    return Q.cached("mlt_order", lambda: group_order(translations(Q)))


def inn_fixed_points(Q: FiniteLoop) -> ElementSet:
    """Common fixed points of all standard inner generators."""
    mask = np.ones(Q.n, dtype=bool)
    idx = np.arange(Q.n)
    for _, perms in inner_generator_arrays(Q):
        mask &= (perms == idx).all(axis=0)
    return element_set(np.nonzero(mask)[0])


def squares(Q: FiniteLoop) -> np.ndarray:
    return Q.table[np.arange(Q.n), np.arange(Q.n)]


def p_maps(Q: FiniteLoop) -> np.ndarray:
    """Row x is P_x = L_x L_{x^-1}^-1, i.e. u -> x^-1 \\ (x u)."""
    def compute():
        inv = Q.inverse
        a = Q.ldiv[inv[:, None], Q.table]
        a.setflags(write=False)
        return a
    return Q.cached("P", compute)


def p_maps_alt(Q: FiniteLoop) -> np.ndarray:
    """Row x is L_{x^-1}^-1 L_x, i.e. u -> x (x^-1 \\ u)."""
    inv = Q.inverse
    return Q.table[np.arange(Q.n)[:, None], Q.ldiv[inv]]


def _first(bad: np.ndarray) -> tuple | None:
    if not bad.any():
        return None
    return tuple(int(i) for i in np.argwhere(bad)[0])


def commutative_identity_suite(Q: FiniteLoop) -> dict[str, tuple | None]:
    """Identities of commutative automorphic loops, each mapped to a witness or None.

    A witness lists the free variables of the failing instance in the order
    they appear in the identity's name below.
    """
    n = Q.n
    t, ld = Q.table, Q.ldiv
    inv = Q.inverse
    sq = squares(Q)
    L = l_maps(Q)
    P = p_maps(Q)
    ar = np.arange(n)
    x = ar[:, None]
    y = ar[None, :]
    out: dict[str, tuple | None] = {}

    # x L_{y,x} = x                                  witness (x, y)
    out["lem1"] = _first(L[y, x, x] != x)
    # L_{y,x} L_{x^-1} = L_{x^-1} L_{y,x}             witness (y, x, u)
    Lyx = L.transpose(1, 0, 2)                        # [x, y] -> L_{y,x}
    lhs = t[inv[:, None, None], Lyx]                  # u L_{y,x} L_{x^-1}
    rhs = Lyx[ar[:, None, None], ar[None, :, None], t[inv][:, None, :]]
    out["lem1.5"] = _swap01(_first(lhs != rhs))
    # y L_{y,x} = ((xy)\x)^-1                         witness (x, y)
    out["lem2"] = _first(L[y, x, y] != inv[ld[t, x]])
    # L_{x^-1,y^-1} = L_{x,y}                         witness (x, y, u)
    out["laip"] = _first(L[inv[:, None], inv[None, :]] != L)
    # D_{x^2} = D_x J D_x, with y D_x = y\x          witness (x, y)
    out["Ds"] = _first(ld[y, sq[x]] != ld[inv[ld[y, x]], x])
    # (xy)^-1 = x^-1 y^-1 and (x\y)^-1 = x^-1 \ y^-1   witness (x, y)
    bad_mul = inv[t] != t[np.ix_(inv, inv)]
    bad_div = inv[ld] != ld[np.ix_(inv, inv)]
    out["aip"] = _first(bad_mul | bad_div)
    # (x^-1) P_{xy} = x y^2                           witness (x, y)
    out["3.2"] = _first(P[t, inv[x]] != t[x, sq[y]])
    # x (x P_y) = (xy)^2                              witness (x, y)
    out["lem3"] = _first(t[x, P[y, x]] != sq[t])
    # P_x = L_x L_{x^-1}^-1 = L_{x^-1}^-1 L_x         witness (x, u)
    out["P-factorizations"] = _first(P != p_maps_alt(Q))
    return out


def _swap01(w):
    if w is None:
        return None
    return (w[1], w[0]) + tuple(w[2:])
