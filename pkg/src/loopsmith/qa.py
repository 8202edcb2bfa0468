"""Automorphic loops Q(A) of order p^3 built from a 2x2 matrix A over GF(p).

Elements are pairs (a, x) with a in GF(p) and x a row vector in GF(p)^2,
encoded as the index ``a*p*p + x1*p + x2``; the identity (0, (0, 0)) is 0.
With ``U_a = I + aA`` the product is

    (a, x)(b, y) = (a + b, x U_b + y U_{-a}).

Vectors always multiply matrices from the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularTranslation
from .gf import Mat2, check_prime, is_anisotropic
from .inner import is_automorphic, l_maps, r_maps, t_maps
from .loop import FiniteLoop, exponent, is_associative, is_commutative
from .perm import Perm
from .structure import center, commutant, nilpotency_class, nucleus


@dataclass(frozen=True)
class QAParams:
    p: int
    A: Mat2

    def __post_init__(self):
        check_prime(self.p)
        if self.A.p != self.p:
            raise ValueError(f"matrix is over GF({self.A.p}), expected GF({self.p})")

    def U(self, a: int) -> Mat2:
        return Mat2.identity(self.p) + self.A.scale(a)

    def singular_translations(self) -> list[int]:
        return [a for a in range(self.p) if not self.U(a).is_invertible()]

    def encode(self, a: int, x: tuple[int, int]) -> int:
        p = self.p
        return (a % p) * p * p + (x[0] % p) * p + (x[1] % p)

    def decode(self, i: int) -> tuple[int, tuple[int, int]]:
        p = self.p
        a, r = divmod(int(i), p * p)
        return a, divmod(r, p)


def _np(M: Mat2) -> np.ndarray:
    return np.array(M.rows, dtype=np.int64)


def qa_loop(params: QAParams) -> FiniteLoop:
    bad = params.singular_translations()
    if bad:
        raise SingularTranslation(f"I + aA is singular for a in {bad}")
    p = params.p
    U = np.stack([_np(params.U(a)) for a in range(p)])          # U[a]
    vecs = np.array([(x1, x2) for x1 in range(p) for x2 in range(p)])
    XU = np.einsum("vi,bij->bvj", vecs, U) % p                   # XU[b, x] = x U_b
    neg = (-np.arange(p)) % p
    second = XU[neg]                                              # [a, y] = y U_{-a}
    comp = (XU.transpose(1, 0, 2)[None, :, :, None, :] +
            second[:, None, None, :, :]) % p                      # [a, x, b, y, :]
    a_part = (np.arange(p)[:, None, None, None] + np.arange(p)[None, None, :, None]) % p
    idx = a_part * p * p + comp[..., 0] * p + comp[..., 1]
    table = idx.reshape(p ** 3, p ** 3)
    return FiniteLoop(table)


def qa_product_direct(params: QAParams, u: int, v: int) -> int:
    """One product evaluated straight from the defining formula, with Mat2 arithmetic."""
    a, x = params.decode(u)
    b, y = params.decode(v)
    xb = params.U(b).row_times(x)
    ya = params.U(-a).row_times(y)
    return params.encode(a + b, (xb[0] + ya[0], xb[1] + ya[1]))


def left_division_formula(params: QAParams, u: int, w: int) -> int:
    """(b, y) L_{(a,x)}^{-1} = (b - a, (y - x U_{b-a}) U_{-a}^{-1})."""
    a, x = params.decode(u)
    b, y = params.decode(w)
    xu = params.U(b - a).row_times(x)
    z = params.U(-a).inverse().row_times((y[0] - xu[0], y[1] - xu[1]))
    return params.encode(b - a, z)


def right_division_formula(params: QAParams, u: int, w: int) -> int:
    """(b, y) R_{(a,x)}^{-1} = (b - a, (y - x U_{a-b}) U_a^{-1})."""
    a, x = params.decode(u)
    b, y = params.decode(w)
    xu = params.U(a - b).row_times(x)
    z = params.U(a).inverse().row_times((y[0] - xu[0], y[1] - xu[1]))
    return params.encode(b - a, z)


def _vadd(*vs):
    return tuple(sum(c) for c in zip(*vs))


def phi(params: QAParams, z: tuple[int, int], C: Mat2) -> np.ndarray:
    """The map (a, x) -> (a, a z + x C) as an image array."""
    p = params.p
    out = np.empty(p ** 3, dtype=np.int64)
    for i in range(p ** 3):
        a, x = params.decode(i)
        xc = C.row_times(x)
        out[i] = params.encode(a, (a * z[0] + xc[0], a * z[1] + xc[1]))
    return out


def phi_parameters(params: QAParams, kind: str, args) -> tuple[tuple[int, int], Mat2]:
    """(u, C) with the inner generator equal to phi(u, C)."""
    A, U = params.A, params.U
    A2 = A @ A
    if kind == "T":
        a, x = params.decode(args)
        Uinv = U(-a).inverse()
        u = (A @ Uinv).row_times(x)
        return (-2 * u[0], -2 * u[1]), U(a) @ Uinv
    (a, _), (b, y) = params.decode(args[0]), params.decode(args[1])
    if kind == "R":
        Uinv = U(a + b).inverse()
        u = (A2 @ Uinv).row_times(y)
        return (-a * u[0], -a * u[1]), U(a) @ U(b) @ Uinv
    if kind == "L":
        Uinv = U(-a - b).inverse()
        u = (A2 @ Uinv).row_times(y)
        return (-a * u[0], -a * u[1]), U(-a) @ U(-b) @ Uinv
    raise ValueError(f"kind must be T, L or R, got {kind!r}")


def qa_inner_closed_form(params: QAParams, kind: str, args) -> Perm:
    """Inner generator from its closed formula.

    ``args`` is an element index for T and a pair of indices for L and R.
    """
    p = params.p
    U = params.U
    images = []
    if kind == "T":
        a, x = params.decode(args)
        Uinv = U(-a).inverse()
        for i in range(p ** 3):
            b, y = params.decode(i)
            diff = U(-b) - U(b)
            v = Uinv.row_times(_vadd(diff.row_times(x), U(a).row_times(y)))
            images.append(params.encode(b, v))
        return Perm(tuple(images))
    (a, _), (b, y) = params.decode(args[0]), params.decode(args[1])
    for i in range(p ** 3):
        c, z = params.decode(i)
        if kind == "R":
            head = (U(a) @ U(b)).row_times(z)
            tail = (U(-c - a) - U(-c) @ U(-a)).row_times(y)
            v = U(a + b).inverse().row_times(_vadd(head, tail))
        elif kind == "L":
            head = (U(-a) @ U(-b)).row_times(z)
            tail = (U(c + a) - U(c) @ U(a)).row_times(y)
            v = U(-a - b).inverse().row_times(_vadd(head, tail))
        else:
            raise ValueError(f"kind must be T, L or R, got {kind!r}")
        images.append(params.encode(c, v))
    return Perm(tuple(images))


def closed_form_mismatches(params: QAParams, Q: FiniteLoop | None = None) -> list[tuple]:
    """Every generator whose table form differs from its closed form or its phi form."""
    Q = qa_loop(params) if Q is None else Q
    n = Q.n
    bad = []
    T, L, R = t_maps(Q), l_maps(Q), r_maps(Q)
    for u in range(n):
        cf = np.array(qa_inner_closed_form(params, "T", u).images)
        if not np.array_equal(cf, T[u]):
            bad.append(("T", u, "closed"))
        if not np.array_equal(phi(params, *phi_parameters(params, "T", u)), T[u]):
            bad.append(("T", u, "phi"))
    for kind, arr in (("L", L), ("R", R)):
        for u in range(n):
            for v in range(n):
                cf = qa_inner_closed_form(params, kind, (u, v)).images
                if not np.array_equal(np.array(cf), arr[u, v]):
                    bad.append((kind, u, v, "closed"))
                zC = phi_parameters(params, kind, (u, v))
                if not (zC[1] @ params.A == params.A @ zC[1]):
                    bad.append((kind, u, v, "CA != AC"))
                if not np.array_equal(phi(params, *zC), arr[u, v]):
                    bad.append((kind, u, v, "phi"))
    return bad


def middle_nucleus_expected(params: QAParams) -> tuple[int, ...]:
    return tuple(range(params.p ** 2))


def verify_prop_constr(params: QAParams, Q: FiniteLoop | None = None) -> dict:
    """Structural claims for anisotropic A; ``ok`` is the conjunction of the checks."""
    if not is_anisotropic(params.A):
        raise ValueError(f"{params.A!r} is not anisotropic")
    Q = qa_loop(params) if Q is None else Q
    p = params.p
    mid = nucleus(Q, "middle")
    checks = {
        "automorphic": is_automorphic(Q),
        "exponent_is_p": exponent(Q) == p,
        "middle_nucleus": mid == middle_nucleus_expected(params),
        "left_nucleus_trivial": nucleus(Q, "left") == (0,),
        "right_nucleus_trivial": nucleus(Q, "right") == (0,),
        "center_trivial": center(Q) == (0,),
        "commutant": commutant(Q) == (tuple(range(Q.n)) if p == 2 else (0,)),
        "not_nilpotent": nilpotency_class(Q) is None,
    }
    return {"p": p, "matrix": params.A.format(), "order": Q.n,
            "middle_nucleus_size": len(mid), "commutative": is_commutative(Q),
            "checks": checks, "ok": all(checks.values())}


def verify_degenerate_group(params: QAParams) -> dict:
    """For A with every I + aA invertible but no anisotropic plane: Q(A) is a group."""
    A, p = params.A, params.p
    if is_anisotropic(A):
        raise ValueError(f"{A!r} is anisotropic; expected a degenerate matrix")
    Q = qa_loop(params)
    checks = {
        "trace_zero": A.trace() == 0,
        "det_zero": A.det() == 0,
        "square_zero": A @ A == Mat2.zero(p),
        "associative": is_associative(Q),
        "automorphic": is_automorphic(Q),
    }
    return {"p": p, "matrix": A.format(), "checks": checks, "ok": all(checks.values())}


def scalar_powers_match(params: QAParams, Q: FiniteLoop | None = None) -> bool:
    """(a, x)^k == (k a, k x) for every element and every 0 <= k <= p."""
    Q = qa_loop(params) if Q is None else Q
    p = params.p
    for i in range(Q.n):
        a, x = params.decode(i)
        r = 0
        for k in range(p + 1):
            if r != params.encode(k * a, (k * x[0], k * x[1])):
                return False
            r = int(Q.table[i, r])
    return True
