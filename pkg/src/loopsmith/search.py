"""Backtracking search for loops with prescribed properties.

Cells are filled in a fixed row-major order (upper triangle when commutative)
with Latin-square propagation. The automorphic constraint is pushed through a
vectorized partial check every few placements: for every inner generator
whose defining products are known, known instances of f(uv) = f(u) f(v)
either contradict the table or force a new cell.

Symmetry breaking is exact, so an exhausted search really is exhaustive.
The search runs through a list of frames, each fixing row 1:

* max-cycle frames: element 1 has the longest cycle through the identity
  among all left translations, and row 1 is L_1 in canonical cycle form with
  that cycle first and the remaining cycles by decreasing length. Every loop
  has a labelling of this shape.
* central frames: element 1 is central of prime order q and the quotient
  by <1> is a fixed loop K of order n/q, taken from a complete list of
  candidates found by a recursive search. Coset g is {qg, ..., qg + q - 1}
  and x y must lie in the coset K(x // q, y // q), so each cell has q
  candidates and each placed cell determines q*q cells. Every loop with
  nontrivial center has such a labelling for some prime q dividing n and
  some K: label r_g c^i as qg + i for coset representatives r_g.
  The representatives can be chosen along a spanning tree of K (r_g := r_s r_h
  for a generator s of K), which fixes the tree cells to offset zero.
  Writing x y = (g h, i + j + theta(g, h)) for x = (g, i), y = (h, j), every
  product and division only adds offsets, so "each inner generator is an
  automorphism" is a homogeneous linear system over GF(q) in the theta
  values. Central frames propagate that system exactly after every decision.

Returned loops are re-verified by the independent checkers and deduplicated
up to isomorphism.
"""

from __future__ import annotations

import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf import is_prime
from .inner import is_automorphic
from .iso import are_isomorphic, generating_set
from .loop import FiniteLoop, exponent, is_associative, is_commutative, is_power_associative
from .structure import center

MAX_SEARCH_ORDER = 32


@dataclass(frozen=True)
class SearchConstraints:
    order: int
    commutative: bool = False
    automorphic: bool = False
    power_associative: bool = False
    nonassociative: bool = False
    exponent: int | None = None
    trivial_center: bool = False
    nontrivial_center: bool = False
    time_budget: float = 600.0
    seed: int = 0
    check_every: int = 27

    def __post_init__(self):
        n = self.order
        if not 1 <= n <= MAX_SEARCH_ORDER:
            raise ValueError(f"order must be in 1..{MAX_SEARCH_ORDER}, got {n}")
        if self.nonassociative and n <= 4:
            raise ValueError("every loop of order at most 4 is a group")
        if self.trivial_center and self.nontrivial_center:
            raise ValueError("trivial-center and has-nontrivial-center are exclusive")
        if self.nontrivial_center and n == 1:
            raise ValueError("the trivial loop has trivial center")
        if self.exponent is not None and self.exponent < 1:
            raise ValueError("exponent must be positive")
        if self.check_every < 1:
            raise ValueError("check_every must be positive")

    @property
    def needs_power_associative(self) -> bool:
        # automorphic loops are power-associative
        return self.power_associative or self.automorphic or self.exponent is not None

    def accepts(self, Q: FiniteLoop) -> bool:
        """Independent verification of every constraint."""
        if Q.n != self.order:
            return False
        if self.commutative and not is_commutative(Q):
            return False
        if self.needs_power_associative and not is_power_associative(Q):
            return False
        if self.exponent is not None and exponent(Q) != self.exponent:
            return False
        if self.nonassociative and is_associative(Q):
            return False
        if self.automorphic and not is_automorphic(Q):
            return False
        if self.trivial_center and center(Q) != (0,):
            return False
        if self.nontrivial_center and len(center(Q)) == 1:
            return False
        return True


@dataclass
class SearchResult:
    loops: list[FiniteLoop]
    complete: bool
    budget_exhausted: bool
    nodes: int = 0
    raw_solutions: int = 0
    elapsed: float = 0.0
    frames: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.loops:
            return "found"
        return "unsatisfiable" if self.complete else "budget_exhausted"


@dataclass(frozen=True)
class Frame:
    name: str
    cycles: tuple[int, ...]       # cycle lengths of L_1, the identity's cycle first
    central: bool                 # element 1 is central (all cycles equal, prime length)
    quotient: tuple[tuple[int, ...], ...] | None = None   # table of Q / <1> for central frames


def _partitions(total: int, largest: int, smallest: int = 2):
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), smallest - 1, -1):
        for rest in _partitions(total - part, part, smallest):
            yield (part,) + rest


def _divisors(e: int) -> list[int]:
    return [d for d in range(1, e + 1) if e % d == 0]


def quotient_constraints(c: SearchConstraints, q: int, deadline: float) -> SearchConstraints:
    """Constraints every quotient by a central subgroup of order q inherits."""
    return SearchConstraints(c.order // q, commutative=c.commutative, automorphic=c.automorphic,
                             power_associative=c.needs_power_associative,
                             time_budget=max(0.0, deadline - time.monotonic()), seed=c.seed,
                             check_every=c.check_every)


def frames(c: SearchConstraints, deadline: float | None = None) -> tuple[list[Frame], bool]:
    """Frames in search order, and whether their union covers every loop meeting c.

    Building central frames runs a complete search for the quotient loops.
    """
    deadline = time.monotonic() + c.time_budget if deadline is None else deadline
    n = c.order
    if n == 1:
        return [Frame("trivial", (), False)], True
    qs = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
    if c.exponent is not None:
        qs = [q for q in qs if c.exponent % q == 0]
    central: list[Frame] = []
    central_complete = True
    if not c.trivial_center:
        for q in qs:
            sub = find_loops(quotient_constraints(c, q, deadline), limit=None)
            central_complete &= sub.complete
            for i, K in enumerate(sub.loops):
                central.append(Frame(f"central-{q}/K{i}", (q,) * (n // q), True,
                                     tuple(map(tuple, K.table.tolist()))))
    if c.nontrivial_center:
        return central, central_complete
    general = []
    for k in range(n, 1, -1):
        if c.needs_power_associative and c.exponent is not None and c.exponent % k:
            continue
        for rest in _partitions(n - k, n):
            general.append(Frame(f"max-cycle-{k}:" + ".".join(map(str, rest)), (k,) + rest, False))
    return central + general, True


def _spanning_tree(K) -> list[tuple[int, int]]:
    """Cells (s, h) with s a generator, reaching every element of K once by BFS."""
    m = len(K)
    Q = FiniteLoop(K)
    gens = generating_set(Q)
    seen = {0}
    order = [0]
    edges = []
    i = 0
    while i < len(order):
        h = order[i]
        i += 1
        for s in gens:
            g = K[s][h]
            if g not in seen:
                seen.add(g)
                order.append(g)
                edges.append((s, h))
    assert len(seen) == m
    return edges


def _rref_mod(M: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q); returns (nonzero rows, pivot columns)."""
    M = M.copy() % q
    rows, cols = M.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, col])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, col]), -1, q) % q
        f = M[:, col].copy()
        f[r] = 0
        M = (M - f[:, None] * M[r][None, :]) % q
        pivots.append(col)
        r += 1
    return M[:r], pivots


class _CentralSystem:
    """The automorphic condition as linear equations over GF(q) in the offsets theta."""

    def __init__(self, K: FiniteLoop, q: int, commutative: bool):
        m = K.n
        self.q = q
        self.var: dict[tuple[int, int], int] = {}
        V = 0
        for g in range(1, m):
            for h in range(1, m):
                if commutative and h < g:
                    self.var[g, h] = self.var[h, g]
                else:
                    self.var[g, h] = V
                    V += 1
        self.nvars = V
        theta = np.zeros((m, m, V), dtype=np.int64)
        for (g, h), v in self.var.items():
            theta[g, h, v] = 1
        t, ld, rd = K.table, K.ldiv, K.rdiv
        ks = np.arange(m)
        maps = []
        for g in range(m):
            if not commutative and g:
                # u T_x = x \ (u x)
                w = t[ks, g]
                z = ld[g, w]
                maps.append((z, theta[ks, g] - theta[g, z]))
            for h in range(1, m):
                if not g:
                    continue
                # u L_{x,y} = (y x) \ (y (x u))
                gk = t[g]
                w = t[h, gk]
                hg = t[h, g]
                z = ld[hg, w]
                maps.append((z, theta[g] + theta[h, gk] - theta[h, g] - theta[hg, z]))
                if not commutative:
                    # u R_{x,y} = ((u x) y) / (x y)
                    ux = t[ks, g]
                    w = t[ux, h]
                    d = t[g, h]
                    z = rd[d, w]
                    maps.append((z, theta[ks, g] + theta[ux, h] - theta[g, h] - theta[z, d]))
        eqs = []
        self.feasible = True
        for z, off in maps:
            if not np.array_equal(z[t], t[np.ix_(z, z)]):
                self.feasible = False
                break
            lhs = off[t] + theta
            rhs = off[:, None] + off[None, :] + theta[z[:, None], z[None, :]]
            eqs.append((lhs - rhs).reshape(m * m, V))
        M = np.concatenate(eqs) if eqs else np.zeros((0, V), dtype=np.int64)
        self.rref, _ = _rref_mod(M, q)

    def forced(self, known: dict[int, int]) -> dict[int, int] | None:
        """Values implied for unknown variables, or None if inconsistent."""
        q, V = self.q, self.nvars
        unknown = [v for v in range(V) if v not in known]
        if not len(self.rref):
            return {}
        kv = np.array([v for v in known], dtype=np.int64)
        vals = np.array([known[v] for v in kv], dtype=np.int64)
        rhs = -(self.rref[:, kv] @ vals) % q if len(kv) else np.zeros(len(self.rref), dtype=np.int64)
        aug = np.concatenate([self.rref[:, unknown], rhs[:, None]], axis=1)
        R, pivots = _rref_mod(aug, q)
        if len(unknown) in pivots:
            return None
        out = {}
        for row, col in zip(R, pivots):
            if not row[:len(unknown)].any() or np.count_nonzero(row[:len(unknown)]) == 1:
                out[unknown[col]] = int(row[-1])
        return out


class _Conflict(Exception):
    pass


class _Stop(Exception):
    pass


class _Engine:
    """Search within one frame."""

    def __init__(self, c: SearchConstraints, frame: Frame, deadline: float, on_solution):
        n = self.n = c.order
        self.c = c
        self.frame = frame
        self.deadline = deadline
        self.on_solution = on_solution
        self.comm = c.commutative
        self.pa = c.needs_power_associative
        self.full = (1 << n) - 1
        self.T = [[-1] * n for _ in range(n)]
        self.rowm = [0] * n
        self.colm = [0] * n
        self.trail: list[tuple[int, int]] = []
        self.nodes = 0
        self.raw = 0
        self.since_check = 0
        self.rng = random.Random(c.seed) if c.seed else None
        if frame.central:
            self.max_cycle = None
        else:
            self.max_cycle = frame.cycles[0] if frame.cycles else 1
        allowed = set(range(1, n + 1))
        if self.max_cycle is not None:
            allowed = {m for m in allowed if m <= self.max_cycle}
        if self.pa and c.exponent is not None:
            allowed &= set(_divisors(c.exponent))
        self.allowed_cycle = allowed
        self.longest = max(allowed)
        self.order_cells = self._cell_order()
        self.shift: list[list[int]] | None = None
        self.allowed = [[self.full] * n for _ in range(n)]
        if frame.quotient is not None:
            q = frame.cycles[0]
            coset = [((1 << q) - 1) << (q * g) for g in range(n // q)]
            K = frame.quotient
            self.allowed = [[coset[K[x // q][y // q]] for y in range(n)] for x in range(n)]
            self.tree_cells = [(q * s, q * h, q * K[s][h]) for s, h in _spanning_tree(K)]
            self.system = _CentralSystem(FiniteLoop(K), q, self.comm) if c.automorphic else None
            self.var_cells = {}
            if self.system is not None:
                for (g, h), v in self.system.var.items():
                    self.var_cells.setdefault(v, []).append((q * g, q * h, q * K[g][h]))
        else:
            self.tree_cells = []
            self.system = None

    def _cell_order(self) -> list[tuple[int, int]]:
        n = self.n
        if self.comm:
            return [(x, y) for x in range(1, n) for y in range(x, n)]
        return [(x, y) for x in range(1, n) for y in range(1, n)]

    # -- assignment and propagation ------------------------------------

    def _set(self, x: int, y: int, v: int, queue: list) -> None:
        cur = self.T[x][y]
        if cur >= 0:
            if cur != v:
                raise _Conflict
            return
        bit = 1 << v
        if (self.rowm[x] | self.colm[y]) & bit or not self.allowed[x][y] & bit:
            raise _Conflict
        self.T[x][y] = v
        self.rowm[x] |= bit
        self.colm[y] |= bit
        self.trail.append((x, y))
        queue.append((x, y, v))

    def _undo(self, mark: int) -> None:
        T, rowm, colm, trail = self.T, self.rowm, self.colm, self.trail
        while len(trail) > mark:
            x, y = trail.pop()
            bit = ~(1 << T[x][y])
            rowm[x] &= bit
            colm[y] &= bit
            T[x][y] = -1

    def _propagate(self, queue: list) -> None:
        while queue:
            x, y, v = queue.pop()
            if self.comm:
                self._set(y, x, v, queue)
            if self.shift is not None:
                sh = self.shift
                q = len(sh)
                for i in range(q):
                    xi = sh[i][x]
                    for j in range(q):
                        if i or j:
                            self._set(xi, sh[j][y], sh[(i + j) % q][v], queue)
            self._row_singles(x, queue)
            self._col_singles(y, queue)
            self._chain(x, queue)

    def _row_singles(self, x: int, queue: list) -> None:
        row, colm, allowed = self.T[x], self.colm, self.allowed[x]
        used = self.rowm[x]
        once = twice = 0
        cells = []
        for y in range(self.n):
            if row[y] < 0:
                d = allowed[y] & ~(used | colm[y])
                if not d:
                    raise _Conflict
                twice |= once & d
                once |= d
                cells.append((y, d))
        if not cells:
            return
        missing = self.full & ~used
        if once != missing:
            raise _Conflict
        for y, d in cells:
            if d & (d - 1) == 0:
                self._set(x, y, d.bit_length() - 1, queue)
        hidden = once & ~twice
        while hidden:
            b = hidden & -hidden
            hidden ^= b
            for y, d in cells:
                if d & b:
                    self._set(x, y, b.bit_length() - 1, queue)
                    break

    def _col_singles(self, y: int, queue: list) -> None:
        T, rowm, allowed = self.T, self.rowm, self.allowed
        used = self.colm[y]
        once = twice = 0
        cells = []
        for x in range(self.n):
            if T[x][y] < 0:
                d = allowed[x][y] & ~(used | rowm[x])
                if not d:
                    raise _Conflict
                twice |= once & d
                once |= d
                cells.append((x, d))
        if not cells:
            return
        if once != self.full & ~used:
            raise _Conflict
        for x, d in cells:
            if d & (d - 1) == 0:
                self._set(x, y, d.bit_length() - 1, queue)
        hidden = once & ~twice
        while hidden:
            b = hidden & -hidden
            hidden ^= b
            for x, d in cells:
                if d & b:
                    self._set(x, y, b.bit_length() - 1, queue)
                    break

    def _chain(self, x: int, queue: list) -> None:
        """Cycle of L_x through the identity: length must be allowed."""
        row = self.T[x]
        a, m = 0, 0
        while True:
            nxt = row[a]
            if nxt < 0:
                break
            m += 1
            if nxt == 0:
                if m not in self.allowed_cycle:
                    raise _Conflict
                return
            if m >= self.longest:
                raise _Conflict
            a = nxt
        # m steps known, a = a_m != 0 and a_{m+1} unknown
        if m + 1 == self.longest:
            self._set(x, a, 0, queue)

    # -- global checks ---------------------------------------------------

    def _power_rules(self, queue: list) -> None:
        """x^i x^j = x^(i+j) wherever both sides are determined by row x."""
        T = self.T
        for x in range(1, self.n):
            row = T[x]
            pw = [0]
            a = 0
            closed = False
            while True:
                nxt = row[a]
                if nxt < 0:
                    break
                if nxt == 0:
                    closed = True
                    break
                pw.append(nxt)
                a = nxt
            m = len(pw)
            if m < 3:
                continue
            for i in range(1, m):
                ri = T[pw[i]]
                for j in range(1, m):
                    k = i + j
                    if closed:
                        self._set(pw[i], pw[j], pw[k % m], queue)
                    elif k < m:
                        self._set(pw[i], pw[j], pw[k], queue)
                    elif k == m and ri[pw[j]] >= 0:
                        # x^(m) is x^i x^j, so it extends the chain
                        self._set(x, pw[m - 1], ri[pw[j]], queue)

    def _automorphic_deductions(self) -> list[tuple[int, int, int]]:
        n = S = self.n
        T = np.full((n + 1, n + 1), S, dtype=np.int64)
        T[:n, :n] = np.array(self.T)
        T[T < 0] = S
        known = T[:n, :n] < S
        a_idx, z_idx = np.nonzero(known)
        ld = np.full((n + 1, n + 1), S, dtype=np.int64)
        ld[a_idx, T[a_idx, z_idx]] = z_idx            # a \ (a z) = z
        u = np.arange(n)
        gens = []
        xs = np.arange(1, n)
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        X, Y = X.ravel(), Y.ravel()
        # u L_{x,y} = (y x) \ (y (x u))
        gens.append(ld[T[Y, X][:, None], T[Y[:, None], T[X[:, None], u[None, :]]]])
        if not self.comm:
            rd = np.full((n + 1, n + 1), S, dtype=np.int64)
            rd[z_idx, T[a_idx, z_idx]] = a_idx        # (a z) / z = a
            # u T_x = x \ (u x)
            gens.append(ld[xs[:, None], T[u[None, :], xs[:, None]]])
            # u R_{x,y} = ((u x) y) / (x y)
            gens.append(rd[T[X, Y][:, None], T[T[u[None, :], X[:, None]], Y[:, None]]])
        G = np.concatenate(gens)
        G = G[(G < S).sum(axis=1) > 1]                 # drop maps known only at 0
        if len(G) == 0:
            return []
        srt = np.sort(G, axis=1)
        if ((srt[:, 1:] == srt[:, :-1]) & (srt[:, 1:] < S)).any():
            raise _Conflict
        Gx = np.concatenate([G, np.full((len(G), 1), S)], axis=1)
        lhs = np.take_along_axis(Gx, T[:n, :n].reshape(1, -1).repeat(len(G), 0), axis=1)
        lhs = lhs.reshape(len(G), n, n)                # f(uv)
        fu = G[:, :, None]
        fv = G[:, None, :]
        rhs = T[fu, fv]                                # f(u) f(v)
        if ((lhs < S) & (rhs < S) & (lhs != rhs)).any():
            raise _Conflict
        ded = (lhs < S) & (rhs == S) & (fu < S) & (fv < S)
        if not ded.any():
            return []
        g, i, j = np.nonzero(ded)
        cells = np.stack([G[g, i], G[g, j], lhs[g, i, j]], axis=1)
        cells = np.unique(cells, axis=0)
        return [tuple(int(v) for v in row) for row in cells]

    def _linear(self) -> None:
        """Exact propagation of the central linear system."""
        if self.system is None:
            return
        q, T = self.system.q, self.T
        while True:
            known = {}
            for v, cells in self.var_cells.items():
                x, y, base = cells[0]
                if T[x][y] >= 0:
                    known[v] = T[x][y] - base
            forced = self.system.forced(known)
            if forced is None:
                raise _Conflict
            if not forced:
                return
            queue: list = []
            for v, val in forced.items():
                x, y, base = self.var_cells[v][0]
                self._set(x, y, base + val % q, queue)
            self._propagate(queue)

    def _global(self) -> None:
        self.since_check = 0
        while True:
            queue: list = []
            if self.pa:
                self._power_rules(queue)
                self._propagate(queue)
            if not self.c.automorphic:
                return
            ded = self._automorphic_deductions()
            if not ded:
                return
            for x, y, v in ded:
                self._set(x, y, v, queue)
            self._propagate(queue)

    # -- search ------------------------------------------------------------

    def run(self) -> None:
        n = self.n
        queue: list = []
        for x in range(n):
            self._set(0, x, x, queue)
            self._set(x, 0, x, queue)
        if self.frame.cycles:
            row1 = [0] * n
            start = 0
            for length in self.frame.cycles:
                for i in range(length):
                    row1[start + i] = start + (i + 1) % length
                start += length
            if self.frame.central:
                q = self.frame.cycles[0]
                self.shift = [list(range(n))]
                for _ in range(q - 1):
                    self.shift.append([row1[v] for v in self.shift[-1]])
                for y in range(n):
                    self._set(y, 1, row1[y], queue)
            for y in range(n):
                self._set(1, y, row1[y], queue)
            for x, y, v in self.tree_cells:
                self._set(x, y, v, queue)
        if self.system is not None and not self.system.feasible:
            return
        self._propagate(queue)
        self._linear()
        self._global()
        self._descend(0)

    def _descend(self, pos: int) -> None:
        self.nodes += 1
        if time.monotonic() > self.deadline:
            raise _Stop
        T = self.T
        cells = self.order_cells
        while pos < len(cells) and T[cells[pos][0]][cells[pos][1]] >= 0:
            pos += 1
        if pos == len(cells):
            if self.since_check:
                mark = len(self.trail)
                try:
                    self._global()
                except _Conflict:
                    self._undo(mark)
                    return
                self._undo(mark)   # a complete table admits no new deductions
            self.raw += 1
            self.on_solution([row[:] for row in T])
            return
        x, y = cells[pos]
        dom = self.allowed[x][y] & ~(self.rowm[x] | self.colm[y])
        values = [v for v in range(dom.bit_length()) if dom >> v & 1]
        if self.rng is not None:
            self.rng.shuffle(values)
        for v in values:
            mark = len(self.trail)
            try:
                queue: list = []
                self._set(x, y, v, queue)
                self._propagate(queue)
                self._linear()
                self.since_check += len(self.trail) - mark
                if self.since_check >= self.c.check_every:
                    self._global()
            except _Conflict:
                self._undo(mark)
                continue
            self._descend(pos + 1)
            self._undo(mark)


def _run_frame(c: SearchConstraints, frame: Frame, deadline: float, limit: int | None):
    """Search one frame; returns (tables, nodes, raw solutions, exhausted, timed out)."""
    tables: list[list[list[int]]] = []
    found: list[FiniteLoop] = []

    def on_solution(table):
        Q = FiniteLoop(table)
        if not c.accepts(Q):
            return
        if any(are_isomorphic(P, Q) is not None for P in found):
            return
        found.append(Q)
        tables.append(table)
        if limit is not None and len(found) >= limit:
            raise _Stop

    engine = _Engine(c, frame, deadline, on_solution)
    exhausted = timed_out = False
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * c.order * c.order + 100))
    try:
        engine.run()
        exhausted = True
    except _Conflict:
        exhausted = True
    except _Stop:
        timed_out = limit is None or len(found) < limit
    finally:
        sys.setrecursionlimit(old)
    return tables, engine.nodes, engine.raw, exhausted, timed_out


def find_loops(c: SearchConstraints, limit: int | None = 1, jobs: int = 1) -> SearchResult:
    """Up to ``limit`` pairwise non-isomorphic loops meeting ``c`` (all if limit is None)."""
    start = time.monotonic()
    deadline = start + c.time_budget
    plan, covering = frames(c, deadline)
    result = SearchResult([], complete=False, budget_exhausted=False, frames=[f.name for f in plan])

    def absorb(tables, nodes, raw):
        result.nodes += nodes
        result.raw_solutions += raw
        for table in tables:
            Q = FiniteLoop(table)
            if limit is not None and len(result.loops) >= limit:
                return
            if all(are_isomorphic(P, Q) is None for P in result.loops):
                result.loops.append(Q)

    def enough() -> bool:
        return limit is not None and len(result.loops) >= limit

    exhausted_all = True
    if jobs > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_frame, c, f, deadline, limit) for f in plan]
            outcomes = [fut.result() for fut in futures]
        for tables, nodes, raw, exhausted, timed_out in outcomes:
            absorb(tables, nodes, raw)
            exhausted_all &= exhausted
            result.budget_exhausted |= timed_out
    else:
        for f in plan:
            if enough():
                exhausted_all = False
                break
            tables, nodes, raw, exhausted, timed_out = _run_frame(c, f, deadline, limit)
            absorb(tables, nodes, raw)
            exhausted_all &= exhausted
            if timed_out:
                result.budget_exhausted = True
                break
    if enough():
        result.budget_exhausted = False
    if time.monotonic() > deadline and not enough():
        result.budget_exhausted = True
    result.complete = covering and exhausted_all and not result.budget_exhausted
    result.elapsed = time.monotonic() - start
    return result
