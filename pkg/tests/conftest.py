from __future__ import annotations

import itertools
import time
from pathlib import Path

import numpy as np
import pytest

from loopsmith.gf import Mat2
from loopsmith.loop import FiniteLoop, cyclic_group, direct_product, from_function, read_table
from loopsmith.qa import QAParams, qa_loop

DATA = Path(__file__).parent / "data"

_ACCEPTANCE: list[str] = []
_START = time.monotonic()
BATTERY_LIMIT_SECONDS = 45 * 60


def s3() -> FiniteLoop:
    perms = list(itertools.permutations(range(3)))       # identity first
    index = {p: i for i, p in enumerate(perms)}
    return from_function(6, lambda x, y: index[tuple(perms[y][perms[x][k]] for k in range(3))])


def abelian_groups() -> dict[str, FiniteLoop]:
    out = {f"Z{n}": cyclic_group(n) for n in range(1, 28)}
    products = [(2, 2), (2, 4), (2, 2, 2), (3, 3), (2, 6), (2, 8), (4, 4), (2, 2, 4),
                (2, 2, 2, 2), (3, 6), (2, 10), (2, 12), (2, 2, 6), (5, 5), (3, 9), (3, 3, 3)]
    for factors in products:
        name = "x".join(f"Z{f}" for f in factors)
        out[name] = direct_product(*(cyclic_group(f) for f in factors))
    return out


def qa(p: int, text: str) -> FiniteLoop:
    return qa_loop(QAParams(p, Mat2.parse(text, p)))


def row_switch(Q: FiniteLoop) -> FiniteLoop:
    """Swap the entries of two rows along one cycle that avoids column 0.

    The result is again a loop with identity 0 but a different table.
    """
    t = Q.table.copy()
    n = Q.n
    for a in range(1, n):
        for b in range(a + 1, n):
            pos_in_a = np.empty(n, dtype=np.int64)
            pos_in_a[t[a]] = np.arange(n)
            # column y is followed by the column where row a holds t[b, y]
            nxt = pos_in_a[t[b]]
            seen = {0}
            y = nxt[0]
            while y != 0:
                seen.add(int(y))
                y = nxt[y]
            rest = [y for y in range(n) if y not in seen]
            if not rest:
                continue
            cycle = [rest[0]]
            y = nxt[rest[0]]
            while y != rest[0]:
                cycle.append(int(y))
                y = nxt[y]
            t[a, cycle], t[b, cycle] = t[b, cycle].copy(), t[a, cycle].copy()
            return FiniteLoop(t)
    raise ValueError("no switchable cycle")


@pytest.fixture(scope="session")
def groups() -> dict[str, FiniteLoop]:
    return abelian_groups()


@pytest.fixture(scope="session")
def ca27() -> list[FiniteLoop]:
    return [read_table(p) for p in sorted(DATA.glob("ca27-*.tbl"))]


@pytest.fixture(scope="session")
def ca8() -> FiniteLoop:
    return read_table(DATA / "ca8-trivial-center.tbl")


@pytest.fixture(scope="session")
def commutative_automorphic_corpus(groups, ca27, ca8) -> dict[str, FiniteLoop]:
    corpus = {"ca8": ca8, "qa2": qa(2, "0,1,1,1")}
    corpus.update({f"ca27-{i}": Q for i, Q in enumerate(ca27)})
    corpus.update(groups)
    return corpus


@pytest.fixture(scope="session")
def acceptance_log():
    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    failed = len(terminalreporter.stats.get("failed", [])) + len(terminalreporter.stats.get("error", []))
    elapsed = time.monotonic() - _START
    ok = failed == 0 and elapsed < BATTERY_LIMIT_SECONDS
    lines = sorted(_ACCEPTANCE, key=lambda s: int(s.split(":")[0].split()[1]))
    lines.append(f"criterion 10: {'PASS' if ok else 'FAIL'}  full battery: {failed} failed, "
                 f"{elapsed:.0f} s (limit {BATTERY_LIMIT_SECONDS} s)")
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
