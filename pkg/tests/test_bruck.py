import pytest

from conftest import qa, row_switch
from loopsmith.bruck import (aip_witness, bol_witness, bruck_associate, bruck_report, p_map,
                             powers_witness, unique_2_divisible, verify_centers_theorem,
                             verify_section4_suite)
from loopsmith.errors import IdentityFailure, LoopError, NotDivisible
from loopsmith.loop import cyclic_group
from loopsmith.perm import Perm
from loopsmith.structure import center


def test_square_roots():
    S = unique_2_divisible(cyclic_group(3))
    assert S(1) == 2
    with pytest.raises(NotDivisible) as info:
        unique_2_divisible(qa(2, "0,1,1,1"))
    x, y, s = info.value.witness
    assert x != y and s == 0


def test_odd_corpus_is_uniquely_2_divisible(commutative_automorphic_corpus):
    for Q in commutative_automorphic_corpus.values():
        if Q.n % 2:
            S = unique_2_divisible(Q)
            assert all(Q.mul(S(x), S(x)) == x for x in range(Q.n))


def test_p_map_identity(ca27):
    assert p_map(ca27[0], 0) == Perm.identity(27)


def test_abelian_groups_are_their_own_bruck_loops(groups):
    for Q in groups.values():
        if Q.n % 2:
            assert bruck_associate(Q) == Q


def test_order_27_bruck_loops(ca27):
    for Q in ca27:
        B = bruck_associate(Q)
        assert bol_witness(B) is None and aip_witness(B) is None
        assert powers_witness(Q, B) is None
        assert B.n == 27 and B != Q


@pytest.mark.parametrize("name", ["Z9", "Z3xZ3"])
def test_centers_theorem_groups(name, groups):
    rep = verify_centers_theorem(groups[name])
    assert rep["ok"] and rep["series_dot"] == rep["series_circ"] == [[0], list(range(9))]


def test_centers_theorem_order_27(ca27):
    for Q in ca27:
        rep = verify_centers_theorem(Q)
        assert rep["ok"], rep["checks"]
        assert len(rep["series_dot"]) == 3


def test_section4_suite_order_27(ca27, groups):
    for Q in ca27:
        rep = verify_section4_suite(Q)
        assert rep["ok"] and not rep["vacuous"], rep["failures"]
        assert set(rep["center_circ"]) <= set(center(Q))
    assert verify_section4_suite(groups["Z27"])["ok"]


def test_section4_suite_detects_corruption(ca27):
    for Q in ca27:
        M = row_switch(Q)
        try:
            rep = verify_section4_suite(M, bruck_associate(Q))
        except LoopError:
            continue
        assert not rep["ok"]


def test_bruck_associate_rejects_corruption(ca27):
    for Q in ca27:
        M = row_switch(Q)
        with pytest.raises((IdentityFailure, NotDivisible, LoopError)):
            bruck_associate(M)


def test_bruck_report(ca27):
    rep = bruck_report(ca27[0])
    assert rep == {"bol_ok": True, "aip_ok": True, "powers_match": True,
                   "centers_theorem_ok": True, "section4_suite_ok": True}
