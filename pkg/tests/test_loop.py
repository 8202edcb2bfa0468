import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA, abelian_groups, qa, s3
from loopsmith.errors import (NoIdentity, NotASubloop, NotLatin, NotNormal, OrderUndefined,
                              TableFormatError)
from loopsmith.loop import (FiniteLoop, cyclic_group, direct_product, divide, element_order,
                            exponent, format_table, is_associative, is_commutative,
                            is_homomorphism, is_normal, is_power_associative, is_subloop,
                            parse_table, power, quotient, quotient_map, read_table, restrict,
                            subloop_generated)

LOOPS = [cyclic_group(7), direct_product(cyclic_group(2), cyclic_group(4)), s3(),
         read_table(DATA / "a6-nonassoc.tbl"), read_table(DATA / "ca8-trivial-center.tbl"),
         read_table(DATA / "ca27-0.tbl"), qa(3, "0,1,2,0")]


@st.composite
def loop_and_elements(draw, k=2):
    Q = draw(st.sampled_from(LOOPS))
    return (Q,) + tuple(draw(st.integers(0, Q.n - 1)) for _ in range(k))


@settings(max_examples=300, deadline=None)
@given(loop_and_elements())
def test_division_round_trips(args):
    Q, x, y = args
    z = divide(Q, x, y, "left")
    assert Q.mul(x, z) == y
    w = divide(Q, x, y, "right")
    assert Q.mul(w, x) == y


@settings(max_examples=200, deadline=None)
@given(loop_and_elements(1))
def test_identity_and_inverse(args):
    Q, x = args
    assert Q.mul(0, x) == x == Q.mul(x, 0)
    assert Q.mul(x, int(Q.inverse[x])) == 0


def test_divide_rejects_bad_side():
    with pytest.raises(ValueError):
        divide(cyclic_group(3), 1, 2, "up")


@settings(max_examples=100, deadline=None)
@given(loop_and_elements(1), st.integers(0, 12), st.integers(0, 12))
def test_powers_add_in_power_associative_loops(args, i, j):
    Q, x = args
    if not is_power_associative(Q):
        return
    assert Q.mul(power(Q, x, i), power(Q, x, j)) == power(Q, x, i + j)
    assert power(Q, x, element_order(Q, x)) == 0
    assert power(Q, x, -1) == int(Q.inverse[x])


def test_non_power_associative_orders_undefined():
    # a loop of order 5 that is not power-associative
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 3, 4, 0, 1],
         [3, 4, 1, 2, 0],
         [4, 2, 0, 1, 3]]
    Q = FiniteLoop(t)
    assert not is_power_associative(Q)
    with pytest.raises(OrderUndefined):
        element_order(Q, 2)


@settings(max_examples=100, deadline=None)
@given(loop_and_elements(2))
def test_closure_idempotent(args):
    Q, x, y = args
    S = subloop_generated(Q, (x, y))
    assert subloop_generated(Q, S) == S
    assert is_subloop(Q, S)
    assert 0 in S and Q.n % len(S) == 0 or not is_associative(Q)


def test_restrict_and_subloops():
    Z6 = cyclic_group(6)
    assert subloop_generated(Z6, (2,)) == (0, 2, 4)
    sub = restrict(Z6, (0, 2, 4))
    assert is_associative(sub) and sub.n == 3
    with pytest.raises(NotASubloop):
        restrict(Z6, (0, 1))


def test_quotients():
    Z6 = cyclic_group(6)
    q, coset_of = quotient_map(Z6, (0, 3))
    assert q.n == 3 and is_homomorphism(Z6, q, coset_of)
    S3 = s3()
    assert not is_normal(S3, (0, 1))
    with pytest.raises(NotNormal):
        quotient(S3, (0, 1))
    A3 = subloop_generated(S3, [x for x in range(6) if len(subloop_generated(S3, (x,))) == 3])
    assert len(A3) == 3 and is_normal(S3, A3)
    assert quotient(S3, A3).n == 2


@pytest.mark.parametrize("name,Q", list(abelian_groups().items()))
def test_groups_basic(name, Q):
    assert is_associative(Q) and is_commutative(Q)
    assert exponent(Q) == max(element_order(Q, x) for x in range(Q.n)) or Q.n == 1


def test_nonabelian_and_nonassociative():
    assert is_associative(s3()) and not is_commutative(s3())
    A6 = read_table(DATA / "a6-nonassoc.tbl")
    assert not is_associative(A6)


def test_constructor_rejections():
    with pytest.raises(NotLatin):
        FiniteLoop([[0, 1], [1, 1]])
    with pytest.raises(NoIdentity):
        FiniteLoop([[1, 0], [0, 1]])
    with pytest.raises(NotLatin):
        FiniteLoop([[0, 1, 2], [1, 2, 0]])


def test_from_table_relabels_identity():
    Q = FiniteLoop.from_table([[1, 0], [0, 1]])
    assert Q.relabeling == (1, 0)
    assert np.array_equal(Q.table, cyclic_group(2).table)
    with pytest.raises(NoIdentity):
        FiniteLoop.from_table([[0, 2, 1], [2, 1, 0], [1, 0, 2]])


@pytest.mark.parametrize("Q", LOOPS)
def test_format_round_trip(Q):
    text = format_table(Q, comment="a comment\nsecond line")
    assert text.endswith("\n")
    assert parse_table(text) == Q


@pytest.mark.parametrize("text,line", [
    ("2\n0 1\n1 0", 3),
    ("2\n0 1\n\n1 0\n", 3),
    ("2\n0 x\n1 0\n", 2),
    ("2 2\n0 1\n1 0\n", 1),
    ("2\n0 1 1\n1 0\n", 2),
    ("2\n0 1\n1 2\n", 3),
    ("2\n0 1\n1 0\n1 0\n", 4),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(TableFormatError) as info:
        parse_table(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_errors_without_line():
    with pytest.raises(TableFormatError):
        parse_table("")
    with pytest.raises(TableFormatError):
        parse_table("# only a comment\n")
    with pytest.raises(TableFormatError):
        parse_table("3\n0 1 2\n1 2 0\n")
    with pytest.raises(NoIdentity):
        parse_table("2\n1 0\n0 1\n")


def test_direct_product_and_homomorphism():
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert P.n == 6 and is_associative(P)
    # Z2 x Z3 is cyclic: 1 -> (1,1)
    f = [power(P, 4, k) for k in range(6)]
    assert is_homomorphism(cyclic_group(6), P, f)
    assert not is_homomorphism(cyclic_group(6), P, [0, 2, 1, 3, 4, 5])
