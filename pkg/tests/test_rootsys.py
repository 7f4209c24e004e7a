from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sliceinv.rootsys import (
    RankContext, Root, e_matrix, enumerate_positive, parse_root, root_add, root_at, row_col,
)


@st.composite
def roots(draw, l_max: int = 8):
    l = draw(st.integers(1, l_max))
    i = draw(st.integers(1, l))
    j = draw(st.integers(i, l))
    return l, Root(i, j, draw(st.sampled_from([1, -1])))


def _mul(a, b):
    n = len(a)
    return [[sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)] for r in range(n)]


def test_positive_count():
    for l in range(1, 9):
        pos = enumerate_positive(l)
        assert len(pos) == l * (l + 1) // 2
        assert len(set(pos)) == len(pos)
        assert all(r.positive for r in pos)


@given(roots())
def test_row_col_round_trip(lr):
    _, r = lr
    assert root_at(*row_col(r)) == r
    assert r.row_col() == (r.row, r.col)
    assert (-r).row_col() == (r.col, r.row)
    assert -(-r) == r


@given(roots())
def test_text_round_trip(lr):
    _, r = lr
    assert parse_root(str(r)) == r


@given(roots())
def test_height_is_signed_length(lr):
    _, r = lr
    i, j = sorted(r.row_col())
    assert abs(r.height) == j - i


@given(roots(), st.data())
def test_root_add_matches_matrix_commutator(lr, data):
    l, a = lr
    b = data.draw(roots(l_max=l).filter(lambda x: x[0] == l) | st.just((l, a)))[1]
    b.check_rank(l)
    if a == -b:
        return
    ea, eb = e_matrix(a, l), e_matrix(b, l)
    ab, ba = _mul(ea, eb), _mul(eb, ea)
    comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
    s = root_add(a, b)
    if s is None:
        assert all(x == 0 for row in comm for x in row)
    else:
        sign = 1 if a.col == b.row else -1
        expected = [[sign * x for x in row] for row in e_matrix(s, l)]
        assert comm == expected


def test_e_matrix_single_entry():
    m = e_matrix(Root(2, 3), 4)
    nonzero = [(r, c) for r in range(5) for c in range(5) if m[r][c]]
    assert nonzero == [(1, 3)]
    assert m[1][3] == Fraction(1)


def test_rank_context():
    ctx = RankContext.of(3)
    assert ctx.n == 4
    assert len(ctx.all_roots()) == 12


@pytest.mark.parametrize("text", ["a(0,1)", "a(3,2)", "b(1,1)", ""])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_root(text)
