from hypothesis import given
from hypothesis import strategies as st

from conftest import class_params, rationals
from sliceinv.groupalg import QQ, Factor, mat_eq, matrix_of_word, poly_ring
from sliceinv.rearrange import (
    free_layer_inputs, merge_word, move_left, move_right, run_pipeline, sort_word,
)
from sliceinv.strata import stratify
from sliceinv.weyl import representative


@st.composite
def setups(draw, l_max=7):
    rep = representative(*draw(class_params(l_max=l_max, l_min=2)))
    return rep, stratify(rep)


def _factor(draw, roots):
    return Factor(draw(st.sampled_from(roots)), draw(rationals().filter(bool)))


@given(setups(), st.data())
def test_move_right_conserves_the_product(setup, data):
    rep, st_ = setup
    x = _factor(data.draw, list(st_.kplus))
    deeper = [r for r in st_.kplus if st_.d[r] >= st_.d[x.root]]
    u = [_factor(data.draw, deeper) for _ in range(data.draw(st.integers(0, 5)))]
    out, emitted = move_right(st_, x, u, QQ)
    assert all(st_.d[f.root] == st_.d[x.root] for f in emitted)
    lhs = matrix_of_word([x] + u, rep.n)
    rhs = matrix_of_word(out + emitted + [x], rep.n)
    assert mat_eq(lhs, rhs)


@given(setups(), st.data())
def test_move_left_conserves_the_product(setup, data):
    rep, st_ = setup
    x = _factor(data.draw, list(st_.kplus))
    shallower = [r for r in st_.kplus if st_.d[r] <= st_.d[x.root]]
    u = [_factor(data.draw, shallower) for _ in range(data.draw(st.integers(0, 5)))]
    emitted, out = move_left(st_, x, u, QQ)
    assert all(st_.d[f.root] == st_.d[x.root] for f in emitted)
    assert mat_eq(matrix_of_word(u + [x], rep.n), matrix_of_word([x] + emitted + out, rep.n))


@given(setups(), st.data())
def test_sort_word_orders_without_changing_the_product(setup, data):
    rep, st_ = setup
    w = [_factor(data.draw, list(st_.kplus)) for _ in range(data.draw(st.integers(0, 6)))]
    out = sort_word(st_, w, QQ)
    keys = [st_.key(f.root) for f in out]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert mat_eq(matrix_of_word(out, rep.n), matrix_of_word(w, rep.n))


@given(setups(), st.data())
def test_merge_word(setup, data):
    rep, st_ = setup
    w = [_factor(data.draw, list(st_.kplus)[:2]) for _ in range(data.draw(st.integers(0, 6)))]
    out = merge_word(w)
    assert all(a.root != b.root for a, b in zip(out, out[1:]))
    assert mat_eq(matrix_of_word(out, rep.n), matrix_of_word(w, rep.n))


@given(class_params(l_max=6, l_min=2))
def test_pipeline_conserves_and_yields_layer_k(lp):
    rep = representative(*lp)
    st_ = stratify(rep)
    ring = poly_ring(None)
    for k in range(2, st_.D + 2):
        n_primes, v = free_layer_inputs(st_, k)
        res = run_pipeline(st_, k, n_primes, v, ring, check=True)
        assert res.k == k
        assert all(st_.d[f.root] == k for f in res.n_k)
        assert set(res.cbar) <= st_.layer(k)


def test_trace_names():
    st_ = stratify(representative(4, 3))
    n_primes, v = free_layer_inputs(st_, 2)
    res = run_pipeline(st_, 2, n_primes, v, record=True)
    names = [name for name, _ in res.trace]
    assert names[0] == "v(1)" and "v(2,2)" in names and "n_2^(2)" in names
