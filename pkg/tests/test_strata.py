from fractions import Fraction

import pytest
from hypothesis import given

from conftest import class_params
from sliceinv.rootsys import root_add
from sliceinv.strata import (
    appendix_discrepancies, c_pairs, decompositions, order_key, p_pairs, p_prime_pairs, r_pairs,
    script_d, stratify,
)
from sliceinv.weyl import representative


def _brute_d(rep, r):
    """First k >= 1 with s^-k(r) negative, by iterating the index map."""
    inv = rep.s_inv
    a, b = r.row, r.col
    k = 0
    while True:
        a, b, k = inv(a), inv(b), k + 1
        if a > b:
            return k


@given(class_params(l_max=9))
def test_d_matches_iterated_action(lp):
    rep = representative(*lp)
    st = stratify(rep)
    for r in st.kplus:
        assert st.d[r] == _brute_d(rep, r)


@given(class_params(l_max=9))
def test_layers_partition(lp):
    st = stratify(representative(*lp))
    seen = [r for layer in st.layers for r in layer]
    assert sorted(seen) == sorted(st.kplus)
    assert len(st.layers) == st.D + 1
    assert all(st.layers)


@given(class_params(l_max=9))
def test_delta_s_sits_in_the_deepest_layers(lp):
    st = stratify(representative(*lp))
    assert st.delta_s <= st.layer(st.D) | st.layer(st.D + 1)
    assert st.layer(st.D + 1) <= st.delta_s
    assert st.delta_s_inv <= st.layer(1)


@given(class_params(l_max=9))
def test_classes_by_row_and_column(lp):
    rep = representative(*lp)
    st = stratify(rep)
    for r in st.kplus:
        cls = st.crc[r]
        if rep.s(r.row) == r.row:
            assert cls == "C"
        elif rep.s(r.col) == r.col:
            assert cls == "R"
        else:
            assert cls in ("O1", "O2", "O3")


@given(class_params(l_max=9))
def test_order_is_total_and_deepest_first(lp):
    st = stratify(representative(*lp))
    keys = [order_key(st, r) for r in st.ordered]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    ds = [st.d[r] for r in st.ordered]
    assert ds == sorted(ds, reverse=True)


@given(class_params(l_max=8))
def test_decompositions_are_all_root_sums(lp):
    st = stratify(representative(*lp))
    kp = st.kplus_set
    for alpha in st.kplus:
        expected = {(a, b) for a in kp for b in kp if root_add(a, b) == alpha}
        assert set(decompositions(st, alpha)) == expected


@given(class_params(l_max=8))
def test_pair_sets_are_decompositions_with_layer_limits(lp):
    st = stratify(representative(*lp))
    for alpha in st.kplus:
        dec = set(decompositions(st, alpha))
        for a, b in p_pairs(st, alpha):
            assert (a, b) in dec and 2 <= st.d[a] < st.d[alpha] == st.d[b]
        for a, b in p_prime_pairs(st, alpha):
            assert (a, b) in dec and st.d[a] == st.d[b] == st.d[alpha]
        for q in range(2, st.D + 2):
            for f in range(q, st.D + 2):
                for a, b in c_pairs(st, alpha, q, f) | r_pairs(st, alpha, q, f):
                    assert (a, b) in dec and q <= st.d[a] <= f and st.d[b] >= st.d[alpha]


def test_script_d_on_half_integers():
    assert script_d(1, 4) == 1
    assert script_d(Fraction(1, 2), Fraction(7, 2)) == 1
    assert script_d(2, 2) == 0


def test_appendix_discrepancies_are_stable():
    # brute force is authoritative; this pins the reported disagreement count
    total = sum(len(appendix_discrepancies(representative(l, k)))
                for l in range(1, 9) for k in range(1, l + 1))
    assert total == 252


@pytest.mark.parametrize("l,k,layer2", [(3, 3, {"a(1,2)", "a(2,2)", "a(2,3)"})])
def test_known_layer(l, k, layer2):
    st = stratify(representative(l, k))
    assert {str(r) for r in st.layer(2)} == layer2
