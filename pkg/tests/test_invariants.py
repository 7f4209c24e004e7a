from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import class_params
from sliceinv.exactring import VarId
from sliceinv.groupalg import Factor
from sliceinv.invariants import (
    FormulaConfig, anchor, commutator_sign, corrected_c_kappa_terms, evaluate_terms, generators,
    layer_terms, letter_root, slice_coordinates,
)
from sliceinv.rootsys import Root
from sliceinv.strata import stratify
from sliceinv.verify import TrialConfig, check_cross_engine, numeric_slice_oracle, sample_point
from sliceinv.weyl import representative


@pytest.mark.parametrize("l", range(1, 7))
def test_one_generator_per_root_of_delta_s(l):
    for k in range(1, l + 1):
        rep = representative(l, k)
        gs = generators(rep)
        assert set(gs.kappa_to_poly) == set(stratify(rep).delta_s)


@given(class_params(l_max=6))
def test_generators_are_unitriangular_in_their_own_coordinate(lp):
    rep = representative(*lp)
    for kap, poly in generators(rep).kappa_to_poly.items():
        own = ((VarId.c(kap), 1),)
        assert poly.terms.get(own) == 1


def test_records_shape():
    recs = generators(representative(3, 3)).records()
    assert [r["kappa"] for r in recs] == ["a(1,2)", "a(2,2)", "a(2,3)"]
    assert all(set(r) == {"kappa", "degree", "terms", "support", "poly"} for r in recs)


@given(class_params(l_max=6, l_min=2), st.integers(0, 2 ** 16))
def test_closed_form_equals_oracle_at_random_points(lp, seed):
    rep = representative(*lp)
    st_ = stratify(rep)
    cfg = TrialConfig(l_max=rep.l, seed=seed)
    v, zd = sample_point(cfg, rep, st_, "hyp")
    res = numeric_slice_oracle(rep, st_, v, zd)
    got = slice_coordinates(st_, zd, v)
    truth = res.coords()
    truth.update(res.n_s_coords())
    for r in st_.kplus:
        if st_.d[r] >= 2 and r not in st_.delta_s:
            assert got[r] == truth.get(r, 0), r
    for r in st_.delta_s:
        assert got[r] == res.n_s_coords().get(r, 0), r


def test_cross_engine_corrected():
    assert not [v for v in check_cross_engine(TrialConfig(l_max=5)) if v.failed]


def test_verbatim_form_disagrees_with_the_engine():
    bad = [v for v in check_cross_engine(TrialConfig(l_max=5), "verbatim") if v.failed]
    assert bad


@given(class_params(l_max=7, l_min=2))
def test_every_summand_has_the_weight_of_its_root(lp):
    st_ = stratify(representative(*lp))
    n = st_.rep.n
    for k in range(2, st_.D + 2):
        for kap, terms in layer_terms(st_, k).items():
            assert terms == corrected_c_kappa_terms(st_, kap)
            for word in terms:
                ws = [_weight(letter_root(st_, x), n) for x in word]
                assert tuple(map(sum, zip(*ws))) == _weight(kap, n)


def _weight(r, n):
    """e_row - e_col as a vector."""
    return tuple(int(i == r.row) - int(i == r.col) for i in range(1, n + 1))


def test_commutator_sign():
    assert commutator_sign(Root(1, 1), Root(2, 2)) == 1
    assert commutator_sign(Root(2, 2), Root(1, 1)) == -1


def test_anchor_without_c_letters():
    st_ = stratify(representative(3, 3))
    assert anchor(st_, ()) < anchor(st_, (("c", Root(1, 2)),))


def test_evaluate_terms():
    a, b = ("c", Root(1, 1)), ("cp", Root(2, 2))
    terms = {(a,): Fraction(2), (a, b): Fraction(-1)}
    vals = {a: Fraction(3), b: Fraction(5)}
    assert evaluate_terms(terms, vals.__getitem__) == 6 - 15


def test_layer_one_is_the_input():
    rep = representative(4, 2)
    st_ = stratify(rep)
    v, zd = sample_point(TrialConfig(), rep, st_, "layer1")
    got = slice_coordinates(st_, zd, v)
    assert all(got[r] == v[r] for r in st_.layer(1))


def test_formula_config_is_hashable():
    assert len({FormulaConfig(), FormulaConfig("verbatim"), FormulaConfig()}) == 2
    assert Factor(Root(1, 1), 1) == Factor(Root(1, 1), 1)
