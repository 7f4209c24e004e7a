import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import class_params
from sliceinv.groupalg import matrix_of_word, mat_eq, mat_mul, s_conjugate_matrix
from sliceinv.rootsys import parse_root, root_add
from sliceinv.strata import stratify
from sliceinv.verify import (
    TrialConfig, Verdict, check_closed_form, check_invariance, check_prop58, flip_t0_sign,
    numeric_slice_oracle, run_lemma_suite, run_suite, sample_point,
)
from sliceinv.weyl import representative, special_orbits


def _strip(verdicts):
    return [{k: v for k, v in x.to_json().items() if k != "seconds"} for x in verdicts]


def test_verdict_validation():
    with pytest.raises(ValueError):
        Verdict("x", {}, "maybe")
    with pytest.raises(ValueError):
        Verdict("x", {}, "fail")
    assert Verdict("x", {}, "fail", {"why": 1}).failed


@pytest.mark.parametrize("kw", [dict(mode="loose"), dict(l_min=3, l_max=2), dict(pool=0), dict(trials=-1)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        TrialConfig(**kw)


def test_reports_are_deterministic():
    cfg = TrialConfig(l_max=4, trials=3, seed=7)
    assert _strip(run_suite("all", cfg)) == _strip(run_suite("all", cfg))


def test_seed_changes_the_sample():
    rep = representative(4, 2)
    st_ = stratify(rep)
    a = sample_point(TrialConfig(seed=1), rep, st_, "x")[0]
    b = sample_point(TrialConfig(seed=2), rep, st_, "x")[0]
    assert a != b


def test_suite_names():
    cfg = TrialConfig(l_max=2, trials=1)
    assert _strip(run_suite("prop58", cfg)) == _strip(run_suite("closed-form", cfg))
    with pytest.raises(ValueError):
        run_suite("nonsense", cfg)
    assert check_prop58 is check_closed_form


@given(class_params(l_max=6), st.integers(0, 2 ** 16))
def test_oracle_output_lies_on_the_slice(lp, seed):
    rep = representative(*lp)
    st_ = stratify(rep)
    v, zd = sample_point(TrialConfig(l_max=rep.l, seed=seed), rep, st_, "oracle")
    res = numeric_slice_oracle(rep, st_, v, zd)
    S, S_inv = s_conjugate_matrix(rep)
    expected = mat_mul(mat_mul(matrix_of_word(res.n_s, rep.n), res.z_prime), S_inv)
    assert mat_eq(res.slice, expected)
    assert all(f.root in st_.delta_s for f in res.n_s)


def test_canary_is_caught():
    cfg = TrialConfig(l_min=4, l_max=4, lprimes=(3,), trials=10)
    assert not any(v.failed for v in check_closed_form(cfg))
    bad = [v for v in check_closed_form(cfg, mutate=flip_t0_sign) if v.failed]
    assert bad
    again = [v for v in check_closed_form(cfg, mutate=flip_t0_sign) if v.failed]
    assert bad[0].counterexample == again[0].counterexample


def test_lemma_counterexamples_replay():
    """Every reported exception to the layer-partner statement really is one."""
    cfg = TrialConfig(l_max=6)
    for v in run_lemma_suite(cfg, {"layer-partner-orbits"}):
        if not v.failed:
            continue
        rep = representative(v.params["l"], v.params["lprime"])
        st_ = stratify(rep)
        so = special_orbits(rep, check=False)
        for eta, e1, e2 in (map(parse_root, t) for t in v.counterexample["first"]):
            assert root_add(e1, e2) == eta
            assert st_.d[eta] == st_.d[e1] >= 2
            assert e2 not in so.o1 and e2 not in so.o2


def test_lemma_suite_known_outcome():
    fails = {(v.check_id, v.params["l"], v.params["lprime"])
             for v in run_lemma_suite(TrialConfig(l_max=4)) if v.failed}
    assert fails == {("lemma.layer-partner-orbits", 3, 2), ("lemma.layer-partner-orbits", 4, 2),
                     ("lemma.layer-partner-orbits", 4, 3), ("lemma.mixed-orbits", 1, 1)}


def test_invariance_small():
    vs = check_invariance(TrialConfig(l_max=4, trials=2))
    assert not any(v.failed for v in vs)
    assert {v.check_id for v in vs} == {"invariance", "invariance.z-part"}


def test_strict_mode_diverges():
    cfg = TrialConfig(l_min=3, l_max=3, lprimes=(2,), trials=3, mode="strict")
    assert any(v.failed for v in check_closed_form(cfg))
