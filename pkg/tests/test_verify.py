from fractions import Fraction

import pytest

from gl3calogero.exactnum import ParamPoly
from gl3calogero.fockrep import rep_config
from gl3calogero.liealg import artifacts, gl3_spec, h5_spec
from gl3calogero.models import D_MONOMIALS, ModelParams, commutator_J, d_block, h_a2_pq, k_a2_pq
from gl3calogero.ncalg import normal_order, parse_ncpoly
from gl3calogero.verify import (
    CHECKS,
    check_artifact_closure_example,
    check_artifact_ideal,
    check_g2_invariance,
    check_homomorphism,
    check_poisson_noncommutativity,
    check_substitution_consistency,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    run_checks,
)

G, H5 = gl3_spec(), h5_spec()


def test_theorem1_passes():
    r = check_theorem1()
    assert r.passed and r.residual == ""


def test_theorem1_rational_limit():
    assert check_theorem1(params=ModelParams.make(tau=0, mu=0)).passed


def test_theorem1_negative_control():
    h = h_a2_pq() + parse_ncpoly("px", H5)
    r = check_theorem1(h=h)
    assert not r.passed and r.residual


def test_theorem2_and_negative_control():
    assert check_theorem2().passed
    bad = list(artifacts())
    bad[3] = bad[3] + G.gen("J4")
    r = check_theorem2(bad)
    assert not r.passed and r.residual.startswith("A4 ->")


def test_homomorphism():
    assert check_homomorphism().passed


def test_theorem3_reports_blocks():
    r = check_theorem3()
    # the tail blocks D9..D12 agree, so they never appear in the residual
    for m in (9, 10, 11, 12):
        assert f"D{m} " not in r.residual
    assert "abstract commutator vanishes" not in r.residual


def test_theorem3_self_consistent_table_passes():
    # feeding the commutator's own blocks through the same comparison must pass
    comm = commutator_J()
    by_exp = comm.param_blocks()
    table = {m: by_exp.get((0, a, b, 0), G.zero()) for m, (a, b) in enumerate(D_MONOMIALS, start=1)}
    extra = {e: blk for e, blk in by_exp.items() if e not in {(0, a, b, 0) for a, b in D_MONOMIALS}}
    trimmed = comm
    for e, blk in extra.items():
        mono = ParamPoly.symbol("tau", e[1]) * ParamPoly.symbol("mu", e[2])
        trimmed = trimmed - blk * mono
    assert check_theorem3(commutator=trimmed, blocks=table).passed


def test_theorem3_zero_commutator_flagged():
    r = check_theorem3(commutator=G.zero(), blocks={m: G.zero() for m in range(1, 13)})
    assert not r.passed and "abstract commutator vanishes" in r.residual


def test_theorem3_perturbed_tail_block_fails():
    blocks = {12: d_block(12) + G.gen("J8")}
    r = check_theorem3(blocks=blocks)
    assert "D12 " in r.residual


def test_artifact_ideal():
    assert check_artifact_ideal().passed
    r = check_artifact_ideal(commutator=commutator_J() + G.gen("J1"))
    assert not r.passed


def test_substitution_consistency_and_control():
    assert check_substitution_consistency().passed
    assert check_substitution_consistency(params=ModelParams.make(tau=0, mu=0)).passed
    r = check_substitution_consistency(h_j=G.gen("J1"))
    assert not r.passed and r.residual.startswith("h:")


def test_closure_and_wrong_sign():
    assert check_artifact_closure_example().passed
    a = artifacts()
    wrong = G.gen("J8") * a[0] + G.gen("J7") * a[1]
    assert not check_artifact_closure_example(ansatz=wrong).passed


def test_self_commutator_of_artifact_is_zero():
    a1 = normal_order(artifacts()[0])
    r = check_theorem1(h=a1, k=a1)
    assert r.passed


def test_poisson():
    assert check_poisson_noncommutativity().passed
    h = normal_order(h_a2_pq())
    assert not check_poisson_noncommutativity(h=h, k=h).passed


def test_g2_checks():
    assert check_g2_invariance(2, Fraction(1, 2), rep_config("dd")).passed
    assert check_g2_invariance(3, Fraction(0), rep_config("uu")).passed


def test_g2_generic_nu_fails_with_witness():
    r = check_g2_invariance(2, Fraction(1, 2), rep_config("dd"), nu=ParamPoly.symbol("nu"))
    assert not r.passed and "escapes to" in r.residual


def test_run_checks_deterministic():
    names = ["theorem2", "closure", "homomorphism", "subst"]
    a = [r.to_dict(timing=False) for r in run_checks(names, threads=4)]
    b = [r.to_dict(timing=False) for r in run_checks(names, threads=1)]
    assert a == b
    assert [r["name"] for r in a] == names


def test_run_checks_unknown():
    with pytest.raises(KeyError):
        run_checks(["nope"])


def test_thread_cap_env(monkeypatch):
    monkeypatch.setenv("WEYL_THREADS", "2")
    reports = run_checks(["closure", "theorem2"])
    assert all(r.passed for r in reports)
    assert set(CHECKS) >= {"theorem1", "theorem2", "theorem3", "subst", "closure", "poisson", "g2"}
