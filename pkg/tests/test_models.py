from fractions import Fraction

import pytest
import sympy as sp

from gl3calogero.exactnum import ParamPoly
from gl3calogero.fockrep import BasisSpec, apply, rep_config
from gl3calogero.liealg import artifacts, gl3_realization_in_h5, gl3_spec, h5_spec
from gl3calogero.models import (
    D_TABLE,
    D_MONOMIALS,
    TRANSCRIPTIONS,
    ModelParams,
    SpectralSector,
    appendix_b_rhs,
    d_table_terms,
    artifact_decomposition,
    commutator_J,
    d_block,
    h_a2_J,
    h_a2_pq,
    h_g2_pq,
    k_a2_J,
    k_a2_pq,
    poisson_bracket,
)
from gl3calogero.ncalg import normal_order, parse_ncpoly, substitute

from conftest import SYMS, to_sympy

G = gl3_spec()
H5 = h5_spec()
tau, mu, nu, lam = (ParamPoly.symbol(n) for n in ("tau", "mu", "nu", "lambda"))


def J(text):
    return parse_ncpoly(text, G)


def Q(text):
    return parse_ncpoly(text, H5)


def test_h_rational_limit():
    h0 = normal_order(h_a2_pq(ModelParams.make(tau=0, mu=0, nu=0)))
    assert h0 == Q("qx*px^2 + 3*qy*px*py - 1/3*qx^2*py^2 + px")


def test_h_constant_term():
    h = normal_order(h_a2_pq())
    p_free = {w: c for w, c in h.items() if all(H5.names[r] in ("qx", "qy") for r in w)}
    expected = normal_order(Q("3*nu*(1 + 3*nu)*mu*(2*qx - 3*mu*qy^2)"))
    assert p_free == dict(expected.items())


def test_h_annihilates_vacuum_at_n0():
    h = normal_order(h_a2_pq(SpectralSector(0).params()))
    assert apply(h, rep_config("dd"), {(0, 0): 1}) == {}


def test_k_leading_py_cubed():
    k = normal_order(k_a2_pq())
    got = {w[:-3]: c for w, c in k.items() if w[-3:] == (3, 3, 3) and all(r < 2 for r in w[:-3])}
    expected = normal_order(Q("-(qy^2 + 2/27*qx^3 + 2*tau*qx*qy^2 - 3*mu*tau*qy^4 + 5/3*mu*qx^2*qy^2"
                              " - 4*mu^2*qx*qy^4 + 2*mu^3*qy^6)"))
    assert got == dict(expected.items())


def test_k_p_free_part():
    k = normal_order(k_a2_pq())
    p_free = {w: c for w, c in k.items() if all(r < 2 for r in w)}
    expected = normal_order(Q("2*nu*(1 + 3*nu)*(2 + 3*nu)*mu*qy*(2*tau + 3*mu*qx - 3*mu^2*qy^2)"))
    assert p_free == dict(expected.items())


def test_k_prefactor_kills_terms_at_nu_minus_two_thirds():
    k = k_a2_pq(ModelParams.make(nu=Fraction(-2, 3)))
    k_all = k_a2_pq()
    assert len(normal_order(k)) < len(normal_order(k_all))
    assert normal_order(k).coefficient() == 0


def test_h_j_rational_limit():
    assert normal_order(h_a2_J(ModelParams.make(tau=0, mu=0))) == normal_order(J("2*J6*J1 - 1/3*J5^2 - J1*J0"))


def test_h_j_tau_block():
    h = normal_order(h_a2_J())
    assert h.coefficient("J8", "J2") == tau * 4
    assert "nu" not in set().union(*(c.variables() for _, c in h.items()))


def test_k_j_mu_cubed_block():
    blocks = normal_order(k_a2_J()).param_blocks()
    assert blocks[(0, 0, 3, 0)] == J("-2*J8^3")


def test_k_j_rational_limit():
    shown = J("-2/9*J6^2*J2 + 2/9*J6*J5*J1 + 5/9*J6*J2*J0 - 2/27*J5^3 + 2/9*J5*J1*J0 + J4*J1^2"
              " - 2/9*J3^2*J2 - 2/9*J2*J0^2 + 2/9*J6*J2 + 2/9*J5*J1 + 2/9*J2*J0")
    assert len(shown) == 11
    assert normal_order(k_a2_J(ModelParams.make(tau=0, mu=0))) == normal_order(shown)


@pytest.mark.parametrize("which", ["h", "k"])
def test_substitution_consistency(which):
    r = gl3_realization_in_h5()
    j_form, pq_form = (h_a2_J, h_a2_pq) if which == "h" else (k_a2_J, k_a2_pq)
    assert substitute(j_form(), r) == normal_order(pq_form())
    p0 = ModelParams.make(tau=0, mu=0)
    assert substitute(j_form(p0), r) == normal_order(pq_form(p0))


def test_g2_lambda_block_and_pv2():
    g = normal_order(h_g2_pq())
    # h_g2 is affine in lambda
    lam_part = {w: (c - c.eval({"lambda": 0})).eval({"lambda": 1}) for w, c in g.items()}
    lam_part = {w: c for w, c in lam_part.items() if c}
    expected = normal_order(Q("6*(1 + 2*tau*qx + mu*qx^2)*px + 4*(-qx^2 + 3*tau*qy + 3*mu*qx*qy)*py + 18*nu*mu*qx"))
    assert lam_part == dict(expected.items())
    pv2 = {w[:-2]: c for w, c in g.items() if w[-2:] == (3, 3) and all(r < 2 for r in w[:-2])}
    assert pv2 == dict(normal_order(Q("4*qy*(-1/3*qx^2 + 3*tau*qy + 4*mu*qx*qy - 3*mu^2*qy^2)")).items())


def test_g2_at_lambda_zero_drops_lambda():
    g0 = normal_order(h_g2_pq(ModelParams.make(lam=0)))
    assert all("lambda" not in c.variables() for _, c in g0.items())


def _hg2_sympy(f):
    u, v = sp.symbols("x y")
    t, m, n, l = (SYMS[k] for k in ("tau", "mu", "nu", "lambda"))
    d = sp.diff
    return sp.expand(
        (u + 3*t*u**2 + 3*m*u**3 + 3*(m - t**2)*v - 3*m*t*u*v - 3*m**2*u**2*v) * d(f, u, 2)
        + 2*v*(3 + 8*t*u + 7*m*u**2 - 3*m*t*v - 6*m**2*u*v) * d(f, u, v)
        + 4*v*(-u**2/3 + 3*t*v + 4*m*u*v - 3*m**2*v**2) * d(f, v, 2)
        + (1 + 3*n)*(1 + 4*t*u + 5*m*u**2 - 3*m*t*v - 6*m**2*u*v) * d(f, u)
        + 2*(-u**2/3 + t*(7 + 12*n)*v + 2*m*(5 + 9*n)*u*v - 9*m**2*(1 + 2*n)*v**2) * d(f, v)
        + 3*n*(1 + 3*n)*m*(2*u - 3*m*v) * f
        + l*(6*(1 + 2*t*u + m*u**2)*d(f, u) + 4*(-u**2 + 3*t*v + 3*m*u*v)*d(f, v) + 18*n*m*u*f))


def test_g2_differential_form():
    # the h5 form under q -> coordinate, p -> derivative reproduces the
    # reference differential operator
    u, v = sp.symbols("x y")
    g = normal_order(h_g2_pq())
    for a in range(4):
        for b in range(3):
            img = apply(g, rep_config("dd"), {(a, b): 1})
            ours = sp.expand(sum(to_sympy(c) * u**i * v**j for (i, j), c in img.items()))
            assert ours == _hg2_sympy(u**a * v**b)


def test_d_table_structure():
    assert len(D_TABLE) == len(D_MONOMIALS) == 12
    assert d_block(12) == -30 * J("J8^2") * artifacts()[1]
    assert d_block(10) == -66 * J("J4^2") * artifacts()[1]
    assert all(1 <= i <= 9 for block in d_table_terms() for _, i in block)
    blocks = appendix_b_rhs().param_blocks()
    assert set(blocks) <= {(0, a, b, 0) for a, b in D_MONOMIALS}


def test_abstract_commutator_nonzero_and_vanishes_in_h5():
    c = commutator_J()
    assert not c.is_zero()
    assert substitute(c, gl3_realization_in_h5()).is_zero()


def test_tail_blocks_match_commutator():
    # the blocks tau*mu^3, tau^2*mu^2, tau^3*mu and mu^3 agree with the table
    blocks = commutator_J().param_blocks()
    for m in (9, 10, 11, 12):
        a, b = D_MONOMIALS[m - 1]
        assert blocks[(0, a, b, 0)] == normal_order(d_block(m)), m


def test_artifact_decomposition_reconstructs():
    arts = artifacts()
    for e, blk in commutator_J().param_blocks().items():
        dec = artifact_decomposition(blk)
        assert dec is not None, e
        total = sum((c * arts[i - 1] for i, c in dec.items()), G.zero())
        assert normal_order(total) == blk


def test_artifact_decomposition_rejects_non_members():
    assert artifact_decomposition(J("J1")) is None
    assert artifact_decomposition(G.one()) is None


def test_poisson_bracket():
    h, k = normal_order(h_a2_pq()), normal_order(k_a2_pq())
    hk, kh = poisson_bracket(h, k), poisson_bracket(k, h)
    assert hk
    assert poisson_bracket(h, h) == {}
    assert all(hk[e] == -kh[e] for e in hk) and set(hk) == set(kh)


def test_poisson_canonical_pair():
    assert poisson_bracket(Q("px"), Q("qx")) == {(0, 0, 0, 0): ParamPoly.const(1)}


def test_transcription_table():
    assert set(TRANSCRIPTIONS) == {"hA2pq", "kA2pq", "hA2J", "kA2J", "hG2pq"}


def test_sector_kappa():
    assert SpectralSector(1).kappa == Fraction(4, 9)
    assert SpectralSector(2).kappa == Fraction(10, 9)
    assert SpectralSector(2).nu_value == Fraction(-2, 3)
    with pytest.raises(ValueError):
        SpectralSector(-1)
