from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from gl3calogero.exactnum import ParamPoly
from gl3calogero.fockrep import BasisSpec, OperatorMatrix, rep_config
from gl3calogero.models import SpectralSector, h_a2_pq, k_a2_pq
from gl3calogero.spectra import (
    CharPoly,
    block_triangular_split,
    char_poly,
    commuting_block_check,
    isospectrality_report,
    model_matrix,
    n2_reference,
    similarity_check,
    verify_sector,
)

from conftest import SYMS, to_sympy

L = sp.Symbol("L")
tau, mu = ParamPoly.symbol("tau"), ParamPoly.symbol("mu")
CODES = ["dd", "uu", "ee", "ue", "eu", "cf"]


def matrix(rows):
    return OperatorMatrix([[ParamPoly.coerce(v) for v in r] for r in rows])


def to_sympy_poly(cp: CharPoly):
    return sp.expand(sum(to_sympy(c) * L**k for k, c in enumerate(cp.coeffs)))


def test_identity():
    assert char_poly(matrix([[1, 0], [0, 1]])) == CharPoly.from_list([1, -2, 1])


def test_companion():
    # companion matrix of L^2 - 5L + 6
    assert char_poly(matrix([[0, -6], [1, 5]])) == CharPoly.from_list([6, -5, 1])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=n, max_size=n),
    min_size=n, max_size=n)))
def test_char_poly_matches_sympy(rows):
    ours = to_sympy_poly(char_poly(matrix(rows)))
    ref = sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in r] for r in rows]).charpoly(L).as_expr()
    assert sp.expand(ours - ref) == 0


def test_char_poly_symbolic_matches_sympy():
    rows = [[tau, 1, mu], [0, mu * 2, tau * tau], [1, tau, 3]]
    ref = sp.Matrix([[to_sympy(ParamPoly.coerce(v)) for v in r] for r in rows]).charpoly(L).as_expr()
    assert sp.expand(to_sympy_poly(char_poly(matrix(rows))) - ref) == 0


def test_n2_reference_consistency():
    ref = n2_reference()
    assert ref.is_monic() and ref.degree == 6
    assert ref.coeffs[5] == tau * 24


def test_charpoly_text():
    assert str(CharPoly.from_list([6, -5, 1])) == "L^2 - 5*L + 6"
    assert str(CharPoly.from_list([0, 1])) == "L"


def test_divmod_and_evaluation():
    p = CharPoly.from_list([6, -5, 1])
    q, r = p.divmod_monic(CharPoly.from_list([-2, 1]))
    assert q == CharPoly.from_list([-3, 1]) and r.is_zero()
    assert p.at(3).is_zero() and p.at(0) == 6


def test_sector_n0_n1():
    assert verify_sector(0).char_poly == CharPoly.from_list([0, 1])
    assert verify_sector(1).char_poly == CharPoly.from_list([0, 0, 0, 1])
    assert verify_sector(0).match and verify_sector(1).match


def test_sector_n2_rational_limit():
    assert verify_sector(2, tau=0, mu=0).char_poly == CharPoly.from_list([0] * 6 + [1])


def _sympy_h_matrix(n):
    # independent assembly of h on P_n from the differential form
    x, y = sp.symbols("x y")
    t, m = SYMS["tau"], SYMS["mu"]
    nu = sp.Rational(-n, 3)
    d = sp.diff

    def h(f):
        return sp.expand(
            (x + 3*t*x**2 + 3*m*x**3 + 3*(m - t**2)*y**2 - 3*m*t*x*y**2 - 3*m**2*x**2*y**2) * d(f, x, 2)
            + y*(3 + 8*t*x + 7*m*x**2 - 3*m*t*y**2 - 6*m**2*x*y**2) * d(f, x, y)
            + sp.Rational(1, 3)*(-x**2 + 9*t*y**2 + 12*m*x*y**2 - 9*m**2*y**4) * d(f, y, 2)
            + (1 + 3*nu)*(1 + 4*t*x + 5*m*x**2 - 3*m*t*y**2 - 6*m**2*x*y**2) * d(f, x)
            + 2*(1 + 3*nu)*y*(2*t + 3*m*x - 3*m**2*y**2) * d(f, y)
            + 3*nu*(1 + 3*nu)*m*(2*x - 3*m*y**2) * f)

    mons = BasisSpec((1, 1), n).monomials
    M = sp.zeros(len(mons))
    for j, (a, b) in enumerate(mons):
        for (i, k), v in sp.Poly(h(x**a * y**b), x, y).terms():
            M[mons.index((i, k)), j] = v
    return M


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sector_char_poly_matches_independent_assembly(n):
    ours = to_sympy_poly(verify_sector(n).char_poly)
    ref = _sympy_h_matrix(n).charpoly(L).as_expr()
    assert sp.expand(ours - ref) == 0


def test_isospectral_small():
    reps = [rep_config(c) for c in CODES]
    r0 = isospectrality_report(0, reps)
    assert r0.all_equal and all(p == CharPoly.from_list([0, 1]) for p in r0.char_polys.values())
    r1 = isospectrality_report(1, reps)
    assert r1.all_equal and all(p == CharPoly.from_list([0, 0, 0, 1]) for p in r1.char_polys.values())


def test_isospectral_k_and_g2():
    reps = [rep_config(c) for c in CODES]
    assert isospectrality_report(2, reps, model="kA2").all_equal
    assert isospectrality_report(3, reps, model="hG2", lam=Fraction(1, 2)).all_equal


@pytest.mark.parametrize("n", [0, 1, 2])
def test_commuting_blocks(n):
    assert commuting_block_check(n, rep_config("dd")).is_zero()
    assert commuting_block_check(n, rep_config("uu")).is_zero()


@pytest.mark.parametrize("n,N", [(0, 2), (1, 3), (2, 3), (1, 4)])
def test_block_triangular_factorization(n, N):
    # at mu = 0 every P_N is invariant, and P_n sits inside as the leading block
    m = model_matrix("hA2", n, rep_config("uu"), mu=0, bound=N)
    k = len(BasisSpec((1, 1), n))
    lead, trail, lower_zero = block_triangular_split(m, k)
    assert lower_zero
    assert char_poly(m) == char_poly(lead) * char_poly(trail)
    assert char_poly(lead) == char_poly(model_matrix("hA2", n, rep_config("uu"), mu=0))


@pytest.mark.parametrize("code", ["uu", "ee", "ue", "eu", "cf"])
def test_umbral_similarity(code):
    for n in range(4):
        p = SpectralSector(n).params()
        for op in (h_a2_pq(p), k_a2_pq(p)):
            ok, _ = similarity_check(op, rep_config(code), BasisSpec((1, 1), n))
            assert ok
