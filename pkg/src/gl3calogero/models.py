"""Hamiltonian and integral of the A2 model, the G2 Hamiltonian, and the
artifact decomposition of the abstract commutator.

Every operator is a literal transcription kept as text in its original word
order; ``TRANSCRIPTIONS`` is the audit table used by ``dump-model``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .exactnum import ParamPoly
from .liealg import artifact_symbols, gl3_spec, h5_spec
from .ncalg import NCPoly, nc_commutator, normal_order, parse_ncpoly

__all__ = [
    "D_TABLE",
    "D_MONOMIALS",
    "ModelParams",
    "SpectralSector",
    "TRANSCRIPTIONS",
    "appendix_b_rhs",
    "d_table_terms",
    "artifact_decomposition",
    "build_model",
    "commutator_J",
    "d_block",
    "h_a2_J",
    "h_a2_pq",
    "h_g2_pq",
    "k_a2_J",
    "k_a2_pq",
    "poisson_bracket",
]

H_A2_PQ = """
  (qx + 3*tau*qx^2 + 3*mu*qx^3 + 3*(mu - tau^2)*qy^2 - 3*mu*tau*qx*qy^2
   - 3*mu^2*qx^2*qy^2)*px^2
+ qy*(3 + 8*tau*qx + 7*mu*qx^2 - 3*mu*tau*qy^2 - 6*mu^2*qx*qy^2)*px*py
+ 1/3*(-qx^2 + 9*tau*qy^2 + 12*mu*qx*qy^2 - 9*mu^2*qy^4)*py^2
+ (1 + 3*nu)*(1 + 4*tau*qx + 5*mu*qx^2 - 3*mu*tau*qy^2 - 6*mu^2*qx*qy^2)*px
+ 2*(1 + 3*nu)*qy*(2*tau + 3*mu*qx - 3*mu^2*qy^2)*py
+ 3*nu*(1 + 3*nu)*mu*(2*qx - 3*mu*qy^2)
"""

K_A2_PQ = """
  2*nu*(1 + 3*nu)*(2 + 3*nu)*mu*qy*(2*tau + 3*mu*qx - 3*mu^2*qy^2)
+ 1/3*(1 + 3*nu)*(2 + 3*nu)*qy*(mu + 8*tau^2 + 28*mu*tau*qx + 21*mu^2*qx^2
   - 9*mu^2*tau*qy^2 - 18*mu^3*qx*qy^2)*px
- 2/9*(1 + 3*nu)*(2 + 3*nu)*(1 + 4*tau*qx + 6*mu*qx^2 - 24*mu*tau*qy^2
   - 36*mu^2*qx*qy^2 + 27*mu^3*qy^4)*py
+ (2 + 3*nu)*qy*(3*tau + 4*(2*tau^2 + mu)*qx + 17*mu*tau*qx^2 + 8*mu^2*qx^3
   + 3*mu*(tau^2 - 2*mu)*qy^2 - 6*mu^2*tau*qx*qy^2 - 6*mu^3*qx^2*qy^2)*px^2
- 2/3*(2 + 3*nu)*(qx + 4*tau*qx^2 + 5*mu*qx^3 + 3*(mu - 4*tau^2)*qy^2 - 27*mu^2*qx^2*qy^2
   - 33*mu*tau*qx*qy^2 + 9*mu^2*tau*qy^4 + 18*mu^3*qx*qy^4)*px*py
- (2 + 3*nu)*qy*(1 + 8/3*tau*qx + 3*mu*qx^2 - 7*mu*tau*qy^2 - 10*mu^2*qx*qy^2
   + 6*mu^3*qy^4)*py^2
+ qy*(1 + 5*tau*qx + 2*(2*mu + 3*tau^2)*qx^2 + 3*mu*(tau^2 - 2*mu)*qx*qy^2 + 9*mu*tau*qx^3
   - tau*(3*mu - 2*tau^2)*qy^2 + 3*mu^2*qx^4 - 3*mu^2*tau*qx^2*qy^2
   - 2*mu^3*qx^3*qy^2)*px^3
+ (-2/3*qx^2 + 2*(5*tau^2 + mu)*qx*qy^2 - 2*tau*qx^3 + 3*tau*qy^2 - 2*mu*qx^4
   + 3*mu*(tau^2 - 2*mu)*qy^4 + 19*mu*tau*qx^2*qy^2 - 6*mu^3*qx^2*qy^4
   + 10*mu^2*qx^3*qy^2 - 6*mu^2*tau*qx*qy^4)*px^2*py
- qy*(qx + 10/3*tau*qx^2 + 11/3*mu*qx^3 - 13*mu*tau*qx*qy^2 + 3*(mu - 2*tau^2)*qy^2
   - 11*mu^2*qx^2*qy^2 + 3*mu^2*tau*qy^4 + 6*mu^3*qx*qy^4)*px*py^2
- (qy^2 + 2/27*qx^3 + 2*tau*qx*qy^2 - 3*mu*tau*qy^4 + 5/3*mu*qx^2*qy^2
   - 4*mu^2*qx*qy^4 + 2*mu^3*qy^6)*py^3
"""

H_A2_J = """
  2*J6*J1 - 1/3*J5^2 - J1*J0
+ mu*(2*J8*J5 + J7*J3 - 2*J7*J0 + 3*J4^2 + 2*J7)
+ tau*(4*J8*J2 + 4*J7*J1 - J6^2 - J3^2 + 5*J6 + 5*J3)
- 3*tau*mu*J8*J4 - 3*mu^2*J8^2 - 3*tau^2*J4^2
"""

K_A2_J = """
  -2/9*J6^2*J2 + 2/9*J6*J5*J1 + 5/9*J6*J2*J0 - 2/27*J5^3 + 2/9*J5*J1*J0 + J4*J1^2
- 2/9*J3^2*J2 - 2/9*J2*J0^2 + 2/9*J6*J2 + 2/9*J5*J1 + 2/9*J2*J0
- tau*(8/9*J7*J6*J2 + 8/9*J7*J5*J1 - 8/9*J7*J2*J0 + 2/9*J6*J6*J5 - 2/9*J6*J5*J3
   + 2/9*J5*J3*J3 - 2*J4*J3*J1 - 3*J8*J1*J1 + 2/3*J6*J5 + 2/3*J5*J3 - 16/9*J5*J0
   - 4*J4*J1)
+ tau^2*(2/3*J6^2*J4 - 2/3*J6*J4*J3 - 8/3*J6*J4*J0 + 2/3*J4*J3^2 - 8/3*J4*J3*J0
   + 8/3*J4*J0^2 - 4/3*J6*J4 - 4/3*J4*J3 + 8/3*J4*J0 + 2*J4)
+ 2*tau^3*J4^3
- mu*(1/3*J7*J6*J5 + 2/3*J7*J5*J3 - 4/3*J7*J5*J0 + 2/3*J6^2*J4 - 2/3*J6*J4*J3
   - 8/3*J6*J4*J0 - 1/3*J4*J3^2 + 10/3*J4*J3*J0 - 1/3*J4*J0^2 + 4/3*J7*J5
   - 4/3*J6*J4 + 5/3*J4*J3 - 1/3*J4*J0)
- mu*tau*(4*J8*J0 - 1/3*J8*J6^2 + 28/3*J8*J6*J3 + 4/3*J8*J6*J0 - 7/3*J8*J3^2
   + 16/3*J8*J3*J0 - 4/3*J8*J0^2 - 10*J7*J6*J4 + 3*J4^3 - J8*J6 + 7*J8*J3 - 8/3*J8)
+ 3*mu*tau^2*J8*J4^2 - 3*mu^2*tau*J8^2*J4
+ mu^2*(2*J8*J7*J6 + J8*J7*J3 - 2*J8*J7*J0 - 6*J8*J4^2 + 4*J8*J7)
- 2*mu^3*J8^3
"""

# generators read as (qu, qv, pu, pv) = (qx, qy, px, py)
H_G2_PQ = """
  (qu + 3*tau*qu^2 + 3*mu*qu^3 + 3*(mu - tau^2)*qv - 3*mu*tau*qu*qv - 3*mu^2*qu^2*qv)*pu^2
+ 2*qv*(3 + 8*tau*qu + 7*mu*qu^2 - 3*mu*tau*qv - 6*mu^2*qu*qv)*pu*pv
+ 4*qv*(-qu^2/3 + 3*tau*qv + 4*mu*qu*qv - 3*mu^2*qv^2)*pv^2
+ (1 + 3*nu)*(1 + 4*tau*qu + 5*mu*qu^2 - 3*mu*tau*qv - 6*mu^2*qu*qv)*pu
+ 2*(-qu^2/3 + tau*(7 + 12*nu)*qv + 2*mu*(5 + 9*nu)*qu*qv - 9*mu^2*(1 + 2*nu)*qv^2)*pv
+ 3*nu*(1 + 3*nu)*mu*(2*qu - 3*mu*qv)
+ lambda*(6*(1 + 2*tau*qu + mu*qu^2)*pu + 4*(-qu^2 + 3*tau*qv + 3*mu*qu*qv)*pv
   + 18*nu*mu*qu)
"""

TRANSCRIPTIONS: Dict[str, Tuple[str, str]] = {
    "hA2pq": ("H5", H_A2_PQ),
    "kA2pq": ("H5", K_A2_PQ),
    "hA2J": ("GL3", H_A2_J),
    "kA2J": ("GL3", K_A2_J),
    "hG2pq": ("H5", H_G2_PQ),
}

# (tau, mu) exponents of D1..D12
D_MONOMIALS: Tuple[Tuple[int, int], ...] = (
    (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2),
    (2, 1), (1, 2), (0, 3), (3, 1), (2, 2), (1, 3),
)

# D_m = sum of (polynomial in J) * A_i, artifact on the right
D_TABLE: Tuple[Tuple[Tuple[str, int], ...], ...] = (
    (  # D1
        ("-2/9*(8*J4*J2 + 3*J3*J1)", 9),
        ("-2/9*(8*J5*J1 - 8*J3*J2 - 11*J2*J0)", 8),
        ("-4/3*J2*J1", 7),
        ("-22/9*J2*J1", 6),
        ("4/9*J2*J1", 5),
        ("22/9*J2^2", 4),
        ("-4/9*J1^2", 3),
    ),
    (  # D2
        ("2/9*(-6*J6^2 - 6*J5*J4 + 3*J3*J0 + 4*J0^2 - 8*J6 + 3*J3 + 10*J0 - 14)", 9),
        ("8/9*(3*J6*J5 + 9*J4*J1 + 4*J5)", 8),
        ("-2/9*(12*J5*J1 - 13*J2*J0)", 7),
        ("-28/9*J6*J2", 5),
        ("28/9*J6*J1", 3),
    ),
    (  # D3
        ("2/9*(2*J8*J5 - 4*J7*J3 + 3*J7*J0 - 36*J4^2 + 4*J7)", 9),
        ("1/3*(2*J8*J1 - 7*J7*J5 + 24*J4*J3 + 30*J4)", 8),
        ("1/9*(5*J7*J2 + 12*J6*J5 - 12*J5*J3 + 36*J5*J0 - 10*J5)", 7),
        ("-4/9*(3*J5*J0 - 4*J5)", 6),
        ("-1/9*(36*J6*J5 - 16*J5*J3 + 12*J5*J0 + 63*J4*J1)", 5),
        ("1/3*(-8*J6*J1 - 10*J4*J2 + 3*J3*J1 + 6*J1*J0 + 17*J1)", 4),
        ("1/9*(4*J6^2 - J6*J0 - 4*J5*J4 - 19*J6 + 8*J0 - 12)", 3),
        ("4/3*J5*J2", 2),
        ("2/3*J6*J2", 1),
    ),
    (  # D4
        ("8/3*(3*J4*J3 - 2*J4*J0)", 8),
        ("-4*J4*J1", 7),
        ("-10*J4*J1", 6),
        ("10*J4*J2", 4),
    ),
    (  # D5
        ("1/3*(9*J8*J6 + 48*J8*J3 + 14*J7*J4 + 71*J8)", 8),
        ("-2/3*(2*J7*J5 - 3*J4*J3 + 20*J4*J0)", 7),
        ("-2/3*(16*J8*J1 - 23*J4*J3)", 6),
        ("1/6*(83*J8*J1 - 78*J4*J3 + 219*J4*J0 + 242*J4)", 5),
        ("1/6*(64*J8*J2 - 83*J7*J1 - 124*J6^2 + 34*J6*J0 - 40*J5*J4 + 50*J3^2"
         " - 229*J3*J0 + 54*J6 + 32*J0^2 - 297*J0 - 66)", 4),
        ("-2/3*(41*J6*J1 - 13*J5^2 + 7*J4*J2)", 2),
        ("-2/3*(9*J6*J5 + 4*J5*J0 - J5)", 1),
    ),
    (  # D6
        ("26/3*J8^2", 9),
        ("2/3*(3*J8*J6 + 3*J8*J3 - 26*J8*J0 - J8)", 7),
        ("-6*(J8*J6 - J8*J3 - J8*J0)", 6),
        ("-1/3*(7*J8*J3 + 10*J8*J0 + 20*J8 - 19*J7*J4)", 5),
        ("1/3*(36*J7*J6 - 19*J7*J0 - 90*J4^2 + 21*J7)", 4),
        ("1/3*(19*J7*J1 - 8*J6^2 - 4*J6*J3 + 50*J6*J0 - 6*J5*J4 + J3^2 + 54*J6"
         " + 20*J3 + 50)", 2),
        ("-(3*J8*J1 - J7*J5)", 1),
    ),
    (  # D7
        ("2*(-9*J8*J6 + 4*J8*J3 - 3*J8)", 7),
        ("-8*J7*J4", 6),
        ("4*(7*J8*J6 - 2*J8*J3 + 4*J8*J0 + 2*J7*J4)", 5),
        ("4*(2*J8*J5 - 9*J7*J6 - 4*J7*J0 + 6*J4^2 + 5*J7)", 4),
        ("8*J8*J4", 3),
        ("2*(4*J7*J1 - 2*J6*J3 - 23*J6 + 4*J0 + 6*J3 + 23)", 2),
        ("-2*(4*J8*J1 - 9*J6*J4)", 1),
    ),
    (  # D8
        ("-6*J8*J4", 4),
        ("75*J4^2 - 27*J7*J6 - 2*J7*J3 + 4*J7*J0", 2),
        ("15*J8*J6 - 16*J8*J3 + 20*J8*J0 + 25*J8", 1),
    ),
    (  # D9
        ("-18*J8^2", 4),
        ("18*J8*J4", 2),
        ("-12*J8*J7", 1),
    ),
    (("-66*J4^2", 2),),  # D10
    (("-48*J8*J4", 2),),  # D11
    (("-30*J8^2", 2),),  # D12
)


@dataclass(frozen=True)
class ModelParams:
    """Parameter bindings; any field may stay symbolic."""

    tau: ParamPoly = field(default_factory=lambda: ParamPoly.symbol("tau"))
    mu: ParamPoly = field(default_factory=lambda: ParamPoly.symbol("mu"))
    nu: ParamPoly = field(default_factory=lambda: ParamPoly.symbol("nu"))
    lam: ParamPoly = field(default_factory=lambda: ParamPoly.symbol("lambda"))

    @classmethod
    def make(cls, tau=None, mu=None, nu=None, lam=None) -> "ModelParams":
        base = cls()
        return cls(
            tau=base.tau if tau is None else ParamPoly.coerce(tau),
            mu=base.mu if mu is None else ParamPoly.coerce(mu),
            nu=base.nu if nu is None else ParamPoly.coerce(nu),
            lam=base.lam if lam is None else ParamPoly.coerce(lam),
        )

    def bindings(self) -> Dict[str, ParamPoly]:
        out = {}
        for name, value in (("tau", self.tau), ("mu", self.mu), ("nu", self.nu), ("lambda", self.lam)):
            if value != ParamPoly.symbol(name):
                out[name] = value
        return out


@dataclass(frozen=True)
class SpectralSector:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("sector index n must be nonnegative")

    @property
    def nu_value(self) -> Fraction:
        return Fraction(-self.n, 3)

    @property
    def kappa(self) -> Fraction:
        return Fraction(self.n * (self.n + 3), 9)

    @staticmethod
    def kappa2(lam) -> ParamPoly:
        lam = ParamPoly.coerce(lam)
        return lam * (lam * 3 - 1)

    def params(self, tau=None, mu=None, lam=None) -> ModelParams:
        return ModelParams.make(tau=tau, mu=mu, nu=self.nu_value, lam=lam)


@lru_cache(maxsize=None)
def _raw(model: str) -> NCPoly:
    tag, text = TRANSCRIPTIONS[model]
    spec = h5_spec() if tag == "H5" else gl3_spec()
    return parse_ncpoly(text, spec)


def build_model(model: str, p: ModelParams | None = None) -> NCPoly:
    base = _raw(model)
    if p is None:
        return base
    b = p.bindings()
    return base.eval(b) if b else base


def h_a2_pq(p: ModelParams | None = None) -> NCPoly:
    return build_model("hA2pq", p)


def k_a2_pq(p: ModelParams | None = None) -> NCPoly:
    return build_model("kA2pq", p)


def h_a2_J(p: ModelParams | None = None) -> NCPoly:
    return build_model("hA2J", p)


def k_a2_J(p: ModelParams | None = None) -> NCPoly:
    return build_model("kA2J", p)


def h_g2_pq(p: ModelParams | None = None) -> NCPoly:
    return build_model("hG2pq", p)


def d_table_terms() -> List[List[Tuple[NCPoly, int]]]:
    """Structured D1..D12: per D_m a list of (J-polynomial, artifact index)."""
    g = gl3_spec()
    return [[(parse_ncpoly(c, g), i) for c, i in block] for block in D_TABLE]


def d_block(m: int) -> NCPoly:
    """D_m (1-based) as an unreduced element of U(gl(3))."""
    arts = artifact_symbols()
    total = gl3_spec().zero()
    for coeff, i in d_table_terms()[m - 1]:
        total = total + coeff * arts[f"A{i}"]
    return total


def appendix_b_rhs() -> NCPoly:
    """sum_m D_m * tau^a mu^b as an unreduced element."""
    total = gl3_spec().zero()
    for m, (a, b) in enumerate(D_MONOMIALS, start=1):
        mono = ParamPoly.symbol("tau", a) * ParamPoly.symbol("mu", b)
        total = total + d_block(m) * mono
    return total


def commutator_J(p: ModelParams | None = None) -> NCPoly:
    return nc_commutator(normal_order(h_a2_J(p)), normal_order(k_a2_J(p)))


# -- classical limit -----------------------------------------------------------

def _commutative_image(x: NCPoly) -> Dict[Tuple[int, ...], ParamPoly]:
    """Map an h5 element to commuting symbols, keyed by (qx, qy, px, py) exponents."""
    spec = x.spec
    if spec.tag != "H5":
        raise ValueError("Poisson bracket is defined on h5 elements")
    ranks = [spec.rank(n) for n in ("qx", "qy", "px", "py")]
    out: Dict[Tuple[int, ...], ParamPoly] = {}
    for w, c in x.items():
        e = tuple(w.count(r) for r in ranks)
        out[e] = out[e] + c if e in out else c
    return {e: c for e, c in out.items() if c}


def _diff(f: Dict[Tuple[int, ...], ParamPoly], i: int) -> Dict[Tuple[int, ...], ParamPoly]:
    out = {}
    for e, c in f.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
    return out


def _cmul(f, g):
    out: Dict[Tuple[int, ...], ParamPoly] = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return {e: c for e, c in out.items() if c}


def _cadd(f, g, sign=1):
    out = dict(f)
    for e, c in g.items():
        out[e] = out[e] + c * sign if e in out else c * sign
    return {e: c for e, c in out.items() if c}


def poisson_bracket(a: NCPoly, b: NCPoly) -> Dict[Tuple[int, ...], ParamPoly]:
    """{a, b} = sum over x, y of d_p a d_q b - d_q a d_p b on commuting symbols.

    Result keyed by (qx, qy, px, py) exponents; empty dict means zero.
    """
    fa, fb = _commutative_image(a), _commutative_image(b)
    out: Dict[Tuple[int, ...], ParamPoly] = {}
    for q, p in ((0, 2), (1, 3)):
        out = _cadd(out, _cmul(_diff(fa, p), _diff(fb, q)))
        out = _cadd(out, _cmul(_diff(fa, q), _diff(fb, p)), -1)
    return out


# -- artifact decomposition ----------------------------------------------------

class _Echelon:
    """Sparse row echelon form over Q with the largest key as pivot."""

    def __init__(self):
        self.rows: Dict[tuple, Tuple[dict, dict]] = {}

    def reduce(self, v: dict, combo: dict):
        v, combo = dict(v), dict(combo)
        while v:
            p = max(v)
            if p not in self.rows:
                return v, combo
            row, rc = self.rows[p]
            f = v[p]
            for target, src in ((v, row), (combo, rc)):
                for k, x in src.items():
                    y = target.get(k, 0) - f * x
                    if y:
                        target[k] = y
                    else:
                        target.pop(k, None)
        return v, combo

    def add(self, v: dict, combo: dict) -> bool:
        v, combo = self.reduce(v, combo)
        if not v:
            return False
        p = max(v)
        f = v[p]
        self.rows[p] = ({k: x / f for k, x in v.items()}, {k: x / f for k, x in combo.items()})
        return True


def _word_key(w: tuple) -> tuple:
    # longer words first, then later generators
    return (len(w), tuple(-r for r in w))


def _rational_vector(x: NCPoly) -> dict:
    out = {}
    for w, c in x.items():
        if not c.is_constant():
            raise ValueError("decomposition works on one parameter block at a time")
        out[_word_key(w)] = c.constant_value()
    return out


@lru_cache(maxsize=None)
def _artifact_echelon(max_degree: int) -> _Echelon:
    from itertools import combinations_with_replacement

    from .liealg import artifacts

    g = gl3_spec()
    ech = _Echelon()
    for i, a in enumerate(artifacts(), start=1):
        for d in range(max_degree + 1):
            for w in combinations_with_replacement(range(len(g.names)), d):
                col = normal_order(NCPoly(g, {w: ParamPoly.const(1)}) * a)
                ech.add(_rational_vector(col), {(w, i): Fraction(1)})
    return ech


def artifact_decomposition(x: NCPoly, max_degree: int = 2):
    """Write a rational element of U(gl(3)) as sum_i c_i A_i with each c_i a
    PBW polynomial of degree <= ``max_degree``.

    Returns ``{i: c_i}`` or None when no such combination exists.
    """
    g = gl3_spec()
    left, combo = _artifact_echelon(max_degree).reduce(_rational_vector(normal_order(x)), {})
    if left:
        return None
    out: Dict[int, NCPoly] = {}
    for (w, i), c in combo.items():
        # reduce() subtracts, so the combination carries the opposite sign
        out[i] = out.get(i, g.zero()) + NCPoly(g, {w: ParamPoly.const(-c)})
    return {i: c for i, c in sorted(out.items()) if c}
