"""Characteristic polynomials of operator matrices and the spectral checks
built on them: closed-form small sectors, isospectrality across
representations, and commuting blocks.

Eigenvalues are never extracted; every statement is an identity between
characteristic polynomials with ParamPoly coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import ParamPoly
from .fockrep import BasisSpec, OperatorMatrix, RepConfig, operator_matrix, rep_config, umbral_matrix
from .models import ModelParams, SpectralSector, h_a2_pq, h_g2_pq, k_a2_pq
from .ncalg import NCPoly, normal_order

__all__ = [
    "CharPoly",
    "SectorReport",
    "IsospectralityReport",
    "block_triangular_split",
    "char_poly",
    "commuting_block_check",
    "isospectrality_report",
    "model_matrix",
    "n2_reference",
    "n2_root_check",
    "similarity_check",
    "verify_sector",
]

SPECTRAL_VAR = "L"


@dataclass(frozen=True)
class CharPoly:
    """Polynomial in the spectral variable; ``coeffs[k]`` multiplies L^k."""

    coeffs: Tuple[ParamPoly, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(ParamPoly.coerce(c) for c in cs))

    @classmethod
    def from_list(cls, coeffs: Sequence) -> "CharPoly":
        return cls(tuple(ParamPoly.coerce(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        if not self.coeffs or not other.coeffs:
            return CharPoly(())
        out = [ParamPoly.const(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CharPoly(tuple(out))

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = ParamPoly.const(0)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return CharPoly(tuple(x - y for x, y in zip(a, b)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval_params(self, bindings) -> "CharPoly":
        return CharPoly(tuple(c.eval(bindings) for c in self.coeffs))

    def at(self, value) -> ParamPoly:
        """Evaluate at L = value (Horner)."""
        acc = ParamPoly.const(0)
        v = ParamPoly.coerce(value)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def divmod_monic(self, divisor: "CharPoly") -> Tuple["CharPoly", "CharPoly"]:
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        quot = [ParamPoly.const(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if not c:
                continue
            quot[k - d] = c
            for i, dc in enumerate(divisor.coeffs):
                rem[k - d + i] = rem[k - d + i] - c * dc
        return CharPoly(tuple(quot)), CharPoly(tuple(rem[:d]))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (SPECTRAL_VAR if k == 1 else f"{SPECTRAL_VAR}^{k}")
            ctext = str(c)
            if not mono:
                body = ctext
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            elif len(c.terms) > 1:
                body = f"({ctext})*{mono}"
            else:
                body = f"{ctext}*{mono}"
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text


def char_poly(m: OperatorMatrix) -> CharPoly:
    """det(L*I - M) by the Faddeev-LeVerrier recurrence."""
    n = m.size
    if any(len(row) != n for row in m.entries):
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [ParamPoly.const(0)] * (n + 1)
    coeffs[n] = ParamPoly.const(1)
    mk = OperatorMatrix.zeros(n)
    for k in range(1, n + 1):
        prev = coeffs[n - k + 1]
        mk = m @ mk
        for i in range(n):
            mk.entries[i][i] = mk.entries[i][i] + prev
        am = m @ mk
        trace = sum((am.entries[i][i] for i in range(n)), ParamPoly.const(0))
        coeffs[n - k] = trace * Fraction(-1, k)
    return CharPoly(tuple(coeffs))


def _lin(*coeffs) -> CharPoly:
    return CharPoly.from_list(coeffs)


def n2_reference(tau=None, mu=None) -> CharPoly:
    """(L^2 + 4 tau L + 4 mu)(L^2 + 8 tau L + 4 mu + 12 tau^2)(L^2 + 12 tau L + 4 mu + 16 tau^2)."""
    t = ParamPoly.symbol("tau") if tau is None else ParamPoly.coerce(tau)
    u = ParamPoly.symbol("mu") if mu is None else ParamPoly.coerce(mu)
    f1 = _lin(u * 4, t * 4, 1)
    f2 = _lin(u * 4 + t * t * 12, t * 8, 1)
    f3 = _lin(u * 4 + t * t * 16, t * 12, 1)
    return f1 * f2 * f3


MODELS = {"hA2": (h_a2_pq, (1, 1)), "kA2": (k_a2_pq, (1, 1)), "hG2": (h_g2_pq, (1, 2))}


def model_matrix(model: str, n: int, rep: RepConfig, tau=None, mu=None, lam=None,
                 bound: Optional[int] = None) -> OperatorMatrix:
    """Matrix of a model operator at nu = -n/3 on its triangular space of bound ``bound`` (default n)."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {sorted(MODELS)}")
    builder, weights = MODELS[model]
    p = SpectralSector(n).params(tau=tau, mu=mu, lam=lam if lam is not None else 0)
    op = normal_order(builder(p))
    return operator_matrix(op, rep, BasisSpec(weights, n if bound is None else bound))


@dataclass
class SectorReport:
    n: int
    rep: str
    char_poly: CharPoly
    reference: Optional[CharPoly]
    match: bool
    details: List[str] = field(default_factory=list)


def _reference_for(n: int, tau, mu) -> Optional[CharPoly]:
    if n == 0:
        return _lin(0, 1)
    if n == 1:
        return _lin(0, 0, 0, 1)
    if n == 2:
        return n2_reference(tau, mu)
    return None


def verify_sector(n: int, rep: RepConfig | None = None, tau=None, mu=None) -> SectorReport:
    """Compare the h_A2 characteristic polynomial on P_n with the closed forms for n <= 2.

    Larger n only checks that the polynomial is monic of the right degree.
    """
    rep = rep or rep_config("dd")
    cp = char_poly(model_matrix("hA2", n, rep, tau=tau, mu=mu))
    ref = _reference_for(n, tau, mu)
    dim = (n + 1) * (n + 2) // 2
    details = []
    ok = cp.is_monic() and cp.degree == dim
    if not ok:
        details.append(f"expected monic of degree {dim}")
    if ref is not None:
        same = (cp - ref).is_zero()
        if not same:
            details.append(f"got {cp}; expected {ref}")
        ok = ok and same
    return SectorReport(n, rep.label(), cp, ref, ok, details)


def n2_root_check(rep: RepConfig | None = None) -> Tuple[bool, List[str]]:
    """At tau=1, mu=0: the rational roots 0, -2, -4, -6 annihilate the n=2
    polynomial and L^2 + 12 L + 16 (roots -6 +- 2 sqrt 5) divides it."""
    rep = rep or rep_config("dd")
    cp = char_poly(model_matrix("hA2", 2, rep, tau=1, mu=0))
    notes = []
    ok = True
    for r in (0, -2, -4, -6):
        v = cp.at(r)
        if v:
            ok = False
            notes.append(f"value at {r} is {v}")
    _, rem = cp.divmod_monic(_lin(16, 12, 1))
    if not rem.is_zero():
        ok = False
        notes.append(f"remainder mod L^2 + 12*L + 16 is {rem}")
    return ok, notes


@dataclass
class IsospectralityReport:
    n: int
    char_polys: Dict[str, CharPoly]
    differences: Dict[Tuple[str, str], CharPoly]

    @property
    def all_equal(self) -> bool:
        return all(d.is_zero() for d in self.differences.values())


def isospectrality_report(n: int, configs: Sequence[RepConfig], model: str = "hA2",
                          tau=None, mu=None, lam=None) -> IsospectralityReport:
    polys: Dict[str, CharPoly] = {}
    for rep in configs:
        polys[rep.label()] = char_poly(model_matrix(model, n, rep, tau=tau, mu=mu, lam=lam))
    diffs = {(a, b): polys[a] - polys[b] for a, b in combinations(polys, 2)}
    return IsospectralityReport(n, polys, diffs)


def commuting_block_check(n: int, rep: RepConfig | None = None, tau=None, mu=None) -> OperatorMatrix:
    """M_h M_k - M_k M_h on P_n at nu = -n/3; zero when the pair commutes there."""
    rep = rep or rep_config("dd")
    mh = model_matrix("hA2", n, rep, tau=tau, mu=mu)
    mk = model_matrix("kA2", n, rep, tau=tau, mu=mu)
    return mh @ mk - mk @ mh


def block_triangular_split(m: OperatorMatrix, k: int) -> Tuple[OperatorMatrix, OperatorMatrix, bool]:
    """Split at index k into the leading and trailing diagonal blocks.

    The flag says whether the block below the leading one vanishes, i.e. the
    first k basis vectors span an invariant subspace.
    """
    n = m.size
    lower_zero = all(not m.entries[i][j] for i in range(k, n) for j in range(k))
    return m.submatrix(range(k)), m.submatrix(range(k, n)), lower_zero


def similarity_check(op: NCPoly, rep: RepConfig, basis: BasisSpec) -> Tuple[bool, OperatorMatrix]:
    """S M_diff - M_rep S where S sends x^a y^b to Q_x^a Q_y^b 1.

    Both representations are Fock modules over the same vacuum, so S
    intertwines them and the residual vanishes.
    """
    op = normal_order(op)
    s = umbral_matrix(rep, basis)
    m_diff = operator_matrix(op, rep_config("dd"), basis)
    m_rep = operator_matrix(op, rep, basis)
    resid = s @ m_diff - m_rep @ s
    return resid.is_zero(), resid
