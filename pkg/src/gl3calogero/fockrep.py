"""Representations of h5 on polynomials in (x, y) with vacuum 1.

Each coordinate axis carries its own canonical pair (P, Q) with [P, Q] = 1:

* differential: P = d/dx, Q = x
* uniform lattice of spacing delta: P f = (f(x+delta) - f(x))/delta, Q = x T_{-delta}
* exponential lattice with ratio q: P x^n = {n}_q x^(n-1), Q x^n = (n+1)/{n+1}_q x^(n+1)
* complex Fock: a = d/dzbar, a^+ = zbar on antiholomorphic polynomials

Operators are normal-ordered h5 elements (q-letters left of p-letters), so
each word acts right to left without ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import ParamPoly, as_rational
from .liealg import h5_spec
from .ncalg import AlgebraError, NCPoly

__all__ = [
    "AxisRep",
    "BasisSpec",
    "InvarianceResult",
    "NotInvariantError",
    "OperatorMatrix",
    "RepConfig",
    "RepError",
    "REP_CODES",
    "apply",
    "axis_action",
    "check_invariance",
    "operator_matrix",
    "q_number",
    "rep_config",
    "umbral_matrix",
]

UPoly = Dict[int, Fraction]
BiPoly = Dict[Tuple[int, int], ParamPoly]

DIFFERENTIAL = "differential"
UNIFORM = "uniform"
EXPONENTIAL = "exponential"
COMPLEX_FOCK = "complex_fock"


class RepError(ValueError):
    """Invalid representation parameters."""


class NotInvariantError(ValueError):
    def __init__(self, witness, escaping):
        self.witness = witness
        self.escaping = escaping
        super().__init__(f"image of x^{witness[0]} y^{witness[1]} leaves the basis span via {sorted(escaping)}")


def q_number(n: int, q: Fraction) -> Fraction:
    """{n}_q = (1 - q^n)/(1 - q), computed as 1 + q + ... + q^(n-1)."""
    return sum((q**k for k in range(n)), Fraction(0))


@dataclass(frozen=True)
class AxisRep:
    kind: str
    param: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind in (DIFFERENTIAL, COMPLEX_FOCK):
            if self.param is not None:
                raise RepError(f"{self.kind} axis takes no parameter")
        elif self.kind == UNIFORM:
            object.__setattr__(self, "param", as_rational(self.param))
        elif self.kind == EXPONENTIAL:
            q = as_rational(self.param)
            if q == 0 or q == 1:
                raise RepError(f"exponential lattice needs q not in {{0, 1}}, got {q}")
            if q == -1:
                raise RepError("q = -1 makes {2}_q vanish; X_q is undefined")
            object.__setattr__(self, "param", q)
        else:
            raise RepError(f"unknown axis kind {self.kind!r}")

    @classmethod
    def differential(cls) -> "AxisRep":
        return cls(DIFFERENTIAL)

    @classmethod
    def uniform(cls, delta) -> "AxisRep":
        return cls(UNIFORM, as_rational(delta))

    @classmethod
    def exponential(cls, q) -> "AxisRep":
        return cls(EXPONENTIAL, as_rational(q))

    @classmethod
    def complex_fock(cls) -> "AxisRep":
        return cls(COMPLEX_FOCK)

    @property
    def effective(self) -> "AxisRep":
        # uniform spacing 0 is the continuum limit
        if self.kind == UNIFORM and self.param == 0:
            return AxisRep.differential()
        return self

    def validate(self, degree: int) -> None:
        """Reject a ratio q for which {k}_q vanishes for some k <= degree + 1."""
        if self.kind == EXPONENTIAL:
            for k in range(1, degree + 2):
                if q_number(k, self.param) == 0:
                    raise RepError(f"{{{k}}}_q vanishes for q = {self.param}")

    def label(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}({self.param})"


@dataclass(frozen=True)
class RepConfig:
    axis_x: AxisRep
    axis_y: AxisRep
    name: str = field(default="", compare=False)

    def label(self) -> str:
        return self.name or f"{self.axis_x.label()}/{self.axis_y.label()}"


REP_CODES = ("dd", "uu", "ee", "ue", "eu", "cf")


def rep_config(code: str, delta1="1/2", delta2="1/3", q1="2", q2="3/2") -> RepConfig:
    """Build one of the named two-axis representations.

    ``uu`` uses (delta1, delta2), ``ee`` uses (q1, q2), ``ue`` pairs delta1 on x
    with q1 on y and ``eu`` pairs q2 on x with delta2 on y.
    """
    u1, u2 = AxisRep.uniform(delta1), AxisRep.uniform(delta2)
    table = {
        "dd": (AxisRep.differential(), AxisRep.differential()),
        "cf": (AxisRep.complex_fock(), AxisRep.complex_fock()),
        "uu": (u1, u2),
        "ee": (AxisRep.exponential(q1), AxisRep.exponential(q2)),
        "ue": (u1, AxisRep.exponential(q1)),
        "eu": (AxisRep.exponential(q2), u2),
    }
    if code not in table:
        raise RepError(f"unknown representation code {code!r}; expected one of {REP_CODES}")
    return RepConfig(*table[code], name=code)


# -- one axis ------------------------------------------------------------------

def _upoly_clean(p: Dict[int, Fraction]) -> UPoly:
    return {k: v for k, v in p.items() if v}


def _binomial_shift(n: int, shift: Fraction) -> UPoly:
    # (x + shift)^n
    return _upoly_clean({k: Fraction(comb(n, k)) * shift ** (n - k) for k in range(n + 1)})


@lru_cache(maxsize=None)
def _monomial_action(rep: AxisRep, which: str, a: int) -> Tuple[Tuple[int, Fraction], ...]:
    rep = rep.effective
    if which == "P":
        if a == 0:
            return ()
        if rep.kind in (DIFFERENTIAL, COMPLEX_FOCK):
            return ((a - 1, Fraction(a)),)
        if rep.kind == UNIFORM:
            d = rep.param
            shifted = _binomial_shift(a, d)
            shifted[a] -= 1
            return tuple(sorted((k, v / d) for k, v in shifted.items() if v))
        return ((a - 1, q_number(a, rep.param)),)
    if which == "Q":
        if rep.kind in (DIFFERENTIAL, COMPLEX_FOCK):
            return ((a + 1, Fraction(1)),)
        if rep.kind == UNIFORM:
            return tuple(sorted((k + 1, v) for k, v in _binomial_shift(a, -rep.param).items()))
        qn = q_number(a + 1, rep.param)
        if qn == 0:
            raise RepError(f"{{{a + 1}}}_q vanishes for q = {rep.param}")
        return ((a + 1, Fraction(a + 1) / qn),)
    raise ValueError(f"operator must be 'P' or 'Q', got {which!r}")


def axis_action(rep: AxisRep, which: str, a: int) -> UPoly:
    """Image of x^a under P or Q of ``rep`` as ``{degree: coefficient}``."""
    if a < 0:
        raise ValueError("exponent must be nonnegative")
    return dict(_monomial_action(rep, which, a))


def _apply_upoly(rep: AxisRep, which: str, f: UPoly) -> UPoly:
    out: Dict[int, Fraction] = {}
    for a, c in f.items():
        for k, v in _monomial_action(rep, which, a):
            out[k] = out.get(k, 0) + c * v
    return _upoly_clean(out)


@lru_cache(maxsize=None)
def _axis_word(rep: AxisRep, nq: int, np_: int, a: int) -> Tuple[Tuple[int, Fraction], ...]:
    # Q^nq P^np x^a
    f: UPoly = {a: Fraction(1)}
    for _ in range(np_):
        f = _apply_upoly(rep, "P", f)
        if not f:
            return ()
    for _ in range(nq):
        f = _apply_upoly(rep, "Q", f)
    return tuple(sorted(f.items()))


# -- two axes ------------------------------------------------------------------

def _word_shape(op: NCPoly) -> List[Tuple[Tuple[int, int, int, int], ParamPoly]]:
    spec = op.spec
    if spec is not h5_spec():
        raise AlgebraError(f"operators must live in h5, got {spec.tag}")
    ranks = [spec.rank(n) for n in ("qx", "qy", "px", "py")]
    out = []
    for w, c in op.items():
        if not spec.is_normal(w):
            raise AlgebraError(f"operator is not normal-ordered: {spec.word_text(w)}")
        out.append((tuple(w.count(r) for r in ranks), c))
    return out


def _apply_shaped(shaped, rep: RepConfig, f: BiPoly) -> BiPoly:
    acc: Dict[Tuple[int, int], Dict[tuple, Fraction]] = {}
    for (a, b), fc in f.items():
        for (kx, ky, jx, jy), c in shaped:
            img_x = _axis_word(rep.axis_x, kx, jx, a)
            if not img_x:
                continue
            img_y = _axis_word(rep.axis_y, ky, jy, b)
            if not img_y:
                continue
            coeff = c * fc
            for ex, vx in img_x:
                for ey, vy in img_y:
                    slot = acc.setdefault((ex, ey), {})
                    r = vx * vy
                    for e, v in coeff.items():
                        s = slot.get(e, 0) + v * r
                        if s:
                            slot[e] = s
                        else:
                            slot.pop(e, None)
    return {m: ParamPoly._raw(t) for m, t in acc.items() if t}


def apply(op: NCPoly, rep: RepConfig, f) -> BiPoly:
    """Act with a normal-ordered h5 element on a polynomial ``{(a, b): coeff}``."""
    f = {tuple(m): ParamPoly.coerce(c) for m, c in dict(f).items()}
    return _apply_shaped(_word_shape(op), rep, f)


# -- bases and matrices --------------------------------------------------------

@dataclass(frozen=True)
class BasisSpec:
    """Monomials x^a y^b with w1*a + w2*b <= bound."""

    weights: Tuple[int, int] = (1, 1)
    bound: int = 0

    def __post_init__(self):
        w1, w2 = self.weights
        if w1 <= 0 or w2 <= 0:
            raise ValueError("weights must be positive")
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")

    @property
    def monomials(self) -> List[Tuple[int, int]]:
        w1, w2 = self.weights
        mons = [(a, b) for a in range(self.bound // w1 + 1)
                for b in range((self.bound - w1 * a) // w2 + 1)]
        # weighted degree first, then x-heavier monomials first
        return sorted(mons, key=lambda m: (w1 * m[0] + w2 * m[1], -m[0]))

    def __len__(self) -> int:
        return len(self.monomials)

    def weighted_degree(self, m: Tuple[int, int]) -> int:
        return self.weights[0] * m[0] + self.weights[1] * m[1]


@dataclass
class OperatorMatrix:
    entries: List[List[ParamPoly]]
    basis: Optional[BasisSpec] = None

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def zeros(cls, n: int, basis: Optional[BasisSpec] = None) -> "OperatorMatrix":
        return cls([[ParamPoly.const(0)] * n for _ in range(n)], basis)

    @classmethod
    def identity(cls, n: int, basis: Optional[BasisSpec] = None) -> "OperatorMatrix":
        return cls([[ParamPoly.const(int(i == j)) for j in range(n)] for i in range(n)], basis)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        n = self.size
        cols = list(zip(*other.entries))
        out = []
        for i in range(n):
            row = self.entries[i]
            nz = [(k, v) for k, v in enumerate(row) if v]
            out.append([sum((v * cols[j][k] for k, v in nz), ParamPoly.const(0)) for j in range(n)])
        return OperatorMatrix(out, self.basis)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)], self.basis)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix([[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)], self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorMatrix) and self.entries == other.entries

    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def eval(self, bindings) -> "OperatorMatrix":
        return OperatorMatrix([[v.eval(bindings) for v in row] for row in self.entries], self.basis)

    def submatrix(self, idx: Sequence[int]) -> "OperatorMatrix":
        idx = list(idx)
        return OperatorMatrix([[self.entries[i][j] for j in idx] for i in idx])

    def to_text(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.entries]


@dataclass
class InvarianceResult:
    invariant: bool
    witness: Optional[Tuple[int, int]] = None
    escaping: Dict[Tuple[int, int], ParamPoly] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.invariant


def _columns(op: NCPoly, rep: RepConfig, basis: BasisSpec):
    shaped = _word_shape(op)
    limit = basis.bound + max((sum(s[:2]) for s, _ in shaped), default=0)
    rep.axis_x.validate(limit)
    rep.axis_y.validate(limit)
    for m in basis.monomials:
        yield m, _apply_shaped(shaped, rep, {m: ParamPoly.const(1)})


def check_invariance(op: NCPoly, rep: RepConfig, basis: BasisSpec) -> InvarianceResult:
    """Whether ``op`` maps span(basis) into itself; on failure name the first escape."""
    for m, img in _columns(op, rep, basis):
        out = {k: v for k, v in img.items() if basis.weighted_degree(k) > basis.bound}
        if out:
            return InvarianceResult(False, m, out)
    return InvarianceResult(True)


def operator_matrix(op: NCPoly, rep: RepConfig, basis: BasisSpec) -> OperatorMatrix:
    """Column j holds the coordinates of op(basis_j); raises if the span is left."""
    mons = basis.monomials
    index = {m: i for i, m in enumerate(mons)}
    n = len(mons)
    rows = [[ParamPoly.const(0)] * n for _ in range(n)]
    for j, (m, img) in enumerate(_columns(op, rep, basis)):
        out = {k: v for k, v in img.items() if k not in index}
        if out:
            raise NotInvariantError(m, out)
        for k, v in img.items():
            rows[index[k]][j] = v
    return OperatorMatrix(rows, basis)


def umbral_matrix(rep: RepConfig, basis: BasisSpec) -> OperatorMatrix:
    """Matrix of x^a y^b -> Q_x^a Q_y^b 1, the intertwiner from the differential
    representation to ``rep``; it is triangular with nonzero diagonal."""
    mons = basis.monomials
    index = {m: i for i, m in enumerate(mons)}
    n = len(mons)
    rows = [[ParamPoly.const(0)] * n for _ in range(n)]
    for j, (a, b) in enumerate(mons):
        for ex, vx in _axis_word(rep.axis_x, a, 0, 0):
            for ey, vy in _axis_word(rep.axis_y, b, 0, 0):
                if (ex, ey) not in index:
                    raise NotInvariantError((a, b), {(ex, ey): ParamPoly.const(vx * vy)})
                rows[index[(ex, ey)]][j] = ParamPoly.const(vx * vy)
    return OperatorMatrix(rows, basis)
