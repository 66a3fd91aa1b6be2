"""Exact rationals and the commutative parameter ring Q[nu, tau, mu, lambda].

Every coefficient in the package lives in :class:`ParamPoly`.  Values are
immutable; arithmetic always returns a new canonical object.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "PARAMS",
    "ParamPoly",
    "Rational",
    "as_rational",
    "poly_add",
    "poly_mul",
    "poly_eval",
]

Rational = Fraction
PARAMS: Tuple[str, ...] = ("nu", "tau", "mu", "lambda")
_NPARAMS = len(PARAMS)
_ZERO_EXP = (0,) * _NPARAMS
MAX_EXPONENT = 2**31 - 1

Exp = Tuple[int, ...]
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _check_exp(e: Exp) -> Exp:
    for k in e:
        if k < 0 or k > MAX_EXPONENT:
            raise OverflowError(f"parameter exponent {k} out of range")
    return e


class ParamPoly:
    """Sparse polynomial in (nu, tau, mu, lambda) with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Scalar] | None = None):
        clean: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != _NPARAMS:
                    raise ValueError(f"exponent vector {e!r} must have length {_NPARAMS}")
                c = as_rational(c)
                if c:
                    clean[_check_exp(tuple(e))] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms: Dict[Exp, Fraction]) -> "ParamPoly":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "ParamPoly":
        c = as_rational(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "ParamPoly":
        try:
            i = PARAMS.index(name)
        except ValueError:
            raise ValueError(f"unknown parameter {name!r}; expected one of {PARAMS}") from None
        e = [0] * _NPARAMS
        e[i] = power
        return cls._raw({_check_exp(tuple(e)): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        return cls.const(value)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def variables(self) -> set:
        return {PARAMS[i] for e in self._terms for i, k in enumerate(e) if k}

    def coefficient(self, **powers: int) -> Fraction:
        e = tuple(powers.get(p, 0) for p in PARAMS)
        return self._terms.get(e, Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.const(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + other

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        if not self._terms or not other._terms:
            return ParamPoly._raw({})
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        for e in [e for e, c in out.items() if not c]:
            del out[e]
        if out and max(max(e) for e in out) > MAX_EXPONENT:
            raise OverflowError("parameter exponent overflow")
        return ParamPoly._raw(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "ParamPoly":
        c = as_rational(c)
        if not c:
            return ParamPoly._raw({})
        return ParamPoly._raw({e: v * c for e, v in self._terms.items()})

    def __truediv__(self, other) -> "ParamPoly":
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of ParamPoly by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int) -> "ParamPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval(self, bindings: Mapping[str, Scalar | "ParamPoly"]) -> "ParamPoly":
        """Substitute some parameters; unbound ones stay symbolic.

        Bindings may be rationals or other ParamPoly values.
        """
        if not bindings:
            return self
        for name in bindings:
            if name not in PARAMS:
                raise ValueError(f"unknown parameter {name!r}")
        idx = [(PARAMS.index(n), ParamPoly.coerce(v)) for n, v in bindings.items()]
        simple = all(v.is_constant() for _, v in idx)
        if simple:
            vals = [(i, v.constant_value()) for i, v in idx]
            out: Dict[Exp, Fraction] = {}
            for e, c in self._terms.items():
                e2 = list(e)
                for i, v in vals:
                    if e2[i]:
                        c = c * v ** e2[i]
                        e2[i] = 0
                if c:
                    k = tuple(e2)
                    s = out.get(k, 0) + c
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            return ParamPoly._raw(out)
        total = ParamPoly._raw({})
        for e, c in self._terms.items():
            e2 = list(e)
            term = ParamPoly.const(c)
            for i, v in idx:
                if e2[i]:
                    term = term * v ** e2[i]
                    e2[i] = 0
            total = total + term * ParamPoly._raw({tuple(e2): Fraction(1)})
        return total

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        try:
            return self._terms == ParamPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- text form ----------------------------------------------------------

    def sorted_terms(self) -> list:
        # graded, then lexicographic on (nu, tau, mu, lambda), larger first
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [p if k == 1 else f"{p}^{k}" for p, k in zip(PARAMS, e) if k]
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"ParamPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """Parse the text form produced by ``str``.

        Accepts signed sums of terms ``c*p1^k1*p2^k2`` where ``c`` is an
        optional ``num/den`` rational.
        """
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty ParamPoly text")
        if src[0] not in "+-":
            src = "+" + src
        pieces = re.findall(r"[+-][^+-]*", src)
        if "".join(pieces) != src:
            raise ValueError(f"malformed ParamPoly text: {text!r}")
        total = cls._raw({})
        for piece in pieces:
            sign = -1 if piece[0] == "-" else 1
            body = piece[1:]
            if not body:
                raise ValueError(f"dangling sign in {text!r}")
            term = ParamPoly.const(sign)
            for factor in body.split("*"):
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
                if m:
                    term = term.scale(Fraction(int(m.group(1)), int(m.group(2) or 1)))
                    continue
                m = re.fullmatch(r"([a-z]+)(?:\^(\d+))?", factor)
                if not m:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                term = term * ParamPoly.symbol(m.group(1), int(m.group(2) or 1))
            total = total + term
        return total


def poly_add(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a + b


def poly_mul(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a * b


def poly_eval(p: ParamPoly, bindings: Mapping[str, Scalar]) -> ParamPoly:
    return p.eval(bindings)


def symbols(names: Iterable[str] = PARAMS) -> Tuple[ParamPoly, ...]:
    return tuple(ParamPoly.symbol(n) for n in names)
