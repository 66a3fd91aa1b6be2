"""Free associative algebra over ParamPoly and PBW normal ordering.

Words are tuples of generator *ranks*; a word is normal when its ranks are
nondecreasing.  The empty word is the identity (the central element of h5 is
identified with it).  Reduction swaps the leftmost out-of-order pair using the
bracket table ``g h = h g + [g, h]``; the implementation memoizes insertion of
one generator into a normal word, which is the same rewriting done
incrementally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .exactnum import PARAMS, ParamPoly, as_rational

__all__ = [
    "AlgebraError",
    "AlgebraSpec",
    "GeneratorId",
    "NCPoly",
    "Realization",
    "nc_commutator",
    "nc_mul",
    "normal_order",
    "parse_ncpoly",
    "substitute",
]

Word = Tuple[int, ...]
LinComb = Dict[Word, Fraction]


class AlgebraError(ValueError):
    """Raised when elements of different algebras are combined."""


@dataclass(frozen=True)
class GeneratorId:
    algebra: str
    name: str
    index: int
    rank: int


class AlgebraSpec:
    """Generators with a total order and a bracket table.

    ``brackets`` maps ordered name pairs ``(a, b)`` to ``[a, b]`` given as
    ``({name: coeff}, scalar)``.  Only one orientation per pair is needed;
    antisymmetry fills in the other.  Missing pairs commute.
    """

    def __init__(
        self,
        tag: str,
        order: Sequence[str],
        brackets: Mapping[Tuple[str, str], Tuple[Mapping[str, Fraction], Fraction]],
        index: Optional[Mapping[str, int]] = None,
        aliases: Optional[Mapping[str, str]] = None,
    ):
        self.tag = tag
        self.names: Tuple[str, ...] = tuple(order)
        self._rank = {n: r for r, n in enumerate(self.names)}
        idx = index or {n: r for r, n in enumerate(self.names)}
        self.generators = tuple(GeneratorId(tag, n, idx[n], r) for r, n in enumerate(self.names))
        self.aliases = dict(aliases or {})
        # table[(a, b)] for rank(a) > rank(b): the swap a*b -> b*a + [a, b]
        self._table: Dict[Tuple[int, int], Tuple[Dict[int, Fraction], Fraction]] = {}
        for (a, b), (lin, scalar) in brackets.items():
            ra, rb = self.rank(a), self.rank(b)
            if ra == rb:
                raise ValueError(f"bracket of {a} with itself must vanish")
            lin_r = {self.rank(k): as_rational(v) for k, v in lin.items() if as_rational(v)}
            scalar = as_rational(scalar)
            if ra < rb:
                ra, rb = rb, ra
                lin_r = {k: -v for k, v in lin_r.items()}
                scalar = -scalar
            if (ra, rb) in self._table and self._table[(ra, rb)] != (lin_r, scalar):
                raise ValueError(f"conflicting brackets given for ({a}, {b})")
            if lin_r or scalar:
                self._table[(ra, rb)] = (lin_r, scalar)
        self._insert_cache: Dict[Tuple[Word, int], LinComb] = {}
        self._nf_cache: Dict[Word, LinComb] = {(): {(): Fraction(1)}}

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.tag}, {list(self.names)})"

    def rank(self, name: str) -> int:
        name = self.aliases.get(name, name)
        try:
            return self._rank[name]
        except KeyError:
            raise AlgebraError(f"{name!r} is not a generator of {self.tag}") from None

    def has_generator(self, name: str) -> bool:
        return self.aliases.get(name, name) in self._rank

    def bracket(self, a: str, b: str) -> Tuple[Dict[str, Fraction], Fraction]:
        """``[a, b]`` as ``({generator: coeff}, scalar)``."""
        ra, rb = self.rank(a), self.rank(b)
        if ra == rb:
            return {}, Fraction(0)
        if ra > rb:
            lin, s = self._table.get((ra, rb), ({}, Fraction(0)))
            return {self.names[k]: v for k, v in lin.items()}, s
        lin, s = self._table.get((rb, ra), ({}, Fraction(0)))
        return {self.names[k]: -v for k, v in lin.items()}, -s

    def is_normal(self, word: Word) -> bool:
        return all(word[i] <= word[i + 1] for i in range(len(word) - 1))

    # -- rewriting core -----------------------------------------------------

    def _insert(self, word: Word, g: int) -> LinComb:
        """Normal form of ``word * g`` for a normal ``word``."""
        if not word or word[-1] <= g:
            return {word + (g,): Fraction(1)}
        key = (word, g)
        hit = self._insert_cache.get(key)
        if hit is not None:
            return hit
        a = word[-1]
        head = word[:-1]
        out: LinComb = {}
        # head * a * g = head * g * a + head * [a, g]
        for w, c in self._insert(head, g).items():
            for w2, c2 in self._insert(w, a).items():
                out[w2] = out.get(w2, 0) + c * c2
        entry = self._table.get((a, g))
        if entry is not None:
            lin, scalar = entry
            for k, ck in lin.items():
                for w2, c2 in self._insert(head, k).items():
                    out[w2] = out.get(w2, 0) + ck * c2
            if scalar:
                out[head] = out.get(head, 0) + scalar
        out = {w: c for w, c in out.items() if c}
        self._insert_cache[key] = out
        return out

    def normal_form(self, word: Word) -> LinComb:
        """Normal form of an arbitrary word as ``{normal word: coeff}``."""
        hit = self._nf_cache.get(word)
        if hit is not None:
            return hit
        if self.is_normal(word):
            out = {word: Fraction(1)}
        else:
            out = {}
            for w, c in self.normal_form(word[:-1]).items():
                for w2, c2 in self._insert(w, word[-1]).items():
                    out[w2] = out.get(w2, 0) + c * c2
            out = {w: c for w, c in out.items() if c}
        self._nf_cache[word] = out
        return out

    def clear_cache(self) -> None:
        self._insert_cache.clear()
        self._nf_cache = {(): {(): Fraction(1)}}

    # -- element constructors ----------------------------------------------

    def gen(self, name: str) -> "NCPoly":
        return NCPoly(self, {(self.rank(name),): ParamPoly.const(1)})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): ParamPoly.const(1)})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def scalar(self, c) -> "NCPoly":
        return NCPoly(self, {(): ParamPoly.coerce(c)})

    def word_text(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.names[word[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def _accumulate(acc: Dict[Tuple[Word, tuple], Fraction], word: Word, coeff: ParamPoly, r: Fraction) -> None:
    for e, v in coeff.items():
        k = (word, e)
        s = acc.get(k, 0) + v * r
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _collect(acc: Dict[Tuple[Word, tuple], Fraction]) -> Dict[Word, ParamPoly]:
    grouped: Dict[Word, Dict[tuple, Fraction]] = {}
    for (w, e), v in acc.items():
        if v:
            grouped.setdefault(w, {})[e] = v
    return {w: ParamPoly._raw(t) for w, t in grouped.items()}


class NCPoly:
    """Finite sum of words weighted by ParamPoly coefficients.

    ``a * b`` is the free (concatenation) product and keeps the original word
    order; use :func:`nc_mul` or :meth:`normal` to reduce to PBW form.
    """

    __slots__ = ("spec", "_terms", "normal_flag")

    def __init__(self, spec: AlgebraSpec, terms: Mapping[Word, ParamPoly] | None = None):
        self.spec = spec
        clean = {}
        for w, c in (terms or {}).items():
            c = ParamPoly.coerce(c)
            if c:
                clean[tuple(w)] = c
        self._terms: Dict[Word, ParamPoly] = clean
        self.normal_flag = all(spec.is_normal(w) for w in clean)

    @property
    def terms(self) -> Dict[Word, ParamPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "NCPoly") -> None:
        if other.spec is not self.spec:
            raise AlgebraError(f"cannot combine elements of {self.spec.tag} and {other.spec.tag}")

    def _lift(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return self.spec.scalar(other)

    def __add__(self, other) -> "NCPoly":
        other = self._lift(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly(self.spec, out)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.spec, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "NCPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "NCPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            c = ParamPoly.coerce(other)
            return NCPoly(self.spec, {w: v * c for w, v in self._terms.items()})
        self._check(other)
        acc: Dict[Tuple[Word, tuple], Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                _accumulate(acc, w1 + w2, c1 * c2, Fraction(1))
        return NCPoly(self.spec, _collect(acc))

    def __rmul__(self, other) -> "NCPoly":
        c = ParamPoly.coerce(other)
        return NCPoly(self.spec, {w: c * v for w, v in self._terms.items()})

    def __pow__(self, k: int) -> "NCPoly":
        out = self.spec.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            if isinstance(other, (int, Fraction, ParamPoly)):
                return self._terms == self.spec.scalar(other)._terms
            return NotImplemented
        return self.spec is other.spec and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec.tag, frozenset(self._terms.items())))

    def normal(self) -> "NCPoly":
        return normal_order(self)

    def map_coefficients(self, fn) -> "NCPoly":
        return NCPoly(self.spec, {w: fn(c) for w, c in self._terms.items()})

    def eval(self, bindings) -> "NCPoly":
        return self.map_coefficients(lambda c: c.eval(bindings))

    def coefficient(self, *names: str) -> ParamPoly:
        w = tuple(self.spec.rank(n) for n in names)
        return self._terms.get(w, ParamPoly.const(0))

    def max_degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def param_blocks(self) -> Dict[tuple, "NCPoly"]:
        """Split by parameter monomial: ``{exponents: NCPoly with rational coeffs}``."""
        blocks: Dict[tuple, Dict[Word, ParamPoly]] = {}
        for w, c in self._terms.items():
            for e, v in c.items():
                blocks.setdefault(e, {})[w] = ParamPoly.const(v)
        return {e: NCPoly(self.spec, t) for e, t in blocks.items()}

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for w, c in self.sorted_terms():
            ctext = str(c)
            neg = False
            if len(c.terms) > 1:
                ctext = f"({ctext})"
            elif ctext.startswith("-"):
                neg, ctext = True, ctext[1:]
            if not w:
                body = ctext
            elif ctext == "1":
                body = self.spec.word_text(w)
            else:
                body = f"{ctext} * {self.spec.word_text(w)}"
            chunks.append((neg, body))
        text = ("-" if chunks[0][0] else "") + chunks[0][1]
        for neg, body in chunks[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def __repr__(self) -> str:
        return f"NCPoly[{self.spec.tag}]({str(self)!r})"


def normal_order(x: NCPoly) -> NCPoly:
    """Rewrite ``x`` into the PBW basis of its algebra."""
    spec = x.spec
    if x.normal_flag:
        return x
    acc: Dict[Tuple[Word, tuple], Fraction] = {}
    for w, c in x.items():
        for nw, r in spec.normal_form(w).items():
            _accumulate(acc, nw, c, r)
    out = NCPoly(spec, _collect(acc))
    out.normal_flag = True
    return out


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    a._check(b)
    spec = a.spec
    acc: Dict[Tuple[Word, tuple], Fraction] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            c = c1 * c2
            for nw, r in spec.normal_form(w1 + w2).items():
                _accumulate(acc, nw, c, r)
    out = NCPoly(spec, _collect(acc))
    out.normal_flag = True
    return out


def nc_commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """Normal form of ``a*b - b*a``."""
    return nc_mul(a, b) - nc_mul(b, a)


@dataclass
class Realization:
    """Images of the source generators inside the target algebra."""

    source: AlgebraSpec
    target: AlgebraSpec
    images: Dict[str, NCPoly]
    _word_cache: Dict[Word, NCPoly] = field(default_factory=dict, repr=False)

    def image_of_word(self, word: Word) -> NCPoly:
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        if not word:
            out = self.target.one()
        else:
            name = self.source.names[word[-1]]
            if name not in self.images:
                raise KeyError(f"no image given for generator {name}")
            out = nc_mul(self.image_of_word(word[:-1]), self.images[name])
        self._word_cache[word] = out
        return out


def substitute(x: NCPoly, r: Realization) -> NCPoly:
    """Apply the homomorphism induced by ``r``; result is normal-ordered."""
    if x.spec is not r.source:
        raise AlgebraError(f"realization source is {r.source.tag}, element lives in {x.spec.tag}")
    acc: Dict[Tuple[Word, tuple], Fraction] = {}
    for w, c in x.items():
        img = r.image_of_word(w)
        for nw, ic in img.items():
            for e, v in (c * ic).items():
                k = (nw, e)
                s = acc.get(k, 0) + v
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
    out = NCPoly(r.target, _collect(acc))
    out.normal_flag = True
    return out


# -- text parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            out.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        elif m.group(3) is not None and m.group(3).strip():
            op = m.group(3)
            if op not in "+-*/^()":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, spec: AlgebraSpec, text: str, symbols: Mapping[str, NCPoly]):
        self.spec = spec
        self.text = text
        self.symbols = symbols
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            raise ValueError(f"expected {value or kind} in {self.text!r}, got {t[1]!r}")
        return t

    def parse(self) -> NCPoly:
        v = self.expr()
        if self.peek()[0] != "end":
            raise ValueError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return v

    def expr(self) -> NCPoly:
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> NCPoly:
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                v = v * self.factor()
            else:
                d = self.expect("num")[1]
                v = v * Fraction(1, d)
        return v

    def factor(self) -> NCPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = self.expect("num")[1]
            base = base**k
        return base

    def atom(self) -> NCPoly:
        kind, val = self.take()
        if kind == "num":
            return self.spec.scalar(val)
        if kind == "name":
            if val in self.symbols:
                return self.symbols[val]
            if val in PARAMS:
                return self.spec.scalar(ParamPoly.symbol(val))
            return self.spec.gen(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect("op", ")")
            return v
        raise ValueError(f"unexpected {val!r} in {self.text!r}")


def parse_ncpoly(text: str, spec: AlgebraSpec, symbols: Mapping[str, NCPoly] | None = None) -> NCPoly:
    """Parse an expression over ``spec``.

    Products are kept in the order written (no reordering); parameters
    ``nu tau mu lambda`` commute with everything.  ``symbols`` adds named
    sub-expressions such as the artifacts ``A1..A9``.
    """
    return _Parser(spec, text, symbols or {}).parse()
