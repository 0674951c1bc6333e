"""Exact sparse multivariate polynomials.

Coefficients are Python integers (or exact :class:`~fractions.Fraction`
values once a rational has been substituted in).  Exponents live on a
half-unit grid and are stored doubled, so ``x^(3/2)`` is kept as
``("x", 3)``.  Negative exponents are only accepted by polynomials created
with ``laurent=True``.

The text form produced by :meth:`MultiPoly.to_text` is canonical: equal
polynomials always print identically, and :meth:`MultiPoly.parse` inverts it.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, MalformedInput, MissingAssignment

T_VAR = "t"

Monomial = tuple  # tuple[tuple[str, int], ...], half-unit exponents, t last
Coeff = Union[int, Fraction]
Scalar = Union[int, Fraction]

_ONE: Monomial = ()


def _var_key(name: str):
    return (name == T_VAR, name)


def _norm_coeff(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    if isinstance(c, bool):
        return int(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _make_mono(exps: Mapping[str, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda p: _var_key(p[0])))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return _make_mono(d)


def _sort_key(m: Monomial):
    return (tuple(_var_key(v) for v, _ in m), tuple(e for _, e in m))


def _half(value) -> int:
    """Convert a real exponent to half-units, rejecting anything off the grid."""
    f = Fraction(value) * 2
    if f.denominator != 1:
        raise MalformedInput(f"exponent {value} is not on the half-integer grid")
    return int(f)


def _exact_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise ValueError(f"no real square root of {q}")
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise ValueError(f"{q} is not a rational square")
    return Fraction(n, d)


def _fmt_exp(h: int) -> str:
    return str(h // 2) if h % 2 == 0 else f"{h}/2"


class MultiPoly:
    """Immutable sparse polynomial ``{monomial: coefficient}``."""

    __slots__ = ("_terms", "laurent", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None, laurent: bool = False):
        clean = {}
        for m, c in (terms or {}).items():
            c = _norm_coeff(c)
            if c:
                if not laurent and any(e < 0 for _, e in m):
                    raise MalformedInput("negative exponent in a non-Laurent polynomial")
                clean[m] = c
        self._terms = clean
        self.laurent = laurent
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, c: Coeff) -> "MultiPoly":
        return cls({_ONE: c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        if not name:
            raise MalformedInput("variable labels must be nonempty")
        return cls({((name, 2),): 1})

    @classmethod
    def term(cls, coeff: Coeff, exps: Mapping[str, object] | None = None,
             laurent: bool = False) -> "MultiPoly":
        """Single term ``coeff * prod(v^e)``; exponents are ordinary numbers."""
        mono = _make_mono({v: _half(e) for v, e in (exps or {}).items()})
        return cls({mono: coeff}, laurent=laurent)

    @staticmethod
    def coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, str):
            return MultiPoly.var(x)
        return MultiPoly.const(x)

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def degree(self, var: str) -> Fraction:
        """Largest exponent of ``var`` (0 for the zero polynomial)."""
        best = 0
        for m in self._terms:
            for v, e in m:
                if v == var:
                    best = max(best, e)
        return Fraction(best, 2)

    def coefficient(self, exps: Mapping[str, object]) -> Coeff:
        return self._terms.get(_make_mono({v: _half(e) for v, e in exps.items()}), 0)

    def is_integral(self) -> bool:
        """True when every exponent is a nonnegative integer."""
        return all(e >= 0 and e % 2 == 0 for m in self._terms for _, e in m)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    # arithmetic -------------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = MultiPoly.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()}, self.laurent)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly.coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = MultiPoly.coerce(other)
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MultiPoly(out, self.laurent or other.laurent)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers of polynomials are supported")
        result, base = MultiPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution and evaluation --------------------------------------
    def subst(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Simultaneously replace variables; unmapped variables are kept."""
        repl = {v: MultiPoly.coerce(p) for v, p in mapping.items()}
        cache: dict = {}
        acc: dict = {}
        laurent = self.laurent
        for mono, c in self._terms.items():
            kept = {}
            factor = MultiPoly.const(c)
            for v, h in mono:
                if v not in repl:
                    kept[v] = h
                    continue
                key = (v, h)
                if key not in cache:
                    cache[key] = _power(repl[v], h)
                p = cache[key]
                laurent = laurent or p.laurent
                factor = factor * p
            if kept:
                factor = factor * MultiPoly({_make_mono(kept): 1}, laurent=self.laurent)
            for m, cc in factor._terms.items():
                acc[m] = acc.get(m, 0) + cc
        return MultiPoly(acc, laurent)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        roots: dict = {}
        for mono, c in self._terms.items():
            val = Fraction(c)
            for v, h in mono:
                if v not in point:
                    raise MissingAssignment(v)
                x = Fraction(point[v])
                if h < 0 and x == 0:
                    raise DivisionByZero(f"{v} = 0 under a negative exponent")
                if h % 2:
                    if v not in roots:
                        roots[v] = _exact_sqrt(x)
                    val *= roots[v] ** h
                else:
                    val *= x ** (h // 2)
            total += val
        return total

    # text form --------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            factors = [v if h == 2 else f"{v}^{_fmt_exp(h)}" for v, h in mono]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = " * ".join(factors)
            else:
                body = " * ".join([str(mag)] + factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        text = text.strip()
        if not text:
            raise MalformedInput("empty polynomial text")
        pieces = re.split(r"\s+([+-])\s+", text)
        signs = ["+"] + pieces[1::2]
        acc: dict = {}
        laurent = False
        for sign, body in zip(signs, pieces[0::2]):
            body = body.strip()
            neg = sign == "-"
            if body.startswith("-"):
                neg, body = not neg, body[1:].strip()
            coeff: Coeff = 1
            exps: dict = {}
            for tok in re.split(r"\s*\*\s*", body):
                if not tok:
                    raise MalformedInput(f"malformed term {body!r}")
                if re.fullmatch(r"\d+(/\d+)?", tok):
                    coeff = coeff * Fraction(tok)
                    continue
                name, _, exp = tok.partition("^")
                if not name or any(ch.isspace() for ch in name):
                    raise MalformedInput(f"malformed factor {tok!r}")
                try:
                    h = _half(Fraction(exp)) if exp else 2
                except (ValueError, ZeroDivisionError) as err:
                    raise MalformedInput(f"malformed exponent in {tok!r}") from err
                laurent = laurent or h < 0
                exps[name] = exps.get(name, 0) + h
            m = _make_mono(exps)
            acc[m] = acc.get(m, 0) + (-coeff if neg else coeff)
        return cls(acc, laurent)


def _power(p: MultiPoly, h: int) -> MultiPoly:
    """``p`` raised to the half-unit exponent ``h``."""
    if h % 2 == 0 and h >= 0:
        return p ** (h // 2)
    if len(p) != 1:
        raise MalformedInput(
            "only a single-term polynomial can be raised to a negative or half-integer power")
    (mono, c), = p.items()
    c = Fraction(c)
    if h % 2:
        c = _exact_sqrt(c) if c >= 0 else None
        if c is None:
            raise MalformedInput("cannot take the square root of a negative coefficient")
        new = {}
        for v, e in mono:
            if (e * h) % 2:
                raise MalformedInput(f"{v}^{_fmt_exp(e)} has no half-grid square root")
            new[v] = e * h // 2
        cc = c ** h
    else:
        new = {v: e * h // 2 for v, e in mono}
        if c == 0:
            raise DivisionByZero("zero raised to a negative power")
        cc = c ** (h // 2)
    laurent = p.laurent or any(e < 0 for e in new.values())
    return MultiPoly({_make_mono(new): cc}, laurent=laurent)


# functional surface -------------------------------------------------------

def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_subst(p: MultiPoly, mapping: Mapping[str, object]) -> MultiPoly:
    return p.subst(mapping)


def poly_eval(p: MultiPoly, point: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(point)


def poly_sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    acc: dict = {}
    laurent = False
    for p in polys:
        laurent = laurent or p.laurent
        for m, c in p.items():
            acc[m] = acc.get(m, 0) + c
    return MultiPoly(acc, laurent)


def rename_vars(p: MultiPoly, mapping: Mapping[str, str]) -> MultiPoly:
    """Rename variables (a cheap special case of substitution)."""
    acc: dict = {}
    for mono, c in p.items():
        d: dict = {}
        for v, h in mono:
            w = mapping.get(v, v)
            d[w] = d.get(w, 0) + h
        m = _make_mono(d)
        acc[m] = acc.get(m, 0) + c
    return MultiPoly(acc, p.laurent)


def first_difference(a: MultiPoly, b: MultiPoly):
    """First monomial (in canonical order) where ``a`` and ``b`` disagree.

    Returns ``None`` when the polynomials are equal, otherwise a tuple
    ``(monomial_text, coeff_in_a, coeff_in_b)``.
    """
    diff = a - b
    if diff.is_zero():
        return None
    mono, _ = diff.sorted_terms()[0]
    text = MultiPoly({mono: 1}).to_text()
    return text, a.terms.get(mono, 0), b.terms.get(mono, 0)
