"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

Every value is kept in canonical form: no zero coefficients, no zero
exponents, and terms printed in graded lexicographic order over the sorted
variable names, so equal polynomials always serialize to the same string.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable name
Scalar = int
PolyLike = Union["Polynomial", int]

_ONE: Monomial = ()


def _mono(exps: Mapping[str, int]) -> Monomial:
    for v, e in exps.items():
        if e < 0:
            raise ValueError(f"negative exponent {e} for {v!r}")
    return tuple(sorted((v, e) for v, e in exps.items() if e))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


class Polynomial:
    """A polynomial over the integers in any number of named variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls._raw({_ONE: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls._raw({((name, 1),): 1})

    @classmethod
    def monomial(cls, coeff: int, exps: Mapping[str, int]) -> "Polynomial":
        return cls._raw({_mono(exps): coeff} if coeff else {})

    @classmethod
    def coerce(cls, value: PolyLike) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls.const(value)
        raise TypeError(f"cannot interpret {value!r} as a polynomial")

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Read the canonical string form (``t^2 - 3*t + 3``) back in."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        if s[0] not in "+-":
            s = "+" + s
        total = cls.const(0)
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            term = cls.const(-1 if sign == "-" else 1)
            for factor in body.split("*"):
                if re.fullmatch(r"\d+", factor):
                    term = term * int(factor)
                    continue
                m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?", factor)
                if m is None:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                term = term * cls.monomial(1, {m.group(1): int(m.group(2) or 1)})
            total = total + term
        if "".join(sign + body for sign, body in re.findall(r"([+-])([^+-]+)", s)) != s:
            raise ValueError(f"cannot parse {text!r}")
        return total

    # inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> list[str]:
        return sorted({v for m in self._terms for v, _ in m})

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def constant_term(self) -> int:
        return self._terms.get(_ONE, 0)

    def coefficient(self, exps: Mapping[str, int]) -> int:
        return self._terms.get(_mono(exps), 0)

    # arithmetic -------------------------------------------------------

    def __add__(self, other: PolyLike) -> "Polynomial":
        other = Polynomial.coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return Polynomial.coerce(other) + (-self)

    def scale(self, c: int) -> "Polynomial":
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other: PolyLike) -> "Polynomial":
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        other = Polynomial.coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1 and _ONE in b:
            return self.scale(b[_ONE]) if a is self._terms else other.scale(b[_ONE])
        out: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # evaluation -------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        missing = [v for v in self.variables() if v not in assignment]
        if missing:
            raise KeyError(f"no value for variable(s) {', '.join(missing)}")
        total = 0
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                term *= assignment[v] ** e
            total += term
        return total

    def substitute(self, subst: Mapping[str, PolyLike]) -> "Polynomial":
        """Replace variables by polynomials; unmentioned variables are kept."""
        images = {v: Polynomial.coerce(p) for v, p in subst.items()}
        powers: dict = {}

        def power(v: str, e: int) -> Polynomial:
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        total = Polynomial._raw({})
        for m, c in self._terms.items():
            kept = tuple((v, e) for v, e in m if v not in images)
            term = Polynomial._raw({kept: c})
            for v, e in m:
                if v in images:
                    term = term * power(v, e)
            total = total + term
        return total

    # comparison / display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        names = self.variables()
        pos = {v: i for i, v in enumerate(names)}

        def key(item):
            m = item[0]
            exps = [0] * len(names)
            for v, e in m:
                exps[pos[v]] = e
            return (sum(exps), exps)

        return sorted(self._terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mag = abs(c)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def poly_add(a: PolyLike, b: PolyLike) -> Polynomial:
    return Polynomial.coerce(a) + b


def poly_mul(a: PolyLike, b: PolyLike) -> Polynomial:
    return Polynomial.coerce(a) * b


def poly_eval(p: PolyLike, assignment: Mapping[str, int]) -> int:
    return Polynomial.coerce(p).evaluate(assignment)


def poly_substitute(p: PolyLike, subst: Mapping[str, PolyLike]) -> Polynomial:
    return Polynomial.coerce(p).substitute(subst)


def poly_sum(items: Iterable[PolyLike]) -> Polynomial:
    total: dict = {}
    for p in items:
        for m, c in Polynomial.coerce(p).items():
            total[m] = total.get(m, 0) + c
    return Polynomial({m: c for m, c in total.items() if c})


def var(name: str) -> Polynomial:
    return Polynomial.var(name)


def indexed(prefix: str, element: int) -> str:
    """Name of the per-element variable ``<prefix>_<element>``."""
    return f"{prefix}_{element}"


def product_over(prefix: str, elements: Iterable[int], shift: int = 0, sign: int = 1) -> Polynomial:
    """Return the product of ``(sign*prefix_e + shift)`` over the given elements."""
    out = Polynomial.const(1)
    for e in elements:
        out = out * (Polynomial.var(indexed(prefix, e)).scale(sign) + shift)
    return out
