"""Integral hyperplane arrangements and their intersection lattices.

Flats are identified by their closure: the set of indices of hyperplanes
containing them. The lattice always carries an artificial top element
above every flat, and terms indexed by that top contribute nothing to
characteristic polynomials.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .linalg import AffineSubspace, intersect_affine
from .polynomial import Polynomial, poly_sum
from .poset import Poset
from .report import VerificationReport


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """The set ``{x : normal . x = offset}``, stored in normalized form."""

    normal: tuple
    offset: int

    def __post_init__(self):
        a = tuple(int(v) for v in self.normal)
        b = int(self.offset)
        if not any(a):
            raise ArrangementError("hyperplane with zero normal vector")
        g = reduce(gcd, a, abs(b))
        lead = next(v for v in a if v)
        if lead < 0:
            g = -g
        object.__setattr__(self, "normal", tuple(v // g for v in a))
        object.__setattr__(self, "offset", b // g)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, point: Sequence) -> Fraction | int:
        return sum(a * x for a, x in zip(self.normal, point))

    def to_json(self) -> dict:
        return {"a": list(self.normal), "b": self.offset}

    def __str__(self) -> str:
        return f"{list(self.normal)}.x = {self.offset}"


class Arrangement:
    """A finite set of integral hyperplanes in ``R^n``, kept in input order."""

    def __init__(self, n: int, hyperplanes: Iterable[Hyperplane | tuple] = ()):
        if n < 0:
            raise ArrangementError("negative ambient dimension")
        self.n = n
        hs = []
        seen = {}
        for i, h in enumerate(hyperplanes):
            if not isinstance(h, Hyperplane):
                h = Hyperplane(*h)
            if h.dim != n:
                raise ArrangementError(f"hyperplane {i} has {h.dim} coordinates, expected {n}")
            if h in seen:
                raise ArrangementError(f"hyperplanes {seen[h]} and {i} coincide ({h})")
            seen[h] = i
            hs.append(h)
        self.hyperplanes = tuple(hs)

    @classmethod
    def unique(cls, n: int, hyperplanes: Iterable[Hyperplane | tuple]) -> "Arrangement":
        """Like the constructor, but silently merges coincident hyperplanes."""
        out = {}
        for h in hyperplanes:
            h = h if isinstance(h, Hyperplane) else Hyperplane(*h)
            out.setdefault(h, None)
        return cls(n, out)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __eq__(self, other) -> bool:
        return isinstance(other, Arrangement) and self.n == other.n and set(self.hyperplanes) == set(other.hyperplanes)

    def __hash__(self):
        return hash((self.n, frozenset(self.hyperplanes)))

    def __repr__(self) -> str:
        return f"Arrangement(n={self.n}, hyperplanes=[{', '.join(map(str, self.hyperplanes))}])"

    def to_json(self) -> dict:
        return {"n": self.n, "hyperplanes": [h.to_json() for h in self.hyperplanes]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Arrangement":
        n = data.get("n") if isinstance(data, Mapping) else None
        if not isinstance(n, int) or isinstance(n, bool):
            raise ArrangementError("arrangement JSON needs an integer 'n'")
        hs = []
        for i, h in enumerate(data.get("hyperplanes", [])):
            a, b = h.get("a"), h.get("b")
            if not isinstance(a, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in a):
                raise ArrangementError(f"hyperplane {i}: 'a' must be a list of integers")
            if not isinstance(b, int) or isinstance(b, bool):
                raise ArrangementError(f"hyperplane {i}: 'b' must be an integer")
            hs.append(Hyperplane(tuple(a), b))
        return cls(n, hs)

    @classmethod
    def load(cls, path) -> "Arrangement":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    @cached_property
    def lattice(self) -> "IntersectionLattice":
        return build_lattice(self)


@dataclass(frozen=True)
class Flat:
    closure: frozenset
    subspace: AffineSubspace | None
    is_top: bool = False

    @property
    def dim(self) -> int | None:
        return None if self.is_top else self.subspace.dim


@dataclass
class IntersectionLattice:
    """Flats of an arrangement plus the artificial top.

    Index 0 is the ambient space and the last index is the top.
    """

    arrangement: Arrangement
    flats: list
    poset: Poset = field(repr=False)

    def __post_init__(self):
        self.index = {f.closure: i for i, f in enumerate(self.flats) if not f.is_top}

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.flats) - 1

    def __len__(self) -> int:
        return len(self.flats)

    @property
    def dims(self) -> list:
        return [f.dim for f in self.flats]

    def proper(self) -> range:
        """Indices of genuine (non-top) flats."""
        return range(len(self.flats) - 1)

    def rank_of(self, i: int) -> int:
        return self.arrangement.n - self.flats[i].dim

    @cached_property
    def rank(self) -> int:
        return max(self.rank_of(i) for i in self.proper())

    def flat_of(self, X) -> int:
        """Accept an index, a Flat or a closure set."""
        if isinstance(X, int):
            return X
        if isinstance(X, Flat):
            return len(self.flats) - 1 if X.is_top else self.index[X.closure]
        return self.index[frozenset(X)]

    def leq(self, X, Y) -> bool:
        return self.poset.leq(self.flat_of(X), self.flat_of(Y))

    @cached_property
    def _chi_cache(self) -> dict:
        return {}

    def char_poly_interval(self, X, Y, var: str = "t") -> Polynomial:
        i, j = self.flat_of(X), self.flat_of(Y)
        if not self.poset.leq(i, j):
            raise ArrangementError(f"flat {i} is not below flat {j}")
        key = (i, j, var)
        if key not in self._chi_cache:
            row = self.poset.mobius_row(i)
            terms = [
                Polynomial.monomial(row[z], {var: self.flats[z].dim})
                for z in self.poset.interval(i, j)
                if not self.flats[z].is_top
            ]
            self._chi_cache[key] = poly_sum(terms)
        return self._chi_cache[key]


def _closure(A: Arrangement, sub: AffineSubspace) -> frozenset:
    return frozenset(i for i, h in enumerate(A.hyperplanes) if sub.lies_in(h.normal, h.offset))


def _solve(A: Arrangement, closure: Iterable[int]) -> AffineSubspace | None:
    return intersect_affine(A.n, [(A.hyperplanes[i].normal, A.hyperplanes[i].offset) for i in sorted(closure)])


def build_lattice(A: Arrangement) -> IntersectionLattice:
    ambient = intersect_affine(A.n, [])
    found = {frozenset(): ambient}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for cl in frontier:
            for i in range(len(A)):
                if i in cl:
                    continue
                sub = _solve(A, cl | {i})
                if sub is None:
                    continue
                new = _closure(A, sub)
                if new not in found:
                    found[new] = sub
                    nxt.append(new)
        frontier = nxt
    ordered = sorted(found, key=lambda c: (-found[c].dim, sorted(c)))
    flats = [Flat(c, found[c]) for c in ordered]
    flats.append(Flat(frozenset(range(len(A))), None, is_top=True))
    top = len(flats) - 1

    def leq(x: int, y: int) -> bool:
        return y == top or (x != top and flats[x].closure <= flats[y].closure)

    return IntersectionLattice(A, flats, Poset.from_leq(leq, size=len(flats)))


def char_poly_interval(L: IntersectionLattice, X, Y, var: str = "t") -> Polynomial:
    return L.char_poly_interval(X, Y, var)


def char_poly(A: Arrangement, var: str = "t") -> Polynomial:
    L = A.lattice
    return L.char_poly_interval(L.bottom, L.top, var)


def _flat(A: Arrangement, X) -> Flat:
    L = A.lattice
    f = L.flats[L.flat_of(X)]
    if f.is_top:
        raise ArrangementError("operation undefined at the artificial top")
    return f


def restrict(A: Arrangement, X) -> Arrangement:
    """Hyperplanes of ``A`` containing the flat ``X``, in the ambient space."""
    f = _flat(A, X)
    return Arrangement(A.n, [h for i, h in enumerate(A.hyperplanes) if i in f.closure])


def contract(A: Arrangement, X) -> Arrangement:
    """Traces on ``X`` of the hyperplanes not containing it.

    ``X`` is coordinatized by its free coordinates (the parameters of its
    echelon basis); each trace equation is scaled to integers.
    """
    f = _flat(A, X)
    sub = f.subspace
    traces = []
    for i, h in enumerate(A.hyperplanes):
        if i in f.closure:
            continue
        coeffs = [sum(a * d for a, d in zip(h.normal, direction)) for direction in sub.directions]
        if not any(coeffs):
            continue  # parallel to X and disjoint from it
        rhs = h.offset - h.value(sub.basepoint)
        den = lcm(*(Fraction(c).denominator for c in coeffs + [rhs]))
        traces.append(Hyperplane(tuple(int(c * den) for c in coeffs), int(rhs * den)))
    return Arrangement.unique(sub.dim, traces)


def rank(A: Arrangement) -> int:
    return A.lattice.rank


def regions(A: Arrangement) -> int:
    return (-1) ** A.n * char_poly(A).evaluate({"t": -1})


def bounded_regions(A: Arrangement) -> int:
    return (-1) ** rank(A) * char_poly(A).evaluate({"t": 1})


def is_central(A: Arrangement) -> bool:
    return _solve(A, range(len(A))) is not None


def describe_flat(L: IntersectionLattice, i: int):
    f = L.flats[i]
    return "top" if f.is_top else sorted(f.closure)


def verify_interval_convolution(A: Arrangement) -> VerificationReport:
    """Check the interval convolution of characteristic polynomials everywhere.

    Every pair ``X <= Y`` of the lattice (the top included) is checked from
    the interval polynomials; the whole-lattice case is also recomputed from
    restrictions and contractions built from scratch.
    """
    start = time.perf_counter()
    L = A.lattice
    P = L.poset
    st = {"t": Polynomial.var("s") * Polynomial.var("t")}
    bad = None
    checked = 0
    for x, y in P.intervals():
        lhs = L.char_poly_interval(x, y, "t").substitute(st)
        rhs = poly_sum(
            L.char_poly_interval(x, z, "s") * L.char_poly_interval(z, y, "t") for z in P.interval(x, y)
        )
        checked += 1
        if lhs != rhs:
            bad = (describe_flat(L, x), describe_flat(L, y))
            break
    whole_lhs = char_poly(A).substitute(st)
    whole_rhs = poly_sum(
        char_poly(restrict(A, i), "s") * char_poly(contract(A, i), "t") for i in L.proper()
    )
    passed = bad is None and whole_lhs == whole_rhs
    if bad is None and whole_lhs != whole_rhs:
        bad = "restriction/contraction sum"
    return VerificationReport(
        identity="interval-convolution",
        passed=passed,
        sides={"chi(A, st)": str(whole_lhs), "sum chi(A|X, s) chi(A/X, t)": str(whole_rhs)},
        locus=bad,
        details={"intervals_checked": checked, "flats": len(L) - 1},
        elapsed=time.perf_counter() - start,
    )


def verify_region_convolution(A: Arrangement) -> VerificationReport:
    """Check both signed region-count convolutions over the flats."""
    start = time.perf_counter()
    L = A.lattice
    rk = L.rank
    b_sum = 0
    r_sum = 0
    for i in L.proper():
        sign = (-1) ** (rk - L.rank_of(i))
        res, con = restrict(A, i), contract(A, i)
        r_res = regions(res)
        b_sum += sign * r_res * regions(con)
        r_sum += sign * r_res * bounded_regions(con)
    b, r = bounded_regions(A), regions(A)
    parts = [
        VerificationReport("bounded-region-convolution", b == b_sum,
                           {"b(A)": b, "sum (-1)^corank r(A|X) r(A/X)": b_sum}),
        VerificationReport("region-convolution", r == r_sum,
                           {"r(A)": r, "sum (-1)^corank r(A|X) b(A/X)": r_sum}),
    ]
    return VerificationReport.combine(
        "region-convolutions", parts, details={"rank": rk}, elapsed=time.perf_counter() - start
    )
