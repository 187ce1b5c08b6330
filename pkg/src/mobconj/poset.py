"""Finite posets, incidence algebras over integer polynomials, and Möbius conjugation.

Elements are the integers ``0..size-1``. The order is stored as one upset
bitmask per element, which keeps Boolean lattices on a dozen atoms cheap.
"""

from __future__ import annotations

import itertools
import json
import threading
import time
from typing import Callable, Iterable, Mapping, Sequence

from .polynomial import Polynomial, PolyLike
from .report import VerificationReport


class PosetError(ValueError):
    """Raised when a relation fails one of the partial order axioms."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} violated at {witness}")


class Poset:
    """A finite partial order on ``range(size)``."""

    def __init__(self, size: int, up: Sequence[int], validate: bool = True):
        self.size = size
        self._up = list(up)
        if validate:
            _check_axioms(size, self._up)
        down = [0] * size
        for x in range(size):
            m = self._up[x]
            for y in _bits(m):
                down[y] |= 1 << x
        self._down = down
        # linear extension: fewer elements below comes first
        self.order = sorted(range(size), key=lambda x: (bin(down[x]).count("1"), x))
        self._rank_in_order = {x: i for i, x in enumerate(self.order)}
        self._mobius: dict[int, dict[int, int]] = {}
        self._lock = threading.Lock()

    # constructors -----------------------------------------------------

    @classmethod
    def from_leq(cls, leq: Callable[[int, int], bool] | Sequence[Sequence[bool]], size: int | None = None) -> "Poset":
        """Validate a full relation given as a matrix or a predicate."""
        if callable(leq):
            if size is None:
                raise ValueError("size is required with a predicate")
            rel = leq
        else:
            size = len(leq)
            for row in leq:
                if len(row) != size:
                    raise ValueError("relation matrix is not square")
            rel = lambda x, y: bool(leq[x][y])
        up = [sum(1 << y for y in range(size) if rel(x, y)) for x in range(size)]
        return cls(size, up)

    @classmethod
    def from_relations(cls, size: int, relations: Iterable[tuple[int, int]]) -> "Poset":
        """Reflexive-transitive closure of ``relations``, then validate."""
        up = [1 << x for x in range(size)]
        for i, j in relations:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"relation {(i, j)} outside 0..{size - 1}")
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for x in range(size):
                acc = up[x]
                for y in _bits(up[x]):
                    acc |= up[y]
                if acc != up[x]:
                    up[x] = acc
                    changed = True
        return cls(size, up)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(n, [((1 << n) - 1) & ~((1 << x) - 1) for x in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, [1 << x for x in range(n)])

    @classmethod
    def boolean(cls, k: int) -> "Poset":
        """Subsets of a k-set ordered by inclusion; element = bitmask."""
        n = 1 << k
        up = []
        for a in range(n):
            comp = (n - 1) & ~a
            m = 0
            sub = comp
            while True:
                m |= 1 << (a | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & comp
            up.append(m)
        return cls(n, up)

    # queries ----------------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def up(self, x: int) -> list[int]:
        return sorted(_bits(self._up[x]), key=self._rank_in_order.__getitem__)

    def interval(self, x: int, y: int) -> list[int]:
        """Elements of ``[x, y]`` in linear-extension order."""
        m = self._up[x] & self._down[y]
        return sorted(_bits(m), key=self._rank_in_order.__getitem__)

    def intervals(self) -> list[tuple[int, int]]:
        return [(x, y) for x in self.order for y in self.up(x)]

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.size)] for x in range(self.size)]

    def minimum(self) -> int | None:
        full = (1 << self.size) - 1
        return next((x for x in range(self.size) if self._up[x] == full), None)

    def maximum(self) -> int | None:
        full = (1 << self.size) - 1
        return next((x for x in range(self.size) if self._down[x] == full), None)

    # Möbius -----------------------------------------------------------

    def mobius_row(self, x: int) -> dict[int, int]:
        """``{y: mu(x, y)}`` for every ``y >= x``."""
        row = self._mobius.get(x)
        if row is not None:
            return row
        row = {}
        for y in self.up(x):
            if y == x:
                row[y] = 1
            else:
                below = self._up[x] & self._down[y] & ~(1 << y)
                row[y] = -sum(row[z] for z in _bits(below))
        with self._lock:
            self._mobius.setdefault(x, row)
        return self._mobius[x]

    def mobius_value(self, x: int, y: int) -> int:
        if not self.leq(x, y):
            raise ValueError(f"{x} is not below {y}")
        return self.mobius_row(x)[y]

    def to_json(self) -> dict:
        rel = [[x, y] for x in range(self.size) for y in _bits(self._up[x]) if x != y]
        return {"size": self.size, "relations": rel}

    @classmethod
    def from_json(cls, data: Mapping) -> "Poset":
        if not isinstance(data.get("size"), int) or data["size"] < 0:
            raise ValueError("poset JSON needs a non-negative integer 'size'")
        rels = data.get("relations", [])
        return cls.from_relations(data["size"], [tuple(r) for r in rels])

    @classmethod
    def load(cls, path) -> "Poset":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self) -> str:
        return f"Poset(size={self.size})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_axioms(size: int, up: Sequence[int]) -> None:
    for x in range(size):
        if not up[x] >> x & 1:
            raise PosetError("reflexivity", (x, x))
    for x in range(size):
        for y in _bits(up[x]):
            if y != x and up[y] >> x & 1:
                raise PosetError("antisymmetry", (x, y))
    for x in range(size):
        for y in _bits(up[x]):
            extra = up[y] & ~up[x]
            if extra:
                z = next(_bits(extra))
                raise PosetError("transitivity", (x, y, z))


def validate_poset(leq) -> Poset:
    return Poset.from_leq(leq)


class IncidenceFunction:
    """A map from the intervals ``(x, y)``, ``x <= y``, of a poset to polynomials."""

    __slots__ = ("poset", "values")

    def __init__(self, poset: Poset, values: Mapping[tuple[int, int], PolyLike] | None = None,
                 default: PolyLike = 0):
        self.poset = poset
        vals = {}
        given = dict(values or {})
        for iv in given:
            if not poset.leq(*iv):
                raise ValueError(f"{iv} is not an interval")
        zero = Polynomial.coerce(default)
        for iv in poset.intervals():
            vals[iv] = Polynomial.coerce(given[iv]) if iv in given else zero
        self.values = vals

    @classmethod
    def _wrap(cls, poset: Poset, values: dict) -> "IncidenceFunction":
        f = cls.__new__(cls)
        f.poset = poset
        f.values = values
        return f

    def __getitem__(self, iv: tuple[int, int]) -> Polynomial:
        return self.values[iv]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceFunction):
            return NotImplemented
        return self.poset is other.poset and self.values == other.values

    def __add__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        return IncidenceFunction._wrap(self.poset, {k: v + other.values[k] for k, v in self.values.items()})

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        return convolve(self, other, self.poset)

    def first_difference(self, other: "IncidenceFunction"):
        for iv in self.poset.intervals():
            if self.values[iv] != other.values[iv]:
                return iv
        return None


def zeta(P: Poset) -> IncidenceFunction:
    return IncidenceFunction(P, default=1)


def delta_identity(P: Poset) -> IncidenceFunction:
    return IncidenceFunction(P, {(x, x): 1 for x in range(P.size)})


def mobius(P: Poset) -> IncidenceFunction:
    vals = {}
    for x, y in P.intervals():
        vals[(x, y)] = Polynomial.const(P.mobius_value(x, y))
    return IncidenceFunction._wrap(P, vals)


def convolve(alpha: IncidenceFunction, beta: IncidenceFunction, P: Poset | None = None) -> IncidenceFunction:
    """``[alpha * beta](x, y) = sum over x <= z <= y of alpha(x, z) beta(z, y)``."""
    P = P or alpha.poset
    a, b = alpha.values, beta.values
    out = {}
    for x, y in P.intervals():
        acc: dict = {}
        for z in P.interval(x, y):
            prod = a[(x, z)] * b[(z, y)]
            for m, c in prod.items():
                acc[m] = acc.get(m, 0) + c
        out[(x, y)] = Polynomial({m: c for m, c in acc.items() if c})
    return IncidenceFunction._wrap(P, out)


PointFunction = Mapping[int, PolyLike]


def _total(f: PointFunction | Callable[[int], PolyLike], P: Poset) -> dict[int, Polynomial]:
    if callable(f):
        return {x: Polynomial.coerce(f(x)) for x in range(P.size)}
    missing = [x for x in range(P.size) if x not in f]
    if missing:
        raise ValueError(f"point function undefined at {missing[:5]}")
    return {x: Polynomial.coerce(f[x]) for x in range(P.size)}


def delta_of(f: PointFunction, P: Poset) -> IncidenceFunction:
    fx = _total(f, P)
    return IncidenceFunction(P, {(x, x): fx[x] for x in range(P.size)})


def mobius_conjugate(f: PointFunction, P: Poset) -> IncidenceFunction:
    """The incidence function ``mu * delta(f) * zeta``, by literal convolution."""
    return convolve(convolve(mobius(P), delta_of(f, P), P), zeta(P), P)


def conjugate_value(f: PointFunction, P: Poset, x: int, y: int) -> Polynomial:
    """One entry of the Möbius conjugate: ``sum over [x, y] of mu(x, z) f(z)``."""
    row = P.mobius_row(x)
    fx = f if not callable(f) else None
    acc: dict = {}
    for z in P.interval(x, y):
        val = Polynomial.coerce(f(z) if fx is None else fx[z]).scale(row[z])
        for m, c in val.items():
            acc[m] = acc.get(m, 0) + c
    return Polynomial({m: c for m, c in acc.items() if c})


def pointwise_product(f: PointFunction, g: PointFunction, P: Poset) -> dict[int, Polynomial]:
    fx, gx = _total(f, P), _total(g, P)
    return {x: fx[x] * gx[x] for x in range(P.size)}


def recover_point_function(conj: IncidenceFunction) -> dict[int, Polynomial]:
    """Invert the conjugation: ``zeta * conj * mu`` is ``delta(f)``."""
    P = conj.poset
    d = convolve(convolve(zeta(P), conj, P), mobius(P), P)
    return {x: d[(x, x)] for x in range(P.size)}


def verify_conjugation_homomorphism(P: Poset, f: PointFunction, g: PointFunction) -> VerificationReport:
    start = time.perf_counter()
    lhs = mobius_conjugate(pointwise_product(f, g, P), P)
    rhs = convolve(mobius_conjugate(f, P), mobius_conjugate(g, P), P)
    bad = lhs.first_difference(rhs)
    sides = {}
    if bad is not None:
        sides = {"mu*(fg)": str(lhs[bad]), "mu*(f)*mu*(g)": str(rhs[bad])}
    else:
        x, y = (P.minimum(), P.maximum()) if P.minimum() is not None and P.maximum() is not None else (None, None)
        if x is not None:
            sides = {"mu*(fg)": str(lhs[(x, y)]), "mu*(f)*mu*(g)": str(rhs[(x, y)])}
    return VerificationReport(
        identity="conjugation-homomorphism",
        passed=bad is None,
        sides=sides,
        locus=bad,
        details={"poset_size": P.size, "intervals": len(lhs.values)},
        elapsed=time.perf_counter() - start,
    )


def random_poset(rng, size: int, density: float = 0.4) -> Poset:
    """Transitive closure of a random DAG on ``range(size)``."""
    rels = [(i, j) for i, j in itertools.combinations(range(size), 2) if rng.random() < density]
    return Poset.from_relations(size, rels)
