"""Matroids given by a fully materialized rank table, and their polynomials.

Subsets are bitmasks over positions ``0..n-1``. Each position carries a
label (the element id in the original ground set) so that restrictions and
contractions keep naming their indexed variables ``x_<label>`` consistently.
"""

from __future__ import annotations

import json
import time
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .linalg import rank as matrix_rank
from .polynomial import Polynomial, indexed, poly_sum, product_over
from .poset import Poset, conjugate_value
from .report import VerificationReport

MAX_GROUND = 12

X, Y = Polynomial.var("x"), Polynomial.var("y")
LAMBDA, XI = "lambda", "xi"


class MatroidError(ValueError):
    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"rank table violates {axiom}; witness {witness}")


def _members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class Matroid:
    def __init__(self, size: int, ranks: Sequence[int], labels: Sequence[int] | None = None,
                 validate: bool = True):
        if size > MAX_GROUND:
            raise ValueError(f"ground set of size {size} exceeds the enumeration bound {MAX_GROUND}")
        if len(ranks) != 1 << size:
            raise ValueError(f"rank table needs {1 << size} entries, got {len(ranks)}")
        self.size = size
        self.ranks = tuple(int(r) for r in ranks)
        self.labels = tuple(range(size)) if labels is None else tuple(labels)
        if len(self.labels) != size:
            raise ValueError("one label per element required")
        if validate:
            self.validate()

    def validate(self) -> None:
        """Check normalization, unit increase and (local) submodularity.

        Under unit increase, submodularity is equivalent to
        ``r(A+e) + r(A+f) >= r(A+e+f) + r(A)`` for all ``A`` and ``e, f`` outside it.
        """
        r = self.ranks
        if r[0] != 0:
            raise MatroidError("r(empty) = 0", ([],))
        for a in range(1 << self.size):
            for e in range(self.size):
                if a >> e & 1:
                    continue
                d = r[a | 1 << e] - r[a]
                if d not in (0, 1):
                    raise MatroidError("unit increase", (self._named(a), self._named(a | 1 << e)))
        for a in range(1 << self.size):
            outside = [e for e in range(self.size) if not a >> e & 1]
            for e, f in combinations(outside, 2):
                ae, af = a | 1 << e, a | 1 << f
                if r[ae] + r[af] < r[ae | af] + r[a]:
                    raise MatroidError("submodularity", (self._named(ae), self._named(af)))

    def _named(self, mask: int) -> list[int]:
        return [self.labels[i] for i in _members(mask)]

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @property
    def rank(self) -> int:
        return self.ranks[self.full]

    def r(self, subset: int | Iterable[int]) -> int:
        return self.ranks[self.mask(subset)]

    def mask(self, subset: int | Iterable[int]) -> int:
        """Bitmask of a subset given as a mask or as labels."""
        if isinstance(subset, int):
            return subset
        pos = {l: i for i, l in enumerate(self.labels)}
        return sum(1 << pos[e] for e in subset)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and (self.size, self.ranks, self.labels) == (other.size, other.ranks, other.labels)

    def __repr__(self) -> str:
        return f"Matroid(size={self.size}, rank={self.rank}, labels={list(self.labels)})"

    def is_loop(self, i: int) -> bool:
        return self.ranks[1 << i] == 0

    def is_coloop(self, i: int) -> bool:
        return self.ranks[self.full & ~(1 << i)] < self.rank

    # serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"rank_table": {"n": self.size, "ranks": list(self.ranks)}}

    @classmethod
    def load(cls, path) -> "Matroid":
        with open(path) as fh:
            return matroid_from_json(json.load(fh))


def matroid_from_json(data: Mapping) -> Matroid:
    if not isinstance(data, Mapping) or len(data) != 1:
        raise ValueError("matroid JSON must have exactly one of uniform/graph/linear/rank_table")
    (kind, body), = data.items()
    if kind == "uniform":
        return matroid_uniform(body["r"], body["n"])
    if kind == "graph":
        return matroid_graphic([tuple(e) for e in body["edges"]], body.get("vertices"))
    if kind == "linear":
        return matroid_linear(body["columns"])
    if kind == "rank_table":
        return Matroid(body["n"], body["ranks"])
    raise ValueError(f"unknown matroid kind {kind!r}")


def matroid_uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise ValueError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, [min(r, _popcount(a)) for a in range(1 << n)])


def _forest_size(edges: Sequence[tuple[int, int]], mask: int) -> int:
    parent: dict = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    joined = 0
    for i in _members(mask):
        a, b = find(edges[i][0]), find(edges[i][1])
        if a != b:
            parent[a] = b
            joined += 1
    return joined


def matroid_graphic(edges: Sequence[tuple[int, int]], vertices: int | None = None) -> Matroid:
    """Cycle matroid; loops and parallel edges are allowed."""
    if vertices is not None:
        for u, v in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise ValueError(f"edge {(u, v)} uses a vertex outside 0..{vertices - 1}")
    return Matroid(len(edges), [_forest_size(edges, a) for a in range(1 << len(edges))])


def matroid_linear(columns: Sequence[Sequence[int]]) -> Matroid:
    """Column matroid of an integer matrix given as a list of columns."""
    cols = [list(map(int, c)) for c in columns]
    if len({len(c) for c in cols}) > 1:
        raise ValueError("columns must have equal length")
    return Matroid(len(cols), [matrix_rank([cols[i] for i in _members(a)]) for a in range(1 << len(cols))])


def restrict_matroid(M: Matroid, S: int | Iterable[int]) -> Matroid:
    s = M.mask(S)
    pos = _members(s)
    ranks = []
    for b in range(1 << len(pos)):
        ranks.append(M.ranks[sum(1 << pos[k] for k in range(len(pos)) if b >> k & 1)])
    return Matroid(len(pos), ranks, [M.labels[p] for p in pos], validate=False)


def contract_matroid(M: Matroid, T: int | Iterable[int]) -> Matroid:
    t = M.mask(T)
    pos = _members(M.full & ~t)
    rt = M.ranks[t]
    ranks = []
    for b in range(1 << len(pos)):
        a = sum(1 << pos[k] for k in range(len(pos)) if b >> k & 1)
        ranks.append(M.ranks[a | t] - rt)
    return Matroid(len(pos), ranks, [M.labels[p] for p in pos], validate=False)


def delete_element(M: Matroid, i: int) -> Matroid:
    return restrict_matroid(M, M.full & ~(1 << i))


# polynomials -------------------------------------------------------------


def rank_gen_poly(M: Matroid) -> Polynomial:
    counts: dict = {}
    rm = M.rank
    for a in range(1 << M.size):
        ra = M.ranks[a]
        key = (rm - ra, _popcount(a) - ra)
        counts[key] = counts.get(key, 0) + 1
    return poly_sum(Polynomial.monomial(c, {"x": i, "y": j}) for (i, j), c in counts.items())


def tutte_poly(M: Matroid) -> Polynomial:
    return rank_gen_poly(M).substitute({"x": X - 1, "y": Y - 1})


def tutte_deletion_contraction(M: Matroid) -> Polynomial:
    """Tutte polynomial by recursive deletion/contraction of the last element."""
    if M.size == 0:
        return Polynomial.const(1)
    e = M.size - 1
    if M.is_loop(e):
        return Y * tutte_deletion_contraction(delete_element(M, e))
    if M.is_coloop(e):
        return X * tutte_deletion_contraction(contract_matroid(M, 1 << e))
    return tutte_deletion_contraction(delete_element(M, e)) + tutte_deletion_contraction(contract_matroid(M, 1 << e))


def subset_corank_poly(M: Matroid, prefix: str = "x", lam: str = LAMBDA) -> Polynomial:
    """Sum over subsets A of x_A * lam^(r(M) - r(A)), in labelled variables."""
    terms = {}
    rm = M.rank
    for a in range(1 << M.size):
        mono = [(indexed(prefix, M.labels[i]), 1) for i in _members(a)]
        if rm - M.ranks[a]:
            mono.append((lam, rm - M.ranks[a]))
        terms[tuple(sorted(mono))] = 1
    return Polynomial(terms)


def _check_size(M: Matroid) -> None:
    if M.size > MAX_GROUND:
        raise ValueError(f"ground set too large ({M.size} > {MAX_GROUND})")


def _boolean(M: Matroid) -> Poset:
    return Poset.boolean(M.size)


def _conjugation_parts(M: Matroid, f, g, target: Polynomial, name: str) -> list[VerificationReport]:
    """Bridge ``mu*(fg)(0, E) = target`` and the convolution at the top interval."""
    P = _boolean(M)
    E = M.full
    fg = lambda a: f(a) * g(a)
    top = conjugate_value(fg, P, 0, E)
    conv = poly_sum(conjugate_value(f, P, 0, a) * conjugate_value(g, P, a, E) for a in range(1 << M.size))
    return [
        VerificationReport(f"{name}-conjugation-bridge", top == target,
                           {"mu*(fg)(0,E)": str(top), "closed form": str(target)}),
        VerificationReport(f"{name}-conjugation-convolution", top == conv,
                           {"mu*(fg)(0,E)": str(top), "sum mu*(f)(0,A) mu*(g)(A,E)": str(conv)}),
    ]


def verify_krs(M: Matroid) -> VerificationReport:
    """Tutte polynomial as a convolution of restriction and contraction values."""
    start = time.perf_counter()
    _check_size(M)
    lhs = tutte_poly(M)
    rhs = poly_sum(
        tutte_poly(restrict_matroid(M, a)).substitute({"x": 0})
        * tutte_poly(contract_matroid(M, a)).substitute({"y": 0})
        for a in range(1 << M.size)
    )
    rm = M.rank
    f = lambda a: (-X) ** (rm - M.ranks[a])
    g = lambda a: (-Y) ** (_popcount(a) - M.ranks[a])
    parts = [VerificationReport("krs", lhs == rhs, {"T_M(x,y)": str(lhs), "sum T_M|A(0,y) T_M/A(x,0)": str(rhs)})]
    parts += _conjugation_parts(M, g, f, rank_gen_poly(M).scale((-1) ** rm), "tutte")
    return VerificationReport.combine("krs", parts, elapsed=time.perf_counter() - start,
                                      details={"ground_size": M.size})


def verify_kung_identity5(M: Matroid) -> VerificationReport:
    start = time.perf_counter()
    _check_size(M)
    lhs = subset_corank_poly(M)
    rhs_terms = []
    for a in range(1 << M.size):
        C = contract_matroid(M, a)
        sc = subset_corank_poly(C).substitute({indexed("x", l): -1 for l in C.labels})
        rhs_terms.append(product_over("x", M._named(a), shift=1) * sc)
    rhs = poly_sum(rhs_terms)
    rm = M.rank
    f = lambda a: product_over("x", M._named(a), sign=-1)
    g = lambda a: Polynomial.monomial(1, {LAMBDA: rm - M.ranks[a]})
    parts = [VerificationReport("kung5", lhs == rhs,
                                {"SC_M(x,lambda)": str(lhs), "sum (x+1)_A SC_M/A(-1,lambda)": str(rhs)})]
    parts += _conjugation_parts(M, f, g, lhs, "kung5")
    return VerificationReport.combine(
        "kung5", parts, elapsed=time.perf_counter() - start, details={"ground_size": M.size},
        notes=["summand index T read as the summation subset A"],
    )


def verify_kung_identity1(M: Matroid) -> VerificationReport:
    start = time.perf_counter()
    _check_size(M)
    rm = M.rank
    sc = subset_corank_poly(M)
    subst = {indexed("x", l): Polynomial.var(indexed("x", l)) * Polynomial.var(indexed("y", l)) for l in M.labels}
    subst[LAMBDA] = Polynomial.var(LAMBDA) * Polynomial.var(XI)
    lhs = sc.substitute(subst)
    rhs_terms = []
    for a in range(1 << M.size):
        R, C = restrict_matroid(M, a), contract_matroid(M, a)
        left = subset_corank_poly(R).substitute({indexed("x", l): -Polynomial.var(indexed("x", l)) for l in R.labels})
        right = subset_corank_poly(C, prefix="y", lam=XI)
        coeff = Polynomial.monomial(1, {LAMBDA: rm - R.rank}) * product_over("y", M._named(a), sign=-1)
        rhs_terms.append(coeff * left * right)
    rhs = poly_sum(rhs_terms)
    f = lambda a: product_over("x", M._named(a)) * Polynomial.monomial(1, {LAMBDA: rm - M.ranks[a]})
    g = lambda a: product_over("y", M._named(a), sign=-1) * Polynomial.monomial(1, {XI: rm - M.ranks[a]})
    parts = [VerificationReport("kung1", lhs == rhs, {"SC_M(xy,lambda*xi)": str(lhs), "convolution sum": str(rhs)})]
    parts += _conjugation_parts(M, f, g, lhs, "kung1")
    return VerificationReport.combine(
        "kung1", parts, elapsed=time.perf_counter() - start, details={"ground_size": M.size},
        notes=["S and T both read as the summation subset A"],
    )
