"""Reduction of integral arrangements modulo a prime and exhaustive point counts.

Every count here comes from scanning all ``q**n`` points, either of
``F_q^n`` or of the centred cube ``C(n, q)``. A scan labels each point by the
bitmask of hyperplanes it lies on (modulo ``q``); all counts are read off the
histogram of those masks.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arrangement import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    char_poly,
    is_central,
    regions,
    restrict,
)
from .polynomial import Polynomial
from .report import VerificationReport, all_equal

MAX_SCAN = 10**8
_CHUNK = 1 << 18


class GuardError(ValueError):
    """A precondition on ``q`` failed; distinct from an identity failing."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ReducedArrangement:
    q: int
    n: int
    hyperplanes: tuple  # ((normal residues), offset residue)
    source: Arrangement | None = None

    def __post_init__(self):
        if not is_prime(self.q):
            raise GuardError(f"q={self.q} is not prime")
        if len(self.hyperplanes) > 62:
            raise ValueError("at most 62 hyperplanes fit in a scan mask")
        for i, (a, b) in enumerate(self.hyperplanes):
            if any(not 0 <= v < self.q for v in a) or not 0 <= b < self.q:
                raise ValueError(f"hyperplane {i} is not reduced mod {self.q}")
            if not any(a):
                raise GuardError(f"hyperplane {i} has normal vanishing mod {self.q}")


def q_reduce(A: Arrangement, q: int) -> ReducedArrangement:
    hs = tuple((tuple(v % q for v in h.normal), h.offset % q) for h in A.hyperplanes)
    return ReducedArrangement(q, A.n, hs, A)


# --------------------------------------------------------------------------
# scanning


def _scan_block(q, n, normals, offsets, centred, lo, hi):
    idx = np.arange(lo, hi, dtype=np.int64)
    coords = np.empty((hi - lo, n), dtype=np.int64)
    rem = idx
    for i in reversed(range(n)):
        coords[:, i] = rem % q
        rem = rem // q
    if centred:
        coords -= (q - 1) // 2
    m = len(offsets)
    if m == 0:
        masks = np.zeros(hi - lo, dtype=np.int64)
    else:
        vals = coords @ np.asarray(normals, dtype=np.int64).T - np.asarray(offsets, dtype=np.int64)
        hit = np.mod(vals, q) == 0
        masks = hit.astype(np.int64) @ (np.int64(1) << np.arange(m, dtype=np.int64))
    uniq, first, counts = np.unique(masks, return_index=True, return_counts=True)
    return [(int(u), int(c), tuple(int(v) for v in coords[f])) for u, f, c in zip(uniq, first, counts)]


@dataclass
class Scan:
    """Histogram of hyperplane-incidence masks over all points of a scan."""

    counts: dict  # mask -> number of points
    witness: dict  # mask -> first point in odometer order
    total: int


def scan(Aq: ReducedArrangement, centred: bool = False, workers: int = 1) -> Scan:
    """Label every point of ``F_q^n`` (or the cube ``C(n, q)``) by its mask.

    Points are visited in odometer order, last coordinate fastest.
    """
    q, n = Aq.q, Aq.n
    total = q**n
    if total > MAX_SCAN:
        raise GuardError(f"q^n = {q}^{n} exceeds the scan limit {MAX_SCAN}; use a smaller q or n")
    normals = [a for a, _ in Aq.hyperplanes]
    offsets = [b for _, b in Aq.hyperplanes]
    blocks = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    args = [(q, n, normals, offsets, centred, lo, hi) for lo, hi in blocks]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_block, *zip(*args)))
    else:
        results = [_scan_block(*a) for a in args]
    counts: dict = {}
    witness: dict = {}
    for block in results:  # block order == odometer order
        for mask, c, pt in block:
            counts[mask] = counts.get(mask, 0) + c
            witness.setdefault(mask, pt)
    return Scan(dict(sorted(counts.items())), witness, total)


def _mask(indices: Iterable[int]) -> int:
    return sum(1 << i for i in indices)


def _indices(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


# --------------------------------------------------------------------------
# counts


def complement_count(Aq: ReducedArrangement, workers: int = 1) -> int:
    """Points of ``F_q^n`` on no reduced hyperplane."""
    return scan(Aq, workers=workers).counts.get(0, 0)


def _flat_closure(Aq: ReducedArrangement, X) -> frozenset:
    if hasattr(X, "is_top"):
        if X.is_top:
            raise ArrangementError("no complement for the artificial top")
        return X.closure
    if isinstance(X, int) and Aq.source is not None:
        L = Aq.source.lattice
        if X == L.top:
            raise ArrangementError("no complement for the artificial top")
        return L.flats[X].closure
    return frozenset(X)


def flat_complement_count(Aq: ReducedArrangement, X, result: Scan | None = None) -> int:
    """Points of ``X_q`` avoiding every reduced hyperplane not containing ``X_q``."""
    result = result or scan(Aq)
    want = _mask(_flat_closure(Aq, X))
    inside = [m for m in result.counts if m & want == want]
    if not inside:
        return 0
    containing = inside[0]
    for m in inside[1:]:
        containing &= m
    return result.counts.get(containing, 0)


def reduced_closures(Aq: ReducedArrangement, result: Scan | None = None) -> set:
    """Closure sets of all nonempty intersections of the reduced hyperplanes."""
    result = result or scan(Aq)
    family = set(result.counts)
    if not family:
        return set()
    ambient = ~0
    for m in family:
        ambient &= m
    family.add(ambient)
    frontier = set(family)
    while frontier:
        new = {a & b for a in frontier for b in family} - family
        family |= new
        frontier = new
    return {_indices(m) for m in family}


def lattice_isomorphic(A: Arrangement, q: int, workers: int = 1) -> bool:
    """True iff ``X -> X_q`` identifies the real and the reduced semilattices."""
    try:
        Aq = q_reduce(A, q)
    except GuardError:
        if not is_prime(q):
            raise
        return False
    real = {A.lattice.flats[i].closure for i in A.lattice.proper()}
    return reduced_closures(Aq, scan(Aq, workers=workers)) == real


def require_isomorphic(A: Arrangement, q: int, workers: int = 1, odd: bool = False) -> None:
    if not is_prime(q):
        raise GuardError(f"q={q} is not prime")
    if odd and q == 2:
        raise GuardError("the lattice cube needs an odd prime q")
    if not lattice_isomorphic(A, q, workers):
        raise GuardError(f"lattice not isomorphic at q={q}")


# --------------------------------------------------------------------------
# cube and stabilizers


def cube_points(n: int, q: int):
    """Iterate ``C(n, q)`` in odometer order (pure Python, for small cases)."""
    if q % 2 == 0:
        raise GuardError("the lattice cube needs an odd q")
    h = (q - 1) // 2
    pt = [-h] * n
    total = q**n
    for _ in range(total):
        yield tuple(pt)
        for i in reversed(range(n)):
            if pt[i] < h:
                pt[i] += 1
                break
            pt[i] = -h


@dataclass(frozen=True)
class CentralStabilizer:
    point: tuple
    members: frozenset
    regions: int


def centralize(A: Arrangement, members: Iterable[int], point: Sequence[int]) -> Arrangement:
    """The translates through ``point`` of the given hyperplanes."""
    hs = [A.hyperplanes[i] for i in sorted(members)]
    return Arrangement.unique(A.n, [Hyperplane(h.normal, h.value(point)) for h in hs])


def stabilizer_at(A: Arrangement, q: int, x: Sequence[int]) -> CentralStabilizer:
    members = frozenset(i for i, h in enumerate(A.hyperplanes) if (h.value(x) - h.offset) % q == 0)
    return CentralStabilizer(tuple(x), members, regions(centralize(A, members, x)))


def chi_bar(A: Arrangement, q: int, workers: int = 1, guard: bool = True) -> int:
    """Sum of the stabilizer region counts over the cube ``C(n, q)``.

    Region counts are computed once per incidence mask, since they only
    depend on which hyperplanes pass through the point.
    """
    if guard:
        require_isomorphic(A, q, workers, odd=True)
    elif q % 2 == 0:
        raise GuardError("the lattice cube needs an odd prime q")
    result = scan(q_reduce(A, q), centred=True, workers=workers)
    total = 0
    for mask, count in result.counts.items():
        stab = stabilizer_at(A, q, result.witness[mask])
        assert stab.members == _indices(mask)
        total += count * stab.regions
    return total


def cube_partition(A: Arrangement, q: int, workers: int = 1) -> dict:
    """Group cube points by stabilizer members: ``{closure: count}``."""
    result = scan(q_reduce(A, q), centred=True, workers=workers)
    return {_indices(m): c for m, c in result.counts.items()}


def prop5_sum(A: Arrangement, q: int, result: Scan | None = None) -> int:
    """``sum over flats X of r(A|X) * |M(A_q / X_q)|``."""
    Aq = q_reduce(A, q)
    result = result or scan(Aq)
    L = A.lattice
    return sum(regions(restrict(A, i)) * flat_complement_count(Aq, L.flats[i], result) for i in L.proper())


# --------------------------------------------------------------------------
# verifiers


def q_summary(A: Arrangement, q: int, workers: int = 1) -> dict:
    chi = char_poly(A)
    Aq = q_reduce(A, q)
    plain = scan(Aq, workers=workers)
    return {
        "q": q,
        "chi_at_q": chi.evaluate({"t": q}),
        "complement_count": plain.counts.get(0, 0),
        "chi_bar": chi_bar(A, q, workers, guard=False),
        "chi_at_minus_q_signed": (-1) ** A.n * chi.evaluate({"t": -q}),
        "prop5_sum": prop5_sum(A, q, plain),
    }


def verify_point_count(A: Arrangement, q: int, workers: int = 1) -> VerificationReport:
    """Complement size over ``F_q`` against the characteristic polynomial at ``q``."""
    start = time.perf_counter()
    require_isomorphic(A, q, workers)
    value = char_poly(A).evaluate({"t": q})
    count = complement_count(q_reduce(A, q), workers)
    return VerificationReport(
        "finite-field-count", value == count,
        {"chi_at_q": value, "complement_count": count},
        details={"q": q}, elapsed=time.perf_counter() - start,
    )


def verify_reciprocity(A: Arrangement, q: int, workers: int = 1) -> VerificationReport:
    """Closed cube count, signed value at ``-q`` and the flat sum must agree."""
    start = time.perf_counter()
    require_isomorphic(A, q, workers, odd=True)
    s = q_summary(A, q, workers)
    three = [s["chi_bar"], s["chi_at_minus_q_signed"], s["prop5_sum"]]
    passed = all_equal(three) and s["chi_at_q"] == s["complement_count"]
    return VerificationReport(
        "reciprocity", passed,
        {"chi_bar": three[0], "chi_at_minus_q_signed": three[1], "prop5_sum": three[2]},
        details=s, elapsed=time.perf_counter() - start,
    )


def interpolate(points: Sequence[tuple[int, int]], var: str = "t") -> Polynomial:
    """Exact Lagrange interpolation; raises if a coefficient is not integral."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d, c in enumerate(basis):
            coeffs[d] += Fraction(yi) * c / denom
    terms = {}
    for d, c in enumerate(coeffs):
        if c.denominator != 1:
            raise ValueError(f"non-integral coefficient {c} of {var}^{d}")
        if c:
            terms[((var, d),) if d else ()] = int(c)
    return Polynomial(terms)


def interpolate_char_poly(A: Arrangement, primes: Iterable[int], workers: int = 1) -> Polynomial:
    """Recover the characteristic polynomial from complement counts alone."""
    pts = []
    for q in primes:
        if len(pts) == A.n + 1:
            break
        if is_prime(q) and lattice_isomorphic(A, q, workers):
            pts.append((q, complement_count(q_reduce(A, q), workers)))
    if len(pts) < A.n + 1:
        raise GuardError(f"need {A.n + 1} valid primes, found {len(pts)}")
    return interpolate(pts)


def verify_translation_lemma(A: Arrangement, trials: int = 10, seed: int = 0, spread: int = 5) -> VerificationReport:
    """Random central translates keep the number of regions."""
    start = time.perf_counter()
    if not is_central(A):
        raise ArrangementError("translation lemma needs a central arrangement")
    rng = random.Random(seed)
    base = regions(A)
    seen = []
    bad = None
    for _ in range(trials):
        c = [rng.randint(-spread, spread) for _ in range(A.n)]
        B = Arrangement(A.n, [Hyperplane(h.normal, h.value(c)) for h in A.hyperplanes])
        shifts = [B.hyperplanes[i].offset - h.offset for i, h in enumerate(A.hyperplanes)]
        rb = regions(B)
        seen.append(rb)
        if rb != base and bad is None:
            bad = {"offsets": shifts, "r(B)": rb}
    return VerificationReport(
        "translation-lemma", bad is None,
        {"r(A)": base, "r(B)": base if bad is None else bad["r(B)"]},
        locus=bad, details={"trials": trials, "seed": seed},
        elapsed=time.perf_counter() - start,
    )
