import itertools

import pytest

from mobconj.arrangement import Arrangement, char_poly, regions
from mobconj.finite_field import (
    GuardError,
    centralize,
    chi_bar,
    complement_count,
    cube_partition,
    cube_points,
    flat_complement_count,
    interpolate,
    interpolate_char_poly,
    is_prime,
    lattice_isomorphic,
    prop5_sum,
    q_reduce,
    scan,
    stabilizer_at,
    verify_point_count,
    verify_reciprocity,
    verify_translation_lemma,
)
from mobconj.polynomial import var

t = var("t")


def brute_complement(A, q):
    return sum(
        all((sum(a * x for a, x in zip(h.normal, pt)) - h.offset) % q for h in A)
        for pt in itertools.product(range(q), repeat=A.n)
    )


def brute_chi_bar(A, q):
    total = 0
    for pt in cube_points(A.n, q):
        members = [i for i, h in enumerate(A) if (h.value(pt) - h.offset) % q == 0]
        total += regions(centralize(A, members, pt))
    return total


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_q_reduce_examples():
    assert q_reduce(Arrangement(2, [((1, 1), 1)]), 5).hyperplanes == (((1, 1), 1),)
    assert q_reduce(Arrangement(1, [((3,), 6)]), 3).hyperplanes == (((1,), 2),)
    assert q_reduce(Arrangement(2, [((1, -1), 7)]), 7).hyperplanes == (((1, 6), 0),)


def test_q_reduce_errors():
    with pytest.raises(GuardError, match="not prime"):
        q_reduce(Arrangement(1, [((1,), 0)]), 9)
    with pytest.raises(GuardError, match="vanishing"):
        q_reduce(Arrangement(2, [((5, 10), 1)]), 5)


def test_lattice_isomorphic_examples(triangle):
    assert lattice_isomorphic(triangle, 11)
    for q in (2, 3, 5, 7):
        assert lattice_isomorphic(Arrangement(1, [((1,), 0), ((1,), 1)]), q)
    assert not lattice_isomorphic(Arrangement(1, [((1,), 0), ((1,), 3)]), 3)
    # x + y = 1 misses the origin for every q
    assert lattice_isomorphic(triangle, 2)
    # x + y = 3 meets x = 0, y = 0 at distinct points unless q = 3
    A = Arrangement(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 3)])
    assert not lattice_isomorphic(A, 3) and lattice_isomorphic(A, 5)


def test_complement_count_examples(arrangements, triangle):
    assert complement_count(q_reduce(arrangements["empty-2"], 5)) == 25
    assert complement_count(q_reduce(triangle, 7)) == 31
    assert complement_count(q_reduce(arrangements["coordinate-2"], 5)) == 16


@pytest.mark.parametrize("q", [5, 7])
def test_scan_matches_brute_force(arrangements, q):
    for A in arrangements.values():
        assert complement_count(q_reduce(A, q)) == brute_complement(A, q)


def test_flat_complement_count(triangle):
    Aq = q_reduce(triangle, 7)
    L = triangle.lattice
    assert flat_complement_count(Aq, L.flats[0]) == 31
    assert flat_complement_count(Aq, L.flats[L.index[frozenset({0})]]) == 5
    for i in L.proper():
        if L.flats[i].dim == 0:
            assert flat_complement_count(Aq, L.flats[i]) == 1
    with pytest.raises(Exception, match="top"):
        flat_complement_count(Aq, L.flats[L.top])


def test_stabilizer_examples(triangle):
    s = stabilizer_at(triangle, 5, (0, 0))
    assert s.members == {0, 1} and s.regions == 4
    s = stabilizer_at(triangle, 5, (1, 0))
    assert s.members == {1, 2} and s.regions == 4
    s = stabilizer_at(triangle, 5, (2, 2))
    assert s.members == set() and s.regions == 1


def test_chi_bar_examples(arrangements, triangle):
    assert chi_bar(arrangements["empty-2"], 5) == 25
    assert chi_bar(triangle, 5) == 43 == 5**2 + 3 * 5 + 3
    assert chi_bar(arrangements["coordinate-2"], 5) == 36


@pytest.mark.parametrize("name", ["triangle", "concurrent-lines", "parallel-lines", "coordinate-2"])
def test_chi_bar_matches_uncached_oracle(arrangements, name):
    A = arrangements[name]
    assert chi_bar(A, 5) == brute_chi_bar(A, 5)


def test_chi_bar_guard():
    with pytest.raises(GuardError, match="lattice not isomorphic at q=3"):
        chi_bar(Arrangement(1, [((1,), 0), ((1,), 3)]), 3)
    with pytest.raises(GuardError, match="odd"):
        chi_bar(Arrangement(1, [((1,), 0)]), 2)


def test_reciprocity_examples(arrangements, triangle):
    values = {q: verify_reciprocity(triangle, q) for q in (5, 7, 11)}
    assert all(r.passed for r in values.values())
    assert {q: r.sides["chi_bar"] for q, r in values.items()} == {5: 43, 7: 73, 11: 157}
    r = verify_reciprocity(arrangements["empty-2"], 5)
    assert list(r.sides.values()) == [25, 25, 25]
    r = verify_reciprocity(arrangements["coordinate-2"], 7)
    assert list(r.sides.values()) == [64, 64, 64]
    assert r.details["chi_at_q"] == r.details["complement_count"] == 36


def test_open_count_below_closed_count(arrangements):
    for A in arrangements.values():
        if A.n <= 2:
            assert chi_bar(A, 5) >= complement_count(q_reduce(A, 5))


def test_cube_partition(arrangements):
    for A in arrangements.values():
        q = 5
        blocks = cube_partition(A, q)
        assert sum(blocks.values()) == q**A.n
        closures = {f.closure for f in A.lattice.flats if not f.is_top}
        assert set(blocks) <= closures
        Aq = q_reduce(A, q)
        for cl, size in blocks.items():
            assert size == flat_complement_count(Aq, cl)


def test_prop5_sum_paper_example(triangle):
    assert prop5_sum(triangle, 7) == 73


def test_interpolation(arrangements):
    assert interpolate([(0, 1), (1, 2), (2, 5)]) == t**2 + 1
    with pytest.raises(ValueError, match="non-integral"):
        interpolate([(0, 0), (2, 1)])
    for A in arrangements.values():
        assert interpolate_char_poly(A, [5, 7, 11, 13, 17]) == char_poly(A)


def test_point_count_guard():
    with pytest.raises(GuardError):
        verify_point_count(Arrangement(1, [((1,), 0), ((1,), 3)]), 3)
    assert verify_point_count(Arrangement(1, [((1,), 0), ((1,), 3)]), 5).passed


def test_scan_size_guard():
    A = Arrangement(9, [])
    with pytest.raises(GuardError, match="scan limit"):
        scan(q_reduce(A, 11))


def test_workers_do_not_change_results(monkeypatch, triangle):
    import mobconj.finite_field as ff

    monkeypatch.setattr(ff, "_CHUNK", 7)
    one = scan(q_reduce(triangle, 11))
    many = scan(q_reduce(triangle, 11), workers=2)
    assert one == many
    monkeypatch.undo()
    assert scan(q_reduce(triangle, 11)) == one


def test_translation_lemma(arrangements):
    rep = verify_translation_lemma(arrangements["coordinate-2"], trials=5, seed=1)
    assert rep.passed and rep.sides["r(A)"] == 4
    rep = verify_translation_lemma(arrangements["concurrent-lines"], trials=5, seed=2)
    assert rep.passed and rep.sides["r(A)"] == 6
    moved = Arrangement(2, [((1, 0), 1), ((0, 1), 2)])
    assert regions(moved) == regions(arrangements["coordinate-2"]) == 4
    with pytest.raises(ValueError, match="central"):
        verify_translation_lemma(arrangements["triangle"])
