"""Named test arrangements and matroids used by the acceptance suite and CLI."""

from __future__ import annotations

from .arrangement import Arrangement
from .matroid import Matroid, matroid_graphic, matroid_linear, matroid_uniform


def _arr(n, planes) -> Arrangement:
    return Arrangement(n, [(tuple(a), b) for a, b in planes])


def arrangements() -> dict[str, Arrangement]:
    return {
        "empty-1": _arr(1, []),
        "empty-2": _arr(2, []),
        "empty-3": _arr(3, []),
        "coordinate-2": _arr(2, [((1, 0), 0), ((0, 1), 0)]),
        "coordinate-3": _arr(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)]),
        "concurrent-lines": _arr(2, [((1, 0), 0), ((0, 1), 0), ((1, -1), 0)]),
        "triangle": _arr(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 1)]),
        "parallel-lines": _arr(2, [((1, 0), 0), ((1, 0), 1), ((0, 1), 0)]),
        "rank-deficient-3": _arr(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((1, 1, 0), 1)]),
        "braid-3": _arr(3, [((1, -1, 0), 0), ((1, 0, -1), 0), ((0, 1, -1), 0)]),
        "generic-affine-3": _arr(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((1, 1, 1), 1)]),
    }


CENTRAL = ("coordinate-2", "concurrent-lines", "braid-3", "coordinate-3")


def matroids() -> dict[str, Matroid]:
    # U_{1,2} on {0,1} plus a coloop 2, entered as a raw table
    table = [0, 1, 1, 1, 1, 2, 2, 2]
    return {
        "U(0,2)": matroid_uniform(0, 2),
        "U(1,1)": matroid_uniform(1, 1),
        "U(1,2)": matroid_uniform(1, 2),
        "U(2,3)": matroid_uniform(2, 3),
        "U(2,4)": matroid_uniform(2, 4),
        "U(3,5)": matroid_uniform(3, 5),
        "U(3,6)": matroid_uniform(3, 6),
        "K3": matroid_graphic([(0, 1), (1, 2), (0, 2)]),
        "K4": matroid_graphic([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "multigraph-with-loop": matroid_graphic([(0, 1), (0, 1), (1, 2), (2, 2), (2, 3)]),
        "linear-5": matroid_linear([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [2, 0, 0]]),
        "rank-table": Matroid(3, table),
    }
