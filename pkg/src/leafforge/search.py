"""Lexicographic enumeration of lattice vectors with a prescribed square.

The depth-first kernel exists twice: a compiled int64 version
(``leafforge._kernel``) and a pure-Python version with unbounded integers
(``leafforge._search_py``). The compiled one is used when it imported and
when every intermediate value of the given problem provably fits in 62
bits; anything larger is routed to the Python kernel, so results never
depend on machine word size. Set ``LEAFFORGE_PURE_PYTHON=1`` to force the
Python kernel.
"""
from __future__ import annotations

import os
from typing import Iterator, Sequence

from . import _search_py

_compiled = None
if os.environ.get("LEAFFORGE_PURE_PYTHON") != "1":
    try:
        from ._kernel import search_chunk as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_SAFE = 1 << 60


def coset_box(parity: Sequence[int], bound: int) -> tuple[list[int], list[int]]:
    """Smallest and largest values in ``[-bound, bound]`` with the given parities."""
    lo, hi = [], []
    for p in parity:
        l = -bound if (-bound - p) % 2 == 0 else -bound + 1
        h = bound if (bound - p) % 2 == 0 else bound - 1
        lo.append(l)
        hi.append(h)
    return lo, hi


def fits_int64(G, lo, hi, target, A, b, start=None) -> bool:
    mag = max([abs(v) for v in lo] + [abs(v) for v in hi] + [1])
    if start is not None:
        mag = max(mag, max((abs(s) for s in start), default=0))
    gsum = sum(abs(x) for row in G for x in row)
    if 4 * gsum * mag * mag + abs(target) >= _SAFE:
        return False
    for row, rhs in zip(A, b):
        if 2 * sum(abs(x) for x in row) * mag + abs(rhs) >= _SAFE:
            return False
    return True


def _kernel_for(G, lo, hi, target, A, b, start, backend):
    if backend == "python" or _compiled is None:
        return _search_py.search_chunk
    if not fits_int64(G, lo, hi, target, A, b, start):
        if backend == "cython":
            raise OverflowError("problem exceeds the int64 range of the compiled kernel")
        return _search_py.search_chunk
    return _compiled


def iter_solutions(
    G: Sequence[Sequence[int]],
    lo: Sequence[int],
    hi: Sequence[int],
    target: int,
    A: Sequence[Sequence[int]] = (),
    b: Sequence[int] = (),
    *,
    start: Sequence[int] | None = None,
    inclusive: bool = True,
    chunk: int = 2,
    backend: str | None = None,
    stats: dict | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every ``x`` in the box with ``x^T G x == target`` and ``A x == b``.

    Vectors come out in ascending lexicographic order, starting at
    ``start`` when given. The kernel is resumed in chunks of doubling size,
    so asking for one vector costs about one vector's worth of search.
    ``backend`` may be ``"cython"``, ``"python"`` or ``None`` (automatic).
    """
    G = [list(map(int, r)) for r in G]
    A = [list(map(int, r)) for r in A]
    lo, hi, b = list(lo), list(hi), list(b)
    kernel = _kernel_for(G, lo, hi, target, A, b, start, backend)
    while True:
        sols, done, nodes = kernel(G, lo, hi, target, A, b, start, inclusive, chunk)
        if stats is not None:
            stats["nodes"] = stats.get("nodes", 0) + nodes
        yield from sols
        if done or not sols:
            return
        start, inclusive = sols[-1], False
        chunk = min(2 * chunk, 4096)
