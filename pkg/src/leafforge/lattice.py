"""Unimodular symmetric integer forms and their characteristic vectors.

Everything here is exact: Python integers for the lattice arithmetic and
:class:`fractions.Fraction` for the elimination behind :func:`signature`.
Class vectors are plain tuples of ints whose coordinates refer to the
block-assembly basis in declaration order (a hyperbolic block occupies two
consecutive coordinates).
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonUnimodularForm, NotCharacteristic

ClassVector = tuple[int, ...]


class Block(enum.Enum):
    PLUS = "+1"
    MINUS = "-1"
    H = "H"

    @property
    def rank(self) -> int:
        return 2 if self is Block.H else 1

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        if self is Block.PLUS:
            return ((1,),)
        if self is Block.MINUS:
            return ((-1,),)
        return ((0, 1), (1, 0))

    @classmethod
    def parse(cls, token: "Block | str | int") -> "Block":
        if isinstance(token, Block):
            return token
        text = str(token).strip().replace("⟨", "").replace("⟩", "")
        aliases = {"+1": cls.PLUS, "1": cls.PLUS, "<1>": cls.PLUS,
                   "-1": cls.MINUS, "<-1>": cls.MINUS,
                   "H": cls.H, "h": cls.H, "U": cls.H}
        try:
            return aliases[text]
        except KeyError:
            raise ValueError(f"unknown block descriptor {token!r}") from None


def _determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer matrices."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class IntersectionForm:
    """A unimodular symmetric bilinear form over the integers.

    Construct from blocks with :func:`build_form` or from an explicit Gram
    matrix with :meth:`from_gram`. Both paths validate symmetry and
    unimodularity.
    """

    gram: tuple[tuple[int, ...], ...]
    blocks: tuple[Block, ...] | None = None

    def __post_init__(self):
        n = len(self.gram)
        if n == 0:
            raise NonUnimodularForm("empty Gram matrix")
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise NonUnimodularForm("Gram matrix is not square")
            for j in range(i):
                if row[j] != self.gram[j][i]:
                    raise NonUnimodularForm(f"Gram matrix not symmetric at ({i}, {j})")
        det = _determinant(self.gram)
        if det not in (1, -1):
            raise NonUnimodularForm(f"determinant {det} is not +-1")
        if self.blocks is not None and sum(b.rank for b in self.blocks) != n:
            raise NonUnimodularForm("block ranks do not add up to the Gram size")

    @classmethod
    def from_gram(cls, rows: Iterable[Iterable[int]]) -> "IntersectionForm":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def apply(self, v: Sequence[int]) -> ClassVector:
        """Return ``gram @ v`` (the functional ``x -> pair(x, v)`` in coordinates)."""
        _check_len(self, v)
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.gram)

    def inertia(self) -> tuple[int, int]:
        """Numbers of positive and negative eigenvalues, computed exactly."""
        return _inertia(self.gram)

    @property
    def is_definite(self) -> bool:
        pos, neg = self.inertia()
        return pos == 0 or neg == 0

    def __str__(self) -> str:
        if self.blocks is not None:
            return " + ".join(b.value for b in self.blocks)
        return str([list(r) for r in self.gram])


def build_form(blocks: Iterable[Block | str]) -> IntersectionForm:
    """Assemble the block-diagonal form from ``<1>``, ``<-1>`` and ``H`` blocks."""
    parsed = tuple(Block.parse(b) for b in blocks)
    if not parsed:
        raise ValueError("block list must be non-empty")
    n = sum(b.rank for b in parsed)
    gram = [[0] * n for _ in range(n)]
    offset = 0
    for b in parsed:
        for i, row in enumerate(b.gram):
            for j, x in enumerate(row):
                gram[offset + i][offset + j] = x
        offset += b.rank
    return IntersectionForm(tuple(map(tuple, gram)), parsed)


def _check_len(Q: IntersectionForm, *vectors: Sequence[int]) -> None:
    for v in vectors:
        if len(v) != Q.rank:
            raise DimensionMismatch(f"vector of length {len(v)} paired with a rank {Q.rank} form")


def pair(Q: IntersectionForm, v: Sequence[int], w: Sequence[int]) -> int:
    _check_len(Q, v, w)
    return sum(vi * x for vi, x in zip(v, Q.apply(w)))


def square(Q: IntersectionForm, v: Sequence[int]) -> int:
    return pair(Q, v, v)


@functools.lru_cache(maxsize=256)
def _inertia(rows: tuple[tuple[int, ...], ...]) -> tuple[int, int]:
    # Symmetric elimination over Q: 1x1 pivots when a diagonal entry is
    # non-zero, otherwise a 2x2 pivot [[0, a], [a, 0]] (one + and one -).
    m = [[Fraction(x) for x in r] for r in rows]
    pos = neg = 0
    while m:
        n = len(m)
        p = next((i for i in range(n) if m[i][i] != 0), None)
        if p is not None:
            d = m[p][p]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != p]
            m = [[m[i][j] - m[i][p] * m[p][j] / d for j in rest] for i in rest]
            continue
        pq = next(((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] != 0), None)
        if pq is None:
            raise NonUnimodularForm("degenerate form: zero block left after elimination")
        i0, j0 = pq
        a = m[i0][j0]
        pos += 1
        neg += 1
        # inverse of [[0, a], [a, 0]] is [[0, 1/a], [1/a, 0]]
        rest = [i for i in range(n) if i not in pq]
        m = [[m[i][j] - (m[i][i0] * m[j0][j] + m[i][j0] * m[i0][j]) / a for j in rest]
             for i in rest]
    return pos, neg


def signature(Q: IntersectionForm) -> int:
    pos, neg = Q.inertia()
    return pos - neg


def is_characteristic(Q: IntersectionForm, K: Sequence[int]) -> bool:
    """``pair(K, b) == pair(b, b) (mod 2)`` for each basis vector ``b``.

    Checking the basis suffices because both sides are linear mod 2.
    """
    _check_len(Q, K)
    QK = Q.apply(K)
    return all((QK[i] - Q.gram[i][i]) % 2 == 0 for i in range(Q.rank))


@dataclass(frozen=True)
class CharacteristicDescriptor:
    """The coset ``base + 2 * Z^n`` of characteristic vectors."""

    base: ClassVector
    parity: ClassVector

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != len(self.parity):
            raise DimensionMismatch("vector length differs from the form rank")
        return all((x - p) % 2 == 0 for x, p in zip(v, self.parity))


def characteristic_coset(Q: IntersectionForm) -> CharacteristicDescriptor:
    """Solve ``gram @ K == diag(gram) (mod 2)`` over GF(2).

    The system has a unique solution because ``det(gram)`` is odd.
    """
    n = Q.rank
    aug = [[Q.gram[i][j] & 1 for j in range(n)] + [Q.gram[i][i] & 1] for i in range(n)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col]), None)
        if piv is None:
            raise NonUnimodularForm("form is singular mod 2")
        aug[row], aug[piv] = aug[piv], aug[row]
        for r in range(n):
            if r != row and aug[r][col]:
                aug[r] = [a ^ b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    parity = tuple(aug[i][n] for i in range(n))
    desc = CharacteristicDescriptor(parity, parity)
    if not is_characteristic(Q, desc.base):
        raise NonUnimodularForm("mod-2 solve produced a non-characteristic vector")
    return desc


def van_der_blij_check(Q: IntersectionForm, K: Sequence[int]) -> bool:
    """``K.K == signature (mod 8)`` for a characteristic ``K``."""
    if not is_characteristic(Q, K):
        raise NotCharacteristic(f"{tuple(K)} is not characteristic for {Q}")
    return (square(Q, K) - signature(Q)) % 8 == 0
