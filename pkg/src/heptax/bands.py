"""Band storage for heptadiagonal and cyclic heptadiagonal matrices.

Every band is indexed by the row it lives on.  For a matrix of order ``m``
(1-based rows, as in the recurrences)::

    D_i  (i-3)   rows 4..m        a_i  (i+1)   rows 1..m-1
    B_i  (i-2)   rows 3..m        A_i  (i+2)   rows 1..m-2
    b_i  (i-1)   rows 2..m        C_i  (i+3)   rows 1..m-3
    d_i  (i)     rows 1..m

Python sequences are 0-based, so ``h.b[0]`` is ``b_2`` and ``h.D[0]`` is
``D_4``.  A cyclic matrix stores all seven bands with length ``n`` and places
row ``i``'s entries at columns ``i + offset (mod n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import List, Sequence, Tuple

from .errors import BadBandLength, ModeMismatch, OrderTooSmall, UnsupportedCornerEntry
from .scalar import Mode, coerce, is_zero, mode_of, zero

BAND_NAMES = ("d", "a", "A", "C", "b", "B", "D")

# column offset of each band relative to the row
OFFSETS = {"d": 0, "a": 1, "A": 2, "C": 3, "b": -1, "B": -2, "D": -3}

# band length is order minus this amount (heptadiagonal case)
_SHORTFALL = {"d": 0, "a": 1, "A": 2, "C": 3, "b": 1, "B": 2, "D": 3}

# first 1-based row of each subdiagonal band in the heptadiagonal case
_FIRST_ROW = {"d": 1, "a": 1, "A": 1, "C": 1, "b": 2, "B": 3, "D": 4}

MIN_HEPTA_ORDER = 4
MIN_CYCLIC_ORDER = 8


def _shared_mode(bands) -> Mode:
    mode = None
    for name in BAND_NAMES:
        for k, v in enumerate(getattr(bands, name)):
            try:
                m = mode_of(v)
            except ModeMismatch:
                raise ModeMismatch(f"band {name}[{k}] is not a scalar: {v!r}") from None
            if mode is None:
                mode = m
            elif m is not mode:
                raise ModeMismatch(
                    f"band {name}[{k}] is {m.value}, expected {mode.value}"
                )
    return mode


@dataclass(frozen=True)
class HeptaBands:
    """The seven diagonals of an ``m x m`` heptadiagonal matrix."""

    d: Tuple
    a: Tuple
    A: Tuple
    C: Tuple
    b: Tuple
    B: Tuple
    D: Tuple

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, tuple(getattr(self, f.name)))
        validate(self)

    @property
    def m(self) -> int:
        return len(self.d)

    @property
    def order(self) -> int:
        return len(self.d)

    @property
    def mode(self) -> Mode:
        return mode_of(self.d[0])

    @classmethod
    def identity(cls, m: int, mode: Mode = Mode.F64) -> "HeptaBands":
        z, o = zero(mode), coerce(1, mode)
        return cls(
            **{name: [o if name == "d" else z] * (m - _SHORTFALL[name]) for name in BAND_NAMES}
        )

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> "HeptaBands":
        """Read the bands out of a dense matrix, rejecting entries outside them."""
        m = len(matrix)
        for i in range(m):
            for j in range(m):
                if abs(i - j) > 3 and not is_zero(matrix[i][j]):
                    raise BadBandLength(f"entry ({i + 1},{j + 1}) lies outside bandwidth 3")
        out = {}
        for name in BAND_NAMES:
            off = OFFSETS[name]
            first = _FIRST_ROW[name] - 1
            out[name] = [matrix[i][i + off] for i in range(first, first + m - _SHORTFALL[name])]
        return cls(**out)


@dataclass(frozen=True)
class CyclicHeptaBands:
    """The seven wrapped diagonals of an ``n x n`` cyclic heptadiagonal matrix.

    The slots ``D_1, D_2, D_3`` and ``C_{n-2}, C_{n-1}, C_n`` have no place in
    the bordered splitting used by the solver and must hold zero.
    """

    d: Tuple
    a: Tuple
    A: Tuple
    C: Tuple
    b: Tuple
    B: Tuple
    D: Tuple

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, tuple(getattr(self, f.name)))
        validate(self)

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def order(self) -> int:
        return len(self.d)

    @property
    def mode(self) -> Mode:
        return mode_of(self.d[0])

    @classmethod
    def identity(cls, n: int, mode: Mode = Mode.F64) -> "CyclicHeptaBands":
        z, o = zero(mode), coerce(1, mode)
        return cls(**{name: [o if name == "d" else z] * n for name in BAND_NAMES})

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> "CyclicHeptaBands":
        n = len(matrix)
        out = {name: [] for name in BAND_NAMES}
        slots = set()
        for i in range(n):
            for name in BAND_NAMES:
                j = (i + OFFSETS[name]) % n
                slots.add((i, j))
                out[name].append(matrix[i][j])
        for i in range(n):
            for j in range(n):
                if (i, j) not in slots and not is_zero(matrix[i][j]):
                    raise BadBandLength(f"entry ({i + 1},{j + 1}) is off the cyclic band")
        return cls(**out)


def corner_slots(n: int):
    """(band, 0-based index) of the cyclic slots that must stay zero."""
    return [("D", 0), ("D", 1), ("D", 2), ("C", n - 3), ("C", n - 2), ("C", n - 1)]


def validate(bands) -> None:
    """Check band lengths, the order bound and that all entries share a mode.

    Raises :class:`BadBandLength`, :class:`OrderTooSmall`,
    :class:`UnsupportedCornerEntry` or :class:`ModeMismatch`.
    """
    order = len(bands.d)
    if isinstance(bands, CyclicHeptaBands):
        for name in BAND_NAMES:
            got = len(getattr(bands, name))
            if got != order:
                raise BadBandLength(f"band {name} has length {got}, expected {order}")
        if order < MIN_CYCLIC_ORDER:
            raise OrderTooSmall(f"cyclic order {order} < {MIN_CYCLIC_ORDER}")
        _shared_mode(bands)
        for name, k in corner_slots(order):
            if not is_zero(getattr(bands, name)[k]):
                raise UnsupportedCornerEntry(
                    f"{name}_{k + 1} must be zero: it falls outside the bordered "
                    "structure handled by the cyclic solver"
                )
        return
    for name in BAND_NAMES:
        got = len(getattr(bands, name))
        want = order - _SHORTFALL[name]
        if got != want:
            raise BadBandLength(f"band {name} has length {got}, expected {want} for m={order}")
    if order < MIN_HEPTA_ORDER:
        raise OrderTooSmall(f"heptadiagonal order {order} < {MIN_HEPTA_ORDER}")
    _shared_mode(bands)


def placements(bands):
    """Yield (row, col, value) for every stored slot, 0-based."""
    if isinstance(bands, CyclicHeptaBands):
        n = bands.n
        for name in BAND_NAMES:
            off = OFFSETS[name]
            for i, v in enumerate(getattr(bands, name)):
                yield i, (i + off) % n, v
    else:
        for name in BAND_NAMES:
            off = OFFSETS[name]
            first = _FIRST_ROW[name] - 1
            for k, v in enumerate(getattr(bands, name)):
                yield first + k, first + k + off, v


def to_dense(bands) -> List[List]:
    """Full matrix as a list of rows, zeros of the bands' own mode elsewhere."""
    size = bands.order
    z = zero(bands.mode)
    out = [[z] * size for _ in range(size)]
    for i, j, v in placements(bands):
        out[i][j] = v
    return out


def matvec(bands, x: Sequence) -> list:
    """``H @ x`` in O(order) using the band structure."""
    size = bands.order
    if len(x) != size:
        raise ValueError(f"vector length {len(x)} != order {size}")
    out = [None] * size
    for i, j, v in placements(bands):
        term = v * x[j]
        out[i] = term if out[i] is None else out[i] + term
    return out


def with_mode(bands, mode: Mode):
    """Copy of ``bands`` with every entry converted to ``mode``."""
    return type(bands)(
        **{name: [coerce(v, mode) for v in getattr(bands, name)] for name in BAND_NAMES}
    )


def map_bands(bands, fn):
    return type(bands)(**{name: [fn(v) for v in getattr(bands, name)] for name in BAND_NAMES})


@dataclass(frozen=True)
class SparseVector:
    """Length-``size`` vector holding a few structural entries.

    ``entries`` are ``(index, value)`` pairs, 0-based, stored zeros allowed.
    """

    size: int
    entries: Tuple[Tuple[int, object], ...]

    def dense(self, fill) -> list:
        out = [fill] * self.size
        for i, v in self.entries:
            out[i] = v
        return out

    def dot(self, x: Sequence):
        acc = None
        for i, v in self.entries:
            term = v * x[i]
            acc = term if acc is None else acc + term
        return acc


@dataclass(frozen=True)
class CyclicPartition:
    """Bordered form ``[[M1, V], [Ut, M2]]`` of a cyclic system.

    ``M2`` is a nested 2-tuple, ``V`` holds the two columns ``v1, v2`` and
    ``Ut`` the two rows of the lower border, both sparse.
    """

    M1: HeptaBands
    M2: Tuple[Tuple, Tuple]
    V: Tuple[SparseVector, SparseVector]
    Ut: Tuple[SparseVector, SparseVector]
    Rprime: Tuple
    Rdoubleprime: Tuple

    @property
    def n(self) -> int:
        return self.M1.m + 2

    def to_dense(self) -> List[List]:
        """Reassemble the full ``n x n`` matrix from the four blocks."""
        n = self.n
        z = zero(self.M1.mode)
        out = [row + [z, z] for row in to_dense(self.M1)]
        v1 = self.V[0].dense(z)
        v2 = self.V[1].dense(z)
        for i in range(n - 2):
            out[i][n - 2] = v1[i]
            out[i][n - 1] = v2[i]
        for r in range(2):
            out.append(self.Ut[r].dense(z) + list(self.M2[r]))
        return out


def partition(bands: CyclicHeptaBands, rhs: Sequence) -> CyclicPartition:
    """Split a cyclic system into its bordered blocks (data is copied)."""
    validate(bands)
    n = bands.n
    if len(rhs) != n:
        raise BadBandLength(f"right-hand side has length {len(rhs)}, expected {n}")
    d, a, A, C, b, B, D = (getattr(bands, name) for name in BAND_NAMES)
    M1 = HeptaBands(
        d=d[: n - 2],
        a=a[: n - 3],
        A=A[: n - 4],
        C=C[: n - 5],
        b=b[1 : n - 2],
        B=B[2 : n - 2],
        D=D[3 : n - 2],
    )
    m = n - 2
    v1 = SparseVector(m, ((0, B[0]), (n - 5, C[n - 5]), (n - 4, A[n - 4]), (n - 3, a[n - 3])))
    v2 = SparseVector(m, ((0, b[0]), (1, B[1]), (n - 4, C[n - 4]), (n - 3, A[n - 3])))
    u1 = SparseVector(m, ((0, A[n - 2]), (n - 5, D[n - 2]), (n - 4, B[n - 2]), (n - 3, b[n - 2])))
    u2 = SparseVector(m, ((0, a[n - 1]), (1, A[n - 1]), (n - 4, D[n - 1]), (n - 3, B[n - 1])))
    M2 = ((d[n - 2], a[n - 2]), (b[n - 1], d[n - 1]))
    return CyclicPartition(
        M1=M1,
        M2=M2,
        V=(v1, v2),
        Ut=(u1, u2),
        Rprime=tuple(rhs[: n - 2]),
        Rdoubleprime=tuple(rhs[n - 2 :]),
    )
