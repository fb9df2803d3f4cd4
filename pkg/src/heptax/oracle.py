"""Dense reference solver and random system generators.

The elimination here deliberately shares nothing with the banded code: plain
row-major lists, Gaussian elimination with partial pivoting, O(n^3).  It is
the ground truth the banded solvers are tested against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .bands import BAND_NAMES, CyclicHeptaBands, HeptaBands, corner_slots, to_dense
from .errors import GenerationFailed, SingularMatrix
from .scalar import Mode, coerce

__all__ = ["GenSpec", "dense_solve", "dense_det", "dense_matmul", "generate", "PROFILES"]

PROFILES = ("diagonally-dominant", "uniform", "zero-leading-pivots")

ORACLE_MAX_ORDER = 512


def _pivot_row(a, col, start):
    best, best_abs = None, None
    for r in range(start, len(a)):
        v = a[r][col]
        if v == 0:
            continue
        mag = abs(v)
        if best is None or mag > best_abs:
            best, best_abs = r, mag
    return best


def dense_solve(a: Sequence[Sequence], r: Sequence) -> list:
    """Solve ``a x = r`` by Gaussian elimination with partial pivoting."""
    n = len(a)
    if len(r) != n or any(len(row) != n for row in a):
        raise ValueError("matrix must be square and conformal with the right-hand side")
    aug = [list(row) + [r[i]] for i, row in enumerate(a)]
    for k in range(n):
        p = _pivot_row(aug, k, k)
        if p is None:
            raise SingularMatrix()
        if p != k:
            aug[k], aug[p] = aug[p], aug[k]
        piv = aug[k][k]
        for i in range(k + 1, n):
            if aug[i][k] == 0:
                continue
            factor = aug[i][k] / piv
            row_i, row_k = aug[i], aug[k]
            for j in range(k + 1, n + 1):
                row_i[j] = row_i[j] - factor * row_k[j]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n]
        for j in range(i + 1, n):
            acc = acc - aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def dense_det(a: Sequence[Sequence]):
    """Determinant by elimination with row-swap sign tracking (0 if singular)."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    m = [list(row) for row in a]
    det = 1
    for k in range(n):
        p = _pivot_row(m, k, k)
        if p is None:
            return 0 * m[0][0]
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        piv = m[k][k]
        det = det * piv
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            factor = m[i][k] / piv
            for j in range(k + 1, n):
                m[i][j] = m[i][j] - factor * m[k][j]
    return det


def dense_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[list]:
    n, k, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def dense_matvec(a: Sequence[Sequence], x: Sequence) -> list:
    out = []
    for row in a:
        acc = row[0] * x[0]
        for j in range(1, len(x)):
            acc = acc + row[j] * x[j]
        out.append(acc)
    return out


# -- generators --------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    """Recipe for a reproducible random system.

    ``profile`` is one of :data:`PROFILES`; ``k`` (1..3) is the number of
    vanishing leading pivots for ``"zero-leading-pivots"``.
    """

    n: int
    seed: int = 0
    profile: str = "diagonally-dominant"
    mode: Mode = Mode.RATIONAL
    kind: str = "cyclic"
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}; choose from {PROFILES}")
        if self.kind not in ("cyclic", "hepta"):
            raise ValueError(f"kind must be 'cyclic' or 'hepta', got {self.kind!r}")
        if self.profile == "zero-leading-pivots" and not 1 <= self.k <= 3:
            raise ValueError("zero-leading-pivots needs 1 <= k <= 3")


def _draw(rng, exact):
    if exact:
        return Fraction(rng.randint(-16, 16), rng.randint(1, 16))
    return rng.uniform(-1.0, 1.0)


def _raw_bands(spec, rng, exact):
    n = spec.n
    if spec.kind == "cyclic":
        lengths = {name: n for name in BAND_NAMES}
    else:
        short = {"d": 0, "a": 1, "A": 2, "C": 3, "b": 1, "B": 2, "D": 3}
        lengths = {name: n - short[name] for name in BAND_NAMES}
    bands = {name: [_draw(rng, exact) for _ in range(lengths[name])] for name in BAND_NAMES}
    if spec.kind == "cyclic":
        for name, k in corner_slots(n):
            bands[name][k] = Fraction(0) if exact else 0.0
    return bands


def _row_offdiag_sums(bands, kind, n):
    sums = [0] * n
    for name in BAND_NAMES:
        if name == "d":
            continue
        first = 0 if kind == "cyclic" else {"a": 0, "A": 0, "C": 0, "b": 1, "B": 2, "D": 3}[name]
        for k, v in enumerate(bands[name]):
            sums[first + k] += abs(v)
    return sums


def _dominate(bands, kind, n, rng, exact):
    sums = _row_offdiag_sums(bands, kind, n)
    for i in range(n):
        extra = Fraction(rng.randint(1, 16), rng.randint(1, 16)) if exact else rng.uniform(0.5, 1.5)
        sign = 1 if rng.random() < 0.5 else -1
        bands["d"][i] = sign * (sums[i] + extra)


def _zero_leading_block(bands, kind, k, exact):
    # zero diagonal and strictly lower part in the leading k x k block,
    # so the leading minors of orders 1..k all vanish
    z = Fraction(0) if exact else 0.0
    # storage index of row-1 entries: hepta subdiagonals start at row 2 / 3
    b_at = (lambda row: row - 1) if kind == "cyclic" else (lambda row: row - 2)
    B_at = (lambda row: row - 1) if kind == "cyclic" else (lambda row: row - 3)
    for i in range(k):
        bands["d"][i] = z
    for row in range(2, k + 1):
        bands["b"][b_at(row)] = z
    if k >= 3:
        bands["B"][B_at(3)] = z


def _build(spec, bands, exact):
    cls = CyclicHeptaBands if spec.kind == "cyclic" else HeptaBands
    mode = spec.mode
    return cls(**{name: [coerce(v, mode) for v in vals] for name, vals in bands.items()})


def _acceptable(spec, bands, exact) -> bool:
    n = spec.n
    if spec.kind == "cyclic" and bands["d"][n - 2] * bands["d"][n - 1] - bands["a"][n - 2] * bands["b"][n - 1] == 0:
        return False
    if spec.profile == "diagonally-dominant" or n > ORACLE_MAX_ORDER:
        return True
    cls = CyclicHeptaBands if spec.kind == "cyclic" else HeptaBands
    det = dense_det(to_dense(cls(**bands)))
    if exact:
        return det != 0
    return abs(det) > 1e-8


def generate(spec: GenSpec, max_tries: int = 100):
    """Return ``(bands, rhs)`` for ``spec``; deterministic in ``spec.seed``.

    The matrix is checked nonsingular with :func:`dense_det` (orders up to
    512; larger ``uniform`` systems are not checked).  Cyclic systems also get
    a nonsingular trailing 2x2 block.
    """
    lo = 8 if spec.kind == "cyclic" else 4
    if spec.n < lo:
        raise ValueError(f"{spec.kind} systems need order >= {lo}")
    rng = random.Random(spec.seed)
    exact = spec.mode is not Mode.F64
    for _ in range(max_tries):
        bands = _raw_bands(spec, rng, exact)
        if spec.profile == "diagonally-dominant":
            _dominate(bands, spec.kind, spec.n, rng, exact)
        elif spec.profile == "zero-leading-pivots":
            _dominate(bands, spec.kind, spec.n, rng, exact)
            _zero_leading_block(bands, spec.kind, spec.k, exact)
        if not _acceptable(spec, bands, exact):
            continue
        rhs = [coerce(_draw(rng, exact), spec.mode) for _ in range(spec.n)]
        return _build(spec, bands, exact), rhs
    raise GenerationFailed(f"no acceptable {spec.profile} system after {max_tries} tries")
