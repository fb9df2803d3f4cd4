"""LU factorization and solve for heptadiagonal systems without pivoting.

``H = L U`` where ``L`` is unit lower triangular with subdiagonals ``f``,
``e`` and ``D_i / alpha_{i-3}``, and ``U`` is upper triangular with diagonal
``alpha`` and superdiagonals ``g``, ``z`` and the untouched ``C`` band.

Whenever a pivot ``alpha_i`` comes out exactly zero it is replaced by the
indeterminate ``t`` and the elimination continues in Q(t).  Determinants and
solutions are then evaluated at ``t = 0``.  In float64 mode there is no such
recovery and :class:`~heptax.errors.BreakdownInFloatMode` is raised instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple

from . import scalar
from .bands import HeptaBands, validate
from .errors import SingularMatrix
from .scalar import (
    EXACT,
    Mode,
    ZeroTest,
    common_mode,
    eval_at_zero,
    is_zero,
    mode_of,
    substitute_t,
)

__all__ = [
    "HeptaLUFactors",
    "SolveReport",
    "factorize",
    "determinant",
    "forward_eliminate",
    "back_substitute",
    "solve",
    "solve_multi",
    "lower_dense",
    "upper_dense",
]


@dataclass(frozen=True)
class HeptaLUFactors:
    """Factors of a heptadiagonal matrix.

    Sequences are 0-based: ``alpha[0]`` is ``alpha_1``, ``f[0]`` is ``f_2``,
    ``e[0]`` is ``e_3`` and ``lmult3[0]`` is ``D_4 / alpha_1``.
    ``substituted`` holds the 1-based indices of pivots replaced by ``t``.
    """

    alpha: Tuple
    f: Tuple
    e: Tuple
    lmult3: Tuple
    g: Tuple
    z: Tuple
    C: Tuple
    substituted: FrozenSet[int]
    mode: Mode

    @property
    def m(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class SolveReport:
    x: Tuple
    det: object
    substitutions_used: int
    mode: Mode


def factorize(h: HeptaBands, zt: ZeroTest = EXACT) -> HeptaLUFactors:
    validate(h)
    m = h.m
    mode = h.mode
    # 1-based views so the recurrences read like their textbook form
    d = (None,) + h.d
    a = (None,) + h.a
    A = (None,) + h.A
    C = (None,) + h.C
    b = (None, None) + h.b
    B = (None, None, None) + h.B
    D = (None, None, None, None) + h.D

    alpha = [None] * (m + 1)
    f = [None] * (m + 1)
    e = [None] * (m + 1)
    lm = [None] * (m + 1)
    g = [None] * m
    z = [None] * (m - 1)
    substituted = set()

    def pivot(i, value):
        if is_zero(value, zt):
            substituted.add(i)
            return substitute_t(mode, i)
        return value

    alpha[1] = pivot(1, d[1])
    g[1] = a[1]
    z[1] = A[1]
    f[2] = b[2] / alpha[1]
    e[3] = B[3] / alpha[1]
    alpha[2] = pivot(2, d[2] - f[2] * g[1])
    g[2] = a[2] - f[2] * z[1]
    f[3] = (b[3] - e[3] * g[1]) / alpha[2]
    alpha[3] = pivot(3, d[3] - e[3] * z[1] - f[3] * g[2])

    for i in range(4, m + 1):
        lm[i] = D[i] / alpha[i - 3]
        e[i] = (B[i] - lm[i] * g[i - 3]) / alpha[i - 2]
        f[i] = (b[i] - lm[i] * z[i - 3] - e[i] * g[i - 2]) / alpha[i - 1]
        z[i - 2] = A[i - 2] - f[i - 2] * C[i - 3]
        g[i - 1] = a[i - 1] - f[i - 1] * z[i - 2] - e[i - 1] * C[i - 3]
        alpha[i] = pivot(i, d[i] - lm[i] * C[i - 3] - e[i] * z[i - 2] - f[i] * g[i - 1])

    return HeptaLUFactors(
        alpha=tuple(alpha[1:]),
        f=tuple(f[2:]),
        e=tuple(e[3:]),
        lmult3=tuple(lm[4:]),
        g=tuple(g[1:]),
        z=tuple(z[1:]),
        C=h.C,
        substituted=frozenset(substituted),
        mode=Mode.SYMBOLIC if substituted else mode,
    )


def determinant(fac: HeptaLUFactors):
    """Product of the pivots, evaluated at ``t = 0`` when symbolic."""
    return eval_at_zero(_raw_determinant(fac))


def _raw_determinant(fac):
    det = fac.alpha[0]
    for p in fac.alpha[1:]:
        det = det * p
    return det


def _check_rhs(fac, r):
    if len(r) != fac.m:
        raise ValueError(f"right-hand side has length {len(r)}, expected {fac.m}")
    for v in r:
        common_mode(fac.mode, mode_of(v))


def forward_eliminate(fac: HeptaLUFactors, r: Sequence) -> List:
    """Solve ``L Q = r``."""
    _check_rhs(fac, r)
    m = fac.m
    f, e, lm = fac.f, fac.e, fac.lmult3
    Q = [None] * m
    Q[0] = r[0]
    Q[1] = r[1] - f[0] * Q[0]
    Q[2] = r[2] - e[0] * Q[0] - f[1] * Q[1]
    for i in range(3, m):
        Q[i] = r[i] - lm[i - 3] * Q[i - 3] - e[i - 2] * Q[i - 2] - f[i - 1] * Q[i - 1]
    return Q


def back_substitute(fac: HeptaLUFactors, Q: Sequence, evaluate: bool = True) -> List:
    """Solve ``U x = Q``.

    With ``evaluate`` (the default) symbolic entries are evaluated at
    ``t = 0``; pass ``False`` to keep them as functions of ``t``.
    """
    m = fac.m
    alpha, g, z, C = fac.alpha, fac.g, fac.z, fac.C
    x = [None] * m
    x[m - 1] = Q[m - 1] / alpha[m - 1]
    x[m - 2] = (Q[m - 2] - g[m - 2] * x[m - 1]) / alpha[m - 2]
    x[m - 3] = (Q[m - 3] - g[m - 3] * x[m - 2] - z[m - 3] * x[m - 1]) / alpha[m - 3]
    for i in range(m - 4, -1, -1):
        x[i] = (Q[i] - g[i] * x[i + 1] - z[i] * x[i + 2] - C[i] * x[i + 3]) / alpha[i]
    if evaluate and fac.substituted:
        x = [eval_at_zero(v) for v in x]
    return x


def solve_multi(fac: HeptaLUFactors, rs: Sequence[Sequence], evaluate: bool = True) -> List[List]:
    """Solve against several right-hand sides reusing one factorization."""
    return [back_substitute(fac, forward_eliminate(fac, r), evaluate) for r in rs]


def _is_singular(fac, det) -> bool:
    # in float64 mode every pivot already passed the zero test, and the
    # product itself may underflow, so only exact determinants are tested
    if fac.mode is Mode.F64 or isinstance(det, float):
        return False
    return det == 0


def solve(h: HeptaBands, r: Sequence, zt: ZeroTest = EXACT) -> SolveReport:
    """Factorize, check the determinant, and solve ``H x = r``.

    Raises :class:`SingularMatrix` with the message
    ``"The matrix H_h is singular"`` when the determinant vanishes.
    """
    if len(r) != h.m:
        raise ValueError(f"right-hand side has length {len(r)}, expected {h.m}")
    fac = factorize(h, zt)
    det = determinant(fac)
    if _is_singular(fac, det):
        raise SingularMatrix()
    x = back_substitute(fac, forward_eliminate(fac, r))
    mode = fac.mode
    return SolveReport(x=tuple(x), det=det, substitutions_used=len(fac.substituted), mode=mode)


def lower_dense(fac: HeptaLUFactors) -> List[List]:
    """Dense unit lower factor (entries may be functions of ``t``)."""
    m = fac.m
    one, zero = scalar.one(fac.mode), scalar.zero(fac.mode)
    L = [[one if i == j else zero for j in range(m)] for i in range(m)]
    for k, v in enumerate(fac.f):
        L[k + 1][k] = v
    for k, v in enumerate(fac.e):
        L[k + 2][k] = v
    for k, v in enumerate(fac.lmult3):
        L[k + 3][k] = v
    return L


def upper_dense(fac: HeptaLUFactors) -> List[List]:
    m = fac.m
    zero = scalar.zero(fac.mode)
    U = [[zero] * m for _ in range(m)]
    for k, v in enumerate(fac.alpha):
        U[k][k] = v
    for k, v in enumerate(fac.g):
        U[k][k + 1] = v
    for k, v in enumerate(fac.z):
        U[k][k + 2] = v
    for k, v in enumerate(fac.C):
        U[k][k + 3] = v
    return U
