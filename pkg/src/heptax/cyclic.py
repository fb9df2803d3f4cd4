"""Cyclic heptadiagonal solver built on the banded LU.

The cyclic matrix is split into the bordered form ``[[M1, V], [Ut, M2]]``
with a heptadiagonal ``M1`` of order ``n - 2`` and a 2x2 corner ``M2``.
Eliminating the last two unknowns leaves ``M x' = R_hat`` with
``M = M1 - V M2^{-1} Ut``.  ``M`` is never formed; instead the Woodbury
identity gives::

    x' = y + Q S^{-1} Ut y,     Q = M1^{-1} V,   y = M1^{-1} R_hat
    S  = M2 - Ut Q                                 (2x2 capacitance)
    x'' = M2^{-1} (R'' - Ut x')

so the work is one banded factorization, three banded solves and a few 2x2
operations, all O(n).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Tuple

from .bands import CyclicHeptaBands, CyclicPartition, partition
from .errors import SingularCapacitance, SingularCornerBlock, SingularMatrix
from .hepta_lu import (
    HeptaLUFactors,
    SolveReport,
    _raw_determinant,
    factorize,
    solve_multi,
)
from .scalar import EXACT, Mode, ZeroTest, eval_at_zero, is_zero, zero

__all__ = [
    "SmwWorkspace",
    "reduce_rhs",
    "solve_three",
    "capacitance",
    "assemble",
    "smw_solve",
    "solve_cyclic",
    "det_cyclic",
]


@dataclass(frozen=True)
class SmwWorkspace:
    """Every intermediate of one cyclic solve.

    ``y``, ``q1``, ``q2`` and ``S`` are kept exactly as computed, so after a
    zero-pivot substitution they are functions of ``t``; ``xprime``,
    ``xdoubleprime`` and ``det`` are final values.
    """

    part: CyclicPartition
    rhat: Tuple
    y: Tuple
    q1: Tuple
    q2: Tuple
    S: Tuple[Tuple, Tuple]
    xprime: Tuple
    xdoubleprime: Tuple
    det: object
    factors: HeptaLUFactors


def _det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def _solve2(M, rhs, det):
    # adjugate formula; caller has checked det
    r0, r1 = rhs
    return (
        (M[1][1] * r0 - M[0][1] * r1) / det,
        (M[0][0] * r1 - M[1][0] * r0) / det,
    )


def _corner_det(part, zt):
    det = _det2(part.M2)
    if is_zero(det, zt):
        raise SingularCornerBlock(
            "the trailing 2x2 block [[d_{n-1}, a_{n-1}], [b_n, d_n]] is singular"
        )
    return det


def reduce_rhs(part: CyclicPartition, zt: ZeroTest = EXACT) -> list:
    """``R' - V M2^{-1} R''``."""
    w = _solve2(part.M2, part.Rdoubleprime, _corner_det(part, zt))
    rhat = list(part.Rprime)
    for col, wk in zip(part.V, w):
        for i, v in col.entries:
            rhat[i] = rhat[i] - v * wk
    return rhat


def solve_three(
    part: CyclicPartition,
    rhat: Sequence,
    zt: ZeroTest = EXACT,
    parallel: bool = False,
    factors: HeptaLUFactors = None,
):
    """Solve ``M1 y = rhat``, ``M1 q1 = v1``, ``M1 q2 = v2``.

    The three solves share one factorization and read it only, so with
    ``parallel=True`` they run on a thread pool.  Results are returned
    unevaluated (functions of ``t`` if a pivot was substituted).
    """
    fac = factors if factors is not None else factorize(part.M1, zt)
    fill = zero(part.M1.mode)
    rhs = [list(rhat), part.V[0].dense(fill), part.V[1].dense(fill)]
    if parallel:
        with ThreadPoolExecutor(max_workers=3) as pool:
            y, q1, q2 = pool.map(lambda r: solve_multi(fac, [r], evaluate=False)[0], rhs)
    else:
        y, q1, q2 = solve_multi(fac, rhs, evaluate=False)
    return y, q1, q2


def capacitance(part: CyclicPartition, q1: Sequence, q2: Sequence):
    """``S = M2 - Ut (q1, q2)``."""
    M2, Ut = part.M2, part.Ut
    return tuple(
        tuple(M2[r][c] - Ut[r].dot(q) for c, q in enumerate((q1, q2))) for r in range(2)
    )


def _assemble(part, y, q1, q2, S, detS, zt):
    uy = (part.Ut[0].dot(y), part.Ut[1].dot(y))
    s0, s1 = _solve2(S, uy, detS)
    xprime = [yi + a * s0 + b * s1 for yi, a, b in zip(y, q1, q2)]
    rest = (
        part.Rdoubleprime[0] - part.Ut[0].dot(xprime),
        part.Rdoubleprime[1] - part.Ut[1].dot(xprime),
    )
    xdoubleprime = list(_solve2(part.M2, rest, _corner_det(part, zt)))
    return xprime, xdoubleprime


def assemble(part: CyclicPartition, y, q1, q2, zt: ZeroTest = EXACT, evaluate: bool = True):
    """Combine the three banded solutions into ``(x', x'')``.

    Raises :class:`SingularCapacitance` if ``S = M2 - Ut (q1, q2)`` is
    singular.
    """
    S = capacitance(part, q1, q2)
    detS = _det2(S)
    if is_zero(detS, zt):
        raise SingularCapacitance()
    xprime, xdoubleprime = _assemble(part, y, q1, q2, S, detS, zt)
    if evaluate:
        xprime = [eval_at_zero(v) for v in xprime]
        xdoubleprime = [eval_at_zero(v) for v in xdoubleprime]
    return xprime, xdoubleprime


def smw_solve(
    h: CyclicHeptaBands, r: Sequence, zt: ZeroTest = EXACT, parallel: bool = False
) -> SmwWorkspace:
    """Run the whole bordered solve and keep every intermediate."""
    part = partition(h, r)
    rhat = reduce_rhs(part, zt)
    fac = factorize(part.M1, zt)
    y, q1, q2 = solve_three(part, rhat, zt, parallel=parallel, factors=fac)
    S = capacitance(part, q1, q2)
    detS = _det2(S)
    if is_zero(detS, zt):
        raise SingularCapacitance()
    det = eval_at_zero(_raw_determinant(fac) * detS)
    if fac.mode is not Mode.F64 and det == 0:
        raise SingularMatrix()
    xprime, xdoubleprime = _assemble(part, y, q1, q2, S, detS, zt)
    return SmwWorkspace(
        part=part,
        rhat=tuple(rhat),
        y=tuple(y),
        q1=tuple(q1),
        q2=tuple(q2),
        S=S,
        xprime=tuple(eval_at_zero(v) for v in xprime),
        xdoubleprime=tuple(eval_at_zero(v) for v in xdoubleprime),
        det=det,
        factors=fac,
    )


def solve_cyclic(
    h: CyclicHeptaBands, r: Sequence, zt: ZeroTest = EXACT, parallel: bool = False
) -> SolveReport:
    """Solve the cyclic system ``H x = r``.

    Raises :class:`SingularMatrix` (message ``"The matrix H_h is singular"``)
    when ``det H = 0``, :class:`SingularCornerBlock` when the 2x2 corner is
    singular, and :class:`~heptax.errors.BreakdownInFloatMode` on a zero pivot
    in float64 mode.
    """
    ws = smw_solve(h, r, zt, parallel)
    return SolveReport(
        x=ws.xprime + ws.xdoubleprime,
        det=ws.det,
        substitutions_used=len(ws.factors.substituted),
        mode=ws.factors.mode,
    )


def det_cyclic(h: CyclicHeptaBands, zt: ZeroTest = EXACT):
    """``det(M1) * det(M2 - Ut M1^{-1} V)`` evaluated at ``t = 0``."""
    fill = zero(h.mode)
    part = partition(h, [fill] * h.n)
    fac = factorize(part.M1, zt)
    q1, q2 = solve_multi(fac, [part.V[0].dense(fill), part.V[1].dense(fill)], evaluate=False)
    return eval_at_zero(_raw_determinant(fac) * _det2(capacitance(part, q1, q2)))
