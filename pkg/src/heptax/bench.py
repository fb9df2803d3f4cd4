"""Benchmark harness: wall time, multiplication counts and residuals.

Rows compare the banded cyclic/heptadiagonal solver with the dense oracle
(the oracle only for orders up to :data:`ORACLE_MAX_ORDER`).
"""

from __future__ import annotations

import csv
import sys
import time
from dataclasses import astuple, dataclass
from typing import Iterable, List, Sequence

from .bands import CyclicHeptaBands, map_bands, matvec, placements, to_dense, with_mode
from .counting import OpCounter
from .cyclic import solve_cyclic
from .hepta_lu import solve
from .oracle import ORACLE_MAX_ORDER, GenSpec, dense_solve, generate
from .scalar import Mode

CSV_HEADER = ("solver", "n", "mode", "reps", "seconds", "mul_ops", "residual_inf")


@dataclass(frozen=True)
class BenchRow:
    solver: str
    n: int
    mode: str
    reps: int
    seconds: float
    mul_ops: int
    residual_inf: float


def banded_solve(bands, rhs):
    if isinstance(bands, CyclicHeptaBands):
        return solve_cyclic(bands, rhs).x
    return solve(bands, rhs).x


def oracle_solve(bands, rhs):
    return dense_solve(to_dense(bands), rhs)


def count_mul_ops(bands, rhs, solver=banded_solve) -> int:
    """Multiplications plus divisions performed by ``solver`` on this system."""
    counter = OpCounter()
    solver(map_bands(bands, counter.wrap), counter.wrap_all(rhs))
    return counter.mul_ops


def residual_inf(bands, rhs, x) -> float:
    """``max |H x - r|`` evaluated in float64."""
    fb = with_mode(bands, Mode.F64)
    hx = matvec(fb, [float(v) for v in x])
    return max(abs(u - float(v)) for u, v in zip(hx, rhs))


def relative_residual(bands, rhs, x) -> float:
    """``|H x - r| / (|H| |x| + |r|)`` in the infinity norm, float64."""
    fb = with_mode(bands, Mode.F64)
    row_sums = [0.0] * fb.order
    for i, _j, v in placements(fb):
        row_sums[i] += abs(v)
    norm_h = max(row_sums)
    norm_x = max(abs(float(v)) for v in x)
    norm_r = max(abs(float(v)) for v in rhs)
    denom = norm_h * norm_x + norm_r
    res = residual_inf(bands, rhs, x)
    return res / denom if denom else res


def _time(fn, reps):
    best = float("inf")
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run_bench(
    sizes: Sequence[int],
    reps: int = 3,
    profile: str = "diagonally-dominant",
    mode: str = "f64",
    kind: str = "cyclic",
    seed: int = 0,
    oracle_max: int = ORACLE_MAX_ORDER,
) -> List[BenchRow]:
    """Benchmark each order in ``sizes`` (sorted ascending).

    ``seconds`` is the best of ``reps`` runs; ``mul_ops`` comes from one
    separate instrumented run.
    """
    rows = []
    for n in sorted(sizes):
        bands, rhs = generate(GenSpec(n=n, seed=seed + n, profile=profile, mode=mode, kind=kind))
        solvers = [("banded", banded_solve)]
        if n <= oracle_max:
            solvers.append(("dense", oracle_solve))
        for name, fn in solvers:
            secs, x = _time(lambda: fn(bands, rhs), reps)
            rows.append(
                BenchRow(
                    solver=name,
                    n=n,
                    mode=str(Mode(mode).value),
                    reps=reps,
                    seconds=secs,
                    mul_ops=count_mul_ops(bands, rhs, fn),
                    residual_inf=residual_inf(bands, rhs, x),
                )
            )
    return rows


def write_csv(rows: Iterable[BenchRow], stream=None) -> None:
    stream = stream or sys.stdout
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(astuple(row))
