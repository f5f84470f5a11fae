"""Trajectory iteration x, V(x), V(V(x)), ... with stop detection.

No global convergence theory is attempted; iteration stops on pointwise
convergence, on revisiting a recent point (a cycle), or on exhausting the
step budget.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import IO, Optional

import numpy as np

from .core import QsoTensor, SimplexPoint, apply
from .errors import DimensionMismatch

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
CYCLE_WINDOW = 64

STATUS_CONVERGED = "converged"
STATUS_CYCLE = "cycle"
STATUS_BUDGET = "budget_exhausted"


@dataclass
class Trajectory:
    """An orbit of the iteration together with how it terminated."""

    points: list[SimplexPoint] = field(default_factory=list)
    status: str = STATUS_BUDGET
    cycle_length: Optional[int] = None
    iterations: int = 0

    @property
    def final(self) -> SimplexPoint:
        return self.points[-1]

    @property
    def status_label(self) -> str:
        if self.status == STATUS_CYCLE:
            return f"cycle({self.cycle_length})"
        return self.status


def iterate(
    V: QsoTensor,
    x0: SimplexPoint,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    *,
    window: int = CYCLE_WINDOW,
) -> Trajectory:
    """Iterate the operator from x0 until convergence, a cycle, or the budget.

    Convergence means two consecutive points within ``tol`` in the max
    norm. Cycles are detected against the last ``window`` points; the
    reported length is the smallest revisit distance.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x0.m != V.m:
        raise DimensionMismatch(f"start point has {x0.m} coordinates, operator expects {V.m}")

    points = [x0]
    for t in range(1, max_iter + 1):
        nxt = apply(V, points[-1])
        points.append(nxt)
        if np.abs(nxt.coords - points[-2].coords).max() <= tol:
            return Trajectory(points, STATUS_CONVERGED, None, t)
        for dist in range(2, min(window, t) + 1):
            if np.abs(nxt.coords - points[t - dist].coords).max() <= tol:
                return Trajectory(points, STATUS_CYCLE, dist, t)
    return Trajectory(points, STATUS_BUDGET, None, max_iter)


def fixed_points_on_vertices(V: QsoTensor, tol: float = DEFAULT_TOL) -> frozenset:
    """Labels (1-based) of the vertices fixed by the operator within ``tol``."""
    fixed = set()
    for k in range(1, V.m + 1):
        e = SimplexPoint.vertex(V.m, k)
        if np.abs(apply(V, e).coords - e.coords).max() <= tol:
            fixed.add(k)
    return frozenset(fixed)


def write_trajectory_csv(traj: Trajectory, fh: IO[str]) -> None:
    """Emit ``iter,x1,...,xm,status`` rows; the final row carries the status."""
    m = traj.points[0].m
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["iter"] + [f"x{i}" for i in range(1, m + 1)] + ["status"])
    last = len(traj.points) - 1
    for t, pt in enumerate(traj.points):
        status = traj.status_label if t == last else ""
        writer.writerow([t] + [format(c, ".17g") for c in pt.coords] + [status])
