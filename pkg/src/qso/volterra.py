"""Volterra operators: detection, canonical form, and the finite certificate.

A QSO is Volterra when offspring always repeat a parental type:
p[i, j, k] == 0 whenever k is neither i nor j. Every such operator can be
written coordinate-wise as

    V(x)_k = x_k * (1 + sum_i a[k, i] * x_i)

with a skew-symmetric matrix a whose entries lie in [-1, 1]. The map
between the two representations is a[k, i] = 2 * p[k, i, k] - 1.

Being Volterra is equivalent to V(x) being absolutely continuous with
respect to x for every simplex point x, and that equivalence can be
decided on a finite set of probe points: the m vertices plus the
C(m, 2) edge midpoints (:func:`volterra_certificate`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import EPS_SUPP, EPS_VAL, QsoTensor, SimplexPoint, abs_continuous, apply
from .errors import DimensionMismatch, InvalidSkew, NotVolterra


def _forbidden_mask(m: int) -> np.ndarray:
    """Boolean mask of the (i, j, k) triples with k not in {i, j}."""
    i, j, k = np.ogrid[:m, :m, :m]
    return (k != i) & (k != j)


@dataclass(frozen=True, eq=False, repr=False)
class SkewMatrix:
    """Canonical Volterra parameters: skew-symmetric, entries in [-1, 1].

    Construction averages the two skew halves, zeroes the diagonal, and
    clamps to [-1, 1], so stored matrices are exactly skew-symmetric;
    deviations beyond the tolerance raise :class:`InvalidSkew`.
    """

    m: int
    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.shape != (self.m, self.m):
            raise DimensionMismatch(f"expected a {self.m}x{self.m} matrix, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidSkew("matrix contains non-finite entries")
        dev = np.abs(a + a.T).max() / 2.0
        if dev > EPS_VAL:
            raise InvalidSkew(f"skew-symmetry violated by {dev:.3e}")
        if np.abs(a).max() > 1.0 + EPS_VAL:
            raise InvalidSkew(f"entry magnitude {np.abs(a).max():.6g} exceeds 1")
        a = np.clip((a - a.T) / 2.0, -1.0, 1.0)
        a.flags.writeable = False
        object.__setattr__(self, "a", a)

    def __repr__(self) -> str:
        return f"SkewMatrix(m={self.m})"


def is_volterra(V: QsoTensor, eps: float = EPS_VAL) -> bool:
    """True iff every coefficient with k outside {i, j} is at most ``eps``."""
    mask = _forbidden_mask(V.m)
    return bool(V.p[mask].max(initial=0.0) <= eps)


def to_canonical(V: QsoTensor, eps: float = EPS_VAL) -> SkewMatrix:
    """Skew-symmetric parameters of a Volterra operator.

    Near-Volterra tensors (forbidden entries at most ``eps``) are accepted;
    their forbidden entries are treated as zero. Raises
    :class:`NotVolterra` otherwise.
    """
    if not is_volterra(V, eps):
        raise NotVolterra(
            f"forbidden mass {V.p[_forbidden_mask(V.m)].max():.3e} exceeds {eps:g}"
        )
    m = V.m
    a = 2.0 * np.einsum("kik->ki", V.p) - 1.0
    np.fill_diagonal(a, 0.0)
    return SkewMatrix(m, a)


def from_canonical(a: SkewMatrix) -> QsoTensor:
    """Volterra tensor with image coordinates x_k * (1 + sum_i a[k, i] x_i).

    Sets p[k, k, k] = 1 and, for i != k, p[k, i, k] = (1 + a[k, i]) / 2
    together with its symmetric counterpart; every other entry is zero.
    """
    m = a.m
    p = np.zeros((m, m, m))
    half = (1.0 + a.a) / 2.0
    for k in range(m):
        p[k, k, k] = 1.0
        for i in range(m):
            if i != k:
                p[k, i, k] = half[k, i]
                p[i, k, k] = half[k, i]
    return QsoTensor(m, p)


def certificate_points(m: int) -> list[SimplexPoint]:
    """The finite probe set: all vertices, then all edge midpoints."""
    pts = [SimplexPoint.vertex(m, k) for k in range(1, m + 1)]
    for i in range(m):
        for j in range(i + 1, m):
            c = np.zeros(m)
            c[i] = c[j] = 0.5
            pts.append(SimplexPoint(c))
    return pts


def check_abs_continuity_property(
    V: QsoTensor,
    samples: Iterable[SimplexPoint],
    eps_supp: float = EPS_SUPP,
) -> bool:
    """True iff V(x) is absolutely continuous w.r.t. x for every sample."""
    samples = list(samples)
    if not samples:
        raise ValueError("samples must be nonempty")
    return all(abs_continuous(apply(V, x), x, eps_supp) for x in samples)


def volterra_certificate(V: QsoTensor, eps: float = EPS_VAL) -> bool:
    """Decide the Volterra property from finitely many probe points.

    Checks V(x) absolutely continuous w.r.t. x at the vertices (which pin
    the diagonal slices) and at the edge midpoints (which expose any
    remaining forbidden mass, scaled by 1/2, the largest possible factor).
    Supports are taken at ``eps`` so the verdict matches
    :func:`is_volterra`; forbidden entries within a factor of two of
    ``eps`` can straddle the midpoint test.
    """
    return check_abs_continuity_property(V, certificate_points(V.m), eps_supp=eps)
