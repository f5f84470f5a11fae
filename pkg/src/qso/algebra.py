"""The commutative algebra induced by a QSO and its associativity.

Every tensor of heredity coefficients defines a bilinear product on R^m,

    (x o y)_k = sum_{i,j} p[i, j, k] * x_i * y_j,

commutative because p is symmetric in (i, j) and generally nonassociative.
By multilinearity, associativity holds for all vectors iff it holds on the
m^3 basis triples, so the decision procedure here is exact up to floating
point: compare (e_i o e_j) o e_k with e_i o (e_j o e_k) for every triple.

For family 2 a reduced system of seven polynomial conditions in the
parameters is kept verbatim as a cross-check oracle
(:func:`v2_condition_system`). Note it is stricter than the basis-triple
decision at exactly one corner, (alpha, beta, gamma) = (1, 0, 1): the
system splits the constraint alpha*(gamma-beta) == gamma*(1-beta) into two
separate zero conditions, which that (associative) corner violates.
:func:`assoc_solutions_v2` therefore filters by the basis-triple decision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EPS_VAL, QsoTensor
from .errors import DimensionMismatch, InvalidFamily, ParameterOutOfRange
from .orthopreserve import OpFamilySpec, op_family

EPS_ASSOC = 1e-9


def product(V: QsoTensor, x, y) -> np.ndarray:
    """Algebra product (x o y)_k = sum_{i,j} p[i, j, k] x_i y_j.

    Accepts arbitrary vectors of R^m (not only simplex points) and returns
    a plain array; bilinear in both arguments and commutative.
    """
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.shape != (V.m,) or yv.shape != (V.m,):
        raise DimensionMismatch(
            f"operands must be vectors of length {V.m}, got {xv.shape} and {yv.shape}"
        )
    return np.einsum("ijk,i,j->k", V.p, xv, yv)


def associator_residual(V: QsoTensor) -> float:
    """Largest associator entry over all basis triples.

    Computes max over (i, j, k, u) of the coordinate-u gap between
    (e_i o e_j) o e_k and e_i o (e_j o e_k). Zero (up to floating point)
    iff the algebra is associative.
    """
    left = np.einsum("ija,aku->ijku", V.p, V.p)
    right = np.einsum("jkb,ibu->ijku", V.p, V.p)
    return float(np.abs(left - right).max())


def is_associative(V: QsoTensor, eps: float = EPS_ASSOC) -> bool:
    """True iff all basis triples associate within ``eps``."""
    return associator_residual(V) <= eps


def v2_condition_system(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """The seven reduced residuals (left minus right) for family 2.

    The expressions, in order:

        beta * (1 - beta)
        alpha * (1 - gamma) - (alpha - gamma) * (1 - beta)
        alpha * (1 - alpha)
        alpha * (gamma - beta)
        gamma * (1 - gamma)
        gamma * (1 - beta)
        (beta - gamma) * (1 - alpha) - beta * (1 - gamma)

    All seven vanishing is sufficient for associativity of the family-2
    member but not necessary: see the module docstring for the one corner
    where the split expressions 4 and 6 over-reject.
    """
    a, b, g = float(alpha), float(beta), float(gamma)
    for name, v in (("alpha", a), ("beta", b), ("gamma", g)):
        if not -EPS_VAL <= v <= 1.0 + EPS_VAL:
            raise ParameterOutOfRange(f"{name} = {v!r} outside [0, 1]")
    return np.array(
        [
            b * (1 - b),
            a * (1 - g) - (a - g) * (1 - b),
            a * (1 - a),
            a * (g - b),
            g * (1 - g),
            g * (1 - b),
            (b - g) * (1 - a) - b * (1 - g),
        ]
    )


def assoc_solutions_v2(eps: float = EPS_ASSOC) -> set[tuple[float, float, float]]:
    """All corner parameter triples for which family 2 is associative.

    The parameter corners {0, 1}^3 are the only candidates (the basis
    triples force alpha*(1-alpha), beta*(1-beta) and gamma*(1-gamma) to
    vanish); each corner is decided by the basis-triple residual.
    """
    out = set()
    for a in (0.0, 1.0):
        for b in (0.0, 1.0):
            for g in (0.0, 1.0):
                if is_associative(op_family(OpFamilySpec(2, a, b, g)), eps):
                    out.add((a, b, g))
    return out


@dataclass(frozen=True)
class RefutationReport:
    """Grid-scan evidence that a family is nowhere associative."""

    family: int
    grid_step: float
    min_residual: float
    argmin: tuple[float, float, float]
    corner_min_residual: float


def _grid(step: float) -> np.ndarray:
    vals = np.arange(0.0, 1.0 + step / 2.0, step)
    vals[-1] = min(vals[-1], 1.0)
    if vals[-1] < 1.0:
        vals = np.append(vals, 1.0)
    return vals


def refute_associativity(family: int, grid_step: float = 0.05) -> RefutationReport:
    """Scan a parameter grid (corners included) for the smallest residual.

    Only families 1 and 4 are accepted; the remaining families inherit
    their status by conjugation. Ties are broken by lexicographic
    parameter order, so the report is deterministic.
    """
    if family not in (1, 4):
        raise InvalidFamily(f"refutation covers families 1 and 4, got {family}")
    if not 0.0 < grid_step <= 0.1:
        raise ParameterOutOfRange(f"grid_step must be in (0, 0.1], got {grid_step}")

    vals = _grid(grid_step)
    best = np.inf
    argbest = (0.0, 0.0, 0.0)
    for a in vals:
        for b in vals:
            for g in vals:
                r = associator_residual(op_family(OpFamilySpec(family, a, b, g)))
                if r < best:
                    best = r
                    argbest = (float(a), float(b), float(g))
    corner_min = min(
        associator_residual(op_family(OpFamilySpec(family, a, b, g)))
        for a in (0.0, 1.0)
        for b in (0.0, 1.0)
        for g in (0.0, 1.0)
    )
    return RefutationReport(family, float(grid_step), float(best), argbest, float(corner_min))
