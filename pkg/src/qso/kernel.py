"""Measure-kernel form of a QSO on a finite space of atoms.

On a finite measurable space (atoms 1..n with the full power set) a QSO
acts on probability measures through a kernel q[x, y, :] of probability
vectors, symmetric in (x, y):

    (V mu)_k = sum_{x,y} q[x, y, k] * mu_x * mu_y.

The kernel is Volterra exactly when q[x, y, A] vanishes for every subset A
avoiding both x and y, which on atoms reduces to q[x, y, k] == 0 for
k outside {x, y}. :func:`kernel_volterra_oracle` keeps the subset form as
an exhaustive cross-check (O(4^n * n), hence the small-n precondition) and
additionally spot-checks the defining property V(mu) absolutely continuous
w.r.t. mu on randomly supported measures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EPS_VAL, QsoTensor, _clean_prob_vector
from .errors import (
    DimensionMismatch,
    NegativeCoefficient,
    NotStochastic,
    NotSymmetric,
    TooLarge,
)

_ORACLE_MAX_ATOMS = 12


class DiscreteMeasure:
    """A probability measure on n atoms, stored as a weight vector.

    Construction clamps noise-level negatives and renormalizes, exactly
    like :class:`~qso.core.SimplexPoint`.
    """

    __slots__ = ("weights",)

    weights: np.ndarray

    def __init__(self, weights, *, eps: float = EPS_VAL):
        object.__setattr__(self, "weights", _clean_prob_vector(weights, eps, "measure"))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("DiscreteMeasure is immutable")

    @property
    def n(self) -> int:
        return self.weights.size

    @classmethod
    def point_mass(cls, n: int, atom: int) -> "DiscreteMeasure":
        """The delta measure at ``atom`` (1-based)."""
        if not 1 <= atom <= n:
            raise DimensionMismatch(f"atom {atom} outside 1..{n}")
        w = np.zeros(n)
        w[atom - 1] = 1.0
        return cls(w)

    def __repr__(self) -> str:
        inside = ", ".join(format(w, ".6g") for w in self.weights)
        return f"DiscreteMeasure([{inside}])"


@dataclass(frozen=True, eq=False, repr=False)
class FiniteKernel:
    """Kernel q[x, y, :] of probability vectors, symmetric in (x, y).

    Construction symmetrizes in the first two indices (deviations beyond
    the tolerance raise), clamps noise-level negatives, and requires each
    q[x, y, :] to sum to one within tolerance.
    """

    n: int
    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.shape != (self.n, self.n, self.n):
            raise DimensionMismatch(f"expected a {self.n}^3 array, got {q.shape}")
        if self.n < 1:
            raise DimensionMismatch("a kernel needs at least one atom")
        if not np.all(np.isfinite(q)):
            raise NotStochastic("kernel contains non-finite entries")
        asym = np.abs(q - q.transpose(1, 0, 2)).max()
        if asym > EPS_VAL:
            raise NotSymmetric(f"kernel asymmetry {asym:.3e} exceeds {EPS_VAL:g}")
        q = (q + q.transpose(1, 0, 2)) / 2.0
        if q.min() < -EPS_VAL:
            raise NegativeCoefficient(f"kernel entry below zero: {q.min():.3e}")
        q[q < 0.0] = 0.0
        sums = q.sum(axis=2)
        worst = np.abs(sums - 1.0).max()
        if worst > EPS_VAL:
            raise NotStochastic(f"a kernel row sums off one by {worst:.3e}")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    def __repr__(self) -> str:
        return f"FiniteKernel(n={self.n})"

    @classmethod
    def from_tensor(cls, V: QsoTensor) -> "FiniteKernel":
        """View an m-species operator as a kernel on m atoms."""
        return cls(V.m, V.p)

    def to_tensor(self) -> QsoTensor:
        if self.n < 2:
            raise DimensionMismatch("a QSO tensor needs at least two species")
        return QsoTensor(self.n, self.q)


def kernel_apply(K: FiniteKernel, mu: DiscreteMeasure) -> DiscreteMeasure:
    """Image measure: (V mu)_k = sum_{x,y} q[x, y, k] mu_x mu_y."""
    if mu.n != K.n:
        raise DimensionMismatch(f"measure on {mu.n} atoms, kernel on {K.n}")
    return DiscreteMeasure(np.einsum("xyk,x,y->k", K.q, mu.weights, mu.weights))


def kernel_is_volterra(K: FiniteKernel, eps: float = EPS_VAL) -> bool:
    """True iff q[x, y, k] <= eps whenever k is neither x nor y."""
    x, y, k = np.ogrid[: K.n, : K.n, : K.n]
    mask = (k != x) & (k != y)
    return bool(K.q[mask].max(initial=0.0) <= eps)


def volterra_violation_witness(
    K: FiniteKernel, eps: float = EPS_VAL
) -> tuple[tuple[int, ...], int, int] | None:
    """First subset violation found, as 1-based (A, x, y), or None.

    Scans every subset A of the atoms and every pair x, y outside A; a
    violation means the kernel puts more than |A| * eps mass on A. The
    per-subset threshold scales with |A| so the verdict coincides exactly
    with the entrywise test of :func:`kernel_is_volterra`.
    """
    n = K.n
    if n > _ORACLE_MAX_ATOMS:
        raise TooLarge(f"subset enumeration supports n <= {_ORACLE_MAX_ATOMS}, got {n}")
    atoms = np.arange(n)
    for mask in range(1, 1 << n):
        inside = atoms[[bool(mask >> k & 1) for k in range(n)]]
        outside = atoms[[not bool(mask >> k & 1) for k in range(n)]]
        threshold = len(inside) * eps
        mass = K.q[:, :, inside].sum(axis=2)
        for x in outside:
            for y in outside:
                if mass[x, y] > threshold:
                    return (tuple(int(a) + 1 for a in inside), int(x) + 1, int(y) + 1)
    return None


def kernel_volterra_oracle(
    K: FiniteKernel,
    eps: float = EPS_VAL,
    *,
    n_measures: int = 100,
    rng: np.random.Generator | None = None,
) -> bool:
    """Exhaustive subset decision of the Volterra property (n <= 12 only).

    When the subset scan passes, additionally verifies absolute continuity
    of V(mu) w.r.t. mu on ``n_measures`` random measures with randomly
    zeroed supports (seeded deterministically unless ``rng`` is given).
    """
    if volterra_violation_witness(K, eps) is not None:
        return False
    if rng is None:
        rng = np.random.default_rng(0)
    n = K.n
    # Forbidden entries up to eps each can leak at most n * eps of mass
    # onto a null set, so the spot check uses that bound to stay coherent
    # with the entrywise predicate.
    leak_tol = n * eps
    for _ in range(n_measures):
        w = rng.exponential(size=n)
        if n > 1:
            kill = rng.random(n) < 0.5
            if kill.all():
                kill[rng.integers(n)] = False
            w[kill] = 0.0
        mu = DiscreteMeasure(w / w.sum())
        out = kernel_apply(K, mu)
        null_mass = out.weights[mu.weights == 0.0].sum()
        if null_mass > leak_tol:
            return False
    return True
