"""Orthogonality-preserving (OP) operators on the 2-simplex.

An operator V preserves orthogonality when V(x) and V(y) have disjoint
supports whenever x and y do. On S^2 every OP quadratic stochastic
operator belongs to one of six three-parameter families. Their image
coordinates (x, y, z are the input coordinates) are:

    family 1:  x' = z^2 + 2g xz + 2b yz
               y' = y^2 + 2a xy + 2(1-b) yz
               z' = x^2 + 2(1-a) xy + 2(1-g) xz

    family 2:  x' = x^2 + 2a xy + 2g xz
               y' = y^2 + 2(1-a) xy + 2b yz
               z' = z^2 + 2(1-g) xz + 2(1-b) yz

    family 3:  x' = x^2 + 2a xy + 2g xz
               y' = z^2 + 2(1-g) xz + 2b yz
               z' = y^2 + 2(1-a) xy + 2(1-b) yz

    family 4:  x' = y^2 + 2a xy + 2b yz
               y' = z^2 + 2g xz + 2(1-b) yz
               z' = x^2 + 2(1-a) xy + 2(1-g) xz

    family 5:  x' = y^2 + 2a xy + 2b yz
               y' = x^2 + 2(1-a) xy + 2g xz
               z' = z^2 + 2(1-g) xz + 2(1-b) yz

    family 6:  x' = z^2 + 2g xz + 2b yz
               y' = x^2 + 2a xy + 2(1-g) xz
               z' = y^2 + 2(1-a) xy + 2(1-b) yz

with a, b, g (alpha, beta, gamma) in [0, 1]. Each family sends vertices
to vertices by a fixed permutation, and the six permutations are exactly
the six elements of S_3 (``FAMILY_VERTEX_IMAGES``), so the family index
of an OP operator can be read off its vertex images and the parameters
recovered from its values at the three edge midpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EPS_SUPP, EPS_VAL, QsoTensor, SimplexPoint, apply, support
from .errors import (
    DimensionUnsupported,
    InvalidFamily,
    NotOrthogonalityPreserving,
    ParameterOutOfRange,
    VertexImageNotVertex,
)

#: Vertex image permutation per family: entry f gives (image of e_1, e_2, e_3),
#: 1-based. The six tuples exhaust S_3, so the lookup is unambiguous.
FAMILY_VERTEX_IMAGES: dict[int, tuple[int, int, int]] = {
    1: (3, 2, 1),
    2: (1, 2, 3),
    3: (1, 3, 2),
    4: (3, 1, 2),
    5: (2, 1, 3),
    6: (2, 3, 1),
}

_VERTEX_IMAGES_TO_FAMILY = {v: f for f, v in FAMILY_VERTEX_IMAGES.items()}

#: Tensor slots (i, j, k), 1-based, holding alpha, beta and gamma per family.
_PARAM_SLOTS: dict[int, tuple[tuple[int, int, int], ...]] = {
    1: ((1, 2, 2), (2, 3, 1), (1, 3, 1)),
    2: ((1, 2, 1), (2, 3, 2), (1, 3, 1)),
    3: ((1, 2, 1), (2, 3, 2), (1, 3, 1)),
    4: ((1, 2, 1), (2, 3, 1), (1, 3, 2)),
    5: ((1, 2, 1), (2, 3, 1), (1, 3, 2)),
    6: ((1, 2, 2), (2, 3, 1), (1, 3, 1)),
}


@dataclass(frozen=True)
class OpFamilySpec:
    """Names one OP operator: a family index 1..6 and parameters in [0, 1]."""

    family: int
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if self.family not in FAMILY_VERTEX_IMAGES:
            raise InvalidFamily(f"family must be in 1..6, got {self.family}")
        for name in ("alpha", "beta", "gamma"):
            v = float(getattr(self, name))
            if not -EPS_VAL <= v <= 1.0 + EPS_VAL:
                raise ParameterOutOfRange(f"{name} = {v!r} outside [0, 1]")
            object.__setattr__(self, name, min(max(v, 0.0), 1.0))

    @property
    def params(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


def _family_entries(spec: OpFamilySpec) -> dict[tuple[int, int, int], float]:
    a, b, g = spec.params
    return {
        1: {(1, 1, 3): 1.0, (2, 2, 2): 1.0, (3, 3, 1): 1.0,
            (1, 2, 2): a, (1, 2, 3): 1 - a, (2, 3, 1): b, (2, 3, 2): 1 - b,
            (1, 3, 1): g, (1, 3, 3): 1 - g},
        2: {(1, 1, 1): 1.0, (2, 2, 2): 1.0, (3, 3, 3): 1.0,
            (1, 2, 1): a, (1, 2, 2): 1 - a, (2, 3, 2): b, (2, 3, 3): 1 - b,
            (1, 3, 1): g, (1, 3, 3): 1 - g},
        3: {(1, 1, 1): 1.0, (2, 2, 3): 1.0, (3, 3, 2): 1.0,
            (1, 2, 1): a, (1, 2, 3): 1 - a, (2, 3, 2): b, (2, 3, 3): 1 - b,
            (1, 3, 1): g, (1, 3, 2): 1 - g},
        4: {(1, 1, 3): 1.0, (2, 2, 1): 1.0, (3, 3, 2): 1.0,
            (1, 2, 1): a, (1, 2, 3): 1 - a, (2, 3, 1): b, (2, 3, 2): 1 - b,
            (1, 3, 2): g, (1, 3, 3): 1 - g},
        5: {(1, 1, 2): 1.0, (2, 2, 1): 1.0, (3, 3, 3): 1.0,
            (1, 2, 1): a, (1, 2, 2): 1 - a, (2, 3, 1): b, (2, 3, 3): 1 - b,
            (1, 3, 2): g, (1, 3, 3): 1 - g},
        6: {(1, 1, 2): 1.0, (2, 2, 3): 1.0, (3, 3, 1): 1.0,
            (1, 2, 2): a, (1, 2, 3): 1 - a, (2, 3, 1): b, (2, 3, 3): 1 - b,
            (1, 3, 1): g, (1, 3, 2): 1 - g},
    }[spec.family]


def op_family(spec: OpFamilySpec) -> QsoTensor:
    """Build the m = 3 tensor of the named family member."""
    p = np.zeros((3, 3, 3))
    for (i, j, k), v in _family_entries(spec).items():
        p[i - 1, j - 1, k - 1] = v
        p[j - 1, i - 1, k - 1] = v
    return QsoTensor(3, p)


def _edge_point(i: int, j: int, t: float) -> SimplexPoint:
    c = np.zeros(3)
    c[i] = t
    c[j] = 1.0 - t
    return SimplexPoint(c)


def is_orthogonality_preserving(
    V: QsoTensor,
    *,
    grid: int = 101,
    eps_supp: float = EPS_SUPP,
) -> bool:
    """Certificate check of orthogonality preservation on S^2.

    Every orthogonal pair on S^2 consists of a point on an edge and the
    opposite vertex (vertex pairs being the degenerate cases), so it
    suffices to test the three vertex pairs plus, for each vertex, a grid
    of ``grid`` points on the opposite edge. The orthogonality defect of
    a quadratic map is a low-degree polynomial along an edge, so a modest
    grid cannot miss a sign.
    """
    if V.m != 3:
        raise DimensionUnsupported(f"classification is defined for m = 3, got m = {V.m}")
    vertex_supports = [
        support(apply(V, SimplexPoint.vertex(3, k)), eps_supp) for k in (1, 2, 3)
    ]
    for k in range(3):
        for l in range(k + 1, 3):
            if vertex_supports[k] & vertex_supports[l]:
                return False
    for k in range(3):
        i, j = (o for o in range(3) if o != k)
        for t in np.linspace(0.0, 1.0, grid):
            img = support(apply(V, _edge_point(i, j, float(t))), eps_supp)
            if img & vertex_supports[k]:
                return False
    return True


def classify_op(
    V: QsoTensor,
    *,
    eps: float = EPS_VAL,
    vertex_tol: float = 1e-6,
) -> OpFamilySpec:
    """Recover (family, alpha, beta, gamma) from an OP tensor.

    Matches each vertex image to its nearest vertex (anything farther than
    ``vertex_tol`` from every vertex raises :class:`VertexImageNotVertex`),
    looks the permutation up in ``FAMILY_VERTEX_IMAGES``, then reads the
    parameters from the operator's values at the three edge midpoints.
    The candidate tensor rebuilt from the recovered spec must reproduce
    the input entrywise within ``eps``; otherwise the input lies outside
    the six families and :class:`NotOrthogonalityPreserving` is raised.
    """
    if V.m != 3:
        raise DimensionUnsupported(f"classification is defined for m = 3, got m = {V.m}")

    vertex_images = [apply(V, SimplexPoint.vertex(3, k)).coords for k in (1, 2, 3)]
    labels = []
    for k, img in enumerate(vertex_images, start=1):
        nearest = int(np.argmax(img))
        e = np.zeros(3)
        e[nearest] = 1.0
        if np.abs(img - e).max() > vertex_tol:
            raise VertexImageNotVertex(
                f"image of vertex {k} is {np.round(img, 6).tolist()}, "
                f"not within {vertex_tol:g} of any vertex"
            )
        labels.append(nearest + 1)
    images = tuple(labels)
    if len(set(images)) != 3:
        raise NotOrthogonalityPreserving(
            f"vertex images {images} are not mutually orthogonal"
        )
    family = _VERTEX_IMAGES_TO_FAMILY[images]

    # V((e_i + e_j)/2) = (p[i,i,:] + p[j,j,:] + 2 p[i,j,:]) / 4, and the
    # diagonal slices are the known vertex images, so each midpoint value
    # determines the off-diagonal slice p[i,j,:].
    slices = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        mid = apply(V, _edge_point(i, j, 0.5)).coords
        slices[(i + 1, j + 1)] = 2.0 * mid - 0.5 * (vertex_images[i] + vertex_images[j])

    values = []
    for (i, j, k) in _PARAM_SLOTS[family]:
        values.append(float(slices[(i, j)][k - 1]))
    if any(not -eps <= v <= 1.0 + eps for v in values):
        raise NotOrthogonalityPreserving(
            f"recovered parameters {values} fall outside [0, 1]"
        )
    spec = OpFamilySpec(family, *(min(max(v, 0.0), 1.0) for v in values))

    residual = np.abs(op_family(spec).p - V.p).max()
    if residual > eps:
        raise NotOrthogonalityPreserving(
            f"reconstruction residual {residual:.3e} exceeds {eps:g}; "
            f"the tensor is outside the six families"
        )
    return spec
