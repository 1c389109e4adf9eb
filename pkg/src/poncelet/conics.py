"""Homogeneous conics with the ellipse signature (+, +, -).

A conic is u^T C u = 0 with u = (x, y, 1). Only the upper triangle is
stored, so the matrix is symmetric by construction. Points are plain
(x, y) pairs.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotAnEllipse, PointNotOutside

TOL_ON = 1e-9


class PointClass(Enum):
    INSIDE = "inside"
    ON = "on"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class SymmetricConic:
    c11: float
    c12: float
    c13: float
    c22: float
    c23: float
    c33: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.c11, self.c12, self.c13],
                [self.c12, self.c22, self.c23],
                [self.c13, self.c23, self.c33],
            ]
        )

    @staticmethod
    def from_matrix(M) -> "SymmetricConic":
        M = np.asarray(M, dtype=float)
        S = 0.5 * (M + M.T)
        return SymmetricConic(S[0, 0], S[0, 1], S[0, 2], S[1, 1], S[1, 2], S[2, 2])

    @staticmethod
    def from_fragment(d: dict) -> "SymmetricConic":
        return SymmetricConic(*(float(d[k]) for k in ("c11", "c12", "c13", "c22", "c23", "c33")))

    def to_fragment(self) -> dict:
        return {
            "c11": self.c11,
            "c12": self.c12,
            "c13": self.c13,
            "c22": self.c22,
            "c23": self.c23,
            "c33": self.c33,
        }

    def scaled(self, s: float) -> "SymmetricConic":
        return SymmetricConic.from_matrix(s * self.matrix)


def unit_circle() -> SymmetricConic:
    return SymmetricConic(1.0, 0.0, 0.0, 1.0, 0.0, -1.0)


def confocal_ellipse(ecc: float) -> SymmetricConic:
    """E(ecc): ecc^2 x^2 + ecc^2/(1-ecc^2) y^2 = 1, foci at (±1, 0)."""
    if not 0.0 < ecc < 1.0:
        raise NotAnEllipse("degenerate", f"eccentricity {ecc!r} outside (0, 1)")
    e2 = ecc * ecc
    return SymmetricConic(e2, 0.0, 0.0, e2 / (1.0 - e2), 0.0, -1.0)


def validate_ellipse(C: SymmetricConic) -> SymmetricConic:
    """Check the ordered signature (+, +, -): pd upper-left minor, det < 0."""
    if not (C.c11 > 0.0 and C.c11 * C.c22 - C.c12 * C.c12 > 0.0):
        raise NotAnEllipse("minor_not_pd", "upper-left 2x2 minor is not positive definite")
    if np.linalg.det(C.matrix) >= 0.0:
        raise NotAnEllipse("det_nonnegative", "conic determinant is not negative")
    return C


def _homogeneous(z) -> np.ndarray:
    x, y = float(z[0]), float(z[1])
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValueError(f"point has non-finite coordinates: {z!r}")
    return np.array([x, y, 1.0])


def quadratic_form(C: SymmetricConic, z) -> float:
    u = _homogeneous(z)
    return float(u @ C.matrix @ u)


def classify_point(C: SymmetricConic, z) -> PointClass:
    """Sign of u^T C u, with a scale-normalized band for On."""
    u = _homogeneous(z)
    q = float(u @ C.matrix @ u)
    band = TOL_ON * np.linalg.norm(C.matrix) * float(u @ u)
    if abs(q) <= band:
        return PointClass.ON
    return PointClass.INSIDE if q < 0.0 else PointClass.OUTSIDE


def adjugate(C: SymmetricConic) -> np.ndarray:
    """adj(C) with C @ adj(C) = det(C) I; rows are cross products of columns."""
    M = C.matrix
    return np.column_stack(
        [
            np.cross(M[:, 1], M[:, 2]),
            np.cross(M[:, 2], M[:, 0]),
            np.cross(M[:, 0], M[:, 1]),
        ]
    ).T


def tangent_lines_from_point(C: SymmetricConic, z):
    """The two tangent lines to C through the outside point z.

    Works in the dual picture: lines through z form a projective pencil
    s*la + t*lb, and tangency is the quadratic l^T adj(C) l = 0 on that
    pencil. Returned lines have unit (l1, l2) norm, largest of the first
    two components positive, and are ordered by direction angle.
    """
    if classify_point(C, z) is not PointClass.OUTSIDE:
        raise PointNotOutside(f"point {tuple(z)!r} is not outside the conic")
    u = _homogeneous(z)
    # two independent lines through z; u3 = 1 keeps {e1, e2, u} a basis
    la = np.cross(u, [1.0, 0.0, 0.0])
    lb = np.cross(u, [0.0, 1.0, 0.0])
    adj = adjugate(C)
    qa = float(la @ adj @ la)
    qb = float(lb @ adj @ lb)
    qm = float(la @ adj @ lb)
    disc = qm * qm - qa * qb
    if disc <= 0.0:
        raise PointNotOutside(f"no real tangent pair from {tuple(z)!r}")
    qq = -(qm + np.copysign(np.sqrt(disc), qm))
    # projective roots (s:t) of qa s^2 + 2 qm s t + qb t^2, paired to avoid
    # cancellation when qa or qb is small
    lines = []
    for s, t in ((qq, qa), (qb, qq)):
        l = s * la + t * lb
        n = np.hypot(l[0], l[1])
        l = l / n
        if max((l[0], l[1]), key=abs) < 0.0:
            l = -l
        lines.append(l)
    lines.sort(key=lambda l: np.arctan2(l[1], l[0]))
    return lines[0], lines[1]


def tangency_point(C: SymmetricConic, line) -> np.ndarray:
    """Touch point of a tangent line, as the pole adj(C) l, dehomogenized."""
    l = np.asarray(line, dtype=float)
    p = adjugate(C) @ l
    if abs(p[2]) < 1e-13 * np.linalg.norm(p):
        raise PointNotOutside("tangency point at infinity")
    return p[:2] / p[2]
