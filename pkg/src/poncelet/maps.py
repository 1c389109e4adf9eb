"""Poncelet maps on a pencil: stepping, rotation numbers, compositions.

The positive step moves counterclockwise in the standardized chart (inner
conic on the left of the chord). Rotation numbers are plain floats in
[0, 1/2]; 0 is the outer conic, 1/2 the limiting point.
"""

import math
from dataclasses import dataclass

import numpy as np

from .conics import quadratic_form, tangent_lines_from_point
from .elliptic import Modulus, ellint_F, ellint_K, jacobi
from .errors import InvalidParameter, InvalidRotation, OffCircle, OffOuterConic
from .pencil import (
    Pencil,
    PencilParam,
    _param_kind,
    apply_homography,
    as_param,
    member,
)

TOL_CLOSE = 1e-7
_TOL_ON_CURVE = 1e-9


@dataclass(frozen=True)
class PolygonOrbit:
    points: tuple
    steps: int
    winding: int
    closure_residual: float
    rho: float

    @property
    def closed(self) -> bool:
        return self.closure_residual < TOL_CLOSE

    def to_json_dict(self) -> dict:
        return {
            "points": [[float(x), float(y)] for x, y in self.points],
            "steps": self.steps,
            "winding": self.winding,
            "closure_residual": self.closure_residual,
            "rho": self.rho,
        }


def to_chart(P: Pencil, z) -> np.ndarray:
    """Original plane -> standardized chart where C1 is the unit circle."""
    return apply_homography(P.Minv, z)


def from_chart(P: Pencil, w) -> np.ndarray:
    return apply_homography(P.M, w)


def _require_on_outer(P: Pencil, z):
    u2 = 1.0 + float(z[0]) ** 2 + float(z[1]) ** 2
    if abs(quadratic_form(P.C1, z)) > _TOL_ON_CURVE * np.linalg.norm(P.C1.matrix) * u2:
        raise OffOuterConic(f"point {tuple(z)!r} is not on the outer conic")


def standard_map(e, f: float, p) -> np.ndarray:
    """The explicit Poncelet map of the unit circle against S_e^f.

    Rational in (X, Y, sqrt(1 - e^2 Y^2)) with the non-negative branch of
    the square root. f = 0 is the antipodal map, f = e the identity.
    """
    e = e.e if isinstance(e, Modulus) else float(e)
    f = float(f)
    if not (0.0 <= f <= e < 1.0):
        raise InvalidParameter(f"need 0 <= f <= e < 1, got f={f!r}, e={e!r}")
    X, Y = float(p[0]), float(p[1])
    if abs(X * X + Y * Y - 1.0) > 1e-9:
        raise OffCircle(f"point {tuple(p)!r} is not on the unit circle")
    f2 = f * f
    e2 = e * e
    a1 = 2.0 * f * math.sqrt((1.0 - f2) * (e2 - f2))
    a2 = e2 - f2 * f2
    a3 = e2 + f2 * f2 - 2.0 * f2
    a4 = e2 * (1.0 - 2.0 * f2) + f2 * f2
    root = math.sqrt(max(1.0 - e2 * Y * Y, 0.0))
    den = a2 * a2 - a1 * a1 * e2 * Y * Y
    return np.array(
        [
            -(a1 * a4 * Y * root + a2 * a3 * X) / den,
            (a1 * a2 * X * root - a3 * a4 * Y) / den,
        ]
    )


def _second_intersection(C1, z, line) -> np.ndarray:
    """Far intersection of a chord through z (on C1) with C1."""
    M = C1.matrix
    d = np.array([-line[1], line[0], 0.0])
    u = np.array([float(z[0]), float(z[1]), 1.0])
    a = float(d @ M @ d)
    b = float(u @ M @ d)
    c = float(u @ M @ u)
    t = (-b - math.copysign(math.sqrt(b * b - a * c), b)) / a
    return (u + t * d)[:2]


def poncelet_step(P: Pencil, nu, z, inverse: bool = False) -> np.ndarray:
    """One positive-orientation Poncelet step of z on C1 against C_nu."""
    _require_on_outer(P, z)
    nu = as_param(nu).canonical()
    kind = _param_kind(P.lam, nu)
    if kind == "outer":
        raise InvalidParameter("the outer conic defines no tangent dynamics")
    w = to_chart(P, z)
    if kind == "limit":
        # chords through the limiting point: the conjugated half turn
        return from_chart(P, -w)
    C = member(P, nu)
    best, best_cross = None, 0.0
    for line in tangent_lines_from_point(C, z):
        z2 = _second_intersection(P.C1, z, line)
        w2 = to_chart(P, z2)
        cross = w[0] * w2[1] - w[1] * w2[0]
        if inverse:
            cross = -cross
        if cross > best_cross:
            best, best_cross = z2, cross
    if best is None:
        raise OffOuterConic(f"no oriented tangent chord found from {tuple(z)!r}")
    return best


def covering(P: Pencil, theta: float) -> np.ndarray:
    """Standard covering of C1: theta -> M_hat(cn(4K theta), sn(4K theta)).

    Period 1; every P_nu becomes the shift theta -> theta + rho(nu).
    """
    jv = jacobi(4.0 * ellint_K(P.e) * float(theta), P.e)
    return from_chart(P, (jv.cn, jv.sn))


def rho_from_spectrum(lam, nu) -> float:
    """Rotation number from eigenvalues alone; tolerates l1 = l2 (circle
    pencils, modulus 0) where F/K degenerate to arcsin and pi/2."""
    l1, l2, l3 = lam
    nu = as_param(nu).canonical()
    if nu.nu2 == 0.0:
        return 0.0
    s2 = (l1 - l3) * nu.nu2 / (l1 * nu.nu2 + nu.nu1)
    omega = math.asin(math.sqrt(min(max(s2, 0.0), 1.0)))
    e = Modulus(math.sqrt(max((l1 - l2) / (l1 - l3), 0.0)))
    return ellint_F(omega, e) / (2.0 * ellint_K(e))


def rho_of_nu(P: Pencil, nu) -> float:
    """Closed-form rotation number of P_nu, in [0, 1/2]."""
    nu = as_param(nu).canonical()
    kind = _param_kind(P.lam, nu)
    if kind == "outer":
        return 0.0
    if kind == "limit":
        return 0.5
    return rho_from_spectrum(P.lam, nu)


def invert_rho(P: Pencil, ell: float) -> PencilParam:
    """The parameter ray with rotation number ell in (0, 1/2).

    nu(ell) = (l1 cn^2(2K ell) - l3, sn^2(2K ell)) traces the line
    nu1 + l1 nu2 = l1 - l3. Near ell = 1/2 the first component approaches
    the limiting ray and its relative accuracy degrades with cn^2 -> 0.
    """
    ell = float(ell)
    if not 0.0 < ell < 0.5:
        raise InvalidRotation(f"rotation number must lie in (0, 1/2), got {ell!r}")
    jv = jacobi(2.0 * ellint_K(P.e) * ell, P.e)
    l1, _, l3 = P.lam
    # raw components, not canonicalized: they sit on the affine line
    # nu1 + l1 nu2 = l1 - l3 and callers rely on that normalization
    return PencilParam(l1 * jv.cn**2 - l3, jv.sn**2)


def symmetry_flow(P: Pencil, t: float, z) -> np.ndarray:
    """The circle-translation symmetry: covering-angle shift by t.

    Commutes with every P_nu and closes orbits onto translated orbits.
    """
    _require_on_outer(P, z)
    w = to_chart(P, z)
    phi = math.atan2(w[1], w[0])
    theta = ellint_F(phi, P.e) / (4.0 * ellint_K(P.e))
    return covering(P, theta + float(t))


def estimate_rotation(P: Pencil, nu, n: int = 10000) -> float:
    """Winding average of n geometric steps; O(1/n) error."""
    nu = as_param(nu).canonical()
    if _param_kind(P.lam, nu) == "outer":
        raise InvalidParameter("the outer conic defines no tangent dynamics")
    n = int(n)
    if n < 100:
        raise InvalidParameter(f"need at least 100 steps, got {n!r}")
    z = covering(P, 0.041)
    w = to_chart(P, z)
    phi = math.atan2(w[1], w[0])
    total = 0.0
    for _ in range(n):
        z = poncelet_step(P, nu, z)
        w = to_chart(P, z)
        phi1 = math.atan2(w[1], w[0])
        total += (phi1 - phi) % (2.0 * math.pi)
        phi = phi1
    return total / (2.0 * math.pi * n)


def polygon(P: Pencil, nu, z0, max_steps: int = 10000) -> PolygonOrbit:
    """Iterate P_nu from z0 until first return within TOL_CLOSE (standard
    chart) or max_steps; winding = round(steps * rho)."""
    _require_on_outer(P, z0)
    rho = rho_of_nu(P, nu)
    w0 = to_chart(P, z0)
    points = [np.asarray(z0, dtype=float)]
    z = z0
    residual = math.inf
    for _ in range(int(max_steps)):
        z = poncelet_step(P, nu, z)
        points.append(z)
        residual = float(np.linalg.norm(to_chart(P, z) - w0))
        if residual < TOL_CLOSE:
            break
    steps = len(points) - 1
    return PolygonOrbit(
        points=tuple(map(tuple, points)),
        steps=steps,
        winding=int(round(steps * rho)),
        closure_residual=residual,
        rho=rho,
    )


def run_composition(P: Pencil, schedule, z0) -> PolygonOrbit:
    """Apply (P_nu)^k blocks in order; rotation numbers add as sum(k rho)."""
    _require_on_outer(P, z0)
    total_rho = 0.0
    for nu, k in schedule:
        nu = as_param(nu).canonical()
        if _param_kind(P.lam, nu) == "outer":
            raise InvalidParameter("the outer conic defines no tangent dynamics")
        total_rho += int(k) * rho_of_nu(P, nu)
    w0 = to_chart(P, z0)
    points = [np.asarray(z0, dtype=float)]
    z = z0
    for nu, k in schedule:
        for _ in range(abs(int(k))):
            z = poncelet_step(P, nu, z, inverse=k < 0)
            points.append(z)
    residual = float(np.linalg.norm(to_chart(P, z) - w0))
    steps = len(points) - 1
    return PolygonOrbit(
        points=tuple(map(tuple, points)),
        steps=steps,
        winding=int(round(total_rho)),
        closure_residual=residual,
        rho=total_rho,
    )
