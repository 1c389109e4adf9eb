"""Independent numeric oracles used to freeze expected test values.

None of these call into the package: the elliptic integrals go through
scipy.integrate.quad (QUADPACK adaptive Gauss-Kronrod) on the defining
integrands, tangent lines through elementary circle geometry, and the circle
pencil spectrum through the quadratic formula. Test modules import from here;
the library must agree with these within the tolerances stated in the tests.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad


def ellint_F_quad(phi, e):
    """Incomplete elliptic integral of the first kind by adaptive quadrature."""
    val, err = quad(lambda t: 1.0 / math.sqrt(1.0 - (e * math.sin(t)) ** 2),
                    0.0, phi, epsabs=1e-14, epsrel=1e-13, limit=200)
    assert err < 1e-10
    return val


def ellint_K_quad(e):
    return ellint_F_quad(math.pi / 2.0, e)


def ellint_E_quad(phi, e):
    """Incomplete elliptic integral of the second kind by adaptive quadrature."""
    val, err = quad(lambda t: math.sqrt(1.0 - (e * math.sin(t)) ** 2),
                    0.0, phi, epsabs=1e-14, epsrel=1e-13, limit=200)
    assert err < 1e-10
    return val


def jacobi_epsilon_quad(u, e, sn_cn_dn=None):
    """Jacobi epsilon by quadrature of dn^2.

    dn is reconstructed from the inverse of F: am(t) solves F(am) = t, found
    by bisection, so this path never touches the package's Landen code.
    """
    def am_of(t):
        if t == 0.0:
            return 0.0
        sgn = 1.0 if t > 0 else -1.0
        t = abs(t)
        lo, hi = 0.0, math.pi / 2.0
        # widen until F(hi) >= t; F grows by 2K per pi
        while ellint_F_quad(hi, e) < t:
            hi += math.pi / 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if ellint_F_quad(mid, e) < t:
                lo = mid
            else:
                hi = mid
        return sgn * 0.5 * (lo + hi)

    def dn2(t):
        s = math.sin(am_of(t))
        return 1.0 - (e * s) ** 2

    val, err = quad(dn2, 0.0, u, epsabs=1e-12, epsrel=1e-11, limit=200)
    assert err < 1e-8
    return val


def circle_tangents(center, radius, z):
    """Tangent lines from z to the circle |p - center| = radius.

    Returns two (line, touch_point) pairs with line = (a, b, c) normalized so
    a^2 + b^2 = 1 and a*x + b*y + c = 0 on the line.
    """
    cx, cy = center
    zx, zy = z
    dx, dy = zx - cx, zy - cy
    d2 = dx * dx + dy * dy
    assert d2 > radius * radius, "point must be outside"
    # touch points: rotate the radius vector by +-alpha, cos(alpha) = r/d
    d = math.sqrt(d2)
    ca = radius / d
    sa = math.sqrt(1.0 - ca * ca)
    out = []
    base = (dx / d, dy / d)
    for s in (+1.0, -1.0):
        tx = radius * (ca * base[0] - s * sa * base[1])
        ty = radius * (s * sa * base[0] + ca * base[1])
        px, py = cx + tx, cy + ty
        # tangent line at (px,py): (p - c) . (q - p) = 0
        a, b = tx, ty
        n = math.hypot(a, b)
        a, b = a / n, b / n
        c = -(a * px + b * py)
        out.append(((a, b, c), (px, py)))
    return out


def circle_pencil_eigs(R, r, a):
    """Spectrum of the circle pair det(lam*C1 - C2) by the quadratic formula.

    C1 = diag(1,1,-R^2), C2 = [[1,0,-a],[0,1,0],[-a,0,a^2-r^2]]. The cubic
    factors as -(lam - 1)(R^2 lam^2 - b lam + r^2) with b = R^2 + r^2 - a^2.
    """
    b = R * R + r * r - a * a
    disc = b * b - 4.0 * r * r * R * R
    assert disc >= 0.0
    s = math.sqrt(disc)
    lam2 = (b + s) / (2.0 * R * R)
    lam3 = (b - s) / (2.0 * R * R)
    return 1.0, lam2, lam3


def winding_rotation(phis, n):
    """O(1/n) rotation estimate from a sequence of angles mod 2pi."""
    total = 0.0
    for k in range(n):
        d = (phis[k + 1] - phis[k]) % (2.0 * math.pi)
        total += d
    return total / (2.0 * math.pi * n)


def random_spd_congruence(rng, scale=1.0):
    """Random well-conditioned invertible 3x3 matrix for congruence tests."""
    while True:
        S = rng.normal(size=(3, 3)) * scale
        if abs(np.linalg.det(S)) > 0.1:
            return S
