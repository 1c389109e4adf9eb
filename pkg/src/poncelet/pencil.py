"""Pencils of nested ellipses: simultaneous diagonalization and parameters.

build_pencil turns a nested pair (C1 outer, C2 inner) into the normal form
M^T C1 M = diag(1,1,-1), M^T C2 M = diag(l1,l2,-l3) with l1 > l2 > l3 > 0.
Members are nu1*C1 + nu2*C2 on the projective parameter line; the valid
cone is nu2 > 0, nu1 + l3*nu2 > 0, plus the outer representative (1, 0).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .conics import SymmetricConic, quadratic_form, validate_ellipse
from .elliptic import Modulus
from .errors import (
    DegenerateSpectrum,
    HomographySingularity,
    InvalidParameter,
    LimitingPoint,
    NotNested,
)

TOL_DEGENERATE = 1e-9
_PARAM_EPS = 1e-12


@dataclass(frozen=True)
class PencilParam:
    nu1: float
    nu2: float

    def canonical(self) -> "PencilParam":
        """Unit norm under positive rescaling; valid members end up nu2 >= 0."""
        n = math.hypot(self.nu1, self.nu2)
        if n == 0.0:
            raise InvalidParameter("zero parameter vector")
        return PencilParam(self.nu1 / n, self.nu2 / n)


def as_param(nu) -> PencilParam:
    if isinstance(nu, PencilParam):
        return nu
    return PencilParam(float(nu[0]), float(nu[1]))


@dataclass(frozen=True, eq=False)
class Pencil:
    C1: SymmetricConic
    C2: SymmetricConic
    lam: tuple
    M: np.ndarray = field(repr=False)
    Minv: np.ndarray = field(repr=False)
    e: Modulus


def pencil_cubic(C1: SymmetricConic, C2: SymmetricConic) -> np.ndarray:
    """Coefficients (b0, b1, b2, b3) of det(l*C1 - C2) in descending powers."""
    A, B = C1.matrix, -C2.matrix
    coeffs = np.zeros(4)
    # det is multilinear in columns: sum over which columns come from A
    for mask in range(8):
        cols = [A[:, j] if (mask >> j) & 1 else B[:, j] for j in range(3)]
        k = bin(mask).count("1")
        coeffs[3 - k] += np.linalg.det(np.column_stack(cols))
    return coeffs


def _solve_cubic_real(c: np.ndarray) -> np.ndarray:
    """Real roots of c0 x^3 + c1 x^2 + c2 x + c3, trig form + Newton polish."""
    c0, c1, c2, c3 = (float(v) for v in c)
    if c0 == 0.0:
        raise DegenerateSpectrum("leading coefficient vanishes")
    p, q, r = c1 / c0, c2 / c0, c3 / c0
    # depressed cubic t^3 + a t + b, x = t - p/3
    a = q - p * p / 3.0
    b = 2.0 * p**3 / 27.0 - p * q / 3.0 + r
    if a >= 0.0:
        # three distinct real roots require a < 0; treat as degenerate
        raise DegenerateSpectrum("pencil cubic lacks three separated real roots")
    m = 2.0 * math.sqrt(-a / 3.0)
    arg = 3.0 * b / (a * m)
    arg = min(1.0, max(-1.0, arg))
    theta = math.acos(arg) / 3.0
    roots = np.array([m * math.cos(theta - 2.0 * math.pi * k / 3.0) - p / 3.0 for k in range(3)])
    for _ in range(2):
        val = ((c0 * roots + c1) * roots + c2) * roots + c3
        der = (3.0 * c0 * roots + 2.0 * c1) * roots + c2
        roots = np.where(np.abs(der) > 0.0, roots - val / der, roots)
    return np.sort(roots)[::-1]


def generalized_eigenvalues(C1: SymmetricConic, C2: SymmetricConic):
    """Roots of det(l*C1 - C2), descending; enforces l1 > l2 > l3 > 0."""
    validate_ellipse(C1)
    validate_ellipse(C2)
    lam = _solve_cubic_real(pencil_cubic(C1, C2))
    if lam[2] <= 0.0:
        raise DegenerateSpectrum(f"nonpositive generalized eigenvalue {lam[2]!r}")
    if lam[0] - lam[1] < TOL_DEGENERATE * lam[0] or lam[1] - lam[2] < TOL_DEGENERATE * lam[0]:
        raise DegenerateSpectrum(f"eigenvalue gap below tolerance: {tuple(lam)!r}")
    return float(lam[0]), float(lam[1]), float(lam[2])


def pencil_eccentricity(lam) -> Modulus:
    l1, l2, l3 = lam
    if not l1 > l2 > l3 > 0.0:
        raise DegenerateSpectrum(f"eigenvalues not strictly ordered positive: {lam!r}")
    return Modulus(math.sqrt((l1 - l2) / (l1 - l3)))


def _null_vector(A: np.ndarray) -> np.ndarray:
    # rank-2 symmetric A: null space spanned by the largest row cross product
    best, best_n = None, -1.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        v = np.cross(A[i], A[j])
        n = float(v @ v)
        if n > best_n:
            best, best_n = v, n
    return best / math.sqrt(best_n)


def build_pencil(C1: SymmetricConic, C2: SymmetricConic) -> Pencil:
    """Diagonalize the nested pair and package eigenvalues and homography."""
    validate_ellipse(C1)
    validate_ellipse(C2)
    lam = generalized_eigenvalues(C1, C2)
    M1 = C1.matrix
    cols, norms = [], []
    for l in lam:
        v = _null_vector(l * M1 - C2.matrix)
        n = float(v @ M1 @ v)
        cols.append(v)
        norms.append(n)
    if not (norms[0] > 0.0 and norms[1] > 0.0 and norms[2] < 0.0):
        # the C1-negative direction must belong to the smallest eigenvalue
        raise NotNested(f"signature mismatch in diagonalization, norms {norms!r}")
    M = np.column_stack([c / math.sqrt(abs(n)) for c, n in zip(cols, norms)])
    # orientation normalization: m33 > 0, det(M) > 0, then a deterministic
    # sign for the first column (joint flip keeps the determinant)
    if M[2, 2] < 0.0:
        M[:, 2] = -M[:, 2]
    if np.linalg.det(M) < 0.0:
        M[:, 1] = -M[:, 1]
    j = int(np.argmax(np.abs(M[:, 0])))
    if M[j, 0] < 0.0:
        M[:, 0] = -M[:, 0]
        M[:, 1] = -M[:, 1]
    D1 = M.T @ M1 @ M
    D2 = M.T @ C2.matrix @ M
    s1 = max(abs(x) for x in np.ravel(D1))
    s2 = max(abs(x) for x in np.ravel(D2))
    if not (
        np.allclose(D1, np.diag([1.0, 1.0, -1.0]), atol=1e-9 * s1)
        and np.allclose(D2, np.diag([lam[0], lam[1], -lam[2]]), atol=1e-9 * s2)
    ):
        raise NotNested("diagonalization residual above tolerance")
    # SA3 check: C2 must sit strictly inside C1; sample C2 through the
    # normal-form parameterization l1 X^2 + l2 Y^2 = l3
    scale1 = np.linalg.norm(M1)
    for t in np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False):
        w = np.array(
            [math.sqrt(lam[2] / lam[0]) * math.cos(t), math.sqrt(lam[2] / lam[1]) * math.sin(t)]
        )
        z = apply_homography(M, w)
        u2 = 1.0 + float(z @ z)
        if quadratic_form(C1, z) >= -1e-10 * scale1 * u2:
            raise NotNested(f"inner conic sample {tuple(z)!r} not strictly inside outer")
    M.setflags(write=False)
    Minv = np.linalg.inv(M)
    Minv.setflags(write=False)
    return Pencil(C1=C1, C2=C2, lam=lam, M=M, Minv=Minv, e=pencil_eccentricity(lam))


def apply_homography(M, p) -> np.ndarray:
    """Fractional-linear action of a 3x3 matrix on an affine point."""
    M = np.asarray(M, dtype=float)
    u = np.array([float(p[0]), float(p[1]), 1.0])
    w = M @ u
    if abs(w[2]) < 1e-13 * np.linalg.norm(M) * np.linalg.norm(u):
        raise HomographySingularity(f"homography denominator vanished at {tuple(p)!r}")
    return w[:2] / w[2]


def _param_kind(lam, nu: PencilParam) -> str:
    """'outer' for (1,0), 'limit' on the boundary ray, 'member' inside."""
    nu = nu.canonical()
    if nu.nu2 == 0.0:
        if nu.nu1 > 0.0:
            return "outer"
        raise InvalidParameter(f"parameter {nu!r} outside the valid cone")
    if nu.nu2 < 0.0:
        raise InvalidParameter(f"parameter {nu!r} outside the valid cone")
    c = nu.nu1 + lam[2] * nu.nu2
    if abs(c) <= _PARAM_EPS * (abs(nu.nu1) + lam[2] * nu.nu2):
        return "limit"
    if c < 0.0:
        raise InvalidParameter(f"parameter {nu!r} outside the valid cone")
    return "member"


def limiting_point(P: Pencil) -> np.ndarray:
    return apply_homography(P.M, (0.0, 0.0))


def member(P: Pencil, nu) -> SymmetricConic:
    nu = as_param(nu).canonical()
    kind = _param_kind(P.lam, nu)
    if kind == "outer":
        return P.C1
    if kind == "limit":
        raise LimitingPoint(limiting_point(P))
    C = SymmetricConic.from_matrix(nu.nu1 * P.C1.matrix + nu.nu2 * P.C2.matrix)
    return validate_ellipse(C)


def member_factor(lam, nu) -> float:
    """sqrt((nu1 + l3 nu2)/(nu1 + l2 nu2)), the eccentricity scaling of nu."""
    nu = as_param(nu).canonical()
    return math.sqrt((nu.nu1 + lam[2] * nu.nu2) / (nu.nu1 + lam[1] * nu.nu2))


def relative_eccentricity(P: Pencil, nu, mu) -> Modulus:
    """Eccentricity of the sub-pencil with outer member nu (Lemma-invariant
    in the inner member, which only needs to nest strictly inside)."""
    nu, mu = as_param(nu).canonical(), as_param(mu).canonical()
    for p in (nu, mu):
        _param_kind(P.lam, p)
    if nesting_order(P, nu, mu) <= 0.0:
        raise NotNested(f"member {mu!r} is not strictly inside {nu!r}")
    return Modulus(member_factor(P.lam, nu) * P.e.e)


def f_of_nu(P: Pencil, nu) -> float:
    """Standard-pencil parameter of member nu: C_nu maps onto S_e^{f(nu)}."""
    nu = as_param(nu).canonical()
    kind = _param_kind(P.lam, nu)
    if kind == "limit":
        return 0.0
    return member_factor(P.lam, nu) * P.e.e


def dual_formula(lam, nu1, nu2):
    """Raw dual parameter; exact over rationals when inputs are exact."""
    l1, l2, l3 = lam
    return (-l3 * nu1 + (l1 * l2 - l1 * l3 - l2 * l3) * nu2, nu1 + l3 * nu2)


def dual(P: Pencil, nu) -> PencilParam:
    nu = as_param(nu).canonical()
    _param_kind(P.lam, nu)
    d1, d2 = dual_formula(P.lam, nu.nu1, nu.nu2)
    return PencilParam(d1, d2).canonical()


def nesting_order(P: Pencil, nu, mu) -> float:
    """nu1*mu2 - nu2*mu1 on canonical representatives; > 0 iff C_mu is
    strictly inside C_nu."""
    nu, mu = as_param(nu).canonical(), as_param(mu).canonical()
    return nu.nu1 * mu.nu2 - nu.nu2 * mu.nu1


def standard_pencil_member(e, f: float) -> SymmetricConic:
    """S_e^f: ((1-f^2)/(1-e^2)) X^2 + Y^2 = f^2/e^2, the normal-form member."""
    e = e.e if isinstance(e, Modulus) else float(e)
    f = float(f)
    if f < 0.0 or f > e:
        raise InvalidParameter(f"need 0 <= f <= e, got f={f!r}, e={e!r}")
    if f == 0.0:
        raise LimitingPoint(np.zeros(2))
    if f == e:
        return SymmetricConic(1.0, 0.0, 0.0, 1.0, 0.0, -1.0)
    return SymmetricConic(
        (1.0 - f * f) / (1.0 - e * e), 0.0, 0.0, 1.0, 0.0, -(f * f) / (e * e)
    )


def confocal_to_standard(f: float) -> np.ndarray:
    """T_f = [[0, f/sqrt(1-f^2)], [-f, 0]]: sends E(f) to the unit circle
    and every confocal E(e), e > f, to S_e^f."""
    f = float(f)
    if not 0.0 < f < 1.0:
        raise InvalidParameter(f"need 0 < f < 1, got {f!r}")
    return np.array([[0.0, f / math.sqrt(1.0 - f * f)], [-f, 0.0]])
