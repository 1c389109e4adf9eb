"""Self-contained verification suites behind `poncelet verify`.

Each check re-measures an identity or fixture with library code only and
reports a residual against its tolerance. Lower-bound checks (off-porism
floors) set bound = "lower" and pass when the residual exceeds the
tolerance instead.
"""

import math
from fractions import Fraction

import numpy as np

from .billiard import gauss_transform, half_rotation, porism_f, rotation_confocal
from .cayley import bicentric_check, bicentric_rho, cayley_condition, confocal_poristic_residual
from .conics import SymmetricConic, unit_circle
from .elliptic import ellint_F, ellint_K, jacobi, jacobi_epsilon
from .errors import InvalidParameter
from .maps import covering, invert_rho, polygon, poncelet_step, rho_of_nu, run_composition
from .pencil import build_pencil, dual, f_of_nu, member

SUITES = ("elliptic", "confocal", "pencil", "cayley", "composition", "all")

_MODULUS_GRID = [0.05 * k for k in range(1, 20)]


def _check(name, residual, tol, bound="upper"):
    residual = float(residual)
    ok = residual > tol if bound == "lower" else residual < tol
    return {"name": name, "residual": residual, "tol": tol, "bound": bound, "pass": bool(ok)}


def _fig3_pencil():
    return build_pencil(unit_circle(), SymmetricConic(0.2, 0.0, 0.0, 0.125, 0.0, -1.0 / 9.0))


def _elliptic_checks():
    sq = dn = rt = lan = der = 0.0
    for e in _MODULUS_GRID:
        K = ellint_K(e)
        for u in np.linspace(-1.8 * K, 1.8 * K, 13):
            jv = jacobi(u, e)
            sq = max(sq, abs(jv.sn**2 + jv.cn**2 - 1.0))
            dn = max(dn, abs(jv.dn**2 + e * e * jv.sn**2 - 1.0))
            rt = max(rt, abs(ellint_F(jv.am, e) - u))
            h = 1e-5
            diff = (jacobi_epsilon(u + h, e) - jacobi_epsilon(u - h, e)) / (2.0 * h)
            der = max(der, abs(diff - jv.dn**2))
        ep = math.sqrt(1.0 - e * e)
        k1 = (1.0 - ep) / (1.0 + ep)
        lan = max(lan, abs(K - (1.0 + k1) * ellint_K(k1)))
    return [
        _check("sn2_plus_cn2", sq, 1e-12),
        _check("dn2_plus_e2sn2", dn, 1e-12),
        _check("F_am_roundtrip", rt, 1e-10),
        _check("landen_K_relation", lan, 1e-12),
        _check("epsilon_derivative_is_dn2", der, 1e-8),
    ]


def _confocal_checks():
    rho1 = rotation_confocal(0.8, 0.572851)
    f1, f2 = half_rotation(0.8, 0.572851)
    g = gauss_transform(0.6, 0.503246)
    roundtrip = 0.0
    ginv = 0.0
    for ell in (1.0 / 3.0, 0.25, 2.0 / 7.0):
        for e in (0.5, 0.8):
            f = porism_f(e, ell)
            roundtrip = max(roundtrip, abs(rotation_confocal(e, f) - ell))
            gi = gauss_transform(e, f)
            ginv = max(ginv, abs(rotation_confocal(gi.e, gi.f) - ell))
    return [
        _check("caption_rho_2_7", abs(rho1 - 2.0 / 7.0), 5e-6),
        _check("caption_half_f2", abs(f2.e - 0.419316), 5e-6),
        _check("caption_half_rho", abs(rotation_confocal(0.8, f2) - 5.0 / 14.0), 5e-6),
        _check("caption_rho_1_5", abs(rotation_confocal(0.6, 0.503246) - 0.2), 5e-6),
        _check(
            "caption_gauss_image",
            max(abs(g.e.e - 0.968246), abs(g.f.e - 0.913706)),
            5e-6,
        ),
        _check("porism_f_roundtrip", roundtrip, 1e-10),
        _check("gauss_rho_invariance", ginv, 1e-10),
    ]


def _pencil_checks():
    P = _fig3_pencil()
    duality = 0.0
    conj = 0.0
    mono_bad = 0
    params = [(0.0, 1.0), (0.05, 1.0), (0.3, 1.0), (-0.05, 1.0), (-0.1, 1.0)]
    for nu in params:
        duality = max(duality, abs(rho_of_nu(P, nu) + rho_of_nu(P, dual(P, nu)) - 0.5))
    for i, nu in enumerate(params):
        for mu in params[i + 1 :]:
            cross = nu[0] * mu[1] - nu[1] * mu[0]
            if math.copysign(1.0, cross) != math.copysign(
                1.0, rho_of_nu(P, mu) - rho_of_nu(P, nu)
            ):
                mono_bad += 1
    rho = rho_of_nu(P, (0.0, 1.0))
    for th in np.linspace(0.02, 0.97, 16):
        z = poncelet_step(P, (0.0, 1.0), covering(P, float(th)))
        conj = max(conj, float(np.hypot(*(z - covering(P, float(th) + rho)))))
    return [
        _check("fig3_pencil_modulus", abs(P.e.e - math.sqrt(27.0 / 32.0)), 1e-12),
        _check("fig3_f_of_inner", abs(f_of_nu(P, (0.0, 1.0)) - math.sqrt(3.0) / 2.0), 1e-12),
        _check("duality_sum_half", duality, 1e-10),
        _check("monotonicity_sign_mismatches", float(mono_bad), 0.5),
        _check("covering_conjugates_step", conj, 1e-8),
    ]


def _cayley_checks():
    P = _fig3_pencil()
    worst_on, worst_off = 0.0, math.inf
    for N in range(3, 11):
        for k in range(1, N):
            if math.gcd(k, N) != 1 or 2 * k >= N:
                continue
            Pon = build_pencil(P.C1, member(P, invert_rho(P, k / N)))
            Poff = build_pencil(P.C1, member(P, invert_rho(P, k / N + 0.01)))
            worst_on = max(worst_on, abs(cayley_condition(Pon, N)))
            worst_off = min(worst_off, abs(cayley_condition(Poff, N)))
    poly = 0.0
    for name, ell in (("1/3", Fraction(1, 3)), ("1/4", Fraction(1, 4)), ("1/5", Fraction(1, 5)), ("2/5", Fraction(2, 5)), ("1/6", Fraction(1, 6))):
        f = porism_f(0.75, float(ell))
        poly = max(poly, abs(confocal_poristic_residual(0.75, f, name)))
    return [
        _check("porism_cayley_worst_on", worst_on, 1e-8),
        _check("off_porism_cayley_floor", worst_off, 1e-4, bound="lower"),
        _check("bicentric_chapple_euler", abs(bicentric_check(1.0, 0.5, 0.0, "triangle")), 1e-15),
        _check(
            "bicentric_fuss",
            abs(bicentric_check(1.0, 1.0 / math.sqrt(2.0), 0.0, "quadrilateral")),
            1e-15,
        ),
        _check("bicentric_rho_third", abs(bicentric_rho(1.0, 0.5, 0.0) - 1.0 / 3.0), 1e-10),
        _check(
            "bicentric_rho_quarter",
            abs(bicentric_rho(1.0, 1.0 / math.sqrt(2.0), 0.0) - 0.25),
            1e-10,
        ),
        _check("confocal_poristic_polynomials", poly, 1e-9),
    ]


def _composition_checks():
    P = _fig3_pencil()
    n1, n2 = invert_rho(P, 0.2), invert_rho(P, 0.3)
    five = run_composition(P, [(n1, 1), (n2, -1), (n1, 1), (n1, 1), (n2, -1)], covering(P, 0.17))
    x = 0.45312020569808
    for _ in range(4):
        x -= (21 * x**3 + 14 * x**2 + 7 * x - 8) / (63 * x**2 + 28 * x + 7)
    cubic_schedule = [(invert_rho(P, l), 1) for l in (3 * x**3, 2 * x**2, x)] * 7
    cubic = run_composition(P, cubic_schedule, covering(P, 0.31))
    quad = polygon(P, invert_rho(P, 0.25), covering(P, 0.05))
    hept = polygon(P, invert_rho(P, 2.0 / 7.0), covering(P, 0.05))
    checks = [
        _check("five_step_mixed_closure", five.closure_residual, 1e-7),
        _check("cubic_field_z21_return", cubic.closure_residual, 1e-6),
        _check("quadrilateral_closure", quad.closure_residual, 1e-7),
        _check("heptagon_closure", hept.closure_residual, 1e-7),
    ]
    shape_ok = (
        five.winding == 0
        and cubic.steps == 21
        and cubic.winding == 8
        and quad.steps == 4
        and quad.winding == 1
        and hept.steps == 7
        and hept.winding == 2
    )
    checks.append(_check("winding_counts", 0.0 if shape_ok else 1.0, 0.5))
    return checks


_SUITE_FNS = {
    "elliptic": _elliptic_checks,
    "confocal": _confocal_checks,
    "pencil": _pencil_checks,
    "cayley": _cayley_checks,
    "composition": _composition_checks,
}


def run_suite(name: str) -> dict:
    """Run one named suite (or "all") and return its JSON-ready report."""
    if name not in SUITES:
        raise InvalidParameter(f"unknown suite {name!r}; choose from {SUITES}")
    names = list(_SUITE_FNS) if name == "all" else [name]
    checks = []
    for n in names:
        checks.extend(_SUITE_FNS[n]())
    return {"suite": name, "passed": all(c["pass"] for c in checks), "checks": checks}
