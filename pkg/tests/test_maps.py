"""Poncelet stepping, rotation numbers, compositions, closure."""

import math

import numpy as np
import pytest

from poncelet.conics import adjugate, confocal_ellipse
from poncelet.errors import (
    InvalidParameter,
    InvalidRotation,
    OffCircle,
    OffOuterConic,
)
from poncelet.maps import (
    covering,
    estimate_rotation,
    from_chart,
    invert_rho,
    polygon,
    poncelet_step,
    rho_of_nu,
    run_composition,
    standard_map,
    symmetry_flow,
    to_chart,
)
from poncelet.pencil import (
    build_pencil,
    dual,
    f_of_nu,
    member,
    nesting_order,
)
from test_pencil import diag_pencil, random_nested_pair

LAM = (0.2, 0.125, 1.0 / 9.0)


def on_circle(rng):
    t = rng.uniform(0.0, 2.0 * math.pi)
    return np.array([math.cos(t), math.sin(t)])


def test_standard_map_degenerate_members():
    rng = np.random.default_rng(2)
    for _ in range(8):
        p = on_circle(rng)
        e = rng.uniform(0.2, 0.95)
        assert standard_map(e, 0.0, p) == pytest.approx(-p, abs=1e-14)
        assert standard_map(e, e, p) == pytest.approx(p, abs=1e-14)


def test_standard_map_guards():
    with pytest.raises(InvalidParameter):
        standard_map(0.5, 0.6, (1.0, 0.0))
    with pytest.raises(InvalidParameter):
        standard_map(1.0, 0.5, (1.0, 0.0))
    with pytest.raises(OffCircle):
        standard_map(0.8, 0.5, (1.0, 0.1))


def test_standard_map_quarter_porism():
    # (e, f) = (0.8, sqrt(0.4)) has rotation number exactly 1/4
    e, f = 0.8, math.sqrt(0.4)
    p = np.array([1.0, 0.0])
    expected = [(0.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, 0.0)]
    for q in expected:
        p = standard_map(e, f, p)
        assert p == pytest.approx(q, abs=1e-9)


def test_standard_map_stays_on_circle():
    rng = np.random.default_rng(5)
    for _ in range(50):
        e = rng.uniform(0.15, 0.97)
        f = rng.uniform(0.0, e)
        p = standard_map(e, f, on_circle(rng))
        assert p[0] ** 2 + p[1] ** 2 == pytest.approx(1.0, abs=1e-12)


def confocal_pair_pencil(e=0.8, f=math.sqrt(0.4)):
    return build_pencil(confocal_ellipse(f), confocal_ellipse(e))


def test_step_square_orbit_orientation():
    # sides x = +-1.25, y = -+0.75 tangent to E(0.8); the positive step from
    # (1.25, -0.75) runs up the right side (inner conic on the left), the
    # printed reverse image (-1.25, -0.75) belongs to the inverse step
    P = confocal_pair_pencil()
    z = np.array([1.25, -0.75])
    assert poncelet_step(P, (0, 1), z) == pytest.approx((1.25, 0.75), abs=1e-9)
    assert poncelet_step(P, (0, 1), z, inverse=True) == pytest.approx(
        (-1.25, -0.75), abs=1e-9
    )
    for _ in range(4):
        z = poncelet_step(P, (0, 1), z)
    assert z == pytest.approx((1.25, -0.75), abs=1e-9)


def test_step_inverse_roundtrip():
    P = diag_pencil()
    rng = np.random.default_rng(9)
    for _ in range(20):
        nu = invert_rho(P, rng.uniform(0.02, 0.48))
        z = covering(P, rng.uniform(0.0, 1.0))
        z1 = poncelet_step(P, nu, z)
        assert poncelet_step(P, nu, z1, inverse=True) == pytest.approx(z, abs=1e-9)


def test_step_limit_ray_half_turn():
    P = diag_pencil()
    nu_lim = (-LAM[2], 1.0)
    z = covering(P, 0.4)
    z1 = poncelet_step(P, nu_lim, z)
    assert z1 == pytest.approx(from_chart(P, -to_chart(P, z)), abs=1e-12)
    assert poncelet_step(P, nu_lim, z1) == pytest.approx(z, abs=1e-12)
    assert rho_of_nu(P, nu_lim) == 0.5


def test_step_guards():
    P = diag_pencil()
    with pytest.raises(OffOuterConic):
        poncelet_step(P, (0, 1), (0.5, 0.5))
    with pytest.raises(InvalidParameter):
        poncelet_step(P, (1, 0), covering(P, 0.1))


def test_step_matches_standard_map_conjugacy():
    # geometric stepping == M(P_e^f(M^-1 z)) through the standardized chart
    rng = np.random.default_rng(23)
    pencils = [diag_pencil(), confocal_pair_pencil()]
    for _ in range(6):
        C1, C2, _ = random_nested_pair(rng)
        pencils.append(build_pencil(C1, C2))
    worst = 0.0
    for P in pencils:
        for _ in range(8):
            nu = invert_rho(P, rng.uniform(0.03, 0.47))
            z = covering(P, rng.uniform(0.0, 1.0))
            z_geo = poncelet_step(P, nu, z)
            z_std = from_chart(P, standard_map(P.e, f_of_nu(P, nu), to_chart(P, z)))
            worst = max(worst, float(np.linalg.norm(z_geo - z_std)))
    assert worst < 1e-8


def test_covering_basics():
    P = diag_pencil()  # M is the identity here
    assert covering(P, 0.0) == pytest.approx((1.0, 0.0), abs=1e-15)
    for th in (-0.7, 0.13, 0.37, 2.2):
        assert covering(P, th + 1.0) == pytest.approx(covering(P, th), abs=1e-11)


def test_covering_conjugacy_random_triples():
    # rigid-rotation path vs geometric path at 100 (pencil, nu, theta) triples
    rng = np.random.default_rng(31)
    pencils = [diag_pencil(), confocal_pair_pencil()]
    for _ in range(8):
        C1, C2, _ = random_nested_pair(rng)
        pencils.append(build_pencil(C1, C2))
    worst = 0.0
    for k in range(100):
        P = pencils[k % len(pencils)]
        nu = invert_rho(P, rng.uniform(0.03, 0.47))
        th = rng.uniform(-1.0, 2.0)
        z1 = poncelet_step(P, nu, covering(P, th))
        z2 = covering(P, th + rho_of_nu(P, nu))
        worst = max(worst, float(np.linalg.norm(z1 - z2)))
    assert worst < 1e-8


def test_rho_endpoints_and_fixture():
    P = diag_pencil()
    assert rho_of_nu(P, (1, 0)) == 0.0
    assert rho_of_nu(P, (-LAM[2], 1)) == 0.5
    assert f_of_nu(P, (0, 1)) == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-13)
    # the (0,1) member closes as a hexagon: rho is exactly 1/6
    assert rho_of_nu(P, (0, 1)) == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_rho_ray_invariance():
    P = diag_pencil()
    rng = np.random.default_rng(41)
    for _ in range(20):
        nu = invert_rho(P, rng.uniform(0.02, 0.48))
        c = rng.uniform(0.1, 50.0)
        assert rho_of_nu(P, (c * nu.nu1, c * nu.nu2)) == pytest.approx(
            rho_of_nu(P, nu), abs=1e-13
        )


def test_rho_quarter_parameter():
    P = diag_pencil()
    nu_star = (math.sqrt((LAM[0] - LAM[2]) * (LAM[1] - LAM[2])) - LAM[2], 1.0)
    assert rho_of_nu(P, nu_star) == pytest.approx(0.25, abs=1e-11)


def test_invert_rho_contract():
    P = diag_pencil()
    for ell in np.linspace(0.01, 0.49, 25):
        nu = invert_rho(P, float(ell))
        assert nu.nu1 + LAM[0] * nu.nu2 == pytest.approx(LAM[0] - LAM[2], abs=1e-12)
        assert rho_of_nu(P, nu) == pytest.approx(float(ell), abs=1e-11)


def test_invert_rho_endpoints_and_quarter():
    P = diag_pencil()
    nu = invert_rho(P, 1e-9)
    assert nu.nu2 / nu.nu1 == pytest.approx(0.0, abs=1e-8)
    nu = invert_rho(P, 0.25)
    ref = math.sqrt(1.0 / 810.0) - 1.0 / 9.0
    assert nu.nu1 / nu.nu2 == pytest.approx(ref, abs=1e-9)
    for bad in (0.0, 0.5, -0.1, 0.7):
        with pytest.raises(InvalidRotation):
            invert_rho(P, bad)


def test_invert_rho_duality():
    P = diag_pencil()
    for ell in (0.05, 0.11, 0.2, 0.31, 0.45):
        a = dual(P, invert_rho(P, ell))
        b = invert_rho(P, 0.5 - ell)
        cross = a.nu1 * b.nu2 - a.nu2 * b.nu1
        scale = math.hypot(a.nu1, a.nu2) * math.hypot(b.nu1, b.nu2)
        assert abs(cross) / scale < 1e-10


def test_rho_duality_sum():
    rng = np.random.default_rng(47)
    pencils = [diag_pencil()]
    for _ in range(4):
        C1, C2, _ = random_nested_pair(rng)
        pencils.append(build_pencil(C1, C2))
    for P in pencils:
        for _ in range(10):
            nu = invert_rho(P, rng.uniform(0.02, 0.48))
            s = rho_of_nu(P, nu) + rho_of_nu(P, dual(P, nu))
            assert s == pytest.approx(0.5, abs=1e-10)


def test_symmetry_flow_group_laws():
    P = diag_pencil()
    z = covering(P, 0.11)
    assert symmetry_flow(P, 0.0, z) == pytest.approx(z, abs=1e-12)
    assert symmetry_flow(P, 1.0, z) == pytest.approx(z, abs=1e-11)
    a = symmetry_flow(P, 0.2, symmetry_flow(P, 0.35, z))
    b = symmetry_flow(P, 0.55, z)
    assert a == pytest.approx(b, abs=1e-11)


def test_symmetry_flow_equivariance():
    rng = np.random.default_rng(53)
    pencils = [diag_pencil(), confocal_pair_pencil()]
    worst = 0.0
    for P in pencils:
        for _ in range(15):
            nu = invert_rho(P, rng.uniform(0.03, 0.47))
            t = rng.uniform(-1.0, 1.0)
            z = covering(P, rng.uniform(0.0, 1.0))
            a = poncelet_step(P, nu, symmetry_flow(P, t, z))
            b = symmetry_flow(P, t, poncelet_step(P, nu, z))
            worst = max(worst, float(np.linalg.norm(a - b)))
    assert worst < 1e-8


def test_symmetry_flow_translates_closed_orbits():
    P = diag_pencil()
    nu = invert_rho(P, 0.2)
    orb = polygon(P, nu, covering(P, 0.05))
    assert orb.steps == 5 and orb.closed
    for t in (0.25, 0.75):
        z0 = symmetry_flow(P, t, np.array(orb.points[0]))
        shifted = polygon(P, nu, z0)
        assert shifted.steps == 5
        assert shifted.closure_residual < 1e-7


def test_commutativity_and_monotonicity():
    P = diag_pencil()
    rng = np.random.default_rng(11)
    for _ in range(40):
        nu = invert_rho(P, rng.uniform(0.03, 0.47))
        mu = invert_rho(P, rng.uniform(0.03, 0.47))
        z = covering(P, rng.uniform(0.0, 1.0))
        a = poncelet_step(P, nu, poncelet_step(P, mu, z))
        b = poncelet_step(P, mu, poncelet_step(P, nu, z))
        assert np.linalg.norm(a - b) < 1e-8
        gap = rho_of_nu(P, mu) - rho_of_nu(P, nu)
        order = nesting_order(P, nu, mu)
        if abs(gap) > 1e-12:
            assert math.copysign(1.0, order) == math.copysign(1.0, gap)


def test_polygon_quadrilateral():
    P = diag_pencil()
    nu = invert_rho(P, 0.25)
    for th in (0.0, 0.17, 0.52, 0.9):
        orb = polygon(P, nu, covering(P, th))
        assert orb.steps == 4
        assert orb.winding == 1
        assert orb.closure_residual < 1e-8
        assert orb.closed


def test_polygon_heptagon_winding_two():
    P = diag_pencil()
    orb = polygon(P, invert_rho(P, 2.0 / 7.0), covering(P, 0.11))
    assert orb.steps == 7
    assert orb.winding == 2
    assert orb.closure_residual < 1e-7


def test_polygon_open_orbit():
    P = diag_pencil()
    orb = polygon(P, (0.05, 1.0), covering(P, 0.07), max_steps=700)
    assert orb.steps == 700
    assert not orb.closed


def test_polygon_porism_universality():
    P = diag_pencil()
    nu = invert_rho(P, 0.2)
    for th in np.linspace(0.0, 0.95, 16):
        orb = polygon(P, nu, covering(P, float(th)))
        assert orb.closure_residual < 1e-7
        assert orb.steps == 5


def test_polygon_sides_tangent_to_member():
    # each directed side must touch the declared inner conic: the side's
    # line lies on the dual conic, and the step is counterclockwise in chart
    P = diag_pencil()
    nu = invert_rho(P, 0.25)
    C = member(P, nu)
    A = adjugate(C)
    orb = polygon(P, nu, covering(P, 0.29))
    pts = [np.array([x, y, 1.0]) for x, y in orb.points]
    for u, v in zip(pts[:-1], pts[1:]):
        line = np.cross(u, v)
        res = abs(line @ A @ line) / (np.linalg.norm(A) * line @ line)
        assert res < 1e-12
        w1, w2 = to_chart(P, u[:2]), to_chart(P, v[:2])
        assert w1[0] * w2[1] - w1[1] * w2[0] > 0.0


def test_polygon_json_shape():
    P = diag_pencil()
    orb = polygon(P, invert_rho(P, 0.25), covering(P, 0.4))
    d = orb.to_json_dict()
    assert sorted(d) == ["closure_residual", "points", "rho", "steps", "winding"]
    assert len(d["points"]) == d["steps"] + 1
    assert d["winding"] == 1 and d["steps"] == 4
    assert isinstance(d["points"][0][0], float)


def test_composition_five_step_schedule():
    P = diag_pencil()
    n1, n2 = invert_rho(P, 0.2), invert_rho(P, 0.3)
    schedule = [(n1, 1), (n2, -1), (n1, 1), (n1, 1), (n2, -1)]
    rng = np.random.default_rng(61)
    for th in rng.uniform(0.0, 1.0, 8):
        orb = run_composition(P, schedule, covering(P, float(th)))
        assert orb.steps == 5
        assert orb.winding == 0
        assert abs(orb.rho) < 1e-10
        assert orb.closure_residual < 1e-7


def test_composition_cubic_field_schedule():
    # rotation numbers 3x^3, 2x^2, x at the real root of 21x^3+14x^2+7x-8
    # sum to 8/7, so seven triples close up with winding 8
    x = 0.45312020569808
    for _ in range(4):
        x -= (21 * x**3 + 14 * x**2 + 7 * x - 8) / (63 * x**2 + 28 * x + 7)
    ells = (3 * x**3, 2 * x**2, x)
    assert sum(ells) == pytest.approx(8.0 / 7.0, abs=1e-15)
    P = diag_pencil()
    schedule = [(invert_rho(P, l), 1) for l in ells] * 7
    orb = run_composition(P, schedule, covering(P, 0.31))
    assert orb.steps == 21
    assert orb.winding == 8
    assert orb.rho == pytest.approx(8.0, abs=1e-9)
    assert orb.closure_residual < 1e-7


def test_composition_rejects_outer():
    P = diag_pencil()
    with pytest.raises(InvalidParameter):
        run_composition(P, [((1, 0), 2)], covering(P, 0.1))


def test_estimate_rotation_converges():
    P = diag_pencil()
    est = estimate_rotation(P, (0, 1), 10000)
    assert abs(est - 1.0 / 6.0) < 2e-4


def test_estimate_rotation_near_limit():
    P = diag_pencil()
    est = estimate_rotation(P, (-LAM[2] + 1e-9, 1.0), 2000)
    assert abs(est - 0.5) < 1e-3


def test_estimate_rotation_guards():
    P = diag_pencil()
    with pytest.raises(InvalidParameter):
        estimate_rotation(P, (1, 0), 1000)
    with pytest.raises(InvalidParameter):
        estimate_rotation(P, (0, 1), 50)
