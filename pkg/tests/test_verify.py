"""Finite-difference verification of frames, curvature identities, tables."""

import numpy as np
import pytest

from petrovtypes import catalog
from petrovtypes.verify import (
    CONFIG,
    codazzi_residual,
    convergence_ratio,
    curvature_data,
    gauss_residual,
    isoparametric_function_check,
    run_checks,
    shape_fd_check,
    table_report,
)
from petrovtypes.catalog import chart, quadric_of, sample_domain
from petrovtypes.spaceform import QuadricFunction


SPOT_IDS = ["0-1", "0-2", "b", "e", "g", "j", "k", "m"]


@pytest.mark.parametrize("ex_id", SPOT_IDS)
def test_shape_fd_passes(ex_id):
    for p in sample_domain(ex_id, 3, seed=23):
        rep = shape_fd_check(ex_id, p)
        assert rep.passed, (ex_id, rep.residual)


@pytest.mark.parametrize("ex_id", SPOT_IDS)
def test_gauss_and_codazzi_pass(ex_id):
    for p in sample_domain(ex_id, 2, seed=29):
        assert gauss_residual(ex_id, p).passed
        assert codazzi_residual(ex_id, p).passed


def test_run_checks_all_pass_small_sweep():
    reports = run_checks("c", samples=4, seed=31)
    assert len(reports) == 12
    assert all(r.passed for r in reports)


def test_gauss_residual_converges_or_hits_noise_floor():
    p = sample_domain("g", 1, seed=37)[0]
    h = CONFIG["curvature_h"]
    r1 = gauss_residual("g", p, h=h)
    r2 = gauss_residual("g", p, h=h / 2)
    ratio = convergence_ratio(r1, r2)
    assert ratio >= CONFIG["convergence_ratio"] or (
        r1.residual < 1e-9 and r2.residual < 1e-9
    )


def test_curvature_tensor_symmetries():
    p = sample_domain("j", 1, seed=41)[0]
    data = curvature_data("j", p)
    r = data.curvature
    assert np.allclose(r, -np.transpose(r, (1, 0, 2, 3)), atol=1e-6)
    # the second antisymmetry is exact only in the limit h -> 0
    assert np.allclose(r, -np.transpose(r, (0, 1, 3, 2)), atol=1e-4)
    gamma = data.christoffel
    assert np.allclose(gamma, np.transpose(gamma, (0, 2, 1)), atol=1e-9)
    assert np.allclose(data.metric, data.metric.T, atol=1e-12)


def test_gauss_negative_control_shape_override():
    p = sample_domain("m", 1, seed=43)[0]
    fd = catalog.evaluate("m", p)
    bad = fd.shape.copy()
    bad[0, 0] += 1e-2
    rep = gauss_residual("m", p, shape_override=bad)
    assert not rep.passed


@pytest.mark.parametrize("ex_id", ["a", "e", "h", "b", "c"])
def test_isoparametric_level_invariants(ex_id):
    f = quadric_of(ex_id)
    pts = [chart(ex_id, p) for p in sample_domain(ex_id, 8, seed=47)]
    rep = isoparametric_function_check(f, pts)
    assert rep.passed, (ex_id, rep.residual)


def test_isoparametric_negative_control():
    # P fails every admissibility clause, so the level sets are not
    # isoparametric and the gradient norm varies along them
    p_mat = np.diag([2.0, 1.0, 0.0, 0.0, 0.0])
    f = QuadricFunction("flat", 2, p_mat, 1.0, np.zeros(5))
    rng = np.random.default_rng(53)
    pts = []
    while len(pts) < 8:
        x = rng.uniform(-1.0, 1.0, size=5)
        # move x along the gradient to hit the level f = 1
        val = f.value(x)
        if abs(val) < 1e-3:
            continue
        pts.append(x / np.sqrt(abs(val)))
    levels = {round(f.value(x), 9) for x in pts}
    if len(levels) == len(pts):
        # force at least one shared level by duplicating a reflected point
        pts[1] = pts[0] * np.array([-1.0, 1.0, 1.0, 1.0, 1.0])
    rep = isoparametric_function_check(f, pts)
    assert not rep.passed


def test_table_reports_have_no_mismatches():
    for which in (1, 2, 3):
        out = table_report(which, samples=3, seed=59)
        assert out["mismatches"] == []


def test_table_one_covers_all_columns():
    out = table_report(1, samples=2, seed=61)
    assert len(out["columns"]) == 11


def test_residual_report_passed_property():
    rep = shape_fd_check("b", sample_domain("b", 1, seed=67)[0])
    assert rep.passed == (rep.residual <= rep.threshold)
    assert rep.check == "shape_fd"
