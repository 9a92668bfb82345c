import math

import numpy as np
import pytest

import s2xs2


def test_elliptic_values():
    assert s2xs2.complete_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    p = 2 * math.sqrt(2) / 3
    K, E = s2xs2.complete_K(p), s2xs2.complete_E(p)
    assert 2.52 < K < 2.54
    assert 1.11 < E < 1.12
    sn, cn, dn = s2xs2.jacobi(0.7, p)
    assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
    assert dn * dn + p * p * sn * sn == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        s2xs2.complete_K(1.0)


def test_catalog_and_pointwise():
    ids = {entry["id"] for entry in s2xs2.catalog()}
    assert {"m0", "torus-t", "klein-b"} <= ids
    x, y = s2xs2.surface_point("m0", 0.0, 0.0)
    assert x == pytest.approx((0, 0, 1))
    assert y == pytest.approx((0, 0, -1))
    assert s2xs2.lagrangian_residual("klein-b", 0.3, 0.4) < 1e-9
    assert s2xs2.associated_jacobian("m0", 0.2, 0.3) == pytest.approx(0.5, abs=1e-10)
    assert s2xs2.degree("m0", 64) == pytest.approx(1.0, abs=1e-6)
    assert s2xs2.area("klein-b", 32) == pytest.approx(
        12 * math.pi * s2xs2.complete_E(2 * math.sqrt(2) / 3), rel=1e-6)


def test_analyze_report():
    rep = s2xs2.analyze("torus-ab:0.5:0", nt=16, ns=16)
    assert rep["schema"] == 1
    assert rep["all_pass"] is True
    names = {c["name"] for c in rep["invariants"]}
    assert "parallel-H" in names
    assert "lagrangian" in names


def test_export_field():
    c = s2xs2.export_field("lawson-gauss", "C", nt=8, ns=4)
    assert c.shape == (4, 8)
    assert np.max(np.abs(c)) <= 0.5
    assert np.abs(c[0, 0]) == pytest.approx(0.4, abs=1e-10)  # peak of |C| at t = 0


def test_sinh_gordon():
    v, dt = s2xs2.lawson_solution(512)
    assert s2xs2.sg_residual(v, dt, periodic=True) < 1e-4
    vv, ww, h = s2xs2.integrate_reduced(math.atanh(0.5), 0.0, 2.0, 1e-3)
    u, C, resid = s2xs2.reconstruct(v, dt, periodic=True)
    assert np.all(np.abs(C) < 0.5)
    assert np.all(np.exp(2 * u) >= 4.0 - 1e-12)
    assert resid < 5e-4


def test_spectrum():
    rep = s2xs2.spectrum("torus-t", nt=24, ns=24)
    assert rep["ind0"] == 0
    assert rep["index"] == 2
    assert rep["lambda1"] == pytest.approx(1.0, abs=0.01)


def test_verify_single_suite():
    rep = s2xs2.verify(suites=["sinh-gordon"])
    assert rep["all_pass"] is True
    assert any(c["suite"] == "sinh-gordon" for c in rep["checks"])
