import math

import numpy as np
import pytest

import framelift as fl


def test_catalog_ids():
    assert fl.ids() == ["E1", "E2", "E3", "E4", "E5"]
    e3 = fl.info("E3")
    assert (e3["source_dim"], e3["target_dim"]) == (3, 2)


def test_unknown_example():
    with pytest.raises(ValueError):
        fl.info("bogus")


def test_sphere_metric_and_curvature():
    # E3 source is the stereographic unit 3-sphere: g = 4 I / (1 + |x|^2)^2.
    p = np.array([0.1, -0.2, 0.3])
    g = fl.metric("E3", p)
    assert np.allclose(g, 4.0 / (1.0 + p @ p) ** 2 * np.eye(3), atol=1e-14)
    K = fl.sectional_curvature("E3", p, np.array([1.0, 0, 0]), np.array([0, 1.0, 1.0]))
    assert abs(K - 1.0) < 5e-4


def test_christoffel_symmetric():
    gamma = np.array(fl.christoffel("E4", np.array([0.2, 0.1])))
    assert gamma.shape == (2, 2, 2)
    assert np.allclose(gamma, gamma.transpose(0, 2, 1), atol=1e-12)
    # d_s d_s has Gamma^t_ss = -e^{2t} on the warped plane.
    assert math.isclose(gamma[0][1, 1], -math.exp(0.4), rel_tol=1e-6)


def test_hopf_is_harmonic_riemannian_submersion():
    p = np.array(fl.info("E3")["reference_point"])
    lam, defect = fl.dilatation("E3", p)
    assert abs(lam - 1.0) < 1e-10 and defect < 1e-10
    assert np.linalg.norm(fl.tension("E3", p)) < 5e-4


def test_classify_hopf():
    r = fl.classify("E3", samples=4)
    assert r["harmonic_morphism"]
    assert not r["lift_conformal_predicted"]
    assert r["lift_conformal_measured"] == "no"


def test_verify_deterministic():
    code_a, a = fl.verify("E1", "core", samples=3)
    code_b, b = fl.verify("E1", "core", samples=3)
    assert code_a == 0 and a == b
    assert all(r["status"] == "pass" for r in a["results"])


def test_verify_rejects_bad_suite():
    with pytest.raises(ValueError):
        fl.verify("E1", "nope")
