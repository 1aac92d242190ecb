"""Smoke tests for the compiled module: one exercise per major operation."""

import math

import pytest

import vipar


def test_forward_gop():
    c = vipar.forward_gop(vipar.ProbTable(0.2, 0.3, 0.4, 0.6))
    assert c.rr0 == pytest.approx(1.5, rel=1e-12)
    assert c.or10 == pytest.approx(8.0 / 3.0, rel=1e-12)
    assert c.rr11 == pytest.approx(2.0, rel=1e-12)
    assert c.gop == pytest.approx(3.0 / 28.0, rel=1e-12)


def test_forward_gop_validates():
    with pytest.raises(ValueError, match="p11"):
        vipar.forward_gop(vipar.ProbTable(0.2, 0.3, 0.4, 1.2))


def test_inverse_gop_analytic():
    p = vipar.inverse_gop(vipar.EffectVector(2.0, 1.0, 1.0, 1.0))
    assert p.p00 == pytest.approx(1.0 / 3.0, abs=1e-10)
    assert p.p01 == pytest.approx(2.0 / 3.0, abs=1e-10)
    assert p.p10 == pytest.approx(1.0 / 3.0, abs=1e-10)
    assert p.p11 == pytest.approx(2.0 / 3.0, abs=1e-10)


def test_round_trip():
    c = vipar.EffectVector(0.7, 3.2, 1.9, 0.4)
    p = vipar.inverse_gop(c)
    back = vipar.forward_gop(p)
    for name in ("rr0", "or10", "rr11", "gop"):
        assert getattr(back, name) == pytest.approx(getattr(c, name), rel=1e-10)


def test_traced_inversion_reports_diagnostics():
    p, root = vipar.inverse_gop_traced(vipar.EffectVector(1.0, 1.0, 1.0, 1.0))
    assert root.converged
    assert root.iterations >= 1
    assert p.at(0, 0) == pytest.approx(0.5, abs=1e-12)


def test_rr_op():
    t = vipar.forward_rr_op(vipar.RiskPair(0.6, 0.3))
    assert t.rr == pytest.approx(2.0, rel=1e-12)
    assert t.op == pytest.approx(9.0 / 14.0, rel=1e-12)
    p = vipar.inverse_rr_op(t)
    assert p.p1 == pytest.approx(0.6, abs=1e-10)
    assert p.p0 == pytest.approx(0.3, abs=1e-10)


def test_feasibility():
    assert vipar.check_rr_sr_feasible(2.0, 5.0)
    assert not vipar.check_rr_sr_feasible(0.5, 3.0)
    assert not vipar.check_rr_sr_feasible(0.5, 2.0)  # boundary is excluded


def test_rbc_risk():
    assert vipar.rbc_risk(0.0, 0.0, 1) == pytest.approx(0.5)
    assert vipar.rbc_risk(0.0, math.log(3.0), 1) is None
    assert vipar.rbc_risk(math.log(2.0), 0.0, 0) == pytest.approx(1.0)


def test_predict_and_effects():
    model = vipar.GopRegressionModel([math.log(2.0)], [0.0], [0.0], [0.0])
    c = vipar.effects_at(model, [1.0])
    assert c.rr0 == pytest.approx(2.0, rel=1e-12)
    assert vipar.predict(model, [1.0], 0, 1) == pytest.approx(2.0 / 3.0, abs=1e-10)


def test_simulate_and_fit():
    cfg = vipar.DgpConfig()
    cfg.n = 4000
    cfg.seed = 11
    cfg.outcome_model = vipar.GopRegressionModel([0.4, 0.3], [-0.2, 0.5], [0.3, -0.1], [0.0, 0.2])
    rows = vipar.simulate_dataset(cfg)
    assert len(rows) == 4000
    assert {r.y for r in rows} == {0, 1}

    again = vipar.simulate_dataset(cfg)
    assert all(
        (a.l0, a.a0, a.a1, a.y) == (b.l0, b.a0, b.a1, b.y) for a, b in zip(rows, again)
    )

    x = [[1.0, r.l0] for r in rows]
    fit = vipar.fit_gop(x, [r.a0 for r in rows], [r.a1 for r in rows], [r.y for r in rows])
    assert fit.neg_log_lik > 0
    assert all(b - a <= 0 for a, b in zip(fit.nll_trace, fit.nll_trace[1:]))
    # n = 4000 keeps this quick; the estimate should land in the right region
    assert abs(fit.model.beta_rr0[0] - 0.4) < 0.3


def test_sweeps():
    rep = vipar.sweep_gop_independence(-2.0, 2.0, 3)
    assert rep.ok_count() == 81
    assert rep.fail_count() == 0

    rr = vipar.sweep_rr_sr(4.0, 4.0, 20)
    assert rr.ok_count() + rr.fail_count() == 400

    rbc = vipar.rbc_region(-2.0, 2.0, 10)
    assert rbc.kind == "rbc"
    assert 0 < rbc.ok_count() < 100
