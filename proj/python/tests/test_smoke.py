import math

import pytest

import noma_sched as ns


def test_version():
    assert ns.__version__ == "0.1.0"


def test_rates_single_user():
    ch = ns.channel_from_ncr([0.5, 2.0])
    alloc = ns.Allocation([4.0, 0.0])
    r = ns.rates(alloc, ch)
    assert r[0] == pytest.approx(math.log2(1 + 4.0 / 0.5))
    assert r[1] == 0.0
    assert alloc.selected_ids == [0]


def test_sic_order_ties_by_index():
    ch = ns.channel_from_ncr([1.0, 3.0, 1.0])
    assert ns.sic_order(ch) == [1, 0, 2]


def test_interior_split():
    s = ns.two_user_split(0.2, 1.0, 0.4, 0.6, 2.0)
    assert s.last_sic + s.companion == pytest.approx(2.0)
    assert s.last_sic == pytest.approx(1.4)
    assert s.last_sic == pytest.approx(ns.golden_two_user(0.2, 1.0, 0.4, 0.6, 2.0), abs=1e-8)


def test_invalid_order_raises():
    with pytest.raises(ValueError):
        ns.two_user_split(1.0, 0.5, 1.0, 1.0, 1.0)


def test_uspa_vs_oma_and_grid():
    ch = ns.channel_from_ncr([0.05, 0.4, 1.3, 2.2])
    w = [0.3, 0.2, 0.4, 0.1]
    u = ns.uspa_allocate(ch, w, 10.0)
    o = ns.oma_allocate(ch, w, 10.0)
    assert len(u.selected_ids) <= 2
    assert u.total_power == pytest.approx(10.0)
    wu = ns.weighted_sum(ns.rates(u, ch), w)
    wo = ns.weighted_sum(ns.rates(o, ch), w)
    assert wu >= wo - 1e-12
    g = ns.grid_q2(ch, w, 10.0, ns.GridSpec(201, 3))
    assert g.wsr == pytest.approx(ns.weighted_sum(ns.rates(g.allocation, ch), w))
    assert ns.uspa_decide(ch, w, 10.0).wsr == pytest.approx(wu)


def test_dual_update_projects():
    d = ns.DualState.initial(2)
    d = ns.dual_update(d, [1.0, 5.0], [3.0, 2.0], 0.5)
    assert d.t == 1
    assert d.lam == pytest.approx([1.0, 0.0])


def test_config_round_trip_and_error():
    c = ns.ScenarioConfig.qos_scenario()
    c2 = ns.parse_config(c.to_text())
    assert c2.hash() == c.hash()
    with pytest.raises(ns.ConfigError, match=r"users\[0\]\.distance_m"):
        ns.parse_config("user = id=0 weight=1 rbar_bps_hz=1 distance_m=-5\n")


def test_short_oups_run_is_deterministic():
    c = ns.ScenarioConfig.qos_scenario()
    c.slots = 200
    a = ns.run(c, ns.AllocatorKind.uspa)
    b = ns.run(c, ns.AllocatorKind.uspa)
    assert a.avg_rate == b.avg_rate
    assert a.slots == 200
    assert min(a.lam) >= 0.0
    res = ns.run_oups_study(c, [ns.AllocatorKind.uspa, ns.AllocatorKind.oma])
    assert [r.kind for r in res] == [ns.AllocatorKind.uspa, ns.AllocatorKind.oma]
    assert res[0].summary.avg_rate == a.avg_rate


def test_small_gap_study():
    c = ns.ScenarioConfig.gap_scenario()
    c.grid = ns.GridSpec(51, 3)
    rep = ns.run_gap_study(c, 4, threads=1)
    assert len(rep.rows) == 4
    for row in rep.rows:
        assert row.n_sel_uspa <= 2
