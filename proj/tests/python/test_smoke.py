"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import lasnet as ln

FIXTURE = "data/fixtures/tiny3.json"


def test_graph_basics():
    g = ln.DirectedGraph(5, [(0, 1), (1, 0), (2, 3)])
    assert g.n == 5
    assert g.edge_count() == 3
    assert ln.density(g) == pytest.approx(3 / 20)
    census = ln.dyad_census(g)
    assert (census.mutual, census.asymmetric, census.nulls) == (1, 1, 8)
    assert ln.opportunity_ratio(g) == pytest.approx(17 / 3)

    m = g.matrix()
    assert m.shape == (5, 5)
    assert ln.DirectedGraph.from_matrix(m) == g

    with pytest.raises(ln.LasnetError):
        ln.DirectedGraph(3, [(1, 1)])


def test_estimators_and_subset_chain():
    reports = np.full((3, 3, 3), 0, dtype=np.int8)
    for s in range(3):
        np.fill_diagonal(reports[s], -1)
    reports[0, 0, 1] = 1  # 0 says 0->1
    reports[1, 0, 1] = 0  # 1 denies receiving
    reports[1, 1, 2] = 1  # 1 says 1->2
    reports[2, 1, 2] = 1  # 2 confirms receiving
    y = ln.ReportArray.from_array([0, 1, 2], reports)

    union = ln.las_union(y)
    inter = ln.las_intersection(y)
    self_rep = ln.self_report(y)
    assert union.edge(0, 1) and union.edge(1, 2)
    assert not inter.edge(0, 1) and inter.edge(1, 2)
    assert self_rep.edge(0, 1)
    for j in range(3):
        for k in range(3):
            if j == k:
                continue
            assert not inter.edge(j, k) or self_rep.edge(j, k)
            assert not self_rep.edge(j, k) or union.edge(j, k)


def test_theory_values():
    assert ln.critical_density(0.1, 0.3) == pytest.approx(0.3, abs=1e-12)
    r = ln.ErrorRatePair(0.1, 0.1)
    assert ln.edge_error_prob(ln.LasRule.INTERSECTION, r, r, False) == pytest.approx(0.01)
    assert ln.expected_hamming(ln.LasRule.UNION, 10, 90, r) == pytest.approx(17.2)

    grid = ln.critical_density_grid([0.1, 0.2], [0.1, 0.2])
    assert grid["values"].shape == (2, 2)
    assert grid["values"][0, 0] == pytest.approx(0.5)
    assert not grid["perverse"].any()


def test_simulation_and_posterior():
    rng = ln.Rng(11)
    truth = ln.sample_uman_graph(10, [0.1, 0.2, 0.7], rng)
    rates = [
        ln.InformantRates(ln.ErrorRatePair(0.05, 0.1), ln.ErrorRatePair(0.03, 0.4))
        for _ in range(10)
    ]
    y = ln.sample_reports(truth, rates, [], rng)
    samples = ln.sample_posterior(
        y, ln.BnamPriors(), ln.ChainConfig(burn_in=100, samples=200, chains=2, seed=3)
    )
    assert samples.total_draws() == 400
    central = samples.central_graph()
    assert ln.hamming(central, truth) <= 4  # ten accurate informants pin it down

    marg = samples.edge_marginals()
    assert marg.shape == (10, 10)
    assert float(marg.max()) <= 1.0

    report = ln.convergence_report(samples)
    ok = all(
        r.chains_agree if r.degenerate else r.value < 1.1 for r in report.rhats.values()
    )
    assert ok and report.pass_

    dist = ln.hamming_error_distribution(samples, central)
    assert dist.mean == pytest.approx(
        sum(dist.values) / len(dist.values)
    )
    density = ln.density_table(samples)
    assert 0 < density.mean_density < 1


def test_crossover_experiment():
    rows = ln.crossover_experiment(
        20, [0.2, 0.4], ln.ErrorRatePair(0.1, 0.3), 200, 17
    )
    assert len(rows) == 4
    low = {r["rule"]: r["mean_hamming"] for r in rows if r["density"] == 0.2}
    high = {r["rule"]: r["mean_hamming"] for r in rows if r["density"] == 0.4}
    assert low["intersection"] < low["union"]
    assert high["intersection"] > high["union"]


def test_css_io(tmp_path):
    y = ln.load_css(FIXTURE)
    assert y.n == 5 and y.k == 5
    assert y.at(0, 0, 1) == 1
    assert y.at(3, 0, 1) == -1  # absent informant

    out = tmp_path / "copy.txt"
    ln.save_css(y, "advice", str(out))
    again = ln.load_css(str(out))
    assert again.fingerprint() == y.fingerprint()

    with pytest.raises(ln.LasnetError):
        ln.load_css(str(tmp_path / "missing.json"))


def test_posterior_io_round_trip(tmp_path):
    rng = ln.Rng(23)
    truth = ln.sample_uman_graph(6, [0.1, 0.2, 0.7], rng)
    rates = [
        ln.InformantRates(ln.ErrorRatePair(0.1, 0.2), ln.ErrorRatePair(0.05, 0.4))
        for _ in range(6)
    ]
    y = ln.sample_reports(truth, rates, [], rng)
    samples = ln.sample_posterior(
        y, ln.BnamPriors(), ln.ChainConfig(burn_in=10, samples=20, chains=2, seed=9)
    )
    out = tmp_path / "posterior"
    ln.save_posterior(samples, str(out))
    loaded = ln.load_posterior(str(out))
    assert loaded.total_draws() == samples.total_draws()
    assert loaded.central_graph() == samples.central_graph()
