# Copyright 2026 The shangpp Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import shangpp


def test_fd_family():
    assert shangpp.fd_value(4, 0.5) == pytest.approx(0.0625)
    assert shangpp.fd_value(4, 2.0) == pytest.approx(5.0)
    assert shangpp.fd_gradient(16, -1.5) == pytest.approx(-16.0)
    with pytest.raises(ValueError):
        shangpp.fd_value(1, 0.5)


def test_schedule_values():
    s = shangpp.build_schedule(shangpp.Regime.CONVEX, 0.0, 12.0, k=0)
    assert s["alpha"] == pytest.approx(2.0)
    assert s["gamma"] == pytest.approx(48.0)
    assert s["beta"] == pytest.approx(1.0 / 24.0)
    s = shangpp.build_schedule(shangpp.Regime.STRONGLY_CONVEX, 0.25, 1.0, m=1.0)
    assert s["alpha"] == pytest.approx(1.0)
    assert s["beta"] == pytest.approx(2.0)


def test_theorem_bound():
    assert shangpp.theorem_bound(shangpp.RateKind.SHANG_STRONGLY_CONVEX, 0, 1.0,
                                 alpha=0.1) == pytest.approx(1 / 1.1)
    assert shangpp.theorem_bound(shangpp.RateKind.SHANG_CONVEX, 0) == pytest.approx(1 / 3)


def test_mns_constant():
    mean, se = shangpp.empirical_mns_constant(1.0, [1.0], 100000, k=4, shape="scalar")
    assert abs(mean - 0.25) < 0.02
    assert se > 0


def test_monte_carlo_columns_and_csv():
    r = shangpp.run_monte_carlo("f4", "shangpp", sigma=10.0, n_runs=4, n_iters=10, seed=1)
    assert r["k"] == list(range(1, 11))
    assert r["rate"] == "shangpp-convex"
    assert r["csv"].splitlines()[0] == (
        "k,mean_subopt,std_subopt,mean_energy,std_energy,bound,n_runs,diverged_runs")
    assert all(e <= b for e, b in zip(r["mean_energy"], r["bound"]))


def test_sgd_closed_form():
    r = shangpp.run_monte_carlo("quadratic:1", "sgd", n_iters=10, lr=0.1, x0=[1.0])
    assert r["mean_subopt"][-1] == pytest.approx(0.5 * 0.9 ** 20, rel=1e-12)


def test_sweep_anchor():
    rows = shangpp.sigma_sweep("quadratic:0.01;1", "shangpp", [0.0, 0.1], n_runs=8, n_iters=50)
    assert rows[0]["delta"] == 0.0
    assert math.isfinite(rows[1]["delta"])
    with pytest.raises(ValueError):
        shangpp.sigma_sweep("f4", "shang", [0.1])


def test_verify():
    assert "snag-equivalence" in shangpp.suite_names()
    r = shangpp.verify("snag-equivalence")
    assert r["passed"]
    with pytest.raises(ValueError):
        shangpp.verify("foo")
