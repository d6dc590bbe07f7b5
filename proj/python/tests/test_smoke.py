# Copyright 2026 The irs-isac Authors
# SPDX-License-Identifier: Apache-2.0

import csv
import io
import json
import math

import numpy as np
import pytest

import irs_isac as isac


def test_channels_are_deterministic():
    a = isac.gen_channels(7, M=4, N=4, K=2)
    b = isac.gen_channels(7, M=4, N=4, K=2)
    assert a.digest() == b.digest()
    assert a.G.shape == (4, 4)
    assert len(a.h_d) == 2 and a.h_d[0].shape == (4,)
    assert isac.gen_channels(8, M=4, N=4, K=2).digest() != a.digest()


def test_crb_closed_form():
    eye = np.eye(2, dtype=complex)
    assert isac.crb(eye, eye, 1.0, 1) == pytest.approx(4.0)
    with pytest.raises(ArithmeticError):
        isac.crb(eye, np.zeros((2, 2), dtype=complex), 1.0, 1)


def test_sensing_only_bound_matches_numpy():
    rng = np.random.default_rng(0)
    G = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    s = np.linalg.eigvalsh(G @ G.conj().T)
    assert isac.sensing_only_bound(G, 2.0) == pytest.approx(np.sum(s ** -0.5) ** 2 / 2.0)


def test_transmit_step_is_feasible():
    ch = isac.gen_channels(3, M=4, N=4, K=2)
    p = isac.SystemParams(30.0, 10.0, 2, 256)
    phases = np.zeros(4)
    r = isac.transmit_step(ch, phases, p)
    assert r.feasible
    h = isac.combined_channel(ch, phases)
    s = isac.sinr(r.w, r.R0, h, ch.sigma_k2)
    assert np.all(s >= p.gamma * (1 - 1e-5))
    power = sum(np.vdot(w, w).real for w in r.w) + np.trace(r.R0).real
    assert power <= p.P0 * (1 + 1e-6)


def test_alternating_optimization_beats_fixed_phases():
    ch = isac.gen_channels(5, M=4, N=4, K=2)
    p = isac.SystemParams(30.0, 10.0, 2, 256)
    ao = isac.alternating_optimize(ch, p, seed=5, n_randomizations=32)
    fixed = isac.benchmark_transmit_only(ch, p, seed=5, n_randomizations=32)
    assert ao.status in ("converged", "iter_cap")
    assert ao.crb <= fixed.crb * (1 + 1e-9)
    assert all(b <= a for a, b in zip(ao.crb_trace, ao.crb_trace[1:]))
    sep = isac.benchmark_separate(ch, p, seed=5, receiver_type="II", n_randomizations=32)
    assert sep.status in ("converged", "iter_cap", "infeasible")


def test_empirical_mse_tracks_crb():
    ch = isac.gen_channels(2, M=4, N=4, K=1)
    p = isac.SystemParams(30.0, 5.0, 1, 64)
    ao = isac.alternating_optimize(ch, p, seed=2, n_randomizations=16)
    H = isac.random_target(4, 3)
    mse, bound = isac.empirical_mse(ch, ao.phases, ao.w, ao.R0, H, 64, 400, 4)
    assert mse == pytest.approx(bound, rel=0.1)


def test_config_and_sweep():
    with pytest.raises(ValueError):
        isac.validate_config('{"nope": 1}')
    cfg = {
        "dims": {"M": 4, "N": 4, "K": 1, "T": 64},
        "gamma_grid_db": [5],
        "schemes": ["proposed", "transmit_only"],
        "receiver_types": ["II"],
        "n_trials": 2,
        "ao": {"n_randomizations": 16},
    }
    canon = json.loads(isac.validate_config(json.dumps(cfg)))
    assert canon["dims"]["M"] == 4
    text = isac.run_sweep(json.dumps(cfg))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 4
    assert {r["scheme"] for r in rows} == {"proposed", "transmit_only"}
    summary = json.loads(isac.summarize(text))["aggregates"]
    assert len(summary) == 2
    assert all(math.isfinite(a["mean_crb_db"]) for a in summary)
