#!/usr/bin/env python3
# Copyright 2026 The fluxctl Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the test fixtures. Independent of the C++ code."""

import json
import math
import pathlib

import numpy as np
from scipy import constants as c

HERE = pathlib.Path(__file__).parent


def line_budget():
    # Hand evaluation of the drive and line-noise chain at -50 dB.
    m01 = 2.643670181847198  # |<0|phi|1>| at half flux, from the spectrum sweep
    e_l = 0.5e9 * c.h        # J
    mutual, z0, v0, att_db, noise_dbm = 2e-12, 50.0, 0.5, -50.0, -130.0
    phi0 = c.h / (2 * c.e)
    alpha = 10 ** (att_db / 20)
    dphi = 2 * math.pi * mutual * alpha * v0 / (phi0 * z0)
    rabi_hz = e_l * dphi * m01 / c.h
    s_vv = 0.5 * 10 ** ((noise_dbm - 30) / 10) * z0  # V^2/Hz, double-sided
    coupling = 2 * math.pi * e_l * mutual * alpha / (phi0 * z0)
    gamma = coupling ** 2 * m01 ** 2 * s_vv / c.hbar ** 2
    return {
        "attenuation_db": att_db, "m01": m01, "v0": v0,
        "phase_amplitude_rad": dphi,
        "rabi_mhz": rabi_hz / 1e6,
        "s_vv_v2_per_hz": s_vv,
        "t1_line_us": 1e6 / gamma,
        "max_dc_excursion_phi0": dphi / (2 * math.pi),
    }


def reset_mixture(seed=2024, n=20000, weight=0.02, sep=4.0):
    rng = np.random.default_rng(seed)
    excited = rng.random(n) < weight
    x = rng.normal(0.0, 1.0, n) + sep * excited
    return x, excited.mean()


def t1_curve():
    t = np.linspace(0.0, 1000.0, 101)
    a, b, te, tq, nq = 1.0, 0.0, 150.0, 30.0, 1.0
    p = a * np.exp(-t / te) * np.exp(nq * (np.exp(-t / tq) - 1.0)) + b
    return t, p, {"A": a, "B": b, "T_exp_us": te, "T_qp_us": tq, "n_qp": nq}


def main():
    (HERE / "line_budget_m50.json").write_text(json.dumps(line_budget(), indent=2) + "\n")

    x, realized = reset_mixture()
    with open(HERE / "reset_mixture_2pct.csv", "w") as f:
        f.write("signal\n")
        for v in x:
            f.write(f"{v:.9g}\n")
    (HERE / "reset_mixture_2pct.json").write_text(
        json.dumps({"weight_e": 0.02, "realized_fraction": realized, "separation_sigma": 4.0}, indent=2) + "\n")

    t, p, params = t1_curve()
    with open(HERE / "t1_synthetic.csv", "w") as f:
        f.write("t_us,value\n")
        for ti, pi in zip(t, p):
            f.write(f"{ti:.17g},{pi:.17g}\n")
    (HERE / "t1_synthetic.json").write_text(json.dumps(params, indent=2) + "\n")

    (HERE / "malformed.csv").write_text("t_us,value\n0,1\n1,0.9\n2,oops\n")


if __name__ == "__main__":
    main()
