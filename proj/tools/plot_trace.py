#!/usr/bin/env python3
# Copyright 2026 The dacbf Authors
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

"""Plot one or more trace directories written by `dacbf_sim run`.

    tools/plot_trace.py out/proposed out/baseline -o traces.png
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def load(d):
    d = Path(d)
    steps = pd.read_csv(d / "steps.csv")
    epochs_path = d / "epochs.csv"
    epochs = pd.read_csv(epochs_path) if epochs_path.exists() else pd.DataFrame()
    return steps, epochs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("dirs", nargs="+", help="trace directories")
    ap.add_argument("-o", "--output", default="traces.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(4, 1, figsize=(8, 11), sharex=True)
    for d in args.dirs:
        steps, epochs = load(d)
        label = Path(d).name
        ax[0].plot(steps.t, steps.h, label=label)
        ax[1].plot(steps.t, steps.u, label=f"{label} u")
        ax[1].plot(steps.t, steps.u_nom, "--", lw=0.8, label=f"{label} u_nom")
        ax[2].plot(steps.t, steps.d_hat, label=label)
        if not epochs.empty:
            ax[2].fill_between(epochs.t, epochs.lo, epochs.hi, step="post", alpha=0.25)
        ax[3].semilogy(steps.t, steps.d_e.clip(lower=1e-12), label=label)

    ax[0].axhline(0.0, color="k", lw=0.6)
    ax[0].set_ylabel("h")
    ax[1].set_ylabel("input [m/s^2]")
    ax[2].set_ylabel("delay estimate / bounds [s]")
    ax[3].set_ylabel("robust margin d_e")
    ax[3].set_xlabel("t [s]")
    for a in ax:
        a.grid(True, alpha=0.3)
        a.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.output, dpi=120)


if __name__ == "__main__":
    main()
