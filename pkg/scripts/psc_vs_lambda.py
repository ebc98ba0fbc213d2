"""Sudden-change time and its derivative across the field and anisotropy axes."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from _common import parse_config, pyplot, write_csv
from xy_discord import Channel, ModelParams
from xy_discord.analysis import psc_derivative, sudden_change_point
from xy_discord.errors import DegenerateState, DomainEdge


@dataclass(frozen=True)
class Config:
    gamma: float = 0.7
    lam: float = 0.7
    lam_lo: float = 0.05
    lam_hi: float = 1.5
    gamma_lo: float = -1.0
    gamma_hi: float = 1.0
    n: int = 146
    h: float = 1e-4
    out_dir: str = "results/psc"


def scan(params_of, xs, ch, wrt, h):
    rows = []
    for x in xs:
        params = params_of(float(x))
        try:
            p_sc = sudden_change_point(params, 1, ch).p_sc
        except DegenerateState:
            p_sc = None
        try:
            deriv = psc_derivative(params, 1, ch, wrt, h)
        except DomainEdge:
            deriv = float("nan")
        rows.append([float(x), float("nan") if p_sc is None else p_sc, deriv])
    return rows


def main(cfg: Config) -> None:
    out = Path(cfg.out_dir)
    lams = np.linspace(cfg.lam_lo, cfg.lam_hi, cfg.n)
    gammas = np.linspace(cfg.gamma_lo, cfg.gamma_hi, cfg.n)
    results = {}
    for ch in (Channel.BPF, Channel.PF):
        results[ch, "lambda"] = scan(lambda x: ModelParams(x, cfg.gamma), lams, ch, "lambda", cfg.h)
        results[ch, "gamma"] = scan(lambda x: ModelParams(cfg.lam, x), gammas, ch, "gamma", cfg.h)
        for wrt in ("lambda", "gamma"):
            write_csv(out / f"{ch.value}_vs_{wrt}.csv", ["x", "p_sc", "dpsc_dx"], results[ch, wrt])

    plt = pyplot()
    if plt is None:
        return
    fig, axes = plt.subplots(2, 2, figsize=(10, 8))
    for i, ch in enumerate((Channel.BPF, Channel.PF)):
        for j, wrt in enumerate(("lambda", "gamma")):
            data = np.array(results[ch, wrt])
            ax = axes[i, j]
            ax.plot(data[:, 0], data[:, 1], "-")
            ax.set_xlabel(wrt)
            ax.set_ylabel("p_sc")
            ax.set_title(ch.value.upper())
            inset = ax.inset_axes([0.12, 0.55, 0.35, 0.35] if wrt == "lambda" else [0.6, 0.12, 0.35, 0.35])
            inset.plot(data[:, 0], data[:, 2], "-", lw=0.8)
            inset.set_title("d p_sc / d " + wrt, fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "psc.png", dpi=150)
    print(f"wrote {out / 'psc.png'}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
