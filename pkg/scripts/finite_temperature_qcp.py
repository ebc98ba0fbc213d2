"""Location of the d p_sc / d lambda peak versus temperature and distance."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from _common import parse_config, pyplot, write_csv
from xy_discord import Channel
from xy_discord.analysis import qcp_estimate
from xy_discord.errors import NoPeak


@dataclass(frozen=True)
class Config:
    gamma: float = 1.0
    kts: tuple = (0.01, 0.05, 0.1, 0.15, 0.2)
    rs: tuple = (1, 2, 3)
    lam_lo: float = 0.6
    lam_hi: float = 1.5
    grid_n: int = 64
    out_dir: str = "results/qcp"


def main(cfg: Config) -> None:
    out = Path(cfg.out_dir)
    rows, curves = [], {}
    for ch in (Channel.BPF, Channel.PF):
        for r in cfg.rs:
            for kt in cfg.kts:
                try:
                    est = qcp_estimate(ch, cfg.gamma, 1 / kt, r, (cfg.lam_lo, cfg.lam_hi), cfg.grid_n)
                    lam_star, peak = est
                    curves[ch, r, kt] = (est.lambdas, est.derivatives)
                except NoPeak:
                    lam_star = peak = float("nan")
                print(f"{ch.value:>3} r={r} kT={kt}: lambda* = {lam_star:.4f}")
                rows.append([kt, r, ch.value, lam_star, peak])
    write_csv(out / "qcp.csv", ["kT", "r", "channel", "lambda_star", "peak"], rows)

    plt = pyplot()
    if plt is None:
        return
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for k, ch in enumerate((Channel.BPF, Channel.PF)):
        for r in cfg.rs:
            data = np.array([row for row in rows if row[1] == r and row[2] == ch.value], dtype=object)
            axes[k].plot(data[:, 0].astype(float), data[:, 3].astype(float), "o-", label=f"r = {r}")
        axes[k].axhline(1.0, color="grey", lw=0.6)
        axes[k].set_xlabel("kT")
        axes[k].set_ylabel("lambda*")
        axes[k].set_title(ch.value.upper())
        axes[k].legend()
    fig.tight_layout()
    fig.savefig(out / "qcp.png", dpi=150)
    print(f"wrote {out / 'qcp.png'}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
