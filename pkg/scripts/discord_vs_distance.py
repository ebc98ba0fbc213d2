"""Discord at fixed p as a function of site separation r."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _common import parse_config, pyplot, write_csv
from xy_discord import Channel, ModelParams
from xy_discord.analysis import discord_decay_profile


@dataclass(frozen=True)
class Config:
    gamma: float = 0.7
    p: float = 0.05
    r_max: int = 8
    lambdas: tuple = (0.5, 0.7, 0.9, 1.1, 1.3)
    out_dir: str = "results/distance"


def main(cfg: Config) -> None:
    out = Path(cfg.out_dir)
    plt = pyplot()
    if plt is not None:
        fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for k, ch in enumerate((Channel.BPF, Channel.PF)):
        rows = []
        for lam in cfg.lambdas:
            prof = discord_decay_profile(ModelParams(lam, cfg.gamma), ch, cfg.p, cfg.r_max)
            rows += [[lam, r, q] for r, q in prof]
            print(f"{ch.value:>3} lambda={lam}: Q(r_max)/Q(1) = {prof[-1][1] / prof[0][1]:.4g}")
            if plt is not None:
                axes[k].semilogy([r for r, _ in prof], [q for _, q in prof], "s-", label=f"lambda = {lam}")
        write_csv(out / f"{ch.value}.csv", ["lambda", "r", "Q"], rows)
        if plt is not None:
            axes[k].set_xlabel("r")
            axes[k].set_ylabel("Q")
            axes[k].set_title(f"{ch.value.upper()}, p = {cfg.p}")
            axes[k].legend()
    if plt is not None:
        fig.tight_layout()
        fig.savefig(out / "distance.png", dpi=150)
        print(f"wrote {out / 'distance.png'}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
