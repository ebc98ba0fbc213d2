"""I, C and Q versus parametrised time p for each channel and sign of gamma."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _common import parse_config, pyplot, write_csv
from xy_discord import Channel, ModelParams
from xy_discord.analysis import default_p_grid, trajectory


@dataclass(frozen=True)
class Config:
    lam: float = 0.7
    gamma: float = 0.7
    kt: float = 0.0
    r: int = 1
    p_points: int = 501
    out_dir: str = "results/dynamics"


def main(cfg: Config) -> None:
    out = Path(cfg.out_dir)
    plt = pyplot()
    if plt is not None:
        fig, axes = plt.subplots(2, 3, figsize=(12, 7), sharex=True)
    for row, gamma in enumerate((cfg.gamma, -cfg.gamma)):
        params = ModelParams.from_kt(cfg.lam, gamma, cfg.kt)
        for col, ch in enumerate((Channel.BPF, Channel.BF, Channel.PF)):
            traj = trajectory(params, cfg.r, ch, default_p_grid(cfg.p_points))
            sc = traj.sudden_change
            p_sc = None if sc is None else sc.p_sc
            print(f"{ch.value:>3} gamma={gamma:+.2f}: p_sc = {p_sc}")
            write_csv(out / f"{ch.value}_gamma{gamma:+.2f}.csv", ["p", "I", "C", "Q", "branch"],
                      [list(pt) for pt in traj.points])
            if plt is not None:
                ax = axes[row, col]
                ax.plot(traj.column("p"), traj.column("I"), "-", label="I")
                ax.plot(traj.column("p"), traj.column("C"), "--", label="C")
                ax.plot(traj.column("p"), traj.column("Q"), "-.", label="Q")
                if p_sc is not None:
                    ax.axvline(p_sc, color="grey", lw=0.6)
                ax.set_title(f"{ch.value.upper()}, gamma = {gamma:+.2f}")
                ax.set_xlabel("p")
    if plt is not None:
        axes[0, 0].legend()
        fig.tight_layout()
        fig.savefig(out / "dynamics.png", dpi=150)
        print(f"wrote {out / 'dynamics.png'}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
