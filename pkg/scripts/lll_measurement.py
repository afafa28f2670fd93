"""Run the randomized pipeline on a random regular digon-free digraph and
print the per-round trace plus retention statistics of the first phase."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from dichromatic.coloring import is_valid
from dichromatic.digraph import degree_profile
from dichromatic.generators import gen_random_regular_digonfree
from dichromatic.lll import LLLParams, compute_stats, lll_color, random_phase, uncolor_phase


@dataclass
class MeasurementConfig:
    n: int = 2000
    delta: int = 50
    palette: int = 25
    retention: float = 2.0
    max_rounds: int = 5
    graph_seed: int = 1
    seed: int = 1


def run(cfg: MeasurementConfig) -> dict:
    D = gen_random_regular_digonfree(cfg.n, cfg.delta, cfg.graph_seed)
    a = random_phase(D, cfg.palette, cfg.seed)
    part = uncolor_phase(D, a)
    stats = compute_stats(D, a, part, cfg.retention)
    res = lll_color(D, LLLParams(palette=cfg.palette, retention=cfg.retention, max_rounds=cfg.max_rounds, seed=cfg.seed))
    return {
        "config": asdict(cfg),
        "delta_tilde": degree_profile(D).delta_tilde,
        "phase": {
            "uncolored_fraction": len(part.uncolored()) / D.n,
            "mean_AT": sum(stats.AT) / D.n,
            "mean_Del": sum(stats.Del) / D.n,
            "mean_X": stats.mean_X,
            "min_X": stats.min_X,
            "failed": len(stats.failed()),
        },
        "rounds": [r.line() for r in res.rounds],
        "fallback": res.fallback,
        "fallback_reason": res.fallback_reason,
        "colors_used": res.coloring.num_colors_used(),
        "valid": is_valid(D, res.coloring),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(MeasurementConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    args = p.parse_args()
    print(json.dumps(run(MeasurementConfig(**vars(args))), indent=2))


if __name__ == "__main__":
    main()
