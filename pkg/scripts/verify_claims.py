"""Replay the claim suite and write the report to stdout (text or JSON)."""
from __future__ import annotations

import argparse
import sys

from dichromatic.claims import ClaimConfig, reports_json, reports_text, verify_claims


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--random-instances", type=int, default=200)
    p.add_argument("--structure-max-n", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    args = p.parse_args()
    cfg = ClaimConfig(
        seed=args.seed,
        samples=args.samples,
        random_instances=args.random_instances,
        structure_max_n=args.structure_max_n,
    )
    reports = verify_claims(cfg)
    out = reports_json(reports, args.timings) + "\n" if args.json else reports_text(reports, args.timings)
    sys.stdout.write(out)
    return 1 if any(r.status == "refuted" for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
