#!/usr/bin/env python3
"""Run the acceptance criteria and the catalog sweep, write JSON reports to a directory.

usage: python3 scripts/run_all_checks.py [--out reports/]
"""

import argparse
import json
import pathlib
import sys
import time
from dataclasses import asdict, dataclass

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "tests"))

from g2homog.cli import envelope, render_json, run_all  # noqa: E402
from test_acceptance import CRITERIA  # noqa: E402


@dataclass
class RunConfig:
    out: str = "reports"
    workers: int = 4


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default=RunConfig.out)
    p.add_argument("--workers", type=int, default=RunConfig.workers)
    cfg = RunConfig(**vars(p.parse_args(argv)))
    out = pathlib.Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    for n, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, detail = fn()
        rows.append({"criterion": n, "status": "pass" if ok else "fail", "detail": detail,
                     "seconds": round(time.perf_counter() - t0, 2)})
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    (out / "acceptance.json").write_text(json.dumps({"config": asdict(cfg), "criteria": rows}, indent=2) + "\n")

    cases = run_all(cfg.workers)
    status = "pass" if all(c["status"] == "pass" for c in cases) else "fail"
    (out / "catalog.json").write_text(render_json(envelope("verify all", {}, status, {"cases": cases})) + "\n")
    print(f"catalog: {sum(c['status'] == 'pass' for c in cases)}/{len(cases)} pass -> {out}/")
    return 0 if status == "pass" and all(r["status"] == "pass" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
