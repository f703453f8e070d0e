#!/usr/bin/env python3
"""Run the whole attack corpus against both modes at two curve sizes and
print a timing table.

    python scripts/demo_attacks.py [seed]

Useful as a quick end-to-end health check and to eyeball how attack cost
scales with the field size.
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from hyhlab import cli, fixtures, hyh
from hyhlab.hyh import SchemeConfig


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    for fixture in (fixtures.TOY16, fixtures.GOOD):
        params = fixtures.load(fixture)
        print(f"\n=== {fixture}  (q = {params.q}, n = {params.n}) ===")
        print(f"{'attack':<18} {'paper':<22} strict")
        for name in cli.ATTACK_NAMES:
            cells = []
            for mode in (hyh.PAPER, hyh.STRICT):
                config = SchemeConfig(params=params, mode=mode)
                t0 = time.monotonic()
                report = cli.SCENARIOS[name](config, seed)
                elapsed = time.monotonic() - t0
                state = "BROKEN" if report.success else "held"
                cells.append(f"{state} ({elapsed * 1000:7.1f}ms)")
            print(f"{name:<18} {cells[0]:<22} {cells[1]}")


if __name__ == "__main__":
    main()
