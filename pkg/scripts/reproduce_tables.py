#!/usr/bin/env python3
"""Recompute all four reference tables and write them with diff reports.

Output lands in out/ (CSV per table plus a one-line verdict each).  The
run is the library's headline experiment: every cell of every table is
recomputed from scratch in exact rational arithmetic and compared with
the pinned fixtures.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from kuniform.tables import TABLE_IDS, diff_table, format_n_range  # noqa: E402


def main() -> int:
    out_dir = ROOT / "out"
    out_dir.mkdir(exist_ok=True)
    all_match = True
    for table_id in TABLE_IDS:
        start = time.monotonic()
        diff = diff_table(table_id)
        elapsed = time.monotonic() - start
        path = out_dir / f"table_{table_id}.csv"
        if table_id == "IV":
            lines = ["d1,d2,threshold_n,shadow_certified_n"]
            lines += [
                f"{d1},{d2},{thr},{' '.join(map(str, ns))}"
                for d1, d2, thr, ns in diff.computed
            ]
        else:
            lines = ["N_range,k_max"]
            lines += [
                f"{format_n_range(lo, hi)},{k}" for lo, hi, k in diff.computed
            ]
        path.write_text("\n".join(lines) + "\n")
        verdict = "MATCH" if diff.match else f"{len(diff.diffs)} DIFFS"
        print(f"table {table_id}: {verdict} ({elapsed:.1f}s) -> {path}")
        for cell in diff.diffs:
            print(f"  {cell.where}: expected {cell.expected}, computed {cell.computed}")
        all_match = all_match and diff.match
    return 0 if all_match else 1


if __name__ == "__main__":
    sys.exit(main())
