"""Exhaustive lemma checks: counterexample counts per statement and the first few cases."""

import argparse
from collections import defaultdict

from sliceinv.verify import TrialConfig, run_lemma_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=8)
    args = ap.parse_args()

    rows = defaultdict(list)
    for v in run_lemma_suite(TrialConfig(l_max=args.l_max)):
        rows[(v.check_id, v.status)].append(v)
    for (check, status), vs in sorted(rows.items()):
        count = sum(v.counterexample["count"] for v in vs if v.counterexample and "count" in v.counterexample)
        print(f"{check:<40} {status:<12} {len(vs):>3} classes, {count} exceptions")
        if status != "pass":
            for v in vs[:3]:
                if v.counterexample:
                    print(f"    ({v.params['l']},{v.params['lprime']}): {v.counterexample.get('first')}")


if __name__ == "__main__":
    main()
