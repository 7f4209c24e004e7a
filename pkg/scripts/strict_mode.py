"""Run the numeric checks with the moved-index scalar of z' sampled freely."""

import argparse
from collections import Counter

from sliceinv.verify import TrialConfig, check_closed_form, check_invariance, check_transport


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=6)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for mode in ("default", "strict"):
        cfg = TrialConfig(l_max=args.l_max, trials=args.trials, seed=args.seed, mode=mode)
        for check in (check_transport, check_closed_form, check_invariance):
            vs = [v for v in check(cfg) if v.status != "report-only"]
            counts = Counter(v.status for v in vs)
            failed = [f"({v.params['l']},{v.params['lprime']})" for v in vs if v.failed]
            print(f"{mode:<8} {check.__name__:<20} pass={counts['pass']} fail={counts['fail']} "
                  + (" ".join(failed) if failed else ""))


if __name__ == "__main__":
    main()
