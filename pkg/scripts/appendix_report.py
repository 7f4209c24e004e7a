"""List every root where the tabulated d-value disagrees with brute force."""

import argparse
from collections import Counter

from sliceinv.strata import appendix_discrepancies, stratify
from sliceinv.weyl import representative


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=8)
    ap.add_argument("--quiet", action="store_true", help="only the per-class summary")
    args = ap.parse_args()

    total = bad = 0
    by_class: Counter = Counter()
    for l in range(1, args.l_max + 1):
        for k in range(1, l + 1):
            rep = representative(l, k)
            st = stratify(rep)
            found = appendix_discrepancies(rep, st)
            total += len(st.kplus)
            bad += len(found)
            for x in found:
                by_class[st.crc[x.root]] += 1
            print(f"l={l} l'={k} case {rep.case_id}: {len(found)}/{len(st.kplus)} disagree")
            if not args.quiet:
                for x in found:
                    print(f"    {x.root} ({st.crc[x.root]}): d={x.d} table={list(x.tabulated) or 'no row'}")
    print(f"total: {bad}/{total} roots disagree; by class: {dict(sorted(by_class.items()))}")


if __name__ == "__main__":
    main()
