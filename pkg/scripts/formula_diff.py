"""Compare the literal recursion with the corrected sweep form, root by root.

For each class the generators of both forms are built symbolically and every
root of layer >= 2 whose polynomials differ is listed with the difference.
"""

import argparse

from sliceinv.exactring import var_c, var_cp
from sliceinv.invariants import evaluate_terms, layer_terms
from sliceinv.strata import stratify
from sliceinv.weyl import representative


def _letter(letter):
    kind, alpha = letter
    return var_cp(alpha) if kind == "cp" else var_c(alpha)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l-max", type=int, default=6)
    ap.add_argument("--show", type=int, default=3, help="differences printed per class")
    args = ap.parse_args()

    for l in range(1, args.l_max + 1):
        for k in range(1, l + 1):
            st = stratify(representative(l, k))
            diffs = []
            for layer in range(2, st.D + 2):
                a = layer_terms(st, layer, "verbatim")
                b = layer_terms(st, layer, "corrected")
                for kap in sorted(a, key=st.key):
                    pa, pb = evaluate_terms(a[kap], _letter, 0), evaluate_terms(b[kap], _letter, 0)
                    if pa != pb:
                        diffs.append((kap, layer, pa - pb))
            size = sum(len(st.layer(j)) for j in range(2, st.D + 2))
            print(f"l={l} l'={k}: {len(diffs)}/{size} roots differ")
            for kap, layer, d in diffs[:args.show]:
                print(f"    {kap} (layer {layer}, {st.crc[kap]}): literal - corrected = {d}")


if __name__ == "__main__":
    main()
