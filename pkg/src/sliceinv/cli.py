"""Command-line entry point: ``describe``, ``invariants`` and ``verify``.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .exactring import to_json
from .invariants import FormulaConfig, generators
from .rearrange import free_layer_inputs, run_pipeline
from .strata import appendix_matches, stratify
from .verify import SUITE_ALIASES, SUITES, TrialConfig, numeric_slice_oracle, run_suite, sample_point
from .weyl import ClassRep, representative, s_matrix

SCHEMA = "slice-invariants/1"
SUITE_CHOICES = sorted(SUITES) + sorted(SUITE_ALIASES) + ["all"]


def _grid(m: Sequence[Sequence]) -> str:
    cells = [[str(Fraction(x)) if isinstance(x, (int, Fraction)) else str(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _roots(rs) -> list[str]:
    return [str(r) for r in sorted(rs)]


# --- describe ----------------------------------------------------------------------------

def describe_doc(rep: ClassRep) -> dict:
    st = stratify(rep)
    rows = []
    for r in st.ordered:
        tab = sorted({m.value for m in appendix_matches(rep, r)})
        rows.append({"root": str(r), "d": st.d[r], "class": st.crc[r],
                     "appendix_d": tab, "agree": tab == [st.d[r]]})
    return {
        "schema": SCHEMA,
        "l": rep.l,
        "lprime": rep.lprime,
        "case": rep.case_id,
        "gamma1": [str(g) for g in rep.gamma1],
        "gamma2": [str(g) for g in rep.gamma2],
        "s": [rep.s(i) for i in range(1, rep.n + 1)],
        "D": st.D,
        "delta_s": _roots(st.delta_s),
        "delta_s_inv": _roots(st.delta_s_inv),
        "strata": rows,
    }


def _describe_text(doc: dict, out: TextIO) -> None:
    print(f"l={doc['l']} l'={doc['lprime']} case {doc['case']} D={doc['D']}", file=out)
    print("gamma1: " + " ".join(doc["gamma1"]), file=out)
    print("gamma2: " + " ".join(doc["gamma2"]), file=out)
    print("s: " + " ".join(map(str, doc["s"])), file=out)
    print("Delta_s: " + " ".join(doc["delta_s"]), file=out)
    print("Delta_s^-1: " + " ".join(doc["delta_s_inv"]), file=out)
    print(f"{'root':<10} {'d':>2} {'class':<5} {'table':<6} agree", file=out)
    for row in doc["strata"]:
        tab = ",".join(map(str, row["appendix_d"])) or "-"
        print(f"{row['root']:<10} {row['d']:>2} {row['class']:<5} {tab:<6} {'yes' if row['agree'] else 'NO'}",
              file=out)


def _dump_matrices(rep: ClassRep, seed: int, out: TextIO) -> None:
    st = stratify(rep)
    print("s =", file=out)
    print(_grid(s_matrix(rep)), file=out)
    v, zd = sample_point(TrialConfig(l_max=rep.l, seed=seed), rep, st, "dump")
    res = numeric_slice_oracle(rep, st, v, zd)
    for name, m in (("z'", res.z_prime), ("n", res.n), ("slice", res.slice)):
        print(f"{name} (sample seed {seed}) =", file=out)
        print(_grid(m), file=out)


# --- invariants --------------------------------------------------------------------------

def invariants_doc(rep: ClassRep, config: FormulaConfig) -> dict:
    records = []
    for rec in generators(rep, config=config).records():
        records.append({"kappa": rec["kappa"], "degree": rec["degree"], "terms": rec["terms"],
                        "support": rec["support"], "poly": to_json(rec["poly"]),
                        "text": str(rec["poly"])})
    return {"schema": SCHEMA, "l": rep.l, "lprime": rep.lprime, "variant": config.variant,
            "generators": records}


def _trace(rep: ClassRep, out: TextIO) -> None:
    st = stratify(rep)
    for k in range(2, st.D + 2):
        n_primes, v = free_layer_inputs(st, k)
        res = run_pipeline(st, k, n_primes, v, record=True)
        print(f"# layer {k}", file=out)
        for name, word in res.trace:
            print(f"{name} = " + " ".join(map(str, word)), file=out)
        for a in res.anomalies:
            print(f"anomaly {a}", file=out)


# --- verify ------------------------------------------------------------------------------

def verify_doc(suite: str, cfg: TrialConfig) -> dict:
    t0 = time.perf_counter()
    verdicts = run_suite(suite, cfg)
    counts = {s: sum(v.status == s for v in verdicts) for s in ("pass", "fail", "report-only")}
    return {
        "schema": SCHEMA,
        "suite": suite,
        "config": {"l_min": cfg.l_min, "l_max": cfg.l_max, "trials": cfg.trials, "seed": cfg.seed,
                   "pool": cfg.pool, "mode": cfg.mode, "variant": cfg.formula.variant,
                   "signed_t": cfg.formula.signed_t},
        "summary": counts,
        "seconds": round(time.perf_counter() - t0, 3),
        "verdicts": [v.to_json() for v in verdicts],
    }


# --- argument handling -------------------------------------------------------------------

def _class_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--l", type=int, required=True, help="rank l of SL(l+1)")
    p.add_argument("--lprime", type=int, required=True, help="the class is an (l'+1)-cycle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sliceinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("describe", help="case data, Delta_s, Delta_s^-1 and the strata table")
    _class_args(d)
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.add_argument("--dump-matrices", action="store_true",
                   help="print s and the matrices of one sampled slice reduction")
    d.add_argument("--seed", type=int, default=0, help="seed for --dump-matrices")

    g = sub.add_parser("invariants", help="closed-form generators on Delta_s")
    _class_args(g)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--variant", choices=("corrected", "verbatim"), default="corrected")
    g.add_argument("--trace", action="store_true",
                   help="print every intermediate word of the rewriting engine")

    v = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    v.add_argument("--suite", choices=SUITE_CHOICES, default="all")
    v.add_argument("--l-max", type=int, default=4)
    v.add_argument("--l-min", type=int, default=1)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--pool", type=int, default=9)
    v.add_argument("--mode", choices=("default", "strict"), default="default")
    v.add_argument("--variant", choices=("corrected", "verbatim"), default="corrected")
    v.add_argument("--unsigned-t", action="store_true", help="drop the signs of the T-expressions")
    v.add_argument("--output", help="write the report here instead of stdout")
    return parser


def _check_class(parser: argparse.ArgumentParser, l: int, lp: int) -> None:
    if not 1 <= lp <= l:
        parser.error(f"need 1 <= lprime <= l, got l={l} lprime={lp}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout

    if args.command == "describe":
        _check_class(parser, args.l, args.lprime)
        rep = representative(args.l, args.lprime)
        doc = describe_doc(rep)
        if args.format == "json":
            json.dump(doc, out, indent=2)
            out.write("\n")
        else:
            _describe_text(doc, out)
        if args.dump_matrices:
            _dump_matrices(rep, args.seed, out)
        return 0

    if args.command == "invariants":
        _check_class(parser, args.l, args.lprime)
        rep = representative(args.l, args.lprime)
        if args.trace:
            _trace(rep, out)
        doc = invariants_doc(rep, FormulaConfig(variant=args.variant))
        if args.format == "json":
            json.dump(doc, out, indent=2)
            out.write("\n")
        else:
            for rec in doc["generators"]:
                print(f"{rec['kappa']}  degree={rec['degree']}  terms={rec['terms']}", file=out)
                print(f"  {rec['text']}", file=out)
        return 0

    try:
        cfg = TrialConfig(l_max=args.l_max, l_min=args.l_min, trials=args.trials, seed=args.seed,
                          pool=args.pool, mode=args.mode,
                          formula=FormulaConfig(variant=args.variant, signed_t=not args.unsigned_t))
    except ValueError as exc:
        parser.error(str(exc))
    doc = verify_doc(args.suite, cfg)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    s = doc["summary"]
    print(f"{s['pass']} pass, {s['fail']} fail, {s['report-only']} report-only", file=sys.stderr)
    return 1 if s["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
