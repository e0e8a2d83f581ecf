"""Classify every normal form generator and show the order equations it must satisfy."""

import argparse

from monstertower.classify import classify_germ, normal_form_jet_order
from monstertower.cli import render_germ
from monstertower.corpus import normal_form_generators


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-param", type=int, default=3)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()
    params = tuple(range(1, args.max_param + 1))
    bad = 0
    for c, g in normal_form_generators(params=params, trailing=(0, 1, 2), dims=tuple(args.dims)):
        got, rep = classify_germ(g, len(c.word))
        ok = got == c and rep.consistent
        bad += not ok
        checks = ", ".join(f"{ch.name}={ch.actual}" for ch in rep.checks)
        jet = normal_form_jet_order(c)
        print(f"{'ok ' if ok else 'BAD'} n={g.dim} {c.word:<12} {render_germ(g):<32} "
              f"+ O(t^{jet})  {checks}  simple={c.simple}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
