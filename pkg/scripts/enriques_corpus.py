"""Run the Enriques identity over normal forms, A2k curves and random monomial germs."""

import argparse
import random
import time
from dataclasses import dataclass

from monstertower.corpus import a2k_germs, normal_form_generators, random_monomial_germ
from monstertower.enriques import check_enriques
from monstertower.tower import prolong, regularization_level


@dataclass
class CorpusConfig:
    seed: int = 20240601
    random_germs: int = 50
    max_dim: int = 4
    max_mult: int = 6
    extra_levels: int = 2


def corpus(cfg: CorpusConfig):
    for c, g in normal_form_generators(dims=(3,)):
        yield str(c), g
    for k, g in a2k_germs(5):
        yield f"A2k(k={k})", g
    rng = random.Random(cfg.seed)
    for i in range(cfg.random_germs):
        yield f"random #{i}", random_monomial_germ(rng, cfg.max_dim, cfg.max_mult)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=CorpusConfig.seed)
    ap.add_argument("--count", type=int, default=CorpusConfig.random_germs)
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    cfg = CorpusConfig(seed=args.seed, random_germs=args.count)
    start = time.perf_counter()
    germs = failures = identities = 0
    for name, g in corpus(cfg):
        tr = prolong(g, regularization_level(g) + cfg.extra_levels)
        rep = check_enriques(tr)
        germs += 1
        identities += len(rep.checked)
        if not rep.passed:
            failures += 1
            print(f"FAIL {name} {tr.letters}\n{rep.render()}")
        elif args.verbose:
            print(f"ok   {name:<32} {tr.letters:<12} mults {' '.join(map(str, tr.multiplicities))}")
    print(f"{germs} germs, {identities} identities, {failures} failing germs, "
          f"{time.perf_counter() - start:.2f}s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
