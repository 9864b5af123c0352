"""Simplify a seeded random corpus and compare every result with the oracle.

Reports counterexamples, the slowest inputs and the size of the normal forms.
"""

import argparse
import time
from dataclasses import dataclass

from sunalg import oracle
from sunalg.corpus import corpus
from sunalg.expr import to_text
from sunalg.rewrite import simplify


@dataclass
class Config:
    size: int = 200
    seed: int = 2024
    max_factors: int = 4
    samples: int = 50
    debug: bool = True  # assert the termination measure on every rule application


def main(cfg: Config) -> int:
    timings, bad, terms = [], [], 0
    for text in corpus(cfg.size, cfg.seed, max_factors=cfg.max_factors):
        t0 = time.perf_counter()
        out = simplify(text, debug=cfg.debug)
        timings.append((time.perf_counter() - t0, text))
        terms += len(out.terms)
        cmp = oracle.equal_by_sampling(text, out, (2, 3, 4, 5), cfg.samples)
        if not cmp.equal:
            bad.append((text, to_text(out), cmp))
    timings.sort(reverse=True)
    print(f"{cfg.size} expressions, {len(bad)} counterexamples, "
          f"{terms / cfg.size:.1f} terms per normal form, total {sum(t for t, _ in timings):.1f}s")
    for t, text in timings[:5]:
        print(f"  {t:6.3f}s  {text}")
    for text, out, cmp in bad:
        print(f"COUNTEREXAMPLE {text}\n  -> {out}\n  witness {cmp.witness}")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--size", type=int, default=Config.size)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--max-factors", type=int, default=Config.max_factors)
    p.add_argument("--samples", type=int, default=Config.samples)
    a = p.parse_args()
    raise SystemExit(main(Config(a.size, a.seed, a.max_factors, a.samples)))
