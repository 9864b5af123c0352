"""Simplify a list of colour factors and cross-check each against the numeric oracle.

Reads one expression per line from --input (default: a built-in list).
"""

import argparse
import time
from dataclasses import dataclass, field

from sunalg import oracle
from sunalg.expr import to_text
from sunalg.rewrite import simplify

DEFAULT = [
    "Tr[T(a)T(a)]",
    "Tr[T(a)T(b)T(a)T(b)]",
    "Tr[T(a)T(b)T(c)]*Tr[T(a)T(b)T(c)]",
    "Tr[T(a)T(b)T(c)]*Tr[T(c)T(b)T(a)]",
    "f(a,b,c)*f(a,b,c)",
    "d(a,b,c)*d(a,b,c)",
    "TrAdj[F(a)F(b)F(a)F(b)]",
    "TrAdj[F(a)F(b)F(c)F(d)]*TrAdj[F(a)F(b)F(c)F(d)]",
    "TrAdj[D(a)D(b)D(c)]*d(a,b,c)",
    "T(a;i,j)*T(b;j,k)*T(a;k,l)*T(b;l,m)",
]


@dataclass
class Config:
    exprs: list = field(default_factory=lambda: list(DEFAULT))
    check_n: tuple = (2, 3, 4, 5)
    samples: int = 50
    seed: int = 0


def main(cfg: Config) -> int:
    bad = 0
    for text in cfg.exprs:
        t0 = time.perf_counter()
        out = simplify(text)
        dt = time.perf_counter() - t0
        cmp = oracle.equal_by_sampling(text, out, cfg.check_n, cfg.samples, seed=cfg.seed)
        bad += not cmp.equal
        mark = "ok " if cmp.equal else "BAD"
        print(f"{mark} {dt:6.3f}s  {text}\n      = {to_text(out)}")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--input", help="file with one expression per line")
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    cfg = Config(seed=a.seed)
    if a.input:
        with open(a.input) as fh:
            cfg.exprs = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    raise SystemExit(main(cfg))
