"""Print C_F, C_3F, C_A and the D.D scalar for a range of N, with residuals and timing."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from sunalg import basis
from sunalg.adjoint import adjoint_casimirs, build_adjoint


@dataclass
class Config:
    n_min: int = 2
    n_max: int = 8


def row(n: int) -> dict:
    t0 = time.perf_counter()
    b = basis.build_basis(n)
    f, d = basis.extract_f(b), basis.extract_d(b)
    c2, cf = basis.casimir2_defining(b)
    c3, c3f = basis.casimir3_defining(b, d)
    cas = adjoint_casimirs(build_adjoint(f, d))
    eye = np.eye(n)
    res = max(float(np.max(np.abs(c2 - float(cf) * eye))),
              float(np.max(np.abs(c3 - float(c3f) * eye))), cas.fd_residual)
    return dict(n=n, cf=cf, c3f=c3f, ca=cas.c_a, dd=cas.dd_scalar, res=res,
                secs=time.perf_counter() - t0)


def main(cfg: Config):
    print(f"{'N':>2} {'C_F':>7} {'C_3F':>9} {'C_A':>4} {'DD':>7} {'residual':>10} {'secs':>6}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        r = row(n)
        print(f"{r['n']:>2} {str(r['cf']):>7} {str(r['c3f']):>9} {str(r['ca']):>4} "
              f"{str(r['dd']):>7} {r['res']:10.2e} {r['secs']:6.3f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=Config.n_min)
    p.add_argument("--n-max", type=int, default=Config.n_max)
    a = p.parse_args()
    main(Config(a.n_min, a.n_max))
