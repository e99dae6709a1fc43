"""Time the hot kernels on the numba and numpy backends.

Two stages are timed separately: tracing the beam fan to the receiver line
(RK4 plus crossing search) and the beam sum over receivers.  Each stage is
warmed up once so JIT compilation is excluded, then the best of ``--repeat``
runs is reported along with the max difference between backends.

    python benchmarks/bench_kernels.py --omega 400 --receivers 2000
"""

import argparse
import time

import numpy as np

import gbl
from gbl import _accel
from gbl import medium as media
from gbl import sources as srcs
from gbl import superposition as sp


def best_of(fn, repeat):
    fn()  # warm-up (compiles on the numba path)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def run(backend, args):
    gbl.set_backend(backend)
    med = media.waveguide(domain=(-6.0, 6.0, -1.0, 4.0))
    xs = np.linspace(-2.0, 2.0, args.receivers)
    cfg = sp.SuperposConfig(omega=args.omega, receiver_xs=xs, y_star=2.0)
    t_trace, bundle = best_of(lambda: sp.plane_wave_bundle(med, cfg, srcs.flat(), workers=args.workers),
                              args.repeat)
    t_sum, field = best_of(lambda: sp.field_discrete(bundle, workers=args.workers).values, args.repeat)
    return {"trace": t_trace, "sum": t_sum, "beams": len(bundle), "field": field}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--omega", type=float, default=400.0)
    p.add_argument("--receivers", type=int, default=2000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    res = {b: run(b, args) for b in backends}
    print(f"omega {args.omega:g}, {res['numpy']['beams']} beams, {args.receivers} receivers, "
          f"{args.workers} worker(s)")
    print(f"{'backend':<8} {'trace [s]':>10} {'sum [s]':>10}")
    for b in backends:
        print(f"{b:<8} {res[b]['trace']:>10.3f} {res[b]['sum']:>10.3f}")
    if "numba" in res:
        a, n = res["numpy"], res["numba"]
        print(f"speedup  {a['trace'] / n['trace']:>9.1f}x {a['sum'] / n['sum']:>9.1f}x")
        print(f"max |u_numba - u_numpy| = {np.max(np.abs(a['field'] - n['field'])):.2e}")
    else:
        print("numba not installed; numpy backend only")


if __name__ == "__main__":
    main()
