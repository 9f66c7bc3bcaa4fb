"""Compare the compiled and pure-Python chain kernels.

Times (1) a single long constrained chain and (2) a full nested-sampling run
for each built-in model, and checks that both backends return the same
evidence bit for bit.

    python benchmarks/bench_kernel.py [--steps 20000] [--n-live 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

from geonest.kernel import AVAILABLE, ChainRunner
from geonest.mh import draw_chain_randoms
from geonest.models import build_model
from geonest.proposal import make_layout, suggest_scales
from geonest.sampler import SamplerConfig, run
from geonest.space import sample_prior

MODELS = ("von_mises", "edge_bimodal_torus", "vmf_sphere", "antipodal_vmf_mixture",
          "gaussian_box")


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_chain(name, steps, repeat):
    model = build_model(name)
    layout = make_layout(model.space, suggest_scales(model.space))
    rng = np.random.default_rng(0)
    start = sample_prior(model.space, rng)
    normals, uniforms = draw_chain_randoms(rng, steps, layout.n_normals)
    row = {}
    for backend in AVAILABLE:
        runner = ChainRunner(layout, model, backend)
        row[backend] = best_of(
            lambda: runner.evolve(start, model(start.tolist()), -np.inf, normals, uniforms,
                                  lambda: rng.standard_normal(3).tolist()), repeat)
    return row


def bench_run(name, n_live, repeat):
    model = build_model(name)
    cfg = SamplerConfig(n_live=n_live, seed=1)
    return {b: best_of(lambda: run(cfg, model.space, model, posterior_count=0, backend=b),
                       repeat) for b in AVAILABLE}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=20_000)
    ap.add_argument("--n-live", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if "cython" not in AVAILABLE:
        print("compiled kernel not built; only the python backend is timed")
    print(f"{'model':24s} {'what':10s} " + " ".join(f"{b:>10s}" for b in AVAILABLE)
          + "   speedup  identical")
    for name in MODELS:
        for what, row in (("chain", bench_chain(name, args.steps, args.repeat)),
                          ("run", bench_run(name, args.n_live, args.repeat))):
            times = [row[b][0] for b in AVAILABLE]
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
            outs = [row[b][1] for b in AVAILABLE]
            if what == "chain":
                same = all(np.array_equal(o[0], outs[0][0]) and o[1] == outs[0][1] for o in outs)
            else:
                same = all(o.log_z == outs[0].log_z for o in outs)
            print(f"{name:24s} {what:10s} " + " ".join(f"{t:9.4f}s" for t in times)
                  + f"  {speed}  {same}")


if __name__ == "__main__":
    main()
