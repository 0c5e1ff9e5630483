"""Benchmark: compiled Cython kernel vs pure-Python fallback.

Runs the hot algebra primitives on a realistic mix of queries, and the
full pipeline on a couple of corpus knots, under both kernels.  The
kernels are selected per subprocess via the UVKNOT_PURE environment
variable so the comparison is honest.

Usage:  python benchmarks/bench_kernel.py
"""

import json
import os
import subprocess
import sys
import textwrap

WORK = textwrap.dedent(
    """
    import json, time
    from uvknot import kernel
    from uvknot.corpus import knot
    from uvknot.diagram import orient
    from uvknot.tensor import pipeline
    from uvknot.rings import F2_RING, Z_RING

    res = {"impl": kernel.KERNEL_IMPL}

    # microbenchmark: nonzero tests across a spread of states and weights
    import itertools, random
    rng = random.Random(0)
    strands = 8
    states = []
    for combo in itertools.combinations(range(strands + 1), 4):
        m = 0
        for p in combo:
            m |= 1 << p
        states.append(m)
    queries = []
    for _ in range(4000):
        x, y = rng.choice(states), rng.choice(states)
        base = kernel.min_w2(x, y, strands)
        w2 = tuple(b + 2 * rng.randrange(0, 3) for b in base)
        queries.append((x, y, w2))
    kernel.clear_caches()
    t0 = time.perf_counter()
    for _ in range(5):
        for x, y, w2 in queries:
            kernel.is_nonzero(strands, x, y, w2)
    res["nonzero_s"] = time.perf_counter() - t0

    # pipeline benchmark
    for name in ("figure8", "granny"):
        od = orient(knot(name))
        kernel.clear_caches()
        t0 = time.perf_counter()
        for _ in range(10):
            pipeline(od, F2_RING)
        res[f"pipeline_{name}_s"] = (time.perf_counter() - t0) / 10
    print(json.dumps(res))
    """
)


def run(pure: bool):
    env = dict(os.environ)
    if pure:
        env["UVKNOT_PURE"] = "1"
    else:
        env.pop("UVKNOT_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", WORK], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    compiled = run(pure=False)
    pure = run(pure=True)
    if compiled["impl"] == pure["impl"]:
        print("note: compiled kernel unavailable; both runs used", compiled["impl"])
    print(f"{'benchmark':26s} {'compiled':>12s} {'pure':>12s} {'speedup':>9s}")
    for key in sorted(compiled):
        if key == "impl":
            continue
        c, p = compiled[key], pure[key]
        print(f"{key:26s} {c:12.4f} {p:12.4f} {p / c:8.2f}x")


if __name__ == "__main__":
    main()
