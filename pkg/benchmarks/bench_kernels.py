"""Time the compiled and pure-Python truncated multiplication kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also times one end-to-end workload (the Table-1 N=29 identity at q^160)
with each backend swapped in.
"""
import argparse
import random
import timeit

from wronskpi import kernels


def operands(n, bits, density, rng):
    def one():
        return [rng.getrandbits(bits) - (1 << (bits - 1)) if rng.random() < density else 0
                for _ in range(n)]
    return one(), one()


def bench_kernel(fn, a, b, n, repeat):
    return min(timeit.repeat(lambda: fn(a, b, n), number=1, repeat=repeat))


def clear_caches():
    from wronskpi import modular, wronskian
    for mod in (modular, wronskian):
        for obj in vars(mod).values():
            getattr(obj, "cache_clear", lambda: None)()


def bench_identity(fn, repeat):
    from wronskpi.registry import check_identity, default_registry
    rec = next(r for r in default_registry() if r.id == "table1.N29")
    saved = kernels.mul_trunc
    kernels.mul_trunc = fn

    def once():
        clear_caches()
        check_identity(rec, 160)
    try:
        return min(timeit.repeat(once, number=1, repeat=repeat))
    finally:
        kernels.mul_trunc = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = kernels.available_backends()
    rng = random.Random(20240601)
    print(f"backends: {', '.join(impls)}")
    print(f"{'case':<28}" + "".join(f"{k:>12}" for k in impls) + "     speedup")
    for n, bits, dens in ((200, 16, 1.0), (1000, 16, 1.0), (3000, 64, 1.0), (4800, 32, 0.05),
                          (1000, 512, 1.0)):
        a, b = operands(n, bits, dens, rng)
        times = {k: bench_kernel(f, a, b, n, args.repeat) for k, f in impls.items()}
        label = f"n={n} bits={bits} dens={dens}"
        ratio = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<28}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
              + f"  {ratio:>8.1f}x")
    # end-to-end, with memoized series cleared before every run
    times = {k: bench_identity(f, max(1, args.repeat // 2)) for k, f in impls.items()}
    label = "identity table1.N29 @160"
    ratio = times["python"] / times["cython"] if "cython" in times else float("nan")
    print(f"{label:<28}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times.values())
          + f"  {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
