"""Compare the compiled and numpy kernels on the workloads the verifier runs.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""
import argparse
import time

import numpy as np

from coherence_flow import backend, experiments


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def kernel_cases(rng):
    g = rng.standard_normal((20000, 8, 8)) + 1j * rng.standard_normal((20000, 8, 8))
    herm = g + np.conj(np.swapaxes(g, 1, 2))
    rho = np.broadcast_to(np.eye(2, dtype=complex) / 2, (100000, 2, 2))
    kraus = rng.standard_normal((100000, 4, 2, 2)) + 0j
    joint = rng.standard_normal((100000, 8, 8)) + 0j
    return {
        "eigh 20k x 8x8": lambda k: k.eigh(herm),
        "dilate 100k (d_E=4)": lambda k: k.dilate(rho, kraus),
        "l1_offdiag 100k x 8x8": lambda k: k.l1_offdiag(joint),
    }


def verify_case(name):
    """Full verification (1000 states, 101 p, six channels) on one backend."""
    kernels = backend.get_kernels(name)
    saved = backend.eigh, backend.dilate, backend.l1_offdiag
    backend.eigh, backend.dilate, backend.l1_offdiag = kernels.eigh, kernels.dilate, kernels.l1_offdiag
    try:
        start = time.perf_counter()
        report = experiments.run_verify(n_states=1000, seed=0)
        return time.perf_counter() - start, report.passed
    finally:
        backend.eigh, backend.dilate, backend.l1_offdiag = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-verify", action="store_true")
    args = parser.parse_args()

    names = ["python"]
    try:
        backend.get_kernels("compiled")
        names.insert(0, "compiled")
    except ImportError:
        print("compiled extension not available; timing the numpy kernels only")

    rng = np.random.default_rng(0)
    cases = kernel_cases(rng)
    print(f"{'kernel':<26}" + "".join(f"{n:>12}" for n in names) + "     speedup")
    for label, fn in cases.items():
        times = [best_of(lambda: fn(backend.get_kernels(n)), args.repeat) for n in names]
        ratio = f"{times[-1] / times[0]:10.1f}x" if len(times) == 2 else ""
        print(f"{label:<26}" + "".join(f"{t:11.3f}s" for t in times) + ratio)

    if not args.skip_verify:
        results = [verify_case(n) for n in names]
        ratio = f"{results[-1][0] / results[0][0]:10.1f}x" if len(results) == 2 else ""
        print(f"{'verify (all, 1000 states)':<26}"
              + "".join(f"{t:11.2f}s" for t, _ in results) + ratio)
        print("verify passed: " + ", ".join(f"{n}={ok}" for n, (_, ok) in zip(names, results)))


if __name__ == "__main__":
    main()
