"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import math
import timeit

import numpy as np

from nheur import _pykernels
from nheur.dynamics import GeneralNHParams, hamiltonian
from nheur.linalg import traceless_split

try:
    from nheur import _ckernels
except ImportError:
    _ckernels = None


def cases():
    p = GeneralNHParams(1.0, 2.0, 2.0, math.pi / 2)
    h = np.asarray(hamiltonian(p))
    _, m, mu = traceless_split(h)
    psi0 = np.array([1, 1], dtype=complex) / math.sqrt(2)
    times = np.linspace(50.0, 150.0, 10_000)
    nr, nq = (0.0, 0.0, 1.0), (1.0, 0.0, 0.0)
    probs = np.linspace(0.0, 1.0, 100_000)
    return {
        "born_probabilities (10k times)": lambda k: k.born_probabilities(m, mu, psi0, times, nr, nq),
        "binary_entropy (100k)": lambda k: k.binary_entropy(probs),
        "rk4_integrate (100k steps)": lambda k: k.rk4_integrate(h, psi0, 1e-4, 100_000, 1000),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled extension not built; timing the Python backend only")
    print(f"{'kernel':<32}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases().items():
        best = {b: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        row = f"{name:<32}" + "".join(f"{best[b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{best['python'] / best['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
