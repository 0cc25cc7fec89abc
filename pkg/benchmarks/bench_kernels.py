"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the individual statevector kernels on batched states and a full
training epoch (forward passes + parameter-shift gradient) of a
representative interpolation model. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--batch 100] [--qubits 2]
"""

import argparse
import importlib
import time

import numpy as np


def _load_backends():
    backends = {}
    backends["python"] = importlib.import_module("qseries._kernels_py")
    try:
        backends["compiled"] = importlib.import_module("qseries._kernels_cy")
    except ImportError:
        print("compiled extension not built; benchmarking the fallback only")
    return backends


def _time(func, repeats=200):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(kernels, batch, n_qubits, rng):
    dim = 1 << n_qubits
    states = rng.standard_normal((batch, dim)) + 1j * rng.standard_normal((batch, dim))
    states = np.ascontiguousarray(states / np.linalg.norm(states, axis=1, keepdims=True))
    angles = np.ascontiguousarray(rng.uniform(-np.pi, np.pi, batch))
    results = {}
    results["apply_ry"] = _time(lambda: kernels.apply_ry(states, angles, 0, n_qubits))
    results["apply_rz"] = _time(lambda: kernels.apply_rz(states, angles, 0, n_qubits))
    if n_qubits > 1:
        results["apply_cnot"] = _time(lambda: kernels.apply_cnot(states, 0, 1, n_qubits))
    zmask = 1 << (n_qubits - 1)
    results["pauli_expectation"] = _time(
        lambda: kernels.pauli_expectation(states, 0, zmask, 0)
    )
    return results


def bench_training_epoch(backend_name, batch, n_qubits):
    import os

    os.environ["QSERIES_BACKEND"] = backend_name
    for module in list(importlib.sys.modules):
        if module.startswith("qseries"):
            del importlib.sys.modules[module]
    qseries = importlib.import_module("qseries")

    rng = np.random.default_rng(0)
    config = qseries.ModelConfig(n_qubits=n_qubits, n_layers=6)
    params = qseries.ParameterSet.initial(config, seed=0)
    inputs = rng.uniform(0, 2 * np.pi, (batch, n_qubits))
    targets = rng.uniform(-1, 1, batch)
    dataset = qseries.LabeledDataset(inputs=inputs, targets=targets)

    def one_epoch():
        qseries.rmse_loss(config, params, dataset)
        qseries.parameter_shift_gradient(config, params, dataset)

    return _time(one_epoch, repeats=10)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--batch", type=int, default=100)
    parser.add_argument("--qubits", type=int, default=2)
    args = parser.parse_args()

    rng = np.random.default_rng(42)
    backends = _load_backends()
    kernel_rows = {name: bench_kernels(mod, args.batch, args.qubits, rng)
                   for name, mod in backends.items()}

    ops = sorted(next(iter(kernel_rows.values())))
    print(f"\nkernel timings, batch={args.batch}, qubits={args.qubits} (best of 200, us)")
    header = f"{'op':<20}" + "".join(f"{name:>12}" for name in kernel_rows)
    if len(kernel_rows) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for op in ops:
        row = f"{op:<20}"
        for name in kernel_rows:
            row += f"{kernel_rows[name][op] * 1e6:>12.2f}"
        if len(kernel_rows) == 2:
            ratio = kernel_rows["python"][op] / kernel_rows["compiled"][op]
            row += f"{ratio:>10.1f}x"
        print(row)

    print(f"\nfull training epoch (loss + parameter-shift gradient), "
          f"6 layers, batch={args.batch}, qubits={args.qubits}")
    epoch_times = {}
    for name in backends:
        epoch_times[name] = bench_training_epoch(name, args.batch, args.qubits)
        print(f"{name:<10} {epoch_times[name] * 1e3:8.2f} ms")
    if len(epoch_times) == 2:
        print(f"speedup    {epoch_times['python'] / epoch_times['compiled']:8.1f}x")


if __name__ == "__main__":
    main()
