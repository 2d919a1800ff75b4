"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times each table kernel on T_4 (256 elements) and I_4 (209 elements) with
both implementations, checks the outputs agree, then times an end-to-end
``semigroup analyze`` run with and without FINITUDE_PURE_PYTHON.
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile
import time

import numpy as np

from finitude import _kernels_py
from finitude.corpus import full_transformation_monoid, symmetric_inverse_monoid

try:
    from finitude import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if a is None or b is None:
        return a is b
    return np.array_equal(np.asarray(a), np.asarray(b))


def kernel_cases():
    T4 = full_transformation_monoid(4)
    I4 = symmetric_inverse_monoid(4)
    maps = np.array([[int(c) for c in label] for label in T4.labels], dtype=np.int64)
    for name, S in (("T4", T4), ("I4", I4)):
        table = np.asarray(S.table, dtype=np.int64)
        yield f"find_nonassociative[{name}]", "find_nonassociative", (table,)
        yield f"ideal_matrices[{name}]", "ideal_matrices", (table,)
        yield f"weak_inverses[{name}]", "weak_inverses", (table,)
    yield "encode_maps[T4]", "encode_maps", (maps,)
    yield "product_codes[T4]", "product_codes", (maps,)


def end_to_end(repeat):
    S = full_transformation_monoid(4)
    data = {"kind": "table", "labels": list(S.labels), "table": [list(map(int, r)) for r in S.table]}
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(data, fh)
        path = fh.name
    out = {}
    try:
        for backend in ("compiled", "python"):
            env = dict(os.environ)
            env.pop("FINITUDE_PURE_PYTHON", None)
            if backend == "python":
                env["FINITUDE_PURE_PYTHON"] = "1"
            cmd = [sys.executable, "-m", "finitude.cli", "semigroup", "analyze", path, "--max-size", "300"]
            t, proc = best_of(lambda: subprocess.run(cmd, capture_output=True, text=True, env=env), repeat)
            out[backend] = (t, proc.returncode, json.loads(proc.stdout).get("result"))
    finally:
        os.unlink(path)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-cli", action="store_true")
    args = ap.parse_args()
    if _kernels is None:
        sys.exit("compiled kernels are not built; run pip install -e . --no-build-isolation")

    print(f"{'kernel':<28}{'compiled s':>12}{'python s':>12}{'speedup':>10}")
    for label, fname, fargs in kernel_cases():
        tc, oc = best_of(lambda: getattr(_kernels, fname)(*fargs), args.repeat)
        tp, op = best_of(lambda: getattr(_kernels_py, fname)(*fargs), args.repeat)
        if not same(oc, op):
            sys.exit(f"{label}: backends disagree")
        print(f"{label:<28}{tc:>12.4f}{tp:>12.4f}{tp / max(tc, 1e-9):>9.1f}x")

    if not args.skip_cli:
        res = end_to_end(args.repeat)
        (tc, cc, rc), (tp, cp, rp) = res["compiled"], res["python"]
        if cc or cp or rc != rp:
            sys.exit("end-to-end reports differ between backends")
        print(f"{'semigroup analyze T4':<28}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
