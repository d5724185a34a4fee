"""Time the compiled and NumPy kernel backends against each other.

    python benchmarks/bench_kernels.py [--repeat N] [--json PATH]

Kernel timings run in-process through ``kernels.get_backend``. The
end-to-end rows start a fresh interpreter per backend (``FIDMONO_BACKEND``
is read at import) and time a qudit bound plus a fuzz chunk.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from fidmono import kernels

END_TO_END = """
import timeit
from fidmono import fuzz, qudit, states
from fidmono.monogamy import BoundParams
p = BoundParams(0.8, 2, 2, mode="qudit")
psi = states.haar_pure((3, 3, 3), 1)
t3 = min(timeit.repeat(lambda: qudit.theorem3_bound(psi, p), number=20, repeat=3)) / 20
ck = min(timeit.repeat(lambda: fuzz.run_suite("ckw", 256, 1), number=1, repeat=3))
print(t3, ck)
"""


def _cases(rng):
    def herm(d):
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        return a + a.conj().T

    f = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = f @ f.conj().T
    rho /= np.trace(rho).real
    h = rng.standard_normal((3, 9)) + 1j * rng.standard_normal((3, 9))
    return {
        "eigh 4x4": ("eigh", (herm(4),)),
        "eigh 8x8": ("eigh", (herm(8),)),
        "eigh 27x27": ("eigh", (herm(27),)),
        "svdvals 4x4": ("svdvals", (f,)),
        "wootters (4x4 density)": ("wootters", (rho,)),
        "wootters_from_factor 4x1": ("wootters_from_factor", (f[:, :1].copy(),)),
        "pairsum_sq 3x9": ("pairsum_sq", (h,)),
    }


def bench_kernels(repeat):
    rng = np.random.default_rng(0)
    names = kernels.available_backends()
    rows = []
    for label, (fn, args) in _cases(rng).items():
        row = {"case": label}
        for name in names:
            func = getattr(kernels.get_backend(name), fn)
            number = 200
            t = min(timeit.repeat(lambda: func(*args), number=number, repeat=repeat)) / number
            row[name] = t
        rows.append(row)
    return names, rows


def bench_end_to_end(names):
    rows = {"theorem3_bound 3x3x3": {}, "ckw fuzz chunk (256)": {}}
    for name in names:
        env = dict(os.environ, FIDMONO_BACKEND=name)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True,
                             capture_output=True, text=True).stdout.split()
        rows["theorem3_bound 3x3x3"][name] = float(out[0])
        rows["ckw fuzz chunk (256)"][name] = float(out[1])
    return [{"case": k, **v} for k, v in rows.items()]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write the table as JSON")
    args = ap.parse_args(argv)
    names, rows = bench_kernels(args.repeat)
    rows += bench_end_to_end(names)
    head = f"{'case':28s}" + "".join(f"{n:>14s}" for n in names)
    if len(names) == 2:
        head += f"{'speedup':>10s}"
    print(head)
    for r in rows:
        line = f"{r['case']:28s}" + "".join(f"{r[n] * 1e6:12.2f}us" for n in names)
        if len(names) == 2:
            line += f"{r['python'] / r['cython']:9.1f}x"
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
