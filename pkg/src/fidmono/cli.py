"""Command-line entry point and the JSON state-file format.

State files look like::

    {"dims": [2, 2, 2], "kind": "pure", "amplitudes": [[re, im], ...]}
    {"dims": [2, 2], "kind": "mixed", "entries": [[re, im], ...]}

Amplitudes and matrix entries are row-major with party 1 slowest.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from math import prod
from pathlib import Path

import numpy as np

from fidmono import fuzz, measures, monogamy, qudit, states
from fidmono.monogamy import AB_LARGE, AC_LARGE, ALL_LARGE, ALL_SMALL, BoundParams
from fidmono.qstate import DensityMatrix, StateVector

ROW_SLACK = 1e-12
BOUND_SLACK = 1e-9
UNAVAILABLE = "unavailable (convex roof)"


# ---- state files -------------------------------------------------------

def _pairs(z: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.ravel(z)]


def _complex(pairs, what: str) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim < 2 or arr.shape[-1] != 2:
        raise ValueError(f"{what} must be a list of [re, im] pairs")
    arr = arr.reshape(-1, 2)
    return arr[:, 0] + 1j * arr[:, 1]


def state_to_json(state) -> dict:
    if isinstance(state, StateVector):
        return {"dims": list(state.dims), "kind": "pure", "amplitudes": _pairs(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        return {"dims": list(state.dims), "kind": "mixed", "entries": _pairs(state.entries)}
    raise TypeError("expected a StateVector or DensityMatrix")


def state_from_json(obj) -> StateVector | DensityMatrix:
    if not isinstance(obj, dict):
        raise ValueError("state file must hold a JSON object")
    try:
        dims = tuple(int(d) for d in obj["dims"])
        kind = obj["kind"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"state file is missing a field: {exc}") from None
    d = prod(dims)
    if kind == "pure":
        amps = _complex(obj.get("amplitudes"), "amplitudes")
        if amps.size != d:
            raise ValueError(f"{amps.size} amplitudes do not match dims {list(dims)}")
        return StateVector(amps, dims)
    if kind == "mixed":
        entries = _complex(obj.get("entries"), "entries")
        if entries.size != d * d:
            raise ValueError(f"{entries.size} entries do not match dims {list(dims)}")
        return DensityMatrix(entries.reshape(d, d), dims)
    raise ValueError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def write_state_file(state, path) -> None:
    Path(path).write_text(json.dumps(state_to_json(state), indent=1) + "\n")


def read_state_file(path) -> StateVector | DensityMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc.msg})") from None
    return state_from_json(obj)


# ---- figure data -------------------------------------------------------

EXAMPLE1_K, EXAMPLE1_OMEGA = 2.0, 1.5
EXAMPLE2_K, EXAMPLE2_OMEGA, EXAMPLE2_ETA = 2.0, 2.0, 2.0


def _three_measures(psi, kind=measures.MeasureKind.BURES):
    f = lambda c: measures.f_measure(c, kind)  # noqa: E731
    return (f(measures.concurrence_pure(psi)),
            f(measures.pair_concurrence(psi, 0, 1)),
            f(measures.pair_concurrence(psi, 0, 2)))


def example1_rows(xs, ys) -> list[tuple[float, ...]]:
    """Rows (x, y, lhs, z1, z2) with alpha = x, eta = y for the Schmidt-form example."""
    m_full, m_ab, m_ac = _three_measures(states.schmidt_state(states.example1_params()))
    rows = []
    for x in xs:
        for y in ys:
            p = BoundParams(k=EXAMPLE1_K, omega=EXAMPLE1_OMEGA, alpha=x, eta=y)
            r = monogamy.remark2_bounds(m_ab, m_ac, p, AB_LARGE)
            rows.append((float(x), float(y), m_full**x, r.m, r.m1))
    return rows


def example2_rows(xs) -> list[tuple[float, ...]]:
    """Rows (x, lhs, y1, y2, y3) with alpha = x for the W-class example."""
    m_full, m_ab, m_ac = _three_measures(states.w_class_example2())
    rows = []
    for x in xs:
        p = BoundParams(k=EXAMPLE2_K, omega=EXAMPLE2_OMEGA, alpha=x, eta=EXAMPLE2_ETA)
        r = monogamy.remark2_bounds(m_ab, m_ac, p, AC_LARGE)
        rows.append((float(x), m_full**x, r.m, r.m3, r.m2))
    return rows


def example1_violations(rows) -> dict:
    lhs_z1 = int(sum(r[2] < r[3] - ROW_SLACK for r in rows))
    z1_z2 = int(sum(r[3] < r[4] - ROW_SLACK for r in rows))
    worst = float(max([0.0] + [r[3] - r[2] for r in rows] + [r[4] - r[3] for r in rows]))
    return {"lhs>=z1": lhs_z1, "z1>=z2": z1_z2, "violations": lhs_z1 + z1_z2,
            "max_violation": worst}


def example2_violations(rows) -> dict:
    counts = {
        "lhs>=y1": int(sum(r[1] < r[2] - ROW_SLACK for r in rows)),
        "y1>=y2": int(sum(r[2] < r[3] - ROW_SLACK for r in rows)),
        "y1>=y3": int(sum(r[2] < r[4] - ROW_SLACK for r in rows)),
    }
    worst = float(max([0.0] + [r[2] - r[1] for r in rows] + [r[3] - r[2] for r in rows]
                + [r[4] - r[2] for r in rows]))
    counts["violations"] = sum(counts.values())
    counts["max_violation"] = worst
    return counts


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["%.17g" % v for v in r])
    return buf.getvalue()


def _grid(lo, hi, n):
    if n < 2:
        raise ValueError("grid counts must be at least 2")
    return np.linspace(lo, hi, n)


# ---- bound reports -----------------------------------------------------

def _lhs_value(state, value_fn):
    return value_fn() if isinstance(state, StateVector) else UNAVAILABLE


def _regimes(n: int) -> list:
    return [ALL_SMALL, ALL_LARGE] + list(range(2, n - 1))


def _regime_name(r) -> str:
    return r if isinstance(r, str) else f"split:{r}"


def bound_tripartite(state, p: BoundParams, kind) -> dict:
    rep = monogamy.tripartite_report_for_state(state, p, kind).as_dict()
    if rep["lhs"] is None:
        rep["lhs"] = UNAVAILABLE
    rep["condition"] = rep.pop("regime") or "none"
    return rep


def bound_npartite(state, p: BoundParams, kind) -> dict:
    n = state.n_parties
    if n < 3 or any(d != 2 for d in state.dims):
        raise ValueError(f"npartite mode needs at least three qubits, got dims {list(state.dims)}")
    pairwise = [measures.f_measure(measures.pair_concurrence(state, 0, j), kind)
                for j in range(1, n)]
    lhs = _lhs_value(state, lambda: measures.f_measure(measures.concurrence_pure(state), kind)
                     ** p.alpha)
    bounds = {_regime_name(r): monogamy.theorem2_bound(pairwise, p, r) for r in _regimes(n)}
    return {"lhs": lhs, "pairwise": pairwise, "bounds": bounds, "condition": "unverifiable"}


def bound_qudit(state, p: BoundParams) -> dict:
    if state.n_parties < 3:
        raise ValueError("qudit mode needs at least three parties")
    lhs = _lhs_value(state, lambda: measures.concurrence_pure(state) ** p.alpha)
    if state.n_parties == 3:
        reps = {"theorem3": qudit.theorem3_bound(state, p)}
    else:
        reps = {_regime_name(r): qudit.theorem4_bound(state, p, r)
                for r in _regimes(state.n_parties)}
    out = {"lhs": lhs, "measure": "concurrence", "bounds": {}}
    for name, rep in reps.items():
        d = rep.as_dict()
        d["condition"] = ("all_substates" if rep.all_satisfied else
                          "partial" if rep.n_satisfied else "none")
        out["bounds"][name] = d
    return out


def _bound_violation(result: dict) -> tuple[int, float]:
    lhs = result.get("lhs")
    if not isinstance(lhs, float):
        return 0, 0.0
    if "bound" in result:
        vals = [result["bound"]] if result["bound"] is not None else []
    else:
        vals = [b["bound"] if isinstance(b, dict) else b for b in result["bounds"].values()]
        if result.get("condition") == "unverifiable":
            vals = []  # nothing is asserted without the hypotheses
    worst = max([0.0] + [v - lhs for v in vals])
    return int(worst > BOUND_SLACK), worst


# ---- argparse ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def cmd_example1(args) -> int:
    t0 = time.perf_counter()
    rows = example1_rows(_grid(0.0, 0.5, args.grid_x), _grid(1.0, 10.0, args.grid_y))
    Path(args.out).write_text(format_csv(("x", "y", "lhs", "z1", "z2"), rows))
    v = example1_violations(rows)
    _emit({"command": "example1",
           "params": {"grid_x": args.grid_x, "grid_y": args.grid_y, "out": str(args.out),
                      "k": EXAMPLE1_K, "omega": EXAMPLE1_OMEGA},
           "rows": len(rows), "checks": v, "violations": v["violations"],
           "max_violation": v["max_violation"], "elapsed": time.perf_counter() - t0})
    return 0


def cmd_example2(args) -> int:
    t0 = time.perf_counter()
    rows = example2_rows(_grid(0.0, 0.5, args.grid))
    Path(args.out).write_text(format_csv(("x", "lhs", "y1", "y2", "y3"), rows))
    v = example2_violations(rows)
    _emit({"command": "example2",
           "params": {"grid": args.grid, "out": str(args.out), "k": EXAMPLE2_K,
                      "omega": EXAMPLE2_OMEGA, "eta": EXAMPLE2_ETA},
           "rows": len(rows), "checks": v, "violations": v["violations"],
           "max_violation": v["max_violation"], "elapsed": time.perf_counter() - t0})
    return 0


def cmd_bound(args) -> int:
    t0 = time.perf_counter()
    state = read_state_file(args.state)
    mode = args.mode
    kind = measures.MeasureKind.parse(args.measure)
    pmode = monogamy.QUDIT if mode == "qudit" else monogamy.QUBIT
    p = BoundParams(k=args.k, omega=args.omega, alpha=args.alpha, eta=args.eta, mode=pmode)
    if mode == "tripartite":
        result = bound_tripartite(state, p, kind)
    elif mode == "npartite":
        result = bound_npartite(state, p, kind)
    else:
        result = bound_qudit(state, p)
    nviol, worst = _bound_violation(result)
    _emit({"command": "bound",
           "params": {"state": str(args.state), "dims": list(state.dims),
                      "kind": "pure" if isinstance(state, StateVector) else "mixed",
                      "k": p.k, "omega": p.omega, "alpha": p.alpha, "eta": p.eta,
                      "measure": kind.value, "mode": mode},
           "result": result, "violations": nviol, "max_violation": worst,
           "elapsed": time.perf_counter() - t0})
    return 0


def cmd_fuzz(args) -> int:
    if args.suite not in fuzz.SUITES:
        raise ValueError(f"unknown suite {args.suite!r}; choose from: {', '.join(fuzz.SUITES)}")
    res = fuzz.run_suite(args.suite, args.samples, args.seed, args.workers)
    d = res.as_dict()
    _emit({"command": "fuzz",
           "params": {"suite": args.suite, "samples": args.samples, "seed": args.seed,
                      "workers": args.workers},
           "result": d, "violations": d["violations"], "max_violation": d["max_violation"],
           "elapsed": d["elapsed"]})
    return 1 if res.violations else 0


def cmd_substates(args) -> int:
    dims = tuple(args.dims)
    subs = qudit.enumerate_substates(dims)
    lines = [str(len(subs))] + [str(s) for s in subs]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fidmono", description="Fidelity-based entanglement monogamy toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e1 = sub.add_parser("example1", help="figure data for the Schmidt-form example (CSV)")
    e1.add_argument("--grid-x", type=int, default=51)
    e1.add_argument("--grid-y", type=int, default=51)
    e1.add_argument("--out", required=True, type=Path)
    e1.set_defaults(func=cmd_example1)

    e2 = sub.add_parser("example2", help="figure data for the W-class example (CSV)")
    e2.add_argument("--grid", type=int, default=101)
    e2.add_argument("--out", required=True, type=Path)
    e2.set_defaults(func=cmd_example2)

    b = sub.add_parser("bound", help="bound report for a JSON state file")
    b.add_argument("--state", required=True, type=Path)
    b.add_argument("--k", required=True, type=float)
    b.add_argument("--omega", required=True, type=float)
    b.add_argument("--alpha", required=True, type=float)
    b.add_argument("--eta", type=float, default=2.0)
    b.add_argument("--measure", choices=["bures", "geometric"], default="bures")
    b.add_argument("--mode", choices=["tripartite", "npartite", "qudit"], default="tripartite")
    b.set_defaults(func=cmd_bound)

    f = sub.add_parser("fuzz", help="run a randomized property suite")
    f.add_argument("--suite", required=True)
    f.add_argument("--samples", type=int, default=1000)
    f.add_argument("--seed", type=_u64, default=0)
    f.add_argument("--workers", type=int, default=1)
    f.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("substates", help="list the qubit substates of a qudit profile")
    s.add_argument("dims", nargs="+", type=int)
    s.set_defaults(func=cmd_substates)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, KeyError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        sys.stderr.write(f"fidmono {args.command}: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
