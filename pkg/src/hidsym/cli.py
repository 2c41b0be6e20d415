"""Command-line front end: ``hidsym <command> [options]``.

Commands: gen, run-simon, run-shor, run-selfsim, baseline, compare, selftest.
Output goes to stdout unless ``--output`` is given; relative output paths are
resolved against ``$HIDSYM_OUTPUT_DIR`` when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from . import __version__
from .baseline import simon_birthday, simon_scan, shor_scan
from .errors import HidsymError
from .instances import (QueryCounter, gen_linear, gen_multixor, gen_shor, gen_simon,
                        instance_from_json, instance_to_json, shor_p_limit)
from .records import COMPARE_COLUMNS, RunRecord, emit_report
from .rng import derive_seed, make_rng
from .selfsim import detect_scale_invariance, read_signal, synth_signal
from .shor import ShorConfig, detect_shor
from .simon import AMBIGUOUS, UNIQUE, SimonConfig, detect_simon
from .statevec import MAX_QUBITS

OUTPUT_DIR_ENV = "HIDSYM_OUTPUT_DIR"
COMMANDS = ("gen", "run-simon", "run-shor", "run-selfsim", "baseline", "compare", "selftest")


class UsageError(HidsymError):
    """Invalid combination of command-line parameters."""


@dataclass
class ExperimentConfig:
    command: str
    kind: Optional[str] = None
    n: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    seed: int = 0
    trials: int = 1
    engine: str = "fast"
    params: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    format: str = "json"
    timing: bool = True

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if self.engine not in ("fast", "dense"):
            raise UsageError(f"unknown engine {self.engine!r}")
        if self.engine == "dense" and self.n is not None and 2 * self.n > MAX_QUBITS:
            raise UsageError(f"--engine dense requires 2n <= {MAX_QUBITS}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unsupported format {self.format!r}")

    def echo(self) -> dict:
        d = asdict(self)
        for k in ("output", "timing"):
            d.pop(k)
        return d


def trial_seeds(seed: int, trials: int) -> List[int]:
    return [derive_seed(seed, t) for t in range(trials)]


def _random_word(rng, n: int, nonzero: bool) -> int:
    return int(rng.integers(1 if nonzero else 0, 1 << n))


def _load_instance(path):
    return instance_from_json(json.loads(Path(path).read_text()))


# ------------------------------------------------------------------ commands

def _cmd_gen(cfg: ExperimentConfig):
    kind, n, seed = cfg.kind or "simon", cfg.n or 10, cfg.seed
    rng = make_rng(seed, 7)
    if kind == "simon":
        p = cfg.p if cfg.p is not None else _random_word(rng, n, True)
        q = cfg.q if cfg.q is not None else _random_word(rng, n, False)
        inst = gen_simon(n, p, q, seed)
    elif kind == "linear":
        inst = gen_linear(n, seed)
    elif kind == "multixor":
        inst = gen_multixor(n, cfg.p if cfg.p is not None else _random_word(rng, n, True), seed)
    elif kind == "shor":
        inst = gen_shor(n, cfg.p or 13, cfg.q or 3, seed, epsilon=cfg.params["epsilon"])
    else:
        raise UsageError(f"gen does not support kind {kind!r}")
    doc = instance_to_json(inst, include_table=cfg.params.get("table", False))
    if kind == "shor":
        doc["epsilon"] = cfg.params["epsilon"]
    if kind == "multixor":
        rows = [{"x": x, **{f"f{l}": int(c[x]) for l, c in enumerate(inst.components)}}
                for x in range(inst.N)]
    else:
        rows = [{"x": x, "f": int(v)} for x, v in enumerate(inst.table)]
    return doc, rows


def _simon_trial(cfg: ExperimentConfig, t: int, seed: int):
    kind, n = cfg.kind or "simon", cfg.n or 10
    rng = make_rng(seed, 7)
    inst_path = cfg.params.get("instance")
    if inst_path:
        inst = _load_instance(inst_path)
        kind, n = inst.kind, inst.n
    elif kind == "simon":
        p = cfg.p if cfg.p is not None else _random_word(rng, n, True)
        q = cfg.q if cfg.q is not None else _random_word(rng, n, False)
        inst = gen_simon(n, p, q, seed)
    elif kind == "linear":
        inst = gen_linear(n, seed)
    elif kind == "multixor":
        inst = gen_multixor(n, cfg.p if cfg.p is not None else _random_word(rng, n, True), seed)
    else:
        raise UsageError(f"run-simon does not support kind {kind!r}")
    sc = SimonConfig(cfg.params.get("max_samples"), cfg.params.get("verify_trials", 32),
                     seed, cfg.engine)
    rep = detect_simon(inst, sc)
    if kind == "linear":
        planted_p = planted_q = None
        correct = rep.status == AMBIGUOUS and all(
            c.q == inst.q_for(c.p) for c in rep.verified)
    else:
        planted_p, planted_q = inst.p, getattr(inst, "q", 0)
        correct = rep.status == UNIQUE and (rep.p, rep.q) == (planted_p, planted_q)
    row = {"trial": t, "seed": seed, "kind": kind, "n": n, "p": planted_p, "q": planted_q,
           "status": rep.status, "found_p": rep.p, "found_q": rep.q, "correct": correct,
           "samples_used": rep.samples_used, "rank": rep.rank,
           **rep.counters.as_dict()}
    return rep.as_dict(), row, rep.counters


def _shor_config(cfg: ExperimentConfig, seed: int) -> ShorConfig:
    pr = cfg.params
    return ShorConfig(pr.get("max_pairs", 12), pr.get("M"), pr.get("p_max"),
                      pr.get("lambda_max", 16), pr.get("c", 4.0), pr.get("verify_trials", 32),
                      seed, cfg.engine)


def _shor_trial(cfg: ExperimentConfig, t: int, seed: int):
    if cfg.params.get("instance"):
        inst = _load_instance(cfg.params["instance"])
    else:
        inst = gen_shor(cfg.n or 16, cfg.p or 13, cfg.q or 3, seed, epsilon=cfg.params["epsilon"])
    rep = detect_shor(inst, _shor_config(cfg, seed))
    row = {"trial": t, "seed": seed, "n": inst.n, "p": inst.p, "q": inst.q,
           "status": rep.status, "found_p": rep.p, "found_q": rep.q,
           "correct": (rep.p, rep.q) == (inst.p, inst.q), "pairs_used": rep.pairs_used,
           "resonant_fraction": rep.resonant_fraction, **rep.counters.as_dict()}
    return rep.as_dict(), row, rep.counters


def _selfsim_trial(cfg: ExperimentConfig, t: int, seed: int):
    pr = cfg.params
    if pr.get("csv"):
        if not pr.get("lattice"):
            raise UsageError("--csv requires --lattice")
        sig = read_signal(pr["csv"], pr["lattice"])
        planted = None
    else:
        inst = gen_shor(cfg.n or 16, cfg.p or 13, cfg.q or 3, seed, epsilon=pr["epsilon"])
        sig = synth_signal(inst, pr["g"], pr["b"], pr["chi_min"])
        planted = inst
    rep = detect_scale_invariance(sig, _shor_config(cfg, seed), pr["tolerance"])
    correct = None
    if planted is not None:
        correct = rep.alpha == pr["g"] ** planted.p and rep.beta == pr["b"] ** planted.q
    row = {"trial": t, "seed": seed, "n": sig.lattice.n,
           "p": planted.p if planted else None, "q": planted.q if planted else None,
           "status": rep.status, "alpha": rep.alpha, "beta": rep.beta, "correct": correct,
           "pairs_used": rep.shor.pairs_used, **rep.shor.counters.as_dict()}
    return rep.as_dict(), row, rep.shor.counters


def _baseline_trial(cfg: ExperimentConfig, t: int, seed: int):
    kind, n = cfg.kind or "simon", cfg.n or 10
    strategy = cfg.params.get("strategy", "scan")
    rng = make_rng(seed, 7)
    counter = QueryCounter()
    if cfg.params.get("instance"):
        inst = _load_instance(cfg.params["instance"])
        kind, n = inst.kind, inst.n
    elif kind == "simon":
        inst = gen_simon(n, cfg.p if cfg.p is not None else _random_word(rng, n, True),
                         cfg.q if cfg.q is not None else _random_word(rng, n, False), seed)
    elif kind == "linear":
        inst = gen_linear(n, seed)
    elif kind == "shor":
        inst = gen_shor(cfg.n or 16, cfg.p or 13, cfg.q or 3, seed, epsilon=cfg.params["epsilon"])
        n = inst.n
    else:
        raise UsageError(f"baseline does not support kind {kind!r}")
    if kind == "shor":
        if strategy != "scan":
            raise UsageError("the shor baseline only supports --strategy scan")
        p_max = cfg.params.get("p_max") or shor_p_limit(n, cfg.params["epsilon"])
        rep = shor_scan(inst, p_max, counter, make_rng(seed, 3))
    elif strategy == "scan":
        rep = simon_scan(inst, counter, make_rng(seed, 3))
    elif strategy == "birthday":
        rep = simon_birthday(inst, counter, make_rng(seed, 4))
    else:
        raise UsageError(f"unknown strategy {strategy!r}")
    planted = (getattr(inst, "p", None), getattr(inst, "q", None))
    if kind == "linear":
        correct = rep.found and rep.q == inst.q_for(rep.p)
    else:
        correct = rep.found and (rep.p, rep.q) == planted
    row = {"trial": t, "seed": seed, "kind": kind, "n": n, "p": planted[0], "q": planted[1],
           "strategy": rep.strategy, "found": rep.found, "found_p": rep.p, "found_q": rep.q,
           "correct": correct, "classical_queries": rep.classical_queries}
    return rep.as_dict(), row, counter


def _compare(cfg: ExperimentConfig):
    kind = cfg.kind or "simon"
    sizes = cfg.params.get("sizes") or [cfg.n or (10 if kind == "simon" else 16)]
    rows = []
    totals = QueryCounter()
    for n in sizes:
        tallies = {}
        for t, seed in enumerate(trial_seeds(cfg.seed, cfg.trials)):
            rng = make_rng(seed, 7)
            if kind == "simon":
                p = cfg.p if cfg.p is not None else _random_word(rng, n, True)
                q = cfg.q if cfg.q is not None else _random_word(rng, n, False)
                inst = gen_simon(n, p, q, seed)
                quantum = detect_simon(inst, SimonConfig(seed=seed, engine=cfg.engine))
                results = {
                    "quantum": (quantum.samples_used,
                                quantum.status == UNIQUE and (quantum.p, quantum.q) == (p, q)),
                }
                for name, rep in (("scan", simon_scan(inst, rng=make_rng(seed, 3))),
                                  ("birthday", simon_birthday(inst, rng=make_rng(seed, 4)))):
                    results[name] = (rep.classical_queries, rep.found and (rep.p, rep.q) == (p, q))
                totals.quantum_runs += quantum.counters.quantum_runs
            elif kind == "shor":
                p, q = cfg.p or 13, cfg.q or 3
                inst = gen_shor(n, p, q, seed, epsilon=cfg.params["epsilon"])
                quantum = detect_shor(inst, _shor_config(cfg, seed))
                scan = shor_scan(inst, cfg.params.get("p_max") or shor_p_limit(n, cfg.params["epsilon"]),
                                 rng=make_rng(seed, 3))
                results = {"quantum": (quantum.counters.quantum_runs,
                                       (quantum.p, quantum.q) == (p, q)),
                           "scan": (scan.classical_queries, (scan.p, scan.q) == (p, q))}
                totals.quantum_runs += quantum.counters.quantum_runs
            else:
                raise UsageError(f"compare does not support kind {kind!r}")
            for name, (queries, ok) in results.items():
                tallies.setdefault(name, []).append((queries, ok))
                if name != "quantum":
                    totals.classical_queries += queries
        for name, vals in tallies.items():
            qs = [v[0] for v in vals]
            rows.append({"kind": kind, "n": n, "strategy": name,
                         "median_queries": float(np.median(qs)),
                         "success_rate": sum(v[1] for v in vals) / len(vals)})
    return {"columns": COMPARE_COLUMNS, "rows": rows}, rows, totals


def _selftest(cfg: ExperimentConfig):
    from .selftest import run_selftest
    checks = run_selftest(max_n=cfg.n or 4, seed=cfg.seed)
    rows = [{"check": c["check"], "passed": c["passed"], "detail": c["detail"]} for c in checks]
    report = {"passed": all(c["passed"] for c in checks), "checks": checks}
    return report, rows, QueryCounter()


_TRIALS = {"run-simon": _simon_trial, "run-shor": _shor_trial,
           "run-selfsim": _selfsim_trial, "baseline": _baseline_trial}


def run_experiment(cfg: ExperimentConfig):
    """Dispatch one command; returns a :class:`RunRecord` (or an instance document for gen)."""
    cfg.validate()
    start = time.perf_counter()
    if cfg.command == "gen":
        return _cmd_gen(cfg)
    if cfg.command in _TRIALS:
        handler = _TRIALS[cfg.command]
        reports, rows = [], []
        totals = QueryCounter()
        for t, seed in enumerate(trial_seeds(cfg.seed, cfg.trials)):
            rep, row, counters = handler(cfg, t, seed)
            reports.append(rep)
            rows.append(row)
            totals.classical_queries += counters.classical_queries
            totals.quantum_runs += counters.quantum_runs
        graded = [r["correct"] for r in rows if r["correct"] is not None]
        summary = {"trials": cfg.trials,
                   "success_rate": sum(graded) / len(graded) if graded else None}
        report = {"summary": summary, "trials": reports}
    elif cfg.command == "compare":
        report, rows, totals = _compare(cfg)
    else:
        report, rows, totals = _selftest(cfg)
    wall = time.perf_counter() - start if cfg.timing else None
    return RunRecord(cfg.echo(), report, totals.as_dict(), __version__, wall, rows)


# ---------------------------------------------------------------- argparse

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hidsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, kinds=None, default_format="json"):
        if kinds:
            sp.add_argument("--kind", choices=kinds, default=kinds[0])
        sp.add_argument("--n", type=int, default=None)
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--q", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=1)
        sp.add_argument("--engine", choices=["fast", "dense"], default="fast")
        sp.add_argument("--epsilon", type=float, default=0.25,
                        help="Shor regime: p <= floor(N**epsilon)")
        sp.add_argument("--format", choices=["json", "csv"], default=default_format)
        sp.add_argument("--output", default=None)
        sp.add_argument("--no-timing", action="store_true", help="omit wall-time from records")

    def shor_knobs(sp):
        sp.add_argument("--max-pairs", type=int, default=12)
        sp.add_argument("--M", type=int, default=None)
        sp.add_argument("--p-max", type=int, default=None)
        sp.add_argument("--lambda-max", type=int, default=16)
        sp.add_argument("--c", type=float, default=4.0)
        sp.add_argument("--verify-trials", type=int, default=32)

    sp = sub.add_parser("gen", help="generate a planted instance as JSON")
    common(sp, ["simon", "linear", "shor", "multixor"])
    sp.add_argument("--table", action="store_true", help="embed the full table")

    sp = sub.add_parser("run-simon", help="Simon-type detection")
    common(sp, ["simon", "linear", "multixor"])
    sp.add_argument("--max-samples", type=int, default=None)
    sp.add_argument("--verify-trials", type=int, default=32)
    sp.add_argument("--instance", default=None, help="instance JSON from `gen`")

    sp = sub.add_parser("run-shor", help="Shor-type detection")
    common(sp)
    shor_knobs(sp)
    sp.add_argument("--instance", default=None, help="instance JSON from `gen`")

    sp = sub.add_parser("run-selfsim", help="discrete self-similarity detection")
    common(sp)
    shor_knobs(sp)
    sp.add_argument("--g", type=float, default=2)
    sp.add_argument("--b", type=float, default=2)
    sp.add_argument("--chi-min", type=float, default=1.0)
    sp.add_argument("--tolerance", type=float, default=1e-6)
    sp.add_argument("--csv", default=None, help="signal CSV (chi,phi) or (j,log_phi)")
    sp.add_argument("--lattice", default=None, help="JSON sidecar with chi_min, ratio, base, n")

    sp = sub.add_parser("baseline", help="classical brute-force detectors")
    common(sp, ["simon", "linear", "shor"])
    sp.add_argument("--strategy", choices=["scan", "birthday"], default="scan")
    sp.add_argument("--p-max", type=int, default=None)
    sp.add_argument("--instance", default=None)

    sp = sub.add_parser("compare", help="quantum runs vs classical queries table")
    common(sp, ["simon", "shor"], default_format="csv")
    sp.set_defaults(trials=25)
    sp.add_argument("--sizes", type=int, nargs="+", default=None, help="several n values")
    shor_knobs(sp)

    sp = sub.add_parser("selftest", help="dense-vs-fast equivalence and instance invariants")
    common(sp)
    return parser


def _to_config(args) -> ExperimentConfig:
    skip = {"command", "kind", "n", "p", "q", "seed", "trials", "engine",
            "output", "format", "no_timing"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    if args.command in ("run-selfsim",):
        g, b = params["g"], params["b"]
        params["g"] = int(g) if float(g).is_integer() else g
        params["b"] = int(b) if float(b).is_integer() else b
    return ExperimentConfig(args.command, getattr(args, "kind", None), args.n, args.p, args.q,
                            args.seed, args.trials, args.engine, params, args.output,
                            args.format, not args.no_timing)


def _write(data: bytes, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    path = Path(output)
    if not path.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _to_config(args)
    try:
        result = run_experiment(cfg)
        if cfg.command == "gen":
            doc, rows = result
            if cfg.format == "json":
                data = (json.dumps(doc, sort_keys=True) + "\n").encode()
            else:
                data = emit_report(RunRecord({"command": "gen"}, doc, {}, __version__, rows=rows),
                                   "csv")
        else:
            data = emit_report(result, cfg.format)
    except (HidsymError, OSError) as exc:
        print(f"hidsym {cfg.command}: error: {exc}", file=sys.stderr)
        return 2
    _write(data, cfg.output)
    if cfg.command == "selftest" and not result.report["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
