"""Command-line experiment runner with seeded, schema-validated outputs.

Every command is reproducible from its flags alone: the seed defaults to
the QSVLAB_SEED environment variable (or 0), Monte Carlo commands use one
counter-based stream per trial, and --jobs only partitions trials across
threads, never changing results. Outputs are written atomically and
validated against the schemas shipped with the package.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import adversary, cost_hamiltonian, instances, pm_bounds, typical, verifier
from ._rng import stream
from .output import write_csv, write_json

COMMANDS = (
    "gen-instance",
    "adversary-pair",
    "verify",
    "typical-sweep",
    "pm-bound",
    "cost-gap",
    "report-all",
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNWRITABLE = 3


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved command plus every parameter needed to reproduce a run."""

    command: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if "seed" not in self.params:
            raise ValueError("config must carry a seed")


def _default_seed() -> int:
    return int(os.environ.get("QSVLAB_SEED", "0"))


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="qsvlab",
        description="Verification-cost experiments for linear-system solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers: dict[str, argparse.ArgumentParser] = {}

    def common(p: argparse.ArgumentParser, formats: bool = True) -> None:
        p.add_argument("--seed", type=int, default=None,
                       help="base seed (default: $QSVLAB_SEED or 0)")
        p.add_argument("--out", default=None,
                       help="output base path; extension(s) appended per format")
        p.add_argument("--config", default=None,
                       help="JSON file of flag defaults; explicit flags override")
        if formats:
            p.add_argument("--format", choices=["json", "csv", "both"], default="json")

    p = subparsers["gen-instance"] = sub.add_parser("gen-instance", help="generate and serialize an instance")
    p.add_argument("--kind", choices=["worst-case", "typical"], default="worst-case")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--kappa", type=float, default=10.0)
    p.add_argument("--epsilon", type=float, default=1e-2)
    common(p, formats=False)

    p = subparsers["adversary-pair"] = sub.add_parser("adversary-pair", help="build and certify a companion pair")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--kappa", type=float, default=100.0)
    p.add_argument("--b-mode", choices=["random", "zero-min", "pure-min"],
                   default="random")
    p.add_argument("--min-sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--worst-case", action="store_true",
                   help="use the deterministic worst-case instance instead of sampling")
    common(p, formats=False)

    p = subparsers["verify"] = sub.add_parser("verify", help="Monte Carlo swap-test verification")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--kappa", type=float, default=10.0)
    p.add_argument("--d", type=float, default=0.125,
                   help="candidate state's trace distance from the solution")
    p.add_argument("--kind", choices=["pure", "mixed-orthogonal"], default="pure")
    p.add_argument("--eps-solver", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = subparsers["typical-sweep"] = sub.add_parser("typical-sweep", help="solution-norm concentration experiment")
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--kappa", type=float, default=16.0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = subparsers["pm-bound"] = sub.add_parser("pm-bound", help="prepare-and-measure copy-bound certificate")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--kappa", type=float, default=300.0)
    p.add_argument("--b-mode", choices=["random", "zero-min", "pure-min"],
                   default="random")
    p.add_argument("--min-sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--worst-case", action="store_true")
    common(p, formats=False)

    p = subparsers["cost-gap"] = sub.add_parser("cost-gap", help="cost-operator gap and shot-count sweep")
    p.add_argument("--kappas", default="4,8,16,32",
                   help="comma-separated condition numbers")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--z", type=float, default=1.0, help="confidence multiplier")
    common(p)

    p = subparsers["report-all"] = sub.add_parser("report-all", help="run the standard batch into a directory")
    p.add_argument("--out-dir", default="qsvlab-report")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--jobs", type=int, default=1)
    common(p, formats=False)

    return parser, subparsers


def _apply_config_file(
    parser: argparse.ArgumentParser,
    subparsers: dict[str, argparse.ArgumentParser],
    argv: list[str],
) -> argparse.Namespace:
    """Parse argv, letting a --config JSON file supply defaults."""
    pre, _ = parser.parse_known_args(argv)
    if getattr(pre, "config", None):
        with open(pre.config, "r", encoding="utf-8") as fh:
            defaults = json.load(fh)
        if not isinstance(defaults, dict):
            raise ValueError("config file must hold a JSON object")
        command_parser = subparsers[pre.command]
        known = {a.dest for a in command_parser._actions} - {"help", "config"}
        unknown = set(defaults) - known
        if unknown:
            raise ValueError(f"config file sets unknown flags: {sorted(unknown)}")
        command_parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _resolve(args: argparse.Namespace) -> ExperimentConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    if params.get("seed") is None:
        params["seed"] = _default_seed()
    return ExperimentConfig(command=args.command, params=params)


def _out_base(cfg: ExperimentConfig) -> str:
    return cfg.params.get("out") or cfg.command


def _build_instance(cfg: ExperimentConfig) -> instances.QLSPInstance:
    p = cfg.params
    if p.get("worst_case"):
        return instances.worst_case_instance(p["kappa"], p["n"])
    rng = stream(p["seed"], 0)
    return instances.random_strict_instance(
        p["n"], p["kappa"], rng, min_sign=p.get("min_sign", 1),
        b_mode=p.get("b_mode", "random"),
    )


def _chunks(trials: int, jobs: int) -> list[range]:
    jobs = max(1, min(jobs, trials))
    step = math.ceil(trials / jobs)
    return [range(lo, min(lo + step, trials)) for lo in range(0, trials, step)]


def cmd_gen_instance(cfg: ExperimentConfig) -> list[str]:
    p = cfg.params
    if p["kind"] == "worst-case":
        inst = instances.worst_case_instance(p["kappa"], p["n"], p["epsilon"])
    else:
        rng = stream(p["seed"], 0)
        spec = typical.sample_uniform_spectrum(p["n"], p["kappa"], rng)
        b = typical.sample_porter_thomas_state(p["n"], rng)
        inst = instances.QLSPInstance(spec, b, p["epsilon"])
    path = _out_base(cfg) + ".json"
    write_json(path, instances.to_json_dict(inst), "instance")
    return [path]


def cmd_adversary_pair(cfg: ExperimentConfig) -> list[str]:
    inst = _build_instance(cfg)
    pair = adversary.build_pair(inst)
    path = _out_base(cfg) + ".json"
    write_json(path, adversary.certificate(pair), "adversary_certificate")
    return [path]


def cmd_verify(cfg: ExperimentConfig) -> list[str]:
    p = cfg.params
    inst = instances.worst_case_instance(p["kappa"], p["n"])
    x = instances.solve(inst)
    test = verifier.make_test_state(x, p["d"], p["kind"])
    trials, seed = p["trials"], p["seed"]
    with ThreadPoolExecutor(max_workers=max(1, p["jobs"])) as pool:
        parts = list(
            pool.map(
                lambda r: verifier.run_trials(inst, test.rho, p["eps_solver"], seed, r),
                _chunks(trials, p["jobs"]),
            )
        )
    accept = np.concatenate([a for a, _, _ in parts])
    hamming = np.concatenate([h for _, h, _ in parts])
    p_exact_per_trial = np.concatenate([e for _, _, e in parts])

    # Exact mean and Poisson-binomial sigma of the empirical accept rate.
    p_exact = float(p_exact_per_trial.mean())
    sigma = math.sqrt(float(np.sum(p_exact_per_trial * (1.0 - p_exact_per_trial)))) / trials
    rate = float(accept.mean())
    report = {
        "kappa": p["kappa"],
        "n": p["n"],
        "d": p["d"],
        "kind": p["kind"],
        "eps_solver": p["eps_solver"],
        "trials": trials,
        "seed": seed,
        "accept_count": int(accept.sum()),
        "accept_rate": rate,
        "p_r1_exact": p_exact,
        "binomial_sigma": sigma,
        "within_3_sigma": bool(abs(rate - p_exact) <= 3.0 * sigma + 1e-12),
    }
    written = []
    base = _out_base(cfg)
    if p["format"] in ("json", "both"):
        write_json(base + ".json", report, "verify_report")
        written.append(base + ".json")
    if p["format"] in ("csv", "both"):
        rows = [[t, int(accept[t]), int(hamming[t])] for t in range(trials)]
        write_csv(base + ".csv", ["trial", "r", "hamming"], rows)
        written.append(base + ".csv")
    return written


def cmd_typical_sweep(cfg: ExperimentConfig) -> list[str]:
    p = cfg.params
    n, kappa, trials, seed = p["n"], p["kappa"], p["trials"], p["seed"]
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    with ThreadPoolExecutor(max_workers=max(1, p["jobs"])) as pool:
        parts = list(
            pool.map(
                lambda r: typical.concentration_trials(n, kappa, trials, seed, r),
                _chunks(trials, p["jobs"]),
            )
        )
    values = np.concatenate(parts)
    report = typical.report_from_values(n, kappa, trials, seed, values)
    written = []
    base = _out_base(cfg)
    if p["format"] in ("json", "both"):
        data = {
            "n": report.n,
            "kappa": report.kappa,
            "trials": report.trials,
            "values": report.values,
            "tail_count": report.tail_count,
            "empirical_tail": report.empirical_tail,
            "bound_value": report.bound_value,
            "seed": report.seed,
        }
        write_json(base + ".json", data, "concentration_report")
        written.append(base + ".json")
    if p["format"] in ("csv", "both"):
        rows = [
            [t, report.values[t], report.in_window(report.values[t])]
            for t in range(trials)
        ]
        write_csv(base + ".csv", ["trial", "inverse_norm", "in_window"], rows)
        written.append(base + ".csv")
    return written


def cmd_pm_bound(cfg: ExperimentConfig) -> list[str]:
    inst = _build_instance(cfg)
    pair = adversary.build_pair(inst)
    cert = pm_bounds.pm_certificate(pair)
    path = _out_base(cfg) + ".json"
    write_json(path, pm_bounds.certificate_json_dict(cert), "pm_certificate")
    return [path]


def cmd_cost_gap(cfg: ExperimentConfig) -> list[str]:
    p = cfg.params
    kappas = [float(k) for k in str(p["kappas"]).split(",") if k.strip()]
    if not kappas:
        raise ValueError("need at least one condition number")
    entries = []
    for kappa in kappas:
        inst = cost_hamiltonian.gap_probe_instance(kappa, p["n"])
        report = cost_hamiltonian.spectral_gap(inst)
        cmin = cost_hamiltonian.cmin_estimate(inst, report)
        shots = cost_hamiltonian.shots_to_resolve(inst, p["z"], report)
        entries.append(
            {
                "kappa": kappa,
                "gap": report.gap,
                "lambda_ss": report.lambda_ss,
                "lambda_ss_sq": report.bound,
                "cmin": cmin,
                "shots": shots,
                "ground_energy": report.ground_energy,
                "ground_overlap_with_x": report.ground_overlap_with_x,
                "near_degenerate": report.near_degenerate,
            }
        )
    written = []
    base = _out_base(cfg)
    if p["format"] in ("json", "both"):
        data = {"n": p["n"], "confidence_z": p["z"], "entries": entries}
        write_json(base + ".json", data, "cost_gap_report")
        written.append(base + ".json")
    if p["format"] in ("csv", "both"):
        rows = [
            [e["kappa"], e["gap"], e["lambda_ss_sq"], e["cmin"], e["shots"]]
            for e in entries
        ]
        write_csv(base + ".csv", ["kappa", "gap", "lambda_ss_sq", "cmin", "shots"], rows)
        written.append(base + ".csv")
    return written


def _run_sub(command: str, params: dict) -> list[str]:
    cfg = ExperimentConfig(command=command, params=params)
    return DISPATCH[command](cfg)


def cmd_report_all(cfg: ExperimentConfig) -> list[str]:
    p = cfg.params
    out = p["out_dir"]
    seed, jobs, trials = p["seed"], p["jobs"], p["trials"]
    written: list[str] = []

    written += _run_sub("gen-instance", {
        "kind": "worst-case", "n": 8, "kappa": 100.0, "epsilon": 1e-2,
        "seed": seed, "out": os.path.join(out, "instance"),
    })
    for kappa in (10.0, 100.0, 1000.0):
        written += _run_sub("adversary-pair", {
            "n": 64, "kappa": kappa, "b_mode": "random", "min_sign": 1,
            "worst_case": False, "seed": seed,
            "out": os.path.join(out, f"adversary-kappa{int(kappa)}"),
        })
    for d in (0.125, 0.3, 0.6):
        written += _run_sub("verify", {
            "n": 4, "kappa": 10.0, "d": d, "kind": "pure", "eps_solver": 0.0,
            "trials": trials, "jobs": jobs, "seed": seed, "format": "both",
            "out": os.path.join(out, f"verify-d{d}"),
        })
    for n, kappa in ((256, 16.0), (512, 16.0), (1024, 16.0), (2048, 16.0)):
        written += _run_sub("typical-sweep", {
            "n": n, "kappa": kappa, "trials": min(trials, 400), "jobs": jobs,
            "seed": seed, "format": "both",
            "out": os.path.join(out, f"concentration-n{n}"),
        })
    written += _run_sub("pm-bound", {
        "n": 8, "kappa": 300.0, "b_mode": "random", "min_sign": 1,
        "worst_case": True, "seed": seed, "out": os.path.join(out, "pm-bound"),
    })
    written += _run_sub("cost-gap", {
        "kappas": "4,8,16,32", "n": 8, "z": 1.0, "seed": seed, "format": "both",
        "out": os.path.join(out, "cost-gap"),
    })
    manifest_path = os.path.join(out, "manifest.json")
    rel = sorted(os.path.relpath(w, out) for w in written)
    write_json(manifest_path, {"seed": seed, "files": rel}, "manifest")
    return written + [manifest_path]


DISPATCH = {
    "gen-instance": cmd_gen_instance,
    "adversary-pair": cmd_adversary_pair,
    "verify": cmd_verify,
    "typical-sweep": cmd_typical_sweep,
    "pm-bound": cmd_pm_bound,
    "cost-gap": cmd_cost_gap,
    "report-all": cmd_report_all,
}


def main(argv: list[str] | None = None) -> int:
    parser, subparsers = build_parser()
    try:
        args = _apply_config_file(
            parser, subparsers, list(sys.argv[1:] if argv is None else argv)
        )
        cfg = _resolve(args)
        written = DISPATCH[cfg.command](cfg)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
