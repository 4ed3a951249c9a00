"""Command-line frontend: law evaluation, samplers, experiments, verification.

Exit codes: 0 success, 1 verification-criterion failure, 2 usage or domain
error, 3 resource or numerical error.  Every command accepts ``--seed``;
when omitted, a fresh entropy seed is drawn and echoed on stderr so the run
can be replayed.  A ``--config`` file holds flat ``key=value`` lines that
fill in any flag not given on the command line (flags win).
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext

import numpy as np

from . import analytic, hitting, mc, paths, verify
from .errors import DomainError, NumericError, ResourceError, StatisticsError
from .rng import entropy_seed, substream

_LAWS = (
    "laplace", "joint-density", "t-density", "x-density", "x-cdf",
    "rbm-density", "rbb-density", "moment", "tail-asymptotic", "expected-area",
)
_TARGETS = ("ray-hit", "x", "rbm", "rbb", "bm-path", "bb-path", "srw-path")


def _parse_value(text: str):
    """A float, or an inclusive range "lo:hi:n" meaning a linspace grid."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"range must be lo:hi:n, got {text!r}")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 2:
            raise DomainError("range needs at least 2 points")
        return np.linspace(lo, hi, n)
    return float(text)


def _read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"config line is not key=value: {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _coerce(value: str):
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit master seed")
    common.add_argument("--threads", type=int, default=None, help="worker cap")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--config", default=None, help="key=value defaults file")

    parser = argparse.ArgumentParser(
        prog="starhull",
        description="Brownian hull laws, exact samplers, and verification runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate a closed-form law")
    p_eval.add_argument("law", choices=_LAWS)
    for opt in ("rho", "mu", "t", "x", "p", "c", "alpha"):
        p_eval.add_argument(f"--{opt}", type=_parse_value, default=None)
    p_eval.add_argument("--lambda", dest="lam", type=_parse_value, default=None)
    p_eval.add_argument("--process", choices=("bm", "bb"), default=None)
    p_eval.add_argument("--hull", choices=("topological", "star", "convex"), default=None)

    p_sample = sub.add_parser("sample", parents=[common], help="draw samples to CSV/JSON")
    p_sample.add_argument("target", choices=_TARGETS)
    p_sample.add_argument("-n", type=int, default=None, help="number of draws")
    p_sample.add_argument("--rho", type=float, default=None)
    p_sample.add_argument("--steps", type=int, default=None, help="path steps")
    p_sample.add_argument("--dt", type=float, default=None)

    p_verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    p_verify.add_argument("suite", choices=verify.suite_names())
    p_verify.add_argument("--budget", choices=("quick", "desk", "paper"), default=None)

    p_exp = sub.add_parser("experiment", parents=[common], help="run a named experiment")
    p_exp.add_argument("--name", required=True,
                       choices=("area", "radial_area", "ray_laplace", "tail", "hull_bm_topo"))
    p_exp.add_argument("-n", type=int, default=None, help="replica count")
    p_exp.add_argument("--process", choices=("bm", "bb"), default=None)
    p_exp.add_argument("--hull", choices=("topological", "star", "convex"), default=None)
    p_exp.add_argument("--steps", type=int, default=None)
    p_exp.add_argument("--bins", type=int, default=None)
    p_exp.add_argument("--cell", type=float, default=None)
    p_exp.add_argument("--rho", type=float, default=None)
    p_exp.add_argument("--lambda", dest="lam", type=float, default=None)
    p_exp.add_argument("--mu", type=float, default=None)
    p_exp.add_argument("--walk-len", type=int, default=None)
    return parser


def _apply_config(ns: argparse.Namespace) -> None:
    if ns.config is None:
        return
    for key, value in _read_config(ns.config).items():
        if getattr(ns, key, None) is None:
            setattr(ns, key, _coerce(value))


def _resolve_seed(ns: argparse.Namespace) -> int:
    if ns.seed is None:
        ns.seed = entropy_seed()
        print(f"seed: {ns.seed}", file=sys.stderr)
    return ns.seed


def _open_out(ns):
    if ns.out is None:
        return nullcontext(sys.stdout)
    return open(ns.out, "w")


def _json_record(ns, name: str, params: dict, payload: dict) -> str:
    record = {
        "name": name,
        "params": params,
        "seed": ns.seed,
        "config_digest": mc.config_digest({"name": name, **params, "seed": ns.seed}),
    }
    record.update(payload)
    return json.dumps(record, indent=2, default=float)


def _require(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise DomainError(f"missing required parameter(s): {', '.join(missing)}")
    return [params[n] for n in names]


def _eval_law(law: str, p: dict):
    """Return (swept-parameter name or None, value or array of values)."""
    grids = {k: v for k, v in p.items() if isinstance(v, np.ndarray)}
    if len(grids) > 1:
        raise DomainError("at most one parameter may be a range")
    if law == "laplace":
        rho, lam, mu = _require(p, "rho", "lam", "mu")
        value = analytic.ray_hit_laplace(rho, lam, mu)
    elif law == "joint-density":
        rho, t, x = _require(p, "rho", "t", "x")
        value = analytic.ray_hit_density(rho, t, x)
    elif law == "t-density":
        rho, t = _require(p, "rho", "t")
        if isinstance(t, np.ndarray):
            value = np.array([analytic.hit_time_density(rho, tv) for tv in t])
        else:
            value = analytic.hit_time_density(rho, t)
    elif law == "x-density":
        rho, x = _require(p, "rho", "x")
        value = analytic.hit_place_density(rho, x)
    elif law == "x-cdf":
        rho, x = _require(p, "rho", "x")
        value = analytic.hit_place_cdf(rho, x)
    elif law == "rbm-density":
        (rho,) = _require(p, "rho")
        if isinstance(rho, np.ndarray):
            value = np.array([analytic.bm_radial_density(r) for r in rho])
        else:
            value = analytic.bm_radial_density(rho)
    elif law == "rbb-density":
        (rho,) = _require(p, "rho")
        value = analytic.bb_radial_density(rho)
    elif law == "moment":
        if p.get("c") is not None or p.get("alpha") is not None:
            c, alpha, pw = _require(p, "c", "alpha", "p")
            value = analytic.erfc_gamma_moment(c, alpha, pw)
        else:
            process, pw = _require(p, "process", "p")
            fn = analytic.bm_radial_moment if process == "bm" else analytic.bb_radial_moment
            value = fn(pw)
    elif law == "tail-asymptotic":
        rho, t = _require(p, "rho", "t")
        value = analytic.hit_time_tail_asymptotic(rho, t)
    else:  # expected-area
        process, hull = _require(p, "process", "hull")
        value = analytic.expected_hull_area(process, hull)
    swept = next(iter(grids), None)
    return swept, value


def _cmd_eval(ns) -> int:
    params = {
        "rho": ns.rho, "lam": ns.lam, "mu": ns.mu, "t": ns.t, "x": ns.x,
        "p": ns.p, "c": ns.c, "alpha": ns.alpha,
        "process": ns.process, "hull": ns.hull,
    }
    swept, value = _eval_law(ns.law, params)

    def fmt(v):
        return "unknown" if v is None else f"{v:.15g}"

    record_params = {k: v for k, v in params.items() if v is not None}
    record_params = {
        k: (v.tolist() if isinstance(v, np.ndarray) else v)
        for k, v in record_params.items()
    }
    with _open_out(ns) as fh:
        if ns.format == "json":
            if swept is None:
                payload = {"value": value}
            else:
                payload = {
                    "swept": swept,
                    "values": [
                        {swept: float(g), "value": float(v)}
                        for g, v in zip(params[swept], np.atleast_1d(value))
                    ],
                }
            fh.write(_json_record(ns, f"eval-{ns.law}", record_params, payload) + "\n")
        elif swept is None:
            fh.write(fmt(value) + "\n")
        else:
            fh.write(f"{swept},value\n")
            for g, v in zip(params[swept], np.atleast_1d(value)):
                fh.write(f"{g:.15g},{fmt(float(v))}\n")
    return 0


def _cmd_sample(ns) -> int:
    n = ns.n if ns.n is not None else 1
    if n < 1:
        raise DomainError("n must be >= 1")
    rho = ns.rho if ns.rho is not None else 1.0
    rng = substream(ns.seed, 0)

    if ns.target.endswith("-path"):
        if n != 1:
            raise DomainError("path targets write one path per invocation (n must be 1)")
        steps = ns.steps if ns.steps is not None else 1024
        process = {"bm-path": "bm", "bb-path": "bb", "srw-path": "srw"}[ns.target]
        horizon = float(steps) if process == "srw" else 1.0
        spec = paths.PathSpec(process, steps, horizon, ns.seed)
        path = paths.sample_path(spec, rng)
        times = paths.path_times(spec)
        with _open_out(ns) as fh:
            if ns.format == "json":
                rows = [[float(t), float(x), float(y)]
                        for t, (x, y) in zip(times, path.vertices)]
                fh.write(_json_record(
                    ns, f"sample-{ns.target}",
                    {"steps": steps, "n": 1}, {"header": ["t", "x", "y"], "rows": rows},
                ) + "\n")
            else:
                paths.write_path_csv(path, times, fh)
        return 0

    if ns.target == "ray-hit":
        t, x = hitting.ray_hit_batch(rho, n, rng)
        rows, header = np.column_stack([t, x]), "t,x"
    elif ns.target == "x":
        rows, header = hitting.hit_place_batch(rho, n, rng), "x"
    elif ns.target == "rbm":
        rows, header = hitting.bm_radial_batch(n, rng), "r"
    else:
        rows, header = hitting.bb_radial_batch(n, rng), "r"
    with _open_out(ns) as fh:
        if ns.format == "json":
            data = np.atleast_2d(rows.T).T.tolist()
            fh.write(_json_record(
                ns, f"sample-{ns.target}", {"rho": rho, "n": n},
                {"header": header.split(","), "rows": data},
            ) + "\n")
        else:
            hitting.write_samples_csv(rows, fh, header)
    return 0


def _cmd_verify(ns) -> int:
    budget = ns.budget or "desk"
    threads = ns.threads or 1
    records = verify.run_suite(ns.suite, budget, seed=ns.seed_explicit, threads=threads)
    ok = all(r["pass"] for r in records)
    report = {
        "name": f"verify-{ns.suite}",
        "params": {"suite": ns.suite, "budget": budget},
        "seed": ns.seed,
        "config_digest": mc.config_digest({"suite": ns.suite, "budget": budget}),
        "pass": ok,
        "criteria": records,
    }
    with _open_out(ns) as fh:
        fh.write(json.dumps(report, indent=2, default=float) + "\n")
    if not ok:
        failing = [r["name"] for r in records if not r["pass"]]
        print(f"FAILED criteria: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def _cmd_experiment(ns) -> int:
    n = ns.n if ns.n is not None else 10_000
    spec = mc.ExperimentSpec(
        ns.name, n, ns.seed,
        process=ns.process, hull=ns.hull, n_steps=ns.steps, n_bins=ns.bins,
        cell_size=ns.cell, rho=ns.rho, lam=ns.lam, mu=ns.mu, walk_len=ns.walk_len,
    )
    record = mc.run_experiment(spec, threads=ns.threads or 1)
    with _open_out(ns) as fh:
        fh.write(json.dumps(record, indent=2, default=float) + "\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        try:
            ns = parser.parse_args(argv)
        except SystemExit as exc:  # argparse reports usage errors itself
            return int(exc.code or 0)
        _apply_config(ns)
        ns.seed_explicit = ns.seed  # verify suites fall back to pinned seeds
        _resolve_seed(ns)
        if ns.format is None:
            ns.format = "json" if ns.command in ("verify", "experiment") else "csv"
        handler = {
            "eval": _cmd_eval,
            "sample": _cmd_sample,
            "verify": _cmd_verify,
            "experiment": _cmd_experiment,
        }[ns.command]
        return handler(ns)
    except (DomainError, StatisticsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
