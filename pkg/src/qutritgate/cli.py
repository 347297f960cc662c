"""Command-line front end: ``qutritgate {verify,trace,simulate,sweep,cost}``.

Settings come from built-in defaults, then an optional ``--config`` file of
``key = value`` lines, then command-line flags. Every output embeds the fully
resolved configuration. Exit codes: 0 pass, 1 check failure, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import analysis
from .errors import (
    AsymmetricDriveError,
    DegenerateScheduleError,
    IntegrationError,
    NormalizationError,
    QutritGateError,
    RegimeWarning,
    UnreachablePhaseError,
    UnsupportedSizeError,
)
from .physics import DriveParams, HamiltonianLevel, derive_params, phase_pulse_schedule, regime_warnings, swap_pulse_schedule
from .register import labels_of
from .synthesis import apply_sequence, build_sequence, computational_state, target_diagonal, verify_against_target

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

COMMON = {"out": None, "format": "json", "seed": 0, "jobs": 1, "tol": 1e-12}
DRIVE = {
    "omega": "1,1",
    "phases": "0,0",
    "g": 1.0,
    "delta1": 100.0,
    "delta2": 110.0,
    "fock_cutoff": 3,
    "n_atoms": 2,
    "pair": "0,1",
}
DEFAULTS = {
    "verify": {"n": 3, "phi": math.pi},
    "trace": {"phi": math.pi, "alpha": None},
    "simulate": {**DRIVE, "gate": "swap", "level": "reduced", "scale": 1.0, "tol": 1e-9},
    "sweep": {**DRIVE, "kind": "swap", "scales": "1,2,4"},
    "cost": {"n_min": 3, "n_max": 10, "xi": 1.0, "schemes": "expose,hide"},
}
TYPES = {
    "n": int, "seed": int, "jobs": int, "fock_cutoff": int, "n_atoms": int, "n_min": int, "n_max": int,
    "phi": float, "tol": float, "g": float, "delta1": float, "delta2": float, "scale": float, "xi": float,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- formatting


def fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    s = format(x, ".17g")
    return s if any(c in s for c in ".en") else s + ".0"


def to_json(obj) -> str:
    """Deterministic JSON (sorted keys) with floats at 17 significant digits."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in sorted(obj.items()))
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json([obj.real, obj.imag])
    return json.dumps(str(obj))


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if v is None:
        return ""
    return str(v)


def to_csv(config: dict, meta: dict, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    for k, v in sorted(config.items()):
        buf.write(f"# config {k}={_cell(v)}\n")
    for k, v in sorted(meta.items()):
        buf.write(f"# {k}={_cell(v) if not isinstance(v, (list, dict)) else to_json(v)}\n")
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(_cell(v) for v in r) + "\n")
    return buf.getvalue()


def level_label(levels) -> str:
    return "".join("a" if x == 2 else "r" if x == 3 else str(x) for x in levels)


# ---------------------------------------------------------------- config


def read_config_file(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def resolve_config(command: str, flags: dict) -> dict:
    cfg = {**COMMON, **DEFAULTS[command]}
    if flags.get("config"):
        try:
            from_file = read_config_file(flags["config"])
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        unknown = set(from_file) - set(cfg) - {"command"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update({k: v for k, v in from_file.items() if k != "command"})
    cfg.update({k: v for k, v in flags.items() if v is not None and k in cfg})
    for key, typ in TYPES.items():
        if key in cfg and cfg[key] is not None:
            try:
                cfg[key] = typ(cfg[key])
            except ValueError:
                raise UsageError(f"{key} must be {typ.__name__}, got {cfg[key]!r}") from None
    if cfg["format"] not in ("json", "csv"):
        raise UsageError("format must be json or csv")
    if not cfg["tol"] > 0:
        raise UsageError("tol must be positive")
    if cfg["jobs"] < 1:
        raise UsageError("jobs must be >= 1")
    cfg["command"] = command
    return cfg


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(eval_number(s)) for s in str(text).split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} comma-separated values, got {text!r}")
    return vals


def eval_number(s: str) -> float:
    """Float literal, optionally a multiple of ``pi`` such as ``pi/2`` or ``-0.5*pi``."""
    s = s.strip().lower().replace(" ", "")
    if "pi" not in s:
        return float(s)
    head, _, tail = s.partition("pi")
    head = head.rstrip("*")
    coef = -1.0 if head == "-" else 1.0 if head in ("", "+") else float(head)
    div = float(tail[1:]) if tail.startswith("/") else 1.0
    if tail and not tail.startswith("/"):
        raise ValueError(s)
    return coef * math.pi / div


def drive_from_config(cfg: dict, scale: float = 1.0) -> DriveParams:
    pair = tuple(int(x) for x in _floats(cfg["pair"], 2))
    try:
        p = DriveParams(
            omega=tuple(_floats(cfg["omega"], 2)),
            drive_phase=tuple(_floats(cfg["phases"], 2)),
            g=cfg["g"],
            delta1=cfg["delta1"],
            delta2=cfg["delta2"],
            n_atoms=cfg["n_atoms"],
            driven_pair=pair,
            fock_cutoff=cfg["fock_cutoff"],
        )
    except QutritGateError as exc:
        raise UsageError(str(exc)) from None
    return p.scaled(scale) if scale != 1.0 else p


# ---------------------------------------------------------------- commands


def run_verify(cfg: dict):
    n = cfg["n"]
    if not 3 <= n <= 8:
        raise UsageError(f"verify supports 3 <= n <= 8, got n={n}")
    rep = verify_against_target(n, cfg["phi"], cfg["tol"])
    rng = np.random.default_rng(cfg["seed"])
    alpha = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    alpha /= np.linalg.norm(alpha)
    out = apply_sequence(computational_state(n, alpha), build_sequence(n, cfg["phi"]))
    expected = computational_state(n, alpha * target_diagonal(n, cfg["phi"]))
    random_err = float(np.max(np.abs(out.amplitudes - expected.amplitudes)))
    passed = rep.passed and random_err <= cfg["tol"]
    result = {
        "n": n,
        "phi": rep.phi,
        "max_elementwise_error": rep.max_elementwise_error,
        "ancilla_leakage": rep.ancilla_leakage,
        "random_input_error": random_err,
        "gate_counts": rep.counts,
        "passed": passed,
    }
    header = ["quantity", "value"]
    rows = [[k, v] for k, v in result.items() if k != "gate_counts"] + [[k, v] for k, v in rep.counts.items()]
    return result, header, rows, {}, EXIT_OK if passed else EXIT_FAIL


def _parse_alpha(cfg: dict) -> np.ndarray:
    if cfg["alpha"] is None:
        rng = np.random.default_rng(cfg["seed"])
        a = rng.normal(size=8) + 1j * rng.normal(size=8)
        return a / np.linalg.norm(a)
    try:
        a = np.array([complex(s.strip().replace(" ", "")) for s in str(cfg["alpha"]).split(",")])
    except ValueError:
        raise UsageError(f"cannot parse alpha {cfg['alpha']!r}") from None
    if a.shape != (8,):
        raise UsageError("alpha needs 8 comma-separated complex coefficients")
    return a


def run_trace(cfg: dict):
    alpha = _parse_alpha(cfg)
    seq = build_sequence(3, cfg["phi"])
    state = computational_state(3, alpha)
    final, steps = apply_sequence(state, seq, record=True)
    expected = computational_state(3, alpha * target_diagonal(3, cfg["phi"]))
    final_err = float(np.max(np.abs(final.amplitudes - expected.amplitudes)))
    tables = []
    rows = []
    for i, (g, st) in enumerate(zip(seq.gates, steps), 1):
        table = []
        for idx, amp in enumerate(st.amplitudes):
            label = level_label(labels_of(st.register, idx))
            table.append({"label": label, "amplitude": complex(amp)})
            rows.append([i, g.name, label, amp.real, amp.imag])
        tables.append({"step": i, "gate": g.name, "amplitudes": table})
    passed = final_err <= cfg["tol"]
    result = {"alpha": [complex(a) for a in alpha], "steps": tables, "final_error": final_err, "passed": passed}
    meta = {"final_error": final_err, "passed": passed}
    return result, ["step", "gate", "label", "re", "im"], rows, meta, EXIT_OK if passed else EXIT_FAIL


def _schedule_summary(p: DriveParams, gate: str, level: HamiltonianLevel) -> dict:
    if gate == "swap":
        sched = swap_pulse_schedule(p, level=level)
    else:
        sched, _ = phase_pulse_schedule(p, level=level)
    return {
        "duration": sched.duration,
        "drive_phase": list(sched.params.drive_phase),
        "post_corrections": [[s, lv, th] for s, lv, th in sched.post_corrections],
        "conditional_phase": sched.conditional_phase,
    }


def run_simulate(cfg: dict):
    if cfg["gate"] not in ("swap", "phase"):
        raise UsageError("gate must be swap or phase")
    try:
        level = HamiltonianLevel(cfg["level"])
    except ValueError:
        raise UsageError("level must be full, effective or reduced") from None
    p = drive_from_config(cfg, cfg["scale"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        d = derive_params(p)
        run = analysis.simulate_gate(p, cfg["gate"], level)
        schedule = _schedule_summary(p, cfg["gate"], level)
    fidelity = 1.0 - run.infidelity
    rows = []
    amps = []
    for idx in range(run.final.register.total_dim):
        a0, a1, ai = run.initial.amplitudes[idx], run.final.amplitudes[idx], run.ideal.amplitudes[idx]
        label = level_label(labels_of(run.final.register, idx))
        rows.append([label, a0.real, a0.imag, a1.real, a1.imag, ai.real, ai.imag])
        amps.append({"label": label, "initial": complex(a0), "final": complex(a1), "ideal": complex(ai)})
    meta = {
        "fidelity": fidelity,
        "infidelity": run.infidelity,
        "norm_error": run.norm_error,
        "vacuum_leakage": run.vacuum_leakage,
        "regime_warnings": regime_warnings(p, d),
        "derived": asdict(d),
        "schedule": schedule,
    }
    result = {**meta, "amplitudes": amps}
    header = ["label", "initial_re", "initial_im", "final_re", "final_im", "ideal_re", "ideal_im"]
    return result, header, rows, meta, EXIT_OK


def run_sweep(cfg: dict):
    scales = _floats(cfg["scales"])
    if not scales:
        raise UsageError("scales list is empty")
    if cfg["kind"] not in ("swap", "phase"):
        raise UsageError("kind must be swap or phase")
    base = drive_from_config(cfg)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            res = analysis.detuning_scaling_sweep(base, scales, cfg["kind"], jobs=cfg["jobs"])
    except analysis.ArgumentError as exc:
        raise UsageError(str(exc)) from None
    header = ["scale", "infidelity", "duration", "norm_error", "vacuum_leakage"]
    rows = [list(r) for r in zip(res.scale, res.infidelity, res.duration, res.norm_error, res.vacuum_leakage)]
    meta = {"fitted_order": res.fitted_order, "strictly_decreasing": res.is_strictly_decreasing()}
    result = {**meta, "rows": [dict(zip(header, r)) for r in rows]}
    return result, header, rows, meta, EXIT_OK


def run_cost(cfg: dict):
    try:
        schemes = [analysis.Scheme(s.strip()) for s in cfg["schemes"].split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"unknown scheme in {cfg['schemes']!r}") from None
    if cfg["n_min"] > cfg["n_max"]:
        raise UsageError("n_min must not exceed n_max")
    header = ["scheme", "n", "two_site_gate_count", "single_site_gate_count", "coupling_time_units", "total_coupling_time"]
    rows = []
    try:
        for n in range(cfg["n_min"], cfg["n_max"] + 1):
            for s in schemes:
                r = analysis.cost_report(s, n, cfg["xi"])
                units = None if r.coupling_time_units is None else str(r.coupling_time_units)
                rows.append([r.scheme.value, n, r.two_site_gate_count, r.single_site_gate_count, units, r.total_coupling_time])
    except (UnsupportedSizeError, analysis.ArgumentError) as exc:
        raise UsageError(str(exc)) from None
    result = {"rows": [dict(zip(header, r)) for r in rows]}
    return result, header, rows, {}, EXIT_OK


COMMANDS = {"verify": run_verify, "trace": run_trace, "simulate": run_simulate, "sweep": run_sweep, "cost": run_cost}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qutritgate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key = value settings file (flags override it)")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--format", choices=["json", "csv"])
        sp.add_argument("--seed", type=int)
        sp.add_argument("--jobs", type=int)
        sp.add_argument("--tol", type=float)

    def drive(sp):
        sp.add_argument("--omega", help="Rabi frequencies of the driven pair, e.g. 1,1")
        sp.add_argument("--phases", help="laser phases of the driven pair, e.g. 0,pi/2")
        sp.add_argument("--g", type=float)
        sp.add_argument("--delta1", type=float)
        sp.add_argument("--delta2", type=float)
        sp.add_argument("--fock-cutoff", dest="fock_cutoff", type=int)
        sp.add_argument("--n-atoms", dest="n_atoms", type=int)
        sp.add_argument("--pair", help="driven atom pair, e.g. 0,1")

    sp = sub.add_parser("verify", help="check the qutrit sequence against the n-qubit phase gate")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--phi", type=eval_number)

    sp = sub.add_parser("trace", help="three-qubit walkthrough, state after every gate")
    common(sp)
    sp.add_argument("--phi", type=eval_number)
    sp.add_argument("--alpha", help="8 comma-separated complex coefficients (default: seeded random)")

    sp = sub.add_parser("simulate", help="run one physical gate and score it")
    common(sp)
    drive(sp)
    sp.add_argument("--gate", choices=["swap", "phase"])
    sp.add_argument("--level", choices=[lv.value for lv in HamiltonianLevel])
    sp.add_argument("--scale", type=float, help="multiply both detunings")

    sp = sub.add_parser("sweep", help="full-model infidelity versus detuning scale")
    common(sp)
    drive(sp)
    sp.add_argument("--kind", choices=["swap", "phase"])
    sp.add_argument("--scales", help="comma-separated increasing scales >= 1")

    sp = sub.add_parser("cost", help="gate counts and coupling times per scheme")
    common(sp)
    sp.add_argument("--n-min", dest="n_min", type=int)
    sp.add_argument("--n-max", dest="n_max", type=int)
    sp.add_argument("--xi", type=float)
    sp.add_argument("--schemes", help="comma list of " + ",".join(s.value for s in analysis.Scheme))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    flags = vars(args)
    command = flags.pop("command")
    try:
        cfg = resolve_config(command, flags)
        result, header, rows, meta, code = COMMANDS[command](cfg)
    except (UsageError, UnsupportedSizeError, NormalizationError, AsymmetricDriveError, DegenerateScheduleError, UnreachablePhaseError) as exc:
        print(f"qutritgate {command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, QutritGateError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"qutritgate {command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    config = {k: v for k, v in cfg.items() if k != "out"}
    if cfg["format"] == "json":
        text = to_json({"config": config, "result": result}) + "\n"
    else:
        text = to_csv(config, meta, header, rows)
    if cfg["out"]:
        Path(cfg["out"]).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
