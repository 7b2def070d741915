"""Command-line front end: every computation as a subcommand with file outputs.

Runs are reproducible: a fixed parameter set (plus seed where sampling is
involved) produces byte-identical output files.  CSV outputs start with a
provenance block of ``# key = value`` lines echoing the resolved parameters,
defaults included; JSON outputs mirror the same fields under a ``config``
entry.  Relative output paths land under ``$BOSECYCLES_OUTDIR`` when set.

Parameters can come from a plain-text config file (``key = value`` lines,
``#`` comments) named with ``--config``; command-line flags win over file
entries.  The system is fixed by exactly one of ``--L``, ``--rho``,
``--rho-lambda3`` together with ``--N``, and at most one of ``--beta``,
``--lam`` (neither means lam = 1).

Exit codes: 0 success, 2 invalid usage or configuration, 3 numeric or
tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .coupling import (
    CouplingParams,
    census_rows,
    census_to_csv,
    coupling_sweep,
    enumerate_merger_graphs,
    optimize_coupling,
    sweep_to_csv,
)
from .cycle_engine import (
    SystemParams,
    WeightSequence,
    aggregate_macroscopic,
    brute_force_partition_fn,
    build_partition_table,
    cycle_density_spectrum,
    sample_cycle_type,
)
from .potentials import gaussian_potential, free_energy_bounds, load_potential
from .thermo import finite_size_scan, ideal_point, scan_to_csv, scan_to_json_dict
from .wavefunctions import CycleWaveParams, profile_to_csv, wave_profile

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

OUTDIR_ENV = "BOSECYCLES_OUTDIR"


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


# ----------------------------------------------------------------------
# config file handling


def _int_list(text: str) -> list[int]:
    items = [int(tok) for tok in text.split(",") if tok.strip()]
    if not items:
        raise ValueError(f"empty integer list: {text!r}")
    return items


def _float_list(text: str) -> list[float]:
    items = [float(tok) for tok in text.split(",") if tok.strip()]
    if not items:
        raise ValueError(f"empty float list: {text!r}")
    return items


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# one converter per option name, shared by flags and config files
_OPTION_TYPES = {
    "d": int,
    "N": int,
    "L": float,
    "rho": float,
    "rho_lambda3": float,
    "beta": float,
    "lam": float,
    "eps": float,
    "weights": str,
    "seed": int,
    "draws": int,
    "potential": str,
    "c_u": float,
    "N_list": _int_list,
    "vertices": int,
    "max_multiplicity": int,
    "cross_check": _bool,
    "c": float,
    "rho_v": float,
    "c1": float,
    "num": int,
    "max_n": int,
    "trials": int,
    "tol": float,
    "n": int,
    "y": _float_list,
    "xbar": _float_list,
    "axis": int,
    "output": str,
    "format": str,
}


def _read_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path) as fp:
        for lineno, raw in enumerate(fp, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            entries[key.replace("-", "_")] = value
    return entries


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset options from the config file; flags given on the line win."""
    if getattr(args, "config", None) is None:
        return
    for key, text in _read_config(args.config).items():
        if key in ("config", "func", "command") or not hasattr(args, key):
            raise ConfigError(f"unknown config key for this subcommand: {key!r}")
        if getattr(args, key) is None:
            try:
                setattr(args, key, _OPTION_TYPES[key](text))
            except ValueError as exc:
                raise ConfigError(f"config key {key!r}: {exc}") from exc


# ----------------------------------------------------------------------
# shared resolution of run parameters


def _resolve_thermal(args) -> tuple[float, float]:
    """(beta, lam) from at most one of --beta/--lam; neither means lam = 1."""
    if args.beta is not None and args.lam is not None:
        raise ConfigError("give exactly one of --beta and --lam, got both")
    if args.beta is not None:
        if not args.beta > 0.0:
            raise ConfigError(f"beta must be positive, got {args.beta}")
        return args.beta, math.sqrt(2.0 * math.pi * args.beta)
    lam = 1.0 if args.lam is None else args.lam
    if not lam > 0.0:
        raise ConfigError(f"lam must be positive, got {lam}")
    return lam**2 / (2.0 * math.pi), lam


def _resolve_density(args, lam: float) -> float:
    """rho from exactly one of --rho/--rho-lambda3."""
    given = [v for v in (args.rho, args.rho_lambda3) if v is not None]
    if len(given) != 1:
        raise ConfigError("give exactly one of --rho and --rho-lambda3")
    if args.rho_lambda3 is not None:
        if args.d is not None and args.d != 3:
            raise ConfigError("--rho-lambda3 fixes rho*lam^3, so it requires d = 3; use --rho")
        rho = args.rho_lambda3 / lam**3
    else:
        rho = args.rho
    if not rho > 0.0:
        raise ConfigError(f"density must be positive, got {rho}")
    return rho


def _resolve_system(args) -> SystemParams:
    """N plus exactly one of --L/--rho/--rho-lambda3 fix the box."""
    if args.N is None:
        raise ConfigError("--N is required")
    d = 3 if args.d is None else args.d
    beta, lam = _resolve_thermal(args)
    given = [v for v in (args.L, args.rho, args.rho_lambda3) if v is not None]
    if len(given) != 1:
        raise ConfigError("give exactly one of --L, --rho, --rho-lambda3")
    if args.L is not None:
        return SystemParams(d=d, L=args.L, N=args.N, beta=beta)
    return SystemParams.from_density(d, args.N, _resolve_density(args, lam), beta)


def _load_weight_file(path: str, N: int) -> WeightSequence:
    """Cycle weights from a two-column CSV (n, w); must cover n = 1..N."""
    table: dict[int, float] = {}
    seen_data = False
    with open(path) as fp:
        for lineno, raw in enumerate(fp, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ConfigError(f"{path}:{lineno}: expected 'n,w', got {raw.strip()!r}")
            try:
                n, w = int(parts[0]), float(parts[1])
            except ValueError:
                if seen_data:
                    raise ConfigError(f"{path}:{lineno}: non-numeric row after data began")
                continue  # header row
            seen_data = True
            if n in table:
                raise ConfigError(f"{path}:{lineno}: duplicate weight for n = {n}")
            if not w > 0.0:
                raise ConfigError(f"{path}:{lineno}: weights must be positive, got {w}")
            table[n] = w
    missing = [n for n in range(1, N + 1) if n not in table]
    if missing:
        raise ConfigError(f"{path}: missing weights for n = {missing[:5]}... (need 1..{N})")
    return WeightSequence.from_weights(np.array([table[n] for n in range(1, N + 1)]))


def _resolve_potential(spec: str, d: int):
    """Inline 'gaussian:g,sigma' or the path of a potential definition file."""
    if spec.startswith("gaussian:"):
        params = spec[len("gaussian:") :].split(",")
        if len(params) != 2:
            raise ConfigError(f"expected gaussian:g,sigma, got {spec!r}")
        try:
            g, sigma = float(params[0]), float(params[1])
        except ValueError as exc:
            raise ConfigError(f"bad gaussian parameters in {spec!r}: {exc}") from exc
        return gaussian_potential(g, sigma, d=d)
    pot = load_potential(spec)
    if pot.d != d:
        raise ConfigError(f"potential file is for d = {pot.d}, run is configured for d = {d}")
    return pot


# ----------------------------------------------------------------------
# output plumbing


def _output_path(args, stem: str) -> Path:
    fmt = args.format or "csv"
    path = Path(args.output if args.output else f"{stem}.{fmt}")
    if not path.is_absolute():
        outdir = os.environ.get(OUTDIR_ENV)
        if outdir:
            path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _comment_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_comment_value(v) for v in value)
    return str(value)


def _comment_block(config: dict) -> dict:
    return {key: _comment_value(val) for key, val in config.items()}


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fp:
        json.dump(payload, fp, indent=2)
        fp.write("\n")


# ----------------------------------------------------------------------
# subcommands


def cmd_spectrum(args) -> int:
    params = _resolve_system(args)
    eps = 0.01 if args.eps is None else args.eps
    if args.weights is None:
        weights = WeightSequence.ideal(params)
    else:
        weights = _load_weight_file(args.weights, params.N)
    table = build_partition_table(params, weights)
    spectrum = cycle_density_spectrum(table)
    agg = aggregate_macroscopic(spectrum, eps)
    config = {
        "command": "spectrum",
        "d": params.d,
        "N": params.N,
        "L": params.L,
        "rho": params.rho,
        "beta": params.beta,
        "lam": params.lam,
        "eps": eps,
        "weights": args.weights if args.weights else "ideal",
    }
    path = _output_path(args, "spectrum")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            spectrum.to_csv(fp, comments=_comment_block(config))
    else:
        _write_json(
            path,
            {
                "config": config,
                **spectrum.to_json_dict(),
                "macro_fraction": agg.macro / params.rho,
                "band_fraction": agg.band / params.rho,
            },
        )
    print(f"N = {params.N}  d = {params.d}  rho_lam_d = {params.rho_lam_d!r}")
    print(f"macro_fraction = {agg.macro / params.rho!r}")
    print(f"band_fraction = {agg.band / params.rho!r}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.N_list is None or not args.N_list:
        raise ConfigError("--N-list is required (comma-separated system sizes)")
    d = 3 if args.d is None else args.d
    beta, lam = _resolve_thermal(args)
    rho = _resolve_density(args, lam)
    eps = 0.01 if args.eps is None else args.eps
    rows = finite_size_scan(rho, beta, d, args.N_list, eps)
    config = {
        "command": "scan",
        "d": d,
        "N_list": args.N_list,
        "rho": rho,
        "beta": beta,
        "lam": lam,
        "eps": eps,
    }
    path = _output_path(args, "scan")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            scan_to_csv(rows, fp, comments=_comment_block(config))
    else:
        _write_json(path, {"config": config, **scan_to_json_dict(rows)})
    for row in rows:
        print(
            f"N = {row.N}  macro_fraction = {row.macro_fraction!r}  "
            f"band_fraction = {row.band_fraction!r}"
        )
    print(f"wrote {path}")
    return EXIT_OK


def cmd_mu(args) -> int:
    d = 3 if args.d is None else args.d
    beta, lam = _resolve_thermal(args)
    rho = _resolve_density(args, lam)
    point = ideal_point(rho, beta, d)
    config = {"command": "mu", "d": d, "rho": rho, "beta": beta, "lam": lam}
    fields = {
        "mu": point.mu,
        "f0": point.f0,
        "condensate_fraction": point.condensate_fraction,
        "critical_density": point.critical_density,
        "rho_lam_d": point.rho_lam_d,
    }
    path = _output_path(args, "mu")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            for key, val in _comment_block(config).items():
                fp.write(f"# {key} = {val}\n")
            fp.write(",".join(fields) + "\n")
            fp.write(",".join(repr(v) for v in fields.values()) + "\n")
    else:
        _write_json(path, {"config": config, **fields})
    for key, val in fields.items():
        print(f"{key} = {val!r}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.potential is None:
        raise ConfigError("--potential is required (gaussian:g,sigma or a definition file)")
    d = 3 if args.d is None else args.d
    beta, lam = _resolve_thermal(args)
    rho = _resolve_density(args, lam)
    pot = _resolve_potential(args.potential, d)
    fb = free_energy_bounds(rho, beta, pot, c_u=args.c_u)
    config = {
        "command": "bounds",
        "d": d,
        "rho": rho,
        "beta": beta,
        "lam": lam,
        "potential": args.potential,
        "c_u": "default" if args.c_u is None else args.c_u,
    }
    fields = {
        "f_lower": fb.f.lower,
        "f_upper": fb.f.upper,
        "f_tilde_lower": fb.f_tilde.lower,
        "f_tilde_upper": fb.f_tilde.upper,
    }
    path = _output_path(args, "bounds")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            for key, val in _comment_block(config).items():
                fp.write(f"# {key} = {val}\n")
            fp.write(",".join(fields) + "\n")
            fp.write(",".join(repr(v) for v in fields.values()) + "\n")
    else:
        _write_json(path, {"config": config, **fields})
    print(f"f: {fb.f.lower!r} <= {fb.f.upper!r}")
    print(f"f_tilde: {fb.f_tilde.lower!r} <= {fb.f_tilde.upper!r}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_sample(args) -> int:
    params = _resolve_system(args)
    seed = 0 if args.seed is None else args.seed
    draws = 1 if args.draws is None else args.draws
    if draws < 1:
        raise ConfigError(f"--draws must be >= 1, got {draws}")
    if args.weights is None:
        weights = WeightSequence.ideal(params)
    else:
        weights = _load_weight_file(args.weights, params.N)
    table = build_partition_table(params, weights)
    rng = np.random.default_rng(seed)
    types = [sample_cycle_type(table, rng) for _ in range(draws)]
    config = {
        "command": "sample",
        "d": params.d,
        "N": params.N,
        "L": params.L,
        "rho": params.rho,
        "beta": params.beta,
        "lam": params.lam,
        "seed": seed,
        "draws": draws,
        "weights": args.weights if args.weights else "ideal",
    }
    path = _output_path(args, "sample")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            for key, val in _comment_block(config).items():
                fp.write(f"# {key} = {val}\n")
            fp.write("draw,n_cycles,lengths\n")
            for i, ct in enumerate(types, start=1):
                fp.write(f"{i},{len(ct.parts)},{' '.join(str(n) for n in ct.parts)}\n")
    else:
        _write_json(
            path,
            {"config": config, "draws_lengths": [list(ct.parts) for ct in types]},
        )
    longest = [max(ct.parts) for ct in types]
    print(f"draws = {draws}  N = {params.N}")
    print(f"longest_cycle_mean_fraction = {sum(longest) / (draws * params.N)!r}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_merger(args) -> int:
    vertices = 3 if args.vertices is None else args.vertices
    max_mult = 3 if args.max_multiplicity is None else args.max_multiplicity
    cross = bool(args.cross_check)
    census = enumerate_merger_graphs(vertices, max_mult, cross_check=cross)
    config = {
        "command": "merger",
        "vertices": vertices,
        "max_multiplicity": max_mult,
        "cross_check": cross,
    }
    path = _output_path(args, "merger")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            fp.write(f"# command = merger\n# cross_check = {cross}\n")
            census_to_csv(fp, vertices, max_mult)
    else:
        payload = {
            "config": config,
            "total": census.total,
            "admissible": census.admissible,
            "k_histogram": {str(k): census.k_histogram[k] for k in sorted(census.k_histogram)},
        }
        # full row dump only at sizes where the JSON stays manageable
        if census.total <= 65536:
            payload["rows"] = [
                {"multiplicities": list(mults), "delta": delta, "K": K}
                for mults, delta, K in census_rows(vertices, max_mult)
            ]
        _write_json(path, payload)
    hist = "  ".join(f"K={k}:{census.k_histogram[k]}" for k in sorted(census.k_histogram))
    print(f"graphs = {census.total}  admissible = {census.admissible}")
    print(hist)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_gain(args) -> int:
    for name in ("c", "rho_v", "rho"):
        if getattr(args, name) is None:
            raise ConfigError(f"--{name.replace('_', '-')} is required")
    _, lam = _resolve_thermal(args)
    d = 3 if args.d is None else args.d
    eps = 0.25 if args.eps is None else args.eps
    c1 = 1.0 if args.c1 is None else args.c1
    num = 101 if args.num is None else args.num
    params = CouplingParams(
        c=args.c, rho_v=args.rho_v, lam=lam, rho=args.rho, d=d, eps=eps, c1=c1
    )
    opt = optimize_coupling(params)
    config = {
        "command": "gain",
        "c": params.c,
        "rho_v": params.rho_v,
        "lam": params.lam,
        "rho": params.rho,
        "d": params.d,
        "eps": params.eps,
        "c1": params.c1,
        "num": num,
    }
    path = _output_path(args, "gain")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            fp.write(f"# command = gain\n# num = {num}\n")
            sweep_to_csv(fp, params, num)
    else:
        rows = coupling_sweep(params, num)
        _write_json(
            path,
            {
                "config": config,
                "a_star": opt.a_star,
                "C": opt.C,
                "clamped": opt.clamped,
                "rate_at_a_star": opt.rate_at_a_star,
                "a_numeric": opt.a_numeric,
                "rate_numeric": opt.rate_numeric,
                "sweep": {
                    "a": [r.a for r in rows],
                    "gain": [r.gain for r in rows],
                    "penalty": [r.penalty for r in rows],
                    "total": [r.total for r in rows],
                },
            },
        )
    print(f"a_star = {opt.a_star!r}  C = {opt.C!r}  clamped = {opt.clamped}")
    print(f"rate_at_a_star = {opt.rate_at_a_star!r}")
    print(f"numeric argmax: a = {opt.a_numeric!r}  rate = {opt.rate_numeric!r}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    max_n = 8 if args.max_n is None else args.max_n
    trials = 5 if args.trials is None else args.trials
    seed = 0 if args.seed is None else args.seed
    tol = 1e-10 if args.tol is None else args.tol
    if max_n < 1:
        raise ConfigError(f"--max-n must be >= 1, got {max_n}")
    if trials < 1:
        raise ConfigError(f"--trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    rows = []
    worst = 0.0
    for trial in range(1, trials + 1):
        weights = WeightSequence.from_weights(rng.lognormal(0.0, 1.0, size=max_n))
        for N in range(1, max_n + 1):
            params = SystemParams(d=3, L=1.0, N=N, beta=1.0)
            table = build_partition_table(params, weights)
            exact = brute_force_partition_fn(weights, N)
            rel = abs(math.exp(table.logQ[N]) - exact) / exact
            rows.append((trial, N, rel))
            worst = max(worst, rel)
    config = {
        "command": "oracle",
        "max_n": max_n,
        "trials": trials,
        "seed": seed,
        "tol": tol,
    }
    path = _output_path(args, "oracle")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            for key, val in _comment_block(config).items():
                fp.write(f"# {key} = {val}\n")
            fp.write("trial,N,rel_err\n")
            for trial, N, rel in rows:
                fp.write(f"{trial},{N},{rel!r}\n")
    else:
        _write_json(
            path,
            {
                "config": config,
                "worst_rel_err": worst,
                "rows": [{"trial": t, "N": N, "rel_err": r} for t, N, r in rows],
            },
        )
    print(f"worst_rel_err = {worst!r}  (tol {tol!r})")
    print(f"wrote {path}")
    if worst > tol:
        print(
            f"numeric failure: recursion deviates from enumeration by {worst!r} > {tol!r}",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_wavefn(args) -> int:
    for name in ("n", "L", "y"):
        if getattr(args, name) is None:
            raise ConfigError(f"--{name} is required")
    _, lam = _resolve_thermal(args)
    axis = 0 if args.axis is None else args.axis
    num = 257 if args.num is None else args.num
    params = CycleWaveParams(
        n=args.n,
        L=args.L,
        lam=lam,
        y=tuple(args.y),
        xbar=() if args.xbar is None else tuple(args.xbar),
    )
    config = {
        "command": "wavefn",
        "n": params.n,
        "L": params.L,
        "lam": params.lam,
        "y": list(params.y),
        "xbar": list(params.xbar),
        "axis": axis,
        "num": num,
    }
    path = _output_path(args, "wavefn")
    if (args.format or "csv") == "csv":
        with open(path, "w") as fp:
            fp.write(f"# command = wavefn\n# num = {num}\n")
            profile_to_csv(fp, params, axis=axis, num=num)
    else:
        prof = wave_profile(params, axis=axis, num=num)
        _write_json(
            path,
            {
                "config": config,
                "x": [row[0] for row in prof],
                "re_psi": [row[1] for row in prof],
                "im_psi": [row[2] for row in prof],
                "abs2": [row[3] for row in prof],
            },
        )
    print(f"wrote {path}")
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags given here win")
    p.add_argument("--output", "-o", help="output file (default <command>.<format>)")
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")


def _add_thermal(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta", type=float, help="inverse temperature (exactly one of beta/lam)")
    p.add_argument("--lam", type=float, help="thermal wavelength (default 1 if beta absent)")


def _add_system(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, help="dimension (default 3)")
    p.add_argument("--N", type=int, help="particle number")
    p.add_argument("--L", type=float, help="box side (exactly one of L/rho/rho-lambda3)")
    p.add_argument("--rho", type=float, help="number density")
    p.add_argument("--rho-lambda3", dest="rho_lambda3", type=float, help="rho*lam^3 (d = 3)")
    _add_thermal(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosecycles",
        description="Permutation-cycle statistics and free-energy bounds for Bose gases on a torus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="cycle-density spectrum rho_n for one system")
    _add_system(p)
    p.add_argument("--eps", type=float, help="macroscopic-cycle threshold eps*N (default 0.01)")
    p.add_argument("--weights", help="CSV of custom cycle weights (n,w), used verbatim")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", help="macro/band fractions over a ladder of N at fixed density")
    p.add_argument("--d", type=int, help="dimension (default 3)")
    p.add_argument("--N-list", dest="N_list", type=_int_list, help="comma-separated sizes")
    p.add_argument("--rho", type=float, help="number density")
    p.add_argument("--rho-lambda3", dest="rho_lambda3", type=float, help="rho*lam^3 (d = 3)")
    _add_thermal(p)
    p.add_argument("--eps", type=float, help="macroscopic-cycle threshold (default 0.01)")
    _add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("mu", help="ideal-gas chemical potential and condensate fraction")
    p.add_argument("--d", type=int, help="dimension (default 3)")
    p.add_argument("--rho", type=float, help="number density")
    p.add_argument("--rho-lambda3", dest="rho_lambda3", type=float, help="rho*lam^3 (d = 3)")
    _add_thermal(p)
    _add_common(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("bounds", help="free-energy sandwich for an interacting gas")
    p.add_argument("--d", type=int, help="dimension (default 3)")
    p.add_argument("--rho", type=float, help="number density")
    p.add_argument("--rho-lambda3", dest="rho_lambda3", type=float, help="rho*lam^3 (d = 3)")
    _add_thermal(p)
    p.add_argument("--potential", help="gaussian:g,sigma or a potential definition file")
    p.add_argument("--c-u", dest="c_u", type=float, help="override the superstability constant")
    _add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sample", help="exact cycle-type draws from the canonical distribution")
    _add_system(p)
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--draws", type=int, help="number of cycle types to draw (default 1)")
    p.add_argument("--weights", help="CSV of custom cycle weights (n,w), used verbatim")
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("merger", help="census of admissible merger multigraphs")
    p.add_argument("--vertices", type=int, help="number of cycles/vertices (default 3, max 5)")
    p.add_argument(
        "--max-multiplicity",
        dest="max_multiplicity",
        type=int,
        help="largest edge multiplicity (default 3)",
    )
    p.add_argument(
        "--cross-check",
        dest="cross_check",
        action="store_true",
        default=None,
        help="verify every orbit against the circle-decomposition search",
    )
    _add_common(p)
    p.set_defaults(func=cmd_merger)

    p = sub.add_parser("gain", help="cycle-coupling gain rate: sweep and optimizer")
    p.add_argument("--c", type=float, help="coupled fraction of particles")
    p.add_argument("--rho-v", dest="rho_v", type=float, help="weight scale rho*v")
    p.add_argument("--rho", type=float, help="number density")
    p.add_argument("--d", type=int, help="dimension (default 3)")
    _add_thermal(p)
    p.add_argument("--eps", type=float, help="surviving-weight fraction (default 0.25)")
    p.add_argument("--c1", type=float, help="fluctuation-penalty constant (default 1)")
    p.add_argument("--num", type=int, help="sweep grid size (default 101)")
    _add_common(p)
    p.set_defaults(func=cmd_gain)

    p = sub.add_parser("oracle", help="recursion vs brute-force enumeration (CI gate)")
    p.add_argument("--max-n", dest="max_n", type=int, help="largest N enumerated (default 8)")
    p.add_argument("--trials", type=int, help="random weight sequences (default 5)")
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--tol", type=float, help="relative tolerance (default 1e-10)")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("wavefn", help="cycle wave-function profile along one axis")
    p.add_argument("--n", type=int, help="cycle length")
    p.add_argument("--L", type=float, help="box side")
    _add_thermal(p)
    p.add_argument("--y", type=_float_list, help="cycle center, comma-separated coordinates")
    p.add_argument("--xbar", type=_float_list, help="momentum shift vector (default zero)")
    p.add_argument("--axis", type=int, help="profile axis (default 0)")
    p.add_argument("--num", type=int, help="samples along the axis (default 257)")
    _add_common(p)
    p.set_defaults(func=cmd_wavefn)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # ConfigError and module-level validation
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:  # quadrature, truncation, tolerance escapes
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    raise SystemExit(main())
