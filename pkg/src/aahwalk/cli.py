"""Command-line interface.

Exit codes: 0 success, 2 config error, 3 resource limit, 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .circuit import Gate, KIND_X, lower, trotter_circuit, export_qasm
from .errors import ConfigError, ResourceLimitError
from .exact import single_particle_hamiltonian, spectrum, spectrum_csv
from .experiment import (
    PRESET_NAMES,
    config_from_dict,
    emit,
    hamiltonian_matrix,
    preset_configs,
    run,
    sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_IO = 4


def _load_config(path: str, args) -> "ExperimentConfig":
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    cfg = config_from_dict(data)
    if getattr(args, "seed", None) is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    if getattr(args, "flavor", None) is not None:
        cfg = dataclasses.replace(
            cfg, model=dataclasses.replace(cfg.model, flavor=args.flavor))
    cfg.validate()
    return cfg


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.add_argument("--flavor", choices=("paper-literal", "exact-jw"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aahwalk",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a single experiment config")
    p.add_argument("config")
    _add_common(p)

    p = sub.add_parser("sweep", help="sweep one model parameter")
    p.add_argument("config")
    p.add_argument("--axis", required=True, choices=("lambda_J", "phi_J", "V"))
    p.add_argument("--values", required=True,
                   help="comma-separated list, e.g. 0,0.5,0.9")
    _add_common(p)

    p = sub.add_parser("preset", help="run a named scenario preset")
    p.add_argument("name", choices=PRESET_NAMES)
    _add_common(p)

    p = sub.add_parser("export-qasm", help="emit the Trotter circuit as OpenQASM 2.0")
    p.add_argument("config")
    p.add_argument("--out", default="-", help="output file ('-' = stdout)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--flavor", choices=("paper-literal", "exact-jw"), default=None)

    p = sub.add_parser("spectrum", help="dump the Hamiltonian spectrum as CSV")
    p.add_argument("config")
    p.add_argument("--single-particle", action="store_true",
                   help="diagonalize the L x L one-particle sector instead")
    p.add_argument("--out", default="-", help="output file ('-' = stdout)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--flavor", choices=("paper-literal", "exact-jw"), default=None)
    return parser


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = _load_config(args.config, args)
            emit(run(cfg), args.format, args.out)
        elif args.command == "sweep":
            cfg = _load_config(args.config, args)
            values = [float(v) for v in args.values.split(",") if v.strip()]
            records = sweep(cfg, args.axis, values)
            emit(records, args.format, args.out, stem=f"sweep_{args.axis}")
        elif args.command == "preset":
            configs = preset_configs(args.name)
            if args.seed is not None:
                configs = [dataclasses.replace(c, seed=args.seed) for c in configs]
            if args.flavor is not None:
                configs = [dataclasses.replace(
                    c, model=dataclasses.replace(c.model, flavor=args.flavor))
                    for c in configs]
            records = [run(c) for c in configs]
            emit(records, args.format, args.out, stem=args.name)
        elif args.command == "export-qasm":
            cfg = _load_config(args.config, args)
            circ = trotter_circuit(cfg.model, cfg.t_max, cfg.steps, cfg.scheme)
            # state preparation: NOT gates on the initially occupied sites
            prep = [Gate(KIND_X, (s,)) for s in cfg.initial_occupations]
            circ.gates = prep + circ.gates
            _write_text(args.out, export_qasm(lower(circ)))
        elif args.command == "spectrum":
            cfg = _load_config(args.config, args)
            H = (single_particle_hamiltonian(cfg.model) if args.single_particle
                 else hamiltonian_matrix(cfg.model))
            _write_text(args.out, spectrum_csv(spectrum(H)))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
