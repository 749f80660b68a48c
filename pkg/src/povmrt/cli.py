"""Command-line interface.

Exit codes: 0 success, 1 domain error (``ERROR <kind>: ...`` on stderr),
2 usage error. Tolerances come from ``POVMRT_EPS_*`` environment
variables.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import discrimination as disc
from . import io
from . import monotones as mono
from . import order
from . import povm as pv
from . import randgen as rg
from . import stochastic as st
from .errors import ConfigError, PovmrtError
from .operator import hermiticity_error
from .sweep import ExperimentConfig, run_sweep
from .tolerances import ToleranceProfile


def _out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_validate(args, tol):
    doc = io.read_json(args.file)
    p = io.povm_from_document(doc, tol)
    raw = [io.matrix_from_json(e, f"elements[{i}]") for i, e in enumerate(doc["elements"])]
    print("valid")
    print(f"dim {p.dim}")
    print(f"outcomes {p.n}")
    print(f"completeness_residual {p.completeness_residual()!r}")
    print(f"hermiticity_residual {max(hermiticity_error(m) for m in raw)!r}")
    print(f"min_eigenvalue {min(float(np.linalg.eigvalsh(e)[0]) for e in p)!r}")
    return 0


def cmd_canon(args, tol):
    p = io.load_povm(args.file, tol)
    c = pv.canonicalize(p, tol)
    _out(io.dumps(io.povm_to_document(c)), args.output)
    return 0


def cmd_compare(args, tol):
    e, f = io.load_povm(args.e, tol), io.load_povm(args.f, tol)
    v = order.precedes(e, f, tol)
    print("feasible" if v.feasible else "infeasible")
    print(f"residual {v.residual!r}")
    if v.diagnostic:
        print(f"diagnostic {v.diagnostic}")
    if v.feasible:
        if args.witness:
            io.save_stochastic(v.witness, args.witness)
            print(f"witness {args.witness}")
        else:
            print("witness")
            sys.stdout.write(io.matrix_to_csv(v.witness))
    if args.majorization:
        print(f"majorization {order.majorization_condition(e, f, tol)}")
    return 0


def cmd_monotones(args, tol):
    p = io.load_povm(args.file, tol)
    rho = io.load_state(args.state, tol) if args.state else None
    rep = mono.report(p, rho, bits=args.bits, tol=tol)
    for k, v in rep.to_dict().items():
        print(f"{k} {v!r}" if isinstance(v, float) else f"{k} {v}")
    return 0


def cmd_discriminate(args, tol):
    p = io.load_povm(args.file, tol)
    ens = io.load_ensemble(args.ensemble, tol)
    if args.canonical:
        print(f"canonical_success {disc.canonical_success(p, ens)!r}")
        return 0
    res = disc.posterior_success(p, ens, tol)
    print(f"success {res.success!r}")
    print("decision")
    sys.stdout.write(io.matrix_to_csv(res.decision))
    return 0


def cmd_decompose(args, tol):
    p = io.load_stochastic(args.file, tol)
    c, s = st.decompose(p, tol)
    if args.prefix:
        io.save_stochastic(c, f"{args.prefix}C.csv")
        io.save_stochastic(s, f"{args.prefix}S.csv")
        print(f"C {args.prefix}C.csv")
        print(f"S {args.prefix}S.csv")
    else:
        print("C")
        sys.stdout.write(io.matrix_to_csv(c))
        print("S")
        sys.stdout.write(io.matrix_to_csv(s))
    return 0


def cmd_witness(args, tol):
    e, f = io.load_povm(args.e, tol), io.load_povm(args.f, tol)
    res = disc.witness_search(e, f, m=args.size, max_rounds=args.rounds, tol=tol)
    if res.ensemble is None:
        print(f"none found after {res.rounds} rounds (best gap {res.gap!r})")
        return 0
    print(f"gap {res.gap!r}")
    if args.output:
        io.save_ensemble(res.ensemble, args.output)
        print(f"ensemble {args.output}")
    else:
        sys.stdout.write(io.dumps(io.ensemble_to_document(res.ensemble)))
    return 0


def cmd_gen(args, tol):
    g = rg.rng(args.seed)
    kind = args.kind
    if kind == "povm":
        text = io.dumps(io.povm_to_document(rg.random_povm(args.dim, args.outcomes, g)))
    elif kind == "projective":
        text = io.dumps(io.povm_to_document(rg.random_projective(args.dim, g)))
    elif kind == "stochastic":
        text = io.matrix_to_csv(rg.random_stochastic(args.rows, args.outcomes, g))
    elif kind == "state":
        text = io.dumps(io.state_to_document(rg.random_state(args.dim, g, args.pure)))
    else:
        text = io.dumps(io.ensemble_to_document(rg.random_ensemble(args.dim, args.size, args.pure, g)))
    _out(text, args.output)
    return 0


def cmd_sweep(args, tol):
    try:
        cfg = ExperimentConfig.load(args.config)
    except (OSError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    if args.seed is not None:
        cfg.seed = args.seed
    if args.workers is not None:
        cfg.workers = args.workers
    report = run_sweep(cfg)
    sys.stdout.write(Path(cfg.summary_path).read_text())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="povmrt", description="Ordering, monotones and discrimination games for POVMs")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a POVM document and print residuals")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("canon", help="write the canonical representative")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("compare", help="decide whether E can be freely turned into F")
    p.add_argument("e")
    p.add_argument("f")
    p.add_argument("--witness", help="write the witness matrix here (CSV)")
    p.add_argument("--majorization", action="store_true", help="also report the majorization condition")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("monotones", help="print the four information-gain monotones")
    p.add_argument("file")
    p.add_argument("--state", help="state document (default: maximally mixed)")
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=cmd_monotones)

    p = sub.add_parser("discriminate", help="success probability on an ensemble")
    p.add_argument("file")
    p.add_argument("ensemble")
    p.add_argument("--canonical", action="store_true", help="outcome i read as state i")
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("decompose", help="split/confuse factorization of a stochastic matrix")
    p.add_argument("file")
    p.add_argument("--prefix", help="write <prefix>C.csv and <prefix>S.csv")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("witness", help="search for an ensemble on which F beats E")
    p.add_argument("e")
    p.add_argument("f")
    p.add_argument("--size", type=int, help="ensemble size (default: outcomes of F)")
    p.add_argument("--rounds", type=int, default=200)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gen", help="seeded random objects")
    p.add_argument("kind", choices=["povm", "projective", "stochastic", "state", "ensemble"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--outcomes", type=int, default=2, help="POVM outcomes / stochastic columns")
    p.add_argument("--rows", type=int, default=2, help="stochastic rows")
    p.add_argument("--size", type=int, default=2, help="ensemble size")
    p.add_argument("--pure", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="run property suites from a config file")
    p.add_argument("config")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        tol = ToleranceProfile.from_env()
    except ValueError as exc:
        print(f"ERROR ConfigError: {exc}", file=sys.stderr)
        return 2
    for name in ("dim", "outcomes", "rows", "size", "rounds"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            parser.error(f"--{name} must be positive")
    try:
        return args.func(args, tol)
    except PovmrtError as exc:
        print(f"ERROR {exc.kind}: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("ERROR Interrupted: partial results flushed", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
